/* Copyright 2026 The nsi Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "nsi/tm.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "nsi/stdlib.hpp"

namespace nsi {

namespace {

const Type kB = Type::boolean();
const Type kI = Type::iota();

Term tt() { return cnst(Const::tt()); }
Term ff() { return cnst(Const::ff()); }
Term bit_term(bool b) { return b ? tt() : ff(); }

Term tensor(const Type& l, const Type& r, Term a, Term b) {
    return apps(cnst(Const::tensor(l, r)), {std::move(a), std::move(b)});
}

Term iota_app(Const c, Term arg) { return Term::app(cnst(std::move(c)), std::move(arg)); }
Term succ(bool bit, Term arg) { return iota_app(bit ? Const::s1() : Const::s0(), std::move(arg)); }

// B (x) (B (x) ... B) with `bits` components.
Type state_type(unsigned bits) { return bits <= 1 ? kB : Type::tensor(kB, state_type(bits - 1)); }

Term state_term(unsigned state, unsigned bits) {
    const bool top = (state >> (bits - 1)) & 1u;
    if (bits == 1) return bit_term(top);
    return tensor(kB, state_type(bits - 1), bit_term(top), state_term(state, bits - 1));
}

Term numeral(const std::vector<bool>& cells) {
    ShortNumeral n(cells.begin(), cells.end());
    return make_short_numeral(n);
}

std::optional<std::vector<bool>> cells_of(const Term& t) {
    auto n = recognize_short_numeral(t);
    if (!n) return std::nullopt;
    return std::vector<bool>(n->begin(), n->end());
}

// Peels `tensor[..] a b` into (a, b).
std::optional<std::pair<Term, Term>> untensor(const Term& t) {
    if (!t.is(TermKind::App) || !t.fun().is(TermKind::App) || !t.fun().fun().is_const(ConstKind::TensorIntro))
        return std::nullopt;
    return std::make_pair(t.fun().arg(), t.arg());
}

class StepBuilder {
public:
    explicit StepBuilder(const TMSpec& spec) : spec_(spec), bits_(spec.state_bits()) {}

    Term build() const {
        const Type s = state_type(bits_);
        const Type rs = Type::tensor(kI, s);
        const Type c = Type::tensor(kI, rs);
        Term inner = Term::app(var("m", rs), lams({{"r", kI}, {"q0", s}}, dispatch(var("q0", s), bits_, 0)));
        return lam("c", c, Term::app(var("c", c), lams({{"l", kI}, {"m", rs}}, inner)));
    }

private:
    // Case analysis on the remaining `bits` state bits held by q; `prefix`
    // is the value of the bits already read.
    Term dispatch(const Term& q, unsigned bits, unsigned prefix) const {
        if (bits == 1) return Term::app(q, Term::pair(by_state(2 * prefix + 1), by_state(2 * prefix)));
        const unsigned level = bits_ - bits;
        const std::string b = "b" + std::to_string(level);
        const std::string rest = "q" + std::to_string(level + 1);
        const Type rt = state_type(bits - 1);
        Term next = Term::app(var(b, kB), Term::pair(dispatch(var(rest, rt), bits - 1, 2 * prefix + 1),
                                                     dispatch(var(rest, rt), bits - 1, 2 * prefix)));
        return Term::app(q, lams({{b, kB}, {rest, rt}}, next));
    }

    // The state is known; branch on the scanned symbol.
    Term by_state(unsigned state) const {
        Term nonblank = Term::app(iota_app(Const::head(), var("l1", kI)),
                                  lams({{"h", kB}, {"l2", kI}},
                                       Term::app(var("h", kB), Term::pair(act(state, TmSymbol::One, var("l2", kI)),
                                                                          act(state, TmSymbol::Zero, var("l2", kI))))));
        Term blank = act(state, TmSymbol::Blank, var("l1", kI));
        return Term::app(iota_app(Const::iszero(), var("l", kI)),
                         lams({{"z", kB}, {"l1", kI}}, Term::app(var("z", kB), Term::pair(blank, nonblank))));
    }

    Term config(Term left, Term right, unsigned state) const {
        const Type s = state_type(bits_);
        return tensor(kI, Type::tensor(kI, s), std::move(left), tensor(kI, s, std::move(right), state_term(state, bits_)));
    }

    Term act(unsigned state, TmSymbol read, const Term& left) const {
        const Term r = var("r", kI);
        const TmTransition* tr = state < spec_.states ? spec_.transition(state, read) : nullptr;
        if (!tr) return config(left, r, state);
        Term rest = iota_app(Const::pred(), left);
        if (tr->move == TmMove::Left) return config(rest, succ(tr->write, r), tr->next);
        Term written = succ(tr->write, rest);
        Term moved = Term::app(var("h2", kB), Term::pair(succ(true, written), succ(false, written)));
        return Term::app(iota_app(Const::head(), r),
                         lams({{"h2", kB}, {"r1", kI}}, config(moved, iota_app(Const::pred(), var("r1", kI)), tr->next)));
    }

    const TMSpec& spec_;
    unsigned bits_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

unsigned parse_unsigned(const std::string& s, std::size_t line) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw TmParseError(line, "expected a number, found '" + s + "'");
    try {
        return static_cast<unsigned>(std::stoul(s));
    } catch (const std::out_of_range&) {
        throw TmParseError(line, "number out of range: " + s);
    }
}

}  // namespace

const TmTransition* TMSpec::transition(unsigned state, TmSymbol read) const {
    auto it = delta.find({state, read});
    return it == delta.end() ? nullptr : &it->second;
}

unsigned TMSpec::state_bits() const {
    unsigned n = 1;
    while (n < 32 && (1ull << n) < states) ++n;
    return n;
}

TmParseError::TmParseError(std::size_t line, const std::string& what)
    : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}

TMSpec parse_tm_spec(const std::string& text) {
    TMSpec spec;
    bool have_header = false;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto c = raw.find("--"); c != std::string::npos) raw.erase(c);
        if (words(raw).empty()) continue;
        if (!have_header) {
            bool states = false, initial = false, edge = false;
            for (const auto& clause : split(raw, ';')) {
                auto w = words(clause);
                if (w.empty()) continue;
                if (w[0] == "states" && w.size() == 2) {
                    spec.states = parse_unsigned(w[1], line);
                    states = true;
                } else if (w[0] == "initial" && w.size() == 2) {
                    spec.initial = parse_unsigned(w[1], line);
                    initial = true;
                } else if (w[0] == "blanks-as-edge" && w.size() == 1) {
                    edge = true;
                } else if (w[0] == "accept") {
                    for (std::size_t i = 1; i < w.size(); ++i) spec.accepting.push_back(parse_unsigned(w[i], line));
                } else {
                    throw TmParseError(line, "unknown header clause '" + clause + "'");
                }
            }
            if (!states || !initial || !edge)
                throw TmParseError(line, "header must read 'states N; initial i; blanks-as-edge'");
            if (spec.states == 0) throw TmParseError(line, "a machine needs at least one state");
            if (spec.initial >= spec.states) throw TmParseError(line, "initial state out of range");
            for (unsigned a : spec.accepting)
                if (a >= spec.states) throw TmParseError(line, "accepting state out of range");
            have_header = true;
            continue;
        }
        auto w = words(raw);
        if (w.size() != 6 || w[2] != "->")
            throw TmParseError(line, "expected 'state read -> write move state''");
        unsigned from = parse_unsigned(w[0], line);
        TmSymbol read;
        if (w[1] == "0") read = TmSymbol::Zero;
        else if (w[1] == "1") read = TmSymbol::One;
        else if (w[1] == "_") read = TmSymbol::Blank;
        else throw TmParseError(line, "read symbol must be 0, 1 or _");
        if (w[3] != "0" && w[3] != "1") throw TmParseError(line, "written symbol must be 0 or 1");
        if (w[4] != "L" && w[4] != "R") throw TmParseError(line, "move must be L or R");
        TmTransition tr{w[3] == "1", w[4] == "L" ? TmMove::Left : TmMove::Right, parse_unsigned(w[5], line)};
        if (from >= spec.states || tr.next >= spec.states) throw TmParseError(line, "state out of range");
        if (!spec.delta.emplace(std::make_pair(from, read), tr).second)
            throw TmParseError(line, "duplicate transition (nondeterministic machine)");
    }
    if (!have_header) throw TmParseError(line, "missing header");
    return spec;
}

std::string to_string(const TMSpec& spec) {
    std::ostringstream os;
    os << "states " << spec.states << "; initial " << spec.initial << "; blanks-as-edge";
    if (!spec.accepting.empty()) {
        os << "; accept";
        for (unsigned a : spec.accepting) os << ' ' << a;
    }
    os << '\n';
    for (const auto& [key, tr] : spec.delta) {
        const char* read = key.second == TmSymbol::Zero ? "0" : key.second == TmSymbol::One ? "1" : "_";
        os << key.first << ' ' << read << " -> " << (tr.write ? 1 : 0) << ' '
           << (tr.move == TmMove::Left ? 'L' : 'R') << ' ' << tr.next << '\n';
    }
    return os.str();
}

TMSpec parity_machine() {
    return parse_tm_spec(
        "states 2; initial 0; blanks-as-edge; accept 1\n"
        "0 0 -> 0 L 0\n"
        "0 1 -> 1 L 1\n"
        "1 0 -> 0 L 1\n"
        "1 1 -> 1 L 0\n");
}

TMSpec increment_machine() {
    return parse_tm_spec(
        "states 2; initial 0; blanks-as-edge; accept 1\n"
        "0 1 -> 0 L 0\n"
        "0 0 -> 1 L 1\n"
        "0 _ -> 1 L 1\n");
}

std::string TmConfig::tape() const {
    std::string out;
    for (auto it = left.rbegin(); it != left.rend(); ++it) out += *it ? '1' : '0';
    for (bool b : right) out += b ? '1' : '0';
    return out;
}

TmConfig initial_config(const TMSpec& spec, const std::vector<bool>& input) {
    TmConfig c;
    c.state = spec.initial;
    c.left.assign(input.rbegin(), input.rend());
    return c;
}

Type tm_state_type(const TMSpec& spec) { return state_type(spec.state_bits()); }

Type tm_config_type(const TMSpec& spec) { return Type::tensor(kI, Type::tensor(kI, tm_state_type(spec))); }

Term encode_config(const TMSpec& spec, const TmConfig& config) {
    const unsigned bits = spec.state_bits();
    const Type s = state_type(bits);
    return tensor(kI, Type::tensor(kI, s), numeral(config.left),
                  tensor(kI, s, numeral(config.right), state_term(config.state, bits)));
}

std::optional<TmConfig> decode_config(const TMSpec& spec, const Term& t) {
    auto outer = untensor(t);
    if (!outer) return std::nullopt;
    auto inner = untensor(outer->second);
    if (!inner) return std::nullopt;
    TmConfig c;
    auto left = cells_of(outer->first);
    auto right = cells_of(inner->first);
    if (!left || !right) return std::nullopt;
    c.left = std::move(*left);
    c.right = std::move(*right);
    Term q = inner->second;
    for (unsigned i = spec.state_bits(); i > 0; --i) {
        Term bit = q;
        if (i > 1) {
            auto parts = untensor(q);
            if (!parts) return std::nullopt;
            bit = parts->first;
            q = parts->second;
        }
        if (bit.is_const(ConstKind::True)) c.state = 2 * c.state + 1;
        else if (bit.is_const(ConstKind::False)) c.state = 2 * c.state;
        else return std::nullopt;
    }
    return c;
}

Term tm_step_term(const TMSpec& spec) { return StepBuilder(spec).build(); }

Term tm_run_term(const TMSpec& spec, const std::vector<bool>& input, std::size_t clock_length) {
    const Type c = tm_config_type(spec);
    Term h = lams({{"d", Type::diamond()}, {"a", kB}, {"x", c}}, Term::app(tm_step_term(spec), var("x", c)));
    Term clock = mk_bool_list(std::vector<bool>(clock_length, true), "k");
    return apps(clock, {Term::list_brace(h), encode_config(spec, initial_config(spec, input))});
}

TmRunResult tm_run(const TMSpec& spec, const std::vector<bool>& input, std::size_t clock_length,
                   const Strategy& strategy) {
    Term t = tm_run_term(spec, input, clock_length);
    Reducer reducer(strategy);
    RunSummary s = reducer.run(t, std::numeric_limits<std::uint64_t>::max());
    auto c = decode_config(spec, s.final_term);
    if (!c) throw std::runtime_error("tm_run: normal form is not a configuration");
    TmRunResult out;
    out.config = *c;
    out.reduction_steps = s.steps;
    const bool blank = c->left.empty();
    const TmSymbol read = blank ? TmSymbol::Blank : c->left.front() ? TmSymbol::One : TmSymbol::Zero;
    out.halted = c->state >= spec.states || !spec.transition(c->state, read);
    return out;
}

TmSimulator::TmSimulator(const TMSpec& spec, const std::vector<bool>& input)
    : spec_(&spec),
      head_(static_cast<long>(input.size()) - 1),
      extent_(static_cast<long>(input.size()) - 1),
      state_(spec.initial) {
    for (std::size_t i = 0; i < input.size(); ++i) cells_[static_cast<long>(i)] = input[i];
}

TmSymbol TmSimulator::read() const {
    auto it = cells_.find(head_);
    if (it != cells_.end()) return it->second ? TmSymbol::One : TmSymbol::Zero;
    return head_ < 0 ? TmSymbol::Blank : TmSymbol::Zero;
}

bool TmSimulator::halted() const { return state_ >= spec_->states || !spec_->transition(state_, read()); }

bool TmSimulator::step() {
    if (halted()) return false;
    const TmTransition& tr = *spec_->transition(state_, read());
    cells_[head_] = tr.write;
    head_ += tr.move == TmMove::Left ? -1 : 1;
    extent_ = std::max(extent_, head_);
    state_ = tr.next;
    return true;
}

std::uint64_t TmSimulator::run(std::uint64_t max_steps) {
    std::uint64_t n = 0;
    while (n < max_steps && step()) ++n;
    return n;
}

TmConfig TmSimulator::config() const {
    TmConfig c;
    c.state = state_;
    auto value = [&](long p) -> std::optional<bool> {
        auto it = cells_.find(p);
        if (it != cells_.end()) return it->second;
        if (p >= 0) return false;
        return std::nullopt;
    };
    for (long p = head_;; --p) {
        auto v = value(p);
        if (!v) break;
        c.left.push_back(*v);
    }
    for (long p = head_ + 1; p <= extent_; ++p) c.right.push_back(*value(p));
    return c;
}

}  // namespace nsi
