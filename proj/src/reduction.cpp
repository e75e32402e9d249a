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

#include "nsi/reduction.hpp"

#include <array>
#include <charconv>

namespace nsi {

namespace {

constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "Beta",       "ProjFst",    "ProjSnd",    "IfTrue",    "IfFalse",    "TensorElim",
    "ListNil",    "ListCons",   "TreeLeaf",   "TreeNode",  "PredZero",   "PredSucc",
    "IsZeroZero", "IsZeroSucc", "HeadZero",   "HeadS0",    "HeadS1",     "LeqFire",
};

bool is_successor(const Term& t) {
    return t.is(TermKind::App) && (t.fun().is_const(ConstKind::IotaS0) || t.fun().is_const(ConstKind::IotaS1));
}

Term tensor_of(const Type& l, const Type& r, const Term& a, const Term& b) {
    return Term::app(Term::app(Term::constant(Const::tensor(l, r)), a), b);
}

// Matches `c x1 .. xk` for a constant head of kind `k`; fills args.
bool spine_of(const Term& t, ConstKind k, std::size_t arity, std::vector<const Term*>& args) {
    args.assign(arity, nullptr);
    const Term* cur = &t;
    for (std::size_t i = arity; i-- > 0;) {
        if (!cur->is(TermKind::App)) return false;
        args[i] = &cur->arg();
        cur = &cur->fun();
    }
    return cur->is_const(k);
}

std::optional<Conversion> convert_iota(const Term& f, const Term& a) {
    const Type b = Type::boolean();
    const Type i = Type::iota();
    const bool zero = a.is_const(ConstKind::IotaZero);
    const bool succ = is_successor(a);
    if (!zero && !succ) return std::nullopt;
    switch (f.constant().kind) {
    case ConstKind::IotaPred:
        if (zero) return Conversion{RuleTag::PredZero, a};
        return Conversion{RuleTag::PredSucc, a.arg()};
    case ConstKind::IotaIsZero:
        if (zero) return Conversion{RuleTag::IsZeroZero, tensor_of(b, i, Term::constant(Const::tt()), a)};
        return Conversion{RuleTag::IsZeroSucc, tensor_of(b, i, Term::constant(Const::ff()), a)};
    case ConstKind::IotaHead:
        if (zero) return Conversion{RuleTag::HeadZero, tensor_of(b, i, Term::constant(Const::ff()), a)};
        if (a.fun().is_const(ConstKind::IotaS0))
            return Conversion{RuleTag::HeadS0, tensor_of(b, i, Term::constant(Const::ff()), a)};
        return Conversion{RuleTag::HeadS1, tensor_of(b, i, Term::constant(Const::tt()), a)};
    default: return std::nullopt;
    }
}

}  // namespace

std::string_view to_string(RuleTag r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<RuleTag> rule_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kRuleCount; ++i)
        if (kRuleNames[i] == s) return static_cast<RuleTag>(i);
    return std::nullopt;
}

std::string to_string(const Position& p) {
    if (p.empty()) return "root";
    std::string out;
    for (Side s : p) {
        if (!out.empty()) out += '.';
        out += s == Side::Fun ? "fun" : "arg";
    }
    return out;
}

std::optional<Position> position_from_string(std::string_view s) {
    Position p;
    if (s == "root" || s.empty()) return p;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t end = s.find('.', start);
        if (end == std::string_view::npos) end = s.size();
        std::string_view part = s.substr(start, end - start);
        if (part == "fun") p.push_back(Side::Fun);
        else if (part == "arg") p.push_back(Side::Arg);
        else return std::nullopt;
        start = end + 1;
    }
    return p;
}

std::optional<RuleTag> match_redex(const Term& t, const OracleConfig& oracle) {
    if (!t.is(TermKind::App)) return std::nullopt;
    const Term& f = t.fun();
    const Term& a = t.arg();
    switch (f.kind()) {
    case TermKind::Lambda: return RuleTag::Beta;
    case TermKind::Pair:
        if (a.is_const(ConstKind::True)) return RuleTag::ProjFst;
        if (a.is_const(ConstKind::False)) return RuleTag::ProjSnd;
        return std::nullopt;
    case TermKind::Constant:
        if (f.is_const(ConstKind::True) && a.is(TermKind::Pair)) return RuleTag::IfTrue;
        if (f.is_const(ConstKind::False) && a.is(TermKind::Pair)) return RuleTag::IfFalse;
        if (!a.is_const(ConstKind::IotaZero) && !is_successor(a)) return std::nullopt;
        break;
    case TermKind::App: break;
    default: return std::nullopt;
    }
    if (f.is(TermKind::Constant)) {
        switch (f.constant().kind) {
        case ConstKind::IotaPred:
        case ConstKind::IotaIsZero:
        case ConstKind::IotaHead: return convert_iota(f, a)->rule;
        default: return std::nullopt;
        }
    }
    // f is an application from here on.
    if (a.is(TermKind::Lambda) && a.body().is(TermKind::Lambda) && f.fun().is(TermKind::App) &&
        f.fun().fun().is_const(ConstKind::TensorIntro))
        return RuleTag::TensorElim;
    if (f.arg().is(TermKind::ListBrace)) {
        const Term& l = f.fun();
        if (l.is_const(ConstKind::Nil)) return RuleTag::ListNil;
        if (l.list_entries() && l.is(TermKind::App)) return RuleTag::ListCons;
        return std::nullopt;
    }
    if (a.is(TermKind::TreeBrace)) {
        if (f.fun().is_const(ConstKind::Leaf)) return RuleTag::TreeLeaf;
        // A canonical tree headed by node has canonical subtrees.
        if (f.tree_nodes()) return RuleTag::TreeNode;
        return std::nullopt;
    }
    if (f.fun().is(TermKind::Constant) && f.fun().is_const(ConstKind::LeqOracle)) {
        if (oracle.compare(f.fun().constant().first, f.arg(), a)) return RuleTag::LeqFire;
    }
    return std::nullopt;
}

std::optional<Conversion> root_convert(const Term& t, const OracleConfig& oracle) {
    if (!t.is(TermKind::App)) return std::nullopt;
    const Term& f = t.fun();
    const Term& a = t.arg();

    switch (f.kind()) {
    case TermKind::Lambda: return Conversion{RuleTag::Beta, instantiate(f.body(), a)};
    case TermKind::Pair:
        if (a.is_const(ConstKind::True)) return Conversion{RuleTag::ProjFst, f.first()};
        if (a.is_const(ConstKind::False)) return Conversion{RuleTag::ProjSnd, f.second()};
        return std::nullopt;
    case TermKind::Constant:
        if (f.is_const(ConstKind::True) && a.is(TermKind::Pair)) return Conversion{RuleTag::IfTrue, a.first()};
        if (f.is_const(ConstKind::False) && a.is(TermKind::Pair)) return Conversion{RuleTag::IfFalse, a.second()};
        return convert_iota(f, a);
    default: break;
    }

    std::vector<const Term*> args;

    // tensor x y (fun u. fun v. r)  ->  r[x/u, y/v]
    if (a.is(TermKind::Lambda) && a.body().is(TermKind::Lambda) && spine_of(f, ConstKind::TensorIntro, 2, args)) {
        Term inner = instantiate(a.body(), *args[0]);
        return Conversion{RuleTag::TensorElim, instantiate(inner.body(), *args[1])};
    }

    // l {h} s
    if (f.is(TermKind::App) && f.arg().is(TermKind::ListBrace)) {
        const Term& l = f.fun();
        const Term& brace = f.arg();
        if (l.is_const(ConstKind::Nil)) return Conversion{RuleTag::ListNil, a};
        if (l.list_entries() && spine_of(l, ConstKind::Cons, 3, args)) {
            Term rest = Term::app(Term::app(*args[2], brace), a);
            return Conversion{RuleTag::ListCons, apps(brace.step(), {*args[0], *args[1], rest})};
        }
        return std::nullopt;
    }

    // t {s | r}
    if (a.is(TermKind::TreeBrace)) {
        if (spine_of(f, ConstKind::Leaf, 1, args))
            return Conversion{RuleTag::TreeLeaf, Term::app(a.leaf_case(), *args[0])};
        if (spine_of(f, ConstKind::Node, 4, args) && args[2]->tree_nodes() && args[3]->tree_nodes()) {
            Term left = Term::app(*args[2], a);
            Term right = Term::app(*args[3], a);
            return Conversion{RuleTag::TreeNode, apps(a.step(), {*args[0], *args[1], left, right})};
        }
        return std::nullopt;
    }

    // leq x y
    if (spine_of(f, ConstKind::LeqOracle, 1, args)) {
        const Type& elem = f.fun().constant().first;
        auto smaller = oracle.compare(elem, *args[0], a);
        if (!smaller) return std::nullopt;
        Term flag = Term::constant(*smaller ? Const::tt() : Const::ff());
        return Conversion{RuleTag::LeqFire,
                          tensor_of(Type::boolean(), Type::tensor(elem, elem), flag, tensor_of(elem, elem, *args[0], a))};
    }
    return std::nullopt;
}

const Term& subterm_at(const Term& t, const Position& p) {
    const Term* cur = &t;
    for (Side s : p) {
        if (!cur->is(TermKind::App)) throw std::out_of_range("position leaves the application spine");
        cur = s == Side::Fun ? &cur->fun() : &cur->arg();
    }
    return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& s) {
    std::vector<const Term*> path;
    path.reserve(p.size());
    const Term* cur = &t;
    for (Side side : p) {
        if (!cur->is(TermKind::App)) throw std::out_of_range("position leaves the application spine");
        path.push_back(cur);
        cur = side == Side::Fun ? &cur->fun() : &cur->arg();
    }
    Term out = s;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Term& node = *path[i];
        out = p[i] == Side::Fun ? Term::app(out, node.arg()) : Term::app(node.fun(), out);
    }
    return out;
}

std::string Strategy::to_string() const {
    switch (kind) {
    case Kind::LeftmostOutermost: return "lo";
    case Kind::RightmostInnermost: return "ri";
    case Kind::Random: return "random:" + std::to_string(seed);
    case Kind::Fixed: return "fixed:" + nsi::to_string(fixed);
    }
    return "lo";
}

std::optional<Strategy> Strategy::parse(std::string_view s) {
    if (s == "lo" || s == "leftmost-outermost") return leftmost_outermost();
    if (s == "ri" || s == "rightmost-innermost") return rightmost_innermost();
    if (s == "random") return random(0);
    if (s.rfind("random:", 0) == 0) {
        std::string_view digits = s.substr(7);
        std::uint64_t seed = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
        return random(seed);
    }
    if (s.rfind("fixed:", 0) == 0) {
        auto p = position_from_string(s.substr(6));
        if (!p) return std::nullopt;
        return at(*p);
    }
    return std::nullopt;
}

Reducer::Reducer(Strategy strategy, OracleConfig oracle)
    : strategy_(std::move(strategy)), oracle_(std::move(oracle)), engine_(strategy_.seed) {}

bool Reducer::is_redex(const Term& t) { return match_redex(t, oracle_).has_value(); }

bool Reducer::has_redex(const Term& t) {
    return t.may_have_redex();
}

bool Reducer::find_lo(const Term& t, Position& path) {
    if (!has_redex(t)) return false;
    if (is_redex(t)) return true;
    path.push_back(Side::Fun);
    if (find_lo(t.fun(), path)) return true;
    path.back() = Side::Arg;
    if (find_lo(t.arg(), path)) return true;
    path.pop_back();
    return false;
}

bool Reducer::find_ri(const Term& t, Position& path) {
    if (!has_redex(t)) return false;
    path.push_back(Side::Arg);
    if (find_ri(t.arg(), path)) return true;
    path.back() = Side::Fun;
    if (find_ri(t.fun(), path)) return true;
    path.pop_back();
    return is_redex(t);
}

void Reducer::collect(const Term& t, Position& path, std::vector<Position>& out) {
    if (!has_redex(t)) return;
    if (is_redex(t)) out.push_back(path);
    path.push_back(Side::Fun);
    collect(t.fun(), path, out);
    path.back() = Side::Arg;
    collect(t.arg(), path, out);
    path.pop_back();
}

std::vector<Position> Reducer::redex_positions(const Term& t) {
    std::vector<Position> out;
    Position path;
    collect(t, path, out);
    return out;
}

std::optional<StepResult> Reducer::step(const Term& t) {
    Position pos;
    switch (strategy_.kind) {
    case Strategy::Kind::LeftmostOutermost:
        if (!find_lo(t, pos)) return std::nullopt;
        break;
    case Strategy::Kind::RightmostInnermost:
        if (!find_ri(t, pos)) return std::nullopt;
        break;
    case Strategy::Kind::Random: {
        auto all = redex_positions(t);
        if (all.empty()) return std::nullopt;
        pos = std::move(all[engine_() % all.size()]);
        break;
    }
    case Strategy::Kind::Fixed: {
        pos = strategy_.fixed;
        const Term* sub = nullptr;
        try {
            sub = &subterm_at(t, pos);
        } catch (const std::out_of_range&) {
            throw InvalidPosition("position " + to_string(pos) + " does not exist");
        }
        if (!is_redex(*sub)) {
            if (!has_redex(t)) return std::nullopt;
            throw InvalidPosition("no redex at position " + to_string(pos));
        }
        break;
    }
    }
    auto conv = root_convert(subterm_at(t, pos), oracle_);
    return StepResult{pos, conv->rule, replace_at(t, pos, conv->result)};
}

Outcome<Normalized, FuelExhausted> Reducer::normalize(const Term& t, std::uint64_t fuel) {
    if (strategy_.kind == Strategy::Kind::Fixed)
        throw std::invalid_argument("normalize needs a search strategy, not a fixed position");
    Trace trace{t, strategy_.to_string(), {}};
    Term cur = t;
    while (true) {
        if (trace.steps.size() >= fuel) {
            if (!has_redex(cur)) return Normalized{cur, std::move(trace)};
            return FuelExhausted{std::move(trace)};
        }
        auto s = step(cur);
        if (!s) return Normalized{cur, std::move(trace)};
        cur = s->result;
        trace.steps.push_back(TraceStep{std::move(s->position), s->rule, std::move(s->result)});
    }
}

RunSummary Reducer::run(const Term& t, std::uint64_t fuel, const StepObserver& observer) {
    if (strategy_.kind == Strategy::Kind::Fixed)
        throw std::invalid_argument("run needs a search strategy, not a fixed position");
    RunSummary out;
    out.final_term = t;
    while (true) {
        if (out.steps >= fuel) {
            out.normal = !has_redex(out.final_term);
            return out;
        }
        auto s = step(out.final_term);
        if (!s) {
            out.normal = true;
            return out;
        }
        ++out.steps;
        ++out.rule_counts[static_cast<std::size_t>(s->rule)];
        if (observer) observer(out.steps, *s);
        out.final_term = std::move(s->result);
    }
}

std::vector<Position> redex_positions(const Term& t, const OracleConfig& oracle) {
    return Reducer(Strategy::leftmost_outermost(), oracle).redex_positions(t);
}

std::optional<StepResult> step(const Term& t, const Strategy& strategy, const OracleConfig& oracle) {
    return Reducer(strategy, oracle).step(t);
}

Outcome<Normalized, FuelExhausted> normalize(const Term& t, const Strategy& strategy, std::uint64_t fuel,
                                             const OracleConfig& oracle) {
    return Reducer(strategy, oracle).normalize(t, fuel);
}

}  // namespace nsi
