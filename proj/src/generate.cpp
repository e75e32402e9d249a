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

#include "nsi/generate.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace nsi {

std::size_t syntax_size(const Term& t) {
    switch (t.kind()) {
    case TermKind::FreeVar:
    case TermKind::BoundVar:
    case TermKind::Constant: return 1;
    case TermKind::Lambda: return 1 + syntax_size(t.body());
    case TermKind::Pair: return 1 + syntax_size(t.first()) + syntax_size(t.second());
    case TermKind::App: return 1 + syntax_size(t.fun()) + syntax_size(t.arg());
    case TermKind::ListBrace: return 1 + syntax_size(t.step());
    case TermKind::TreeBrace: return 1 + syntax_size(t.step()) + syntax_size(t.leaf_case());
    }
    return 1;
}

// ---------------------------------------------------------------------------
// Random generation

namespace {

const Type kD = Type::diamond();
const Type kB = Type::boolean();
const Type kI = Type::iota();

Term tensor_intro(const Type& l, const Type& r, Term a, Term b) {
    return apps(cnst(Const::tensor(l, r)), {std::move(a), std::move(b)});
}

bool has_type(const std::vector<Variable>& pool, const Type& t) {
    return std::any_of(pool.begin(), pool.end(), [&](const Variable& v) { return v.type == t; });
}

// Variables still available after both alternatives: the intersection.
std::vector<Variable> common(const std::vector<Variable>& a, const std::vector<Variable>& b) {
    std::vector<Variable> out;
    for (const auto& v : a)
        if (std::find(b.begin(), b.end(), v) != b.end()) out.push_back(v);
    return out;
}

}  // namespace

TermGenerator::TermGenerator(std::uint64_t seed, GenOptions options) : engine_(seed), options_(options) {
    universe_ = {kB,
                 kI,
                 Type::list(kB),
                 Type::list(kI),
                 Type::tree(kB, kB),
                 Type::tensor(kB, kB),
                 Type::product(kB, kI),
                 Type::arrow(kB, kB),
                 Type::list(Type::tensor(kB, kI))};
}

bool TermGenerator::coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p; }

int TermGenerator::below(int n) { return n <= 1 ? 0 : static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }

std::string TermGenerator::fresh(const char* prefix) { return prefix + std::to_string(counter_++); }

Type TermGenerator::pick_type(bool allow_diamond, bool allow_arrow) {
    while (true) {
        if (allow_diamond && coin(0.15)) return kD;
        const Type& t = universe_[static_cast<std::size_t>(below(static_cast<int>(universe_.size())))];
        if (!allow_arrow && t.is(TypeKind::Arrow)) continue;
        return t;
    }
}

Term TermGenerator::generate() {
    // Mostly data types, so that normal forms are classifiable.
    return generate(pick_type(false, coin(0.1)));
}

Term TermGenerator::generate(const Type& type) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Scope scope;
        if (coin(options_.open_rate)) {
            const int n = 1 + below(2);
            for (int i = 0; i < n; ++i) scope.pool.push_back(Variable{fresh("x"), pick_type(false, true)});
        }
        auto t = gen(type, scope, options_.size);
        if (!t) {
            ++rejections_;
            continue;
        }
        auto r = checker_.judge(*t);
        if (!r || r.value()->type != type || !r.value()->bound().empty()) {
            ++rejections_;
            continue;
        }
        return *t;
    }
    throw std::runtime_error("TermGenerator: no typed term of type " + type.to_string());
}

TermGenerator::SubstitutionInstance TermGenerator::substitution_instance() {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const Type sigma = pick_type(true, true);
        const Type type = pick_type(false, coin(0.1));
        Variable x{fresh("x"), sigma};
        Scope scope;
        scope.pool.push_back(x);
        auto t = gen(type, scope, options_.size);
        if (!t || !occurs_free(*t, x) || !checker_.judge(*t)) {
            ++rejections_;
            continue;
        }
        Scope s_scope;
        auto s = gen(sigma, s_scope, options_.size / 2);
        if (!s || !checker_.judge(*s)) {
            ++rejections_;
            continue;
        }
        return SubstitutionInstance{*t, x, *s};
    }
    throw std::runtime_error("TermGenerator: no substitution instance");
}

std::optional<Term> TermGenerator::take_var(const Type& type, Scope& scope) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < scope.pool.size(); ++i)
        if (scope.pool[i].type == type) idx.push_back(i);
    if (idx.empty()) return std::nullopt;
    std::size_t i = idx[static_cast<std::size_t>(below(static_cast<int>(idx.size())))];
    Variable v = scope.pool[i];
    scope.pool.erase(scope.pool.begin() + static_cast<std::ptrdiff_t>(i));
    return var(v.name, v.type);
}

std::optional<Term> TermGenerator::diamond(Scope& scope) {
    if (auto v = take_var(kD, scope)) return v;
    if (scope.closed) return std::nullopt;
    return var(fresh("d"), kD);
}

std::optional<Term> TermGenerator::gen(const Type& type, Scope& scope, int budget) {
    if (type.is(TypeKind::Diamond)) return diamond(scope);
    enum Choice { Intro, Var, Beta, Cases, Proj, TensorElim, ListIter, TreeIter };
    std::vector<std::pair<Choice, int>> choices = {{Intro, 4}};
    if (has_type(scope.pool, type)) choices.push_back({Var, budget <= 2 ? 12 : 3});
    if (budget > 3) {
        choices.push_back({Beta, 3});
        choices.push_back({Cases, 2});
        choices.push_back({Proj, 1});
        choices.push_back({TensorElim, 2});
        if (scope.brace_depth < options_.max_brace_depth) {
            choices.push_back({ListIter, 3});
            choices.push_back({TreeIter, 1});
        }
    }
    int total = 0;
    for (const auto& c : choices) total += c.second;
    for (int tries = 0; tries < 4; ++tries) {
        int pick = below(total);
        Choice choice = Intro;
        for (const auto& c : choices) {
            if (pick < c.second) {
                choice = c.first;
                break;
            }
            pick -= c.second;
        }
        const std::vector<Variable> saved = scope.pool;
        std::optional<Term> out;
        switch (choice) {
        case Intro: out = intro(type, scope, budget); break;
        case Var: out = take_var(type, scope); break;
        case Beta: out = beta(type, scope, budget); break;
        case Cases: out = cases(type, scope, budget); break;
        case Proj: out = projection(type, scope, budget); break;
        case TensorElim: out = tensor_elim(type, scope, budget); break;
        case ListIter: out = list_iteration(type, scope, budget); break;
        case TreeIter: out = tree_iteration(type, scope, budget); break;
        }
        if (out) return out;
        scope.pool = saved;
    }
    return intro(type, scope, 1);
}

std::optional<Term> TermGenerator::intro(const Type& type, Scope& scope, int budget) {
    const int sub = std::max(1, budget / 2);
    switch (type.kind()) {
    case TypeKind::Diamond: return diamond(scope);
    case TypeKind::Bool: return cnst(coin(0.5) ? Const::tt() : Const::ff());
    case TypeKind::Iota: {
        if (budget <= 1 || coin(0.3)) return cnst(Const::zero());
        static const Const unary[] = {Const::s0(), Const::s1(), Const::s1(), Const::pred()};
        auto arg = gen(kI, scope, budget - 1);
        if (!arg) return std::nullopt;
        return Term::app(cnst(unary[below(4)]), *arg);
    }
    case TypeKind::Arrow: {
        Variable x{fresh("v"), type.arg()};
        scope.pool.push_back(x);
        auto body = gen(type.res(), scope, budget - 1);
        std::erase(scope.pool, x);
        if (!body) return std::nullopt;
        return lam(x.name, x.type, *body);
    }
    case TypeKind::Tensor: {
        auto a = gen(type.left(), scope, sub);
        if (!a) return std::nullopt;
        auto b = gen(type.right(), scope, sub);
        if (!b) return std::nullopt;
        return tensor_intro(type.left(), type.right(), *a, *b);
    }
    case TypeKind::Product: {
        auto ab = additive(type.left(), type.right(), scope, budget - 1);
        if (!ab) return std::nullopt;
        return Term::pair(ab->first, ab->second);
    }
    case TypeKind::List: {
        const Type& e = type.elem();
        int n = budget <= 1 ? 0 : below(static_cast<int>(options_.max_data) + 1);
        std::vector<std::pair<Term, Term>> entries;
        for (int i = 0; i < n; ++i) {
            auto d = diamond(scope);
            if (!d) break;
            auto a = gen(e, scope, std::max(1, sub / std::max(1, n)));
            if (!a) return std::nullopt;
            entries.emplace_back(*d, *a);
        }
        Term out = cnst(Const::nil(e));
        // A non-canonical tail now and then, so iteration sees reducible spines.
        if (budget > 4 && coin(0.2)) {
            auto tail = gen(type, scope, sub);
            if (tail) out = *tail;
        }
        for (auto it = entries.rbegin(); it != entries.rend(); ++it)
            out = apps(cnst(Const::cons(e)), {it->first, it->second, out});
        return out;
    }
    case TypeKind::Tree: {
        const Type& lab = type.label();
        const Type& leaf = type.leaf();
        if (budget <= 3 || coin(0.4)) {
            auto a = gen(leaf, scope, std::max(1, budget - 1));
            if (!a) return std::nullopt;
            return Term::app(cnst(Const::leaf(lab, leaf)), *a);
        }
        auto d = diamond(scope);
        if (!d) {
            auto a = gen(leaf, scope, 1);
            if (!a) return std::nullopt;
            return Term::app(cnst(Const::leaf(lab, leaf)), *a);
        }
        auto a = gen(lab, scope, 1 + below(2));
        if (!a) return std::nullopt;
        auto t1 = gen(type, scope, sub);
        if (!t1) return std::nullopt;
        auto t2 = gen(type, scope, sub);
        if (!t2) return std::nullopt;
        return apps(cnst(Const::node(lab, leaf)), {*d, *a, *t1, *t2});
    }
    }
    return std::nullopt;
}

std::optional<std::pair<Term, Term>> TermGenerator::additive(const Type& a, const Type& b, Scope& scope, int budget) {
    const std::vector<Variable> start = scope.pool;
    auto ta = gen(a, scope, std::max(1, budget / 2));
    if (!ta) return std::nullopt;
    std::vector<Variable> after_a = scope.pool;
    scope.pool = start;
    auto tb = gen(b, scope, std::max(1, budget / 2));
    if (!tb) return std::nullopt;
    scope.pool = common(after_a, scope.pool);
    return std::make_pair(*ta, *tb);
}

std::optional<Term> TermGenerator::beta(const Type& type, Scope& scope, int budget) {
    const bool dia_ok = !scope.closed || has_type(scope.pool, kD);
    Type sigma = pick_type(dia_ok, true);
    Variable x{fresh("v"), sigma};
    scope.pool.push_back(x);
    auto body = gen(type, scope, budget * 3 / 5);
    std::erase(scope.pool, x);
    if (!body) return std::nullopt;
    auto arg = gen(sigma, scope, std::max(1, budget * 2 / 5));
    if (!arg) return std::nullopt;
    return Term::app(lam(x.name, sigma, *body), *arg);
}

std::optional<Term> TermGenerator::cases(const Type& type, Scope& scope, int budget) {
    auto guard = gen(kB, scope, std::max(1, budget / 3));
    if (!guard) return std::nullopt;
    auto branches = additive(type, type, scope, budget * 2 / 3);
    if (!branches) return std::nullopt;
    return Term::app(*guard, Term::pair(branches->first, branches->second));
}

std::optional<Term> TermGenerator::projection(const Type& type, Scope& scope, int budget) {
    Type other = pick_type(false, false);
    const bool first = coin(0.5);
    auto ab = first ? additive(type, other, scope, budget - 1) : additive(other, type, scope, budget - 1);
    if (!ab) return std::nullopt;
    return Term::app(Term::pair(ab->first, ab->second), cnst(first ? Const::tt() : Const::ff()));
}

std::optional<Term> TermGenerator::tensor_elim(const Type& type, Scope& scope, int budget) {
    Type left, right;
    std::optional<Term> source;
    const int share = std::max(1, budget / 3);
    switch (below(4)) {
    case 0: {  // iszero / head
        auto n = gen(kI, scope, share);
        if (!n) return std::nullopt;
        left = kB;
        right = kI;
        source = Term::app(cnst(coin(0.5) ? Const::iszero() : Const::head()), *n);
        break;
    }
    case 1: {  // leq oracle
        const Type e = coin(0.5) ? kB : kI;
        auto a = gen(e, scope, std::max(1, share / 2));
        if (!a) return std::nullopt;
        auto b = gen(e, scope, std::max(1, share / 2));
        if (!b) return std::nullopt;
        left = kB;
        right = Type::tensor(e, e);
        source = apps(cnst(Const::leq(e)), {*a, *b});
        break;
    }
    default: {
        left = pick_type(false, false);
        right = pick_type(false, false);
        source = gen(Type::tensor(left, right), scope, share);
        if (!source) return std::nullopt;
        break;
    }
    }
    Variable x{fresh("v"), left};
    Variable y{fresh("v"), right};
    scope.pool.push_back(x);
    scope.pool.push_back(y);
    auto body = gen(type, scope, budget - share - 1);
    std::erase(scope.pool, x);
    std::erase(scope.pool, y);
    if (!body) return std::nullopt;
    return Term::app(*source, lam(x.name, left, lam(y.name, right, *body)));
}

std::optional<Term> TermGenerator::list_iteration(const Type& type, Scope& scope, int budget) {
    Type elem = pick_type(false, false);
    if (elem.is(TypeKind::List) || elem.is(TypeKind::Tree)) elem = kB;
    const int share = std::max(1, budget / 3);
    auto list = gen(Type::list(elem), scope, share);
    if (!list) return std::nullopt;
    Scope inner;
    inner.closed = true;
    inner.brace_depth = scope.brace_depth + 1;
    Variable d{fresh("e"), kD}, a{fresh("a"), elem}, r{fresh("r"), type};
    inner.pool = {d, a, r};
    auto body = gen(type, inner, share);
    if (!body) return std::nullopt;
    Term step = lam(d.name, kD, lam(a.name, elem, lam(r.name, type, *body)));
    auto base = gen(type, scope, share);
    if (!base) return std::nullopt;
    return apps(*list, {Term::list_brace(step), *base});
}

std::optional<Term> TermGenerator::tree_iteration(const Type& type, Scope& scope, int budget) {
    const Type label = coin(0.5) ? kB : kI;
    const Type leaf = kB;
    const int share = std::max(1, budget / 4);
    auto tree = gen(Type::tree(label, leaf), scope, share);
    if (!tree) return std::nullopt;
    Scope inner;
    inner.closed = true;
    inner.brace_depth = scope.brace_depth + 1;
    Variable d{fresh("e"), kD}, a{fresh("a"), label}, u{fresh("u"), type}, w{fresh("w"), type};
    inner.pool = {d, a, u, w};
    auto body = gen(type, inner, share);
    if (!body) return std::nullopt;
    Term step = lam(d.name, kD, lam(a.name, label, lam(u.name, type, lam(w.name, type, *body))));
    Scope leaf_scope;
    leaf_scope.closed = true;
    leaf_scope.brace_depth = scope.brace_depth + 1;
    Variable z{fresh("z"), leaf};
    leaf_scope.pool = {z};
    auto leaf_body = gen(type, leaf_scope, share);
    if (!leaf_body) return std::nullopt;
    Term leaf_case = lam(z.name, leaf, *leaf_body);
    return Term::app(*tree, Term::tree_brace(step, leaf_case));
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

EnumerationOptions EnumerationOptions::defaults() {
    EnumerationOptions o;
    o.constants = {Const::tt(),          Const::ff(),          Const::zero(),     Const::s0(),
                   Const::s1(),          Const::pred(),        Const::iszero(),   Const::head(),
                   Const::nil(kB),       Const::cons(kB),      Const::tensor(kB, kB), Const::tensor(kD, kB),
                   Const::leaf(kB, kB),  Const::node(kB, kB),  Const::leq(kB)};
    o.binder_types = {kD, kB, kI, Type::list(kB)};
    return o;
}

namespace {

using Context = std::vector<Type>;  // binder types, innermost last

class Enumerator {
public:
    explicit Enumerator(const EnumerationOptions& o) : opt_(o) {}

    // Typed terms of exact size n over context g, grouped by type.
    const std::map<Type, std::vector<Term>>& typed(std::size_t n, const Context& g) {
        auto key = std::make_pair(n, g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::map<Type, std::vector<Term>> out;
        auto keep = [&](const Term& t) {
            auto j = checker_.judge(t);
            if (!j) return;
            out[j.value()->type].push_back(t);
            ++visited_;
        };
        if (n == 1) {
            for (const auto& c : opt_.constants) keep(cnst(c));
            for (std::size_t i = 0; i < g.size(); ++i)
                keep(Term::bound_var(static_cast<std::uint32_t>(i), g[g.size() - 1 - i]));
        } else {
            for (const auto& sigma : opt_.binder_types) {
                Context inner = g;
                inner.push_back(sigma);
                for (const auto& [ty, bodies] : typed(n - 1, inner))
                    for (const auto& b : bodies) keep(Term::lambda("x", sigma, b));
            }
            for (std::size_t a = 1; a + 2 <= n; ++a) {
                const std::size_t b = n - 1 - a;
                const auto& left = typed(a, g);
                const auto& right = typed(b, g);
                for (const auto& [ta, xs] : left)
                    for (const auto& [tb, ys] : right)
                        for (const auto& x : xs)
                            for (const auto& y : ys) keep(Term::pair(x, y));
                for (const auto& [tf, fs] : left) {
                    for (const auto& arg : arguments_for(tf, b, g))
                        for (const auto& f : fs) keep(Term::app(f, arg));
                }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

    std::uint64_t visited() const { return visited_; }

private:
    // Candidate arguments of size b for a function of type tf; typing of
    // the application decides the rest.
    std::vector<Term> arguments_for(const Type& tf, std::size_t b, const Context& g) {
        std::vector<Term> out;
        const auto& args = typed(b, g);
        auto all_of_type = [&](const Type& t) {
            if (auto it = args.find(t); it != args.end()) out.insert(out.end(), it->second.begin(), it->second.end());
        };
        switch (tf.kind()) {
        case TypeKind::Arrow: all_of_type(tf.arg()); break;
        case TypeKind::Product:
            if (b == 1) {
                out.push_back(cnst(Const::tt()));
                out.push_back(cnst(Const::ff()));
            }
            break;
        case TypeKind::Bool:
            for (const auto& [t, xs] : args)
                if (t.is(TypeKind::Product))
                    for (const auto& x : xs)
                        if (x.is(TermKind::Pair)) out.push_back(x);
            break;
        case TypeKind::Tensor:
            for (const auto& [t, xs] : args)
                if (t.is(TypeKind::Arrow))
                    for (const auto& x : xs)
                        if (x.is(TermKind::Lambda) && x.body().is(TermKind::Lambda)) out.push_back(x);
            break;
        case TypeKind::List:
            if (b >= 2)
                for (const auto& [t, xs] : typed(b - 1, {}))
                    if (t.is(TypeKind::Arrow))
                        for (const auto& x : xs) out.push_back(Term::list_brace(x));
            break;
        case TypeKind::Tree:
            for (std::size_t s = 1; s + 2 <= b; ++s) {
                const auto& steps = typed(s, {});
                const auto& leaves = typed(b - 1 - s, {});
                for (const auto& [ts, xs] : steps) {
                    if (!ts.is(TypeKind::Arrow)) continue;
                    for (const auto& [tr, ys] : leaves) {
                        if (!tr.is(TypeKind::Arrow)) continue;
                        for (const auto& x : xs)
                            for (const auto& y : ys) out.push_back(Term::tree_brace(x, y));
                    }
                }
            }
            break;
        default: break;
        }
        return out;
    }

    const EnumerationOptions& opt_;
    TypeChecker checker_;
    std::map<std::pair<std::size_t, Context>, std::map<Type, std::vector<Term>>> memo_;
    std::uint64_t visited_ = 0;
};

class RawEnumerator {
public:
    explicit RawEnumerator(const EnumerationOptions& o) : opt_(o) {}

    const std::vector<Term>& raw(std::size_t n, const Context& g) {
        auto key = std::make_pair(n, g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<Term> out;
        if (n == 1) {
            for (const auto& c : opt_.constants) out.push_back(cnst(c));
            for (std::size_t i = 0; i < g.size(); ++i)
                out.push_back(Term::bound_var(static_cast<std::uint32_t>(i), g[g.size() - 1 - i]));
        } else {
            for (const auto& sigma : opt_.binder_types) {
                Context inner = g;
                inner.push_back(sigma);
                for (const auto& b : raw(n - 1, inner)) out.push_back(Term::lambda("x", sigma, b));
            }
            for (const auto& s : raw(n - 1, g)) out.push_back(Term::list_brace(s));
            for (std::size_t a = 1; a + 2 <= n; ++a) {
                const auto& xs = raw(a, g);
                const auto& ys = raw(n - 1 - a, g);
                for (const auto& x : xs)
                    for (const auto& y : ys) {
                        out.push_back(Term::pair(x, y));
                        out.push_back(Term::app(x, y));
                        out.push_back(Term::tree_brace(x, y));
                    }
            }
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    const EnumerationOptions& opt_;
    std::map<std::pair<std::size_t, Context>, std::vector<Term>> memo_;
};

}  // namespace

Enumeration enumerate_closed(const EnumerationOptions& options) {
    Enumerator e(options);
    Enumeration out;
    out.closed_counts.assign(options.max_size + 1, 0);
    for (std::size_t n = 1; n <= options.max_size; ++n) {
        for (const auto& [ty, terms] : e.typed(n, {})) {
            out.closed_counts[n] += terms.size();
            out.closed_by_type[ty] += terms.size();
            if (ty.is(TypeKind::Diamond)) out.closed_diamonds.insert(out.closed_diamonds.end(), terms.begin(), terms.end());
        }
    }
    out.visited = e.visited();
    return out;
}

namespace {

// Syntactic shapes some typing rules inspect: the product projections need
// the literal tt / ff, the boolean case a pair, the tensor elimination a
// curried two-argument abstraction.
enum Shape : std::uint8_t { kOther, kLam, kLamLam, kPair, kTrue, kFalse };

using Count = std::uint64_t;
using Binders = std::vector<std::uint8_t>;  // indices into binder_types, innermost last

// Terms of one size and context, grouped by signature: type, the set of
// used de Bruijn indices (bit k for index k), and shape.
struct Entry {
    std::uint32_t type;
    std::uint32_t mask;
    Shape shape;
    Count count;
};

struct Table {
    std::vector<Entry> entries;
    // Entry positions indexed the way application rules look them up.
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> by_type;
    std::vector<std::uint32_t> selectors;   // tt, ff
    std::vector<std::uint32_t> eq_pairs;    // pairs with equal component types
    std::vector<std::uint32_t> curried;     // two nested abstractions
    Count total = 0;
};

struct TypeInfo {
    TypeKind kind;
    std::uint32_t a = 0;  // arg / left / elem / label
    std::uint32_t b = 0;  // res / right / leaf
};

// Counts typed terms by signature per size and binder context. Types are
// interned so the typing rules become comparisons of ids. Tables at the
// maximal size (counting the enclosing binders) are only counted, never
// stored, which is where almost all distinct types would arise.
class SignatureCounter {
public:
    explicit SignatureCounter(const EnumerationOptions& o) : opt_(o) {
        for (const auto& t : opt_.binder_types) binder_ids_.push_back(intern(t));
        diamond_ = intern(kD);
    }

    // Number of terms of size n in context g, and how many have type Dia.
    std::pair<Count, Count> count(std::size_t n, const Binders& g) {
        if (n == 1 || n + g.size() < opt_.max_size) {
            const Table& t = table(n, g);
            Count d = 0;
            if (auto it = t.by_type.find(diamond_); it != t.by_type.end())
                for (auto i : it->second) d += t.entries[i].count;
            return {t.total, d};
        }
        Count total = 0, dia = 0;
        for (std::uint8_t b = 0; b < binder_ids_.size(); ++b) {
            Binders inner = g;
            inner.push_back(b);
            total += count(n - 1, inner).first;
        }
        for (std::size_t a = 1; a + 2 <= n; ++a) {
            const Table& left = table(a, g);
            const Table& right = table(n - 1 - a, g);
            total += left.total * right.total;
            applications(left, right, brace_table(n - 1 - a), [&](std::uint32_t ty, std::uint32_t, Count c) {
                total += c;
                if (ty == diamond_) dia += c;
            });
        }
        return {total, dia};
    }

private:
    std::uint32_t intern(const Type& t) {
        if (auto it = ids_.find(t); it != ids_.end()) return it->second;
        TypeInfo info{t.kind()};
        switch (t.kind()) {
        case TypeKind::Arrow: info.a = intern(t.arg()), info.b = intern(t.res()); break;
        case TypeKind::Product:
        case TypeKind::Tensor: info.a = intern(t.left()), info.b = intern(t.right()); break;
        case TypeKind::List: info.a = intern(t.elem()); break;
        case TypeKind::Tree: info.a = intern(t.label()), info.b = intern(t.leaf()); break;
        default: break;
        }
        const auto id = static_cast<std::uint32_t>(types_.size());
        types_.push_back(t);
        info_.push_back(info);
        ids_.emplace(t, id);
        return id;
    }

    std::uint32_t compound(std::unordered_map<std::uint64_t, std::uint32_t>& cache, std::uint32_t a, std::uint32_t b,
                           Type (*make)(Type, Type)) {
        auto [it, inserted] = cache.try_emplace(std::uint64_t{a} << 32 | b, 0);
        if (inserted) it->second = intern(make(types_[a], types_[b]));
        return it->second;
    }

    // Calls emit(type, mask, count) for every typed application f a with
    // f from `fun` and a from `arg` or `braces`.
    template <class Emit>
    void applications(const Table& fun, const Table& arg, const std::vector<std::pair<std::uint32_t, Count>>& braces,
                      Emit&& emit) {
        for (const Entry& f : fun.entries) {
            const TypeInfo fi = info_[f.type];
            auto each = [&](const std::vector<std::uint32_t>& idx, auto&& result) {
                for (auto i : idx) {
                    const Entry& x = arg.entries[i];
                    if (f.mask & x.mask) continue;
                    if (auto ty = result(x)) emit(*ty, f.mask | x.mask, f.count * x.count);
                }
            };
            switch (fi.kind) {
            case TypeKind::Arrow:
                if (auto it = arg.by_type.find(fi.a); it != arg.by_type.end())
                    each(it->second, [&](const Entry&) { return std::optional<std::uint32_t>(fi.b); });
                break;
            case TypeKind::Product:
                each(arg.selectors,
                     [&](const Entry& x) { return std::optional<std::uint32_t>(x.shape == kTrue ? fi.a : fi.b); });
                break;
            case TypeKind::Bool:
                each(arg.eq_pairs, [&](const Entry& x) { return std::optional<std::uint32_t>(info_[x.type].a); });
                break;
            case TypeKind::Tensor:
                each(arg.curried, [&](const Entry& x) -> std::optional<std::uint32_t> {
                    const TypeInfo& outer = info_[x.type];
                    const TypeInfo& inner = info_[outer.b];
                    if (outer.a != fi.a || inner.a != fi.b) return std::nullopt;
                    return inner.b;
                });
                break;
            case TypeKind::List:
            case TypeKind::Tree:
                for (const auto& [br, c] : braces)
                    if (auto ty = apply_brace(f.type, br)) emit(*ty, f.mask, f.count * c);
                break;
            default: break;
            }
        }
    }

    const Table& table(std::size_t n, const Binders& g) {
        auto key = std::make_pair(n, g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::unordered_map<std::uint64_t, Count> acc;
        auto add = [&](std::uint32_t ty, std::uint32_t mask, Shape sh, Count c) {
            acc[std::uint64_t{ty} << 32 | std::uint64_t{mask} << 8 | sh] += c;
        };
        if (n == 1) {
            for (const auto& c : opt_.constants) {
                if (c.kind == ConstKind::LeqOracle && !oracle_.enabled_at(c.first)) continue;
                add(intern(c.type()), 0, c.kind == ConstKind::True ? kTrue : c.kind == ConstKind::False ? kFalse : kOther, 1);
            }
            for (std::size_t i = 0; i < g.size(); ++i) add(binder_ids_[g[g.size() - 1 - i]], 1u << i, kOther, 1);
        } else {
            for (std::uint8_t b = 0; b < binder_ids_.size(); ++b) {
                Binders inner = g;
                inner.push_back(b);
                for (const Entry& e : table(n - 1, inner).entries)
                    add(compound(arrows_, binder_ids_[b], e.type, Type::arrow), e.mask >> 1,
                        e.shape == kLam || e.shape == kLamLam ? kLamLam : kLam, e.count);
            }
            for (std::size_t a = 1; a + 2 <= n; ++a) {
                const Table& left = table(a, g);
                const Table& right = table(n - 1 - a, g);
                for (const Entry& x : left.entries)
                    for (const Entry& y : right.entries)
                        add(compound(products_, x.type, y.type, Type::product), x.mask | y.mask, kPair, x.count * y.count);
                applications(left, right, brace_table(n - 1 - a),
                             [&](std::uint32_t ty, std::uint32_t mask, Count c) { add(ty, mask, kOther, c); });
            }
        }
        Table t;
        t.entries.reserve(acc.size());
        for (const auto& [k, c] : acc)
            t.entries.push_back(Entry{static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>((k >> 8) & 0xFFFFFF),
                                      static_cast<Shape>(k & 0xFF), c});
        for (std::uint32_t i = 0; i < t.entries.size(); ++i) {
            const Entry& e = t.entries[i];
            t.total += e.count;
            t.by_type[e.type].push_back(i);
            if (e.shape == kTrue || e.shape == kFalse) t.selectors.push_back(i);
            if (e.shape == kPair && info_[e.type].a == info_[e.type].b) t.eq_pairs.push_back(i);
            if (e.shape == kLamLam) t.curried.push_back(i);
        }
        return memo_.emplace(std::move(key), std::move(t)).first->second;
    }

    struct BraceSig {
        bool tree;
        std::uint32_t step;
        std::uint32_t leaf_case;
        bool operator==(const BraceSig&) const = default;
    };

    std::optional<std::uint32_t> apply_brace(std::uint32_t f, std::uint32_t brace) {
        auto [it, inserted] = brace_applications_.try_emplace(std::uint64_t{f} << 32 | brace, std::nullopt);
        if (!inserted) return it->second;
        const Type ft = types_[f];
        const BraceSig b = brace_sigs_[brace];
        std::optional<Type> res;
        if (!b.tree && ft.is(TypeKind::List)) {
            const Type h = types_[b.step];
            if (h.is(TypeKind::Arrow) && h.arg().is(TypeKind::Diamond) && h.res().is(TypeKind::Arrow) &&
                h.res().arg() == ft.elem() && h.res().res().is(TypeKind::Arrow) &&
                h.res().res().arg() == h.res().res().res())
                res = h.res().res();
        } else if (b.tree && ft.is(TypeKind::Tree)) {
            const Type r = types_[b.leaf_case];
            if (r.is(TypeKind::Arrow) && r.arg() == ft.leaf() &&
                types_[b.step] == Type::arrows({kD, ft.label(), r.res(), r.res()}, r.res()))
                res = r.res();
        }
        std::optional<std::uint32_t> out;
        if (res) out = intern(*res);
        return brace_applications_[std::uint64_t{f} << 32 | brace] = out;
    }

    std::uint32_t brace_id(const BraceSig& b) {
        for (std::uint32_t i = 0; i < brace_sigs_.size(); ++i)
            if (brace_sigs_[i] == b) return i;
        brace_sigs_.push_back(b);
        return static_cast<std::uint32_t>(brace_sigs_.size() - 1);
    }

    // Braces of size n; their bodies are closed, so independent of context.
    const std::vector<std::pair<std::uint32_t, Count>>& brace_table(std::size_t n) {
        if (auto it = braces_.find(n); it != braces_.end()) return it->second;
        std::map<std::uint32_t, Count> acc;
        if (n >= 2)
            for (const Entry& s : table(n - 1, {}).entries) acc[brace_id({false, s.type, 0})] += s.count;
        for (std::size_t a = 1; a + 2 <= n; ++a)
            for (const Entry& s : table(a, {}).entries)
                for (const Entry& r : table(n - 1 - a, {}).entries) acc[brace_id({true, s.type, r.type})] += s.count * r.count;
        return braces_.emplace(n, std::vector<std::pair<std::uint32_t, Count>>(acc.begin(), acc.end())).first->second;
    }

    const EnumerationOptions& opt_;
    OracleConfig oracle_ = OracleConfig::defaults();
    std::vector<std::uint32_t> binder_ids_;
    std::uint32_t diamond_ = 0;
    std::vector<Type> types_;
    std::vector<TypeInfo> info_;
    std::unordered_map<Type, std::uint32_t, TypeHash> ids_;
    std::unordered_map<std::uint64_t, std::uint32_t> arrows_, products_;
    std::unordered_map<std::uint64_t, std::optional<std::uint32_t>> brace_applications_;
    std::vector<BraceSig> brace_sigs_;
    std::map<std::pair<std::size_t, Binders>, Table> memo_;
    std::map<std::size_t, std::vector<std::pair<std::uint32_t, Count>>> braces_;
};

}  // namespace

SignatureCounts count_closed(const EnumerationOptions& options) {
    if (options.binder_types.size() > 255 || options.max_size > 24)
        throw std::invalid_argument("count_closed: alphabet or size too large");
    SignatureCounts out;
    out.closed_counts.assign(options.max_size + 1, 0);
    for (std::size_t n = 1; n <= options.max_size; ++n) {
        // A fresh counter per size keeps only the tables below the top.
        EnumerationOptions o = options;
        o.max_size = n;
        SignatureCounter counter(o);
        const auto [total, dia] = counter.count(n, {});
        out.closed_counts[n] = total;
        out.closed_diamonds += dia;
    }
    return out;
}

std::vector<std::uint64_t> brute_force_closed_counts(const EnumerationOptions& options, std::size_t max_size) {
    RawEnumerator e(options);
    TypeChecker checker;
    std::vector<std::uint64_t> counts(max_size + 1, 0);
    for (std::size_t n = 1; n <= max_size; ++n)
        for (const auto& t : e.raw(n, {}))
            if (checker.judge(t) && t.locally_closed()) ++counts[n];
    return counts;
}

}  // namespace nsi
