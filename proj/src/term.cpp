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

#include "nsi/term.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace nsi {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t name_bit(const std::string& name) {
    return std::uint64_t{1} << (std::hash<std::string>{}(name) & 63U);
}

std::uint64_t const_length(ConstKind k) {
    switch (k) {
    case ConstKind::IotaIsZero:
    case ConstKind::IotaHead: return 3;
    case ConstKind::LeqOracle: return 4;
    default: return 1;
    }
}

std::size_t const_hash(const Const& c) {
    std::size_t h = mix(0x3c0, static_cast<std::size_t>(c.kind));
    h = mix(h, c.first.hash());
    return mix(h, c.second.hash());
}

// Peels `n` applications off `t`; returns the head or an invalid term.
const Term* peel(const Term& t, int n) {
    const Term* cur = &t;
    for (int i = 0; i < n; ++i) {
        if (!cur->is(TermKind::App)) return nullptr;
        cur = &cur->fun();
    }
    return cur;
}

}  // namespace

// ---------------------------------------------------------------------------
// Const

Type Const::type() const {
    const Type dia = Type::diamond();
    const Type b = Type::boolean();
    const Type i = Type::iota();
    switch (kind) {
    case ConstKind::True:
    case ConstKind::False: return b;
    case ConstKind::Nil: return Type::list(first);
    case ConstKind::Cons: return Type::arrows({dia, first, Type::list(first)}, Type::list(first));
    case ConstKind::TensorIntro: return Type::arrows({first, second}, Type::tensor(first, second));
    case ConstKind::Leaf: return Type::arrow(second, Type::tree(first, second));
    case ConstKind::Node: {
        Type t = Type::tree(first, second);
        return Type::arrows({dia, first, t, t}, t);
    }
    case ConstKind::IotaZero: return i;
    case ConstKind::IotaS0:
    case ConstKind::IotaS1:
    case ConstKind::IotaPred: return Type::arrow(i, i);
    case ConstKind::IotaIsZero:
    case ConstKind::IotaHead: return Type::arrow(i, Type::tensor(b, i));
    case ConstKind::LeqOracle:
        return Type::arrows({first, first}, Type::tensor(b, Type::tensor(first, first)));
    }
    return {};
}

int Const::arity_of_params() const {
    switch (kind) {
    case ConstKind::Nil:
    case ConstKind::Cons:
    case ConstKind::LeqOracle: return 1;
    case ConstKind::TensorIntro:
    case ConstKind::Leaf:
    case ConstKind::Node: return 2;
    default: return 0;
    }
}

std::string Const::to_string() const {
    auto one = [&](const char* n) { return std::string(n) + "[" + first.to_string() + "]"; };
    auto two = [&](const char* n) {
        return std::string(n) + "[" + first.to_string() + "," + second.to_string() + "]";
    };
    switch (kind) {
    case ConstKind::True: return "tt";
    case ConstKind::False: return "ff";
    case ConstKind::Nil: return one("nil");
    case ConstKind::Cons: return one("cons");
    case ConstKind::TensorIntro: return two("tensor");
    case ConstKind::Leaf: return two("leaf");
    case ConstKind::Node: return two("node");
    case ConstKind::IotaZero: return "zero";
    case ConstKind::IotaS0: return "s0";
    case ConstKind::IotaS1: return "s1";
    case ConstKind::IotaPred: return "pred";
    case ConstKind::IotaIsZero: return "iszero";
    case ConstKind::IotaHead: return "head";
    case ConstKind::LeqOracle: return one("leq");
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Term construction

namespace {

// Over-approximates the root redex shapes of the application `f x`; the
// exact test (including oracle availability) lives with the reducer.
bool redex_shape(const Term& f, const Term& x) {
    switch (f.kind()) {
    case TermKind::Lambda: return true;
    case TermKind::Pair: return x.is_const(ConstKind::True) || x.is_const(ConstKind::False);
    case TermKind::Constant:
        switch (f.constant().kind) {
        case ConstKind::True:
        case ConstKind::False: return x.is(TermKind::Pair);
        case ConstKind::IotaPred:
        case ConstKind::IotaIsZero:
        case ConstKind::IotaHead: return x.is(TermKind::Constant) || x.is(TermKind::App);
        default: return false;
        }
    case TermKind::App: {
        if (x.is(TermKind::TreeBrace) || f.arg().is(TermKind::ListBrace)) return true;
        const Term& g = f.fun();
        if (g.is_const(ConstKind::LeqOracle)) return true;
        return x.is(TermKind::Lambda) && g.is(TermKind::App) && g.fun().is_const(ConstKind::TensorIntro);
    }
    default: return false;
    }
}

}  // namespace

Term Term::make(TermNode&& n) {
    std::size_t h = mix(0x7e2, static_cast<std::size_t>(n.kind));
    switch (n.kind) {
    case TermKind::FreeVar:
        h = mix(mix(h, std::hash<std::string>{}(n.name)), n.type.hash());
        n.length = 1;
        n.name_mask = name_bit(n.name);
        break;
    case TermKind::BoundVar:
        h = mix(mix(h, n.index), n.type.hash());
        n.length = 1;
        n.loose = n.index + 1;
        break;
    case TermKind::Constant:
        h = mix(h, const_hash(n.constant));
        n.length = const_length(n.constant.kind);
        if (n.constant.kind == ConstKind::Nil) n.list_entries = 0;
        if (n.constant.kind == ConstKind::IotaZero) n.numeral = true;
        break;
    case TermKind::Lambda:
        h = mix(mix(h, n.type.hash()), n.a.hash());
        n.length = sat_add(n.a.length(), 1);
        n.loose = n.a.loose_bound() > 0 ? n.a.loose_bound() - 1 : 0;
        n.name_mask = n.a.name_mask();
        n.has_brace = n.a.has_brace();
        break;
    case TermKind::Pair:
        h = mix(mix(h, n.a.hash()), n.b.hash());
        n.length = sat_add(std::max(n.a.length(), n.b.length()), 1);
        n.loose = std::max(n.a.loose_bound(), n.b.loose_bound());
        n.name_mask = n.a.name_mask() | n.b.name_mask();
        n.has_brace = n.a.has_brace() || n.b.has_brace();
        break;
    case TermKind::App: {
        h = mix(mix(h, n.a.hash()), n.b.hash());
        n.length = sat_add(n.a.length(), n.b.length());
        n.loose = std::max(n.a.loose_bound(), n.b.loose_bound());
        n.name_mask = n.a.name_mask() | n.b.name_mask();
        n.has_brace = n.a.has_brace() || n.b.has_brace();
        const Term& f = n.a;
        const Term& x = n.b;
        // cons d a l
        if (x.list_entries()) {
            const Term* h2 = peel(f, 2);
            if (h2 && h2->is_const(ConstKind::Cons)) n.list_entries = static_cast<std::int64_t>(*x.list_entries()) + 1;
        }
        // leaf t
        if (f.is_const(ConstKind::Leaf)) n.tree_nodes = 0;
        // node d a t1 t2
        if (x.tree_nodes() && f.is(TermKind::App) && f.arg().tree_nodes()) {
            const Term* h3 = peel(f, 3);
            if (h3 && h3->is_const(ConstKind::Node))
                n.tree_nodes = static_cast<std::int64_t>(*f.arg().tree_nodes() + *x.tree_nodes()) + 1;
        }
        if (x.is_short_numeral() && (f.is_const(ConstKind::IotaS0) || f.is_const(ConstKind::IotaS1)))
            n.numeral = true;
        n.may_redex = f.may_have_redex() || x.may_have_redex() || redex_shape(f, x);
        break;
    }
    case TermKind::ListBrace:
        h = mix(h, n.a.hash());
        n.length = 0;
        n.loose = n.a.loose_bound();
        n.name_mask = n.a.name_mask();
        n.has_brace = true;
        break;
    case TermKind::TreeBrace:
        h = mix(mix(h, n.a.hash()), n.b.hash());
        n.length = n.b.length();
        n.loose = std::max(n.a.loose_bound(), n.b.loose_bound());
        n.name_mask = n.a.name_mask() | n.b.name_mask();
        n.has_brace = true;
        break;
    }
    n.hash = h;
    return Term(std::make_shared<const TermNode>(std::move(n)));
}

Term Term::free_var(std::string name, Type type) {
    TermNode n;
    n.kind = TermKind::FreeVar;
    n.name = std::move(name);
    n.type = std::move(type);
    return make(std::move(n));
}

Term Term::bound_var(std::uint32_t index, Type type) {
    TermNode n;
    n.kind = TermKind::BoundVar;
    n.index = index;
    n.type = std::move(type);
    return make(std::move(n));
}

Term Term::constant(Const c) {
    TermNode n;
    n.kind = TermKind::Constant;
    n.constant = std::move(c);
    return make(std::move(n));
}

Term Term::lambda(std::string hint, Type annot, Term body) {
    assert(body.valid());
    TermNode n;
    n.kind = TermKind::Lambda;
    n.name = std::move(hint);
    n.type = std::move(annot);
    n.a = std::move(body);
    return make(std::move(n));
}

Term Term::pair(Term first, Term second) {
    assert(first.valid() && second.valid());
    TermNode n;
    n.kind = TermKind::Pair;
    n.a = std::move(first);
    n.b = std::move(second);
    return make(std::move(n));
}

Term Term::app(Term fun, Term arg) {
    assert(fun.valid() && arg.valid());
    TermNode n;
    n.kind = TermKind::App;
    n.a = std::move(fun);
    n.b = std::move(arg);
    return make(std::move(n));
}

Term Term::list_brace(Term step) {
    assert(step.valid());
    TermNode n;
    n.kind = TermKind::ListBrace;
    n.a = std::move(step);
    return make(std::move(n));
}

Term Term::tree_brace(Term step, Term leaf_case) {
    assert(step.valid() && leaf_case.valid());
    TermNode n;
    n.kind = TermKind::TreeBrace;
    n.a = std::move(step);
    n.b = std::move(leaf_case);
    return make(std::move(n));
}

TermKind Term::kind() const {
    assert(node_);
    return node_->kind;
}
bool Term::is_const(ConstKind k) const {
    return node_ && node_->kind == TermKind::Constant && node_->constant.kind == k;
}
const std::string& Term::name() const { return node_->name; }
const Type& Term::type() const { return node_->type; }
std::uint32_t Term::index() const { return node_->index; }
const Const& Term::constant() const { return node_->constant; }
const Term& Term::body() const { return node_->a; }
const Term& Term::first() const { return node_->a; }
const Term& Term::second() const { return node_->b; }
const Term& Term::fun() const { return node_->a; }
const Term& Term::arg() const { return node_->b; }
const Term& Term::step() const { return node_->a; }
const Term& Term::leaf_case() const { return node_->b; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }
std::uint64_t Term::length() const { return node_->length; }
std::uint32_t Term::loose_bound() const { return node_->loose; }
std::optional<std::size_t> Term::list_entries() const {
    if (!node_ || node_->list_entries < 0) return std::nullopt;
    return static_cast<std::size_t>(node_->list_entries);
}
std::optional<std::size_t> Term::tree_nodes() const {
    if (!node_ || node_->tree_nodes < 0) return std::nullopt;
    return static_cast<std::size_t>(node_->tree_nodes);
}
bool Term::is_short_numeral() const { return node_ && node_->numeral; }
bool Term::has_brace() const { return node_ && node_->has_brace; }
bool Term::may_have_redex() const { return node_ && node_->may_redex; }

std::uint64_t fresh_memo_owner() {
    static std::atomic<std::uint64_t> next{1};
    return next.fetch_add(1, std::memory_order_relaxed);
}

namespace {

// Striped spinlocks guarding the memo slots of all nodes.
class MemoLock {
public:
    explicit MemoLock(const void* node) : flag_(stripe(node)) {
        while (flag_.test_and_set(std::memory_order_acquire)) {
        }
    }
    ~MemoLock() { flag_.clear(std::memory_order_release); }
    MemoLock(const MemoLock&) = delete;
    MemoLock& operator=(const MemoLock&) = delete;

private:
    static std::atomic_flag& stripe(const void* node) {
        static std::array<std::atomic_flag, 64> stripes;
        return stripes[(reinterpret_cast<std::uintptr_t>(node) >> 6) % stripes.size()];
    }
    std::atomic_flag& flag_;
};

}  // namespace

bool Term::memo(MemoSlot slot, std::uint64_t owner, Memo& out) const {
    MemoLock lock(node_.get());
    const Memo& m = node_->memos[static_cast<std::size_t>(slot)];
    if (m.owner != owner) return false;
    out = m;
    return true;
}

void Term::set_memo(MemoSlot slot, Memo m) const {
    {
        MemoLock lock(node_.get());
        std::swap(node_->memos[static_cast<std::size_t>(slot)], m);
    }
    // `m` now holds the displaced memo and is released outside the lock.
}
std::uint64_t Term::name_mask() const { return node_ ? node_->name_mask : 0; }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    const TermNode& x = *a.node_;
    const TermNode& y = *b.node_;
    if (x.hash != y.hash || x.kind != y.kind || x.length != y.length) return false;
    switch (x.kind) {
    case TermKind::FreeVar: return x.name == y.name && x.type == y.type;
    case TermKind::BoundVar: return x.index == y.index && x.type == y.type;
    case TermKind::Constant: return x.constant == y.constant;
    case TermKind::Lambda: return x.type == y.type && x.a == y.a;
    case TermKind::ListBrace: return x.a == y.a;
    case TermKind::Pair:
    case TermKind::App:
    case TermKind::TreeBrace: return x.a == y.a && x.b == y.b;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Builders

Term var(std::string name, Type type) { return Term::free_var(std::move(name), std::move(type)); }
Term cnst(Const c) { return Term::constant(std::move(c)); }

Term lam(const std::string& name, const Type& type, const Term& body) {
    return Term::lambda(name, type, abstract(body, Variable{name, type}));
}

Term lams(std::initializer_list<std::pair<std::string, Type>> binders, const Term& body) {
    Term out = body;
    for (auto it = std::rbegin(binders); it != std::rend(binders); ++it) out = lam(it->first, it->second, out);
    return out;
}

Term apps(Term fun, std::initializer_list<Term> args) {
    for (const Term& a : args) fun = Term::app(std::move(fun), a);
    return fun;
}

Term apps(Term fun, const std::vector<Term>& args) {
    for (const Term& a : args) fun = Term::app(std::move(fun), a);
    return fun;
}

// ---------------------------------------------------------------------------
// Binding operations

VariableSet free_vars(const Term& t) {
    VariableSet out;
    std::unordered_set<const TermNode*> seen;
    std::function<void(const Term&)> go = [&](const Term& u) {
        if (!u.valid() || u.name_mask() == 0) return;
        if (!seen.insert(u.id()).second) return;
        switch (u.kind()) {
        case TermKind::FreeVar: out.insert(Variable{u.name(), u.type()}); return;
        case TermKind::BoundVar:
        case TermKind::Constant: return;
        case TermKind::Lambda:
        case TermKind::ListBrace: go(u.body()); return;
        case TermKind::Pair:
        case TermKind::App:
        case TermKind::TreeBrace:
            go(u.first());
            go(u.second());
            return;
        }
    };
    go(t);
    return out;
}

bool occurs_free(const Term& t, const Variable& x) {
    const std::uint64_t bit = name_bit(x.name);
    std::function<bool(const Term&)> go = [&](const Term& u) -> bool {
        if (!u.valid() || (u.name_mask() & bit) == 0) return false;
        switch (u.kind()) {
        case TermKind::FreeVar: return u.name() == x.name && u.type() == x.type;
        case TermKind::BoundVar:
        case TermKind::Constant: return false;
        case TermKind::Lambda:
        case TermKind::ListBrace: return go(u.body());
        default: return go(u.first()) || go(u.second());
        }
    };
    return go(t);
}

namespace {

// Generic structural rebuild; `leaf` decides variable cases and returns an
// invalid term to keep the original node.
template <class Skip, class Leaf>
Term rebuild(const Term& t, std::uint32_t depth, const Skip& skip, const Leaf& leaf) {
    if (skip(t, depth)) return t;
    switch (t.kind()) {
    case TermKind::FreeVar:
    case TermKind::BoundVar:
    case TermKind::Constant: {
        Term r = leaf(t, depth);
        return r.valid() ? r : t;
    }
    case TermKind::Lambda: {
        Term b = rebuild(t.body(), depth + 1, skip, leaf);
        return b.id() == t.body().id() ? t : Term::lambda(t.name(), t.type(), std::move(b));
    }
    case TermKind::ListBrace: {
        Term b = rebuild(t.step(), depth, skip, leaf);
        return b.id() == t.step().id() ? t : Term::list_brace(std::move(b));
    }
    case TermKind::Pair:
    case TermKind::App:
    case TermKind::TreeBrace: {
        Term x = rebuild(t.first(), depth, skip, leaf);
        Term y = rebuild(t.second(), depth, skip, leaf);
        if (x.id() == t.first().id() && y.id() == t.second().id()) return t;
        if (t.kind() == TermKind::Pair) return Term::pair(std::move(x), std::move(y));
        if (t.kind() == TermKind::App) return Term::app(std::move(x), std::move(y));
        return Term::tree_brace(std::move(x), std::move(y));
    }
    }
    return t;
}

}  // namespace

Term instantiate(const Term& body, const Term& s) {
    if (!s.locally_closed()) throw std::invalid_argument("instantiate: replacement is not locally closed");
    return rebuild(
        body, 0, [](const Term& u, std::uint32_t depth) { return u.loose_bound() <= depth; },
        [&](const Term& u, std::uint32_t depth) -> Term {
            if (!u.is(TermKind::BoundVar)) return {};
            if (u.index() == depth) return s;
            if (u.index() > depth) return Term::bound_var(u.index() - 1, u.type());
            return {};
        });
}

Term abstract(const Term& t, const Variable& x) {
    const std::uint64_t bit = name_bit(x.name);
    return rebuild(
        t, 0,
        [&](const Term& u, std::uint32_t depth) { return (u.name_mask() & bit) == 0 && u.loose_bound() <= depth; },
        [&](const Term& u, std::uint32_t depth) -> Term {
            if (u.is(TermKind::FreeVar) && u.name() == x.name && u.type() == x.type)
                return Term::bound_var(depth, x.type);
            if (u.is(TermKind::BoundVar) && u.index() >= depth) return Term::bound_var(u.index() + 1, u.type());
            return {};
        });
}

Term substitute(const Term& t, const Variable& x, const Term& s) {
    if (!s.locally_closed()) throw std::invalid_argument("substitute: replacement is not locally closed");
    const std::uint64_t bit = name_bit(x.name);
    return rebuild(
        t, 0, [&](const Term& u, std::uint32_t) { return (u.name_mask() & bit) == 0; },
        [&](const Term& u, std::uint32_t) -> Term {
            if (u.is(TermKind::FreeVar) && u.name() == x.name && u.type() == x.type) return s;
            return {};
        });
}

// ---------------------------------------------------------------------------
// Canonical forms

std::optional<CanonicalList> recognize_list(const Term& t) {
    if (!t.list_entries()) return std::nullopt;
    CanonicalList out;
    const Term* cur = &t;
    while (cur->is(TermKind::App)) {
        // cur = cons d a rest
        const Term& rest = cur->arg();
        const Term& cons_d_a = cur->fun();
        out.entries.push_back(ListEntry{cons_d_a.fun().arg(), cons_d_a.arg()});
        if (!out.elem.valid()) out.elem = cons_d_a.fun().fun().constant().first;
        cur = &rest;
    }
    if (!out.elem.valid()) out.elem = cur->constant().first;
    return out;
}

std::optional<CanonicalTree> recognize_tree(const Term& t) {
    if (!t.tree_nodes()) return std::nullopt;
    CanonicalTree out;
    std::function<int(const Term&)> go = [&](const Term& u) -> int {
        CanonicalTree::Vertex v;
        if (u.fun().is_const(ConstKind::Leaf)) {
            v.is_leaf = true;
            v.payload = u.arg();
            out.vertices.push_back(v);
            return static_cast<int>(out.vertices.size()) - 1;
        }
        // node d a t1 t2
        const Term& node_d_a_t1 = u.fun();
        const Term& node_d_a = node_d_a_t1.fun();
        v.is_leaf = false;
        v.diamond = node_d_a.fun().arg();
        v.label = node_d_a.arg();
        int l = go(node_d_a_t1.arg());
        int r = go(u.arg());
        v.left = l;
        v.right = r;
        out.vertices.push_back(v);
        return static_cast<int>(out.vertices.size()) - 1;
    };
    out.root = go(t);
    out.nodes = *t.tree_nodes();
    return out;
}

std::optional<ShortNumeral> recognize_short_numeral(const Term& t) {
    if (!t.is_short_numeral()) return std::nullopt;
    ShortNumeral bits;
    const Term* cur = &t;
    while (cur->is(TermKind::App)) {
        bits.push_back(cur->fun().is_const(ConstKind::IotaS1) ? 1 : 0);
        cur = &cur->arg();
    }
    return bits;
}

Term make_short_numeral(const ShortNumeral& bits) {
    Term out = cnst(Const::zero());
    for (auto it = bits.rbegin(); it != bits.rend(); ++it)
        out = Term::app(cnst(*it ? Const::s1() : Const::s0()), out);
    return out;
}

HeadForm head_form(const Term& t) {
    HeadForm out;
    const Term* cur = &t;
    while (cur->is(TermKind::App)) {
        out.args.push_back(cur->arg());
        cur = &cur->fun();
    }
    std::reverse(out.args.begin(), out.args.end());
    out.head = *cur;
    switch (cur->kind()) {
    case TermKind::FreeVar:
    case TermKind::BoundVar: out.kind = HeadKind::Var; break;
    case TermKind::Constant: out.kind = HeadKind::Const; break;
    case TermKind::Lambda: out.kind = HeadKind::Lambda; break;
    case TermKind::Pair: out.kind = HeadKind::Pair; break;
    default: out.kind = HeadKind::Brace; break;
    }
    return out;
}

}  // namespace nsi
