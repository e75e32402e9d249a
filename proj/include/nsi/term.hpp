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

#ifndef NSI_TERM_HPP
#define NSI_TERM_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nsi/type.hpp"

namespace nsi {

enum class ConstKind {
    True,
    False,
    Nil,
    Cons,
    TensorIntro,
    Leaf,
    Node,
    IotaZero,
    IotaS0,
    IotaS1,
    IotaPred,
    IotaIsZero,
    IotaHead,
    LeqOracle,
};

// Constructor symbols. The list, tensor and tree constants are families
// indexed by one or two types; unused parameters are left invalid.
struct Const {
    ConstKind kind = ConstKind::True;
    Type first;
    Type second;

    static Const tt() { return {ConstKind::True, {}, {}}; }
    static Const ff() { return {ConstKind::False, {}, {}}; }
    static Const nil(Type elem) { return {ConstKind::Nil, std::move(elem), {}}; }
    static Const cons(Type elem) { return {ConstKind::Cons, std::move(elem), {}}; }
    static Const tensor(Type l, Type r) { return {ConstKind::TensorIntro, std::move(l), std::move(r)}; }
    static Const leaf(Type label, Type leaf) { return {ConstKind::Leaf, std::move(label), std::move(leaf)}; }
    static Const node(Type label, Type leaf) { return {ConstKind::Node, std::move(label), std::move(leaf)}; }
    static Const zero() { return {ConstKind::IotaZero, {}, {}}; }
    static Const s0() { return {ConstKind::IotaS0, {}, {}}; }
    static Const s1() { return {ConstKind::IotaS1, {}, {}}; }
    static Const pred() { return {ConstKind::IotaPred, {}, {}}; }
    static Const iszero() { return {ConstKind::IotaIsZero, {}, {}}; }
    static Const head() { return {ConstKind::IotaHead, {}, {}}; }
    static Const leq(Type elem) { return {ConstKind::LeqOracle, std::move(elem), {}}; }

    // The unique type of the constant.
    Type type() const;
    // Number of type parameters (0, 1 or 2).
    int arity_of_params() const;
    // Surface spelling, e.g. "cons[B]".
    std::string to_string() const;

    friend bool operator==(const Const& a, const Const& b) {
        return a.kind == b.kind && a.first == b.first && a.second == b.second;
    }
};

enum class TermKind { FreeVar, BoundVar, Constant, Lambda, Pair, App, ListBrace, TreeBrace };

// A free variable: the calculus identifies a variable by its name together
// with its type (x^tau and x^rho are different variables).
struct Variable {
    std::string name;
    Type type;

    friend bool operator==(const Variable&, const Variable&) = default;
    friend auto operator<=>(const Variable& a, const Variable& b) {
        if (auto c = a.name <=> b.name; c != 0) return c;
        return a.type <=> b.type;
    }
};

using VariableSet = std::set<Variable>;

struct TermNode;

// Memo slots attached to term nodes, so analyses can cache per-node results
// that are released together with the node. Each analysis instance claims a
// fresh owner id and a slot answers only to the owner that filled it last.
// Slot access is synchronized, so terms stay safe to share across threads.
enum class MemoSlot : std::uint8_t { Typing = 0, Measure = 1 };
inline constexpr std::size_t kMemoSlots = 2;

struct Memo {
    std::uint64_t owner = 0;
    std::uint64_t word = 0;
    std::shared_ptr<const void> ptr;
};

std::uint64_t fresh_memo_owner();

// Immutable term handle in locally nameless form: free variables are named,
// bound variables are de Bruijn indices. Binders keep their surface name
// only as a printing hint, so structural equality is alpha-equivalence.
class Term {
public:
    Term() = default;

    static Term free_var(std::string name, Type type);
    static Term bound_var(std::uint32_t index, Type type);
    static Term constant(Const c);
    // `body` refers to the new binder through index 0.
    static Term lambda(std::string hint, Type annot, Term body);
    static Term pair(Term first, Term second);
    static Term app(Term fun, Term arg);
    static Term list_brace(Term step);
    static Term tree_brace(Term step, Term leaf_case);

    bool valid() const { return node_ != nullptr; }
    explicit operator bool() const { return valid(); }
    const TermNode* id() const { return node_.get(); }

    TermKind kind() const;
    bool is(TermKind k) const { return valid() && kind() == k; }
    bool is_const(ConstKind k) const;

    // FreeVar name or Lambda hint.
    const std::string& name() const;
    // FreeVar/BoundVar annotation or Lambda binder type. Invalid for an
    // unannotated free variable.
    const Type& type() const;
    std::uint32_t index() const;
    const Const& constant() const;
    const Term& body() const;
    const Term& first() const;
    const Term& second() const;
    const Term& fun() const;
    const Term& arg() const;
    const Term& step() const;
    const Term& leaf_case() const;

    std::size_t hash() const;
    // Accessible length: constants and variables count 1 (iszero/head 3,
    // leq 4), application sums, lambda adds 1, pair takes max plus 1, a list
    // brace counts 0 and a tree brace counts its leaf case.
    std::uint64_t length() const;
    // One more than the largest loose de Bruijn index; 0 when locally closed.
    std::uint32_t loose_bound() const;
    bool locally_closed() const { return loose_bound() == 0; }
    // Entry count when the term is a canonical list.
    std::optional<std::size_t> list_entries() const;
    // Node count when the term is a canonical tree.
    std::optional<std::size_t> tree_nodes() const;
    bool is_short_numeral() const;
    bool has_brace() const;
    // Conservative hint: false guarantees that no subterm reachable through
    // applications alone has a redex shape. True may be a false positive.
    bool may_have_redex() const;
    // Bloom filter over the names of free variables.
    std::uint64_t name_mask() const;

    // Copies the slot's memo into `out` if `owner` filled it.
    bool memo(MemoSlot slot, std::uint64_t owner, Memo& out) const;
    void set_memo(MemoSlot slot, Memo m) const;

    friend bool operator==(const Term& a, const Term& b);

private:
    explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
    static Term make(TermNode&& n);

    std::shared_ptr<const TermNode> node_;
};

struct TermNode {
    TermKind kind = TermKind::Constant;
    std::uint32_t index = 0;
    std::string name;
    Type type;
    Const constant;
    Term a;
    Term b;

    std::size_t hash = 0;
    std::uint64_t length = 0;
    std::uint64_t name_mask = 0;
    std::uint32_t loose = 0;
    std::int64_t list_entries = -1;
    std::int64_t tree_nodes = -1;
    bool numeral = false;
    bool has_brace = false;
    bool may_redex = false;
    mutable std::array<Memo, kMemoSlots> memos;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

// ---------------------------------------------------------------------------
// Builders working with named variables.

Term var(std::string name, Type type);
Term cnst(Const c);
// Abstracts the free variable (name, type) of `body`.
Term lam(const std::string& name, const Type& type, const Term& body);
Term lams(std::initializer_list<std::pair<std::string, Type>> binders, const Term& body);
Term apps(Term fun, std::initializer_list<Term> args);
Term apps(Term fun, const std::vector<Term>& args);

// ---------------------------------------------------------------------------
// Binding operations.

VariableSet free_vars(const Term& t);
bool occurs_free(const Term& t, const Variable& x);

// Replaces bound index 0 of a lambda body by `s` (locally closed).
Term instantiate(const Term& body, const Term& s);
// Turns free occurrences of `x` into the bound index of a new binder.
Term abstract(const Term& t, const Variable& x);
// Capture-avoiding t[s/x]; `s` must be locally closed.
Term substitute(const Term& t, const Variable& x, const Term& s);

// ---------------------------------------------------------------------------
// Canonical forms.

struct ListEntry {
    Term diamond;
    Term payload;
};

struct CanonicalList {
    std::vector<ListEntry> entries;
    Type elem;
    std::size_t size() const { return entries.size(); }
};

struct CanonicalTree {
    struct Vertex {
        bool is_leaf = true;
        Term payload;  // leaf
        Term diamond;  // node
        Term label;    // node
        int left = -1;
        int right = -1;
    };
    std::vector<Vertex> vertices;
    int root = -1;
    std::size_t nodes = 0;
};

using ShortNumeral = std::vector<int>;  // outermost constructor first

std::optional<CanonicalList> recognize_list(const Term& t);
std::optional<CanonicalTree> recognize_tree(const Term& t);
std::optional<ShortNumeral> recognize_short_numeral(const Term& t);

Term make_short_numeral(const ShortNumeral& bits);

enum class HeadKind { Var, Const, Lambda, Pair, Brace };

struct HeadForm {
    HeadKind kind;
    Term head;
    std::vector<Term> args;
};

// Splits t into its head and application spine.
HeadForm head_form(const Term& t);

}  // namespace nsi

#endif  // NSI_TERM_HPP
