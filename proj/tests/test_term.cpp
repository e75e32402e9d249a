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


#include <functional>
#include <unordered_set>

#include "doctest.h"
#include "fixtures.hpp"
#include "nsi/corpus.hpp"
#include "nsi/generate.hpp"
#include "nsi/reduction.hpp"
#include "nsi/stdlib.hpp"

using namespace nsi;
using namespace nsi::fixtures;

TEST_CASE("types are structural values") {
    const Type a = Type::arrows({D(), B()}, Type::list(B()));
    CHECK(a == Type::arrow(D(), Type::arrow(B(), Type::list(B()))));
    CHECK(a.to_string() == "Dia -o B -o L(B)");
    CHECK(a.size() == 6);
    CHECK(a.hash() == Type::arrows({D(), B()}, Type::list(B())).hash());
    CHECK(Type::tensor(B(), I()) != Type::product(B(), I()));
    CHECK(Type::tree(B(), I()).label() == B());
    CHECK(Type::tree(B(), I()).leaf() == I());
    CHECK_FALSE(Type().valid());
    CHECK(Type() != B());
    // The order is total and consistent with equality.
    std::vector<Type> ts = {B(), D(), I(), a, Type::list(I()), Type::tensor(B(), B()), Type::product(B(), B())};
    for (const auto& x : ts)
        for (const auto& y : ts) CHECK(((x <=> y) == 0) == (x == y));
}

TEST_CASE("binders are de Bruijn indices; equality is alpha equivalence") {
    CHECK(lam("x", B(), var("x", B())) == lam("y", B(), var("y", B())));
    CHECK(lam("x", B(), var("x", B())).body() == Term::bound_var(0, B()));
    // x^B and x^I are different variables.
    CHECK(lam("x", B(), var("x", I())) != lam("x", B(), var("x", B())));
    CHECK(lam("x", B(), var("x", I())).body() == var("x", I()));
    const Term t = lams({{"x", B()}, {"y", B()}}, Term::pair(var("x", B()), var("y", B())));
    CHECK(t.body().body() == Term::pair(Term::bound_var(1, B()), Term::bound_var(0, B())));
    CHECK(t.locally_closed());
    CHECK(t.body().loose_bound() == 1);
    CHECK(t.body().body().loose_bound() == 2);
}

TEST_CASE("free variables and substitution") {
    const Term x = var("x", B()), y = var("y", B());
    CHECK(free_vars(Term::pair(x, y)) == VariableSet{{"x", B()}, {"y", B()}});
    CHECK(occurs_free(Term::app(lam("x", B(), x), x), {"x", B()}));
    CHECK_FALSE(occurs_free(lam("x", B(), x), {"x", B()}));
    // (fun y. <x, y>)[y/x]: the free y must not be captured.
    const Term t = lam("y", B(), Term::pair(x, y));
    const Term u = substitute(t, {"x", B()}, y);
    CHECK(u.body() == Term::pair(y, Term::bound_var(0, B())));
    CHECK(free_vars(u) == VariableSet{{"y", B()}});
    // Substituting an absent variable is the identity.
    CHECK(substitute(t, {"z", B()}, tt()) == t);
    // instantiate/abstract are inverse.
    const Variable v{"v", I()};
    const Term body = Term::pair(var("v", I()), var("w", I()));
    CHECK(instantiate(abstract(body, v), var("v", I())) == body);
}

TEST_CASE("accessible length") {
    CHECK(tt().length() == 1);
    CHECK(cnst(Const::iszero()).length() == 3);
    CHECK(cnst(Const::head()).length() == 3);
    CHECK(cnst(Const::leq(B())).length() == 4);
    CHECK(lam("x", B(), var("x", B())).length() == 2);
    CHECK(Term::pair(tt(), Term::app(cnst(Const::s0()), cnst(Const::zero()))).length() == 3);
    CHECK(Term::list_brace(skip_step()).length() == 0);
    CHECK(Term::tree_brace(skip_step(), lam("x", B(), var("x", B()))).length() == 2);
    CHECK(two_list().length() == 7);
    CHECK(worked_fixture().length() == 8);
}

TEST_CASE("canonical forms") {
    CHECK(two_list().list_entries() == 2u);
    CHECK(cnst(Const::nil(B())).list_entries() == 0u);
    auto l = recognize_list(two_list());
    REQUIRE(l);
    CHECK(l->size() == 2);
    CHECK(l->entries[1].payload == ff());
    // A spine ending in a variable is not canonical.
    CHECK_FALSE(apps(cnst(Const::cons(B())), {d("d"), tt(), var("l", Type::list(B()))}).list_entries());

    const Type lb = Type::list(B());
    const Term leaf = Term::app(cnst(Const::leaf(B(), lb)), cnst(Const::nil(B())));
    const Term tree = apps(cnst(Const::node(B(), lb)), {d("d"), tt(), leaf, leaf});
    CHECK(tree.tree_nodes() == 1u);
    CHECK(leaf.tree_nodes() == 0u);
    auto tr = recognize_tree(tree);
    REQUIRE(tr);
    CHECK(tr->nodes == 1);
    CHECK(tr->vertices.size() == 3);

    const Term five = mk_numeral(5);
    CHECK(five.is_short_numeral());
    CHECK(recognize_short_numeral(five) == ShortNumeral{1, 0, 1});
    CHECK(numeral_value(five) == 5u);
    CHECK(numeral_value(cnst(Const::zero())) == 0u);
    CHECK_FALSE(numeral_value(tt()));

    const HeadForm h = head_form(worked_fixture());
    CHECK(h.kind == HeadKind::Const);
    CHECK(h.args.size() == 5);
}

TEST_CASE("memo slots answer only to their owner") {
    const Term t = two_list();
    const std::uint64_t a = fresh_memo_owner(), b = fresh_memo_owner();
    CHECK(a != b);
    Memo m;
    CHECK_FALSE(t.memo(MemoSlot::Measure, a, m));
    t.set_memo(MemoSlot::Measure, Memo{a, 42, nullptr});
    REQUIRE(t.memo(MemoSlot::Measure, a, m));
    CHECK(m.word == 42);
    CHECK_FALSE(t.memo(MemoSlot::Measure, b, m));
    CHECK_FALSE(t.memo(MemoSlot::Typing, a, m));
}

namespace {

// Checks the redex hint on every node of the application spine.
void check_hint(const Term& t) {
    if (match_redex(t)) REQUIRE(t.may_have_redex());
    if (!t.is(TermKind::App)) {
        CHECK_FALSE(t.may_have_redex());
        return;
    }
    if (t.fun().may_have_redex() || t.arg().may_have_redex()) REQUIRE(t.may_have_redex());
    check_hint(t.fun());
    check_hint(t.arg());
}

}  // namespace

TEST_CASE("the redex hint never misses a redex") {
    TermGenerator gen(3);
    for (int i = 0; i < 300; ++i) {
        // Check the start term and every term along its reduction.
        Reducer r(Strategy::random(static_cast<std::uint64_t>(i)));
        r.run(gen.generate(), 10'000, [](std::uint64_t, const StepResult& s) { check_hint(s.result); });
    }
    for (const auto& e : stdlib_corpus({{0, 1, 3}, 3, 3, 1})) {
        check_hint(e.term);
        Reducer r;
        r.run(e.term, 100'000, [](std::uint64_t, const StepResult& s) { check_hint(s.result); });
    }
}
