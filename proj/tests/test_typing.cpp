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


#include "doctest.h"
#include "fixtures.hpp"
#include "nsi/stdlib.hpp"
#include "nsi/typing.hpp"

using namespace nsi;
using namespace nsi::fixtures;

namespace {

Type type_of(const Term& t) {
    auto r = infer(t);
    REQUIRE_MESSAGE(r, r.error().to_string());
    return r->type;
}

TypeErrorKind error_of(const Term& t, const OracleConfig& oracle = OracleConfig::defaults()) {
    auto r = infer(t, oracle);
    REQUIRE_FALSE(r);
    return r.error().kind;
}

}  // namespace

TEST_CASE("constants") {
    const Type lb = Type::list(B());
    CHECK(type_of(cnst(Const::cons(B()))) == Type::arrows({D(), B(), lb}, lb));
    CHECK(type_of(cnst(Const::node(B(), I()))) ==
          Type::arrows({D(), B(), Type::tree(B(), I()), Type::tree(B(), I())}, Type::tree(B(), I())));
    CHECK(type_of(cnst(Const::iszero())) == Type::arrow(I(), Type::tensor(B(), I())));
    CHECK(type_of(cnst(Const::leq(I()))) == Type::arrows({I(), I()}, Type::tensor(B(), Type::tensor(I(), I()))));
    CHECK(error_of(cnst(Const::leq(B())), OracleConfig::none()) == TypeErrorKind::OracleDisabled);
}

TEST_CASE("minimal contexts") {
    auto r = infer(worked_fixture());
    REQUIRE(r);
    CHECK(r->type == B());
    CHECK(r->minimal_context == VariableSet{{"d1", D()}, {"d2", D()}});
    // Affine: an unused binder is fine and leaves no trace in the context.
    auto k = infer(lam("x", B(), var("y", I())));
    REQUIRE(k);
    CHECK(k->type == Type::arrow(B(), I()));
    CHECK(k->minimal_context == VariableSet{{"y", I()}});
}

TEST_CASE("pairs share their context, applications split it") {
    const Term x = var("x", B());
    auto p = infer(Term::pair(x, x));
    REQUIRE(p);
    CHECK(p->type == Type::product(B(), B()));
    CHECK(p->minimal_context.size() == 1);
    CHECK(error_of(apps(cnst(Const::tensor(B(), B())), {x, x})) == TypeErrorKind::NonDisjointContexts);
    CHECK(error_of(Term::app(var("f", Type::arrow(B(), B())), var("f", Type::arrow(B(), B())))) ==
          TypeErrorKind::HeadTypeMismatch);
}

TEST_CASE("eliminations") {
    // Projection, boolean case, tensor elimination.
    CHECK(type_of(Term::app(Term::pair(tt(), cnst(Const::zero())), ff())) == I());
    CHECK(type_of(Term::app(var("b", B()), Term::pair(cnst(Const::zero()), cnst(Const::zero())))) == I());
    const Term pair = apps(cnst(Const::tensor(B(), I())), {tt(), cnst(Const::zero())});
    CHECK(type_of(Term::app(pair, lams({{"x", B()}, {"y", I()}}, var("y", I())))) == I());
    // List and tree iteration.
    CHECK(type_of(worked_fixture()) == B());
    const Type tb = Type::tree(B(), B());
    const Term tree_it = Term::app(var("t", tb), Term::tree_brace(lams({{"d", D()}, {"a", B()}, {"l", I()}, {"r", I()}},
                                                                          var("l", I())),
                                                                     lam("x", B(), cnst(Const::zero()))));
    CHECK(type_of(tree_it) == I());
    CHECK(error_of(Term::app(var("t", tb), Term::list_brace(skip_step()))) != TypeErrorKind::AritySurplus);
}

TEST_CASE("errors name their position") {
    auto r = infer(lam("x", D(), apps(cnst(Const::cons(B())), {var("x", D()), tt(),
                                                               apps(cnst(Const::cons(B())), {var("x", D()), ff(), cnst(Const::nil(B()))})})));
    REQUIRE_FALSE(r);
    CHECK(r.error().kind == TypeErrorKind::NonDisjointContexts);
    CHECK(r.error().variables == std::vector<std::string>{"x"});
    CHECK(r.error().location_string() == "body");
    CHECK(error_of(var("u", Type())) == TypeErrorKind::UnannotatedVariable);
}

TEST_CASE("weakening") {
    const Term t = Term::pair(var("x", B()), tt());
    CHECK(check(t, {{"x", B()}, {"y", I()}}, Type::product(B(), B())));
    CHECK_FALSE(check(t, {{"y", I()}}, Type::product(B(), B())));
    CHECK_FALSE(check(t, {{"x", B()}}, Type::product(B(), I())));
}

TEST_CASE("judgements of open subterms") {
    TypeChecker c;
    const Term t = lams({{"x", B()}, {"y", I()}}, Term::pair(var("x", B()), var("y", I())));
    auto j = c.judge(t.body().body());
    REQUIRE(j);
    CHECK(j.value()->type == Type::product(B(), I()));
    CHECK(j.value()->bound().size() == 2);
    CHECK(j.value()->free().empty());
    // Cached and fresh answers agree.
    auto again = c.judge(t.body().body());
    REQUIRE(again);
    CHECK(again.value()->type == j.value()->type);
    c.clear_cache();
    auto fresh = c.judge(t);
    REQUIRE(fresh);
    CHECK(fresh.value()->type == Type::arrows({B(), I()}, Type::product(B(), I())));
}

TEST_CASE("standard programs") {
    const Type lb = Type::list(B());
    for (const Term& t : {sort_term(B()), quicksort_term(B()), append_term(B()), eraser_term(B())}) {
        auto r = infer(t);
        REQUIRE(r);
        CHECK(r->minimal_context.empty());
    }
    CHECK(type_of(Term::app(sort_term(B()), mk_bool_list({true, false, true}))) == lb);
}
