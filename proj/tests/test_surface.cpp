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
#include "nsi/surface.hpp"
#include "nsi/tm.hpp"
#include "nsi/typing.hpp"

using namespace nsi;
using namespace nsi::fixtures;

TEST_CASE("types") {
    CHECK(parse_type("Dia") == D());
    CHECK(parse_type("B -o B -o B") == Type::arrow(B(), Type::arrow(B(), B())));
    CHECK(parse_type("(B -o B) -o B") == Type::arrow(Type::arrow(B(), B()), B()));
    CHECK(parse_type("B (x) I * B") == Type::tensor(B(), Type::product(I(), B())));
    CHECK(parse_type("(B (x) I) * B") == Type::product(Type::tensor(B(), I()), B()));
    CHECK(parse_type("L(B) -o T(B, L(I))") == Type::arrow(Type::list(B()), Type::tree(B(), Type::list(I()))));
    for (const char* s : {"(B -o B) -o B", "B (x) (I -o I) * L(B)", "T(B (x) B, Dia) -o (B * B) (x) B"}) {
        Type t = parse_type(s);
        CHECK(parse_type(t.to_string()) == t);
    }
    CHECK_THROWS_AS(parse_type("B -o"), ParseError);
    CHECK_THROWS_AS(parse_type("Q"), ParseError);
}

TEST_CASE("terms") {
    CHECK(parse_term("fun x:B. x") == lam("x", B(), var("x", B())));
    CHECK(parse_term("var d : Dia; cons[B] d tt nil[B]") ==
          apps(cnst(Const::cons(B())), {d("d"), tt(), cnst(Const::nil(B()))}));
    Term it = parse_term(
        "var l : L(B);\n"
        "l {fun d:Dia. fun a:B. fun r:B. r} tt");
    CHECK(it == apps(var("l", Type::list(B())), {Term::list_brace(skip_step()), tt()}));
    CHECK(parse_term("<tt, ff>") == Term::pair(tt(), ff()));
    CHECK(parse_term("{fun x:B. x | fun y:B. y}") ==
          Term::tree_brace(lam("x", B(), var("x", B())), lam("y", B(), var("y", B()))));
    CHECK(parse_term("f a b") == apps(Term::free_var("f", Type()), {Term::free_var("a", Type()), Term::free_var("b", Type())}));
    CHECK(parse_term("(x' : I)") == var("x'", I()));
    CHECK(parse_term("tensor[B,I] tt zero") == apps(cnst(Const::tensor(B(), I())), {tt(), cnst(Const::zero())}));
}

TEST_CASE("worked fixture file") {
    const char* text =
        "-- two entries, skipped one by one\n"
        "var d1 d2 : Dia;\n"
        "let l = cons[B] d1 tt (cons[B] d2 ff nil[B]);\n"
        "let h = fun d:Dia. fun a:B. fun r:B. r;\n"
        "l {h} tt\n";
    SurfaceProgram p = parse_program(text);
    CHECK(p.declarations.size() == 2);
    CHECK(p.definitions.size() == 2);
    CHECK(p.main == worked_fixture());
}

TEST_CASE("definitions are inlined without capture") {
    Term t = parse_term(
        "var y : B;\n"
        "let k = y;\n"
        "fun y:B. k");
    // The body refers to the free y, not the binder.
    CHECK(t == Term::lambda("y", B(), var("y", B())));
    CHECK(t != lam("y", B(), var("y", B())));
}

TEST_CASE("errors carry positions") {
    try {
        parse_term("fun x:B.\n  x $");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 5);
    }
    CHECK_THROWS_AS(parse_term(""), ParseError);
    CHECK_THROWS_AS(parse_term("fun x:B. (x : I)"), ParseError);
    CHECK_THROWS_AS(parse_term("<tt, ff"), ParseError);
    CHECK_THROWS_AS(parse_term("tt tt; ff"), ParseError);
    CHECK_THROWS_AS(parse_term("fun tt:B. tt"), ParseError);
}

TEST_CASE("pretty round trip") {
    std::vector<Term> corpus = {
        worked_fixture(),
        lam("x", B(), var("x", B())),
        sort_term(B()),
        quicksort_term(B()),
        quicksort_term(I()),
        append_term(B()),
        tm_step_term(increment_machine()),
        // Binder hint colliding with a free name.
        Term::lambda("y", B(), Term::pair(var("y", B()), Term::bound_var(0, B()))),
        // The same name at two types.
        Term::pair(var("z", B()), var("z", I())),
        // Nested shadowing hints.
        Term::lambda("x", B(), Term::lambda("x", B(), Term::pair(Term::bound_var(0, B()), Term::bound_var(1, B())))),
        Term::app(Term::lambda("x", B(), Term::bound_var(0, B())), Term::app(var("f", Type::arrow(B(), B())), tt())),
        Term::free_var("u", Type()),
    };
    for (const auto& ex : negative_examples()) corpus.push_back(ex.term);
    for (const Term& t : corpus) {
        std::string text = pretty_program(t);
        Term back = parse_term(text);
        CHECK_MESSAGE(back == t, text);
    }
    CHECK(pretty(lam("x", B(), var("x", B()))) == "fun x:B. x");
    CHECK(pretty(worked_fixture()) ==
          "cons[B] d1 tt (cons[B] d2 ff nil[B]) {fun d:Dia. fun a:B. fun r:B. r} tt");
}
