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
#include "nsi/generate.hpp"
#include "nsi/measure.hpp"
#include "nsi/reduction.hpp"
#include "nsi/typing.hpp"
#include "nsi/verify.hpp"

using namespace nsi;
using namespace nsi::fixtures;

TEST_CASE("worked fixture: nine steps under a bound of sixteen") {
    Term t = worked_fixture();
    REQUIRE(infer(t));
    CHECK(infer(t)->type == B());
    CHECK(length(t) == 8);
    CHECK(poly_bound(t).to_string() == "prefix=[0,4]; tail=8");
    CHECK(measure_at(t, 2) == 16);
    auto r = normalize(t, Strategy::leftmost_outermost(), 100);
    REQUIRE(r);
    CHECK(r->normal_form == tt());
    CHECK(r->trace.size() == 9);
    auto rep = verify_descent(r->trace);
    REQUIRE(rep);
    CHECK(rep->strict);
    CHECK(rep->bound == 16);
    CHECK(rep->steps_taken == 9);
    CHECK(rep->within_bound);
}

namespace {

Term root_result(const Term& t, RuleTag expected) {
    auto c = root_convert(t);
    REQUIRE(c);
    CHECK(c->rule == expected);
    CHECK(match_redex(t) == expected);
    return c->result;
}

}  // namespace

TEST_CASE("conversion rules") {
    const Term zero = cnst(Const::zero());
    const Term one = Term::app(cnst(Const::s1()), zero);
    const Term two = Term::app(cnst(Const::s0()), one);
    CHECK(root_result(Term::app(lam("x", B(), Term::pair(var("x", B()), tt())), ff()), RuleTag::Beta) ==
          Term::pair(ff(), tt()));
    CHECK(root_result(Term::app(Term::pair(tt(), ff()), tt()), RuleTag::ProjFst) == tt());
    CHECK(root_result(Term::app(Term::pair(tt(), ff()), ff()), RuleTag::ProjSnd) == ff());
    CHECK(root_result(Term::app(tt(), Term::pair(zero, one)), RuleTag::IfTrue) == zero);
    CHECK(root_result(Term::app(ff(), Term::pair(zero, one)), RuleTag::IfFalse) == one);
    const Term tensor = apps(cnst(Const::tensor(B(), I())), {tt(), zero});
    CHECK(root_result(Term::app(tensor, lams({{"x", B()}, {"y", I()}}, Term::pair(var("y", I()), var("x", B())))),
                      RuleTag::TensorElim) == Term::pair(zero, tt()));
    CHECK(root_result(apps(cnst(Const::nil(B())), {Term::list_brace(skip_step()), tt()}), RuleTag::ListNil) == tt());
    CHECK(root_result(Term::app(cnst(Const::pred()), zero), RuleTag::PredZero) == zero);
    CHECK(root_result(Term::app(cnst(Const::pred()), two), RuleTag::PredSucc) == one);
    auto bi = [&](const Term& b, const Term& n) { return apps(cnst(Const::tensor(B(), I())), {b, n}); };
    CHECK(root_result(Term::app(cnst(Const::iszero()), zero), RuleTag::IsZeroZero) == bi(tt(), zero));
    CHECK(root_result(Term::app(cnst(Const::iszero()), one), RuleTag::IsZeroSucc) == bi(ff(), one));
    CHECK(root_result(Term::app(cnst(Const::head()), zero), RuleTag::HeadZero) == bi(ff(), zero));
    CHECK(root_result(Term::app(cnst(Const::head()), two), RuleTag::HeadS0) == bi(ff(), two));
    CHECK(root_result(Term::app(cnst(Const::head()), one), RuleTag::HeadS1) == bi(tt(), one));
    // Ties compare as smaller.
    const Term leq = apps(cnst(Const::leq(I())), {one, one});
    CHECK(root_result(leq, RuleTag::LeqFire) ==
          apps(cnst(Const::tensor(B(), Type::tensor(I(), I()))), {tt(), apps(cnst(Const::tensor(I(), I())), {one, one})}));
    CHECK(root_result(apps(cnst(Const::leq(I())), {two, one}), RuleTag::LeqFire).fun().arg() == ff());
    // The oracle waits for canonical arguments.
    CHECK_FALSE(match_redex(apps(cnst(Const::leq(I())), {var("n", I()), one})));
}

TEST_CASE("list and tree iteration unfold one entry") {
    const Term t = worked_fixture();
    const Term r = root_result(t, RuleTag::ListCons);
    // h d1 tt (rest {h} tt)
    CHECK(r == apps(skip_step(), {d("d1"), tt(),
                                  apps(apps(cnst(Const::cons(B())), {d("d2"), ff(), cnst(Const::nil(B()))}),
                                       {Term::list_brace(skip_step()), tt()})}));
    const Type lb = Type::list(B());
    const Term leaf = Term::app(cnst(Const::leaf(B(), lb)), cnst(Const::nil(B())));
    const Term step = lams({{"d", D()}, {"a", B()}, {"l", lb}, {"r", lb}}, var("l", lb));
    const Term brace = Term::tree_brace(step, lam("x", lb, var("x", lb)));
    CHECK(root_result(Term::app(leaf, brace), RuleTag::TreeLeaf) ==
          Term::app(lam("x", lb, var("x", lb)), cnst(Const::nil(B()))));
    const Term node = apps(cnst(Const::node(B(), lb)), {d("d"), tt(), leaf, leaf});
    CHECK(root_result(Term::app(node, brace), RuleTag::TreeNode) ==
          apps(step, {d("d"), tt(), Term::app(leaf, brace), Term::app(leaf, brace)}));
}

TEST_CASE("the closure stays out of binders, pairs and braces") {
    const Term redex = Term::app(lam("x", B(), var("x", B())), tt());
    CHECK(redex_positions(lam("y", B(), redex)).empty());
    CHECK(redex_positions(Term::pair(redex, tt())).empty());
    CHECK(redex_positions(Term::app(var("f", Type::arrow(B(), B())), redex)) == std::vector<Position>{{Side::Arg}});
    const Term nested = Term::app(Term::app(lam("x", B(), lam("y", B(), var("x", B()))), redex), redex);
    const auto ps = redex_positions(nested);
    REQUIRE(ps.size() == 3);
    CHECK(to_string(ps[0]) == "fun");
    CHECK(to_string(ps[1]) == "fun.arg");
    CHECK(to_string(ps[2]) == "arg");
    CHECK(step(nested, Strategy::leftmost_outermost())->position == ps[0]);
    CHECK(step(nested, Strategy::rightmost_innermost())->position == ps[2]);
}

TEST_CASE("fixed positions and strategy names") {
    const Term redex = Term::app(lam("x", B(), var("x", B())), tt());
    const Term t = Term::app(var("f", Type::arrow(B(), B())), redex);
    CHECK(step(t, Strategy::at({Side::Arg}))->result == Term::app(var("f", Type::arrow(B(), B())), tt()));
    CHECK_THROWS_AS(step(t, Strategy::at({Side::Fun})), InvalidPosition);
    for (const char* s : {"lo", "ri", "random:17", "fixed:fun.arg"}) CHECK(Strategy::parse(s)->to_string() == s);
    CHECK_FALSE(Strategy::parse("sideways"));
    CHECK(position_from_string("fun.arg") == Position{Side::Fun, Side::Arg});
    CHECK(position_from_string("root") == Position{});
    CHECK_FALSE(position_from_string("fun.left"));
    for (std::size_t i = 0; i < kRuleCount; ++i) {
        const auto r = static_cast<RuleTag>(i);
        CHECK(rule_from_string(to_string(r)) == r);
    }
}

TEST_CASE("replay along recorded positions") {
    auto r = normalize(worked_fixture(), Strategy::random(3), 100);
    REQUIRE(r);
    Term cur = r->trace.start;
    for (const auto& s : r->trace.steps) {
        auto c = root_convert(subterm_at(cur, s.position));
        REQUIRE(c);
        CHECK(c->rule == s.rule);
        cur = replace_at(cur, s.position, c->result);
        CHECK(cur == s.result);
    }
}

TEST_CASE("matching agrees with conversion on generated terms") {
    TermGenerator gen(31);
    std::size_t redexes = 0;
    for (int i = 0; i < 300; ++i) {
        Reducer red(Strategy::random(static_cast<std::uint64_t>(i)));
        red.run(gen.generate(), 10'000, [&](std::uint64_t, const StepResult& s) {
            for (const Position& p : redex_positions(s.result)) {
                const Term& sub = subterm_at(s.result, p);
                auto c = root_convert(sub);
                REQUIRE(c);
                CHECK(match_redex(sub) == c->rule);
                ++redexes;
            }
        });
    }
    CHECK(redexes > 1000);
}

TEST_CASE("fuel") {
    auto r = normalize(worked_fixture(), Strategy::leftmost_outermost(), 4);
    REQUIRE_FALSE(r);
    CHECK(r.error().partial.size() == 4);
    Reducer red;
    const RunSummary s = red.run(worked_fixture(), 100);
    CHECK(s.normal);
    CHECK(s.steps == 9);
    CHECK(s.count(RuleTag::ListCons) == 2);
    CHECK(s.count(RuleTag::Beta) == 6);
    CHECK(s.count(RuleTag::ListNil) == 1);
}
