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

#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "nsi/generate.hpp"
#include "nsi/surface.hpp"
#include "nsi/typing.hpp"

using namespace nsi;
using namespace nsi::fixtures;

TEST_CASE("syntax size") {
    CHECK(syntax_size(tt()) == 1);
    CHECK(syntax_size(lam("x", B(), var("x", B()))) == 2);
    // cons d tt nil: three applications and four leaves.
    CHECK(syntax_size(apps(cnst(Const::cons(B())), {d("d"), tt(), cnst(Const::nil(B()))})) == 7);
    CHECK(syntax_size(Term::list_brace(skip_step())) == 5);
}

TEST_CASE("generated terms are typed at the requested type") {
    TermGenerator gen(7);
    TypeChecker checker;
    int open = 0;
    for (int i = 0; i < 300; ++i) {
        const Type& ty = gen.universe()[static_cast<std::size_t>(i) % gen.universe().size()];
        Term t = gen.generate(ty);
        auto r = checker.infer(t);
        REQUIRE_MESSAGE(r.ok(), pretty(t));
        CHECK(r.value().type == ty);
        CHECK(t.locally_closed());
        const auto ctx = r.value().minimal_context;
        if (std::any_of(ctx.begin(), ctx.end(), [](const Variable& v) { return !v.type.is(TypeKind::Diamond); })) ++open;
    }
    CHECK(open > 0);
}

TEST_CASE("generation is deterministic per seed") {
    TermGenerator a(42), b(42), c(43);
    std::vector<Term> xs, ys, zs;
    for (int i = 0; i < 20; ++i) {
        xs.push_back(a.generate());
        ys.push_back(b.generate());
        zs.push_back(c.generate());
    }
    CHECK(xs == ys);
    CHECK(xs != zs);
}

TEST_CASE("substitution instances are well formed") {
    TermGenerator gen(11);
    TypeChecker checker;
    for (int i = 0; i < 100; ++i) {
        auto [t, x, s] = gen.substitution_instance();
        CHECK(occurs_free(t, x));
        auto rt = checker.infer(t);
        auto rs = checker.infer(s);
        REQUIRE(rt.ok());
        REQUIRE(rs.ok());
        CHECK(rs.value().type == x.type);
        for (const Variable& v : free_vars(s)) CHECK_FALSE(occurs_free(t, v));
        auto ru = checker.infer(substitute(t, x, s));
        REQUIRE(ru.ok());
        CHECK(ru.value().type == rt.value().type);
    }
}

TEST_CASE("enumeration agrees with brute force") {
    EnumerationOptions o = EnumerationOptions::defaults();
    o.max_size = 5;
    const Enumeration e = enumerate_closed(o);
    const auto raw = brute_force_closed_counts(o, 5);
    const SignatureCounts sc = count_closed(o);
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK(e.closed_counts[n] == raw[n]);
        CHECK(sc.closed_counts[n] == raw[n]);
    }
    CHECK(raw[1] == o.constants.size());
    CHECK(e.closed_diamonds.empty());
    CHECK(sc.closed_diamonds == 0);
}

TEST_CASE("signature counts agree with the term enumeration") {
    EnumerationOptions o = EnumerationOptions::defaults();
    o.max_size = 6;
    const Enumeration e = enumerate_closed(o);
    const SignatureCounts sc = count_closed(o);
    CHECK(sc.closed_counts == e.closed_counts);
    CHECK(e.closed_counts[6] == 374816);
}

TEST_CASE("open diamonds are counted when binders supply them") {
    // Under a diamond binder the body may be the diamond itself; the
    // counter must see it as an open term of type Dia.
    EnumerationOptions o;
    o.max_size = 3;
    o.constants = {Const::tt()};
    o.binder_types = {D()};
    const SignatureCounts sc = count_closed(o);
    // tt;  fun d. d, fun d. tt;  fun d. fun e. {d, e, tt}, <tt, tt>, tt tt (untyped).
    CHECK(sc.closed_counts[1] == 1);
    CHECK(sc.closed_counts[2] == 2);
    CHECK(sc.closed_counts[3] == 4);
    CHECK(sc.closed_diamonds == 0);
    CHECK(brute_force_closed_counts(o, 3) == sc.closed_counts);
}
