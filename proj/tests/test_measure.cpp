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
#include "nsi/corpus.hpp"
#include "nsi/generate.hpp"
#include "nsi/measure.hpp"
#include "nsi/reduction.hpp"
#include "nsi/stdlib.hpp"

using namespace nsi;
using namespace nsi::fixtures;

TEST_CASE("brace weights") {
    const Type lb = Type::list(B());
    // Four syntax nodes in the step; an unknown list weighs X per node.
    CHECK(poly_bound(apps(var("l", lb), {Term::list_brace(skip_step()), tt()})).to_string() == "4*X");
    // A canonical list with two entries weighs X_2 per node instead.
    CHECK(poly_bound(worked_fixture()).to_string() == "prefix=[0,4]; tail=8");
    // Tree braces weigh both the step (5 nodes) and the leaf case (2).
    const Type tb = Type::tree(B(), B());
    const Term s = lams({{"d", D()}, {"a", B()}, {"l", B()}, {"r", B()}}, var("l", B()));
    CHECK(poly_bound(Term::app(var("t", tb), Term::tree_brace(s, lam("x", B(), var("x", B()))))).to_string() == "7*X");
    // Brace-free terms have a zero polynomial.
    CHECK(poly_bound(two_list()).is_zero());
    CHECK(poly_bound(lam("x", B(), var("x", B()))).is_zero());
}

TEST_CASE("sorting bounds") {
    const NPoly sort = poly_bound(sort_term(B()));
    CHECK(sort.to_string() == "14*X+33*X^2");
    CHECK(sort.degree() == 2);
    CHECK(poly_bound(insert_term(B())).degree() == 1);
    CHECK(poly_bound(quicksort_term(B())).degree() == 4);
}

TEST_CASE("measure along the worked fixture") {
    const Term t = worked_fixture();
    CHECK(measure(t).length == 8);
    CHECK(measure_at(t, 2) == 16);
    auto r = normalize(t, Strategy::leftmost_outermost(), 100);
    REQUIRE(r);
    std::vector<Natural> values = {measure_at(t, 2)};
    for (const auto& s : r->trace.steps) values.push_back(measure_at(s.result, 2));
    CHECK(values == std::vector<Natural>{16, 15, 13, 11, 9, 8, 6, 4, 2, 1});
}

TEST_CASE("pointwise evaluation matches the polynomial") {
    for (const auto& e : stdlib_corpus({{0, 2, 5}, 5, 3, 7})) {
        const Natural n = free_vars(e.term).size();
        PointwiseMeasure mu(n);
        CHECK(mu(e.term) == measure_at(e.term, n));
        Reducer r(Strategy::random(5));
        std::size_t checked = 0;
        r.run(e.term, 2000, [&](std::uint64_t, const StepResult& s) {
            if (++checked % 7 == 0) CHECK(mu(s.result) == measure_at(s.result, n));
        });
    }
    TermGenerator gen(17);
    for (int i = 0; i < 200; ++i) {
        const Term t = gen.generate();
        for (Natural n : {0, 1, 5}) {
            PointwiseMeasure mu(n);
            CHECK(mu(t) == measure_at(t, n));
        }
    }
}

TEST_CASE("substitution does not increase length or bound") {
    TermGenerator gen(23);
    for (int i = 0; i < 200; ++i) {
        auto [t, x, s] = gen.substitution_instance();
        const Term u = substitute(t, x, s);
        CHECK(length(u) <= length(t) + length(s));
        CHECK(poly_bound(u).leq(poly_bound(t) + poly_bound(s)));
    }
}
