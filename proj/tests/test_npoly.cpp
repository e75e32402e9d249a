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


#include <random>
#include <stdexcept>

#include "doctest.h"
#include "npoly_expr.hpp"
#include "nsi/npoly.hpp"

using namespace nsi;
using nsi::testing::random_expr;

TEST_CASE("generators") {
    CHECK(NPoly::constant(0).is_zero());
    CHECK(NPoly::constant(0).to_string() == "0");
    CHECK(NPoly::constant(3).to_string() == "3");
    CHECK(NPoly::identity().to_string() == "X");
    CHECK(NPoly::capped(2).to_string() == "prefix=[0,1]; tail=2");
    CHECK(NPoly::capped(0).is_zero());
    for (Natural n = 0; n < 10; ++n) {
        CHECK(NPoly::identity()(n) == n);
        CHECK(NPoly::capped(4)(n) == std::min<Natural>(n, 4));
    }
}

TEST_CASE("arithmetic in canonical form") {
    const NPoly x = NPoly::identity();
    const NPoly p = x * x * NPoly::constant(2) + NPoly::constant(3);
    CHECK(p.to_string() == "3+2*X^2");
    CHECK(p.degree() == 2);
    CHECK(p(10) == 203);
    // X_2 * X agrees with 2X from 2 on, so only 0 and 1 are explicit.
    const NPoly q = NPoly::capped(2) * x;
    CHECK(q.prefix() == std::vector<Natural>{0, 1});
    CHECK(q.tail() == std::vector<Natural>{0, 2});
    // sup(X, 5): 5 below 5, X from 5 on.
    const NPoly s = NPoly::sup(x, NPoly::constant(5));
    CHECK(s.threshold() == 5);
    CHECK(s(3) == 5);
    CHECK(s(7) == 7);
    // The cap disappears once it is dominated.
    CHECK(NPoly::sup(NPoly::capped(3), x) == x);
    CHECK(NPoly::capped(3) + NPoly::constant(0) == NPoly::capped(3));
}

TEST_CASE("sup of crossing polynomials") {
    // 10 + X versus X^2: the square wins from 4 on.
    const NPoly x = NPoly::identity();
    const NPoly f = NPoly::constant(10) + x;
    const NPoly g = x * x;
    const NPoly s = NPoly::sup(f, g);
    for (Natural n = 0; n < 50; ++n) CHECK(s(n) == std::max(f(n), g(n)));
    CHECK(s.tail() == g.tail());
    CHECK(s.threshold() == 4);
}

TEST_CASE("pointwise order") {
    const NPoly x = NPoly::identity();
    CHECK(NPoly::capped(5).leq(x));
    CHECK_FALSE(x.leq(NPoly::capped(5)));
    CHECK(NPoly::capped(5).leq(NPoly::constant(5)));
    CHECK_FALSE(NPoly::constant(5).leq(NPoly::capped(5)));
    CHECK((x * x).leq(x * x + NPoly::constant(1)));
    // X^2 exceeds 3X + 5 only from 5 on.
    CHECK_FALSE((x * x).leq(x * NPoly::constant(3) + NPoly::constant(5)));
    CHECK(NPoly().leq(NPoly()));
}

TEST_CASE("overflow is detected") {
    CHECK_THROWS_AS(checked_add(~Natural{0}, 1), std::overflow_error);
    CHECK_THROWS_AS(checked_mul(Natural{1} << 40, Natural{1} << 40), std::overflow_error);
    CHECK(checked_mul(0, ~Natural{0}) == 0);
}

TEST_CASE("canonical evaluation equals direct evaluation") {
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 500; ++k) {
        auto e = random_expr(rng, 4);
        const NPoly p = e->build();
        CAPTURE(e->to_string());
        CAPTURE(p.to_string());
        for (Natural n = 0; n <= 200; ++n) REQUIRE(p(n) == e->eval(n));
        // Canonical: no trailing zeros, minimal threshold.
        if (!p.tail().empty()) CHECK(p.tail().back() != 0);
        if (p.threshold() > 0) {
            const Natural k = p.threshold() - 1;
            Natural tail_at_k = 0;
            for (std::size_t i = p.tail().size(); i-- > 0;) tail_at_k = tail_at_k * k + p.tail()[i];
            CHECK(p.prefix().back() != tail_at_k);
        }
    }
}

TEST_CASE("order agrees with sampling") {
    std::mt19937_64 rng(99);
    int decided = 0;
    for (int k = 0; k < 500; ++k) {
        auto f = random_expr(rng, 3)->build();
        auto g = random_expr(rng, 3)->build();
        bool violated = false;
        for (Natural n = 0; n <= 300 && !violated; ++n) violated = f(n) > g(n);
        if (violated) {
            CHECK_FALSE(f.leq(g));
            ++decided;
        } else if (f.leq(g)) {
            ++decided;
        }
        CHECK(f.leq(f));
        CHECK(f.leq(f + g));
        CHECK(f.leq(NPoly::sup(f, g)));
    }
    CHECK(decided > 400);
}
