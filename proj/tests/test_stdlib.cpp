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
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "nsi/reduction.hpp"
#include "nsi/stdlib.hpp"
#include "nsi/typing.hpp"
#include "nsi/verify.hpp"

using namespace nsi;
using namespace nsi::fixtures;

namespace {

std::vector<bool> bools_of(const Term& list) {
    std::vector<bool> out;
    for (const Term& p : list_payloads(list)) out.push_back(p.is_const(ConstKind::True));
    return out;
}

Term run_to_normal(const Term& t) {
    Reducer r;
    RunSummary s = r.run(t, 10'000'000);
    REQUIRE(s.normal);
    return s.final_term;
}

}  // namespace

TEST_CASE("stdlib terms are closed and have the documented types") {
    const Type l = Type::list(B());
    CHECK(infer(leq_pair_term(B()))->type == Type::arrows({B(), B()}, Type::tensor(B(), B())));
    CHECK(infer(insert_term(B()))->type == Type::arrows({l, D(), B()}, l));
    CHECK(infer(sort_term(B()))->type == Type::arrow(l, l));
    CHECK(infer(append_term(B()))->type == Type::arrows({l, l}, l));
    CHECK(infer(eraser_term(B()))->type == Type::arrow(l, l));
    auto qc = quicksort_components(B());
    CHECK(infer(qc.divide)->type == Type::arrows({B(), l}, Type::tensor(B(), Type::tensor(l, l))));
    CHECK(infer(qc.conquer)->type == Type::arrows({D(), B(), l, l}, l));
    CHECK(infer(qc.base)->type == l);
    const Type tr = Type::tree(B(), l);
    CHECK(infer(split_term(B(), qc.divide))->type == Type::arrow(l, Type::product(l, tr)));
    CHECK(infer(divide1_term(B(), qc.divide))->type == Type::arrow(l, tr));
    CHECK(infer(expand_term(B(), qc.divide))->type == Type::arrow(tr, tr));
    CHECK(infer(unfold_term(B(), qc.divide))->type == Type::arrow(l, tr));
    CHECK(infer(quicksort_term(B()))->type == Type::arrow(l, l));
    CHECK(infer(sort_term(I()))->type == Type::arrow(Type::list(I()), Type::list(I())));
    for (const Term& t : {sort_term(B()), quicksort_term(B()), append_term(B())}) CHECK(free_vars(t).empty());
}

TEST_CASE("oracle must be enabled for the sorting terms") {
    CHECK_THROWS_AS(sort_term(B(), OracleConfig::none()), std::invalid_argument);
    CHECK_THROWS_AS(quicksort_term(Type::list(B())), std::invalid_argument);
}

TEST_CASE("insertion sort on booleans") {
    Term out = run_to_normal(Term::app(sort_term(B()), mk_bool_list({true, false, true})));
    CHECK(bools_of(out) == std::vector<bool>{false, true, true});
    CHECK(run_to_normal(Term::app(sort_term(B()), mk_bool_list({}))) == cnst(Const::nil(B())));
}

TEST_CASE("append") {
    Term a = mk_bool_list({true}, "a");
    Term b = mk_bool_list({false}, "b");
    Term out = run_to_normal(apps(append_term(B()), {a, b}));
    CHECK(bools_of(out) == std::vector<bool>{true, false});
    CHECK(free_vars(out).size() == 2);
    CHECK(run_to_normal(apps(append_term(B()), {mk_bool_list({}), b})) == b);
}

TEST_CASE("divide on an empty list returns the pivot and two empty lists") {
    auto qc = quicksort_components(B());
    Term out = run_to_normal(apps(qc.divide, {tt(), mk_bool_list({})}));
    Term nil = cnst(Const::nil(B()));
    const Type l = Type::list(B());
    Term expected = apps(cnst(Const::tensor(B(), Type::tensor(l, l))),
                         {tt(), apps(cnst(Const::tensor(l, l)), {nil, nil})});
    CHECK(out == expected);
}

TEST_CASE("conquer joins around the pivot") {
    auto qc = quicksort_components(B());
    Term lo = mk_bool_list({false}, "a");
    Term hi = mk_bool_list({true}, "b");
    Term out = run_to_normal(apps(qc.conquer, {d("m"), tt(), lo, hi}));
    CHECK(bools_of(out) == std::vector<bool>{false, true, true});
}

TEST_CASE("quicksort sorts and preserves length") {
    std::mt19937_64 rng(7);
    for (int n : {0, 1, 2, 3, 6, 9}) {
        std::vector<bool> in(n);
        for (int i = 0; i < n; ++i) in[i] = rng() & 1;
        Term out = run_to_normal(Term::app(quicksort_term(B()), mk_bool_list(in)));
        std::vector<bool> expected = in;
        std::sort(expected.begin(), expected.end());
        CHECK(bools_of(out) == expected);
    }
}

TEST_CASE("quicksort on numerals") {
    std::vector<Term> xs;
    for (int v : {5, 3, 9, 0, 3}) {
        ShortNumeral bits;
        for (int x = v; x > 0; x /= 2) bits.push_back(x & 1);
        xs.push_back(make_short_numeral(bits));
    }
    Term out = run_to_normal(Term::app(quicksort_term(I()), mk_list(xs, I())));
    std::vector<int> got;
    for (const Term& p : list_payloads(out)) {
        auto bits = recognize_short_numeral(p);
        REQUIRE(bits);
        int v = 0;
        for (std::size_t i = bits->size(); i-- > 0;) v = 2 * v + (*bits)[i];
        got.push_back(v);
    }
    CHECK(got == std::vector<int>{0, 3, 3, 5, 9});
}

TEST_CASE("negative examples fail with the stated error") {
    for (const auto& ex : negative_examples()) {
        CAPTURE(ex.name);
        auto r = infer(ex.term);
        REQUIRE_FALSE(r);
        CHECK(r.error().kind == ex.expected);
    }
}

TEST_CASE("non-size-increasing on sort, identity and eraser") {
    Term in = mk_bool_list({true, false, false, true, true, false, true, false});
    auto s = verify_non_size_increasing(sort_term(B()), in);
    CHECK(s.ok);
    CHECK(s.output_length == 8u);
    const Type l = Type::list(B());
    auto id = verify_non_size_increasing(lam("l", l, var("l", l)), mk_bool_list({true, true, false, false, true}));
    CHECK(id.output_length == 5u);
    auto er = verify_non_size_increasing(eraser_term(B()), in);
    CHECK(er.ok);
    CHECK(er.output_length == 0u);
}
