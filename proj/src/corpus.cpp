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

#include "nsi/corpus.hpp"

#include <random>

#include "nsi/stdlib.hpp"
#include "nsi/tm.hpp"

namespace nsi {

std::vector<bool> sample_bits(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed * 1000003 + n);
    std::vector<bool> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (rng() & 1) != 0;
    return out;
}

std::vector<std::uint64_t> sample_values(std::size_t n, std::uint64_t seed, std::uint64_t bound) {
    std::mt19937_64 rng(seed * 2000003 + n);
    std::vector<std::uint64_t> out(n);
    for (auto& v : out) v = bound == 0 ? 0 : rng() % bound;
    return out;
}

namespace {

Term numeral_list(const std::vector<std::uint64_t>& values, const std::string& prefix = "d") {
    std::vector<Term> payloads;
    for (auto v : values) payloads.push_back(mk_numeral(v));
    return mk_list(payloads, Type::iota(), prefix);
}

Term worked_example() {
    const Type b = Type::boolean();
    const Type d = Type::diamond();
    Term h = lams({{"d", d}, {"a", b}, {"r", b}}, var("r", b));
    return apps(mk_bool_list({true, false}), {Term::list_brace(h), cnst(Const::tt())});
}

}  // namespace

std::vector<CorpusEntry> stdlib_corpus(const CorpusOptions& options) {
    const Type b = Type::boolean();
    const Type i = Type::iota();
    const Term sort_b = sort_term(b), quick_b = quicksort_term(b), sort_i = sort_term(i), quick_i = quicksort_term(i);
    const Term append_b = append_term(b), eraser_b = eraser_term(b);
    const Term unfold_b = unfold_term(b, quicksort_components(b).divide);
    const TMSpec parity = parity_machine(), increment = increment_machine();

    std::vector<CorpusEntry> out;
    out.push_back({"worked fixture", "fixture", 2, worked_example()});
    for (std::size_t n : options.sizes) {
        auto add = [&](const std::string& program, Term t) {
            out.push_back({program + " n=" + std::to_string(n), program, n, std::move(t)});
        };
        const std::vector<bool> bits = sample_bits(n, options.seed);
        const Term list = mk_bool_list(bits);
        add("sort[B]", Term::app(sort_b, list));
        add("quicksort[B]", Term::app(quick_b, list));
        add("eraser[B]", Term::app(eraser_b, list));
        const std::size_t half = n / 2;
        add("append[B]", apps(append_b, {mk_bool_list({bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(half)}, "a"),
                                          mk_bool_list({bits.begin() + static_cast<std::ptrdiff_t>(half), bits.end()}, "b")}));
        if (n <= options.numeral_max_n) {
            const Term nums = numeral_list(sample_values(n, options.seed, 64));
            add("sort[I]", Term::app(sort_i, nums));
            add("quicksort[I]", Term::app(quick_i, nums));
        }
        if (n <= options.small_max_n) {
            add("unfold[B]", Term::app(unfold_b, list));
            add("tm-parity", tm_run_term(parity, bits, n + 2));
            add("tm-increment", tm_run_term(increment, bits, n + 2));
        }
    }
    return out;
}

std::vector<CorpusEntry> generated_corpus(std::size_t count, std::uint64_t seed, const GenOptions& options) {
    TermGenerator gen(seed, options);
    std::vector<CorpusEntry> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back({"generated #" + std::to_string(k), "generated", 0, gen.generate()});
    return out;
}

std::vector<Strategy> standard_strategies(std::uint64_t seed) {
    return {Strategy::leftmost_outermost(), Strategy::rightmost_innermost(), Strategy::random(seed),
            Strategy::random(seed + 1), Strategy::random(seed + 2)};
}

PropertyReport check_properties(const Term& t, const Strategy& strategy) {
    CertifyOptions opts;
    opts.strategy = strategy;
    const Certificate c = certify(t, opts);
    PropertyReport r;
    r.strategy = strategy.to_string();
    r.typed = c.typed;
    r.message = c.type_error;
    if (!c.typed) return r;
    r.type = c.type;
    r.steps = c.descent.steps_taken;
    r.bound = c.descent.bound;
    r.strict = c.descent.strict;
    r.within_bound = c.descent.within_bound;
    r.subject_reduction = c.subject.ok;
    if (!c.subject.ok) r.message = c.subject.message;
    r.normal = c.normal;
    r.normal_form = c.normal_form;
    r.rule_counts = c.rule_counts;
    r.classification = c.classification;
    const TypeKind k = c.type.kind();
    bool almost_closed = true;
    for (const Variable& v : free_vars(c.normal_form)) almost_closed = almost_closed && v.type.is(TypeKind::Diamond);
    r.classification_applies = c.normal && almost_closed &&
                               (k == TypeKind::List || k == TypeKind::Bool || k == TypeKind::Diamond || k == TypeKind::Iota);
    if (r.classification_applies) {
        const NormalClass nc = c.classification.kind;
        r.classified = nc == NormalClass::List || nc == NormalClass::BoolValue || nc == NormalClass::DiamondVar ||
                       nc == NormalClass::ShortNumeral;
        if (!r.classified) r.message = "unclassified normal form: " + c.classification.to_string();
    }
    return r;
}

}  // namespace nsi
