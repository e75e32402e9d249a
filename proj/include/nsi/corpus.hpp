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

#ifndef NSI_CORPUS_HPP
#define NSI_CORPUS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nsi/generate.hpp"
#include "nsi/reduction.hpp"
#include "nsi/verify.hpp"

namespace nsi {

// A named start term of the property corpus.
struct CorpusEntry {
    std::string name;     // e.g. "sort[B] n=8"
    std::string program;  // e.g. "sort[B]", "generated"
    std::size_t n = 0;    // input length, 0 for generated terms
    Term term;
};

struct CorpusOptions {
    std::vector<std::size_t> sizes = {0, 1, 2, 4, 8, 16, 32, 64};
    // Programs over numeral lists are instantiated up to this length.
    std::size_t numeral_max_n = 16;
    // Turing machine runs and the bare unfolding up to this length.
    std::size_t small_max_n = 8;
    std::uint64_t seed = 1;
};

// Deterministic sample inputs.
std::vector<bool> sample_bits(std::size_t n, std::uint64_t seed);
std::vector<std::uint64_t> sample_values(std::size_t n, std::uint64_t seed, std::uint64_t bound);

// The standard programs applied to sample inputs of every size: insertion
// sort and quicksort over B and I, append, eraser, the tree-building
// unfolding, Turing machine runs, and the worked fixture.
std::vector<CorpusEntry> stdlib_corpus(const CorpusOptions& options = {});

// `count` random typed terms.
std::vector<CorpusEntry> generated_corpus(std::size_t count, std::uint64_t seed, const GenOptions& options = {});

// Leftmost-outermost, rightmost-innermost and three seeded random orders.
std::vector<Strategy> standard_strategies(std::uint64_t seed);

// Outcome of one certified run of a corpus term.
struct PropertyReport {
    std::string strategy;
    bool typed = false;
    Type type;
    std::uint64_t steps = 0;
    Natural bound = 0;
    bool strict = false;
    bool within_bound = false;
    bool subject_reduction = false;
    bool normal = false;
    Term normal_form;
    // Normal forms of type L(t), B, Dia or I that are almost closed must be
    // values; `classified` is vacuously true otherwise.
    bool classification_applies = false;
    bool classified = true;
    Classification classification;
    std::array<std::uint64_t, kRuleCount> rule_counts{};
    std::string message;

    bool ok() const { return typed && strict && within_bound && subject_reduction && normal && classified; }
};

PropertyReport check_properties(const Term& t, const Strategy& strategy);

}  // namespace nsi

#endif  // NSI_CORPUS_HPP
