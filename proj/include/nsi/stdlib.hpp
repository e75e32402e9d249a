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

#ifndef NSI_STDLIB_HPP
#define NSI_STDLIB_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsi/oracle.hpp"
#include "nsi/term.hpp"
#include "nsi/typing.hpp"

namespace nsi {

// A canonical list whose diamonds are fresh variables prefix0, prefix1, ...
Term mk_list(const std::vector<Term>& payloads, const Type& elem, const std::string& diamond_prefix = "d");
Term mk_bool_list(const std::vector<bool>& bits, const std::string& diamond_prefix = "d");

// Payloads of a canonical list (throws std::invalid_argument otherwise).
std::vector<Term> list_payloads(const Term& list);

// Short numeral of a value, least significant bit outermost; 0 is `zero`.
Term mk_numeral(std::uint64_t value);
// Value of a short numeral; nullopt for other terms or more than 64 bits.
std::optional<std::uint64_t> numeral_value(const Term& t);

// leq' : T -o T -o T (x) T, returning its arguments in ascending order.
Term leq_pair_term(const Type& elem, const OracleConfig& oracle = OracleConfig::defaults());
// insert : L(T) -o Dia -o T -o L(T), inserting into a sorted list.
Term insert_term(const Type& elem, const OracleConfig& oracle = OracleConfig::defaults());
// Insertion sort : L(T) -o L(T).
Term sort_term(const Type& elem, const OracleConfig& oracle = OracleConfig::defaults());
// append : L(T) -o L(T) -o L(T).
Term append_term(const Type& elem);
// fun l. l {fun d a r. r} nil: drops every entry.
Term eraser_term(const Type& elem);

struct QuicksortComponents {
    // T -o L(T) -o T (x) (L(T) (x) L(T)): the pivot, the entries below it
    // and the entries not below it.
    Term divide;
    // Dia -o T -o L(T) -o L(T) -o L(T): joins two sorted halves around
    // the pivot.
    Term conquer;
    // The result for the empty list.
    Term base;
};

QuicksortComponents quicksort_components(const Type& elem, const OracleConfig& oracle = OracleConfig::defaults());

// The divide-and-conquer scaffolding for a divide function
// f : T -o L(T) -o T (x) (L(T) (x) L(T)).
//
//   split    : L(T) -o L(T) * T(T, L(T))   l |-> <l, one divide step on l>
//   divide1  : L(T) -o T(T, L(T))         the second component of split
//   expand   : T(T,L(T)) -o T(T,L(T))     divide1 applied at every leaf
//   unfold   : L(T) -o T(T, L(T))         expand iterated |l| times on leaf l
//
// Linearity forbids using the input both as data and as the repetition
// count, so unfold rebuilds a copy of the input with the same diamonds
// while composing the expansion once per entry.
Term split_term(const Type& elem, const Term& divide);
Term divide1_term(const Type& elem, const Term& divide);
Term expand_term(const Type& elem, const Term& divide);
Term unfold_term(const Type& elem, const Term& divide);
// fun l. (unfold l) {conquer | fun l'. l'} : L(T) -o L(T).
Term divide_and_conquer_term(const Type& elem, const Term& divide, const Term& conquer);
Term quicksort_term(const Type& elem, const OracleConfig& oracle = OracleConfig::defaults());

struct NegativeExample {
    std::string name;
    Term term;
    TypeErrorKind expected;
};

std::vector<NegativeExample> negative_examples();

}  // namespace nsi

#endif  // NSI_STDLIB_HPP
