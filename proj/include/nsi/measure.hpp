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

#ifndef NSI_MEASURE_HPP
#define NSI_MEASURE_HPP

#include <cstdint>
#include "nsi/npoly.hpp"
#include "nsi/term.hpp"

namespace nsi {

std::uint64_t length(const Term& t);

// The polynomial bound of a term, defined on raw syntax. Iteration braces
// weigh X (resp. X_n once the iterated list or tree is canonical with n
// entries) times the size of their step terms.
NPoly poly_bound(const Term& t);

struct Measure {
    NPoly poly;
    Natural length = 0;

    Natural at(Natural n) const { return checked_add(poly(n), length); }
};

Measure measure(const Term& t);

// poly_bound(t)(n) + length(t).
Natural measure_at(const Term& t, Natural n);

// Evaluates the same measure pointwise at a fixed argument without building
// NPoly values. Values are memoized on the term nodes and survive across
// calls, so consecutive terms of a trace are measured incrementally.
class PointwiseMeasure {
public:
    explicit PointwiseMeasure(Natural n) : n_(n), owner_(fresh_memo_owner()) {}

    Natural argument() const { return n_; }
    Natural poly_at(const Term& t);
    Natural operator()(const Term& t) { return checked_add(poly_at(t), t.length()); }

private:
    Natural compute(const Term& t);

    Natural n_;
    std::uint64_t owner_;  // memo slot owner id
};

}  // namespace nsi

#endif  // NSI_MEASURE_HPP
