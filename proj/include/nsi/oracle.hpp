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

#ifndef NSI_ORACLE_HPP
#define NSI_ORACLE_HPP

#include <optional>
#include <vector>

#include "nsi/term.hpp"

namespace nsi {

// The external ordering behind leq[T]. Supported element types are B
// (ff < tt) and I (short numerals read as binary numbers, outermost
// constructor least significant). Ties count as "smaller".
class OracleConfig {
public:
    static OracleConfig defaults();
    static OracleConfig none();

    // Throws std::invalid_argument for types without a canonical order.
    OracleConfig& enable(const Type& t);
    bool enabled_at(const Type& t) const;
    const std::vector<Type>& enabled() const { return enabled_; }

    // true when a <= b, false when a > b, nullopt unless both are canonical
    // values of `t`.
    std::optional<bool> compare(const Type& t, const Term& a, const Term& b) const;

private:
    std::vector<Type> enabled_;
};

// Numeric value comparison of short numerals: -1, 0, 1.
int compare_numerals(const ShortNumeral& a, const ShortNumeral& b);

}  // namespace nsi

#endif  // NSI_ORACLE_HPP
