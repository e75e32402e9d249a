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

#include "nsi/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace nsi {

OracleConfig OracleConfig::defaults() {
    OracleConfig c;
    c.enable(Type::boolean()).enable(Type::iota());
    return c;
}

OracleConfig OracleConfig::none() { return OracleConfig{}; }

OracleConfig& OracleConfig::enable(const Type& t) {
    if (!t.is(TypeKind::Bool) && !t.is(TypeKind::Iota))
        throw std::invalid_argument("leq oracle has no canonical order at " + t.to_string());
    if (!enabled_at(t)) enabled_.push_back(t);
    return *this;
}

bool OracleConfig::enabled_at(const Type& t) const {
    return std::find(enabled_.begin(), enabled_.end(), t) != enabled_.end();
}

int compare_numerals(const ShortNumeral& a, const ShortNumeral& b) {
    // Innermost constructor is the most significant bit; trailing zeros
    // (innermost s0) do not change the value.
    auto significant = [](const ShortNumeral& v) {
        std::size_t n = v.size();
        while (n > 0 && v[n - 1] == 0) --n;
        return n;
    };
    std::size_t na = significant(a);
    std::size_t nb = significant(b);
    if (na != nb) return na < nb ? -1 : 1;
    for (std::size_t i = na; i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::optional<bool> OracleConfig::compare(const Type& t, const Term& a, const Term& b) const {
    if (!enabled_at(t)) return std::nullopt;
    if (t.is(TypeKind::Bool)) {
        auto value = [](const Term& x) -> std::optional<int> {
            if (x.is_const(ConstKind::True)) return 1;
            if (x.is_const(ConstKind::False)) return 0;
            return std::nullopt;
        };
        auto va = value(a);
        auto vb = value(b);
        if (!va || !vb) return std::nullopt;
        return *va <= *vb;
    }
    auto na = recognize_short_numeral(a);
    auto nb = recognize_short_numeral(b);
    if (!na || !nb) return std::nullopt;
    return compare_numerals(*na, *nb) <= 0;
}

}  // namespace nsi
