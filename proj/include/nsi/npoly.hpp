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

#ifndef NSI_NPOLY_HPP
#define NSI_NPOLY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace nsi {

using Natural = std::uint64_t;

// Overflow-checked arithmetic on naturals; throws std::overflow_error.
Natural checked_add(Natural a, Natural b);
Natural checked_mul(Natural a, Natural b);

// A function N -> N that is eventually polynomial, kept in canonical form:
// explicit values below a threshold K and a polynomial with natural
// coefficients from K on. Every function built from constants, the identity
// X, the caps X_n = min(X, n), pointwise +, * and sup has such a form, which
// makes the pointwise order decidable exactly.
//
// Canonical means: no trailing zero tail coefficients, and K is minimal
// (prefix[K-1] differs from the tail evaluated at K-1).
class NPoly {
public:
    NPoly() : tail_{} {}

    static NPoly constant(Natural c);
    static NPoly identity();
    static NPoly capped(Natural n);

    friend NPoly operator+(const NPoly& f, const NPoly& g);
    friend NPoly operator*(const NPoly& f, const NPoly& g);
    static NPoly sup(const NPoly& f, const NPoly& g);

    Natural operator()(Natural n) const;

    // f <= g at every natural number.
    bool leq(const NPoly& g) const;

    Natural threshold() const { return static_cast<Natural>(prefix_.size()); }
    const std::vector<Natural>& prefix() const { return prefix_; }
    // Coefficients, constant term first.
    const std::vector<Natural>& tail() const { return tail_; }
    std::size_t degree() const { return tail_.empty() ? 0 : tail_.size() - 1; }
    bool is_zero() const { return prefix_.empty() && tail_.empty(); }

    // "prefix=[...]; tail=..." (the prefix part is omitted when empty).
    std::string to_string() const;
    // Just the polynomial tail, e.g. "3+2*X^2".
    std::string tail_string() const;
    std::string prefix_string() const;

    friend bool operator==(const NPoly&, const NPoly&) = default;

private:
    NPoly(std::vector<Natural> prefix, std::vector<Natural> tail);
    void normalize();
    Natural eval_tail(Natural n) const;

    std::vector<Natural> prefix_;
    std::vector<Natural> tail_;
};

}  // namespace nsi

#endif  // NSI_NPOLY_HPP
