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

#include "nsi/npoly.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace nsi {

using Big = boost::multiprecision::cpp_int;

Natural checked_add(Natural a, Natural b) {
    Natural r = a + b;
    if (r < a) throw std::overflow_error("natural overflow in addition");
    return r;
}

Natural checked_mul(Natural a, Natural b) {
    if (a != 0 && b > UINT64_MAX / a) throw std::overflow_error("natural overflow in multiplication");
    return a * b;
}

namespace {

using Poly = std::vector<Natural>;
using BigPoly = std::vector<Big>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = checked_add(out[i], b[i]);
    trim(out);
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = checked_add(out[i + j], checked_mul(a[i], b[j]));
    trim(out);
    return out;
}

BigPoly big_diff(const Poly& a, const Poly& b) {
    BigPoly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

Big big_eval(const BigPoly& p, const Big& n) {
    Big acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * n + p[i];
    return acc;
}

// Coefficients of p(x + shift).
BigPoly taylor_shift(BigPoly p, const Big& shift) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) p[j - 1] += shift * p[j];
    return p;
}

// Smallest k >= start with d(m) >= 0 for all m >= k. Requires a positive
// leading coefficient.
Natural first_nonnegative_from(const BigPoly& d, Natural start) {
    BigPoly shifted = taylor_shift(d, Big(start));
    if (std::all_of(shifted.begin(), shifted.end(), [](const Big& c) { return c >= 0; })) return start;
    // Cauchy: every real root has |r| < 1 + max|a_i| / a_lead.
    const Big& lead = d.back();
    Big largest = 0;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) largest = std::max(largest, Big(abs(d[i])));
    Big bound = 1 + (largest + lead - 1) / lead;
    if (bound <= start) return start;
    if (bound - start > Big(50'000'000)) throw std::overflow_error("NPoly: crossover search range too large");
    Natural hi = static_cast<Natural>(bound);
    for (Natural n = hi; n-- > start;) {
        if (big_eval(d, Big(n)) < 0) return n + 1;
    }
    return start;
}

}  // namespace

NPoly::NPoly(std::vector<Natural> prefix, std::vector<Natural> tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    normalize();
}

void NPoly::normalize() {
    trim(tail_);
    while (!prefix_.empty() && prefix_.back() == eval_tail(prefix_.size() - 1)) prefix_.pop_back();
}

NPoly NPoly::constant(Natural c) { return NPoly({}, {c}); }
NPoly NPoly::identity() { return NPoly({}, {0, 1}); }

NPoly NPoly::capped(Natural n) {
    std::vector<Natural> prefix(n);
    for (Natural i = 0; i < n; ++i) prefix[i] = i;
    return NPoly(std::move(prefix), {n});
}

Natural NPoly::eval_tail(Natural n) const {
    Natural acc = 0;
    for (std::size_t i = tail_.size(); i-- > 0;) acc = checked_add(checked_mul(acc, n), tail_[i]);
    return acc;
}

Natural NPoly::operator()(Natural n) const { return n < prefix_.size() ? prefix_[n] : eval_tail(n); }

NPoly operator+(const NPoly& f, const NPoly& g) {
    const Natural k = std::max(f.threshold(), g.threshold());
    std::vector<Natural> prefix(k);
    for (Natural i = 0; i < k; ++i) prefix[i] = checked_add(f(i), g(i));
    return NPoly(std::move(prefix), poly_add(f.tail_, g.tail_));
}

NPoly operator*(const NPoly& f, const NPoly& g) {
    const Natural k = std::max(f.threshold(), g.threshold());
    std::vector<Natural> prefix(k);
    for (Natural i = 0; i < k; ++i) prefix[i] = checked_mul(f(i), g(i));
    return NPoly(std::move(prefix), poly_mul(f.tail_, g.tail_));
}

NPoly NPoly::sup(const NPoly& f, const NPoly& g) {
    Natural k = std::max(f.threshold(), g.threshold());
    BigPoly d = big_diff(f.tail_, g.tail_);
    const Poly* tail = &f.tail_;
    if (!d.empty()) {
        if (d.back() > 0) {
            k = first_nonnegative_from(d, k);
        } else {
            for (auto& c : d) c = -c;
            k = first_nonnegative_from(d, k);
            tail = &g.tail_;
        }
    }
    std::vector<Natural> prefix(k);
    for (Natural i = 0; i < k; ++i) prefix[i] = std::max(f(i), g(i));
    return NPoly(std::move(prefix), *tail);
}

bool NPoly::leq(const NPoly& g) const {
    const Natural k = std::max(threshold(), g.threshold());
    for (Natural i = 0; i < k; ++i)
        if ((*this)(i) > g(i)) return false;
    BigPoly d = big_diff(g.tail_, tail_);
    if (d.empty()) return true;
    if (d.back() < 0) return false;
    return first_nonnegative_from(d, k) == k;
}

std::string NPoly::tail_string() const {
    if (tail_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < tail_.size(); ++i) {
        if (tail_[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(tail_[i]);
            continue;
        }
        if (tail_[i] != 1) out += std::to_string(tail_[i]) + "*";
        out += "X";
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

std::string NPoly::prefix_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(prefix_[i]);
    }
    return out + "]";
}

std::string NPoly::to_string() const {
    if (prefix_.empty()) return tail_string();
    return "prefix=" + prefix_string() + "; tail=" + tail_string();
}

}  // namespace nsi
