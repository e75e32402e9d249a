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

#ifndef NSI_TESTS_NPOLY_EXPR_HPP
#define NSI_TESTS_NPOLY_EXPR_HPP

#include <algorithm>
#include <memory>
#include <random>
#include <string>

#include "nsi/npoly.hpp"

namespace nsi::testing {

// Expression trees over constants, X, X_n, +, * and sup, evaluated both
// through the canonical form and directly, point by point.
struct Expr {
    enum class Op { Const, X, Cap, Add, Mul, Sup } op = Op::Const;
    Natural value = 0;
    std::shared_ptr<const Expr> a, b;

    Natural eval(Natural n) const {
        switch (op) {
        case Op::Const: return value;
        case Op::X: return n;
        case Op::Cap: return std::min(n, value);
        case Op::Add: return checked_add(a->eval(n), b->eval(n));
        case Op::Mul: return checked_mul(a->eval(n), b->eval(n));
        case Op::Sup: return std::max(a->eval(n), b->eval(n));
        }
        return 0;
    }

    NPoly build() const {
        switch (op) {
        case Op::Const: return NPoly::constant(value);
        case Op::X: return NPoly::identity();
        case Op::Cap: return NPoly::capped(value);
        case Op::Add: return a->build() + b->build();
        case Op::Mul: return a->build() * b->build();
        case Op::Sup: return NPoly::sup(a->build(), b->build());
        }
        return {};
    }

    std::string to_string() const {
        switch (op) {
        case Op::Const: return std::to_string(value);
        case Op::X: return "X";
        case Op::Cap: return "X_" + std::to_string(value);
        case Op::Add: return "(" + a->to_string() + " + " + b->to_string() + ")";
        case Op::Mul: return "(" + a->to_string() + " * " + b->to_string() + ")";
        case Op::Sup: return "sup(" + a->to_string() + ", " + b->to_string() + ")";
        }
        return "?";
    }
};

// Random expression; `degree` bounds the polynomial degree so that values
// at N <= 1000 stay far below 2^64.
inline std::shared_ptr<const Expr> random_expr(std::mt19937_64& rng, int depth, int degree = 4) {
    auto e = std::make_shared<Expr>();
    const int choice = depth <= 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 6);
    switch (choice) {
    case 0:
        e->op = Expr::Op::Const;
        e->value = rng() % 12;
        break;
    case 1:
        e->op = degree > 0 ? Expr::Op::X : Expr::Op::Const;
        e->value = rng() % 12;
        break;
    case 2:
        e->op = Expr::Op::Cap;
        e->value = rng() % 40;
        break;
    case 3:
        e->op = Expr::Op::Add;
        e->a = random_expr(rng, depth - 1, degree);
        e->b = random_expr(rng, depth - 1, degree);
        break;
    case 4: {
        e->op = Expr::Op::Mul;
        const int left = degree / 2;
        e->a = random_expr(rng, depth - 1, left);
        e->b = random_expr(rng, depth - 1, degree - left);
        break;
    }
    default:
        e->op = Expr::Op::Sup;
        e->a = random_expr(rng, depth - 1, degree);
        e->b = random_expr(rng, depth - 1, degree);
        break;
    }
    return e;
}

}  // namespace nsi::testing

#endif  // NSI_TESTS_NPOLY_EXPR_HPP
