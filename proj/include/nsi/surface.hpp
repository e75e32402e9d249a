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

#ifndef NSI_SURFACE_HPP
#define NSI_SURFACE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nsi/term.hpp"

namespace nsi {

// ASCII surface syntax.
//
//   types   Dia  B  I  L(t)  T(t,r)  t -o r  t (x) r  t * r
//           -o is right associative and binds loosest; (x) and * share
//           one level, also right associative.
//   terms   x  (x : T)  fun x:T. t  t s  <t, s>  {t}  {s | r}
//           tt ff zero s0 s1 pred iszero head
//           nil[T] cons[T] leq[T] tensor[T,R] leaf[T,R] node[T,R]
//   program items, each ended by ';' (optional after the main term):
//           var x y : T;      declares typed free variables
//           let name = t;     non-recursive abbreviation, inlined
//           t                 the main term, last
//   comments run from `--` to the end of the line.
//
// A variable occurrence resolves to the nearest enclosing binder, then to
// a `let`, then to a `var` declaration; otherwise it is a free variable
// without annotation (rejected by the type checker).

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

struct SurfaceProgram {
    std::vector<std::pair<std::string, Type>> declarations;
    // Already inlined into `main`; kept for reference.
    std::vector<std::pair<std::string, Term>> definitions;
    Term main;
};

SurfaceProgram parse_program(std::string_view text);
// The main term of a program.
Term parse_term(std::string_view text);
Type parse_type(std::string_view text);

// Term text with bare free-variable names; binders are renamed where
// needed so that no binder captures another name.
std::string pretty(const Term& t);
// A complete program: `var` declarations for the free variables followed
// by the term, so that parse_term(pretty_program(t)) == t. Free variables
// sharing a name at different types are annotated at each occurrence.
std::string pretty_program(const Term& t);

}  // namespace nsi

#endif  // NSI_SURFACE_HPP
