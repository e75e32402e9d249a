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

#ifndef NSI_GENERATE_HPP
#define NSI_GENERATE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "nsi/term.hpp"
#include "nsi/typing.hpp"

namespace nsi {

// Number of syntax-tree nodes; every constructor (including application
// and the braces) counts one.
std::size_t syntax_size(const Term& t);

struct GenOptions {
    // Approximate node budget per generated term.
    int size = 30;
    // Maximal nesting of iteration braces.
    unsigned max_brace_depth = 3;
    // Probability that a term may use free variables of non-diamond types.
    double open_rate = 0.2;
    // Maximal length of a list or depth of a tree built by constructors.
    unsigned max_data = 3;
};

// Type-directed generator of typed terms. Variables are managed as an
// affine resource pool, so linearity holds by construction; every result
// is still re-checked and rejected (and regenerated) if untypable.
// Diamonds are fresh free variables, which makes terms almost closed
// unless an open seed variable is used.
class TermGenerator {
public:
    explicit TermGenerator(std::uint64_t seed, GenOptions options = {});

    // A typed term of a randomly chosen ground-ish type.
    Term generate();
    // A typed term of the given type.
    Term generate(const Type& type);

    // (t, x, s) with x free in t, s of x's type, and the free variables of
    // t and s disjoint.
    struct SubstitutionInstance {
        Term t;
        Variable x;
        Term s;
    };
    SubstitutionInstance substitution_instance();

    // Types the generator draws from.
    const std::vector<Type>& universe() const { return universe_; }
    std::uint64_t rejections() const { return rejections_; }

private:
    struct Scope {
        std::vector<Variable> pool;
        bool closed = false;  // inside a brace: no fresh free variables
        unsigned brace_depth = 0;
    };

    std::optional<Term> gen(const Type& type, Scope& scope, int budget);
    std::optional<Term> intro(const Type& type, Scope& scope, int budget);
    std::optional<Term> take_var(const Type& type, Scope& scope);
    std::optional<Term> diamond(Scope& scope);
    std::optional<Term> beta(const Type& type, Scope& scope, int budget);
    std::optional<Term> cases(const Type& type, Scope& scope, int budget);
    std::optional<Term> projection(const Type& type, Scope& scope, int budget);
    std::optional<Term> tensor_elim(const Type& type, Scope& scope, int budget);
    std::optional<Term> list_iteration(const Type& type, Scope& scope, int budget);
    std::optional<Term> tree_iteration(const Type& type, Scope& scope, int budget);
    // Generates two alternatives sharing the pool additively.
    std::optional<std::pair<Term, Term>> additive(const Type& a, const Type& b, Scope& scope, int budget);

    Type pick_type(bool allow_diamond, bool allow_arrow);
    std::string fresh(const char* prefix);
    bool coin(double p);
    int below(int n);

    std::mt19937_64 engine_;
    GenOptions options_;
    std::vector<Type> universe_;
    std::uint64_t counter_ = 0;
    std::uint64_t rejections_ = 0;
    TypeChecker checker_;
};

// Exhaustive enumeration of closed typed terms up to a size bound over a
// finite alphabet: the given constants and lambda binders at the given
// types. Braces range over the same alphabet.
struct EnumerationOptions {
    std::size_t max_size = 8;
    std::vector<Const> constants;
    std::vector<Type> binder_types;

    // tt ff zero s0 s1 pred iszero head nil[B] cons[B] tensor[B,B]
    // tensor[Dia,B] leaf[B,B] node[B,B] leq[B]; binders at Dia, B, I, L(B).
    static EnumerationOptions defaults();
};

struct Enumeration {
    // closed_counts[n]: closed typed terms of size n (index 0 unused).
    std::vector<std::uint64_t> closed_counts;
    std::map<Type, std::uint64_t> closed_by_type;
    // Closed typed terms of type Dia (expected to be empty).
    std::vector<Term> closed_diamonds;
    // Typed terms (open in bound variables) visited across all contexts.
    std::uint64_t visited = 0;
};

// Bottom-up enumeration of typed terms by size and binder context.
Enumeration enumerate_closed(const EnumerationOptions& options);

// Exact counts of closed typed terms by size without materializing them:
// a dynamic program over typing signatures (type, used binders, syntactic
// shape) that mirrors the typing rules. Scales to sizes where storing the
// terms is infeasible; cross-checked against enumerate_closed.
struct SignatureCounts {
    std::vector<std::uint64_t> closed_counts;
    std::uint64_t closed_diamonds = 0;
};

SignatureCounts count_closed(const EnumerationOptions& options);

// Enumerates every raw closed term of each size up to `max_size` and
// type-checks it; returns the typed counts per size (for cross-checking).
std::vector<std::uint64_t> brute_force_closed_counts(const EnumerationOptions& options, std::size_t max_size);

}  // namespace nsi

#endif  // NSI_GENERATE_HPP
