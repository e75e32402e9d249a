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

#ifndef NSI_TYPING_HPP
#define NSI_TYPING_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nsi/oracle.hpp"
#include "nsi/outcome.hpp"
#include "nsi/term.hpp"

namespace nsi {

enum class TypeErrorKind {
    NonDisjointContexts,
    OpenStepTerm,
    BranchContextMismatch,
    HeadTypeMismatch,
    BraceOutsidePosition,
    UnannotatedVariable,
    AritySurplus,
    OracleDisabled,
};

std::string_view to_string(TypeErrorKind k);

struct TypeError {
    TypeErrorKind kind;
    // Path from the root, e.g. {"fun", "arg", "body"}.
    std::vector<std::string> location;
    std::string message;
    // Offending variables (shared or free ones).
    std::vector<std::string> variables;

    std::string location_string() const;
    std::string to_string() const;
};

struct TypingResult {
    Type type;
    VariableSet minimal_context;
};

// Free variables are interned per checker; see TypeChecker::variable.
using VarId = std::uint32_t;

// Typing of a possibly open subterm: loose de Bruijn indices show up in
// `bound` relative to the subterm. Context vectors are immutable and shared
// between judgements that have the same context.
struct Judgement {
    using FreeContext = std::vector<VarId>;                            // sorted
    using BoundContext = std::vector<std::pair<std::uint32_t, Type>>;  // sorted by index

    Type type;
    std::shared_ptr<const FreeContext> free_ctx;
    std::shared_ptr<const BoundContext> bound_ctx;

    const FreeContext& free() const;
    const BoundContext& bound() const;
    bool context_empty() const { return free().empty() && bound().empty(); }
    std::size_t context_size() const { return free().size() + bound().size(); }
};

using JudgementPtr = std::shared_ptr<const Judgement>;

// Syntax-directed checker for the affine typing relation. Results are
// memoized per term node, so re-checking terms that share structure with
// previously checked ones (as along a reduction trace) is incremental.
class TypeChecker {
public:
    explicit TypeChecker(OracleConfig oracle = OracleConfig::defaults());

    // `t` must be locally closed.
    Outcome<TypingResult, TypeError> infer(const Term& t);
    // Works on any subterm.
    Outcome<JudgementPtr, TypeError> judge(const Term& t);
    // Weakening: typed with a minimal context inside `context`.
    bool check(const Term& t, const VariableSet& context, const Type& type);

    const OracleConfig& oracle() const { return oracle_; }
    const Variable& variable(VarId id) const { return variables_[id]; }
    VariableSet context_of(const Judgement& j) const;
    // Forgets every memoized judgement.
    void clear_cache() { owner_ = fresh_memo_owner(); }

private:
    using Result = Outcome<JudgementPtr, std::shared_ptr<const TypeError>>;

    Result compute(const Term& t);
    Result visit(const Term& t);
    Result compute_app(const Term& t);
    VarId intern(const Variable& v);
    void merge_contexts(const Judgement& a, const Judgement& b, Judgement& out, std::vector<std::string>* shared) const;
    std::vector<std::string> context_names(const Judgement& j) const;

    OracleConfig oracle_;
    std::uint64_t owner_;  // memo slot owner id
    std::vector<Variable> variables_;
    std::unordered_map<std::string, std::vector<VarId>> by_name_;
};

Outcome<TypingResult, TypeError> infer(const Term& t, const OracleConfig& oracle = OracleConfig::defaults());
bool check(const Term& t, const VariableSet& context, const Type& type,
           const OracleConfig& oracle = OracleConfig::defaults());

}  // namespace nsi

#endif  // NSI_TYPING_HPP
