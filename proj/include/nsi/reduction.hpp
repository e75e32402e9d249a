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

#ifndef NSI_REDUCTION_HPP
#define NSI_REDUCTION_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nsi/oracle.hpp"
#include "nsi/outcome.hpp"
#include "nsi/term.hpp"

namespace nsi {

enum class RuleTag {
    Beta,
    ProjFst,
    ProjSnd,
    IfTrue,
    IfFalse,
    TensorElim,
    ListNil,
    ListCons,
    TreeLeaf,
    TreeNode,
    PredZero,
    PredSucc,
    IsZeroZero,
    IsZeroSucc,
    HeadZero,
    HeadS0,
    HeadS1,
    LeqFire,
};

inline constexpr std::size_t kRuleCount = 18;

std::string_view to_string(RuleTag r);
std::optional<RuleTag> rule_from_string(std::string_view s);

enum class Side : std::uint8_t { Fun, Arg };

// A path from the root through application nodes only.
using Position = std::vector<Side>;

// "root" or a dotted path such as "fun.arg".
std::string to_string(const Position& p);
std::optional<Position> position_from_string(std::string_view s);

struct Conversion {
    RuleTag rule;
    Term result;
};

// The rule matching at the root of `t`, without building the contractum.
std::optional<RuleTag> match_redex(const Term& t, const OracleConfig& oracle = OracleConfig::defaults());
// The conversion matching at the root of `t`, if any.
std::optional<Conversion> root_convert(const Term& t, const OracleConfig& oracle = OracleConfig::defaults());

// Subterm at a position; throws std::out_of_range for an invalid path.
const Term& subterm_at(const Term& t, const Position& p);
// Replaces the subterm at a position, rebuilding the spine above it.
Term replace_at(const Term& t, const Position& p, const Term& s);

struct Strategy {
    enum class Kind { LeftmostOutermost, RightmostInnermost, Random, Fixed };

    Kind kind = Kind::LeftmostOutermost;
    std::uint64_t seed = 0;
    Position fixed;

    static Strategy leftmost_outermost() { return {Kind::LeftmostOutermost, 0, {}}; }
    static Strategy rightmost_innermost() { return {Kind::RightmostInnermost, 0, {}}; }
    static Strategy random(std::uint64_t seed) { return {Kind::Random, seed, {}}; }
    static Strategy at(Position p) { return {Kind::Fixed, 0, std::move(p)}; }

    // "lo", "ri", "random:<seed>" or "fixed:<path>".
    std::string to_string() const;
    static std::optional<Strategy> parse(std::string_view s);
};

class InvalidPosition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct StepResult {
    Position position;
    RuleTag rule;
    Term result;
};

struct TraceStep {
    Position position;
    RuleTag rule;
    Term result;
};

struct Trace {
    Term start;
    std::string strategy;
    std::vector<TraceStep> steps;

    const Term& final_term() const { return steps.empty() ? start : steps.back().result; }
    std::size_t size() const { return steps.size(); }
};

struct FuelExhausted {
    Trace partial;
};

struct Normalized {
    Term normal_form;
    Trace trace;
};

// Summary of a streaming run.
struct RunSummary {
    Term final_term;
    std::uint64_t steps = 0;
    bool normal = false;
    std::array<std::uint64_t, kRuleCount> rule_counts{};

    std::uint64_t count(RuleTag r) const { return rule_counts[static_cast<std::size_t>(r)]; }
};

// Called after every step with the step number (1-based) and the step.
using StepObserver = std::function<void(std::uint64_t, const StepResult&)>;

// Performs closure steps under one strategy. Every node carries a
// conservative flag that is false when its subtree certainly holds no
// redex, so searches skip normal subterms; since a step only rebuilds the
// spine above the contracted redex, consecutive searches stay cheap.
class Reducer {
public:
    explicit Reducer(Strategy strategy = Strategy::leftmost_outermost(),
                     OracleConfig oracle = OracleConfig::defaults());

    const Strategy& strategy() const { return strategy_; }

    // Every redex position, leftmost-outermost first.
    std::vector<Position> redex_positions(const Term& t);
    // One step at the selected redex; nullopt iff `t` is normal. Throws
    // InvalidPosition when a fixed position is not a redex.
    std::optional<StepResult> step(const Term& t);

    // Iterates until normal or `fuel` steps have been taken.
    Outcome<Normalized, FuelExhausted> normalize(const Term& t, std::uint64_t fuel);
    // Streaming variant that does not keep intermediate terms.
    RunSummary run(const Term& t, std::uint64_t fuel, const StepObserver& observer = {});

private:
    bool is_redex(const Term& t);
    bool has_redex(const Term& t);
    bool find_lo(const Term& t, Position& path);
    bool find_ri(const Term& t, Position& path);
    void collect(const Term& t, Position& path, std::vector<Position>& out);

    Strategy strategy_;
    OracleConfig oracle_;
    std::mt19937_64 engine_;
};

std::vector<Position> redex_positions(const Term& t, const OracleConfig& oracle = OracleConfig::defaults());
std::optional<StepResult> step(const Term& t, const Strategy& strategy,
                               const OracleConfig& oracle = OracleConfig::defaults());
Outcome<Normalized, FuelExhausted> normalize(const Term& t, const Strategy& strategy, std::uint64_t fuel,
                                             const OracleConfig& oracle = OracleConfig::defaults());

}  // namespace nsi

#endif  // NSI_REDUCTION_HPP
