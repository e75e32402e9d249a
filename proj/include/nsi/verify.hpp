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

#ifndef NSI_VERIFY_HPP
#define NSI_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsi/measure.hpp"
#include "nsi/outcome.hpp"
#include "nsi/reduction.hpp"
#include "nsi/typing.hpp"

namespace nsi {

struct DescentReport {
    Natural n = 0;
    // Measure of the start term followed by one value per step.
    std::vector<Natural> values;
    bool strict = true;
    Natural bound = 0;
    std::uint64_t steps_taken = 0;
    bool within_bound = true;
    // First step (1-based) at which the measure failed to decrease.
    std::optional<std::uint64_t> first_violation;

    std::string to_string() const;
};

// Accumulates a descent report one term at a time, so that it can follow a
// streaming run. Values are kept only when requested.
class DescentMonitor {
public:
    DescentMonitor(const Term& start, Natural n, bool keep_values = true);

    void observe(const Term& next);
    const DescentReport& report() const { return report_; }

private:
    PointwiseMeasure measure_;
    Natural last_;
    bool keep_;
    DescentReport report_;
};

// |free_vars(start)|, the smallest argument for which the descent holds.
Natural default_argument(const Term& start);

// Errors: the start term is untyped, or `n` is below |FV(start)|.
Outcome<DescentReport, std::string> verify_descent(const Trace& trace, std::optional<Natural> n = std::nullopt,
                                                   const OracleConfig& oracle = OracleConfig::defaults());

struct SubjectReductionReport {
    bool ok = true;
    Type type;
    std::uint64_t steps_checked = 0;
    std::optional<std::uint64_t> failed_step;
    std::string message;
};

class SubjectReductionMonitor {
public:
    // The start term must be typed; otherwise the report fails at step 0.
    SubjectReductionMonitor(const Term& start, TypeChecker& checker);

    void observe(const Term& next);
    const SubjectReductionReport& report() const { return report_; }

private:
    TypeChecker& checker_;
    VariableSet context_;
    SubjectReductionReport report_;
};

SubjectReductionReport verify_subject_reduction(const Trace& trace,
                                                const OracleConfig& oracle = OracleConfig::defaults());

enum class NormalClass {
    List,
    BoolValue,
    DiamondVar,
    ShortNumeral,
    TreeValue,
    HigherTypeValue,
    NotNormal,
    NotAlmostClosed,
    Untyped,
    Stuck,
};

std::string_view to_string(NormalClass c);

struct Classification {
    NormalClass kind = NormalClass::Stuck;
    std::size_t size = 0;  // entries, nodes or numeral bits
    Type type;

    std::string to_string() const;
};

// Classifies a normal, almost closed term by its type. Ground types with a
// normal form that is not a value are reported as Stuck.
Classification classify_normal(const Term& t, const OracleConfig& oracle = OracleConfig::defaults());

// True iff every subterm of type Dia has a nonempty minimal context (bound
// variables of enclosing binders count as context).
bool diamond_subterms_open(const Term& t, TypeChecker& checker);

struct SizeReport {
    bool ok = false;
    std::size_t input_length = 0;
    std::optional<std::size_t> output_length;
    std::uint64_t steps = 0;
    Term output;
    std::string message;
};

// Normalizes `f input` and checks that the result is a canonical list no
// longer than the input.
SizeReport verify_non_size_increasing(const Term& f, const Term& input,
                                      const Strategy& strategy = Strategy::leftmost_outermost(),
                                      const OracleConfig& oracle = OracleConfig::defaults());

// One full certification run: normalizes under a strategy while checking
// strict descent, the a-priori step bound and subject reduction at every
// step, then classifies the normal form.
struct Certificate {
    bool typed = false;
    std::string type_error;
    Type type;
    DescentReport descent;
    SubjectReductionReport subject;
    bool normal = false;
    Term normal_form;
    Classification classification;
    std::array<std::uint64_t, kRuleCount> rule_counts{};

    bool ok() const {
        return typed && descent.strict && descent.within_bound && subject.ok && normal;
    }
};

struct CertifyOptions {
    Strategy strategy = Strategy::leftmost_outermost();
    std::optional<Natural> n;
    bool keep_values = false;
    bool classify = true;
    OracleConfig oracle = OracleConfig::defaults();
};

Certificate certify(const Term& t, const CertifyOptions& options = {});

}  // namespace nsi

#endif  // NSI_VERIFY_HPP
