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

#include "nsi/verify.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace nsi {

std::string DescentReport::to_string() const {
    std::ostringstream os;
    os << "N=" << n << " steps=" << steps_taken << " bound=" << bound << " strict=" << (strict ? "true" : "false")
       << " within_bound=" << (within_bound ? "true" : "false");
    return os.str();
}

DescentMonitor::DescentMonitor(const Term& start, Natural n, bool keep_values) : measure_(n), keep_(keep_values) {
    report_.n = n;
    last_ = measure_(start);
    report_.bound = last_;
    if (keep_) report_.values.push_back(last_);
}

void DescentMonitor::observe(const Term& next) {
    Natural v = measure_(next);
    ++report_.steps_taken;
    if (keep_) report_.values.push_back(v);
    if (v >= last_ && report_.strict) {
        report_.strict = false;
        report_.first_violation = report_.steps_taken;
    }
    report_.within_bound = report_.steps_taken <= report_.bound;
    last_ = v;
}

Natural default_argument(const Term& start) { return static_cast<Natural>(free_vars(start).size()); }

Outcome<DescentReport, std::string> verify_descent(const Trace& trace, std::optional<Natural> n,
                                                   const OracleConfig& oracle) {
    auto typed = infer(trace.start, oracle);
    if (!typed) return "start term is not typed: " + typed.error().to_string();
    Natural fv = static_cast<Natural>(typed->minimal_context.size());
    Natural arg = n.value_or(fv);
    if (arg < fv)
        return "argument " + std::to_string(arg) + " is below the free-variable count " + std::to_string(fv);
    DescentMonitor monitor(trace.start, arg);
    for (const auto& s : trace.steps) monitor.observe(s.result);
    return monitor.report();
}

SubjectReductionMonitor::SubjectReductionMonitor(const Term& start, TypeChecker& checker) : checker_(checker) {
    auto r = checker_.infer(start);
    if (!r) {
        report_.ok = false;
        report_.failed_step = 0;
        report_.message = "start term is not typed: " + r.error().to_string();
        return;
    }
    report_.type = r->type;
    context_ = r->minimal_context;
}

void SubjectReductionMonitor::observe(const Term& next) {
    if (!report_.ok) return;
    ++report_.steps_checked;
    auto fail = [&](std::string msg) {
        report_.ok = false;
        report_.failed_step = report_.steps_checked;
        report_.message = std::move(msg);
    };
    auto r = checker_.infer(next);
    if (!r) return fail("result is not typed: " + r.error().to_string());
    if (r->type != report_.type)
        return fail("type changed from " + report_.type.to_string() + " to " + r->type.to_string());
    if (!std::includes(context_.begin(), context_.end(), r->minimal_context.begin(), r->minimal_context.end()))
        return fail("minimal context grew");
    context_ = r->minimal_context;
}

SubjectReductionReport verify_subject_reduction(const Trace& trace, const OracleConfig& oracle) {
    TypeChecker checker(oracle);
    SubjectReductionMonitor monitor(trace.start, checker);
    for (const auto& s : trace.steps) monitor.observe(s.result);
    return monitor.report();
}

std::string_view to_string(NormalClass c) {
    switch (c) {
    case NormalClass::List: return "List";
    case NormalClass::BoolValue: return "BoolValue";
    case NormalClass::DiamondVar: return "DiamondVar";
    case NormalClass::ShortNumeral: return "ShortNumeral";
    case NormalClass::TreeValue: return "TreeValue";
    case NormalClass::HigherTypeValue: return "HigherTypeValue";
    case NormalClass::NotNormal: return "NotNormal";
    case NormalClass::NotAlmostClosed: return "NotAlmostClosed";
    case NormalClass::Untyped: return "Untyped";
    case NormalClass::Stuck: return "Stuck";
    }
    return "?";
}

std::string Classification::to_string() const {
    std::string out(nsi::to_string(kind));
    if (kind == NormalClass::List || kind == NormalClass::TreeValue || kind == NormalClass::ShortNumeral)
        out += "(" + std::to_string(size) + ")";
    return out;
}

Classification classify_normal(const Term& t, const OracleConfig& oracle) {
    Classification out;
    auto r = infer(t, oracle);
    if (!r) {
        out.kind = NormalClass::Untyped;
        return out;
    }
    out.type = r->type;
    for (const auto& v : r->minimal_context) {
        if (!v.type.is(TypeKind::Diamond)) {
            out.kind = NormalClass::NotAlmostClosed;
            return out;
        }
    }
    if (!redex_positions(t, oracle).empty()) {
        out.kind = NormalClass::NotNormal;
        return out;
    }
    switch (r->type.kind()) {
    case TypeKind::List:
        if (auto l = recognize_list(t)) {
            out.kind = NormalClass::List;
            out.size = l->size();
        }
        break;
    case TypeKind::Bool:
        if (t.is_const(ConstKind::True) || t.is_const(ConstKind::False)) out.kind = NormalClass::BoolValue;
        break;
    case TypeKind::Diamond:
        if (t.is(TermKind::FreeVar)) out.kind = NormalClass::DiamondVar;
        break;
    case TypeKind::Iota:
        if (auto bits = recognize_short_numeral(t)) {
            out.kind = NormalClass::ShortNumeral;
            out.size = bits->size();
        }
        break;
    case TypeKind::Tree:
        if (auto tr = recognize_tree(t)) {
            out.kind = NormalClass::TreeValue;
            out.size = tr->nodes;
        }
        break;
    default: out.kind = NormalClass::HigherTypeValue; break;
    }
    return out;
}

bool diamond_subterms_open(const Term& t, TypeChecker& checker) {
    std::unordered_set<const TermNode*> seen;
    std::vector<Term> stack{t};
    while (!stack.empty()) {
        Term u = std::move(stack.back());
        stack.pop_back();
        if (!seen.insert(u.id()).second) continue;
        switch (u.kind()) {
        case TermKind::Lambda: stack.push_back(u.body()); break;
        case TermKind::Pair:
        case TermKind::App:
            stack.push_back(u.kind() == TermKind::Pair ? u.first() : u.fun());
            stack.push_back(u.kind() == TermKind::Pair ? u.second() : u.arg());
            break;
        case TermKind::ListBrace: stack.push_back(u.step()); continue;
        case TermKind::TreeBrace:
            stack.push_back(u.step());
            stack.push_back(u.leaf_case());
            continue;
        default: break;
        }
        auto j = checker.judge(u);
        if (j && j.value()->type.is(TypeKind::Diamond) && j.value()->context_empty()) return false;
    }
    return true;
}

SizeReport verify_non_size_increasing(const Term& f, const Term& input, const Strategy& strategy,
                                      const OracleConfig& oracle) {
    SizeReport out;
    auto in = recognize_list(input);
    if (!in) {
        out.message = "input is not a canonical list";
        return out;
    }
    out.input_length = in->size();
    Term applied = Term::app(f, input);
    auto typed = infer(applied, oracle);
    if (!typed) {
        out.message = "application is not typed: " + typed.error().to_string();
        return out;
    }
    Natural bound = measure_at(applied, default_argument(applied));
    Reducer reducer(strategy, oracle);
    RunSummary run = reducer.run(applied, bound + 1);
    out.steps = run.steps;
    out.output = run.final_term;
    if (!run.normal) {
        out.message = "no normal form within the step bound";
        return out;
    }
    auto res = recognize_list(run.final_term);
    if (!res) {
        out.message = "normal form is not a canonical list";
        return out;
    }
    out.output_length = res->size();
    out.ok = res->size() <= in->size();
    if (!out.ok) out.message = "output is longer than the input";
    return out;
}

Certificate certify(const Term& t, const CertifyOptions& options) {
    Certificate out;
    TypeChecker checker(options.oracle);
    auto typed = checker.infer(t);
    if (!typed) {
        out.type_error = typed.error().to_string();
        return out;
    }
    out.typed = true;
    out.type = typed->type;
    Natural fv = static_cast<Natural>(typed->minimal_context.size());
    Natural n = std::max(options.n.value_or(fv), fv);

    DescentMonitor descent(t, n, options.keep_values);
    SubjectReductionMonitor subject(t, checker);
    Reducer reducer(options.strategy, options.oracle);
    Natural bound = descent.report().bound;
    RunSummary run = reducer.run(t, checked_add(bound, 1), [&](std::uint64_t, const StepResult& s) {
        descent.observe(s.result);
        subject.observe(s.result);
    });
    out.descent = descent.report();
    out.subject = subject.report();
    out.normal = run.normal;
    out.normal_form = run.final_term;
    out.rule_counts = run.rule_counts;
    if (options.classify && run.normal) out.classification = classify_normal(run.final_term, options.oracle);
    return out;
}

}  // namespace nsi
