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

#include "nsi/typing.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nsi {

std::string_view to_string(TypeErrorKind k) {
    switch (k) {
    case TypeErrorKind::NonDisjointContexts: return "NonDisjointContexts";
    case TypeErrorKind::OpenStepTerm: return "OpenStepTerm";
    case TypeErrorKind::BranchContextMismatch: return "BranchContextMismatch";
    case TypeErrorKind::HeadTypeMismatch: return "HeadTypeMismatch";
    case TypeErrorKind::BraceOutsidePosition: return "BraceOutsidePosition";
    case TypeErrorKind::UnannotatedVariable: return "UnannotatedVariable";
    case TypeErrorKind::AritySurplus: return "AritySurplus";
    case TypeErrorKind::OracleDisabled: return "OracleDisabled";
    }
    return "?";
}

std::string TypeError::location_string() const {
    if (location.empty()) return "root";
    std::string out;
    for (const auto& s : location) {
        if (!out.empty()) out += '.';
        out += s;
    }
    return out;
}

std::string TypeError::to_string() const {
    std::ostringstream os;
    os << nsi::to_string(kind) << " at " << location_string() << ": " << message;
    if (!variables.empty()) {
        os << " {";
        for (std::size_t i = 0; i < variables.size(); ++i) os << (i ? ", " : "") << variables[i];
        os << "}";
    }
    return os.str();
}

namespace {

using ErrorPtr = std::shared_ptr<const TypeError>;

ErrorPtr make_error(TypeErrorKind kind, std::string message, std::vector<std::string> vars = {}) {
    return std::make_shared<const TypeError>(TypeError{kind, {}, std::move(message), std::move(vars)});
}

std::string bound_name(std::uint32_t index) { return "^" + std::to_string(index); }

// Re-roots a child's error under `step`. Crossing a binder resolves the
// binder's own de Bruijn name to its hint.
ErrorPtr prefix(const ErrorPtr& e, const char* step, const std::string* binder_hint = nullptr) {
    TypeError out = *e;
    out.location.insert(out.location.begin(), step);
    if (binder_hint) {
        for (auto& v : out.variables) {
            if (v.size() < 2 || v[0] != '^') continue;
            std::uint32_t k = static_cast<std::uint32_t>(std::stoul(v.substr(1)));
            v = k == 0 ? *binder_hint : bound_name(k - 1);
        }
    }
    return std::make_shared<const TypeError>(std::move(out));
}

std::string describe(const Type& t) { return t.valid() ? t.to_string() : "?"; }

}  // namespace

const Judgement::FreeContext& Judgement::free() const {
    static const FreeContext empty;
    return free_ctx ? *free_ctx : empty;
}

const Judgement::BoundContext& Judgement::bound() const {
    static const BoundContext empty;
    return bound_ctx ? *bound_ctx : empty;
}

TypeChecker::TypeChecker(OracleConfig oracle) : oracle_(std::move(oracle)), owner_(fresh_memo_owner()) {}

VarId TypeChecker::intern(const Variable& v) {
    auto& ids = by_name_[v.name];
    for (VarId id : ids)
        if (variables_[id].type == v.type) return id;
    VarId id = static_cast<VarId>(variables_.size());
    variables_.push_back(v);
    ids.push_back(id);
    return id;
}

VariableSet TypeChecker::context_of(const Judgement& j) const {
    VariableSet out;
    for (VarId id : j.free()) out.insert(variables_[id]);
    return out;
}

std::vector<std::string> TypeChecker::context_names(const Judgement& j) const {
    std::vector<std::string> out;
    for (VarId id : j.free()) out.push_back(variables_[id].name);
    for (const auto& b : j.bound()) out.push_back(bound_name(b.first));
    return out;
}

// Union of two contexts; collects the variables present in both. An empty
// side lets the other side's vectors be shared unchanged.
void TypeChecker::merge_contexts(const Judgement& a, const Judgement& b, Judgement& out,
                                 std::vector<std::string>* shared) const {
    const auto& af = a.free();
    const auto& bf = b.free();
    if (bf.empty()) {
        out.free_ctx = a.free_ctx;
    } else if (af.empty()) {
        out.free_ctx = b.free_ctx;
    } else {
        auto merged = std::make_shared<Judgement::FreeContext>();
        merged->reserve(af.size() + bf.size());
        auto fi = af.begin();
        auto fj = bf.begin();
        while (fi != af.end() && fj != bf.end()) {
            if (*fi < *fj) {
                merged->push_back(*fi++);
            } else if (*fj < *fi) {
                merged->push_back(*fj++);
            } else {
                if (shared) shared->push_back(variables_[*fi].name);
                merged->push_back(*fi++);
                ++fj;
            }
        }
        merged->insert(merged->end(), fi, af.end());
        merged->insert(merged->end(), fj, bf.end());
        out.free_ctx = std::move(merged);
    }
    const auto& ab = a.bound();
    const auto& bb = b.bound();
    if (bb.empty()) {
        out.bound_ctx = a.bound_ctx;
        return;
    }
    if (ab.empty()) {
        out.bound_ctx = b.bound_ctx;
        return;
    }
    auto merged = std::make_shared<Judgement::BoundContext>();
    auto bi = ab.begin();
    auto bj = bb.begin();
    while (bi != ab.end() || bj != bb.end()) {
        if (bj == bb.end() || (bi != ab.end() && bi->first < bj->first)) {
            merged->push_back(*bi++);
        } else if (bi == ab.end() || bj->first < bi->first) {
            merged->push_back(*bj++);
        } else {
            if (shared) shared->push_back(bound_name(bi->first));
            merged->push_back(*bi++);
            ++bj;
        }
    }
    out.bound_ctx = std::move(merged);
}

TypeChecker::Result TypeChecker::visit(const Term& t) {
    // The memo word is 1 for a judgement and 2 for an error.
    if (Memo hit; t.memo(MemoSlot::Typing, owner_, hit)) {
        if (hit.word == 1) return std::static_pointer_cast<const Judgement>(hit.ptr);
        return std::static_pointer_cast<const TypeError>(hit.ptr);
    }
    Result r = compute(t);
    if (r.ok())
        t.set_memo(MemoSlot::Typing, Memo{owner_, 1, r.value()});
    else
        t.set_memo(MemoSlot::Typing, Memo{owner_, 2, r.error()});
    return r;
}

TypeChecker::Result TypeChecker::compute(const Term& t) {
    switch (t.kind()) {
    case TermKind::FreeVar: {
        if (!t.type().valid())
            return make_error(TypeErrorKind::UnannotatedVariable, "variable '" + t.name() + "' has no type annotation",
                              {t.name()});
        auto j = std::make_shared<Judgement>();
        j->type = t.type();
        j->free_ctx = std::make_shared<const Judgement::FreeContext>(1, intern(Variable{t.name(), t.type()}));
        return JudgementPtr(j);
    }
    case TermKind::BoundVar: {
        auto j = std::make_shared<Judgement>();
        j->type = t.type();
        j->bound_ctx = std::make_shared<const Judgement::BoundContext>(1, std::make_pair(t.index(), t.type()));
        return JudgementPtr(j);
    }
    case TermKind::Constant: {
        const Const& c = t.constant();
        if (c.kind == ConstKind::LeqOracle && !oracle_.enabled_at(c.first))
            return make_error(TypeErrorKind::OracleDisabled, "leq oracle is not enabled at " + describe(c.first));
        auto j = std::make_shared<Judgement>();
        j->type = c.type();
        return JudgementPtr(j);
    }
    case TermKind::Lambda: {
        Result body = visit(t.body());
        if (!body) return prefix(body.error(), "body", &t.name());
        const Judgement& jb = *body.value();
        auto j = std::make_shared<Judgement>();
        j->type = Type::arrow(t.type(), jb.type);
        j->free_ctx = jb.free_ctx;
        std::shared_ptr<Judgement::BoundContext> shifted;
        for (const auto& [idx, ty] : jb.bound()) {
            if (idx == 0) {
                if (ty != t.type())
                    return make_error(TypeErrorKind::HeadTypeMismatch, "binder '" + t.name() + "' annotated " +
                                                                           describe(t.type()) + " but used at " +
                                                                           describe(ty));
                continue;
            }
            if (!shifted) shifted = std::make_shared<Judgement::BoundContext>();
            shifted->emplace_back(idx - 1, ty);
        }
        j->bound_ctx = std::move(shifted);
        return JudgementPtr(j);
    }
    case TermKind::Pair: {
        Result a = visit(t.first());
        if (!a) return prefix(a.error(), "first");
        Result b = visit(t.second());
        if (!b) return prefix(b.error(), "second");
        auto j = std::make_shared<Judgement>();
        j->type = Type::product(a.value()->type, b.value()->type);
        merge_contexts(*a.value(), *b.value(), *j, nullptr);
        return JudgementPtr(j);
    }
    case TermKind::App: return compute_app(t);
    case TermKind::ListBrace:
    case TermKind::TreeBrace:
        return make_error(TypeErrorKind::BraceOutsidePosition,
                          "iteration brace outside the argument position of a list or tree elimination");
    }
    return make_error(TypeErrorKind::HeadTypeMismatch, "unknown term");
}

TypeChecker::Result TypeChecker::compute_app(const Term& t) {
    const Term& f = t.fun();
    const Term& a = t.arg();
    Result rf = visit(f);
    if (!rf) return prefix(rf.error(), "fun");
    const Judgement& jf = *rf.value();
    const Type& ft = jf.type;

    auto result_with = [&](Type type, const Judgement& ctx) {
        auto j = std::make_shared<Judgement>();
        j->type = std::move(type);
        j->free_ctx = ctx.free_ctx;
        j->bound_ctx = ctx.bound_ctx;
        return JudgementPtr(j);
    };
    auto linear_join = [&](Type type, const Judgement& other) -> Result {
        auto j = std::make_shared<Judgement>();
        j->type = std::move(type);
        std::vector<std::string> shared;
        merge_contexts(jf, other, *j, &shared);
        if (!shared.empty())
            return make_error(TypeErrorKind::NonDisjointContexts, "function and argument share variables",
                              std::move(shared));
        return JudgementPtr(j);
    };
    auto closed_step = [&](const Term& s, const char* where) -> Result {
        Result rs = visit(s);
        if (!rs) return prefix(prefix(rs.error(), where), "arg");
        if (!rs.value()->context_empty())
            return prefix(make_error(TypeErrorKind::OpenStepTerm, "iteration step term must be closed",
                                     context_names(*rs.value())),
                          "arg");
        return rs;
    };

    if (a.is(TermKind::ListBrace)) {
        if (!ft.is(TypeKind::List))
            return make_error(TypeErrorKind::HeadTypeMismatch,
                              "list iteration applied to a term of type " + describe(ft));
        Result rh = closed_step(a.step(), "step");
        if (!rh) return rh;
        const Type& ht = rh.value()->type;
        // Dia -o tau -o rho -o rho
        bool shape = ht.is(TypeKind::Arrow) && ht.arg().is(TypeKind::Diamond) && ht.res().is(TypeKind::Arrow) &&
                     ht.res().arg() == ft.elem() && ht.res().res().is(TypeKind::Arrow) &&
                     ht.res().res().arg() == ht.res().res().res();
        if (!shape)
            return make_error(TypeErrorKind::HeadTypeMismatch, "step term of type " + describe(ht) +
                                                                   " does not fit Dia -o " + describe(ft.elem()) +
                                                                   " -o r -o r");
        return result_with(ht.res().res(), jf);
    }
    if (a.is(TermKind::TreeBrace)) {
        if (!ft.is(TypeKind::Tree))
            return make_error(TypeErrorKind::HeadTypeMismatch,
                              "tree iteration applied to a term of type " + describe(ft));
        Result rs = closed_step(a.step(), "step");
        if (!rs) return rs;
        Result rr = closed_step(a.leaf_case(), "leaf");
        if (!rr) return rr;
        const Type& st = rs.value()->type;
        const Type& rt = rr.value()->type;
        if (!rt.is(TypeKind::Arrow) || rt.arg() != ft.leaf())
            return make_error(TypeErrorKind::HeadTypeMismatch,
                              "leaf case of type " + describe(rt) + " does not fit " + describe(ft.leaf()) + " -o s");
        const Type& sigma = rt.res();
        Type expected = Type::arrows({Type::diamond(), ft.label(), sigma, sigma}, sigma);
        if (st != expected)
            return make_error(TypeErrorKind::HeadTypeMismatch,
                              "node case of type " + describe(st) + ", expected " + describe(expected));
        return result_with(sigma, jf);
    }

    switch (ft.kind()) {
    case TypeKind::Arrow: {
        Result ra = visit(a);
        if (!ra) return prefix(ra.error(), "arg");
        if (ra.value()->type != ft.arg())
            return make_error(TypeErrorKind::HeadTypeMismatch, "argument of type " + describe(ra.value()->type) +
                                                                   ", expected " + describe(ft.arg()));
        return linear_join(ft.res(), *ra.value());
    }
    case TypeKind::Product:
        if (a.is_const(ConstKind::True)) return result_with(ft.left(), jf);
        if (a.is_const(ConstKind::False)) return result_with(ft.right(), jf);
        return make_error(TypeErrorKind::HeadTypeMismatch, "projection from " + describe(ft) + " needs tt or ff");
    case TypeKind::Bool: {
        if (!a.is(TermKind::Pair))
            return make_error(TypeErrorKind::HeadTypeMismatch, "case distinction on B needs a pair of branches");
        Result ra = visit(a);
        if (!ra) return prefix(ra.error(), "arg");
        const Type& pt = ra.value()->type;
        if (pt.left() != pt.right())
            return make_error(TypeErrorKind::BranchContextMismatch,
                              "branches have types " + describe(pt.left()) + " and " + describe(pt.right()));
        return linear_join(pt.left(), *ra.value());
    }
    case TypeKind::Tensor: {
        bool shape = a.is(TermKind::Lambda) && a.type() == ft.left() && a.body().is(TermKind::Lambda) &&
                     a.body().type() == ft.right();
        if (!shape)
            return make_error(TypeErrorKind::HeadTypeMismatch,
                              "tensor elimination of " + describe(ft) + " needs fun x:" + describe(ft.left()) +
                                  ". fun y:" + describe(ft.right()) + ". s");
        Result ra = visit(a);
        if (!ra) return prefix(ra.error(), "arg");
        return linear_join(ra.value()->type.res().res(), *ra.value());
    }
    case TypeKind::List:
    case TypeKind::Tree:
        return make_error(TypeErrorKind::HeadTypeMismatch,
                          "elimination of " + describe(ft) + " needs an iteration brace argument");
    case TypeKind::Diamond:
    case TypeKind::Iota:
        return make_error(TypeErrorKind::AritySurplus, "term of type " + describe(ft) + " cannot take arguments");
    }
    return make_error(TypeErrorKind::HeadTypeMismatch, "unknown type");
}

Outcome<JudgementPtr, TypeError> TypeChecker::judge(const Term& t) {
    Result r = visit(t);
    if (!r) return *r.error();
    return r.value();
}

Outcome<TypingResult, TypeError> TypeChecker::infer(const Term& t) {
    if (!t.locally_closed()) throw std::invalid_argument("infer: term has dangling bound variables");
    Result r = visit(t);
    if (!r) return *r.error();
    TypingResult out;
    out.type = r.value()->type;
    out.minimal_context = context_of(*r.value());
    return out;
}

bool TypeChecker::check(const Term& t, const VariableSet& context, const Type& type) {
    auto r = infer(t);
    if (!r || r->type != type) return false;
    return std::includes(context.begin(), context.end(), r->minimal_context.begin(), r->minimal_context.end());
}

Outcome<TypingResult, TypeError> infer(const Term& t, const OracleConfig& oracle) {
    TypeChecker tc(oracle);
    return tc.infer(t);
}

bool check(const Term& t, const VariableSet& context, const Type& type, const OracleConfig& oracle) {
    TypeChecker tc(oracle);
    return tc.check(t, context, type);
}

}  // namespace nsi
