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

#include "nsi/stdlib.hpp"

#include <stdexcept>

namespace nsi {

namespace {

Term tt() { return cnst(Const::tt()); }
Term ff() { return cnst(Const::ff()); }
Term nil(const Type& t) { return cnst(Const::nil(t)); }

Term cons(const Type& t, Term d, Term a, Term l) {
    return apps(cnst(Const::cons(t)), {std::move(d), std::move(a), std::move(l)});
}

Term tensor(const Type& l, const Type& r, Term a, Term b) {
    return apps(cnst(Const::tensor(l, r)), {std::move(a), std::move(b)});
}

void require_oracle(const Type& elem, const OracleConfig& oracle) {
    if (!oracle.enabled_at(elem)) throw std::invalid_argument("leq oracle is not enabled at " + elem.to_string());
}

}  // namespace

Term mk_list(const std::vector<Term>& payloads, const Type& elem, const std::string& diamond_prefix) {
    Term out = nil(elem);
    for (std::size_t i = payloads.size(); i-- > 0;)
        out = cons(elem, var(diamond_prefix + std::to_string(i), Type::diamond()), payloads[i], out);
    return out;
}

Term mk_bool_list(const std::vector<bool>& bits, const std::string& diamond_prefix) {
    std::vector<Term> payloads;
    payloads.reserve(bits.size());
    for (bool b : bits) payloads.push_back(b ? tt() : ff());
    return mk_list(payloads, Type::boolean(), diamond_prefix);
}

std::vector<Term> list_payloads(const Term& list) {
    auto l = recognize_list(list);
    if (!l) throw std::invalid_argument("not a canonical list");
    std::vector<Term> out;
    out.reserve(l->size());
    for (const auto& e : l->entries) out.push_back(e.payload);
    return out;
}

Term mk_numeral(std::uint64_t value) {
    ShortNumeral bits;
    for (; value > 0; value /= 2) bits.push_back(static_cast<int>(value & 1));
    return make_short_numeral(bits);
}

std::optional<std::uint64_t> numeral_value(const Term& t) {
    auto bits = recognize_short_numeral(t);
    if (!bits || bits->size() > 64) return std::nullopt;
    std::uint64_t v = 0;
    for (std::size_t i = bits->size(); i-- > 0;) v = 2 * v + static_cast<std::uint64_t>((*bits)[i]);
    return v;
}

Term leq_pair_term(const Type& t, const OracleConfig& oracle) {
    require_oracle(t, oracle);
    const Type b = Type::boolean();
    const Type tt2 = Type::tensor(t, t);
    Term q1 = var("q1", t), q2 = var("q2", t);
    Term choose = Term::app(var("y", b), Term::pair(tensor(t, t, q1, q2), tensor(t, t, q2, q1)));
    Term cont = lams({{"y", b}, {"p", tt2}}, Term::app(var("p", tt2), lams({{"q1", t}, {"q2", t}}, choose)));
    return lams({{"p1", t}, {"p2", t}}, apps(cnst(Const::leq(t)), {var("p1", t), var("p2", t), cont}));
}

Term insert_term(const Type& t, const OracleConfig& oracle) {
    const Type d = Type::diamond();
    const Type l = Type::list(t);
    const Type rest = Type::arrows({d, t}, l);
    Term body = cons(t, var("x1", d), var("z1", t), apps(var("p", rest), {var("x2", d), var("z2", t)}));
    Term step = lams({{"x1", d}, {"y1", t}, {"p", rest}, {"x2", d}, {"y2", t}},
                     apps(leq_pair_term(t, oracle), {var("y1", t), var("y2", t), lams({{"z1", t}, {"z2", t}}, body)}));
    Term base = lams({{"x", d}, {"y", t}}, cons(t, var("x", d), var("y", t), nil(t)));
    return lam("l", l, apps(var("l", l), {Term::list_brace(step), base}));
}

Term sort_term(const Type& t, const OracleConfig& oracle) {
    const Type d = Type::diamond();
    const Type l = Type::list(t);
    Term step = lams({{"x", d}, {"y", t}, {"l'", l}}, apps(insert_term(t, oracle), {var("l'", l), var("x", d), var("y", t)}));
    return lam("l", l, apps(var("l", l), {Term::list_brace(step), nil(t)}));
}

Term append_term(const Type& t) {
    const Type d = Type::diamond();
    const Type l = Type::list(t);
    Term step = lams({{"d", d}, {"a", t}, {"r", l}}, cons(t, var("d", d), var("a", t), var("r", l)));
    return lams({{"l1", l}, {"l2", l}}, apps(var("l1", l), {Term::list_brace(step), var("l2", l)}));
}

Term eraser_term(const Type& t) {
    const Type d = Type::diamond();
    const Type l = Type::list(t);
    Term step = lams({{"d", d}, {"a", t}, {"r", l}}, var("r", l));
    return lam("l", l, apps(var("l", l), {Term::list_brace(step), nil(t)}));
}

QuicksortComponents quicksort_components(const Type& t, const OracleConfig& oracle) {
    require_oracle(t, oracle);
    const Type d = Type::diamond();
    const Type b = Type::boolean();
    const Type l = Type::list(t);
    const Type ll = Type::tensor(l, l);
    const Type acc = Type::tensor(t, ll);
    const Type tt2 = Type::tensor(t, t);

    // Entries not below the pivot go to the second list, so that joining
    // "below ++ pivot ++ rest" sorts ascending.
    auto out = [&](Term first, Term second) { return tensor(t, ll, var("v", t), tensor(l, l, first, second)); };
    auto with_entry = [&](const Term& list) { return cons(t, var("y0", d), var("y1", t), list); };
    Term branches = Term::pair(out(var("l'", l), with_entry(var("l''", l))), out(with_entry(var("l'", l)), var("l''", l)));
    Term compare = apps(cnst(Const::leq(t)),
                        {var("u", t), var("w1", t),
                         lams({{"z", b}, {"w", tt2}},
                              Term::app(var("w", tt2), lams({{"v", t}, {"y1", t}}, Term::app(var("z", b), branches))))});
    // The compared entry is rebound as y1 by the oracle's result; the step's
    // own y1 is passed in under the name w1.
    Term inner = Term::app(var("q", ll), lams({{"l'", l}, {"l''", l}}, compare));
    Term step = lams({{"y0", d}, {"w1", t}, {"p", acc}},
                     Term::app(var("p", acc), lams({{"u", t}, {"q", ll}}, inner)));
    Term base_acc = tensor(t, ll, var("x", t), tensor(l, l, nil(t), nil(t)));
    Term divide = lams({{"x", t}, {"l", l}}, apps(var("l", l), {Term::list_brace(step), base_acc}));

    Term conquer = lams({{"x", d}, {"y", t}, {"l'", l}, {"l''", l}},
                        apps(append_term(t), {var("l'", l), cons(t, var("x", d), var("y", t), var("l''", l))}));
    return QuicksortComponents{divide, conquer, nil(t)};
}

Term split_term(const Type& t, const Term& divide) {
    const Type d = Type::diamond();
    const Type l = Type::list(t);
    const Type ll = Type::tensor(l, l);
    const Type tr = Type::tree(t, l);
    const Type acc = Type::product(l, tr);
    Term rest = Term::app(var("q", acc), tt());
    Term node = apps(cnst(Const::node(t, l)), {var("d", d), var("a'", t), Term::app(cnst(Const::leaf(t, l)), var("l1", l)),
                                               Term::app(cnst(Const::leaf(t, l)), var("l2", l))});
    Term tree = apps(divide, {var("a", t), rest,
                              lams({{"a'", t}, {"w", ll}}, Term::app(var("w", ll), lams({{"l1", l}, {"l2", l}}, node)))});
    Term step = lams({{"d", d}, {"a", t}, {"q", acc}}, Term::pair(cons(t, var("d", d), var("a", t), rest), tree));
    Term base = Term::pair(nil(t), Term::app(cnst(Const::leaf(t, l)), nil(t)));
    return lam("l", l, apps(var("l", l), {Term::list_brace(step), base}));
}

Term divide1_term(const Type& t, const Term& divide) {
    const Type l = Type::list(t);
    return lam("l", l, apps(split_term(t, divide), {var("l", l), ff()}));
}

Term expand_term(const Type& t, const Term& divide) {
    const Type d = Type::diamond();
    const Type l = Type::list(t);
    const Type tr = Type::tree(t, l);
    Term step = lams({{"d", d}, {"a", t}, {"t1", tr}, {"t2", tr}},
                     apps(cnst(Const::node(t, l)), {var("d", d), var("a", t), var("t1", tr), var("t2", tr)}));
    return lam("t", tr, Term::app(var("t", tr), Term::tree_brace(step, divide1_term(t, divide))));
}

Term unfold_term(const Type& t, const Term& divide) {
    const Type d = Type::diamond();
    const Type l = Type::list(t);
    const Type tr = Type::tree(t, l);
    const Type fn = Type::arrow(tr, tr);
    const Type acc = Type::tensor(fn, l);
    Term composed = lam("t", tr, Term::app(var("F", fn), Term::app(expand_term(t, divide), var("t", tr))));
    Term step = lams({{"d", d}, {"a", t}, {"q", acc}},
                     Term::app(var("q", acc), lams({{"F", fn}, {"k", l}},
                                                     tensor(fn, l, composed, cons(t, var("d", d), var("a", t), var("k", l))))));
    Term base = tensor(fn, l, lam("t", tr, var("t", tr)), nil(t));
    Term finish = lams({{"F", fn}, {"k", l}}, Term::app(var("F", fn), Term::app(cnst(Const::leaf(t, l)), var("k", l))));
    return lam("l", l, apps(var("l", l), {Term::list_brace(step), base, finish}));
}

Term divide_and_conquer_term(const Type& t, const Term& divide, const Term& conquer) {
    const Type l = Type::list(t);
    Term leaf_case = lam("l'", l, var("l'", l));
    return lam("l", l, Term::app(Term::app(unfold_term(t, divide), var("l", l)), Term::tree_brace(conquer, leaf_case)));
}

Term quicksort_term(const Type& t, const OracleConfig& oracle) {
    auto c = quicksort_components(t, oracle);
    return divide_and_conquer_term(t, c.divide, c.conquer);
}

std::vector<NegativeExample> negative_examples() {
    const Type b = Type::boolean();
    const Type d = Type::diamond();
    const Type l = Type::list(b);
    std::vector<NegativeExample> out;

    out.push_back({"duplicated diamond",
                   lam("x", d, cons(b, var("x", d), tt(), cons(b, var("x", d), ff(), nil(b)))),
                   TypeErrorKind::NonDisjointContexts});

    Term doubling = lams({{"d", d}, {"a", b}, {"r", l}},
                         cons(b, var("d", d), var("a", b), cons(b, var("d", d), var("a", b), var("r", l))));
    out.push_back({"list doubling", lam("l", l, apps(var("l", l), {Term::list_brace(doubling), nil(b)})),
                   TypeErrorKind::NonDisjointContexts});

    const Type fn = Type::arrow(l, l);
    Term twice = lams({{"d", d}, {"a", b}, {"f", fn}},
                      lam("x", l, Term::app(var("f", fn), Term::app(var("f", fn), var("x", l)))));
    out.push_back({"exponential iteration",
                   lam("l", l, apps(var("l", l), {Term::list_brace(twice), lam("x", l, var("x", l))})),
                   TypeErrorKind::NonDisjointContexts});

    Term open_step = lams({{"d", d}, {"a", b}, {"r", l}}, cons(b, var("y", d), tt(), var("r", l)));
    out.push_back({"open step term", apps(var("l", l), {Term::list_brace(open_step), nil(b)}),
                   TypeErrorKind::OpenStepTerm});

    out.push_back({"brace outside argument position",
                   Term::list_brace(lams({{"d", d}, {"a", b}, {"r", b}}, var("r", b))),
                   TypeErrorKind::BraceOutsidePosition});

    out.push_back({"branches of different types", Term::app(tt(), Term::pair(tt(), nil(b))),
                   TypeErrorKind::BranchContextMismatch});

    out.push_back({"boolean applied to a boolean", Term::app(tt(), ff()), TypeErrorKind::HeadTypeMismatch});

    out.push_back({"leq at a list type", cnst(Const::leq(l)), TypeErrorKind::OracleDisabled});

    out.push_back({"ground value applied", Term::app(cnst(Const::zero()), tt()), TypeErrorKind::AritySurplus});

    out.push_back({"guard shares a variable with a branch",
                   lam("x", b, Term::app(var("x", b), Term::pair(var("x", b), tt()))),
                   TypeErrorKind::NonDisjointContexts});
    return out;
}

}  // namespace nsi
