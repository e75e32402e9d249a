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

#include "nsi/measure.hpp"

#include <algorithm>
#include <functional>

namespace nsi {

std::uint64_t length(const Term& t) { return t.length(); }

NPoly poly_bound(const Term& t) {
    std::unordered_map<const TermNode*, NPoly> memo;
    const NPoly x = NPoly::identity();
    std::function<NPoly(const Term&)> go = [&](const Term& u) -> NPoly {
        if (!u.has_brace()) return NPoly{};
        if (auto it = memo.find(u.id()); it != memo.end()) return it->second;
        NPoly out;
        switch (u.kind()) {
        case TermKind::FreeVar:
        case TermKind::BoundVar:
        case TermKind::Constant: break;
        case TermKind::Lambda: out = go(u.body()); break;
        case TermKind::Pair: out = NPoly::sup(go(u.first()), go(u.second())); break;
        case TermKind::ListBrace: {
            const Term& h = u.step();
            out = x * go(h) + x * NPoly::constant(h.length());
            break;
        }
        case TermKind::TreeBrace: {
            const Term& s = u.step();
            const Term& r = u.leaf_case();
            out = x * go(s) + (x + NPoly::constant(1)) * go(r) + x * NPoly::constant(s.length()) +
                  x * NPoly::constant(r.length());
            break;
        }
        case TermKind::App: {
            const Term& f = u.fun();
            const Term& a = u.arg();
            if (a.is(TermKind::ListBrace) && f.list_entries()) {
                NPoly cap = NPoly::capped(*f.list_entries());
                const Term& h = a.step();
                out = go(f) + cap * go(h) + cap * NPoly::constant(h.length());
            } else if (a.is(TermKind::TreeBrace) && f.tree_nodes()) {
                NPoly cap = NPoly::capped(*f.tree_nodes());
                const Term& s = a.step();
                const Term& r = a.leaf_case();
                out = go(f) + cap * go(s) + (cap + NPoly::constant(1)) * go(r) + cap * NPoly::constant(s.length()) +
                      cap * NPoly::constant(r.length());
            } else {
                out = go(f) + go(a);
            }
            break;
        }
        }
        memo.emplace(u.id(), out);
        return out;
    };
    return go(t);
}

Measure measure(const Term& t) { return Measure{poly_bound(t), t.length()}; }

Natural measure_at(const Term& t, Natural n) { return measure(t).at(n); }

Natural PointwiseMeasure::poly_at(const Term& t) {
    if (!t.has_brace()) return 0;
    if (Memo hit; t.memo(MemoSlot::Measure, owner_, hit)) return hit.word;
    Natural v = compute(t);
    t.set_memo(MemoSlot::Measure, Memo{owner_, v, nullptr});
    return v;
}

Natural PointwiseMeasure::compute(const Term& u) {
    auto weigh = [](Natural times, Natural poly, Natural len) {
        return checked_add(checked_mul(times, poly), checked_mul(times, len));
    };
    switch (u.kind()) {
    case TermKind::FreeVar:
    case TermKind::BoundVar:
    case TermKind::Constant: return 0;
    case TermKind::Lambda: return poly_at(u.body());
    case TermKind::Pair: return std::max(poly_at(u.first()), poly_at(u.second()));
    case TermKind::ListBrace: return weigh(n_, poly_at(u.step()), u.step().length());
    case TermKind::TreeBrace: {
        const Term& s = u.step();
        const Term& r = u.leaf_case();
        return checked_add(checked_add(weigh(n_, poly_at(s), s.length()), checked_mul(n_, r.length())),
                           checked_mul(checked_add(n_, 1), poly_at(r)));
    }
    case TermKind::App: {
        const Term& f = u.fun();
        const Term& a = u.arg();
        if (a.is(TermKind::ListBrace) && f.list_entries()) {
            Natural cap = std::min<Natural>(*f.list_entries(), n_);
            return checked_add(poly_at(f), weigh(cap, poly_at(a.step()), a.step().length()));
        }
        if (a.is(TermKind::TreeBrace) && f.tree_nodes()) {
            Natural cap = std::min<Natural>(*f.tree_nodes(), n_);
            const Term& s = a.step();
            const Term& r = a.leaf_case();
            Natural v = checked_add(poly_at(f), weigh(cap, poly_at(s), s.length()));
            v = checked_add(v, checked_mul(cap, r.length()));
            return checked_add(v, checked_mul(checked_add(cap, 1), poly_at(r)));
        }
        return checked_add(poly_at(f), poly_at(a));
    }
    }
    return 0;
}

}  // namespace nsi
