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

#include "nsi/type.hpp"

#include <cassert>
#include <functional>

namespace nsi {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_binary_infix(TypeKind k) {
    return k == TypeKind::Tensor || k == TypeKind::Product;
}

void print(const Type& t, std::string& out) {
    switch (t.kind()) {
    case TypeKind::Diamond: out += "Dia"; return;
    case TypeKind::Bool: out += "B"; return;
    case TypeKind::Iota: out += "I"; return;
    case TypeKind::List:
        out += "L(";
        print(t.elem(), out);
        out += ")";
        return;
    case TypeKind::Tree:
        out += "T(";
        print(t.label(), out);
        out += ",";
        print(t.leaf(), out);
        out += ")";
        return;
    case TypeKind::Arrow: {
        bool paren = t.arg().is(TypeKind::Arrow);
        if (paren) out += "(";
        print(t.arg(), out);
        if (paren) out += ")";
        out += " -o ";
        print(t.res(), out);
        return;
    }
    case TypeKind::Tensor:
    case TypeKind::Product: {
        bool lparen = t.left().is(TypeKind::Arrow) || is_binary_infix(t.left().kind());
        bool rparen = t.right().is(TypeKind::Arrow);
        if (lparen) out += "(";
        print(t.left(), out);
        if (lparen) out += ")";
        out += t.kind() == TypeKind::Tensor ? " (x) " : " * ";
        if (rparen) out += "(";
        print(t.right(), out);
        if (rparen) out += ")";
        return;
    }
    }
}

}  // namespace

Type Type::make(TypeKind k, Type l, Type r) {
    std::size_t h = mix(static_cast<std::size_t>(k) * 0x51ed27, l.valid() ? l.hash() : 0);
    h = mix(h, r.valid() ? r.hash() : 0);
    std::size_t sz = 1 + (l.valid() ? l.size() : 0) + (r.valid() ? r.size() : 0);
    return Type(std::make_shared<const TypeNode>(TypeNode{k, std::move(l), std::move(r), h, sz}));
}

Type Type::diamond() {
    static const Type t = make(TypeKind::Diamond, {}, {});
    return t;
}
Type Type::boolean() {
    static const Type t = make(TypeKind::Bool, {}, {});
    return t;
}
Type Type::iota() {
    static const Type t = make(TypeKind::Iota, {}, {});
    return t;
}
Type Type::arrow(Type arg, Type res) {
    assert(arg.valid() && res.valid());
    return make(TypeKind::Arrow, std::move(arg), std::move(res));
}
Type Type::tensor(Type left, Type right) {
    assert(left.valid() && right.valid());
    return make(TypeKind::Tensor, std::move(left), std::move(right));
}
Type Type::product(Type left, Type right) {
    assert(left.valid() && right.valid());
    return make(TypeKind::Product, std::move(left), std::move(right));
}
Type Type::list(Type elem) {
    assert(elem.valid());
    return make(TypeKind::List, std::move(elem), {});
}
Type Type::tree(Type label, Type leaf) {
    assert(label.valid() && leaf.valid());
    return make(TypeKind::Tree, std::move(label), std::move(leaf));
}

Type Type::arrows(std::initializer_list<Type> args, Type res) {
    Type out = std::move(res);
    for (auto it = std::rbegin(args); it != std::rend(args); ++it) out = arrow(*it, out);
    return out;
}

TypeKind Type::kind() const {
    assert(node_);
    return node_->kind;
}
const Type& Type::left() const {
    assert(node_ && node_->left.valid());
    return node_->left;
}
const Type& Type::right() const {
    assert(node_ && node_->right.valid());
    return node_->right;
}
std::size_t Type::hash() const { return node_ ? node_->hash : 0; }
std::size_t Type::size() const { return node_ ? node_->size : 0; }

std::string Type::to_string() const {
    if (!node_) return "?";
    std::string out;
    print(*this, out);
    return out;
}

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
    return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

std::strong_ordering operator<=>(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (!a.node_) return std::strong_ordering::less;
    if (!b.node_) return std::strong_ordering::greater;
    if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
    if (auto c = a.node_->left <=> b.node_->left; c != 0) return c;
    return a.node_->right <=> b.node_->right;
}

}  // namespace nsi
