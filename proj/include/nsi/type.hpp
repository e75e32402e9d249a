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

#ifndef NSI_TYPE_HPP
#define NSI_TYPE_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <string>

namespace nsi {

enum class TypeKind { Diamond, Bool, Iota, Arrow, Tensor, Product, List, Tree };

struct TypeNode;

// Linear types. A Type is an immutable handle; equality is structural.
// A default-constructed Type is the "absent" annotation and compares
// unequal to every real type.
class Type {
public:
    Type() = default;

    static Type diamond();
    static Type boolean();
    static Type iota();
    static Type arrow(Type arg, Type res);
    static Type tensor(Type left, Type right);
    static Type product(Type left, Type right);
    static Type list(Type elem);
    static Type tree(Type label, Type leaf);

    // Right-nested arrow: arrows({a, b}, c) == a -o b -o c.
    static Type arrows(std::initializer_list<Type> args, Type res);

    bool valid() const { return node_ != nullptr; }
    explicit operator bool() const { return valid(); }

    TypeKind kind() const;
    bool is(TypeKind k) const { return valid() && kind() == k; }

    // Arrow: arg/res. Tensor, Product: left/right. List: elem (== left).
    // Tree: label (== left) / leaf (== right).
    const Type& left() const;
    const Type& right() const;
    const Type& arg() const { return left(); }
    const Type& res() const { return right(); }
    const Type& elem() const { return left(); }
    const Type& label() const { return left(); }
    const Type& leaf() const { return right(); }

    std::size_t hash() const;
    // Number of type constructors.
    std::size_t size() const;

    // Surface syntax, e.g. "Dia -o B (x) L(B)".
    std::string to_string() const;

    friend bool operator==(const Type& a, const Type& b);
    friend std::strong_ordering operator<=>(const Type& a, const Type& b);

private:
    explicit Type(std::shared_ptr<const TypeNode> n) : node_(std::move(n)) {}
    static Type make(TypeKind k, Type l, Type r);

    std::shared_ptr<const TypeNode> node_;
};

struct TypeNode {
    TypeKind kind;
    Type left;
    Type right;
    std::size_t hash;
    std::size_t size;
};

struct TypeHash {
    std::size_t operator()(const Type& t) const { return t.hash(); }
};

}  // namespace nsi

#endif  // NSI_TYPE_HPP
