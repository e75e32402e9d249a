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

#ifndef NSI_OUTCOME_HPP
#define NSI_OUTCOME_HPP

#include <stdexcept>
#include <utility>
#include <variant>

namespace nsi {

// Either a value or an error; the value alternative is the success path.
template <class T, class E>
class Outcome {
public:
    Outcome(T value) : v_(std::in_place_index<0>, std::move(value)) {}
    Outcome(E error) : v_(std::in_place_index<1>, std::move(error)) {}

    bool ok() const { return v_.index() == 0; }
    explicit operator bool() const { return ok(); }

    const T& value() const {
        if (!ok()) throw std::logic_error("Outcome: value() on error");
        return std::get<0>(v_);
    }
    T& value() {
        if (!ok()) throw std::logic_error("Outcome: value() on error");
        return std::get<0>(v_);
    }
    const E& error() const {
        if (ok()) throw std::logic_error("Outcome: error() on value");
        return std::get<1>(v_);
    }

    const T* operator->() const { return &value(); }
    const T& operator*() const { return value(); }

private:
    std::variant<T, E> v_;
};

}  // namespace nsi

#endif  // NSI_OUTCOME_HPP
