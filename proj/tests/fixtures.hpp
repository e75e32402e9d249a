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

#ifndef NSI_TESTS_FIXTURES_HPP
#define NSI_TESTS_FIXTURES_HPP

#include "nsi/term.hpp"

namespace nsi::fixtures {

inline Type B() { return Type::boolean(); }
inline Type D() { return Type::diamond(); }
inline Type I() { return Type::iota(); }
inline Term tt() { return cnst(Const::tt()); }
inline Term ff() { return cnst(Const::ff()); }
inline Term d(const std::string& name) { return var(name, Type::diamond()); }

// cons[B] d1 tt (cons[B] d2 ff nil[B])
inline Term two_list() {
    return apps(cnst(Const::cons(B())),
                {d("d1"), tt(), apps(cnst(Const::cons(B())), {d("d2"), ff(), cnst(Const::nil(B()))})});
}

// fun d:Dia. fun a:B. fun r:B. r
inline Term skip_step() { return lams({{"d", D()}, {"a", B()}, {"r", B()}}, var("r", B())); }

// The worked fixture: the two-entry list iterated with skip_step on tt.
inline Term worked_fixture() { return apps(two_list(), {Term::list_brace(skip_step()), tt()}); }

}  // namespace nsi::fixtures

#endif  // NSI_TESTS_FIXTURES_HPP
