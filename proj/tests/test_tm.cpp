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

#include "doctest.h"
#include "nsi/tm.hpp"
#include "nsi/typing.hpp"
#include "nsi/verify.hpp"

using namespace nsi;

namespace {

std::vector<bool> bits_of(const std::string& s) {
    std::vector<bool> out;
    for (char c : s) out.push_back(c == '1');
    return out;
}

}  // namespace

TEST_CASE("spec parser") {
    TMSpec p = parse_tm_spec(
        "-- flips every bit\n"
        "states 1; initial 0; blanks-as-edge\n"
        "0 0 -> 1 L 0   -- zero becomes one\n"
        "0 1 -> 0 L 0\n");
    CHECK(p.states == 1);
    CHECK(p.state_bits() == 1);
    REQUIRE(p.transition(0, TmSymbol::Zero));
    CHECK(p.transition(0, TmSymbol::Zero)->write);
    CHECK(p.transition(0, TmSymbol::Blank) == nullptr);
    CHECK(parse_tm_spec(to_string(p)).delta == p.delta);

    CHECK_THROWS_AS(parse_tm_spec("states 2; initial 0\n"), TmParseError);
    CHECK_THROWS_AS(parse_tm_spec("states 2; initial 0; blanks-as-edge\n0 2 -> 1 L 0\n"), TmParseError);
    CHECK_THROWS_AS(parse_tm_spec("states 2; initial 0; blanks-as-edge\n0 0 -> 1 L 5\n"), TmParseError);
    CHECK_THROWS_AS(parse_tm_spec("states 2; initial 0; blanks-as-edge\n0 0 -> 1 L 0\n0 0 -> 0 R 1\n"),
                    TmParseError);
    try {
        parse_tm_spec("states 2; initial 0; blanks-as-edge\n\n0 0 -> 1 X 0\n");
        FAIL("expected a parse error");
    } catch (const TmParseError& e) {
        CHECK(e.line() == 3);
    }
    TMSpec wide = parse_tm_spec("states 5; initial 4; blanks-as-edge\n");
    CHECK(wide.state_bits() == 3);
}

TEST_CASE("configuration coding round trip") {
    TMSpec spec = parse_tm_spec("states 4; initial 2; blanks-as-edge\n");
    TmConfig c{3, {true, false, true}, {false, true}};
    Term t = encode_config(spec, c);
    auto ty = infer(t);
    REQUIRE(ty);
    CHECK(ty->type == tm_config_type(spec));
    CHECK(ty->minimal_context.empty());
    auto back = decode_config(spec, t);
    REQUIRE(back);
    CHECK(*back == c);
    CHECK(c.tape() == "10101");
}

TEST_CASE("step term is closed and typed") {
    for (const TMSpec& spec : {parity_machine(), increment_machine()}) {
        auto ty = infer(tm_step_term(spec));
        REQUIRE_MESSAGE(ty, ty.error().to_string());
        CHECK(ty->type == Type::arrow(tm_config_type(spec), tm_config_type(spec)));
        CHECK(ty->minimal_context.empty());
    }
}

TEST_CASE("direct simulator") {
    TMSpec inc = increment_machine();
    TmSimulator sim(inc, bits_of("1011"));
    sim.run(100);
    CHECK(sim.halted());
    CHECK(sim.config().tape() == "1100");
    TmSimulator carry(inc, bits_of("111"));
    carry.run(100);
    CHECK(carry.config().tape() == "1000");
    TmSimulator empty(inc, {});
    empty.run(100);
    CHECK(empty.config().tape() == "1");

    TMSpec par = parity_machine();
    TmSimulator p(par, bits_of("1011"));
    p.run(100);
    CHECK(p.config().state == 1);
    TmSimulator pe(par, {});
    CHECK(pe.halted());
    CHECK(pe.config().state == 0);
}

TEST_CASE("term run agrees with the simulator") {
    for (const TMSpec& spec : {parity_machine(), increment_machine()}) {
        for (unsigned len = 0; len <= 4; ++len) {
            for (unsigned v = 0; v < (1u << len); ++v) {
                std::vector<bool> in;
                for (unsigned i = 0; i < len; ++i) in.push_back((v >> (len - 1 - i)) & 1u);
                TmSimulator sim(spec, in);
                sim.run(1000);
                TmRunResult r = tm_run(spec, in, len + 2);
                CHECK(r.halted);
                CHECK(r.config == sim.config());
            }
        }
    }
}

TEST_CASE("short clock is flagged") {
    TMSpec par = parity_machine();
    std::vector<bool> in = bits_of("10110");
    TmRunResult r = tm_run(par, in, 2);
    CHECK_FALSE(r.halted);
    TmSimulator sim(par, in);
    sim.run(2);
    CHECK(r.config == sim.config());
}

TEST_CASE("moving right reads zeros past the input") {
    TMSpec right = parse_tm_spec(
        "states 3; initial 0; blanks-as-edge\n"
        "0 0 -> 1 R 1\n"
        "0 1 -> 1 R 1\n"
        "1 0 -> 1 R 2\n"
        "2 0 -> 0 L 2\n"
        "2 1 -> 0 L 2\n");
    for (const char* input : {"", "0", "10"}) {
        TmSimulator sim(right, bits_of(input));
        std::uint64_t n = sim.run(50);
        TmRunResult r = tm_run(right, bits_of(input), n + 1, Strategy::rightmost_innermost());
        CHECK(r.config == sim.config());
    }
}

TEST_CASE("run certifies") {
    Term t = tm_run_term(increment_machine(), bits_of("0111"), 6);
    CertifyOptions o;
    Certificate c = certify(t, o);
    CHECK(c.ok());
    CHECK(c.descent.strict);
}
