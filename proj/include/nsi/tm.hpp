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

#ifndef NSI_TM_HPP
#define NSI_TM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsi/reduction.hpp"
#include "nsi/term.hpp"

namespace nsi {

// Binary Turing machines encoded on iota.
//
// Tape convention: cells hold 0 or 1. Cells left of the input start out
// blank and read as '_' until written; cells right of the input read 0.
// A configuration is the triple (left, right, state) where `left` lists the
// cells up to and including the head (head first) and `right` the cells
// after the head (nearest first). On terms it is
//
//     tensor left (tensor right q)  :  I (x) (I (x) S)
//
// where left/right are short numerals with the first listed cell outermost
// and q : S = B (x) (B (x) ... B) holds the state in binary, most
// significant bit first. The head reads blank exactly when left is the
// empty numeral. A state/symbol pair without a transition halts the
// machine: the step function then returns its argument unchanged.

enum class TmSymbol : std::uint8_t { Zero = 0, One = 1, Blank = 2 };
enum class TmMove : std::uint8_t { Left, Right };

struct TmTransition {
    bool write = false;
    TmMove move = TmMove::Left;
    unsigned next = 0;

    friend bool operator==(const TmTransition&, const TmTransition&) = default;
};

struct TMSpec {
    unsigned states = 1;
    unsigned initial = 0;
    std::vector<unsigned> accepting;
    std::map<std::pair<unsigned, TmSymbol>, TmTransition> delta;

    const TmTransition* transition(unsigned state, TmSymbol read) const;
    // Number of state bits: the least n >= 1 with states <= 2^n.
    unsigned state_bits() const;
};

class TmParseError : public std::invalid_argument {
public:
    TmParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Text format: a header `states N; initial i; blanks-as-edge` optionally
// followed by `; accept a b ...`, then one transition per line
// `state read -> write move state'` with read in {0, 1, _}, write in
// {0, 1} and move in {L, R}. `--` starts a comment.
TMSpec parse_tm_spec(const std::string& text);
std::string to_string(const TMSpec& spec);

// Scans leftwards from the last input cell; the final state is the parity
// of the input's ones.
TMSpec parity_machine();
// Adds one to the input read as a binary number, most significant bit
// first; state 1 is the halting state.
TMSpec increment_machine();

struct TmConfig {
    unsigned state = 0;
    std::vector<bool> left;   // head cell first
    std::vector<bool> right;  // cell after the head first

    // Tape contents left to right, blanks omitted.
    std::string tape() const;
    friend bool operator==(const TmConfig&, const TmConfig&) = default;
};

TmConfig initial_config(const TMSpec& spec, const std::vector<bool>& input);

// Types and term encodings of configurations.
Type tm_state_type(const TMSpec& spec);
Type tm_config_type(const TMSpec& spec);
Term encode_config(const TMSpec& spec, const TmConfig& config);
std::optional<TmConfig> decode_config(const TMSpec& spec, const Term& t);

// One machine step as a closed term of type C -o C.
Term tm_step_term(const TMSpec& spec);
// clock {fun d a c. step c} (initial configuration): iterates the step
// function once per clock entry.
Term tm_run_term(const TMSpec& spec, const std::vector<bool>& input, std::size_t clock_length);

struct TmRunResult {
    TmConfig config;
    std::uint64_t reduction_steps = 0;
    // True iff the machine has halted in `config`, i.e. the clock sufficed.
    bool halted = false;
};

// Normalizes tm_run_term and decodes the result. Throws std::runtime_error
// if the normal form is not a canonical configuration.
TmRunResult tm_run(const TMSpec& spec, const std::vector<bool>& input, std::size_t clock_length,
                   const Strategy& strategy = Strategy::leftmost_outermost());

// Direct simulator over an explicit position-indexed tape, independent of
// the term encoding.
class TmSimulator {
public:
    TmSimulator(const TMSpec& spec, const std::vector<bool>& input);

    // Performs one transition; false if the machine has halted.
    bool step();
    // Steps until halted or `max_steps` transitions; returns the count.
    std::uint64_t run(std::uint64_t max_steps);
    bool halted() const;
    TmConfig config() const;

private:
    TmSymbol read() const;

    const TMSpec* spec_;
    std::map<long, bool> cells_;  // written or input cells
    long head_;
    long extent_;  // rightmost cell that exists on the tape
    unsigned state_;
};

}  // namespace nsi

#endif  // NSI_TM_HPP
