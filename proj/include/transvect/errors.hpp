// Copyright 2026 The transvect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace transvect {

/// Malformed textual input (Pauli strings, code files, circuits, CLI values).
/// `position` is a character offset or a 1-based line number, depending on
/// what was being parsed; `what()` always spells out which.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &message, std::size_t position)
        : std::runtime_error(message), position_(position) {
    }

    std::size_t position() const noexcept {
        return position_;
    }

   private:
    std::size_t position_;
};

/// A stabilizer code (or other structured input) failed its validity checks.
class ValidationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds a hard size limit (dense oracle qubits, lookup table, exhaustive search).
class CapacityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input is well formed but outside what an engine supports
/// (e.g. several generic rotations in one conjugation, non-Clifford Monte Carlo).
class UnsupportedError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// An invariant that should hold for valid inputs was violated.
class InternalError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace transvect
