// Copyright 2026 The revcirc Authors
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

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "revcirc/circuit.h"

namespace revcirc {

/// Raised for malformed circuit text; carries a 1-based line and column.
class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, size_t column, const std::string &what);
    size_t line() const {
        return line_;
    }
    size_t column() const {
        return column_;
    }

   private:
    size_t line_;
    size_t column_;
};

/// One circuit per line:
///
///     N:<wires> n:<inputs> fill:<0|1> ; T(a,b)>t T(a,b)>t ...
///
/// `m:<outputs>` may appear in the header and is written only when m != 1.
std::string format_circuit(const Circuit &circuit);

Circuit parse_circuit(std::string_view text, size_t line_number = 1);

/// Reads every non-blank line not starting with '#'.
std::vector<Circuit> read_circuits(std::istream &in);

}  // namespace revcirc
