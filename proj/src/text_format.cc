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

#include "revcirc/text_format.h"

#include <charconv>
#include <optional>
#include <sstream>

namespace revcirc {

ParseError::ParseError(size_t line, size_t column, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {
}

std::string format_circuit(const Circuit &circuit) {
    std::string out = "N:" + std::to_string(circuit.wires()) +
                      " n:" + std::to_string(circuit.n_inputs());
    if (circuit.m_outputs() != 1) {
        out += " m:" + std::to_string(circuit.m_outputs());
    }
    out += circuit.constant_fill() ? " fill:1 ;" : " fill:0 ;";
    for (const Gate &g : circuit.gates()) {
        out += ' ';
        out += g.str();
    }
    return out;
}

namespace {

class Cursor {
   public:
    Cursor(std::string_view text, size_t line) : text_(text), line_(line) {
    }

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\r')) {
            pos_++;
        }
    }
    bool done() {
        skip_space();
        return pos_ >= text_.size();
    }
    bool peek(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            fail(std::string("expected '") + c + "'");
        }
        pos_++;
    }
    void expect_word(std::string_view word) {
        skip_space();
        if (text_.substr(pos_, word.size()) != word) {
            fail("expected '" + std::string(word) + "'");
        }
        pos_ += word.size();
    }
    size_t number() {
        skip_space();
        size_t value = 0;
        auto [ptr, ec] =
            std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc() || ptr == text_.data() + pos_) {
            fail("expected a decimal number");
        }
        pos_ = static_cast<size_t>(ptr - text_.data());
        return value;
    }
    size_t column() const {
        return pos_ + 1;
    }
    [[noreturn]] void fail(const std::string &what) const {
        throw ParseError(line_, pos_ + 1, what);
    }
    [[noreturn]] void fail_at(size_t column, const std::string &what) const {
        throw ParseError(line_, column, what);
    }

   private:
    std::string_view text_;
    size_t line_;
    size_t pos_ = 0;
};

}  // namespace

Circuit parse_circuit(std::string_view text, size_t line_number) {
    Cursor cur(text, line_number);
    cur.expect_word("N:");
    size_t wires = cur.number();
    if (wires == 0 || wires > kMaxWires) {
        cur.fail("wire count out of range");
    }
    cur.expect_word("n:");
    size_t n_inputs = cur.number();
    if (n_inputs > wires) {
        cur.fail("more inputs than wires");
    }
    size_t m_outputs = 1;
    if (cur.peek('m')) {
        cur.expect_word("m:");
        m_outputs = cur.number();
        if (m_outputs > wires) {
            cur.fail("more outputs than wires");
        }
    }
    cur.expect_word("fill:");
    size_t fill_column = cur.column();
    size_t fill = cur.number();
    if (fill > 1) {
        cur.fail_at(fill_column, "fill must be 0 or 1");
    }
    cur.expect(';');

    std::vector<Gate> gates;
    while (!cur.done()) {
        size_t gate_column = cur.column();
        cur.expect('T');
        cur.expect('(');
        size_t a = cur.number();
        cur.expect(',');
        size_t b = cur.number();
        cur.expect(')');
        cur.expect('>');
        size_t t = cur.number();
        if (a >= wires || b >= wires || t >= wires) {
            cur.fail_at(gate_column, "gate wire index exceeds bus width " + std::to_string(wires));
        }
        if (t == a || t == b) {
            cur.fail_at(gate_column, "illegal gate: target " + std::to_string(t) +
                                         " is also a control");
        }
        gates.emplace_back(t, a, b);
    }
    return Circuit(wires, n_inputs, m_outputs, fill == 1, std::move(gates));
}

std::vector<Circuit> read_circuits(std::istream &in) {
    std::vector<Circuit> out;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        line_number++;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        out.push_back(parse_circuit(line, line_number));
    }
    return out;
}

}  // namespace revcirc
