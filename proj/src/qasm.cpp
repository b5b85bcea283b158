// Copyright 2026 The fragcut Authors
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

#include "fragcut/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "fragcut/error.hpp"

namespace fragcut {

namespace {

enum class TokenKind { Identifier, Number, String, Symbol, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    size_t line = 1;
    size_t column = 1;
};

class Lexer {
   public:
    explicit Lexer(std::string_view src) : src_(src) {
    }

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            Token t;
            t.line = line_;
            t.column = column_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = TokenKind::Identifier;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && pos_ + 1 < src_.size() &&
                        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                t.kind = TokenKind::Number;
                lex_number(t.text);
            } else if (c == '"') {
                t.kind = TokenKind::String;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                    t.text += advance();
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw ParseError("unterminated string literal", t.line, t.column);
                }
                advance();
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                t.kind = TokenKind::Symbol;
                t.text = "->";
                advance();
                advance();
            } else if (std::string_view("[](){};,+-*/^=<>").find(c) != std::string_view::npos) {
                t.kind = TokenKind::Symbol;
                t.text = advance();
                if ((c == '=' || c == '<' || c == '>') && pos_ < src_.size() && src_[pos_] == '=') {
                    t.text += advance();
                }
            } else {
                throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
            }
            out.push_back(std::move(t));
        }
    }

   private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            line_++;
            column_ = 1;
        } else {
            column_++;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    void lex_number(std::string &text) {
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                text += advance();
            }
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            text += advance();
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            size_t look = pos_ + 1;
            if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) {
                look++;
            }
            if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
                text += advance();
                if (src_[pos_] == '+' || src_[pos_] == '-') {
                    text += advance();
                }
                digits();
            }
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    size_t line_ = 1;
    size_t column_ = 1;
};

struct Register {
    std::string name;
    size_t size;
};

class Parser {
   public:
    Parser(std::vector<Token> tokens, std::string name) : tokens_(std::move(tokens)), name_(std::move(name)) {
    }

    Circuit parse() {
        if (peek_is("OPENQASM")) {
            const Token &kw = next();
            const Token &version = expect(TokenKind::Number, "version number");
            if (version.text != "2.0" && version.text != "2") {
                throw ParseError("unsupported OpenQASM version " + version.text, kw.line, kw.column);
            }
            expect_symbol(";");
        }
        while (peek().kind != TokenKind::End) {
            statement();
        }
        if (!qreg_) {
            throw ParseError("no quantum register declared", peek().line, peek().column);
        }
        return Circuit(qreg_->size, std::move(gates_), std::move(name_));
    }

   private:
    const Token &peek() const {
        return tokens_[pos_];
    }
    bool peek_is(std::string_view text) const {
        return peek().kind != TokenKind::End && peek().kind != TokenKind::String && peek().text == text;
    }
    const Token &next() {
        const Token &t = tokens_[pos_];
        if (t.kind != TokenKind::End) {
            pos_++;
        }
        return t;
    }
    [[noreturn]] void fail(const std::string &message, const Token &at) const {
        throw ParseError(message, at.line, at.column);
    }
    const Token &expect(TokenKind kind, std::string_view what) {
        if (peek().kind != kind) {
            fail("expected " + std::string(what) + describe(peek()), peek());
        }
        return next();
    }
    void expect_symbol(std::string_view sym) {
        if (peek().kind != TokenKind::Symbol || peek().text != sym) {
            fail("expected '" + std::string(sym) + "'" + describe(peek()), peek());
        }
        next();
    }
    static std::string describe(const Token &t) {
        if (t.kind == TokenKind::End) {
            return " but reached end of input";
        }
        return " but found '" + t.text + "'";
    }

    void statement() {
        const Token &head = peek();
        if (head.kind != TokenKind::Identifier) {
            fail("expected a statement" + describe(head), head);
        }
        const std::string &word = head.text;
        if (word == "include") {
            next();
            expect(TokenKind::String, "file name");
            expect_symbol(";");
        } else if (word == "qreg") {
            next();
            Register r = declaration();
            if (qreg_) {
                fail("only one quantum register is supported", head);
            }
            qreg_ = r;
            measured_.assign(r.size, false);
        } else if (word == "creg") {
            next();
            Register r = declaration();
            cregs_[r.name] = r.size;
        } else if (word == "barrier") {
            next();
            // Operands are checked but the barrier itself has no effect.
            operand_list();
            expect_symbol(";");
        } else if (word == "measure") {
            measure_statement();
        } else if (word == "if") {
            fail("classical control ('if') is not supported", head);
        } else if (word == "gate" || word == "opaque") {
            fail("gate definitions are not supported", head);
        } else if (word == "OPENQASM") {
            fail("OPENQASM header must be the first statement", head);
        } else {
            gate_statement();
        }
    }

    Register declaration() {
        const Token &id = expect(TokenKind::Identifier, "register name");
        expect_symbol("[");
        const Token &size = expect(TokenKind::Number, "register size");
        size_t n = parse_index(size);
        expect_symbol("]");
        expect_symbol(";");
        return Register{id.text, n};
    }

    size_t parse_index(const Token &t) {
        if (t.text.find_first_not_of("0123456789") != std::string::npos) {
            fail("expected a non-negative integer but found '" + t.text + "'", t);
        }
        return std::stoull(t.text);
    }

    // A qubit operand: either a single indexed qubit or a whole register (broadcast).
    struct Operand {
        std::vector<Qubit> qubits;
        bool broadcast = false;
        const Token *where = nullptr;
    };

    Operand operand() {
        const Token &id = expect(TokenKind::Identifier, "qubit operand");
        if (!qreg_ || id.text != qreg_->name) {
            fail("unknown quantum register '" + id.text + "'", id);
        }
        Operand op;
        op.where = &id;
        if (peek().kind == TokenKind::Symbol && peek().text == "[") {
            next();
            const Token &idx = expect(TokenKind::Number, "qubit index");
            size_t q = parse_index(idx);
            if (q >= qreg_->size) {
                fail("qubit index " + std::to_string(q) + " out of range for register '" + qreg_->name + "[" +
                         std::to_string(qreg_->size) + "]'",
                     idx);
            }
            expect_symbol("]");
            op.qubits.push_back(static_cast<Qubit>(q));
        } else {
            op.broadcast = true;
            for (size_t q = 0; q < qreg_->size; q++) {
                op.qubits.push_back(static_cast<Qubit>(q));
            }
        }
        return op;
    }

    std::vector<Operand> operand_list() {
        std::vector<Operand> ops;
        ops.push_back(operand());
        while (peek().kind == TokenKind::Symbol && peek().text == ",") {
            next();
            ops.push_back(operand());
        }
        return ops;
    }

    void classical_operand() {
        const Token &id = expect(TokenKind::Identifier, "classical operand");
        auto it = cregs_.find(id.text);
        if (it == cregs_.end()) {
            fail("unknown classical register '" + id.text + "'", id);
        }
        if (peek().kind == TokenKind::Symbol && peek().text == "[") {
            next();
            const Token &idx = expect(TokenKind::Number, "bit index");
            if (parse_index(idx) >= it->second) {
                fail("bit index out of range for register '" + id.text + "'", idx);
            }
            expect_symbol("]");
        }
    }

    void measure_statement() {
        next();
        Operand target = operand();
        expect_symbol("->");
        classical_operand();
        expect_symbol(";");
        for (Qubit q : target.qubits) {
            measured_[q] = true;
            gates_.push_back(Gate::measure(q));
        }
    }

    void gate_statement() {
        const Token &id = next();
        const GateInfo *info = find_gate_info(id.text);
        bool is_swap = id.text == "swap";
        if (info == nullptr && !is_swap) {
            fail("unsupported gate '" + id.text + "'", id);
        }
        std::vector<double> params;
        if (peek().kind == TokenKind::Symbol && peek().text == "(") {
            next();
            if (!(peek().kind == TokenKind::Symbol && peek().text == ")")) {
                params.push_back(expression());
                while (peek().kind == TokenKind::Symbol && peek().text == ",") {
                    next();
                    params.push_back(expression());
                }
            }
            expect_symbol(")");
        }
        std::vector<Operand> ops = operand_list();
        expect_symbol(";");

        size_t arity = is_swap ? 2 : info->num_qubits;
        size_t num_params = is_swap ? 0 : info->num_params;
        if (ops.size() != arity) {
            fail("gate '" + id.text + "' acts on " + std::to_string(arity) + " qubit(s), got " +
                     std::to_string(ops.size()),
                 id);
        }
        if (params.size() != num_params) {
            fail("gate '" + id.text + "' takes " + std::to_string(num_params) + " parameter(s), got " +
                     std::to_string(params.size()),
                 id);
        }

        // Register broadcast: every register operand must have the same length.
        size_t reps = 1;
        for (const Operand &op : ops) {
            if (op.broadcast) {
                if (reps != 1 && reps != op.qubits.size()) {
                    fail("mismatched register sizes in broadcast", *op.where);
                }
                reps = op.qubits.size();
            }
        }
        for (size_t r = 0; r < reps; r++) {
            std::vector<Qubit> qs;
            for (const Operand &op : ops) {
                qs.push_back(op.broadcast ? op.qubits[r] : op.qubits[0]);
            }
            if (qs.size() == 2 && qs[0] == qs[1]) {
                fail("gate '" + id.text + "' has repeated qubit operand", id);
            }
            for (Qubit q : qs) {
                if (measured_[q]) {
                    fail("mid-circuit measurement: qubit " + std::to_string(q) + " is used after being measured", id);
                }
            }
            if (is_swap) {
                gates_.push_back(Gate{"cx", {qs[0], qs[1]}, {}, false});
                gates_.push_back(Gate{"cx", {qs[1], qs[0]}, {}, false});
                gates_.push_back(Gate{"cx", {qs[0], qs[1]}, {}, false});
            } else {
                gates_.push_back(Gate{id.text, qs, params, false});
            }
        }
    }

    bool at_symbol(std::string_view s) const {
        return peek().kind == TokenKind::Symbol && peek().text == s;
    }

    double expression() {
        double v = term();
        while (at_symbol("+") || at_symbol("-")) {
            bool plus = next().text == "+";
            double rhs = term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double term() {
        double v = power();
        while (at_symbol("*") || at_symbol("/")) {
            bool mul = next().text == "*";
            double rhs = power();
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double power() {
        double base = unary();
        if (at_symbol("^")) {
            next();
            return std::pow(base, power());
        }
        return base;
    }

    double unary() {
        if (at_symbol("-")) {
            next();
            return -unary();
        }
        if (at_symbol("+")) {
            next();
            return unary();
        }
        return primary();
    }

    double primary() {
        const Token &t = peek();
        if (t.kind == TokenKind::Number) {
            next();
            return std::stod(t.text);
        }
        if (t.kind == TokenKind::Identifier) {
            next();
            if (t.text == "pi") {
                return std::numbers::pi;
            }
            static const std::unordered_map<std::string, double (*)(double)> functions{
                {"sin", [](double x) { return std::sin(x); }},
                {"cos", [](double x) { return std::cos(x); }},
                {"tan", [](double x) { return std::tan(x); }},
                {"exp", [](double x) { return std::exp(x); }},
                {"ln", [](double x) { return std::log(x); }},
                {"sqrt", [](double x) { return std::sqrt(x); }},
            };
            auto it = functions.find(t.text);
            if (it == functions.end()) {
                fail("unknown identifier '" + t.text + "' in expression", t);
            }
            expect_symbol("(");
            double arg = expression();
            expect_symbol(")");
            return it->second(arg);
        }
        if (at_symbol("(")) {
            next();
            double v = expression();
            expect_symbol(")");
            return v;
        }
        fail("expected an expression" + describe(t), t);
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
    std::string name_;
    std::optional<Register> qreg_;
    std::unordered_map<std::string, size_t> cregs_;
    std::vector<bool> measured_;
    std::vector<Gate> gates_;
};

}  // namespace

Circuit parse_qasm(std::string_view text, std::string name) {
    return Parser(Lexer(text).tokenize(), std::move(name)).parse();
}

Circuit load_qasm_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open circuit file '" + path.string() + "'", 0, 0);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_qasm(buffer.str(), path.stem().string());
}

std::string to_qasm(const Circuit &c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out << "qreg q[" << c.width() << "];\n";
    bool has_measure = false;
    for (const Gate &g : c.gates()) {
        has_measure |= g.is_measurement;
    }
    if (has_measure) {
        out << "creg c[" << c.width() << "];\n";
    }
    char buf[64];
    for (const Gate &g : c.gates()) {
        if (g.is_measurement) {
            out << "measure q[" << g.qubits[0] << "] -> c[" << g.qubits[0] << "];\n";
            continue;
        }
        out << g.name;
        if (!g.params.empty()) {
            out << "(";
            for (size_t k = 0; k < g.params.size(); k++) {
                std::snprintf(buf, sizeof(buf), "%.17g", g.params[k]);
                out << (k ? "," : "") << buf;
            }
            out << ")";
        }
        for (size_t k = 0; k < g.qubits.size(); k++) {
            out << (k ? "," : " ") << "q[" << g.qubits[k] << "]";
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace fragcut
