#pragma once

// Recursive-descent checker for the TPTP subset the exporter targets:
// cnf/fof annotated formulas with quantifiers, negation, binary | and &
// (unmixed without parentheses), predicates over variables and constants.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace tptp {

struct Formula {
    std::string language;  // "cnf" or "fof"
    std::string name;
    std::string role;
    bool quantified = false;
};

struct CheckResult {
    bool ok = false;
    std::string error;
    std::vector<Formula> formulas;

    [[nodiscard]] std::size_t count(std::string_view role) const {
        std::size_t k = 0;
        for (const auto& f : formulas) k += f.role == role;
        return k;
    }
};

class Checker {
public:
    explicit Checker(std::string_view text) : s_(text) {}

    CheckResult run() {
        CheckResult r;
        try {
            skip();
            while (p_ < s_.size()) {
                r.formulas.push_back(annotated());
                skip();
            }
            r.ok = true;
        } catch (const std::string& e) {
            r.error = e + " at offset " + std::to_string(p_);
        }
        return r;
    }

private:
    std::string_view s_;
    std::size_t p_ = 0;
    bool quantified_ = false;

    void skip() {
        while (p_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[p_]))) {
                ++p_;
            } else if (s_[p_] == '%') {
                while (p_ < s_.size() && s_[p_] != '\n') ++p_;
            } else {
                break;
            }
        }
    }

    bool peek(char c) {
        skip();
        return p_ < s_.size() && s_[p_] == c;
    }

    void expect(char c) {
        if (!peek(c)) throw std::string("expected '") + c + "'";
        ++p_;
    }

    std::string word() {
        skip();
        if (p_ >= s_.size()) throw std::string("unexpected end");
        if (s_[p_] == '\'') {
            std::string out;
            ++p_;
            while (p_ < s_.size() && s_[p_] != '\'') {
                if (s_[p_] == '\\') ++p_;
                if (p_ >= s_.size()) break;
                const auto c = static_cast<unsigned char>(s_[p_]);
                if (c < 32 || c > 126) throw std::string("non-printable character in quoted word");
                out += s_[p_++];
            }
            if (p_ >= s_.size() || out.empty()) throw std::string("bad quoted word");
            ++p_;
            return "'" + out;
        }
        const std::size_t start = p_;
        while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
        if (start == p_ || !std::isalpha(static_cast<unsigned char>(s_[start]))) throw std::string("expected a word");
        return std::string(s_.substr(start, p_ - start));
    }

    static bool is_variable(const std::string& w) { return std::isupper(static_cast<unsigned char>(w[0])) != 0; }

    Formula annotated() {
        Formula f;
        f.language = word();
        if (f.language != "cnf" && f.language != "fof") throw std::string("unknown language ") + f.language;
        expect('(');
        f.name = word();
        expect(',');
        f.role = word();
        if (f.role != "axiom" && f.role != "conjecture" && f.role != "hypothesis") throw "bad role " + f.role;
        expect(',');
        quantified_ = false;
        if (f.language == "cnf") {
            disjunction_or_literal();
        } else {
            formula();
        }
        f.quantified = quantified_;
        expect(')');
        expect('.');
        return f;
    }

    // cnf: literal ( | literal )*, optionally parenthesised
    void disjunction_or_literal() {
        if (peek('(')) {
            ++p_;
            disjunction_or_literal();
            expect(')');
            return;
        }
        cnf_literal();
        while (peek('|')) {
            ++p_;
            cnf_literal();
        }
    }

    void cnf_literal() {
        if (peek('~')) ++p_;
        atom();
    }

    void formula() {
        unitary();
        if (peek('|') || peek('&')) {
            const char op = s_[p_];
            while (peek(op)) {
                ++p_;
                unitary();
            }
            if (peek('|') || peek('&')) throw std::string("mixed connectives without parentheses");
        }
    }

    void unitary() {
        if (peek('(')) {
            ++p_;
            formula();
            expect(')');
        } else if (peek('~')) {
            ++p_;
            unitary();
        } else if (peek('!') || peek('?')) {
            ++p_;
            quantified_ = true;
            expect('[');
            do {
                if (!is_variable(word())) throw std::string("quantified name is not a variable");
            } while (peek(',') && (++p_, true));
            expect(']');
            expect(':');
            unitary();
        } else {
            atom();
        }
    }

    void atom() {
        const std::string w = word();
        if (is_variable(w)) throw std::string("variable used as predicate");
        if (peek('(')) {
            ++p_;
            term();
            while (peek(',')) {
                ++p_;
                term();
            }
            expect(')');
        }
    }

    void term() {
        const std::string w = word();
        if (!is_variable(w) && peek('(')) {
            ++p_;
            term();
            while (peek(',')) {
                ++p_;
                term();
            }
            expect(')');
        }
    }
};

inline CheckResult check(std::string_view text) { return Checker(text).run(); }

}  // namespace tptp
