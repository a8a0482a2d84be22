#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "redform/error.hpp"
#include "redform/ratfunc.hpp"

namespace redform {

namespace detail {

// Recursive-descent parser for
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := ('+'|'-') unary | power
//   power   := primary ('^' digits)?
//   primary := digits | 'i' | <var> | '(' expr ')'
class ExprParser {
public:
    ExprParser(std::string_view text, std::string var, int line)
        : s_(text), var_(std::move(var)), line_(line) {}

    RatFunc parse() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what, line_, static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc expr() {
        RatFunc r = term();
        for (;;) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }

    RatFunc term() {
        RatFunc r = unary();
        for (;;) {
            if (accept('*')) {
                r *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                RatFunc d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                r /= d;
            } else {
                return r;
            }
        }
    }

    RatFunc unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    RatFunc power() {
        RatFunc base = primary();
        if (!accept('^')) return base;
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("exponent must be a nonnegative integer");
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string digits(s_.substr(start, pos_ - start));
        if (digits.size() > 6) fail("exponent too large");
        std::size_t e = std::stoul(digits);
        RatFunc r(1L);
        for (std::size_t k = 0; k < e; ++k) r *= base;
        return r;
    }

    RatFunc primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            mpz_class z(std::string(s_.substr(start, pos_ - start)));
            return RatFunc(GaussRational(mpq_class(z)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string_view id = s_.substr(start, pos_ - start);
            if (id == "i") return RatFunc(GaussRational::i());
            if (id == var_) return RatFunc::x();
            pos_ = start;
            fail("unknown symbol '" + std::string(id) + "' (variable is '" + var_ + "')");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::string var_;
    int line_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an entry of the expression grammar into an element of Q(i)(var).
inline RatFunc parse_ratfunc(std::string_view text, const std::string& var = "x", int line = 1) {
    if (var == "i") throw ParseError("variable name 'i' is reserved for the imaginary unit", line, 1);
    return detail::ExprParser(text, var, line).parse();
}

}  // namespace redform
