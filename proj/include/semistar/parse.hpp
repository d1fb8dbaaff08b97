#pragma once

#include "semistar/core.hpp"

#include <cctype>
#include <functional>
#include <string>

namespace semistar {

/// Recursive-descent parser for ring expressions: + - * / ^ ( ) numbers identifiers.
template <class V>
class ExprParser {
public:
    std::function<V(const Int&)> number;
    std::function<V(const std::string&)> ident;
    std::function<V(const V&, const V&)> divide;

    V parse(const std::string& text)
    {
        s_ = text;
        i_ = 0;
        V v = expr();
        skip();
        if (i_ != s_.size()) fail("ParseError", "unexpected '" + s_.substr(i_) + "' in '" + s_ + "'");
        return v;
    }

private:
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    V expr()
    {
        V v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    V term()
    {
        V v = unary();
        for (;;) {
            if (eat('*')) v = v * unary();
            else if (eat('/')) v = divide(v, unary());
            else return v;
        }
    }
    V unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    V power()
    {
        V base = atom();
        if (!eat('^')) return base;
        skip();
        std::size_t st = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st == i_) fail("ParseError", "exponent expected in '" + s_ + "'");
        long e = std::stol(s_.substr(st, i_ - st));
        V r = number(Int(1));
        for (long k = 0; k < e; ++k) r = r * base;
        return r;
    }
    V atom()
    {
        skip();
        if (i_ >= s_.size()) fail("ParseError", "unexpected end of '" + s_ + "'");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            V v = expr();
            if (!eat(')')) fail("ParseError", "missing ')' in '" + s_ + "'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return number(Int(s_.substr(st, i_ - st)));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t st = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            return ident(s_.substr(st, i_ - st));
        }
        fail("ParseError", std::string("unexpected '") + c + "' in '" + s_ + "'");
    }

    std::string s_;
    std::size_t i_ = 0;
};

}  // namespace semistar
