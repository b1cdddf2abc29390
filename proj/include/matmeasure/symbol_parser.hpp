#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "matmeasure/borel_set.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/mult_op.hpp"
#include "matmeasure/poly.hpp"

namespace matmeasure {

namespace detail {

/// Recursive-descent parser for polynomials in `x` with complex coefficients:
/// sums/differences of products of numbers, `i` and `x^k`.
class PolyParser {
public:
    explicit PolyParser(const std::string& s) {
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) text_.push_back(c);
    }

    Poly parse() {
        Poly p = expression();
        if (pos_ != text_.size())
            throw ParseError("symbol: trailing input at offset " + std::to_string(pos_));
        return poly_trim(p);
    }

private:
    Poly expression() {
        Poly acc;
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = get() == '-';
        acc = term();
        if (neg) acc = poly_scale(acc, -1.0);
        while (peek() == '+' || peek() == '-') {
            const bool minus = get() == '-';
            Poly t = term();
            acc = poly_add(acc, minus ? poly_scale(t, -1.0) : t);
        }
        return acc;
    }

    Poly term() {
        Poly acc = factor();
        while (peek() == '*') {
            get();
            acc = poly_mul(acc, factor());
        }
        return acc;
    }

    Poly factor() {
        const char c = peek();
        if (c == '(') {
            get();
            Poly p = expression();
            if (get() != ')') throw ParseError("symbol: expected ')'");
            return p;
        }
        if (c == 'x') {
            get();
            int k = 1;
            if (peek() == '^') {
                get();
                k = static_cast<int>(number());
            }
            Poly p(static_cast<size_t>(k) + 1, Complex(0.0));
            p.back() = 1.0;
            return p;
        }
        if (c == 'i') {
            get();
            return Poly{Complex(0.0, 1.0)};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const double v = number();
            if (peek() == 'i') {
                get();
                return Poly{Complex(0.0, v)};
            }
            return Poly{Complex(v)};
        }
        throw ParseError(std::string("symbol: unexpected '") + c + "'");
    }

    double number() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                text_[pos_] == 'e' || text_[pos_] == 'E' ||
                ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
            ++pos_;
        if (pos_ == start) throw ParseError("symbol: expected a number");
        return std::stod(text_.substr(start, pos_ - start));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

    std::string text_;
    size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const std::string& s) { return detail::PolyParser(s).parse(); }

/// `x`, `2*x+1`, `x^2 - i*x`, or piecewise `{ [0,1]: 2*x+1 ; {2}: 5 }`.
inline PiecewiseScalarFn parse_symbol(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("symbol: empty input");
    if (s.front() != '{' || s.find(':') == std::string::npos)
        return PiecewiseScalarFn::polynomial(parse_poly(s));
    if (s.back() != '}') throw ParseError("symbol: expected closing '}'");
    const std::string body = s.substr(1, s.size() - 2);
    std::vector<PiecewiseScalarFn::Piece> pieces;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t semi = body.find(';', pos);
        if (semi == std::string::npos) semi = body.size();
        const std::string clause = body.substr(pos, semi - pos);
        const size_t colon = clause.find(':');
        if (colon == std::string::npos) throw ParseError("symbol: clause without ':'");
        pieces.push_back(PiecewiseScalarFn::Piece{BorelSet::parse(clause.substr(0, colon)),
                                                  parse_poly(clause.substr(colon + 1))});
        pos = semi + 1;
    }
    return PiecewiseScalarFn(std::move(pieces));
}

}  // namespace matmeasure
