#pragma once

#include <cmath>
#include <vector>

#include "matmeasure/common.hpp"

namespace matmeasure {

/// Polynomial with complex coefficients, ascending degree order.
using Poly = std::vector<Complex>;

inline Complex poly_eval(const Poly& p, double t) {
    Complex v = 0.0;
    for (size_t k = p.size(); k-- > 0;) v = v * t + p[k];
    return v;
}

inline Poly poly_trim(Poly p, double tol = 0.0) {
    while (!p.empty() && std::abs(p.back()) <= tol) p.pop_back();
    return p;
}

inline int poly_degree(const Poly& p) {
    for (size_t k = p.size(); k-- > 0;)
        if (p[k] != Complex(0.0)) return static_cast<int>(k);
    return -1;  // zero polynomial
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Complex(0.0));
    for (size_t k = 0; k < a.size(); ++k) r[k] += a[k];
    for (size_t k = 0; k < b.size(); ++k) r[k] += b[k];
    return r;
}

inline Poly poly_scale(Poly p, Complex z) {
    for (auto& c : p) c *= z;
    return p;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Complex(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline Poly poly_conj(Poly p) {
    for (auto& c : p) c = std::conj(c);
    return p;
}

/// Exact integral over [a, b] via monomial antiderivatives.
inline Complex poly_integral(const Poly& p, double a, double b) {
    Complex s = 0.0;
    double pa = a, pb = b;  // running powers a^{k+1}, b^{k+1}
    for (size_t k = 0; k < p.size(); ++k) {
        s += p[k] * (pb - pa) / static_cast<double>(k + 1);
        pa *= a;
        pb *= b;
    }
    return s;
}

inline bool poly_is_real(const Poly& p, double tol = 0.0) {
    for (const auto& c : p)
        if (std::abs(c.imag()) > tol) return false;
    return true;
}

inline bool poly_is_affine(const Poly& p) { return poly_degree(p) <= 1; }

}  // namespace matmeasure
