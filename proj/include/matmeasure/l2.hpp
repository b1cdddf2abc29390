#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "matmeasure/complex_matrix.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/matrix_measure.hpp"
#include "matmeasure/poly.hpp"
#include "matmeasure/vector_function.hpp"

namespace matmeasure {

namespace detail {

/// Exact integral of <C f(t), g(t)> over [a, b] for constant C and polynomial
/// pieces of f, g: sum_ij C_ij integral f_j conj(g_i).
inline Complex pairing_integral(const ComplexMatrix& c, const MatrixMeasure& m,
                                const VectorFunction& f, const VectorFunction& g, double a,
                                double b) {
    (void)m;
    Complex total = 0.0;
    f.for_each_piece(a, b, &g,
                     [&](double lo, double hi, const std::vector<Poly>* pf,
                         const std::vector<Poly>* pg) {
                         if (!pf || !pg) return;
                         const int d = c.dim();
                         for (int i = 0; i < d; ++i)
                             for (int j = 0; j < d; ++j) {
                                 if (c(i, j) == 0.0) continue;
                                 const Poly prod = poly_mul((*pf)[static_cast<size_t>(j)],
                                                            poly_conj((*pg)[static_cast<size_t>(i)]));
                                 total += c(i, j) * poly_integral(prod, lo, hi);
                             }
                     });
    return total;
}

inline Complex pointwise_pairing(const ComplexMatrix& c, const std::vector<Complex>& fv,
                                 const std::vector<Complex>& gv) {
    Complex s = 0.0;
    const int d = c.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            s += c(i, j) * fv[static_cast<size_t>(j)] * std::conj(gv[static_cast<size_t>(i)]);
    return s;
}

}  // namespace detail

/// Semi-inner product <<f, g>>_M through the trace-density route:
/// integral of <D_M f, g> against tr_M.
inline Complex inner(const MatrixMeasure& m, const VectorFunction& f, const VectorFunction& g) {
    if (f.d() != m.d() || g.d() != m.d()) throw DimensionMismatch("inner: d mismatch");
    Complex total = 0.0;
    for (const auto& atom : m.atoms()) {
        const double trw = atom.weight.trace().real();
        const ComplexMatrix dm = Complex(1.0 / trw) * atom.weight;
        total += trw * detail::pointwise_pairing(dm, f.value_at(atom.t), g.value_at(atom.t));
    }
    for (const auto& seg : m.segments()) {
        const double trf = seg.density.trace().real();
        const ComplexMatrix dm = Complex(1.0 / trf) * seg.density;
        total += trf * detail::pairing_integral(dm, m, f, g, seg.a, seg.b);
    }
    return total;
}

inline double seminorm(const MatrixMeasure& m, const VectorFunction& f) {
    return std::sqrt(std::max(0.0, inner(m, f, f).real()));
}

/// The entry-wise route: sum_ij integral f_j conj(g_i) dM_ij, computed from
/// the raw weights with no trace normalization. Agrees with inner().
inline Complex sigma_inner(const MatrixMeasure& m, const VectorFunction& f,
                           const VectorFunction& g) {
    if (f.d() != m.d() || g.d() != m.d()) throw DimensionMismatch("sigma_inner: d mismatch");
    Complex total = 0.0;
    for (const auto& atom : m.atoms())
        total += detail::pointwise_pairing(atom.weight, f.value_at(atom.t), g.value_at(atom.t));
    for (const auto& seg : m.segments())
        total += detail::pairing_integral(seg.density, m, f, g, seg.a, seg.b);
    return total;
}

/// Zero-layer membership: f(t) in Ker W_k at every atom and the (pointwise
/// nonnegative) density contribution of every segment vanishing.
inline bool is_zero_layer(const MatrixMeasure& m, const VectorFunction& f,
                          double tol = kDefaultTol) {
    if (f.d() != m.d()) throw DimensionMismatch("is_zero_layer: d mismatch");
    const double scale = 1.0 + m.total_trace();
    for (const auto& atom : m.atoms())
        if (!in_kernel(atom.weight, f.value_at(atom.t), tol)) return false;
    for (const auto& seg : m.segments()) {
        const Complex c = detail::pairing_integral(seg.density, m, f, f, seg.a, seg.b);
        if (c.real() > tol * scale) return false;
    }
    return true;
}

/// An element of L^2(M): an equivalence class modulo the zero layer.
class L2Class {
public:
    L2Class(const MatrixMeasure& m, VectorFunction rep) : m_(&m), rep_(std::move(rep)) {}

    const VectorFunction& representative() const { return rep_; }
    const MatrixMeasure& measure() const { return *m_; }
    double norm() const { return seminorm(*m_, rep_); }

    bool same_class(const L2Class& o, double tol = kDefaultTol) const {
        if (m_ != o.m_) throw DimensionMismatch("L2Class: different ambient measures");
        return is_zero_layer(*m_, rep_ - o.rep_, tol);
    }

private:
    const MatrixMeasure* m_;
    VectorFunction rep_;
};

/// Pointwise map t -> sqrt(D_M(t)) f(t); sqrt factors are cached per atom and
/// per segment since D_M is constant on each.
class Fhat {
public:
    Fhat(const MatrixMeasure& m, VectorFunction f) : m_(&m), f_(std::move(f)) {
        if (f_.d() != m.d()) throw DimensionMismatch("Fhat: d mismatch");
        for (const auto& atom : m.atoms())
            atom_sqrt_.push_back(sqrt_psd(Complex(1.0 / atom.weight.trace().real()) * atom.weight));
        for (const auto& seg : m.segments())
            seg_sqrt_.push_back(sqrt_psd(Complex(1.0 / seg.density.trace().real()) * seg.density));
    }

    std::vector<Complex> operator()(double t) const {
        const auto& atoms = m_->atoms();
        for (size_t k = 0; k < atoms.size(); ++k)
            if (atoms[k].t == t) return atom_sqrt_[k].apply(f_.value_at(t));
        const auto& segs = m_->segments();
        for (size_t k = 0; k < segs.size(); ++k)
            if (segs[k].a <= t && t <= segs[k].b) return seg_sqrt_[k].apply(f_.value_at(t));
        return std::vector<Complex>(static_cast<size_t>(m_->d()), Complex(0.0));
    }

private:
    const MatrixMeasure* m_;
    VectorFunction f_;
    std::vector<ComplexMatrix> atom_sqrt_, seg_sqrt_;
};

/// Trapezoid-rule evaluation of sum_j |||(Fhat f)_j|||^2 against tr_M.
inline double fhat_parseval_quadrature(const MatrixMeasure& m, const VectorFunction& f,
                                       int nodes_per_segment) {
    const Fhat hat(m, f);
    double total = 0.0;
    for (const auto& atom : m.atoms()) {
        const auto v = hat(atom.t);
        double s = 0.0;
        for (const auto& z : v) s += std::norm(z);
        total += atom.weight.trace().real() * s;
    }
    for (const auto& seg : m.segments()) {
        const int n = std::max(2, nodes_per_segment);
        const double h = (seg.b - seg.a) / (n - 1);
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double t = seg.a + h * k;
            const auto v = hat(t);
            double s = 0.0;
            for (const auto& z : v) s += std::norm(z);
            acc += (k == 0 || k == n - 1) ? 0.5 * s : s;
        }
        total += seg.density.trace().real() * acc * h;
    }
    return total;
}

using PointMap = std::function<std::vector<Complex>(double)>;

namespace detail {

/// Newton-form interpolation at the given nodes, returned in monomial basis.
inline Poly interpolate(const std::vector<double>& nodes, const std::vector<Complex>& values) {
    const size_t n = nodes.size();
    std::vector<Complex> dd = values;  // divided differences, in place
    for (size_t level = 1; level < n; ++level)
        for (size_t k = n - 1; k >= level; --k)
            dd[k] = (dd[k] - dd[k - 1]) / (nodes[k] - nodes[k - level]);
    Poly p{dd[n - 1]};
    for (size_t k = n - 1; k-- > 0;) {
        // p <- p*(x - nodes[k]) + dd[k]
        Poly shifted(p.size() + 1, Complex(0.0));
        for (size_t i = 0; i < p.size(); ++i) {
            shifted[i + 1] += p[i];
            shifted[i] -= p[i] * nodes[k];
        }
        shifted[0] += dd[k];
        p = std::move(shifted);
    }
    return p;
}

}  // namespace detail

/// Inverse of Fhat: t -> G(D_M(t)) g(t). Exact at atoms (after a range check);
/// on segments the result is sampled at Chebyshev nodes and refit as a
/// polynomial of the declared degree, with a residual check at off-nodes.
inline VectorFunction fhat_inverse(const MatrixMeasure& m, const PointMap& g, int degree,
                                   double tol = 1e-8) {
    VectorFunction f(m.d());
    for (const auto& atom : m.atoms()) {
        const ComplexMatrix dm = Complex(1.0 / atom.weight.trace().real()) * atom.weight;
        const auto gv = g(atom.t);
        if (!in_range(dm, gv, tol))
            throw RangeViolation("fhat_inverse: value outside Ran D_M at an atom");
        f.set_value(atom.t, g_pseudo_inv_sqrt(dm).apply(gv));
    }
    for (const auto& seg : m.segments()) {
        const ComplexMatrix dm = Complex(1.0 / seg.density.trace().real()) * seg.density;
        const ComplexMatrix ginv = g_pseudo_inv_sqrt(dm);
        const int n = degree + 1;
        std::vector<double> nodes(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) {
            const double x = std::cos(M_PI * (2.0 * k + 1.0) / (2.0 * n));
            nodes[static_cast<size_t>(k)] = 0.5 * (seg.a + seg.b) + 0.5 * (seg.b - seg.a) * x;
        }
        std::vector<std::vector<Complex>> samples;
        samples.reserve(nodes.size());
        double scale = 1.0;
        for (double t : nodes) {
            samples.push_back(ginv.apply(g(t)));
            scale = std::max(scale, vec_norm(samples.back()));
        }
        std::vector<Poly> polys(static_cast<size_t>(m.d()));
        for (int i = 0; i < m.d(); ++i) {
            std::vector<Complex> vals(static_cast<size_t>(n));
            for (int k = 0; k < n; ++k) vals[static_cast<size_t>(k)] = samples[static_cast<size_t>(k)][static_cast<size_t>(i)];
            polys[static_cast<size_t>(i)] = detail::interpolate(nodes, vals);
        }
        // Residual spot-check between nodes.
        for (int k = 0; k <= n; ++k) {
            const double t = seg.a + (seg.b - seg.a) * (k + 0.5) / (n + 1);
            const auto expect = ginv.apply(g(t));
            for (int i = 0; i < m.d(); ++i)
                if (std::abs(poly_eval(polys[static_cast<size_t>(i)], t) - expect[static_cast<size_t>(i)]) > tol * scale)
                    throw DegreeOverflow("fhat_inverse: declared degree cannot represent g");
        }
        f.add_segment(seg.a, seg.b, std::move(polys));
    }
    return f;
}

/// Extension by zero from L^2 of the restricted measure into L^2(M)
/// (isometric; inverse is restriction of representatives).
inline L2Class embed_extension(const MatrixMeasure& m, const BorelSet& omega,
                               const VectorFunction& g) {
    return L2Class(m, g.clip_to(omega));
}

}  // namespace matmeasure
