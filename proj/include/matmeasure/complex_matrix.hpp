#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "matmeasure/common.hpp"

namespace matmeasure {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), entries_(static_cast<size_t>(dim) * dim) {}
    ComplexMatrix(int dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
        if (entries_.size() != static_cast<size_t>(dim_) * dim_)
            throw DimensionMismatch("ComplexMatrix: entry count does not match dim^2");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(const std::vector<double>& d) {
        ComplexMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<size_t>(i)];
        return m;
    }

    int dim() const { return dim_; }
    Complex& operator()(int i, int j) { return entries_[static_cast<size_t>(i) * dim_ + j]; }
    const Complex& operator()(int i, int j) const {
        return entries_[static_cast<size_t>(i) * dim_ + j];
    }
    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool all_finite() const {
        for (const auto& z : entries_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_dim(o);
        for (size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_dim(o);
        for (size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
        return *this;
    }
    ComplexMatrix& operator*=(Complex z) {
        for (auto& e : entries_) e *= z;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex z, ComplexMatrix a) { return a *= z; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_dim(b);
        const int n = a.dim_;
        ComplexMatrix r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Complex aik = a(i, k);
                if (aik == 0.0) continue;
                for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    std::vector<Complex> apply(const std::vector<Complex>& v) const {
        if (static_cast<int>(v.size()) != dim_)
            throw DimensionMismatch("ComplexMatrix::apply: vector length mismatch");
        std::vector<Complex> r(static_cast<size_t>(dim_));
        for (int i = 0; i < dim_; ++i) {
            Complex s = 0.0;
            for (int j = 0; j < dim_; ++j) s += (*this)(i, j) * v[static_cast<size_t>(j)];
            r[static_cast<size_t>(i)] = s;
        }
        return r;
    }

private:
    void check_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw DimensionMismatch("ComplexMatrix: dimension mismatch");
    }

    int dim_ = 0;
    std::vector<Complex> entries_;
};

inline double vec_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline Complex vec_inner(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    // <x, y> = sum x_i conj(y_i)
    if (x.size() != y.size()) throw DimensionMismatch("vec_inner: length mismatch");
    Complex s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = kDefaultTol) {
    return (a - a.adjoint()).frobenius_norm() <= tol * (1.0 + a.frobenius_norm());
}

/// One eigenvalue cluster: the clustered eigenvalue together with an
/// orthonormal basis of its eigenspace.
struct EigCluster {
    double eigenvalue = 0.0;
    std::vector<std::vector<Complex>> vectors;

    ComplexMatrix projection(int dim) const {
        ComplexMatrix p(dim);
        for (const auto& v : vectors)
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    p(i, j) += v[static_cast<size_t>(i)] * std::conj(v[static_cast<size_t>(j)]);
        return p;
    }
};

/// Spectral decomposition of a Hermitian matrix after clustering of
/// near-degenerate eigenvalues.
struct HermitianEig {
    int dim = 0;
    std::vector<EigCluster> clusters;  // eigenvalues ascending

    std::vector<double> eigenvalues() const {
        std::vector<double> ev;
        ev.reserve(clusters.size());
        for (const auto& c : clusters) ev.push_back(c.eigenvalue);
        return ev;
    }

    std::vector<ComplexMatrix> projections() const {
        std::vector<ComplexMatrix> ps;
        ps.reserve(clusters.size());
        for (const auto& c : clusters) ps.push_back(c.projection(dim));
        return ps;
    }

    ComplexMatrix reconstruct() const {
        ComplexMatrix a(dim);
        for (const auto& c : clusters) a += Complex(c.eigenvalue) * c.projection(dim);
        return a;
    }
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Eigenvalues closer than
/// cluster_tol*(1+||A||) are merged into a single cluster.
inline HermitianEig eig_hermitian(const ComplexMatrix& a_in, double tol = kDefaultTol,
                                  double cluster_tol = kClusterTol) {
    const int n = a_in.dim();
    const double scale = 1.0 + a_in.frobenius_norm();
    if (!a_in.all_finite()) throw NotHermitian("eig_hermitian: non-finite entries");
    if (!is_hermitian(a_in, tol)) throw NotHermitian("eig_hermitian: matrix is not Hermitian");

    ComplexMatrix a = Complex(0.5) * (a_in + a_in.adjoint());  // symmetrize roundoff
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&a, n]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    const double stop = 1e-15 * scale;
    const int max_sweeps = 100;
    int sweep = 0;
    while (off_norm() > stop) {
        if (++sweep > max_sweeps) throw NoConvergence("eig_hermitian: sweep budget exhausted");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-18 * scale) continue;
                const Complex phase = apq / mag;  // e^{i alpha}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // R is identity except R(p,p)=c, R(p,q)=s*phase, R(q,p)=-s*conj(phase),
                // R(q,q)=c; update A <- R* A R, V <- V R.
                for (int i = 0; i < n; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * std::conj(phase) * apj + c * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * std::conj(phase) * viq;
                    v(i, q) = s * phase * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEig res;
    res.dim = n;
    const double merge = cluster_tol * scale;
    for (int k = 0; k < n; ++k) {
        const int col = order[static_cast<size_t>(k)];
        const double lambda = a(col, col).real();
        std::vector<Complex> vec(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) vec[static_cast<size_t>(i)] = v(i, col);
        if (!res.clusters.empty() && lambda - res.clusters.back().eigenvalue <= merge) {
            res.clusters.back().vectors.push_back(std::move(vec));
        } else {
            EigCluster c;
            c.eigenvalue = lambda;
            c.vectors.push_back(std::move(vec));
            res.clusters.push_back(std::move(c));
        }
    }
    // Cluster eigenvalue = mean over the merged diagonal entries.
    {
        size_t idx = 0;
        for (auto& c : res.clusters) {
            double sum = 0.0;
            for (size_t m = 0; m < c.vectors.size(); ++m)
                sum += a(order[idx + m], order[idx + m]).real();
            c.eigenvalue = sum / static_cast<double>(c.vectors.size());
            idx += c.vectors.size();
        }
    }
    return res;
}

/// Applies a real scalar function spectrally to a Hermitian matrix.
template <typename Fn>
ComplexMatrix spectral_map(const ComplexMatrix& a, Fn&& f, double tol = kDefaultTol) {
    const HermitianEig e = eig_hermitian(a, tol);
    ComplexMatrix r(a.dim());
    for (const auto& c : e.clusters) r += Complex(f(c.eigenvalue)) * c.projection(a.dim());
    return r;
}

inline void require_psd(const HermitianEig& e, double scale, double tol) {
    for (const auto& c : e.clusters)
        if (c.eigenvalue < -tol * scale) throw NotPSD("matrix has a negative eigenvalue");
}

/// PSD square root via the spectral theorem.
inline ComplexMatrix sqrt_psd(const ComplexMatrix& a, double tol = kDefaultTol) {
    const HermitianEig e = eig_hermitian(a, tol);
    require_psd(e, 1.0 + a.frobenius_norm(), tol);
    ComplexMatrix r(a.dim());
    for (const auto& c : e.clusters)
        r += Complex(std::sqrt(std::max(c.eigenvalue, 0.0))) * c.projection(a.dim());
    return r;
}

/// Spectral pseudo-inverse square root: eigenvalues below the rank cutoff map
/// to 0, the rest to 1/sqrt.
inline ComplexMatrix g_pseudo_inv_sqrt(const ComplexMatrix& a, double tol = kDefaultTol,
                                       double rank_cutoff = kRankCutoff) {
    const HermitianEig e = eig_hermitian(a, tol);
    const double scale = 1.0 + a.frobenius_norm();
    require_psd(e, scale, tol);
    ComplexMatrix r(a.dim());
    for (const auto& c : e.clusters) {
        if (c.eigenvalue <= rank_cutoff * scale) continue;
        r += Complex(1.0 / std::sqrt(c.eigenvalue)) * c.projection(a.dim());
    }
    return r;
}

/// Orthogonal projection onto the range of a PSD matrix.
inline ComplexMatrix range_projection(const ComplexMatrix& a, double tol = kDefaultTol,
                                      double rank_cutoff = kRankCutoff) {
    const HermitianEig e = eig_hermitian(a, tol);
    const double scale = 1.0 + a.frobenius_norm();
    require_psd(e, scale, tol);
    ComplexMatrix r(a.dim());
    for (const auto& c : e.clusters) {
        if (c.eigenvalue <= rank_cutoff * scale) continue;
        r += Complex(1.0) * c.projection(a.dim());
    }
    return r;
}

inline bool in_kernel(const ComplexMatrix& a, const std::vector<Complex>& v,
                      double tol = kDefaultTol) {
    const double nv = vec_norm(v);
    if (nv == 0.0) return true;
    return vec_norm(a.apply(v)) <= tol * (1.0 + a.frobenius_norm()) * nv;
}

/// Column-span membership: v lies in Ran A iff the projection onto Ran(A A*)
/// leaves it fixed.
inline bool in_range(const ComplexMatrix& a, const std::vector<Complex>& v,
                     double tol = kDefaultTol) {
    const double nv = vec_norm(v);
    if (nv == 0.0) return true;
    const ComplexMatrix p = range_projection(a * a.adjoint(), tol);
    std::vector<Complex> pv = p.apply(v);
    for (size_t i = 0; i < v.size(); ++i) pv[i] -= v[i];
    return vec_norm(pv) <= tol * nv;
}

}  // namespace matmeasure
