#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "matmeasure/complex_matrix.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/l2.hpp"
#include "matmeasure/matrix_measure.hpp"
#include "matmeasure/vector_function.hpp"

namespace matmeasure {

struct HermitianOperator {
    ComplexMatrix matrix;

    explicit HermitianOperator(ComplexMatrix m, double tol = kDefaultTol) : matrix(std::move(m)) {
        if (!is_hermitian(matrix, tol))
            throw NotHermitian("HermitianOperator: matrix is not Hermitian");
    }

    int n() const { return matrix.dim(); }
};

struct VectorSystem {
    std::vector<std::vector<Complex>> vectors;  // d vectors in C^N

    int d() const { return static_cast<int>(vectors.size()); }
};

/// f(A) = sum f(lambda_k) P_k over the clustered eigendecomposition.
inline ComplexMatrix func_calc(const HermitianOperator& a,
                               const std::function<Complex(double)>& f,
                               double tol = kDefaultTol) {
    const HermitianEig e = eig_hermitian(a.matrix, tol);
    ComplexMatrix r(a.n());
    for (const auto& c : e.clusters) r += f(c.eigenvalue) * c.projection(a.n());
    return r;
}

/// Dimension of the joint orbit span of {A^n phi_j : n < N}, via modified
/// Gram-Schmidt with reorthogonalization; directions below the relative
/// threshold count as dependent.
inline int cyclicity_rank(const HermitianOperator& a, const VectorSystem& phi,
                          double threshold = 1e-8) {
    const int n = a.n();
    std::vector<std::vector<Complex>> basis;
    for (const auto& v0 : phi.vectors) {
        if (static_cast<int>(v0.size()) != n)
            throw DimensionMismatch("cyclicity_rank: vector length mismatch");
        std::vector<Complex> v = v0;
        for (int power = 0; power < n; ++power) {
            const double orig = vec_norm(v);
            if (orig > 0.0) {
                std::vector<Complex> w = v;
                for (auto& z : w) z /= orig;
                for (int pass = 0; pass < 2; ++pass)
                    for (const auto& b : basis) {
                        const Complex c = vec_inner(w, b);
                        for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] -= c * b[static_cast<size_t>(i)];
                    }
                const double res = vec_norm(w);
                if (res > threshold) {
                    for (auto& z : w) z /= res;
                    basis.push_back(std::move(w));
                    if (static_cast<int>(basis.size()) == n) return n;
                }
            }
            v = a.matrix.apply(v);
        }
    }
    return static_cast<int>(basis.size());
}

/// E_{A,phi}: the atomic matrix measure with weights
/// (W_k)_{ij} = <P_k phi_j, phi_i> at the clustered eigenvalues.
inline MatrixMeasure spectral_matrix_measure(const HermitianOperator& a, const VectorSystem& phi,
                                             double tol = kDefaultTol,
                                             double cluster_tol = kClusterTol) {
    const int d = phi.d();
    if (d == 0) throw DimensionMismatch("spectral_matrix_measure: empty vector system");
    const HermitianEig e = eig_hermitian(a.matrix, tol, cluster_tol);
    MatrixMeasure m(d);
    for (const auto& c : e.clusters) {
        const ComplexMatrix p = c.projection(a.n());
        ComplexMatrix w(d);
        for (int j = 0; j < d; ++j) {
            const auto pj = p.apply(phi.vectors[static_cast<size_t>(j)]);
            for (int i = 0; i < d; ++i)
                w(i, j) = vec_inner(pj, phi.vectors[static_cast<size_t>(i)]);
        }
        w = Complex(0.5) * (w + w.adjoint());  // symmetrize roundoff
        m.add_atom(c.eigenvalue, std::move(w), tol);
    }
    return m;
}

/// The canonical spectral transformation U: L^2(E_{A,phi}) -> C^N. Columns are
/// indexed by an orthonormal basis of the atomic L^2 space: per atom, the
/// eigenvectors of the weight with eigenvalue above the rank cutoff,
/// normalized to unit weight-norm.
class CST {
public:
    CST(const HermitianOperator& a, const VectorSystem& phi, double tol = kDefaultTol,
        double cluster_tol = kClusterTol)
        : n_(a.n()), measure_(phi.d() > 0 ? spectral_matrix_measure(a, phi, tol, cluster_tol)
                                          : MatrixMeasure(1)) {
        if (phi.d() == 0) return;
        const HermitianEig e = eig_hermitian(a.matrix, tol, cluster_tol);
        const int d = phi.d();
        for (const auto& atom : measure_.atoms()) {
            // Match the eigenprojection for this atom point.
            const EigCluster* cl = nullptr;
            for (const auto& c : e.clusters)
                if (std::abs(c.eigenvalue - atom.t) <= cluster_tol * (1.0 + a.matrix.frobenius_norm()))
                    cl = &c;
            if (!cl) throw Error("CST: atom without matching eigenvalue cluster");
            const ComplexMatrix p = cl->projection(n_);
            const HermitianEig we = eig_hermitian(atom.weight, tol);
            const double cutoff = kRankCutoff * (1.0 + atom.weight.frobenius_norm());
            for (const auto& wc : we.clusters) {
                if (wc.eigenvalue <= cutoff) continue;
                for (const auto& v : wc.vectors) {
                    std::vector<Complex> b(v);
                    const double scale = 1.0 / std::sqrt(wc.eigenvalue);
                    for (auto& z : b) z *= scale;  // <W b, b> = 1
                    std::vector<Complex> col(static_cast<size_t>(n_), Complex(0.0));
                    for (int j = 0; j < d; ++j) {
                        const auto pj = p.apply(phi.vectors[static_cast<size_t>(j)]);
                        for (int i = 0; i < n_; ++i)
                            col[static_cast<size_t>(i)] += b[static_cast<size_t>(j)] * pj[static_cast<size_t>(i)];
                    }
                    columns_.push_back(std::move(col));
                    column_points_.push_back(atom.t);
                    basis_.push_back(std::move(b));
                    basis_atom_.push_back(static_cast<int>(&atom - measure_.atoms().data()));
                }
            }
        }
    }

    int n() const { return n_; }
    int k() const { return static_cast<int>(columns_.size()); }
    const MatrixMeasure& measure() const { return measure_; }
    const std::vector<std::vector<Complex>>& columns() const { return columns_; }
    const std::vector<double>& column_points() const { return column_points_; }

    /// Coefficients of [f] in the column basis: <W_k f(t_k), b_{k,m}>.
    std::vector<Complex> coefficients(const VectorFunction& f) const {
        std::vector<Complex> c(columns_.size());
        for (size_t m = 0; m < columns_.size(); ++m) {
            const auto& atom = measure_.atoms()[static_cast<size_t>(basis_atom_[m])];
            c[m] = vec_inner(atom.weight.apply(f.value_at(atom.t)), basis_[m]);
        }
        return c;
    }

    /// U[f] = sum_j f_j(A) phi_j, evaluated in the column basis.
    std::vector<Complex> apply(const VectorFunction& f) const {
        if (f.d() != measure_.d()) throw DimensionMismatch("CST::apply: d mismatch");
        const auto c = coefficients(f);
        std::vector<Complex> out(static_cast<size_t>(n_), Complex(0.0));
        for (size_t m = 0; m < columns_.size(); ++m)
            for (int i = 0; i < n_; ++i) out[static_cast<size_t>(i)] += c[m] * columns_[m][static_cast<size_t>(i)];
        return out;
    }

    ComplexMatrix gram() const {  // U* U, K x K
        const int k = this->k();
        ComplexMatrix g(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                g(i, j) = vec_inner(columns_[static_cast<size_t>(j)], columns_[static_cast<size_t>(i)]);
        return g;
    }

    ComplexMatrix uu_star() const {  // U U*, N x N
        ComplexMatrix g(n_);
        for (const auto& col : columns_)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    g(i, j) += col[static_cast<size_t>(i)] * std::conj(col[static_cast<size_t>(j)]);
        return g;
    }

    /// U T_x U*, with T_x diagonal in the column basis.
    ComplexMatrix conjugated_position_op() const {
        ComplexMatrix r(n_);
        for (size_t m = 0; m < columns_.size(); ++m) {
            const auto& col = columns_[m];
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    r(i, j) += Complex(column_points_[m]) * col[static_cast<size_t>(i)] *
                               std::conj(col[static_cast<size_t>(j)]);
        }
        return r;
    }

private:
    int n_ = 0;
    MatrixMeasure measure_;
    std::vector<std::vector<Complex>> columns_;
    std::vector<double> column_points_;
    std::vector<std::vector<Complex>> basis_;
    std::vector<int> basis_atom_;
};

/// Independent route for U[f]: sum_j f_j(A) phi_j through the functional
/// calculus. Used as the oracle against CST::apply.
inline std::vector<Complex> apply_direct(const HermitianOperator& a, const VectorSystem& phi,
                                         const VectorFunction& f, double tol = kDefaultTol,
                                         double cluster_tol = kClusterTol) {
    const HermitianEig e = eig_hermitian(a.matrix, tol, cluster_tol);
    std::vector<Complex> out(static_cast<size_t>(a.n()), Complex(0.0));
    for (const auto& c : e.clusters) {
        const ComplexMatrix p = c.projection(a.n());
        const auto fv = f.value_at(c.eigenvalue);
        for (int j = 0; j < phi.d(); ++j) {
            const auto pj = p.apply(phi.vectors[static_cast<size_t>(j)]);
            for (int i = 0; i < a.n(); ++i)
                out[static_cast<size_t>(i)] += fv[static_cast<size_t>(j)] * pj[static_cast<size_t>(i)];
        }
    }
    return out;
}

struct XmueReport {
    int n = 0;
    int k = 0;
    int rank = 0;
    double isometry_residual = 0.0;      // ||U*U - I_K||
    double coisometry_residual = 0.0;    // ||UU* - I_N||
    double conjugation_residual = 0.0;   // ||U T_x U^{-1} - A||
    double projection_residual = 0.0;    // max_w ||E_A(w) U - U E_{T_x}(w)||
    bool passed(double tol) const {
        return isometry_residual <= tol && coisometry_residual <= tol &&
               conjugation_residual <= tol && projection_residual <= tol;
    }
};

/// Full unitary-equivalence check A = U T_x U^{-1}, including spectral
/// projection commutation over the supplied Borel sets.
inline XmueReport verify_xmue(const HermitianOperator& a, const VectorSystem& phi,
                              const std::vector<BorelSet>& omegas, double tol = kDefaultTol,
                              double cluster_tol = kClusterTol) {
    const int rank = cyclicity_rank(a, phi);
    if (rank != a.n()) throw NotCyclic("verify_xmue: the vector system is not cyclic");
    const CST u(a, phi, tol, cluster_tol);
    XmueReport rep;
    rep.n = a.n();
    rep.k = u.k();
    rep.rank = rank;
    rep.isometry_residual = (u.gram() - ComplexMatrix::identity(u.k())).frobenius_norm();
    rep.coisometry_residual = (u.uu_star() - ComplexMatrix::identity(a.n())).frobenius_norm();
    rep.conjugation_residual = (u.conjugated_position_op() - a.matrix).frobenius_norm();

    const HermitianEig e = eig_hermitian(a.matrix, tol, cluster_tol);
    for (const auto& w : omegas) {
        ComplexMatrix ea(a.n());
        for (const auto& c : e.clusters)
            if (w.contains(c.eigenvalue)) ea += Complex(1.0) * c.projection(a.n());
        // Columnwise: E_A(w) u_m - [t_m in w] u_m.
        double s = 0.0;
        for (size_t m = 0; m < u.columns().size(); ++m) {
            auto v = ea.apply(u.columns()[m]);
            if (w.contains(u.column_points()[m]))
                for (size_t i = 0; i < v.size(); ++i) v[i] -= u.columns()[m][i];
            const double nv = vec_norm(v);
            s += nv * nv;
        }
        rep.projection_residual = std::max(rep.projection_residual, std::sqrt(s));
    }
    return rep;
}

/// max_k |<P_k f(A)x, g(A)y> - f(l_k) conj(g(l_k)) <P_k x, y>|.
inline double check_spectral_measure_identity(const HermitianOperator& a,
                                              const std::vector<Complex>& x,
                                              const std::vector<Complex>& y,
                                              const std::function<Complex(double)>& f,
                                              const std::function<Complex(double)>& g,
                                              double tol = kDefaultTol) {
    const HermitianEig e = eig_hermitian(a.matrix, tol);
    const ComplexMatrix fa = func_calc(a, f, tol);
    const ComplexMatrix ga = func_calc(a, g, tol);
    const auto fx = fa.apply(x);
    const auto gy = ga.apply(y);
    double worst = 0.0;
    for (const auto& c : e.clusters) {
        const ComplexMatrix p = c.projection(a.n());
        const Complex lhs = vec_inner(p.apply(fx), gy);
        const Complex rhs = f(c.eigenvalue) * std::conj(g(c.eigenvalue)) * vec_inner(p.apply(x), y);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

}  // namespace matmeasure
