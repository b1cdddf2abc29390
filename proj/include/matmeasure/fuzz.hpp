#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "matmeasure/borel_set.hpp"
#include "matmeasure/complex_matrix.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/matrix_measure.hpp"
#include "matmeasure/poly.hpp"
#include "matmeasure/vector_function.hpp"

namespace matmeasure::fuzz {

/// Seeded generator for all fuzzed inputs. Hermitian matrices are built as
/// Q D Q* from Householder-product unitaries, so the planted eigenstructure is
/// known independently of any solver.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }
    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    Complex complex_gaussian() { return Complex(gaussian(), gaussian()); }

    std::vector<Complex> complex_vector(int n) {
        std::vector<Complex> v(static_cast<size_t>(n));
        for (auto& z : v) z = complex_gaussian();
        return v;
    }

    /// Product of n Householder reflections.
    ComplexMatrix unitary(int n) {
        ComplexMatrix q = ComplexMatrix::identity(n);
        for (int rep = 0; rep < n; ++rep) {
            auto v = complex_vector(n);
            const double nv = vec_norm(v);
            if (nv < 1e-12) continue;
            for (auto& z : v) z /= nv;
            // q <- q (I - 2 v v*)
            ComplexMatrix h = ComplexMatrix::identity(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    h(i, j) -= 2.0 * v[static_cast<size_t>(i)] * std::conj(v[static_cast<size_t>(j)]);
            q = q * h;
        }
        return q;
    }

    struct PlantedHermitian {
        ComplexMatrix a;
        std::vector<double> eigenvalues;             // distinct, ascending
        std::vector<ComplexMatrix> projections;      // matching eigenspaces
    };

    /// Hermitian matrix with known spectrum. Eigenvalues are kept well
    /// separated (or exactly repeated when multiplicity is requested).
    PlantedHermitian hermitian(int n, bool allow_multiplicity = false) {
        std::vector<double> diag(static_cast<size_t>(n));
        std::vector<int> group(static_cast<size_t>(n));
        std::vector<double> levels;
        for (int i = 0; i < n; ++i) {
            const bool repeat = allow_multiplicity && !levels.empty() && uniform() < 0.3;
            if (repeat) {
                const int g = uniform_int(0, static_cast<int>(levels.size()) - 1);
                diag[static_cast<size_t>(i)] = levels[static_cast<size_t>(g)];
                group[static_cast<size_t>(i)] = g;
            } else {
                double v;
                bool ok;
                do {
                    v = uniform(-5.0, 5.0);
                    ok = true;
                    for (double l : levels)
                        if (std::abs(v - l) < 0.05) ok = false;
                } while (!ok);
                levels.push_back(v);
                diag[static_cast<size_t>(i)] = v;
                group[static_cast<size_t>(i)] = static_cast<int>(levels.size()) - 1;
            }
        }
        const ComplexMatrix q = unitary(n);
        PlantedHermitian out;
        out.a = q * ComplexMatrix::diagonal(diag) * q.adjoint();
        out.a = Complex(0.5) * (out.a + out.a.adjoint());
        std::vector<int> order(levels.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(),
                  [&levels](int x, int y) { return levels[static_cast<size_t>(x)] < levels[static_cast<size_t>(y)]; });
        for (int g : order) {
            out.eigenvalues.push_back(levels[static_cast<size_t>(g)]);
            ComplexMatrix p(n);
            for (int col = 0; col < n; ++col) {
                if (group[static_cast<size_t>(col)] != g) continue;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        p(i, j) += q(i, col) * std::conj(q(j, col));
            }
            out.projections.push_back(std::move(p));
        }
        return out;
    }

    /// PSD matrix with controlled rank.
    ComplexMatrix psd(int n, int rank = -1) {
        if (rank < 0) rank = n;
        std::vector<double> diag(static_cast<size_t>(n), 0.0);
        for (int i = 0; i < rank; ++i) diag[static_cast<size_t>(i)] = uniform(0.1, 3.0);
        const ComplexMatrix q = unitary(n);
        ComplexMatrix a = q * ComplexMatrix::diagonal(diag) * q.adjoint();
        return Complex(0.5) * (a + a.adjoint());
    }

    /// Measure with a few atoms and disjoint segments on [-4, 4].
    MatrixMeasure measure(int d, int max_atoms = 3, int max_segments = 3,
                          bool allow_rank_deficient = true) {
        MatrixMeasure m(d);
        const int na = uniform_int(max_segments > 0 ? 0 : 1, max_atoms);
        const int ns = uniform_int(na > 0 ? 0 : 1, max_segments);
        for (int k = 0; k < na; ++k) {
            const double t = uniform(-4.0, 4.0);
            const int rank = allow_rank_deficient ? uniform_int(1, d) : d;
            try {
                m.add_atom(t, psd(d, rank));
            } catch (const Error&) {
                // duplicate point; skip
            }
        }
        if (ns > 0) {
            double cursor = -4.0;
            for (int k = 0; k < ns; ++k) {
                const double a = cursor + uniform(0.0, 1.0);
                const double b = a + uniform(0.2, 1.5);
                cursor = b + 0.1;
                const int rank = allow_rank_deficient ? uniform_int(1, d) : d;
                m.add_segment(a, b, psd(d, rank));
            }
        }
        if (m.is_empty()) m.add_atom(0.0, psd(d, d));
        return m;
    }

    Poly poly(int max_degree, bool real_coeffs = false) {
        const int deg = uniform_int(0, max_degree);
        Poly p(static_cast<size_t>(deg) + 1);
        for (auto& c : p)
            c = real_coeffs ? Complex(uniform(-1.0, 1.0)) : Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        return p;
    }

    /// Piecewise-polynomial function covering the measure's support.
    VectorFunction function_on(const MatrixMeasure& m, int max_degree = 3,
                               bool real_coeffs = false) {
        VectorFunction f(m.d());
        for (const auto& atom : m.atoms()) {
            std::vector<Complex> v(static_cast<size_t>(m.d()));
            for (auto& z : v)
                z = real_coeffs ? Complex(uniform(-1.0, 1.0)) : Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
            f.set_value(atom.t, std::move(v));
        }
        for (const auto& seg : m.segments()) {
            std::vector<Poly> polys;
            for (int i = 0; i < m.d(); ++i) polys.push_back(poly(max_degree, real_coeffs));
            f.add_segment(seg.a, seg.b, std::move(polys));
        }
        return f;
    }

    /// Random set from <= max_intervals intervals and <= max_points points
    /// inside [-5, 5].
    BorelSet borel_set(int max_intervals = 4, int max_points = 3) {
        std::vector<BorelSet::Interval> ivs;
        const int ni = uniform_int(0, max_intervals);
        for (int k = 0; k < ni; ++k) {
            const double a = uniform(-5.0, 5.0);
            const double b = a + uniform(0.0, 3.0);
            ivs.push_back({a, b, uniform() < 0.5, uniform() < 0.5});
        }
        std::vector<double> pts;
        const int np = uniform_int(0, max_points);
        for (int k = 0; k < np; ++k) pts.push_back(uniform(-5.0, 5.0));
        return BorelSet::from_raw(std::move(ivs), std::move(pts));
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace matmeasure::fuzz
