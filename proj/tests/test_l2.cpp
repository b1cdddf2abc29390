#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "matmeasure/fuzz.hpp"
#include "matmeasure/l2.hpp"

using namespace matmeasure;
using matmeasure::testing::kernel_aligned_witness;
using matmeasure::testing::split_diag_measure;

namespace {

// Integral of |p| over [a,b] for a real polynomial: locate sign changes on a
// dense grid, refine by bisection, integrate exactly on sign-constant pieces.
double integrate_abs_poly(const Poly& p, double a, double b) {
    const int grid = 2048;
    std::vector<double> cuts{a};
    double prev = poly_eval(p, a).real();
    for (int k = 1; k <= grid; ++k) {
        const double t = a + (b - a) * k / grid;
        const double v = poly_eval(p, t).real();
        if (prev * v < 0.0) {
            double lo = a + (b - a) * (k - 1) / grid, hi = t;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (poly_eval(p, lo).real() * poly_eval(p, mid).real() <= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        prev = v;
    }
    cuts.push_back(b);
    double total = 0.0;
    for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double u = cuts[k], v = cuts[k + 1];
        total += std::abs(poly_integral(p, u, v).real());
    }
    return total;
}

// Total variation of the (i,j) entry measure over w: atom weights and segment
// densities in absolute value.
double entry_variation(const MatrixMeasure& m, int i, int j, const BorelSet& w) {
    double s = 0.0;
    for (const auto& atom : m.atoms())
        if (w.contains(atom.t)) s += std::abs(atom.weight(i, j));
    for (const auto& seg : m.segments())
        s += std::abs(seg.density(i, j)) *
             set_intersect(w, BorelSet::interval(seg.a, seg.b)).leb_measure();
    return s;
}

VectorFunction const_e1(double a, double b) {
    VectorFunction f(2);
    f.add_segment(a, b, {Poly{Complex(1.0)}, Poly{}});
    return f;
}

}  // namespace

TEST_CASE("the kernel-aligned witness has seminorm zero but full support") {
    const auto m = split_diag_measure();
    const auto f = kernel_aligned_witness();
    CHECK(std::abs(inner(m, f, f)) <= 1e-14);
    CHECK(seminorm(m, f) <= 1e-14);
    CHECK(is_zero_layer(m, f));
    // ...yet the measure of its pointwise support is the identity.
    CHECK((m.evaluate(BorelSet::interval(-1, 1)) - ComplexMatrix::identity(2)).frobenius_norm() <=
          1e-14);
}

TEST_CASE("inner products on atoms and segments") {
    MatrixMeasure atom(2);
    atom.add_atom(1.0, ComplexMatrix::diagonal({2.0, 1.0}));
    const auto e1 = VectorFunction::monomial(2, 0, 0);
    CHECK(inner(atom, e1, e1) == Complex(2.0));

    const auto m = split_diag_measure();
    const auto chi = VectorFunction::indicator(BorelSet::interval(-1, 0), {1.0, 0.0});
    CHECK(seminorm(m, chi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(seminorm(m, VectorFunction::zero(2)) == 0.0);
    CHECK_FALSE(is_zero_layer(m, const_e1(-1, 1)));
    CHECK(is_zero_layer(m, VectorFunction::zero(2)));
}

TEST_CASE("sigma-form inner product matches the trace-density route") {
    const auto m = split_diag_measure();
    const auto f = kernel_aligned_witness();
    CHECK(std::abs(sigma_inner(m, f, f)) <= 1e-14);
    CHECK(std::abs(sigma_inner(m, VectorFunction::zero(2), VectorFunction::zero(2))) == 0.0);

    fuzz::Rng rng(808);
    for (int rep = 0; rep < 60; ++rep) {
        const int d = rng.uniform_int(1, 3);
        const auto mm = rng.measure(d);
        const auto g = rng.function_on(mm);
        const auto h = rng.function_on(mm);
        CHECK(std::abs(sigma_inner(mm, g, h) - inner(mm, g, h)) <= 1e-12 * (1.0 + mm.total_trace()));
    }
}

TEST_CASE("fuzz: sesquilinearity and conjugate symmetry") {
    fuzz::Rng rng(11);
    for (int rep = 0; rep < 40; ++rep) {
        const int d = rng.uniform_int(1, 3);
        const auto m = rng.measure(d);
        const auto f = rng.function_on(m);
        const auto g = rng.function_on(m);
        const auto h = rng.function_on(m);
        const Complex z = rng.complex_gaussian();
        const double scale = (1.0 + m.total_trace()) * 100.0;
        CHECK(std::abs(inner(m, z * f + h, g) - (z * inner(m, f, g) + inner(m, h, g))) <=
              1e-12 * scale);
        CHECK(std::abs(inner(m, f, g) - std::conj(inner(m, g, f))) <= 1e-12 * scale);
    }
}

TEST_CASE("fuzz: semi-Schwarz and pointwise Schwarz") {
    fuzz::Rng rng(22);
    for (int rep = 0; rep < 60; ++rep) {
        const int d = rng.uniform_int(1, 3);
        const auto m = rng.measure(d);
        const auto f = rng.function_on(m);
        const auto g = rng.function_on(m);
        CHECK(std::abs(inner(m, f, g)) <= seminorm(m, f) * seminorm(m, g) + 1e-12);

        std::vector<double> probes;
        for (const auto& atom : m.atoms()) probes.push_back(atom.t);
        for (const auto& seg : m.segments())
            for (int k = 0; k < 4; ++k) probes.push_back(seg.a + (seg.b - seg.a) * (k + 0.5) / 4);
        for (double t : probes) {
            const auto dm = m.trace_density_at(t);
            if (!dm) continue;
            const auto fv = f.value_at(t);
            const auto gv = g.value_at(t);
            const double gamma_fg = std::abs(vec_inner(dm->apply(fv), gv));
            const double gamma_f = vec_inner(dm->apply(fv), fv).real();
            const double gamma_g = vec_inner(dm->apply(gv), gv).real();
            CHECK(gamma_fg <= std::sqrt(std::max(0.0, gamma_f) * std::max(0.0, gamma_g)) + 1e-12);
        }
    }
}

TEST_CASE("fuzz: entry-measure Schwarz") {
    fuzz::Rng rng(33);
    for (int rep = 0; rep < 60; ++rep) {
        const int d = rng.uniform_int(2, 3);
        const auto m = rng.measure(d);
        const auto w = rng.borel_set();
        const auto ev = m.evaluate(w);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                CHECK(entry_variation(m, i, j, w) <=
                      std::sqrt(ev(i, i).real() * ev(j, j).real()) + 1e-12);
    }
}

TEST_CASE("fuzz: weighted product Schwarz across entry measures") {
    fuzz::Rng rng(44);
    for (int rep = 0; rep < 25; ++rep) {
        const auto m = rng.measure(2, 2, 2);
        const Poly p1 = rng.poly(3, true);
        const Poly p2 = rng.poly(3, true);
        const int i = 0, j = 1;
        double lhs = 0.0, n1 = 0.0, n2 = 0.0;
        for (const auto& atom : m.atoms()) {
            const double v1 = poly_eval(p1, atom.t).real();
            const double v2 = poly_eval(p2, atom.t).real();
            lhs += std::abs(v1 * v2) * std::abs(atom.weight(i, j));
            n1 += v1 * v1 * atom.weight(i, i).real();
            n2 += v2 * v2 * atom.weight(j, j).real();
        }
        for (const auto& seg : m.segments()) {
            lhs += std::abs(seg.density(i, j)) *
                   integrate_abs_poly(poly_mul(p1, p2), seg.a, seg.b);
            n1 += seg.density(i, i).real() *
                  poly_integral(poly_mul(p1, p1), seg.a, seg.b).real();
            n2 += seg.density(j, j).real() *
                  poly_integral(poly_mul(p2, p2), seg.a, seg.b).real();
        }
        CHECK(lhs <= std::sqrt(std::max(0.0, n1)) * std::sqrt(std::max(0.0, n2)) + 1e-9);
    }
}

TEST_CASE("Fhat pointwise values") {
    MatrixMeasure m(2);
    m.add_atom(0.0, ComplexMatrix::diagonal({4.0, 0.0}));
    VectorFunction f(2);
    f.set_value(0.0, {1.0, 1.0});
    const Fhat hat(m, f);
    const auto v = hat(0.0);
    CHECK(std::abs(v[0] - Complex(1.0)) <= 1e-12);
    CHECK(std::abs(v[1]) <= 1e-12);

    const Fhat zero_hat(m, VectorFunction::zero(2));
    CHECK(vec_norm(zero_hat(0.0)) == 0.0);

    const auto sm = split_diag_measure();
    const Fhat witness_hat(sm, kernel_aligned_witness());
    for (double t : {-0.5, 0.25, 0.75}) CHECK(vec_norm(witness_hat(t)) <= 1e-12);
}

TEST_CASE("Parseval by quadrature, refining") {
    fuzz::Rng rng(55);
    for (int rep = 0; rep < 20; ++rep) {
        const int d = rng.uniform_int(1, 3);
        const auto m = rng.measure(d);
        const auto f = rng.function_on(m, 3);
        const double exact = inner(m, f, f).real();
        const double scale = 1.0 + std::abs(exact);
        const double coarse = std::abs(fhat_parseval_quadrature(m, f, 256) - exact);
        const double fine = std::abs(fhat_parseval_quadrature(m, f, 4096) - exact);
        CHECK(fine <= 1e-6 * scale);
        if (coarse > 1e-12 * scale) CHECK(fine <= coarse);
    }
}

TEST_CASE("fhat_inverse at atoms and on segments") {
    MatrixMeasure m(2);
    m.add_atom(0.0, ComplexMatrix::diagonal({4.0, 0.0}));
    const auto f = fhat_inverse(
        m, [](double) { return std::vector<Complex>{2.0, 0.0}; }, 0);
    const auto v = f.value_at(0.0);
    CHECK(std::abs(v[0] - Complex(2.0)) <= 1e-12);  // G(diag(1,0)) (2,0) = (2,0)
    CHECK(std::abs(v[1]) <= 1e-12);

    CHECK_THROWS_AS(fhat_inverse(
                        m, [](double) { return std::vector<Complex>{0.0, 1.0}; }, 0),
                    RangeViolation);

    const auto zero = fhat_inverse(
        m, [](double) { return std::vector<Complex>{0.0, 0.0}; }, 0);
    CHECK(vec_norm(zero.value_at(0.0)) == 0.0);

    // Round trip through Fhat on a full-rank segment measure.
    fuzz::Rng rng(66);
    for (int rep = 0; rep < 10; ++rep) {
        MatrixMeasure sm(2);
        sm.add_segment(0.0, 1.0, rng.psd(2, 2));
        const auto g = rng.function_on(sm, 3);
        const Fhat hat(sm, g);
        const auto back = fhat_inverse(sm, [&hat](double t) { return hat(t); }, 5);
        CHECK(is_zero_layer(sm, back - g, 1e-7));
    }
}

TEST_CASE("fhat_inverse rejects non-polynomial data at the declared degree") {
    MatrixMeasure m(1);
    m.add_segment(0.0, 1.0, ComplexMatrix::identity(1));
    CHECK_THROWS_AS(fhat_inverse(
                        m, [](double t) { return std::vector<Complex>{std::exp(5.0 * t)}; }, 2),
                    DegreeOverflow);
}

TEST_CASE("embedding by zero extension is isometric and invertible") {
    const auto m = split_diag_measure();
    const auto omega = BorelSet::interval(-1, 0);
    const auto cls = embed_extension(m, omega, const_e1(-1, 0));
    CHECK(cls.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(embed_extension(m, omega, VectorFunction::zero(2)).norm() == 0.0);

    fuzz::Rng rng(77);
    for (int rep = 0; rep < 30; ++rep) {
        const int d = rng.uniform_int(1, 3);
        const auto mm = rng.measure(d);
        const auto w = rng.borel_set();
        const auto restricted = mm.restrict(w);
        const auto g = rng.function_on(restricted);
        const auto cls2 = embed_extension(mm, w, g);
        CHECK(cls2.norm() == doctest::Approx(seminorm(restricted, g)).epsilon(1e-10));
        // Restricting the embedded representative recovers g as a class.
        const auto back = cls2.representative().clip_to(w);
        CHECK(is_zero_layer(restricted, back - g, 1e-10));
    }
}

TEST_CASE("piecewise-constant approximants converge in L2(M)") {
    fuzz::Rng rng(88);
    for (int rep = 0; rep < 10; ++rep) {
        MatrixMeasure m(2);
        auto dens = rng.psd(2, 2);
        dens = Complex(1.0 / dens.trace().real()) * dens;
        m.add_segment(0.0, 1.0, dens);
        VectorFunction f(2);
        Poly p0(4), p1(4);
        for (auto& c : p0) c = Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
        for (auto& c : p1) c = Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
        f.add_segment(0.0, 1.0, {p0, p1});

        double prev = kInf;
        for (int n : {4, 16, 64, 256, 1024}) {
            VectorFunction approx(2);
            for (int k = 0; k < n; ++k) {
                const double a = static_cast<double>(k) / n, b = static_cast<double>(k + 1) / n;
                const double mid = 0.5 * (a + b);
                approx.add_segment(a, b, {Poly{poly_eval(p0, mid)}, Poly{poly_eval(p1, mid)}});
            }
            const double err = seminorm(m, f - approx);
            CHECK(err <= prev + 1e-15);
            prev = err;
            if (n == 1024) CHECK(err < 1e-3);
        }
    }
}
