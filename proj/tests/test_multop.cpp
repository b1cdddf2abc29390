#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "matmeasure/fuzz.hpp"
#include "matmeasure/mult_op.hpp"
#include "matmeasure/symbol_parser.hpp"

using namespace matmeasure;
using matmeasure::testing::mixed_measure;

namespace {

MultOp position_op(const MatrixMeasure& m) { return MultOp(m, PiecewiseScalarFn::identity()); }

}  // namespace

TEST_CASE("apply: monomial shift, indicator truncation, zero symbol") {
    MatrixMeasure m(1);
    m.add_segment(0.0, 1.0, ComplexMatrix::identity(1));
    const auto f = VectorFunction::monomial(1, 0, 0);

    const auto xf = position_op(m).apply(f);
    CHECK(std::abs(xf.value_at(0.5)[0] - Complex(0.5)) <= 1e-15);
    CHECK(seminorm(m, xf - VectorFunction::monomial(1, 0, 1)) <= 1e-15);

    const MultOp chi(m, PiecewiseScalarFn::indicator(BorelSet::interval(0, 0.5)));
    const auto cf = chi.apply(f);
    CHECK(std::abs(cf.value_at(0.25)[0] - Complex(1.0)) <= 1e-15);
    CHECK(std::abs(cf.value_at(0.75)[0]) <= 1e-15);
    CHECK(seminorm(m, cf) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    const MultOp zero(m, PiecewiseScalarFn::constant(0.0));
    CHECK(seminorm(m, zero.apply(f)) == 0.0);
}

TEST_CASE("essential values and spectrum") {
    MatrixMeasure atoms(1);
    atoms.add_atom(0.0, ComplexMatrix::identity(1));
    atoms.add_atom(1.0, ComplexMatrix::identity(1));
    CHECK(position_op(atoms).essential_values() == BorelSet::from_raw({}, {0.0, 1.0}));

    const auto m = mixed_measure();
    CHECK(position_op(m).spectrum() ==
          set_union(BorelSet::interval(0, 1), BorelSet::point(2)));

    MatrixMeasure single(1);
    single.add_atom(5.0, ComplexMatrix::identity(1));
    CHECK(position_op(single).spectrum() == BorelSet::point(5));
    CHECK(MultOp(single, PiecewiseScalarFn::constant(3.0)).spectrum() == BorelSet::point(3));

    CHECK_THROWS_AS(position_op(MatrixMeasure(1)).spectrum(), TrivialSpace);
    CHECK(position_op(MatrixMeasure(1)).essential_values().is_empty());
}

TEST_CASE("point spectrum") {
    const auto m = mixed_measure();
    CHECK(position_op(m).point_spectrum() == BorelSet::point(2));

    MatrixMeasure atoms(1);
    atoms.add_atom(-1.0, ComplexMatrix::identity(1));
    atoms.add_atom(1.0, ComplexMatrix::identity(1));
    CHECK(MultOp(atoms, parse_symbol("x^2")).point_spectrum() == BorelSet::point(1));

    MatrixMeasure seg(1);
    seg.add_segment(0.0, 1.0, ComplexMatrix::identity(1));
    CHECK(position_op(seg).point_spectrum().is_empty());
}

TEST_CASE("operator norm") {
    MatrixMeasure seg(1);
    seg.add_segment(0.0, 1.0, ComplexMatrix::identity(1));
    CHECK(position_op(seg).op_norm() == doctest::Approx(1.0));
    MatrixMeasure atom(1);
    atom.add_atom(-3.0, ComplexMatrix::identity(1));
    CHECK(position_op(atom).op_norm() == doctest::Approx(3.0));
    CHECK(position_op(mixed_measure()).op_norm() == doctest::Approx(2.0));
}

TEST_CASE("adjoint symbol conjugates coefficients") {
    const auto m = mixed_measure();
    const MultOp op(m, PiecewiseScalarFn::polynomial(Poly{0.0, Complex(0.0, 1.0)}));
    const auto adj = op.adjoint();
    CHECK(adj.symbol().evaluate(1.0) == Complex(0.0, -1.0));
    const MultOp realop = position_op(m);
    CHECK(realop.adjoint().symbol().evaluate(0.7) == Complex(0.7));
}

TEST_CASE("fuzz: adjoint inner-product identity") {
    fuzz::Rng rng(321);
    for (int rep = 0; rep < 30; ++rep) {
        const int d = rng.uniform_int(1, 3);
        const auto m = rng.measure(d);
        const MultOp op(m, PiecewiseScalarFn::polynomial(rng.poly(2)));
        const auto f = rng.function_on(m, 2);
        const auto g = rng.function_on(m, 2);
        const Complex lhs = inner(m, op.apply(f), g);
        const Complex rhs = inner(m, f, op.adjoint().apply(g));
        CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)) * (1.0 + m.total_trace()));
    }
}

TEST_CASE("resolvent") {
    MatrixMeasure seg(1);
    seg.add_segment(0.0, 1.0, ComplexMatrix::identity(1));
    const auto r = position_op(seg).resolvent(5.0);
    CHECK(r.norm_bound == doctest::Approx(0.25));
    CHECK(std::abs(r.eval(0.5) - Complex(1.0 / (0.5 - 5.0))) <= 1e-15);
    CHECK_THROWS_AS(position_op(seg).resolvent(0.5), InSpectrum);

    MatrixMeasure atom(1);
    atom.add_atom(2.0, ComplexMatrix::identity(1));
    CHECK(std::abs(position_op(atom).resolvent(0.0).eval(2.0) - Complex(0.5)) <= 1e-15);
}

TEST_CASE("fuzz: resolvent identity at support points") {
    fuzz::Rng rng(432);
    for (int rep = 0; rep < 30; ++rep) {
        const int d = rng.uniform_int(1, 2);
        const auto m = rng.measure(d);
        const auto op = position_op(m);
        const Complex lambda0(rng.uniform(-8.0, 8.0), rng.uniform(0.5, 2.0));
        const auto r = op.resolvent(lambda0);
        const auto f = rng.function_on(m, 2);
        // (F - lambda0) * (H f) = f pointwise at atoms and quadrature nodes.
        std::vector<double> probes;
        for (const auto& atom : m.atoms()) probes.push_back(atom.t);
        for (const auto& seg : m.segments())
            for (int k = 0; k < 5; ++k) probes.push_back(seg.a + (seg.b - seg.a) * (k + 0.5) / 5);
        for (double t : probes) {
            const auto fv = f.value_at(t);
            for (int i = 0; i < d; ++i) {
                const Complex back = (t - lambda0) * r.eval(t) * fv[static_cast<size_t>(i)];
                CHECK(std::abs(back - fv[static_cast<size_t>(i)]) <= 1e-10 * (1.0 + std::abs(fv[static_cast<size_t>(i)])));
            }
        }
    }
}

TEST_CASE("spectral projections") {
    MatrixMeasure seg(1);
    seg.add_segment(0.0, 1.0, ComplexMatrix::identity(1));
    const auto op = position_op(seg);

    const auto p = op.spectral_projection(BorelSet::interval(0, 0.5));
    CHECK(p.symbol().evaluate(0.25) == Complex(1.0));
    CHECK(p.symbol().evaluate(0.75) == Complex(0.0));

    const auto pz = op.spectral_projection(BorelSet::empty());
    CHECK(seminorm(seg, pz.apply(VectorFunction::monomial(1, 0, 0))) == 0.0);

    const MultOp aff(seg, PiecewiseScalarFn::polynomial(Poly{1.0, 2.0}));
    const auto pa = aff.spectral_projection(BorelSet::interval(1, 2));
    CHECK(pa.symbol().evaluate(0.25) == Complex(1.0));
    CHECK(pa.symbol().evaluate(0.75) == Complex(0.0));
}

TEST_CASE("fuzz: projection algebra and norm consistency") {
    fuzz::Rng rng(543);
    for (int rep = 0; rep < 30; ++rep) {
        const int d = rng.uniform_int(1, 2);
        const auto m = rng.measure(d);
        const auto op = position_op(m);
        const auto w1 = rng.borel_set();
        const auto w2 = rng.borel_set();
        const auto f = rng.function_on(m, 2);
        const double scale = 1.0 + seminorm(m, f);

        const auto composed = op.spectral_projection(w1).apply(op.spectral_projection(w2).apply(f));
        const auto direct = op.spectral_projection(set_intersect(w1, w2)).apply(f);
        CHECK(seminorm(m, composed - direct) <= 1e-12 * scale);

        const auto p = op.spectral_projection(w1);
        CHECK(seminorm(m, p.apply(p.apply(f)) - p.apply(f)) <= 1e-12 * scale);

        // E(R) acts as the identity.
        CHECK(seminorm(m, op.spectral_projection(BorelSet::real_line()).apply(f) - f) <=
              1e-12 * scale);

        const double fn = seminorm(m, f);
        CHECK(seminorm(m, op.apply(f)) <= op.op_norm() * fn + 1e-10);
    }
}

TEST_CASE("fuzz: multiplicativity of apply") {
    fuzz::Rng rng(654);
    for (int rep = 0; rep < 30; ++rep) {
        const int d = rng.uniform_int(1, 2);
        const auto m = rng.measure(d);
        const Poly pf = rng.poly(2);
        const Poly pg = rng.poly(2);
        const MultOp opf(m, PiecewiseScalarFn::polynomial(pf));
        const MultOp opg(m, PiecewiseScalarFn::polynomial(pg));
        const MultOp opfg(m, PiecewiseScalarFn::polynomial(poly_mul(pf, pg)));
        const auto f = rng.function_on(m, 2);
        CHECK(seminorm(m, opf.apply(opg.apply(f)) - opfg.apply(f)) <=
              1e-11 * (1.0 + seminorm(m, f)) * (1.0 + m.total_trace()));
    }
}

TEST_CASE("kernel criterion: x - c kills a class iff the measure charges {c}") {
    fuzz::Rng rng(765);
    for (int rep = 0; rep < 30; ++rep) {
        const auto m = rng.measure(2, 3, 2);
        const bool pick_atom = !m.atoms().empty() && rng.uniform() < 0.7;
        const double c = pick_atom
                             ? m.atoms()[static_cast<size_t>(rng.uniform_int(
                                   0, static_cast<int>(m.atoms().size()) - 1))].t
                             : rng.uniform(-10.0, 10.0);
        const bool charges = m.trace_measure(BorelSet::point(c)) > 0.0;
        const MultOp op(m, PiecewiseScalarFn::polynomial(Poly{-c, 1.0}));
        if (charges) {
            // Indicator of {c} with a range vector is a nonzero class killed by x-c.
            const auto* atom = &m.atoms()[0];
            for (const auto& a : m.atoms())
                if (a.t == c) atom = &a;
            const auto col = std::vector<Complex>{atom->weight(0, 0), atom->weight(1, 0)};
            VectorFunction f(2);
            const auto use =
                vec_norm(col) > 1e-9 ? col : std::vector<Complex>{atom->weight(0, 1), atom->weight(1, 1)};
            f.set_value(c, use);
            CHECK_FALSE(is_zero_layer(m, f));
            CHECK(is_zero_layer(m, op.apply(f)));
        } else {
            // No nonzero class is killed: zero-layer output forces zero-layer input.
            const auto f = rng.function_on(m, 2);
            if (is_zero_layer(m, op.apply(f), 1e-12)) CHECK(is_zero_layer(m, f, 1e-6));
        }
    }
}

TEST_CASE("part in G") {
    const auto m = mixed_measure();
    const auto op = position_op(m);

    const auto part = op.part_in_G(BorelSet::interval(0, 0.5));
    CHECK(part.measure().atoms().empty());
    REQUIRE(part.measure().segments().size() == 1);
    CHECK(part.measure().segments()[0].b == 0.5);
    CHECK(part.spectrum() == BorelSet::interval(0, 0.5));

    const auto full = op.part_in_G(BorelSet::interval(-10, 10));
    CHECK(full.spectrum() == op.spectrum());

    const auto none = op.part_in_G(BorelSet::interval(5, 6));
    CHECK(none.measure().is_empty());
}

TEST_CASE("fuzz: part_in_G matches direct restriction") {
    fuzz::Rng rng(876);
    for (int rep = 0; rep < 25; ++rep) {
        const int d = rng.uniform_int(1, 2);
        const auto m = rng.measure(d);
        const auto op = position_op(m);
        const auto g = rng.borel_set();
        const auto part = op.part_in_G(g);
        const auto direct = MultOp(m.restrict(g), PiecewiseScalarFn::identity());
        for (int k = 0; k < 5; ++k) {
            const auto f = rng.function_on(m, 2);
            CHECK(seminorm(part.measure(), part.apply(f) - direct.apply(f)) <=
                  1e-10 * (1.0 + seminorm(m, f)));
        }
    }
}

TEST_CASE("fuzz: point spectrum is contained in the spectrum") {
    fuzz::Rng rng(987);
    for (int rep = 0; rep < 40; ++rep) {
        const int d = rng.uniform_int(1, 2);
        const auto m = rng.measure(d);
        Poly sym{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        const MultOp op(m, PiecewiseScalarFn::polynomial(sym));
        CHECK(is_subset(op.point_spectrum(), op.spectrum()));
    }
}
