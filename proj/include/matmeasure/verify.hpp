#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "matmeasure/accont.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/cyclic.hpp"
#include "matmeasure/fuzz.hpp"
#include "matmeasure/l2.hpp"
#include "matmeasure/mult_op.hpp"

namespace matmeasure::verify {

struct Config {
    double tol = kDefaultTol;
    double cluster_tol = kClusterTol;
    unsigned long long seed = 42;
    int fuzz_cases = 200;
};

struct PropertyResult {
    std::string name;
    int cases = 0;
    int failures = 0;
};

struct SuiteResult {
    std::string suite;
    std::vector<PropertyResult> properties;

    bool passed() const {
        for (const auto& p : properties)
            if (p.failures > 0) return false;
        return true;
    }
    int total_cases() const {
        int n = 0;
        for (const auto& p : properties) n += p.cases;
        return n;
    }
};

namespace detail {

using Property = std::function<bool(fuzz::Rng&)>;

inline PropertyResult run_property(const std::string& name, const Config& cfg,
                                   unsigned long long salt, const Property& body) {
    PropertyResult r{name, 0, 0};
    fuzz::Rng rng(cfg.seed ^ (salt * 0x9e3779b97f4a7c15ull));
    for (int k = 0; k < cfg.fuzz_cases; ++k) {
        ++r.cases;
        bool ok = false;
        try {
            ok = body(rng);
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) ++r.failures;
    }
    return r;
}

inline SuiteResult suite_linalg(const Config& cfg) {
    SuiteResult s{"linalg", {}};
    s.properties.push_back(run_property("eig reconstructs and resolves identity", cfg, 1, [](fuzz::Rng& rng) {
        const int n = rng.uniform_int(1, 8);
        const auto planted = rng.hermitian(n, rng.uniform() < 0.3);
        const auto e = eig_hermitian(planted.a);
        const double scale = 1.0 + planted.a.frobenius_norm();
        if ((e.reconstruct() - planted.a).frobenius_norm() > 1e-10 * scale) return false;
        ComplexMatrix sum(n);
        for (const auto& c : e.clusters) sum += c.projection(n);
        return (sum - ComplexMatrix::identity(n)).frobenius_norm() <= 1e-10;
    }));
    s.properties.push_back(run_property("planted spectrum recovered", cfg, 2, [](fuzz::Rng& rng) {
        const int n = rng.uniform_int(1, 8);
        const auto planted = rng.hermitian(n, rng.uniform() < 0.3);
        const auto e = eig_hermitian(planted.a);
        const double scale = 1.0 + planted.a.frobenius_norm();
        if (e.clusters.size() != planted.eigenvalues.size()) return false;
        for (size_t k = 0; k < e.clusters.size(); ++k) {
            if (std::abs(e.clusters[k].eigenvalue - planted.eigenvalues[k]) > 1e-10 * scale)
                return false;
            if ((e.clusters[k].projection(n) - planted.projections[k]).frobenius_norm() >
                1e-8 * scale)
                return false;
        }
        return true;
    }));
    s.properties.push_back(run_property("psd square root squares back", cfg, 3, [](fuzz::Rng& rng) {
        const int n = rng.uniform_int(1, 6);
        const auto a = rng.psd(n, rng.uniform_int(0, n));
        const auto r = sqrt_psd(a);
        return (r * r - a).frobenius_norm() <= 1e-9 * (1.0 + a.frobenius_norm());
    }));
    return s;
}

inline SuiteResult suite_measure(const Config& cfg) {
    SuiteResult s{"measure", {}};
    s.properties.push_back(run_property("finite additivity", cfg, 11, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 3));
        const auto w1 = rng.borel_set();
        const auto w2 = rng.borel_set();
        const auto a = set_minus(w1, w2);
        const auto b = set_intersect(w1, w2);
        return (m.evaluate(set_union(a, b)) - (m.evaluate(a) + m.evaluate(b))).frobenius_norm() <=
               1e-12 * (1.0 + m.total_trace());
    }));
    s.properties.push_back(run_property("trace density normalized with spectrum in [0,1]", cfg, 12, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 3));
        std::vector<double> probes;
        for (const auto& atom : m.atoms()) probes.push_back(atom.t);
        for (const auto& seg : m.segments()) probes.push_back(0.5 * (seg.a + seg.b));
        for (double t : probes) {
            const auto d = m.trace_density_at(t);
            if (!d) return false;
            if (std::abs(d->trace().real() - 1.0) > 1e-12) return false;
            for (const auto& c : eig_hermitian(*d).clusters)
                if (c.eigenvalue < -1e-12 || c.eigenvalue > 1.0 + 1e-12) return false;
        }
        return true;
    }));
    s.properties.push_back(run_property("restriction consistent with intersection", cfg, 13, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 3));
        const auto omega = rng.borel_set();
        const auto w = rng.borel_set();
        return (m.restrict(omega).evaluate(w) - m.evaluate(set_intersect(w, omega)))
                   .frobenius_norm() <= 1e-12 * (1.0 + m.total_trace());
    }));
    s.properties.push_back(run_property("zero sets detected both ways", cfg, 14, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 3));
        const auto w = rng.borel_set();
        return m.is_zero_set(w, 1e-12) ==
               (m.evaluate(w).frobenius_norm() <= 1e-12 * (1.0 + m.total_trace()));
    }));
    return s;
}

inline SuiteResult suite_l2(const Config& cfg) {
    SuiteResult s{"l2", {}};
    s.properties.push_back(run_property("entrywise form equals trace-density form", cfg, 21, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 3));
        const auto f = rng.function_on(m);
        const auto g = rng.function_on(m);
        return std::abs(sigma_inner(m, f, g) - inner(m, f, g)) <= 1e-12;
    }));
    s.properties.push_back(run_property("Cauchy-Schwarz", cfg, 22, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 3));
        const auto f = rng.function_on(m);
        const auto g = rng.function_on(m);
        return std::abs(inner(m, f, g)) <= seminorm(m, f) * seminorm(m, g) + 1e-12;
    }));
    s.properties.push_back(run_property("restriction embedding is isometric", cfg, 23, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 3));
        const auto omega = rng.borel_set();
        const auto r = m.restrict(omega);
        const auto g = rng.function_on(m);
        const auto cls = embed_extension(m, omega, g);
        return std::abs(cls.norm() - seminorm(r, g)) <= 1e-12 * (1.0 + cls.norm());
    }));
    return s;
}

inline SuiteResult suite_multop(const Config& cfg) {
    SuiteResult s{"multop", {}};
    s.properties.push_back(run_property("projection algebra", cfg, 31, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 2));
        const MultOp op(m, PiecewiseScalarFn::identity());
        const auto w1 = rng.borel_set();
        const auto w2 = rng.borel_set();
        const auto f = rng.function_on(m, 2);
        const double scale = 1.0 + seminorm(m, f);
        const auto composed =
            op.spectral_projection(w1).apply(op.spectral_projection(w2).apply(f));
        const auto direct = op.spectral_projection(set_intersect(w1, w2)).apply(f);
        return seminorm(m, composed - direct) <= 1e-12 * scale;
    }));
    s.properties.push_back(run_property("symbol products compose", cfg, 32, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 2));
        const Poly pf = rng.poly(2);
        const Poly pg = rng.poly(2);
        const auto f = rng.function_on(m, 2);
        const MultOp opf(m, PiecewiseScalarFn::polynomial(pf));
        const MultOp opg(m, PiecewiseScalarFn::polynomial(pg));
        const MultOp opfg(m, PiecewiseScalarFn::polynomial(poly_mul(pf, pg)));
        return seminorm(m, opf.apply(opg.apply(f)) - opfg.apply(f)) <=
               1e-11 * (1.0 + seminorm(m, f)) * (1.0 + m.total_trace());
    }));
    s.properties.push_back(run_property("point spectrum within spectrum", cfg, 33, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 2));
        if (m.is_empty()) return true;
        const MultOp op(m, PiecewiseScalarFn::polynomial(
                               Poly{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}));
        return is_subset(op.point_spectrum(), op.spectrum());
    }));
    return s;
}

inline SuiteResult suite_cyclic(const Config& cfg) {
    SuiteResult s{"cyclic", {}};
    s.properties.push_back(run_property("unitary equivalence on cyclic systems", cfg, 41, [&cfg](fuzz::Rng& rng) {
        for (int tries = 0; tries < 50; ++tries) {
            const int n = rng.uniform_int(1, 8);
            const HermitianOperator a(rng.hermitian(n, false).a);
            VectorSystem phi{{rng.complex_vector(n)}};
            if (cyclicity_rank(a, phi) != n) continue;
            std::vector<BorelSet> omegas;
            for (int k = 0; k < 5; ++k) omegas.push_back(rng.borel_set());
            const auto rep = verify_xmue(a, phi, omegas, cfg.tol, cfg.cluster_tol);
            return rep.passed(1e-9 * (1.0 + a.matrix.frobenius_norm()));
        }
        return false;
    }));
    s.properties.push_back(run_property("transform matches the functional calculus", cfg, 42, [&cfg](fuzz::Rng& rng) {
        const int n = rng.uniform_int(1, 6);
        const HermitianOperator a(rng.hermitian(n, rng.uniform() < 0.25).a);
        const int d = rng.uniform_int(1, 2);
        VectorSystem phi;
        for (int j = 0; j < d; ++j) phi.vectors.push_back(rng.complex_vector(n));
        const CST u(a, phi, cfg.tol, cfg.cluster_tol);
        const auto f = rng.function_on(u.measure(), 2);
        const auto via_cst = u.apply(f);
        const auto via_calc = apply_direct(a, phi, f, cfg.tol, cfg.cluster_tol);
        double dist = 0.0;
        for (size_t i = 0; i < via_cst.size(); ++i) dist += std::norm(via_cst[i] - via_calc[i]);
        return std::sqrt(dist) <= 1e-9 * (1.0 + vec_norm(via_calc));
    }));
    return s;
}

inline SuiteResult suite_accont(const Config& cfg) {
    SuiteResult s{"accont", {}};
    s.properties.push_back(run_property("closure inclusion under the hypotheses", cfg, 51, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 3));
        auto g = set_intersect(rng.borel_set(), m.minimal_support_ac());
        for (const auto& atom : m.atoms()) g = set_minus(g, BorelSet::point(atom.t));
        const auto rep = ac_window_report(m, g);
        return !rep.hypotheses_hold || rep.inclusion_holds;
    }));
    s.properties.push_back(run_property("spectral decomposition consistency", cfg, 52, [](fuzz::Rng& rng) {
        const auto m = rng.measure(rng.uniform_int(1, 2));
        if (m.is_empty()) return true;
        const auto rep = ac_window_report(m, rng.borel_set());
        std::vector<double> pts;
        for (const auto& atom : m.atoms()) pts.push_back(atom.t);
        if (!(rep.sigma_p == BorelSet::from_raw({}, std::move(pts)))) return false;
        return rep.sigma_ac == m.minimal_support_ac().leb_closure();
    }));
    return s;
}

}  // namespace detail

inline std::vector<SuiteResult> run_suites(const std::string& suite, const Config& cfg) {
    using Runner = SuiteResult (*)(const Config&);
    static const std::vector<std::pair<std::string, Runner>> all{
        {"linalg", detail::suite_linalg}, {"measure", detail::suite_measure},
        {"l2", detail::suite_l2},         {"multop", detail::suite_multop},
        {"cyclic", detail::suite_cyclic}, {"accont", detail::suite_accont},
    };
    std::vector<SuiteResult> out;
    for (const auto& [name, runner] : all)
        if (suite == "all" || suite == name) out.push_back(runner(cfg));
    if (out.empty()) throw UnknownSuite("unknown suite: " + suite);
    return out;
}

}  // namespace matmeasure::verify
