#pragma once

#include <functional>

#include "matmeasure/borel_set.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/matrix_measure.hpp"
#include "matmeasure/mult_op.hpp"

namespace matmeasure {

struct AcReport {
    double mu_sing_G = 0.0;
    bool is_ac_in_G = false;
    bool hypotheses_hold = false;
    BorelSet leb_closure_G;
    BorelSet sigma_ac;
    BorelSet sigma_p;
    bool inclusion_holds = false;  // leb_closure_G subset of sigma_ac
};

/// Absolute continuity in G: the singular (atomic) part must not charge G.
inline bool is_ac_in_G(const MatrixMeasure& m, const BorelSet& g, double tol = kDefaultTol) {
    const auto [ac, sing] = m.ac_sing_split();
    return sing.trace_measure(g) <= tol * (1.0 + m.total_trace());
}

/// sigma_ac = spectrum of multiplication by x on the absolutely continuous
/// part: the union of the segment intervals.
inline BorelSet ac_spectrum(const MatrixMeasure& m) {
    const auto [ac, sing] = m.ac_sing_split();
    if (ac.is_empty()) return BorelSet::empty();
    return MultOp(ac, PiecewiseScalarFn::identity()).essential_values();
}

inline AcReport ac_window_report(const MatrixMeasure& m, const BorelSet& g,
                                  double tol = kDefaultTol) {
    AcReport rep;
    const auto [ac, sing] = m.ac_sing_split();
    rep.mu_sing_G = sing.trace_measure(g);
    rep.is_ac_in_G = rep.mu_sing_G <= tol * (1.0 + m.total_trace());
    rep.leb_closure_G = g.leb_closure();
    rep.sigma_ac = ac_spectrum(m);
    rep.sigma_p = m.is_empty() ? BorelSet::empty()
                               : MultOp(m, PiecewiseScalarFn::identity()).point_spectrum();
    rep.hypotheses_hold = rep.is_ac_in_G && is_subset(g, m.minimal_support_ac());
    rep.inclusion_holds = is_subset(rep.leb_closure_G, rep.sigma_ac);
    return rep;
}

/// Minimal-support predicates for the ac part against Lebesgue measure,
/// checked over sampled sets: (i) sets that are Lebesgue-null and carry no
/// singular mass carry no mass at all; (ii) null sets of the measure inside S
/// are Lebesgue-null.
inline bool minimal_support_check(const MatrixMeasure& m, const BorelSet& s,
                                  const std::function<BorelSet()>& sampler, int cases,
                                  double tol = kDefaultTol) {
    const auto [ac, sing] = m.ac_sing_split();
    const double scale = 1.0 + m.total_trace();
    for (int k = 0; k < cases; ++k) {
        const BorelSet w = sampler();
        if (sing.trace_measure(w) <= tol * scale && w.leb_measure() == 0.0 &&
            ac.trace_measure(w) > tol * scale)
            return false;
        const BorelSet ws = set_intersect(w, s);
        if (m.trace_measure(ws) <= tol * scale && ws.leb_measure() > tol) return false;
    }
    return true;
}

}  // namespace matmeasure
