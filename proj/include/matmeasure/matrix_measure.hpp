#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "matmeasure/borel_set.hpp"
#include "matmeasure/complex_matrix.hpp"
#include "matmeasure/common.hpp"

namespace matmeasure {

/// A finite matrix measure on the real line: finitely many atoms with PSD
/// weights plus segments carrying a constant PSD density against Lebesgue
/// measure,
///   M(w) = sum_{t_k in w} W_k + sum_seg |w cap [a,b]| * F_seg.
/// Zero-trace weights are invisible to the measure and are stripped at
/// construction.
class MatrixMeasure {
public:
    struct Atom {
        double t = 0.0;
        ComplexMatrix weight;
    };
    struct Segment {
        double a = 0.0, b = 0.0;
        ComplexMatrix density;
    };

    explicit MatrixMeasure(int d) : d_(d) {
        if (d <= 0) throw DimensionMismatch("MatrixMeasure: d must be positive");
    }
    MatrixMeasure(int d, std::vector<Atom> atoms, std::vector<Segment> segments,
                  double tol = kDefaultTol)
        : MatrixMeasure(d) {
        for (auto& a : atoms) add_atom(a.t, std::move(a.weight), tol);
        for (auto& s : segments) add_segment(s.a, s.b, std::move(s.density), tol);
    }

    void add_atom(double t, ComplexMatrix weight, double tol = kDefaultTol) {
        validate_weight(weight, tol);
        if (weight.trace().real() <= tol) return;  // zero-trace atoms are stripped
        for (const auto& a : atoms_)
            if (a.t == t) throw Error("MatrixMeasure: duplicate atom point");
        atoms_.push_back(Atom{t, std::move(weight)});
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& x, const Atom& y) { return x.t < y.t; });
    }

    void add_segment(double a, double b, ComplexMatrix density, double tol = kDefaultTol) {
        if (!(a < b)) throw Error("MatrixMeasure: segment needs a < b");
        if (!std::isfinite(a) || !std::isfinite(b))
            throw Error("MatrixMeasure: segments must be bounded");
        validate_weight(density, tol);
        if (density.trace().real() <= tol) return;
        for (const auto& s : segments_)
            if (std::max(a, s.a) < std::min(b, s.b))
                throw Error("MatrixMeasure: overlapping segments");
        segments_.push_back(Segment{a, b, std::move(density)});
        std::sort(segments_.begin(), segments_.end(),
                  [](const Segment& x, const Segment& y) { return x.a < y.a; });
    }

    int d() const { return d_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Segment>& segments() const { return segments_; }
    bool is_empty() const { return atoms_.empty() && segments_.empty(); }

    ComplexMatrix evaluate(const BorelSet& w) const {
        ComplexMatrix m(d_);
        for (const auto& a : atoms_)
            if (w.contains(a.t)) m += a.weight;
        for (const auto& s : segments_) {
            const double len =
                set_intersect(w, BorelSet::interval(s.a, s.b)).leb_measure();
            if (len > 0.0) m += Complex(len) * s.density;
        }
        return m;
    }

    double trace_measure(const BorelSet& w) const { return evaluate(w).trace().real(); }

    double total_trace() const {
        double s = 0.0;
        for (const auto& a : atoms_) s += a.weight.trace().real();
        for (const auto& seg : segments_) s += (seg.b - seg.a) * seg.density.trace().real();
        return s;
    }

    /// Trace density D_M(t): the trace-normalized weight at an atom, or the
    /// trace-normalized density on a segment; atoms take precedence at
    /// coincident points. Empty outside the support.
    std::optional<ComplexMatrix> trace_density_at(double t) const {
        for (const auto& a : atoms_)
            if (a.t == t) return Complex(1.0 / a.weight.trace().real()) * a.weight;
        for (const auto& s : segments_)
            if (s.a <= t && t <= s.b)
                return Complex(1.0 / s.density.trace().real()) * s.density;
        return std::nullopt;
    }

    bool is_zero_set(const BorelSet& w, double tol = kDefaultTol) const {
        return trace_measure(w) <= tol * (1.0 + total_trace());
    }

    /// The points and intervals actually charged by the measure.
    BorelSet support() const {
        std::vector<BorelSet::Interval> ivs;
        std::vector<double> pts;
        for (const auto& s : segments_) ivs.push_back({s.a, s.b, true, true});
        for (const auto& a : atoms_) pts.push_back(a.t);
        return BorelSet::from_raw(std::move(ivs), std::move(pts));
    }

    /// Restriction to a representable set: atoms filtered, segments clipped
    /// and re-split along the intersection's intervals.
    MatrixMeasure restrict(const BorelSet& omega, double tol = kDefaultTol) const {
        MatrixMeasure r(d_);
        for (const auto& a : atoms_)
            if (omega.contains(a.t)) r.add_atom(a.t, a.weight, tol);
        for (const auto& s : segments_) {
            const BorelSet clip = set_intersect(omega, BorelSet::interval(s.a, s.b));
            for (const auto& iv : clip.intervals())
                r.add_segment(iv.lo, iv.hi, s.density, tol);
        }
        return r;
    }

    /// Lebesgue decomposition of this representation: (absolutely continuous
    /// part, singular part) = (segments only, atoms only).
    std::pair<MatrixMeasure, MatrixMeasure> ac_sing_split() const {
        MatrixMeasure ac(d_), sing(d_);
        ac.segments_ = segments_;
        sing.atoms_ = atoms_;
        return {ac, sing};
    }

    /// Canonical minimal support of the absolutely continuous part: the union
    /// of the segment intervals.
    BorelSet minimal_support_ac() const {
        std::vector<BorelSet::Interval> ivs;
        for (const auto& s : segments_) ivs.push_back({s.a, s.b, true, true});
        return BorelSet::from_raw(std::move(ivs), {});
    }

private:
    void validate_weight(const ComplexMatrix& w, double tol) const {
        if (w.dim() != d_) throw DimensionMismatch("MatrixMeasure: weight dim mismatch");
        if (!is_hermitian(w, tol)) throw NotHermitian("MatrixMeasure: weight not Hermitian");
        require_psd(eig_hermitian(w, tol), 1.0 + w.frobenius_norm(), tol);
    }

    int d_ = 0;
    std::vector<Atom> atoms_;
    std::vector<Segment> segments_;
};

}  // namespace matmeasure
