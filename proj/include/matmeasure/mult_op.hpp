#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "matmeasure/borel_set.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/l2.hpp"
#include "matmeasure/matrix_measure.hpp"
#include "matmeasure/poly.hpp"
#include "matmeasure/vector_function.hpp"

namespace matmeasure {

/// Piecewise-polynomial scalar symbol; identically 0 outside its pieces.
class PiecewiseScalarFn {
public:
    struct Piece {
        BorelSet domain;
        Poly poly;
    };

    PiecewiseScalarFn() = default;
    explicit PiecewiseScalarFn(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}

    static PiecewiseScalarFn polynomial(Poly p) {
        return PiecewiseScalarFn({Piece{BorelSet::real_line(), std::move(p)}});
    }
    static PiecewiseScalarFn identity() { return polynomial(Poly{0.0, 1.0}); }
    static PiecewiseScalarFn constant(Complex c) { return polynomial(Poly{c}); }
    static PiecewiseScalarFn indicator(const BorelSet& w) {
        return PiecewiseScalarFn({Piece{w, Poly{1.0}}});
    }

    const std::vector<Piece>& pieces() const { return pieces_; }

    Complex evaluate(double t) const {
        for (const auto& p : pieces_)
            if (p.domain.contains(t)) return poly_eval(p.poly, t);
        return 0.0;
    }

    /// Active polynomial at t (zero polynomial outside all pieces).
    const Poly& poly_at(double t) const {
        static const Poly kZero{};
        for (const auto& p : pieces_)
            if (p.domain.contains(t)) return p.poly;
        return kZero;
    }

    PiecewiseScalarFn conjugated() const {
        std::vector<Piece> ps = pieces_;
        for (auto& p : ps) p.poly = poly_conj(p.poly);
        return PiecewiseScalarFn(std::move(ps));
    }

    /// Partitions [a, b] at every boundary of the pieces and reports the
    /// active polynomial per sub-interval.
    template <typename Cb>
    void for_each_piece(double a, double b, Cb cb) const {
        std::vector<double> cuts{a, b};
        for (const auto& p : pieces_) {
            for (const auto& iv : p.domain.intervals()) {
                if (iv.lo > a && iv.lo < b) cuts.push_back(iv.lo);
                if (iv.hi > a && iv.hi < b) cuts.push_back(iv.hi);
            }
            for (double pt : p.domain.points())
                if (pt > a && pt < b) cuts.push_back(pt);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (size_t k = 0; k + 1 < cuts.size(); ++k)
            cb(cuts[k], cuts[k + 1], poly_at(0.5 * (cuts[k] + cuts[k + 1])));
    }

private:
    std::vector<Piece> pieces_;
};

/// F^{-1}(s) within the given domain; each piece must carry a real affine
/// polynomial so the preimage stays in the interval-and-point class.
inline BorelSet preimage(const PiecewiseScalarFn& f, const BorelSet& s,
                         const BorelSet& domain = BorelSet::real_line()) {
    BorelSet covered = BorelSet::empty();
    BorelSet result = BorelSet::empty();
    for (const auto& piece : f.pieces()) {
        Poly p = poly_trim(piece.poly);
        if (!poly_is_real(p) || !poly_is_affine(p))
            throw UnsupportedFunction("preimage: non-affine or non-real symbol piece");
        const double c0 = p.empty() ? 0.0 : p[0].real();
        const double c1 = p.size() > 1 ? p[1].real() : 0.0;
        BorelSet pre;
        if (c1 != 0.0)
            pre = s.affine_preimage(c1, c0);
        else
            pre = s.contains(c0) ? BorelSet::real_line() : BorelSet::empty();
        result = set_union(result, set_intersect(pre, piece.domain));
        covered = set_union(covered, piece.domain);
    }
    if (s.contains(0.0))  // F is 0 outside its pieces
        result = set_union(result, set_complement(covered));
    return set_intersect(result, domain);
}

struct Resolvent {
    std::function<Complex(double)> eval;
    double norm_bound = 0.0;
    double distance = 0.0;
};

/// T_F acting on L^2(M): [f] -> [F f].
class MultOp {
public:
    MultOp(MatrixMeasure measure, PiecewiseScalarFn symbol)
        : measure_(std::move(measure)), symbol_(std::move(symbol)) {}

    const MatrixMeasure& measure() const { return measure_; }
    const PiecewiseScalarFn& symbol() const { return symbol_; }

    /// Pointwise product representative of [F f], valid M-a.e.
    VectorFunction apply(const VectorFunction& f) const {
        if (f.d() != measure_.d()) throw DimensionMismatch("MultOp::apply: d mismatch");
        VectorFunction r(measure_.d());
        for (const auto& seg : measure_.segments()) {
            symbol_.for_each_piece(seg.a, seg.b, [&](double lo, double hi, const Poly& fp) {
                f.for_each_piece(lo, hi, nullptr,
                                 [&](double u, double v, const std::vector<Poly>* polys,
                                     const std::vector<Poly>*) {
                                     if (!polys || poly_degree(fp) < 0) return;
                                     std::vector<Poly> prod(polys->size());
                                     for (size_t i = 0; i < polys->size(); ++i) {
                                         prod[i] = poly_mul(fp, (*polys)[i]);
                                         if (poly_degree(prod[i]) > kMaxPolyDegree)
                                             throw DegreeOverflow("MultOp::apply: degree cap");
                                     }
                                     r.add_segment(u, v, std::move(prod));
                                 });
            });
        }
        for (const auto& atom : measure_.atoms()) {
            const Complex fv = symbol_.evaluate(atom.t);
            auto v = f.value_at(atom.t);
            for (auto& z : v) z *= fv;
            r.set_value(atom.t, std::move(v));
        }
        return r;
    }

    /// Essential value set VE_M(F): atom images plus the closed images of the
    /// segments. Set-level operations need real (and per-segment affine)
    /// symbols; purely atomic measures only need pointwise evaluation.
    BorelSet essential_values() const {
        std::vector<BorelSet::Interval> ivs;
        std::vector<double> pts;
        for (const auto& atom : measure_.atoms()) {
            const Complex v = symbol_.evaluate(atom.t);
            if (std::abs(v.imag()) > 0.0)
                throw UnsupportedFunction("essential_values: complex symbol value at an atom");
            pts.push_back(v.real());
        }
        for (const auto& seg : measure_.segments()) {
            symbol_.for_each_piece(seg.a, seg.b, [&](double lo, double hi, const Poly& p) {
                const Poly q = poly_trim(p);
                if (!poly_is_real(q) || !poly_is_affine(q))
                    throw UnsupportedFunction("essential_values: non-affine symbol on a segment");
                const double va = poly_eval(q, lo).real();
                const double vb = poly_eval(q, hi).real();
                if (va == vb)
                    pts.push_back(va);
                else
                    ivs.push_back({std::min(va, vb), std::max(va, vb), true, true});
            });
        }
        return BorelSet::from_raw(std::move(ivs), std::move(pts));
    }

    BorelSet spectrum() const {
        if (measure_.is_empty()) throw TrivialSpace("spectrum: L^2(M) is trivial");
        return essential_values();
    }

    /// Eigenvalues: atom images plus constant values attained on sets of
    /// positive length.
    BorelSet point_spectrum() const {
        std::vector<double> pts;
        for (const auto& atom : measure_.atoms()) {
            const Complex v = symbol_.evaluate(atom.t);
            if (std::abs(v.imag()) > 0.0)
                throw UnsupportedFunction("point_spectrum: complex symbol value at an atom");
            pts.push_back(v.real());
        }
        for (const auto& seg : measure_.segments()) {
            symbol_.for_each_piece(seg.a, seg.b, [&](double lo, double hi, const Poly& p) {
                (void)lo;
                (void)hi;
                const Poly q = poly_trim(p);
                if (!poly_is_real(q) || !poly_is_affine(q))
                    throw UnsupportedFunction("point_spectrum: non-affine symbol on a segment");
                if (poly_degree(q) <= 0) pts.push_back(q.empty() ? 0.0 : q[0].real());
            });
        }
        return BorelSet::from_raw({}, std::move(pts));
    }

    double op_norm() const { return essential_values().sup_abs(); }

    MultOp adjoint() const { return MultOp(measure_, symbol_.conjugated()); }

    /// (T_F - lambda0)^{-1} as the multiplication by H(t) = 1/(F(t)-lambda0),
    /// with norm 1/dist(lambda0, sigma).
    Resolvent resolvent(Complex lambda0, double tol = kDefaultTol) const {
        const double delta = spectrum().distance_to(lambda0);
        if (!(delta > tol)) throw InSpectrum("resolvent: lambda0 is in the spectrum");
        const PiecewiseScalarFn sym = symbol_;
        return Resolvent{[sym, lambda0](double t) { return 1.0 / (sym.evaluate(t) - lambda0); },
                         1.0 / delta, delta};
    }

    /// E_{F,M}(w) = multiplication by the indicator of F^{-1}(w).
    MultOp spectral_projection(const BorelSet& w) const {
        return MultOp(measure_, PiecewiseScalarFn::indicator(preimage(symbol_, w)));
    }

    /// The part of T_F in G: the same symbol on M restricted to F^{-1}(G).
    MultOp part_in_G(const BorelSet& g) const {
        return MultOp(measure_.restrict(preimage(symbol_, g)), symbol_);
    }

private:
    MatrixMeasure measure_;
    PiecewiseScalarFn symbol_;
};

}  // namespace matmeasure
