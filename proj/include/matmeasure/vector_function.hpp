#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "matmeasure/borel_set.hpp"
#include "matmeasure/common.hpp"
#include "matmeasure/poly.hpp"

namespace matmeasure {

/// A C^d-valued function on the line given by explicit values at finitely many
/// points and per-segment polynomial components; zero outside the declared
/// pieces. Point values take precedence, then the first segment containing t.
class VectorFunction {
public:
    struct AtomValue {
        double t = 0.0;
        std::vector<Complex> value;
    };
    struct Segment {
        double a = 0.0, b = 0.0;  // endpoints may be +-inf
        std::vector<Poly> polys;  // one per component
    };

    explicit VectorFunction(int d) : d_(d) {
        if (d <= 0) throw DimensionMismatch("VectorFunction: d must be positive");
    }

    static VectorFunction zero(int d) { return VectorFunction(d); }

    /// t -> t^n e_j on the whole line.
    static VectorFunction monomial(int d, int j, int n) {
        VectorFunction f(d);
        Segment s;
        s.a = -kInf;
        s.b = kInf;
        s.polys.assign(static_cast<size_t>(d), Poly{});
        Poly p(static_cast<size_t>(n) + 1, Complex(0.0));
        p.back() = 1.0;
        s.polys[static_cast<size_t>(j)] = std::move(p);
        f.segments_.push_back(std::move(s));
        return f;
    }

    /// Vector characteristic function chi_w * c (intervals become segments,
    /// isolated points become point values).
    static VectorFunction indicator(const BorelSet& w, const std::vector<Complex>& c) {
        VectorFunction f(static_cast<int>(c.size()));
        for (const auto& iv : w.intervals()) {
            Segment s;
            s.a = iv.lo;
            s.b = iv.hi;
            for (const auto& z : c) s.polys.push_back(Poly{z});
            f.segments_.push_back(std::move(s));
        }
        for (double p : w.points()) f.set_value(p, c);
        return f;
    }

    int d() const { return d_; }
    const std::vector<AtomValue>& point_values() const { return atom_values_; }
    const std::vector<Segment>& segments() const { return segments_; }

    void set_value(double t, std::vector<Complex> v) {
        if (static_cast<int>(v.size()) != d_)
            throw DimensionMismatch("VectorFunction::set_value: bad length");
        for (auto& av : atom_values_)
            if (av.t == t) {
                av.value = std::move(v);
                return;
            }
        atom_values_.push_back(AtomValue{t, std::move(v)});
        std::sort(atom_values_.begin(), atom_values_.end(),
                  [](const AtomValue& x, const AtomValue& y) { return x.t < y.t; });
    }

    void add_segment(double a, double b, std::vector<Poly> polys) {
        if (static_cast<int>(polys.size()) != d_)
            throw DimensionMismatch("VectorFunction::add_segment: bad component count");
        if (!(a < b)) throw Error("VectorFunction: segment needs a < b");
        for (const auto& p : polys)
            if (poly_degree(p) > kMaxPolyDegree)
                throw DegreeOverflow("VectorFunction: polynomial degree exceeds cap");
        segments_.push_back(Segment{a, b, std::move(polys)});
    }

    /// Active segment polynomials at t, or nullptr outside all segments.
    const std::vector<Poly>* segment_polys_at(double t) const {
        for (const auto& s : segments_)
            if (s.a <= t && t <= s.b) return &s.polys;
        return nullptr;
    }

    std::vector<Complex> value_at(double t) const {
        for (const auto& av : atom_values_)
            if (av.t == t) return av.value;
        if (const auto* polys = segment_polys_at(t)) {
            std::vector<Complex> v(static_cast<size_t>(d_));
            for (int i = 0; i < d_; ++i) v[static_cast<size_t>(i)] = poly_eval((*polys)[static_cast<size_t>(i)], t);
            return v;
        }
        return std::vector<Complex>(static_cast<size_t>(d_), Complex(0.0));
    }

    /// Partitions [a, b] at every segment endpoint of *this and of other (when
    /// given) and reports the active polynomials on each sub-piece. Callback:
    /// (lo, hi, polys_this, polys_other) with nullptr meaning identically zero.
    template <typename Cb>
    void for_each_piece(double a, double b, const VectorFunction* other, Cb cb) const {
        std::vector<double> cuts{a, b};
        auto collect = [&cuts, a, b](const VectorFunction& f) {
            for (const auto& s : f.segments_) {
                if (s.a > a && s.a < b) cuts.push_back(s.a);
                if (s.b > a && s.b < b) cuts.push_back(s.b);
            }
        };
        collect(*this);
        if (other) collect(*other);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (size_t k = 0; k + 1 < cuts.size(); ++k) {
            const double lo = cuts[k], hi = cuts[k + 1];
            const double mid = 0.5 * (lo + hi);
            cb(lo, hi, segment_polys_at(mid), other ? other->segment_polys_at(mid) : nullptr);
        }
    }

    friend VectorFunction operator+(const VectorFunction& f, const VectorFunction& g) {
        return combine(f, g, Complex(1.0));
    }
    friend VectorFunction operator-(const VectorFunction& f, const VectorFunction& g) {
        return combine(f, g, Complex(-1.0));
    }
    friend VectorFunction operator*(Complex z, const VectorFunction& f) {
        VectorFunction r(f.d_);
        for (const auto& av : f.atom_values_) {
            auto v = av.value;
            for (auto& x : v) x *= z;
            r.set_value(av.t, std::move(v));
        }
        for (const auto& s : f.segments_) {
            Segment t = s;
            for (auto& p : t.polys) p = poly_scale(p, z);
            r.segments_.push_back(std::move(t));
        }
        return r;
    }

    /// Drops point values outside omega and clips segments to it (extension by
    /// zero from the restriction).
    VectorFunction clip_to(const BorelSet& omega) const {
        VectorFunction r(d_);
        for (const auto& av : atom_values_)
            if (omega.contains(av.t)) r.set_value(av.t, av.value);
        for (const auto& s : segments_) {
            const BorelSet piece = set_intersect(
                omega, BorelSet::interval(s.a, s.b, std::isfinite(s.a), std::isfinite(s.b)));
            for (const auto& iv : piece.intervals()) r.add_segment(iv.lo, iv.hi, s.polys);
            for (double p : piece.points()) {
                std::vector<Complex> v(static_cast<size_t>(d_));
                for (int i = 0; i < d_; ++i) v[static_cast<size_t>(i)] = poly_eval(s.polys[static_cast<size_t>(i)], p);
                r.set_value(p, std::move(v));
            }
        }
        return r;
    }

private:
    static VectorFunction combine(const VectorFunction& f, const VectorFunction& g, Complex sign) {
        if (f.d_ != g.d_) throw DimensionMismatch("VectorFunction: d mismatch");
        VectorFunction r(f.d_);
        // Segment structure: split at every endpoint of either operand.
        std::vector<double> cuts;
        bool left_inf = false, right_inf = false;
        for (const auto* h : {&f, &g})
            for (const auto& s : h->segments_) {
                if (std::isfinite(s.a)) cuts.push_back(s.a); else left_inf = true;
                if (std::isfinite(s.b)) cuts.push_back(s.b); else right_inf = true;
            }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<std::pair<double, double>> pieces;
        if (cuts.empty()) {
            if (left_inf || right_inf) pieces.emplace_back(-kInf, kInf);
        } else {
            if (left_inf) pieces.emplace_back(-kInf, cuts.front());
            for (size_t k = 0; k + 1 < cuts.size(); ++k) pieces.emplace_back(cuts[k], cuts[k + 1]);
            if (right_inf) pieces.emplace_back(cuts.back(), kInf);
        }
        for (const auto& [lo, hi] : pieces) {
            double mid;
            if (std::isfinite(lo) && std::isfinite(hi)) mid = 0.5 * (lo + hi);
            else if (std::isfinite(lo)) mid = lo + 1.0;
            else if (std::isfinite(hi)) mid = hi - 1.0;
            else mid = 0.0;
            const auto* pf = f.segment_polys_at(mid);
            const auto* pg = g.segment_polys_at(mid);
            if (!pf && !pg) continue;
            std::vector<Poly> polys(static_cast<size_t>(f.d_));
            for (int i = 0; i < f.d_; ++i) {
                Poly p = pf ? (*pf)[static_cast<size_t>(i)] : Poly{};
                Poly q = pg ? poly_scale((*pg)[static_cast<size_t>(i)], sign) : Poly{};
                polys[static_cast<size_t>(i)] = poly_add(p, q);
            }
            r.segments_.push_back(Segment{lo, hi, std::move(polys)});
        }
        // Point values: wherever either operand pins a value.
        std::vector<double> keys;
        for (const auto& av : f.atom_values_) keys.push_back(av.t);
        for (const auto& av : g.atom_values_) keys.push_back(av.t);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        for (double t : keys) {
            auto v = f.value_at(t);
            const auto w = g.value_at(t);
            for (int i = 0; i < f.d_; ++i) v[static_cast<size_t>(i)] += sign * w[static_cast<size_t>(i)];
            r.set_value(t, std::move(v));
        }
        return r;
    }

    int d_ = 0;
    std::vector<AtomValue> atom_values_;
    std::vector<Segment> segments_;
};

}  // namespace matmeasure
