#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "matmeasure/common.hpp"

namespace matmeasure {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Finite unions of intervals and isolated points form an algebra that is
/// closed under complement, finite boolean operations and affine preimages.
/// The canonical form (sorted disjoint non-adjacent intervals, points outside
/// every interval) is unique, so equality is structural.
class BorelSet {
public:
    struct Interval {
        double lo = 0.0, hi = 0.0;
        bool lo_closed = false, hi_closed = false;
    };

    BorelSet() = default;

    static BorelSet empty() { return BorelSet(); }
    static BorelSet real_line() { return interval(-kInf, kInf, false, false); }
    static BorelSet interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true) {
        return from_raw({Interval{lo, hi, lo_closed, hi_closed}}, {});
    }
    static BorelSet point(double p) { return from_raw({}, {p}); }

    /// Canonicalizes an arbitrary (possibly overlapping) piece list.
    static BorelSet from_raw(std::vector<Interval> ivs, std::vector<double> pts) {
        // Degenerate intervals collapse to points (when both ends closed) or vanish.
        std::vector<Interval> kept;
        for (const auto& iv : ivs) {
            if (!(iv.lo <= iv.hi)) continue;
            if (iv.lo == iv.hi) {
                if (iv.lo_closed && iv.hi_closed && std::isfinite(iv.lo)) pts.push_back(iv.lo);
                continue;
            }
            kept.push_back(iv);
        }
        auto raw_contains = [&kept, &pts](double x) {
            for (const auto& iv : kept) {
                if (x < iv.lo || x > iv.hi) continue;
                if (x == iv.lo && !iv.lo_closed) continue;
                if (x == iv.hi && !iv.hi_closed) continue;
                return true;
            }
            return std::find(pts.begin(), pts.end(), x) != pts.end();
        };
        std::vector<double> bp;
        for (const auto& iv : kept) {
            if (std::isfinite(iv.lo)) bp.push_back(iv.lo);
            if (std::isfinite(iv.hi)) bp.push_back(iv.hi);
        }
        for (double p : pts)
            if (std::isfinite(p)) bp.push_back(p);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        return canonicalize(bp, raw_contains);
    }

    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::vector<double>& points() const { return points_; }
    bool is_empty() const { return intervals_.empty() && points_.empty(); }

    bool contains(double x) const {
        for (const auto& iv : intervals_) {
            if (x < iv.lo || x > iv.hi) continue;
            if (x == iv.lo && !iv.lo_closed) continue;
            if (x == iv.hi && !iv.hi_closed) continue;
            return true;
        }
        return std::binary_search(points_.begin(), points_.end(), x);
    }

    template <typename Op>
    static BorelSet combine(const BorelSet& a, const BorelSet& b, Op op) {
        std::vector<double> bp;
        auto collect = [&bp](const BorelSet& s) {
            for (const auto& iv : s.intervals_) {
                if (std::isfinite(iv.lo)) bp.push_back(iv.lo);
                if (std::isfinite(iv.hi)) bp.push_back(iv.hi);
            }
            bp.insert(bp.end(), s.points_.begin(), s.points_.end());
        };
        collect(a);
        collect(b);
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        auto member = [&a, &b, &op](double x) { return op(a.contains(x), b.contains(x)); };
        return canonicalize(bp, member);
    }

    friend BorelSet set_union(const BorelSet& a, const BorelSet& b) {
        return combine(a, b, [](bool x, bool y) { return x || y; });
    }
    friend BorelSet set_intersect(const BorelSet& a, const BorelSet& b) {
        return combine(a, b, [](bool x, bool y) { return x && y; });
    }
    friend BorelSet set_minus(const BorelSet& a, const BorelSet& b) {
        return combine(a, b, [](bool x, bool y) { return x && !y; });
    }
    friend BorelSet set_complement(const BorelSet& a) {
        return combine(a, BorelSet(), [](bool x, bool) { return !x; });
    }
    friend bool is_subset(const BorelSet& a, const BorelSet& b) {
        return set_minus(a, b).is_empty();
    }

    bool operator==(const BorelSet& o) const {
        if (points_ != o.points_ || intervals_.size() != o.intervals_.size()) return false;
        for (size_t i = 0; i < intervals_.size(); ++i) {
            const auto &x = intervals_[i], &y = o.intervals_[i];
            if (x.lo != y.lo || x.hi != y.hi || x.lo_closed != y.lo_closed ||
                x.hi_closed != y.hi_closed)
                return false;
        }
        return true;
    }
    bool operator!=(const BorelSet& o) const { return !(*this == o); }

    double leb_measure() const {
        double s = 0.0;
        for (const auto& iv : intervals_) {
            if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) return kInf;
            s += iv.hi - iv.lo;
        }
        return s;
    }

    /// Points whose every neighborhood meets the set in positive Lebesgue
    /// measure: the closure of the non-degenerate intervals, isolated points
    /// discarded.
    BorelSet leb_closure() const {
        std::vector<Interval> closed;
        for (const auto& iv : intervals_) {
            Interval c = iv;
            c.lo_closed = std::isfinite(c.lo);
            c.hi_closed = std::isfinite(c.hi);
            closed.push_back(c);
        }
        return from_raw(std::move(closed), {});
    }

    /// Topological closure.
    BorelSet closure() const {
        std::vector<Interval> closed;
        for (const auto& iv : intervals_) {
            Interval c = iv;
            c.lo_closed = std::isfinite(c.lo);
            c.hi_closed = std::isfinite(c.hi);
            closed.push_back(c);
        }
        return from_raw(std::move(closed), points_);
    }

    /// Preimage of this set under t -> alpha*t + beta, alpha != 0.
    BorelSet affine_preimage(double alpha, double beta) const {
        auto pull = [alpha, beta](double y) {
            if (!std::isfinite(y)) return alpha > 0 ? y : -y;
            return (y - beta) / alpha;
        };
        std::vector<Interval> ivs;
        for (const auto& iv : intervals_) {
            Interval r;
            if (alpha > 0) {
                r = Interval{pull(iv.lo), pull(iv.hi), iv.lo_closed, iv.hi_closed};
            } else {
                r = Interval{pull(iv.hi), pull(iv.lo), iv.hi_closed, iv.lo_closed};
            }
            ivs.push_back(r);
        }
        std::vector<double> pts;
        for (double p : points_) pts.push_back((p - beta) / alpha);
        return from_raw(std::move(ivs), std::move(pts));
    }

    bool bounded() const {
        for (const auto& iv : intervals_)
            if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) return false;
        return true;
    }

    /// sup |x| over the set; 0 on the empty set, +inf when unbounded.
    double sup_abs() const {
        double s = 0.0;
        for (const auto& iv : intervals_) s = std::max({s, std::abs(iv.lo), std::abs(iv.hi)});
        for (double p : points_) s = std::max(s, std::abs(p));
        return s;
    }

    /// Euclidean distance from a complex number to the set (viewed in the plane).
    double distance_to(Complex z) const {
        if (is_empty()) return kInf;
        double best = kInf;
        const double x = z.real(), y = z.imag();
        for (const auto& iv : intervals_) {
            const double cx = std::clamp(x, iv.lo, iv.hi);
            best = std::min(best, std::hypot(x - cx, y));
        }
        for (double p : points_) best = std::min(best, std::hypot(x - p, y));
        return best;
    }

    std::string to_string() const {
        if (is_empty()) return "{}";
        std::ostringstream os;
        auto num = [](double v) {
            if (v == kInf) return std::string("inf");
            if (v == -kInf) return std::string("-inf");
            std::ostringstream s;
            s.precision(17);
            s << v;
            return s.str();
        };
        bool first = true;
        for (const auto& iv : intervals_) {
            if (!first) os << 'u';
            first = false;
            os << (iv.lo_closed ? '[' : '(') << num(iv.lo) << ',' << num(iv.hi)
               << (iv.hi_closed ? ']' : ')');
        }
        for (double p : points_) {
            if (!first) os << 'u';
            first = false;
            os << '{' << num(p) << '}';
        }
        return os.str();
    }

    /// Grammar: `[0,1]u(2,3)u{5}`, `inf`/`-inf` endpoints, `{}` for the empty set.
    static BorelSet parse(const std::string& text) {
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
        if (s.empty() || s == "{}") return empty();
        std::vector<Interval> ivs;
        std::vector<double> pts;
        size_t pos = 0;
        auto parse_num = [&s, &pos]() {
            size_t start = pos;
            while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                                      s[pos] == '+' || s[pos] == '-' || s[pos] == '.' ||
                                      s[pos] == 'e' || s[pos] == 'E' || s[pos] == 'i' ||
                                      s[pos] == 'n' || s[pos] == 'f'))
                ++pos;
            std::string tok = s.substr(start, pos - start);
            if (tok == "inf" || tok == "+inf") return kInf;
            if (tok == "-inf") return -kInf;
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end == tok.c_str() || *end != '\0')
                throw ParseError("BorelSet: bad number '" + tok + "' at offset " +
                                 std::to_string(start));
            return v;
        };
        while (pos < s.size()) {
            const char open = s[pos];
            if (open == '{') {
                ++pos;
                const double p = parse_num();
                if (pos >= s.size() || s[pos] != '}')
                    throw ParseError("BorelSet: expected '}' at offset " + std::to_string(pos));
                ++pos;
                pts.push_back(p);
            } else if (open == '[' || open == '(') {
                ++pos;
                Interval iv;
                iv.lo_closed = open == '[';
                iv.lo = parse_num();
                if (pos >= s.size() || s[pos] != ',')
                    throw ParseError("BorelSet: expected ',' at offset " + std::to_string(pos));
                ++pos;
                iv.hi = parse_num();
                if (pos >= s.size() || (s[pos] != ']' && s[pos] != ')'))
                    throw ParseError("BorelSet: expected ']' or ')' at offset " +
                                     std::to_string(pos));
                iv.hi_closed = s[pos] == ']';
                ++pos;
                if (iv.lo > iv.hi)
                    throw ParseError("BorelSet: interval endpoints out of order");
                ivs.push_back(iv);
            } else {
                throw ParseError(std::string("BorelSet: unexpected '") + open + "' at offset " +
                                 std::to_string(pos));
            }
            if (pos < s.size()) {
                if (s[pos] != 'u')
                    throw ParseError("BorelSet: expected 'u' at offset " + std::to_string(pos));
                ++pos;
            }
        }
        return from_raw(std::move(ivs), std::move(pts));
    }

private:
    // Membership is constant on each open gap between consecutive breakpoints,
    // so a single representative sample per gap decides it.
    template <typename Member>
    static BorelSet canonicalize(const std::vector<double>& bp, Member member) {
        const int n = static_cast<int>(bp.size());
        std::vector<char> gap_mem(static_cast<size_t>(n) + 1);
        std::vector<char> pt_mem(static_cast<size_t>(n));
        for (int g = 0; g <= n; ++g) {
            double rep;
            if (n == 0)
                rep = 0.0;
            else if (g == 0)
                rep = bp[0] - 1.0;
            else if (g == n)
                rep = bp[static_cast<size_t>(n) - 1] + 1.0;
            else {
                rep = 0.5 * (bp[static_cast<size_t>(g) - 1] + bp[static_cast<size_t>(g)]);
                if (rep <= bp[static_cast<size_t>(g) - 1] || rep >= bp[static_cast<size_t>(g)]) {
                    gap_mem[static_cast<size_t>(g)] = 0;  // gap holds no representable double
                    continue;
                }
            }
            gap_mem[static_cast<size_t>(g)] = member(rep) ? 1 : 0;
        }
        for (int k = 0; k < n; ++k) pt_mem[static_cast<size_t>(k)] = member(bp[static_cast<size_t>(k)]) ? 1 : 0;

        BorelSet out;
        // Region sequence: gap 0, point 0, gap 1, ..., point n-1, gap n.
        auto is_mem = [&](int r) {
            return r % 2 == 0 ? gap_mem[static_cast<size_t>(r / 2)] != 0
                              : pt_mem[static_cast<size_t>((r - 1) / 2)] != 0;
        };
        int i = 0;
        const int last = 2 * n;
        while (i <= last) {
            if (!is_mem(i)) {
                ++i;
                continue;
            }
            int j = i;
            while (j + 1 <= last && is_mem(j + 1)) ++j;
            if (i == j && i % 2 == 1) {
                out.points_.push_back(bp[static_cast<size_t>((i - 1) / 2)]);
            } else {
                Interval iv;
                if (i % 2 == 0) {
                    const int g = i / 2;
                    iv.lo = g == 0 ? -kInf : bp[static_cast<size_t>(g) - 1];
                    iv.lo_closed = false;
                } else {
                    iv.lo = bp[static_cast<size_t>((i - 1) / 2)];
                    iv.lo_closed = true;
                }
                if (j % 2 == 0) {
                    const int g = j / 2;
                    iv.hi = g == n ? kInf : bp[static_cast<size_t>(g)];
                    iv.hi_closed = false;
                } else {
                    iv.hi = bp[static_cast<size_t>((j - 1) / 2)];
                    iv.hi_closed = true;
                }
                out.intervals_.push_back(iv);
            }
            i = j + 1;
        }
        return out;
    }

    std::vector<Interval> intervals_;
    std::vector<double> points_;
};

}  // namespace matmeasure
