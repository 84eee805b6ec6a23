#pragma once

/**
 * @file newton_polygon.hpp
 * @brief Newton polygons of Laurent polynomials and their Minkowski sums.
 *
 * A polygon is stored as its hull vertices in counter-clockwise order,
 * starting at the lexicographically smallest vertex, with collinear points
 * removed. Degenerate hulls keep 1 (a point) or 2 (a segment) vertices, so
 * two polygons are equal iff their vertex lists are equal.
 */

#include "fourbar/laurent.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

namespace fourbar {

class NewtonPolygon {
public:
    NewtonPolygon() = default;

    /// Convex hull of a nonempty point set (Andrew's monotone chain).
    static NewtonPolygon hull(std::span<const Exponent> points) {
        if (points.empty()) throw std::invalid_argument("Newton polygon of an empty support");
        std::vector<Exponent> pts(points.begin(), points.end());
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        NewtonPolygon np;
        if (pts.size() <= 2) {
            np.vertices_ = pts;
            return np;
        }
        std::vector<Exponent> h(2 * pts.size());
        std::size_t k = 0;
        for (const auto& p : pts) {
            while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
            h[k++] = p;
        }
        for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
            while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
            h[k++] = pts[i];
        }
        h.resize(k - 1);
        // All points collinear: the chain degenerates to the two endpoints.
        if (h.size() == 2 || (h.size() > 2 && area2(h) == 0)) h = {pts.front(), pts.back()};
        np.vertices_ = std::move(h);
        return np;
    }

    [[nodiscard]] const std::vector<Exponent>& vertices() const { return vertices_; }
    [[nodiscard]] std::size_t size() const { return vertices_.size(); }
    [[nodiscard]] bool is_point() const { return vertices_.size() == 1; }
    [[nodiscard]] bool is_segment() const { return vertices_.size() == 2; }

    /// True if p lies inside or on the boundary.
    [[nodiscard]] bool contains(Exponent p) const {
        const auto& v = vertices_;
        if (v.empty()) return false;
        if (v.size() == 1) return v[0] == p;
        if (v.size() == 2) {
            if (cross(v[0], v[1], p) != 0) return false;
            return std::min(v[0].e1, v[1].e1) <= p.e1 && p.e1 <= std::max(v[0].e1, v[1].e1) &&
                   std::min(v[0].e2, v[1].e2) <= p.e2 && p.e2 <= std::max(v[0].e2, v[1].e2);
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            if (cross(v[i], v[(i + 1) % v.size()], p) < 0) return false;
        return true;
    }

    /// Convexity makes vertex containment sufficient.
    [[nodiscard]] bool contains(const NewtonPolygon& other) const {
        return std::all_of(other.vertices_.begin(), other.vertices_.end(),
                           [this](Exponent p) { return contains(p); });
    }

    [[nodiscard]] NewtonPolygon translated(Exponent t) const {
        NewtonPolygon np;
        for (auto p : vertices_) np.vertices_.push_back(p + t);
        return np;
    }

    friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;

    static std::int64_t cross(Exponent o, Exponent a, Exponent b) {
        return (a.e1 - o.e1) * (b.e2 - o.e2) - (a.e2 - o.e2) * (b.e1 - o.e1);
    }

private:
    static std::int64_t area2(const std::vector<Exponent>& h) {
        std::int64_t a = 0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const auto& p = h[i];
            const auto& q = h[(i + 1) % h.size()];
            a += p.e1 * q.e2 - p.e2 * q.e1;
        }
        return a;
    }

    std::vector<Exponent> vertices_;
};

inline std::ostream& operator<<(std::ostream& os, const NewtonPolygon& np) {
    os << '[';
    for (std::size_t i = 0; i < np.size(); ++i) os << (i ? " " : "") << np.vertices()[i];
    return os << ']';
}

template<RealField R>
NewtonPolygon newton_polygon(const LaurentPoly<R>& p) {
    if (p.is_zero()) throw std::invalid_argument("Newton polygon of the zero polynomial");
    auto s = p.support();
    return NewtonPolygon::hull(s);
}

/// A + B, as the hull of all pairwise vertex sums.
inline NewtonPolygon minkowski_sum(const NewtonPolygon& a, const NewtonPolygon& b) {
    std::vector<Exponent> sums;
    sums.reserve(a.size() * b.size());
    for (auto p : a.vertices())
        for (auto q : b.vertices()) sums.push_back(p + q);
    return NewtonPolygon::hull(sums);
}

}  // namespace fourbar
