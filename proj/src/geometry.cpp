#include "insulair/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace insulair {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * double(n - i) / double(i + 1);
    return r;
}

double point_segment_distance(Point x, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(x - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(x - (a + t * ab));
}

// Smallest positive ray parameter hitting segment [a,b], or +inf.
double ray_segment_hit(Point origin, Point dir, Point a, Point b) {
    const Point e = b - a;
    const double denom = cross(dir, e);
    if (std::abs(denom) < 1e-300) return std::numeric_limits<double>::infinity();
    const Point ao = a - origin;
    const double t = cross(ao, e) / denom;
    const double s = cross(ao, dir) / denom;
    if (t <= 0.0 || s < -1e-12 || s > 1.0 + 1e-12)
        return std::numeric_limits<double>::infinity();
    return t;
}

}  // namespace

double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point p) { return std::hypot(p.x, p.y); }

double unit_ball_volume(int n) {
    if (n < 0) throw std::invalid_argument("unit_ball_volume: n < 0");
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices) {
    if (vertices.size() < 3)
        throw std::invalid_argument("ConvexPolygon: fewer than 3 vertices");

    // Scale-aware tolerances from the bounding-box diameter.
    double lox = vertices[0].x, hix = lox, loy = vertices[0].y, hiy = loy;
    for (const Point& p : vertices) {
        lox = std::min(lox, p.x);
        hix = std::max(hix, p.x);
        loy = std::min(loy, p.y);
        hiy = std::max(hiy, p.y);
    }
    const double diam = std::hypot(hix - lox, hiy - loy);
    if (!(diam > 0.0))
        throw std::invalid_argument("ConvexPolygon: degenerate vertex set");
    const double merge_tol = 1e-12 * diam;

    // Dedupe consecutive (and wrap-around) near-coincident vertices.
    std::vector<Point> v;
    for (const Point& p : vertices) {
        if (v.empty() || norm(p - v.back()) > merge_tol) v.push_back(p);
    }
    while (v.size() > 1 && norm(v.front() - v.back()) <= merge_tol) v.pop_back();
    if (v.size() < 3) throw std::invalid_argument("ConvexPolygon: degenerate after dedupe");

    double signed_area = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        signed_area += cross(v[i], v[(i + 1) % v.size()]);
    signed_area *= 0.5;
    if (std::abs(signed_area) <= merge_tol * merge_tol)
        throw std::invalid_argument("ConvexPolygon: zero area");
    if (signed_area < 0.0) std::reverse(v.begin(), v.end());

    // Reject genuinely reflex input on the cyclic sequence.
    const double cross_tol = 1e-12 * diam * diam;
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point a = v[(i + m - 1) % m], b = v[i], c = v[(i + 1) % m];
        if (cross(b - a, c - b) < -cross_tol)
            throw std::invalid_argument("ConvexPolygon: reflex vertex");
    }

    // Remove collinear and near-duplicate vertices with a monotone-chain
    // hull: turning is judged against the last *kept* vertex, which is
    // robust when many consecutive vertices nearly coincide.
    std::sort(v.begin(), v.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    auto build = [&](auto begin, auto end) {
        std::vector<Point> chain;
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= 2 &&
                   cross(chain.back() - chain[chain.size() - 2], *it - chain.back()) <=
                       cross_tol)
                chain.pop_back();
            chain.push_back(*it);
        }
        return chain;
    };
    std::vector<Point> lower = build(v.begin(), v.end());
    std::vector<Point> upper = build(v.rbegin(), v.rend());
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3)
        throw std::invalid_argument("ConvexPolygon: degenerate after collinear removal");
    verts_ = std::move(lower);
}

double ConvexPolygon::area() const {
    double s = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        s += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
    return 0.5 * s;
}

double ConvexPolygon::perimeter() const {
    double s = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
        s += norm(verts_[(i + 1) % verts_.size()] - verts_[i]);
    return s;
}

Point ConvexPolygon::centroid() const {
    double a = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const Point p = verts_[i], q = verts_[(i + 1) % verts_.size()];
        const double w = cross(p, q);
        a += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    return {cx / (3.0 * a), cy / (3.0 * a)};
}

bool ConvexPolygon::contains(Point x) const {
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const Point a = verts_[i], b = verts_[(i + 1) % verts_.size()];
        if (cross(b - a, x - a) < 0.0) return false;
    }
    return true;
}

double ConvexPolygon::distance(Point x) const {
    if (contains(x)) return 0.0;
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < verts_.size(); ++i)
        d = std::min(d, point_segment_distance(x, verts_[i], verts_[(i + 1) % verts_.size()]));
    return d;
}

double ConvexPolygon::radial(Point center, double theta) const {
    for (std::size_t i = 0; i < verts_.size(); ++i) {
        const Point a = verts_[i], b = verts_[(i + 1) % verts_.size()];
        if (cross(b - a, center - a) <= 0.0)
            throw std::invalid_argument("ConvexPolygon::radial: center not strictly inside");
    }
    const Point dir{std::cos(theta), std::sin(theta)};
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < verts_.size(); ++i)
        t = std::min(t, ray_segment_hit(center, dir, verts_[i], verts_[(i + 1) % verts_.size()]));
    if (!std::isfinite(t))
        throw std::runtime_error("ConvexPolygon::radial: no boundary intersection");
    return t;
}

ConvexPolygon ConvexPolygon::scaled(double lambda) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("ConvexPolygon::scaled: lambda <= 0");
    std::vector<Point> v;
    v.reserve(verts_.size());
    for (const Point& p : verts_) v.push_back(lambda * p);
    return ConvexPolygon(std::move(v));
}

OffsetBoundary::OffsetBoundary(ConvexPolygon polygon, double delta)
    : poly_(std::move(polygon)), delta_(delta) {
    if (delta < 0.0)
        throw std::invalid_argument("OffsetBoundary: negative offset not supported");
    const auto& v = poly_.vertices();
    const std::size_t m = v.size();
    std::vector<double> normal_ang(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Point e = v[(i + 1) % m] - v[i];
        normal_ang[i] = std::atan2(e.y, e.x) - kPi / 2.0;  // outward normal of a CCW edge
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double na = normal_ang[i];
        const Point n{std::cos(na), std::sin(na)};
        segs_.push_back({v[i] + delta * n, v[(i + 1) % m] + delta * n});
        const double prev = normal_ang[i];
        double turn = normal_ang[(i + 1) % m] - prev;
        while (turn < 0.0) turn += 2.0 * kPi;
        while (turn >= 2.0 * kPi) turn -= 2.0 * kPi;
        arcs_.push_back({v[(i + 1) % m], delta, prev, turn});
    }
}

double OffsetBoundary::length() const { return poly_.perimeter() + 2.0 * kPi * delta_; }

double OffsetBoundary::enclosed_area() const {
    return poly_.area() + poly_.perimeter() * delta_ + kPi * delta_ * delta_;
}

double OffsetBoundary::radial(Point center, double theta) const {
    if (delta_ == 0.0) return poly_.radial(center, theta);
    if (poly_.distance(center) >= delta_)
        throw std::invalid_argument("OffsetBoundary::radial: center outside region");
    const Point dir{std::cos(theta), std::sin(theta)};
    double best = 0.0;
    for (const Segment& s : segs_) {
        const double t = ray_segment_hit(center, dir, s.a, s.b);
        if (std::isfinite(t)) best = std::max(best, t);
    }
    for (const Arc& a : arcs_) {
        // |center + t*dir - a.center| = radius
        const Point oc = center - a.center;
        const double b = dot(dir, oc);
        const double c = dot(oc, oc) - a.radius * a.radius;
        const double disc = b * b - c;
        if (disc < 0.0) continue;
        const double sq = std::sqrt(disc);
        for (const double t : {-b + sq, -b - sq}) {
            if (t <= 0.0) continue;
            const Point hit = center + t * dir - a.center;
            double ang = std::atan2(hit.y, hit.x) - a.start_ang;
            while (ang < 0.0) ang += 2.0 * kPi;
            while (ang >= 2.0 * kPi) ang -= 2.0 * kPi;
            if (ang <= a.turn + 1e-12) best = std::max(best, t);
        }
    }
    if (best <= 0.0)
        throw std::runtime_error("OffsetBoundary::radial: no boundary intersection");
    return best;
}

QuermassVector quermass_2d(const ConvexPolygon& D) {
    return {2, {D.area(), 0.5 * D.perimeter(), kPi}};
}

QuermassVector quermass_ball(int n, double R) {
    if (n < 2) throw std::invalid_argument("quermass_ball: n < 2");
    if (!(R > 0.0)) throw std::invalid_argument("quermass_ball: R <= 0");
    const double wn = unit_ball_volume(n);
    QuermassVector q{n, std::vector<double>(n + 1)};
    for (int j = 0; j <= n; ++j) q.W[j] = wn * std::pow(R, n - j);
    return q;
}

QuermassVector quermass_box(const std::vector<double>& sides) {
    const int n = static_cast<int>(sides.size());
    if (n < 1) throw std::invalid_argument("quermass_box: empty side list");
    for (double s : sides)
        if (!(s > 0.0)) throw std::invalid_argument("quermass_box: nonpositive side");

    // Elementary symmetric polynomials e_0..e_n of the side lengths.
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int k = std::min(i + 1, n); k >= 1; --k) e[k] += sides[i] * e[k - 1];

    QuermassVector q{n, std::vector<double>(n + 1)};
    for (int k = 0; k <= n; ++k)
        q.W[n - k] = unit_ball_volume(n - k) * e[k] / binomial(n, k);
    return q;
}

double steiner_volume(const QuermassVector& q, double delta) {
    double s = 0.0;
    for (int j = 0; j <= q.n; ++j) s += binomial(q.n, j) * q.W[j] * std::pow(delta, j);
    return s;
}

double steiner_perimeter(const QuermassVector& q, double delta) {
    double s = 0.0;
    for (int j = 0; j <= q.n - 1; ++j)
        s += binomial(q.n - 1, j) * q.W[j + 1] * std::pow(delta, j);
    return q.n * s;
}

std::vector<double> af_margins(const QuermassVector& q) {
    const double wn = unit_ball_volume(q.n);
    std::vector<double> out;
    for (int i = 0; i < q.n; ++i)
        for (int j = i + 1; j < q.n; ++j)
            out.push_back(std::pow(q.W[j] / wn, 1.0 / (q.n - j)) -
                          std::pow(q.W[i] / wn, 1.0 / (q.n - i)));
    return out;
}

double equivalent_ball_radius(const QuermassVector& q) {
    return q.W[q.n - 1] / unit_ball_volume(q.n);
}

}  // namespace insulair
