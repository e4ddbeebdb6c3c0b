#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace insulair {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point p);

/// Volume of the n-dimensional unit ball.
double unit_ball_volume(int n);

/// CCW convex polygon. Construction normalizes the vertex list: duplicate
/// vertices are merged, orientation is forced CCW, collinear vertices are
/// dropped. Reflex vertices or a degenerate (zero-area) input are rejected
/// with std::invalid_argument.
class ConvexPolygon {
  public:
    explicit ConvexPolygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    double area() const;
    double perimeter() const;
    Point centroid() const;

    /// Euclidean distance from x to the closed polygon (0 inside).
    double distance(Point x) const;
    bool contains(Point x) const;

    /// Distance from an interior center to the boundary along direction
    /// angle theta. Throws if center is not strictly inside.
    double radial(Point center, double theta) const;

    ConvexPolygon scaled(double lambda) const;

  private:
    std::vector<Point> verts_;
};

/// Exact boundary of the Minkowski sum D + delta*B for a convex polygon D:
/// translated edge segments alternating with vertex-centered arcs of radius
/// delta. Arc turn angles sum to 2*pi around the boundary.
class OffsetBoundary {
  public:
    struct Segment {
        Point a, b;
    };
    struct Arc {
        Point center;      // polygon vertex
        double radius;     // = delta
        double start_ang;  // outward normal angle of previous edge
        double turn;       // exterior angle at the vertex, >= 0
    };

    OffsetBoundary(ConvexPolygon polygon, double delta);

    const ConvexPolygon& polygon() const { return poly_; }
    double delta() const { return delta_; }
    const std::vector<Segment>& segments() const { return segs_; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    double length() const;         // P(D) + 2*pi*delta
    double enclosed_area() const;  // |D| + P(D)*delta + pi*delta^2

    /// Ray-boundary intersection distance from an interior center.
    double radial(Point center, double theta) const;

  private:
    ConvexPolygon poly_;
    double delta_;
    std::vector<Segment> segs_;
    std::vector<Arc> arcs_;
};

/// Quermassintegrals (W_0, ..., W_n) of an n-dimensional convex body.
struct QuermassVector {
    int n = 0;
    std::vector<double> W;
};

QuermassVector quermass_2d(const ConvexPolygon& D);
QuermassVector quermass_ball(int n, double R);
/// Box quermassintegrals via elementary symmetric polynomials:
/// W_{n-k} = omega_{n-k} e_k(sides) / C(n,k).
QuermassVector quermass_box(const std::vector<double>& sides);

/// Steiner polynomial |K + delta*B| = sum_j C(n,j) W_j delta^j.
double steiner_volume(const QuermassVector& q, double delta);
/// P(K + delta*B) = n sum_j C(n-1,j) W_{j+1} delta^j.
double steiner_perimeter(const QuermassVector& q, double delta);

/// Aleksandrov-Fenchel margins (W_j/omega_n)^{1/(n-j)} - (W_i/omega_n)^{1/(n-i)}
/// for all 0 <= i < j <= n-1. Nonnegative for a convex body, all zero iff ball.
std::vector<double> af_margins(const QuermassVector& q);

/// Radius of the ball with the same W_{n-1}: R* = W_{n-1}/omega_n.
/// In the plane this is P/(2*pi).
double equivalent_ball_radius(const QuermassVector& q);

}  // namespace insulair
