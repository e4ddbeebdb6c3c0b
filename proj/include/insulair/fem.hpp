#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "insulair/geometry.hpp"

namespace insulair {

/// Inner conductor for the 2D solver: a disk or a convex polygon.
struct Shape {
    enum class Kind { Disk, Polygon };

    static Shape disk(double radius, Point center = {0.0, 0.0});
    static Shape polygon(ConvexPolygon poly);

    Kind kind = Kind::Disk;
    double radius = 1.0;
    Point center_pt{0.0, 0.0};
    std::optional<ConvexPolygon> poly;

    double area() const;
    double perimeter() const;
    /// Meshing center: disk center, or polygon centroid.
    Point center() const;
    double radial(Point c, double theta) const;
};

struct Resolution {
    int n_theta = 256;
    int n_s = 64;
};

/// Star-shaped annulus between two boundaries, both parametrized by their
/// radial distance from a common interior center.
struct AnnulusGeometry {
    Point center;
    std::function<double(double)> inner_radius;
    std::function<double(double)> outer_radius;
};

AnnulusGeometry annulus_for(const Shape& inner, double delta);
AnnulusGeometry annulus_between(double inner_disk_R, const ConvexPolygon& outer, Point center);

/// Structured polar-graph triangulation of an annulus. Nodes live on rays
/// theta_i at normalized radial levels s_j; each quad is split along its
/// shorter diagonal.
struct AnnularMesh {
    std::vector<Point> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> inner_boundary_nodes;                    // Dirichlet u = 1
    std::vector<std::pair<int, int>> outer_boundary_edges;    // Robin ring
    std::vector<double> outer_edge_lengths;
    Resolution resolution;
    Point center;

    int node_index(int i, int j) const { return i * (resolution.n_s + 1) + j; }
};

AnnularMesh build_mesh(const AnnulusGeometry& geom, Resolution res);

struct FemSolution {
    std::vector<double> u;
    double energy = 0.0;             // u'Ku + beta u'Mu
    double boundary_integral = 0.0;  // int_{outer} u
    double dispersion = 0.0;
    int cg_iterations = 0;
    double cg_residual = 0.0;
};

/// Linear Lagrange FEM for the annulus problem: u = 1 on the inner boundary,
/// Robin du/dnu + beta u = 0 (or Dirichlet u = 0 for the sentinel) on the
/// outer boundary. Dirichlet rows are eliminated; the SPD system is solved by
/// Jacobi-preconditioned conjugate gradients.
FemSolution solve(const AnnularMesh& mesh, double beta);

/// Offset -> mesh -> solve pipeline for I_{beta,delta}(D).
/// delta = 0 returns beta * P(D) by definition.
double dispersion_of(const Shape& D, double beta, double delta, Resolution res);

/// Dispersion of a disk conductor inside a general convex outer boundary
/// (non-constant layer thickness).
double dispersion_general(double inner_disk_R, const ConvexPolygon& outer, Point center,
                          double beta, Resolution res);

struct ConvergenceRow {
    Resolution res;
    double h = 0.0;  // 1 / n_s
    double value = 0.0;
    double rate = 0.0;  // NaN when undefined
};

std::vector<ConvergenceRow> convergence_study(const Shape& D, double beta, double delta,
                                              const std::vector<Resolution>& resolutions);

}  // namespace insulair
