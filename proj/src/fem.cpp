#include "insulair/fem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "insulair/radial.hpp"

namespace insulair {

namespace {

constexpr double kPi = std::numbers::pi;

struct Csr {
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const int n = static_cast<int>(row_ptr.size()) - 1;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
            y[i] = s;
        }
    }
};

struct Triplets {
    std::vector<int> rows, cols;
    std::vector<double> vals;

    void add(int r, int c, double v) {
        rows.push_back(r);
        cols.push_back(c);
        vals.push_back(v);
    }

    Csr to_csr(int n) const {
        std::vector<int> count(n + 1, 0);
        for (int r : rows) ++count[r + 1];
        for (int i = 0; i < n; ++i) count[i + 1] += count[i];
        std::vector<int> pos = count;
        std::vector<int> col(rows.size());
        std::vector<double> val(rows.size());
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const int p = pos[rows[k]]++;
            col[p] = cols[k];
            val[p] = vals[k];
        }
        // Merge duplicate column entries within each row.
        Csr out;
        out.row_ptr.assign(n + 1, 0);
        for (int i = 0; i < n; ++i) {
            const int lo = count[i], hi = count[i + 1];
            std::vector<std::pair<int, double>> row(hi - lo);
            for (int k = lo; k < hi; ++k) row[k - lo] = {col[k], val[k]};
            std::sort(row.begin(), row.end());
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (out.row_ptr[i + 1] > 0 && out.col.back() == row[k].first) {
                    out.val.back() += row[k].second;
                } else {
                    out.col.push_back(row[k].first);
                    out.val.push_back(row[k].second);
                    ++out.row_ptr[i + 1];
                }
            }
        }
        for (int i = 0; i < n; ++i) out.row_ptr[i + 1] += out.row_ptr[i];
        return out;
    }
};

double dot_vec(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct CgResult {
    int iterations = 0;
    double residual = 0.0;
};

// Jacobi-preconditioned CG, relative residual 1e-12, cap 50*sqrt(N).
CgResult pcg(const Csr& A, const std::vector<double>& b, std::vector<double>& x) {
    const int n = static_cast<int>(b.size());
    const int max_iter = static_cast<int>(50.0 * std::sqrt(double(n))) + 10;
    const double tol = 1e-12;

    std::vector<double> diag(n, 1.0);
    for (int i = 0; i < n; ++i)
        for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
            if (A.col[k] == i) diag[i] = A.val[k];

    std::vector<double> r(n), z(n), p(n), q(n);
    A.apply(x, r);
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double bnorm = std::sqrt(dot_vec(b, b));
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        return {0, 0.0};
    }
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    p = z;
    double rz = dot_vec(r, z);
    int it = 0;
    double rnorm = std::sqrt(dot_vec(r, r));
    while (rnorm > tol * bnorm && it < max_iter) {
        ++it;
        A.apply(p, q);
        const double alpha = rz / dot_vec(p, q);
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
        const double rz_new = dot_vec(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        rnorm = std::sqrt(dot_vec(r, r));
    }
    if (rnorm > tol * bnorm)
        throw std::runtime_error("pcg: no convergence within iteration cap");
    return {it, rnorm / bnorm};
}

double tri_area(Point a, Point b, Point c) { return 0.5 * cross(b - a, c - a); }

// P1 stiffness matrix of a triangle (exact).
std::array<std::array<double, 3>, 3> stiffness_local(Point a, Point b, Point c) {
    const double area = tri_area(a, b, c);
    const std::array<Point, 3> g = {Point{b.y - c.y, c.x - b.x},
                                    Point{c.y - a.y, a.x - c.x},
                                    Point{a.y - b.y, b.x - a.x}};
    std::array<std::array<double, 3>, 3> K{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) K[i][j] = dot(g[i], g[j]) / (4.0 * area);
    return K;
}

}  // namespace

Shape Shape::disk(double radius, Point center) {
    if (!(radius > 0.0)) throw std::invalid_argument("Shape::disk: radius <= 0");
    Shape s;
    s.kind = Kind::Disk;
    s.radius = radius;
    s.center_pt = center;
    return s;
}

Shape Shape::polygon(ConvexPolygon p) {
    Shape s;
    s.kind = Kind::Polygon;
    s.poly = std::move(p);
    return s;
}

double Shape::area() const {
    return kind == Kind::Disk ? kPi * radius * radius : poly->area();
}

double Shape::perimeter() const {
    return kind == Kind::Disk ? 2.0 * kPi * radius : poly->perimeter();
}

Point Shape::center() const {
    return kind == Kind::Disk ? center_pt : poly->centroid();
}

double Shape::radial(Point c, double theta) const {
    if (kind == Kind::Polygon) return poly->radial(c, theta);
    // Ray from c to the circle |x - center_pt| = radius.
    const Point dir{std::cos(theta), std::sin(theta)};
    const Point oc = c - center_pt;
    const double b = dot(dir, oc);
    const double disc = b * b - (dot(oc, oc) - radius * radius);
    if (disc < 0.0) throw std::invalid_argument("Shape::radial: center outside disk");
    return -b + std::sqrt(disc);
}

AnnulusGeometry annulus_for(const Shape& inner, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("annulus_for: delta <= 0");
    const Point c = inner.center();
    AnnulusGeometry g;
    g.center = c;
    if (inner.kind == Shape::Kind::Disk) {
        const double r_in = inner.radius, r_out = inner.radius + delta;
        g.inner_radius = [r_in](double) { return r_in; };
        g.outer_radius = [r_out](double) { return r_out; };
    } else {
        auto poly = std::make_shared<ConvexPolygon>(*inner.poly);
        auto offset = std::make_shared<OffsetBoundary>(*inner.poly, delta);
        g.inner_radius = [poly, c](double t) { return poly->radial(c, t); };
        g.outer_radius = [offset, c](double t) { return offset->radial(c, t); };
    }
    return g;
}

AnnulusGeometry annulus_between(double inner_disk_R, const ConvexPolygon& outer, Point center) {
    if (!(inner_disk_R > 0.0)) throw std::invalid_argument("annulus_between: R <= 0");
    auto out = std::make_shared<ConvexPolygon>(outer);
    AnnulusGeometry g;
    g.center = center;
    g.inner_radius = [inner_disk_R](double) { return inner_disk_R; };
    g.outer_radius = [out, center](double t) { return out->radial(center, t); };
    return g;
}

AnnularMesh build_mesh(const AnnulusGeometry& geom, Resolution res) {
    if (res.n_theta < 8 || res.n_s < 2)
        throw std::invalid_argument("build_mesh: resolution below minimum (8, 2)");
    const int nt = res.n_theta, ns = res.n_s;

    AnnularMesh mesh;
    mesh.resolution = res;
    mesh.center = geom.center;
    mesh.nodes.resize(std::size_t(nt) * (ns + 1));

    std::vector<double> r_in(nt), r_out(nt);
    for (int i = 0; i < nt; ++i) {
        const double theta = 2.0 * kPi * i / nt;
        r_in[i] = geom.inner_radius(theta);
        r_out[i] = geom.outer_radius(theta);
        if (!(r_in[i] > 0.0) || !(r_out[i] > r_in[i]))
            throw std::invalid_argument("build_mesh: outer boundary does not contain inner");
        for (int j = 0; j <= ns; ++j) {
            const double r = r_in[i] + (r_out[i] - r_in[i]) * j / ns;
            mesh.nodes[mesh.node_index(i, j)] =
                geom.center + Point{r * std::cos(theta), r * std::sin(theta)};
        }
    }

    for (int i = 0; i < nt; ++i) {
        const int ip = (i + 1) % nt;
        for (int j = 0; j < ns; ++j) {
            // Counterclockwise quad: radially out at theta_i, along the outer
            // ring, radially in at theta_{i+1}.
            const int a = mesh.node_index(i, j);
            const int b = mesh.node_index(i, j + 1);
            const int c = mesh.node_index(ip, j + 1);
            const int d = mesh.node_index(ip, j);
            const double diag_ac = norm(mesh.nodes[a] - mesh.nodes[c]);
            const double diag_bd = norm(mesh.nodes[b] - mesh.nodes[d]);
            if (diag_ac <= diag_bd) {
                mesh.triangles.push_back({a, b, c});
                mesh.triangles.push_back({a, c, d});
            } else {
                mesh.triangles.push_back({a, b, d});
                mesh.triangles.push_back({b, c, d});
            }
        }
    }

    for (int i = 0; i < nt; ++i) {
        mesh.inner_boundary_nodes.push_back(mesh.node_index(i, 0));
        const int a = mesh.node_index(i, ns);
        const int b = mesh.node_index((i + 1) % nt, ns);
        mesh.outer_boundary_edges.push_back({a, b});
        mesh.outer_edge_lengths.push_back(norm(mesh.nodes[b] - mesh.nodes[a]));
    }
    return mesh;
}

FemSolution solve(const AnnularMesh& mesh, double beta) {
    const bool dirichlet = is_dirichlet(beta);
    if (!dirichlet && !(beta >= 0.0)) throw std::invalid_argument("solve: beta < 0");
    const int n = static_cast<int>(mesh.nodes.size());

    // Constraint values: 1 on the inner ring, 0 on the outer ring in
    // Dirichlet mode.
    std::vector<char> fixed(n, 0);
    std::vector<double> u(n, 0.0);
    for (int i : mesh.inner_boundary_nodes) {
        fixed[i] = 1;
        u[i] = 1.0;
    }
    if (dirichlet) {
        for (const auto& [a, b] : mesh.outer_boundary_edges) {
            fixed[a] = 1;
            u[a] = 0.0;
        }
    }

    Triplets K_trip, M_trip;
    for (const auto& t : mesh.triangles) {
        const auto Ke = stiffness_local(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) K_trip.add(t[i], t[j], Ke[i][j]);
    }
    if (!dirichlet) {
        for (std::size_t e = 0; e < mesh.outer_boundary_edges.size(); ++e) {
            const auto [a, b] = mesh.outer_boundary_edges[e];
            const double L = mesh.outer_edge_lengths[e];
            // Exact P1 edge mass matrix L/6 * [[2,1],[1,2]].
            M_trip.add(a, a, L / 3.0);
            M_trip.add(b, b, L / 3.0);
            M_trip.add(a, b, L / 6.0);
            M_trip.add(b, a, L / 6.0);
        }
    }
    const Csr K = K_trip.to_csr(n);
    const Csr M = M_trip.to_csr(n);

    // Free-dof system: A_ff x = -A_fc u_c with A = K + beta M.
    std::vector<int> free_id(n, -1);
    std::vector<int> free_nodes;
    for (int i = 0; i < n; ++i)
        if (!fixed[i]) {
            free_id[i] = static_cast<int>(free_nodes.size());
            free_nodes.push_back(i);
        }
    const int nf = static_cast<int>(free_nodes.size());
    if (nf == 0) throw std::runtime_error("solve: no free degrees of freedom");

    auto assemble_reduced = [&](const Csr& A, double scale, Triplets& trip,
                                std::vector<double>& rhs) {
        for (int i = 0; i < n; ++i) {
            if (fixed[i]) continue;
            for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
                const int j = A.col[k];
                const double v = scale * A.val[k];
                if (fixed[j])
                    rhs[free_id[i]] -= v * u[j];
                else
                    trip.add(free_id[i], free_id[j], v);
            }
        }
    };
    Triplets A_trip;
    std::vector<double> rhs(nf, 0.0);
    assemble_reduced(K, 1.0, A_trip, rhs);
    if (!dirichlet && beta > 0.0) assemble_reduced(M, beta, A_trip, rhs);
    const Csr A = A_trip.to_csr(nf);

    std::vector<double> x(nf, 0.0);
    const CgResult cg = pcg(A, rhs, x);
    for (int i = 0; i < nf; ++i) u[free_nodes[i]] = x[i];

    FemSolution sol;
    sol.u = std::move(u);
    sol.cg_iterations = cg.iterations;
    sol.cg_residual = cg.residual;

    std::vector<double> Ku(n, 0.0), Mu(n, 0.0);
    K.apply(sol.u, Ku);
    double energy = dot_vec(sol.u, Ku);
    double boundary = 0.0;
    if (!dirichlet) {
        M.apply(sol.u, Mu);
        energy += beta * dot_vec(sol.u, Mu);
    }
    for (std::size_t e = 0; e < mesh.outer_boundary_edges.size(); ++e) {
        const auto [a, b] = mesh.outer_boundary_edges[e];
        boundary += 0.5 * mesh.outer_edge_lengths[e] * (sol.u[a] + sol.u[b]);
    }
    sol.energy = energy;
    sol.boundary_integral = boundary;
    sol.dispersion = energy;
    return sol;
}

double dispersion_of(const Shape& D, double beta, double delta, Resolution res) {
    if (!(delta >= 0.0)) throw std::invalid_argument("dispersion_of: delta < 0");
    if (delta == 0.0) {
        if (is_dirichlet(beta))
            throw std::invalid_argument("dispersion_of: Dirichlet with delta = 0");
        return beta * D.perimeter();
    }
    if (!is_dirichlet(beta) && beta == 0.0) return 0.0;
    const AnnularMesh mesh = build_mesh(annulus_for(D, delta), res);
    return solve(mesh, beta).dispersion;
}

double dispersion_general(double inner_disk_R, const ConvexPolygon& outer, Point center,
                          double beta, Resolution res) {
    if (!is_dirichlet(beta) && beta == 0.0) return 0.0;
    const AnnularMesh mesh = build_mesh(annulus_between(inner_disk_R, outer, center), res);
    return solve(mesh, beta).dispersion;
}

std::vector<ConvergenceRow> convergence_study(const Shape& D, double beta, double delta,
                                              const std::vector<Resolution>& resolutions) {
    std::vector<ConvergenceRow> rows;
    for (const Resolution& res : resolutions) {
        ConvergenceRow row;
        row.res = res;
        row.h = 1.0 / res.n_s;
        row.value = dispersion_of(D, beta, delta, res);
        row.rate = std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
    }
    // Richardson-style observed order from successive triples.
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double d1 = std::abs(rows[i - 1].value - rows[i - 2].value);
        const double d2 = std::abs(rows[i].value - rows[i - 1].value);
        const double hr = rows[i - 1].h / rows[i].h;
        if (d2 > 0.0 && d1 > 0.0 && hr > 1.0) rows[i].rate = std::log(d1 / d2) / std::log(hr);
    }
    return rows;
}

}  // namespace insulair
