#include "dualnest/modulus.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>

namespace dualnest {

namespace {

// Even-odd scanline fill: marks cell centers inside the closed polyline.
void fill_mask(const Polyline& poly, const GridDiscretization& grid,
               std::vector<char>& mask) {
    const int n = grid.n;
    mask.assign(static_cast<size_t>(n) * n, 0);
    const size_t m = poly.size();
    std::vector<double> xs;
    for (int j = 0; j < n; ++j) {
        const double y = grid.box.ymin + (j + 0.5) * grid.h;
        xs.clear();
        for (size_t i = 0, k = m - 1; i < m; k = i++) {
            const Complex& a = poly[k];
            const Complex& b = poly[i];
            if ((a.imag() > y) != (b.imag() > y)) {
                xs.push_back(a.real() + (y - a.imag()) / (b.imag() - a.imag()) *
                                            (b.real() - a.real()));
            }
        }
        std::sort(xs.begin(), xs.end());
        for (size_t k = 0; k + 1 < xs.size(); k += 2) {
            int i0 = static_cast<int>(std::ceil((xs[k] - grid.box.xmin) / grid.h - 0.5));
            int i1 = static_cast<int>(std::floor((xs[k + 1] - grid.box.xmin) / grid.h - 0.5));
            i0 = std::max(i0, 0);
            i1 = std::min(i1, n - 1);
            for (int i = i0; i <= i1; ++i) mask[static_cast<size_t>(j) * n + i] = 1;
        }
    }
}

ModulusEstimate solve_once(const AnnulusRegion& region, int resolution,
                           double tolerance) {
    GridDiscretization grid = discretize(region, resolution);
    const int n = grid.n;
    auto idx = [n](int i, int j) { return static_cast<size_t>(j) * n + i; };

    ModulusEstimate est;
    est.resolution = resolution;

    // Pinch scan: inner cells within 3 cells of an exterior cell.
    const int reach = 3;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (grid.cells[idx(i, j)] != Cell::Inner) continue;
            for (int dj = -reach; dj <= reach; ++dj) {
                for (int di = -reach; di <= reach; ++di) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
                    if (grid.cells[idx(ii, jj)] == Cell::Exterior) {
                        est.pinch_evidence.push_back(grid.center(i, j));
                        di = dj = reach + 1;  // break both loops
                    }
                }
            }
        }
    }
    if (!est.pinch_evidence.empty()) {
        est.degenerate = true;
        est.value = 0.0;
        return est;
    }

    // Number the interior unknowns.
    std::vector<int> unknown(grid.cells.size(), -1);
    int count = 0;
    for (size_t k = 0; k < grid.cells.size(); ++k) {
        if (grid.cells[k] == Cell::Interior) unknown[k] = count++;
    }
    if (count == 0) throw ResolutionTooCoarse("no interior cells at this resolution");

    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> trips;
    trips.reserve(static_cast<size_t>(count) * 5);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count);
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int row = unknown[idx(i, j)];
            if (row < 0) continue;
            double diag = 0.0;
            for (int d = 0; d < 4; ++d) {
                const int ii = i + di[d], jj = j + dj[d];
                if (ii < 0 || jj < 0 || ii >= n || jj >= n) {
                    diag += 1.0;  // padded border counts as exterior (u = 1)
                    rhs[row] += 1.0;
                    continue;
                }
                const Cell c = grid.cells[idx(ii, jj)];
                diag += 1.0;
                if (c == Cell::Interior) {
                    trips.emplace_back(row, unknown[idx(ii, jj)], -1.0);
                } else if (c == Cell::Exterior) {
                    rhs[row] += 1.0;
                }  // Inner: u = 0 contributes nothing
            }
            trips.emplace_back(row, row, diag);
        }
    }
    Eigen::SparseMatrix<double> lap(count, count);
    lap.setFromTriplets(trips.begin(), trips.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(lap);
    Eigen::VectorXd u = chol.solve(rhs);
    if (chol.info() != Eigen::Success) {
        throw Disconnected("harmonic solve failed");
    }
    // One step of iterative refinement; report the final residual.
    Eigen::VectorXd r = rhs - lap * u;
    u += chol.solve(r);
    r = rhs - lap * u;
    est.residual = r.norm() / std::max(rhs.norm(), 1e-300);
    if (est.residual > tolerance * 1e3) {
        throw Disconnected("harmonic solve failed to reach residual tolerance");
    }

    // Dirichlet energy over all grid edges adjacent to the interior.
    auto value_at = [&](int i, int j) -> double {
        const Cell c = grid.cells[idx(i, j)];
        if (c == Cell::Exterior) return 1.0;
        if (c == Cell::Inner) return 0.0;
        return u[unknown[idx(i, j)]];
    };
    double energy = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const bool here = grid.cells[idx(i, j)] == Cell::Interior;
            if (i + 1 < n) {
                const bool right = grid.cells[idx(i + 1, j)] == Cell::Interior;
                if (here || right) {
                    const double d = value_at(i + 1, j) - value_at(i, j);
                    energy += d * d;
                }
            }
            if (j + 1 < n) {
                const bool up = grid.cells[idx(i, j + 1)] == Cell::Interior;
                if (here || up) {
                    const double d = value_at(i, j + 1) - value_at(i, j);
                    energy += d * d;
                }
            }
        }
    }
    if (energy <= 0.0) throw ResolutionTooCoarse("zero Dirichlet energy");
    est.value = 1.0 / energy;
    return est;
}

}  // namespace

GridDiscretization discretize(const AnnulusRegion& region, int resolution) {
    if (region.outer.size() < 3 || region.inner.size() < 3) {
        throw ResolutionTooCoarse("boundary polylines too short");
    }
    GridDiscretization grid;
    grid.n = resolution;
    BoundingBox bb = bounding_box(region.outer);
    // Square box with a 2-cell margin so the grid border is exterior.
    const double side = std::max(bb.width(), bb.height());
    const double h = side / (resolution - 4);
    const double cx = 0.5 * (bb.xmin + bb.xmax);
    const double cy = 0.5 * (bb.ymin + bb.ymax);
    grid.h = h;
    grid.box.xmin = cx - 0.5 * h * resolution;
    grid.box.xmax = cx + 0.5 * h * resolution;
    grid.box.ymin = cy - 0.5 * h * resolution;
    grid.box.ymax = cy + 0.5 * h * resolution;

    std::vector<char> in_outer, in_inner;
    fill_mask(region.outer, grid, in_outer);
    fill_mask(region.inner, grid, in_inner);
    grid.cells.resize(in_outer.size());
    size_t inner_count = 0;
    for (size_t k = 0; k < grid.cells.size(); ++k) {
        if (!in_outer[k]) {
            grid.cells[k] = Cell::Exterior;
        } else if (in_inner[k]) {
            grid.cells[k] = Cell::Inner;
            ++inner_count;
        } else {
            grid.cells[k] = Cell::Interior;
        }
    }
    if (inner_count == 0) {
        throw ResolutionTooCoarse("inner boundary not resolved on the grid");
    }
    return grid;
}

ModulusEstimate estimate_modulus(const AnnulusRegion& region, int resolution,
                                 double tolerance, bool with_history) {
    // Declared pinch points short-circuit to a degenerate report.
    if (!region.pinch_points.empty()) {
        ModulusEstimate est;
        est.resolution = resolution;
        est.degenerate = true;
        est.pinch_evidence = region.pinch_points;
        return est;
    }
    ModulusEstimate est = solve_once(region, resolution, tolerance);
    if (with_history && !est.degenerate) {
        for (int r = resolution / 4; r < resolution; r *= 2) {
            if (r < 32) continue;
            est.refinement_history.push_back(solve_once(region, r, tolerance).value);
        }
        est.refinement_history.push_back(est.value);
    }
    return est;
}

double groetzsch_defect(const AnnulusRegion& whole,
                        const std::vector<AnnulusRegion>& parts,
                        int resolution) {
    if (parts.empty()) throw NotASubdivision("no parts given");
    // Each part must still surround the inner boundary of the whole.
    Complex probe(0.0, 0.0);
    for (const Complex& z : whole.inner) probe += z;
    probe /= static_cast<double>(whole.inner.size());
    for (const AnnulusRegion& part : parts) {
        if (!point_inside(part.outer, probe)) {
            throw NotASubdivision("part does not surround the inner boundary");
        }
    }
    double total = 0.0;
    for (const AnnulusRegion& part : parts) {
        total += estimate_modulus(part, resolution).value;
    }
    return estimate_modulus(whole, resolution).value - total;
}

RatioVerdict covering_ratio_check(const AnnulusRegion& parent,
                                  const AnnulusRegion& child, Mark mark,
                                  int resolution, double rtol) {
    RatioVerdict v;
    v.mark = mark;
    v.parent_modulus = estimate_modulus(parent, resolution).value;
    v.child_modulus = estimate_modulus(child, resolution).value;
    if (v.child_modulus <= 0.0) {
        v.ok = false;
        v.detail = "child annulus degenerate";
        return v;
    }
    v.ratio = v.parent_modulus / v.child_modulus;
    switch (mark) {
        case Mark::Critical:
            v.ok = std::abs(v.ratio - 2.0) <= 2.0 * rtol;
            v.detail = "expected ratio 2";
            break;
        case Mark::OffCritical:
            v.ok = std::abs(v.ratio - 1.0) <= rtol;
            v.detail = "expected ratio 1";
            break;
        case Mark::SemiCritical:
            v.ok = v.ratio < 2.0 * (1.0 + rtol);
            v.detail = "expected ratio < 2";
            break;
        default:
            v.ok = false;
            v.detail = "unresolvable mark";
    }
    return v;
}

}  // namespace dualnest
