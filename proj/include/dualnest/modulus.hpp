#pragma once

#include "dualnest/region.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualnest {

enum class Cell : std::uint8_t { Exterior, Interior, Inner };

struct GridDiscretization {
    BoundingBox box;
    int n = 0;          // n x n cells
    double h = 0.0;     // cell width
    std::vector<Cell> cells;

    Cell at(int i, int j) const { return cells[static_cast<size_t>(j) * n + i]; }
    Complex center(int i, int j) const {
        return {box.xmin + (i + 0.5) * h, box.ymin + (j + 0.5) * h};
    }
};

struct ModulusEstimate {
    double value = 0.0;
    int resolution = 0;
    double residual = 0.0;
    bool degenerate = false;
    std::vector<Complex> pinch_evidence;
    std::vector<double> refinement_history;  // values at increasing N
};

struct Disconnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResolutionTooCoarse : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotASubdivision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GridDiscretization discretize(const AnnulusRegion& region, int resolution);

/// Conformal modulus via the discrete Dirichlet problem: harmonic u with
/// u = 0 on the inner boundary, u = 1 on the outer, solved by conjugate
/// gradients; modulus = 1 / (Dirichlet energy). Regions pinched narrower
/// than 3 cells are reported degenerate with value 0.
ModulusEstimate estimate_modulus(const AnnulusRegion& region, int resolution,
                                 double tolerance = 1e-10,
                                 bool with_history = false);

/// mod(whole) - sum of mod(parts); >= -eps_solver when parts subdivide whole.
double groetzsch_defect(const AnnulusRegion& whole,
                        const std::vector<AnnulusRegion>& parts,
                        int resolution = 512);

struct RatioVerdict {
    double parent_modulus = 0.0;
    double child_modulus = 0.0;
    double ratio = 0.0;
    Mark mark = Mark::OffCritical;
    bool ok = false;
    std::string detail;
};

/// Checks mod(parent)/mod(child) against the covering prediction for the
/// mark: Critical -> 2, OffCritical -> 1, SemiCritical -> < 2, within rtol.
RatioVerdict covering_ratio_check(const AnnulusRegion& parent,
                                  const AnnulusRegion& child, Mark mark,
                                  int resolution = 512, double rtol = 0.05);

}  // namespace dualnest
