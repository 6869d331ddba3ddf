#pragma once

#include "dualnest/rays.hpp"
#include "dualnest/region.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualnest {

struct RaysDidNotLand : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InconsistentLanding : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PullbackFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutsidePuzzle : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotNested : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// The queried point is within delta of a piece boundary and cannot be
/// classified at this depth.
struct OnBoundary : std::runtime_error {
    double delta;
    OnBoundary(const std::string& msg, double d)
        : std::runtime_error(msg), delta(d) {}
};

/// Rays landing at a common (pre)periodic point, angles sorted ascending.
struct LandingGroup {
    Complex point;
    std::vector<Angle> angles;
};

/// One bounded face of the ray/equipotential graph at a given depth.
///
/// The symbolic footprint is the list of circular arcs the face cuts out of
/// the depth equipotential: arc k runs counterclockwise from arcs[k].first
/// to arcs[k].second; the boundary then descends the ray at arcs[k].second
/// to corners[k] and ascends the ray at arcs[k+1].first. All containment
/// combinatorics are decided on the arcs; the polyline is for geometry.
struct PuzzlePiece {
    int depth = 0;
    int id = 0;
    std::vector<std::pair<Angle, Angle>> arcs;
    std::vector<Complex> corners;  // landing points, one per arc junction
    Polyline boundary;
    bool contains_critical = false;
};

struct PuzzleOptions {
    int steps_per_halving = 8;       // ray sampling density
    int equi_samples_per_turn = 256; // equipotential sampling density
    double land_potential = 1e-7;    // rays traced down to this Green value
    double boundary_tol = 1e-6;      // delta for OnBoundary / pinch detection
};

class Puzzle {
  public:
    Puzzle(const Parameter& param, double r0, const AngleCycle& cycle,
           PuzzleOptions opts = {});

    /// Appends one more depth by pulling back the ray landing pattern.
    void refine();
    void refine_to(int depth);

    int max_depth() const { return static_cast<int>(levels_.size()) - 1; }
    double r0() const { return r0_; }
    const Parameter& param() const { return param_; }
    const AngleCycle& cycle() const { return cycle_; }
    const PuzzleOptions& options() const { return opts_; }

    const std::vector<PuzzlePiece>& level(int depth) const;
    std::vector<PuzzlePiece>& level_mutable(int depth);
    const std::vector<LandingGroup>& landing_groups(int depth) const;

    const PuzzlePiece& critical_piece(int depth) const;

    /// Unique piece whose interior contains z; throws OutsidePuzzle or
    /// OnBoundary (within options().boundary_tol of some boundary).
    const PuzzlePiece& piece_containing(int depth, Complex z) const;

    /// The depth-(d-1) piece symbolically containing the given piece.
    const PuzzlePiece& parent_of(const PuzzlePiece& piece) const;

    /// A point strictly inside the piece (on an internal ray of its
    /// footprint, below the depth equipotential).
    Complex interior_probe(const PuzzlePiece& piece) const;

    /// Random interior samples, uniform over footprint angle x log-potential.
    std::vector<Complex> interior_samples(const PuzzlePiece& piece, int count,
                                          unsigned seed) const;

    /// Full traced ray through the given angle (must bound some piece).
    const ExternalRay& ray(const Angle& angle) const;

  private:
    void trace_angle(const Angle& angle);
    void pullback_groups();
    std::vector<PuzzlePiece> build_faces(int depth) const;
    Polyline face_boundary(int depth,
                           const std::vector<std::pair<Angle, Angle>>& arcs,
                           const std::vector<Complex>& corners) const;

    Parameter param_;
    double r0_;
    AngleCycle cycle_;
    PuzzleOptions opts_;
    std::vector<std::vector<PuzzlePiece>> levels_;
    std::vector<std::vector<LandingGroup>> groups_;
    std::map<Angle, ExternalRay> rays_;
};

struct MarkovViolation {
    int depth_a = 0, id_a = 0;
    int depth_b = 0, id_b = 0;
    std::string kind;        // "symbolic-overlap" | "containment" | "leak"
    double separation = 0.0; // offending distance where applicable
};

struct MarkovReport {
    long pairs_checked = 0;
    std::vector<MarkovViolation> violations;
};

/// Checks the piece lattice: equal-depth pieces have disjoint footprints,
/// every piece nests symbolically in exactly one piece per shallower depth,
/// and interior probes land geometrically inside the asserted parents.
MarkovReport markov_check(const Puzzle& puzzle);

/// Region between the boundaries of two nested pieces, with pinch points
/// where the boundaries share ray landing points (within boundary_tol).
AnnulusRegion annulus_between(const Puzzle& puzzle, const PuzzlePiece& outer,
                              const PuzzlePiece& inner);

/// Minimum distance between the critical piece boundaries at depths d, d+2.
double separation(const Puzzle& puzzle, int depth);

/// Forward covariance audit: f maps interior samples of every depth-(d+1)
/// piece into the piece containing the image orbit point. Returns the
/// number of samples that escaped their asserted target (0 expected).
int forward_covariance_violations(const Puzzle& puzzle, int depth,
                                  int samples_per_piece, unsigned seed);

}  // namespace dualnest
