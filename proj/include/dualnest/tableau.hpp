#pragma once

#include "dualnest/puzzle.hpp"
#include "dualnest/region.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace dualnest {

struct WindowTooShallow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Critical-orbit marking grid: marks[i][j] classifies orbit point z_j
/// against the depth-i critical piece (column rule: C* S? O* downward).
struct Tableau {
    std::vector<std::vector<Mark>> marks;  // marks[depth][orbit index]
    int width = 0;
    Parameter source;

    int max_depth() const { return static_cast<int>(marks.size()) - 1; }
    Mark at(int depth, int j) const {
        return marks.at(static_cast<size_t>(depth)).at(static_cast<size_t>(j));
    }
};

/// One link of the descendant relation between critical annuli: f^iterate
/// maps the annulus at child_depth onto the one at parent_depth as an
/// unbranched degree-2 covering.
struct ChildLink {
    int child_depth = 0;
    int parent_depth = 0;
    int iterate = 0;
    int degree = 2;
};

struct RecurrenceVerdict {
    bool recurrent_so_far = false;
    int window_depth = 0;
    int window_width = 0;
    std::vector<int> max_critical_depth;            // per column, -1 if none
    std::vector<std::pair<int, int>> witnesses;     // (column, record depth)
};

struct PeriodicityVerdict {
    bool periodic_in_window = false;
    int column = -1;  // witness column when periodic
    int window_depth = 0;
    int window_width = 0;
};

/// Mark of orbit point z_j at depth d: Critical when z_j is in the critical
/// piece P_d(0), SemiCritical when it is in P_{d-1}(0) but not P_d(0),
/// OffCritical otherwise (depth -1 means "inside the depth-0 equipotential").
/// Boundary-ambiguous points come back Unresolvable.
Mark classify(const Puzzle& puzzle, int depth, int j);

/// Marks for the critical orbit z_0 = 0, z_{j+1} = f(z_j), depths 0..depths.
Tableau build_tableau(const Puzzle& puzzle, int depths, int width);

/// Column rule: each column is a run of Critical, then at most one
/// SemiCritical, then only OffCritical. Returns offending (depth, column)
/// pairs (Unresolvable cells are skipped).
std::vector<std::pair<int, int>> column_rule_violations(const Tableau& t);

double unresolvable_fraction(const Tableau& t);

/// Window-relative verdicts; neither ever asserts the infinite-depth limit.
RecurrenceVerdict is_recurrent(const Tableau& t);
PeriodicityVerdict is_periodic(const Tableau& t);

/// Children of the critical annulus A_d(0) (between dP_d(0) and dP_{d+1}(0))
/// detectable in the window: A_{d+n}(0) is a child iff z_n returns to the
/// critical piece at depth d+1 (mark C) and every intermediate diagonal
/// position (d+n-k+1, k), k = 1..n-1, is OffCritical, making the pullback
/// univalent until the final degree-2 step. Candidates blocked only by
/// Unresolvable diagonal entries are dropped (claims never rest on them).
std::vector<ChildLink> children_of(const Tableau& t, int d);

/// True when the child has at least two children of its own inside the
/// window; a child with fewer detected children is never declared
/// non-excellent -- the window is just too shallow to decide.
bool is_excellent(const Tableau& t, const ChildLink& link);

}  // namespace dualnest
