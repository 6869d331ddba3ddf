#include "dualnest/tableau.hpp"

#include <algorithm>

namespace dualnest {

namespace {

// Membership of z in the critical piece at the given depth; depth -1 means
// the region enclosed by the depth-0 equipotential. Throws OnBoundary.
bool in_critical_piece(const Puzzle& puzzle, int depth, Complex z) {
    if (depth < 0) return green_value(puzzle.param(), z) < puzzle.r0();
    try {
        return puzzle.piece_containing(depth, z).contains_critical;
    } catch (const OutsidePuzzle&) {
        return false;
    }
}

}  // namespace

Mark classify(const Puzzle& puzzle, int depth, int j) {
    const OrbitSample orbit = critical_orbit(puzzle.param(), j + 1);
    const Complex z = orbit.points.at(static_cast<size_t>(j));
    try {
        if (in_critical_piece(puzzle, depth, z)) return Mark::Critical;
        if (in_critical_piece(puzzle, depth - 1, z)) return Mark::SemiCritical;
        return Mark::OffCritical;
    } catch (const OnBoundary&) {
        return Mark::Unresolvable;
    }
}

Tableau build_tableau(const Puzzle& puzzle, int depths, int width) {
    if (puzzle.max_depth() < depths) {
        throw WindowTooShallow("puzzle not built to the requested tableau depth");
    }
    Tableau t;
    t.width = width;
    t.source = puzzle.param();
    const OrbitSample orbit = critical_orbit(puzzle.param(), width);
    t.marks.assign(static_cast<size_t>(depths) + 1,
                   std::vector<Mark>(static_cast<size_t>(width)));
    for (int j = 0; j < width; ++j) {
        const Complex z = orbit.points[static_cast<size_t>(j)];
        // Walk the column downward; below the first exit the rest is known,
        // saving most of the per-cell membership queries.
        bool prev_in = in_critical_piece(puzzle, -1, z);
        bool resolved = true;
        for (int i = 0; i <= depths; ++i) {
            if (!resolved) {
                t.marks[i][j] = Mark::Unresolvable;
                continue;
            }
            if (!prev_in) {
                t.marks[i][j] = Mark::OffCritical;
                continue;
            }
            if (j == 0) {
                t.marks[i][j] = Mark::Critical;
                continue;
            }
            try {
                const bool in = in_critical_piece(puzzle, i, z);
                t.marks[i][j] = in ? Mark::Critical : Mark::SemiCritical;
                prev_in = in;
            } catch (const OnBoundary&) {
                t.marks[i][j] = Mark::Unresolvable;
                resolved = false;
            }
        }
    }
    return t;
}

std::vector<std::pair<int, int>> column_rule_violations(const Tableau& t) {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < t.width; ++j) {
        // 0 = still in the critical run, 1 = semi seen, 2 = off region
        int phase = 0;
        for (int i = 0; i <= t.max_depth(); ++i) {
            const Mark m = t.at(i, j);
            if (m == Mark::Unresolvable) continue;
            bool ok = true;
            switch (m) {
                case Mark::Critical: ok = (phase == 0); break;
                case Mark::SemiCritical:
                    ok = (phase == 0);
                    phase = 1;
                    break;
                case Mark::OffCritical: phase = 2; break;
                default: break;
            }
            if (!ok) out.emplace_back(i, j);
        }
    }
    return out;
}

double unresolvable_fraction(const Tableau& t) {
    long total = 0, bad = 0;
    for (const auto& row : t.marks) {
        for (const Mark m : row) {
            ++total;
            bad += (m == Mark::Unresolvable) ? 1 : 0;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(total);
}

RecurrenceVerdict is_recurrent(const Tableau& t) {
    RecurrenceVerdict v;
    v.window_depth = t.max_depth();
    v.window_width = t.width;
    v.max_critical_depth.assign(static_cast<size_t>(t.width), -1);
    for (int j = 1; j < t.width; ++j) {
        for (int i = t.max_depth(); i >= 0; --i) {
            if (t.at(i, j) == Mark::Critical) {
                v.max_critical_depth[static_cast<size_t>(j)] = i;
                break;
            }
        }
    }
    int record = -1;
    for (int j = 1; j < t.width; ++j) {
        const int d = v.max_critical_depth[static_cast<size_t>(j)];
        if (d > record) {
            record = d;
            if (d >= 0) v.witnesses.emplace_back(j, d);
        }
    }
    // "Keeps growing in the window": a periodic column settles it, otherwise
    // demand several strictly increasing return depths. Never a limit claim.
    v.recurrent_so_far =
        is_periodic(t).periodic_in_window || v.witnesses.size() >= 3;
    return v;
}

PeriodicityVerdict is_periodic(const Tableau& t) {
    PeriodicityVerdict v;
    v.window_depth = t.max_depth();
    v.window_width = t.width;
    for (int j = 1; j < t.width; ++j) {
        bool all = true;
        for (int i = 0; i <= t.max_depth() && all; ++i) {
            all = t.at(i, j) == Mark::Critical;
        }
        if (all) {
            v.periodic_in_window = true;
            v.column = j;
            return v;
        }
    }
    return v;
}

std::vector<ChildLink> children_of(const Tableau& t, int d) {
    if (d < 0 || d + 2 > t.max_depth()) {
        throw WindowTooShallow("no room below depth " + std::to_string(d) +
                               " in a window of depth " +
                               std::to_string(t.max_depth()));
    }
    std::vector<ChildLink> out;
    const int n_max = std::min(t.width - 1, t.max_depth() - d - 1);
    for (int n = 1; n <= n_max; ++n) {
        if (t.at(d + 1, n) != Mark::Critical) continue;
        bool univalent = true;
        for (int k = 1; k < n && univalent; ++k) {
            univalent = t.at(d + n - k + 1, k) == Mark::OffCritical;
        }
        if (!univalent) continue;
        ChildLink link;
        link.child_depth = d + n;
        link.parent_depth = d;
        link.iterate = n;
        out.push_back(link);
    }
    return out;
}

bool is_excellent(const Tableau& t, const ChildLink& link) {
    const std::vector<ChildLink> kids = children_of(t, link.child_depth);
    if (kids.size() >= 2) return true;
    throw WindowTooShallow(
        "window exhausted with fewer than two children below depth " +
        std::to_string(link.child_depth));
}

}  // namespace dualnest
