#include "dualnest/puzzle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dualnest {

namespace {

double to_double(const Rational& r) { return static_cast<double>(r); }

// Fine-partition arc (x, .) lies inside coarse arc (X, Y). Valid because
// angle sets only grow with depth, so a fine arc never straddles a coarse
// endpoint; checking the left endpoint is enough.
bool arc_starts_in(const Angle& x, const Angle& X, const Angle& Y) {
    return x == X || in_open_arc(X, x, Y);
}

Rational arc_length(const Angle& x, const Angle& y) {
    Rational len = y.value() - x.value();
    if (len <= 0) len += 1;
    return len;
}

Angle arc_point(const Angle& x, const Rational& len, const Rational& frac) {
    return Angle(Rational(x.value() + len * frac));
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Puzzle::Puzzle(const Parameter& param, double r0, const AngleCycle& cycle,
               PuzzleOptions opts)
    : param_(param), r0_(r0), cycle_(cycle), opts_(opts) {
    if (!(r0 > 0.0)) throw std::invalid_argument("r0 must be positive");
    if (cycle.angles.size() < 2) {
        throw std::invalid_argument("need at least two bounding ray angles");
    }
    const FixedPoints fp = fixed_points(param_);
    for (const Angle& a : cycle_.angles) trace_angle(a);
    for (const Angle& a : cycle_.angles) {
        ExternalRay& ray = rays_.at(a);
        if (!ray.landing) {
            throw RaysDidNotLand("ray " + a.str() + " did not land");
        }
        if (std::abs(*ray.landing - fp.alpha) > 1e-3) {
            throw InconsistentLanding("ray " + a.str() +
                                      " does not land at the alpha fixed point");
        }
        ray.landing = fp.alpha;  // snap to the exact fixed point
    }
    LandingGroup root;
    root.point = fp.alpha;
    root.angles = cycle_.angles;
    std::sort(root.angles.begin(), root.angles.end());
    groups_.push_back({root});
    levels_.push_back(build_faces(0));
}

void Puzzle::trace_angle(const Angle& angle) {
    if (rays_.count(angle)) return;
    ExternalRay ray = trace_ray(param_, angle, r0_, r0_ * 0.5,
                                opts_.steps_per_halving);
    // Halve down in exact powers of two so every depth equipotential level
    // r0 * 2^-d is hit by a sample, then finish at the landing depth.
    double t = r0_ * 0.5;
    while (t * 0.5 > opts_.land_potential) {
        t *= 0.5;
        extend_ray(param_, ray, t, opts_.steps_per_halving);
    }
    if (ray.potentials.back() > opts_.land_potential) {
        extend_ray(param_, ray, opts_.land_potential, opts_.steps_per_halving);
    }
    try {
        ray.landing = landing_point(ray, param_, 1e-3);
    } catch (const NotLanded&) {
        // left unset: branch assignment will fall back to the deepest sample
    }
    rays_.emplace(angle, std::move(ray));
}

const ExternalRay& Puzzle::ray(const Angle& angle) const {
    auto it = rays_.find(angle);
    if (it == rays_.end()) {
        throw std::out_of_range("no ray traced at angle " + angle.str());
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// Pullback of the landing pattern

void Puzzle::pullback_groups() {
    const std::vector<LandingGroup>& prev = groups_.back();
    std::vector<LandingGroup> out;
    for (const LandingGroup& g : prev) {
        std::vector<Angle> pre;
        for (const Angle& a : g.angles) {
            const auto [h1, h2] = a.halved();
            pre.push_back(h1);
            pre.push_back(h2);
        }
        for (const Angle& a : pre) trace_angle(a);

        if (std::abs(g.point - param_.c) < 1e-9) {
            // Landing point is the critical value: the single preimage is the
            // critical point and all pulled-back rays crash onto it.
            LandingGroup ng;
            ng.point = Complex(0.0, 0.0);
            ng.angles = pre;
            std::sort(ng.angles.begin(), ng.angles.end());
            for (const Angle& a : ng.angles) rays_.at(a).landing = ng.point;
            out.push_back(std::move(ng));
            continue;
        }

        const Complex zp = std::sqrt(g.point - param_.c);
        const Complex zm = -zp;
        const double gap = std::abs(zp - zm);
        LandingGroup gp, gm;
        gp.point = zp;
        gm.point = zm;
        for (const Angle& a : pre) {
            const ExternalRay& r = rays_.at(a);
            const Complex est = r.landing ? *r.landing : r.samples.back();
            const double dp = std::abs(est - zp);
            const double dm = std::abs(est - zm);
            if (std::min(dp, dm) > 0.3 * gap) {
                throw PullbackFailed("ambiguous landing branch for ray " +
                                     a.str());
            }
            (dp < dm ? gp : gm).angles.push_back(a);
        }
        if (gp.angles.size() != g.angles.size() ||
            gm.angles.size() != g.angles.size()) {
            throw PullbackFailed("uneven branch split above landing point");
        }
        std::sort(gp.angles.begin(), gp.angles.end());
        std::sort(gm.angles.begin(), gm.angles.end());
        for (const Angle& a : gp.angles) rays_.at(a).landing = gp.point;
        for (const Angle& a : gm.angles) rays_.at(a).landing = gm.point;
        out.push_back(std::move(gp));
        out.push_back(std::move(gm));
    }
    groups_.push_back(std::move(out));
}

void Puzzle::refine() {
    pullback_groups();
    levels_.push_back(build_faces(static_cast<int>(levels_.size())));
}

void Puzzle::refine_to(int depth) {
    while (max_depth() < depth) refine();
}

// ---------------------------------------------------------------------------
// Faces of the ray/equipotential graph

std::vector<PuzzlePiece> Puzzle::build_faces(int depth) const {
    const std::vector<LandingGroup>& groups = groups_.at(depth);
    struct Entry {
        Angle angle;
        int group;
        int pos;
    };
    std::vector<Entry> ents;
    for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
        const auto& ga = groups[gi].angles;
        for (int pos = 0; pos < static_cast<int>(ga.size()); ++pos) {
            ents.push_back({ga[pos], gi, pos});
        }
    }
    std::sort(ents.begin(), ents.end(),
              [](const Entry& a, const Entry& b) { return a.angle < b.angle; });
    const int n = static_cast<int>(ents.size());
    std::map<Angle, int> index;
    for (int i = 0; i < n; ++i) index.emplace(ents[i].angle, i);

    // Arc i runs counterclockwise from ents[i] to ents[i+1]. Arriving at the
    // far endpoint, the face boundary descends that ray and re-ascends the
    // previous ray of the same landing group, whose arc continues the face.
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) {
        const Entry& far = ents[(i + 1) % n];
        const auto& ga = groups[far.group].angles;
        const Angle& pred =
            ga[(far.pos + ga.size() - 1) % ga.size()];
        next[i] = index.at(pred);
    }

    std::vector<PuzzlePiece> pieces;
    std::vector<char> visited(n, 0);
    int critical_count = 0;
    for (int start = 0; start < n; ++start) {
        if (visited[start]) continue;
        PuzzlePiece piece;
        piece.depth = depth;
        piece.id = static_cast<int>(pieces.size());
        int i = start;
        do {
            visited[i] = 1;
            const Entry& far = ents[(i + 1) % n];
            piece.arcs.emplace_back(ents[i].angle, far.angle);
            piece.corners.push_back(groups[far.group].point);
            i = next[i];
        } while (i != start);
        piece.boundary = face_boundary(depth, piece.arcs, piece.corners);
        piece.contains_critical = point_inside(piece.boundary, Complex(0, 0));
        critical_count += piece.contains_critical ? 1 : 0;
        pieces.push_back(std::move(piece));
    }
    if (critical_count != 1) {
        throw PullbackFailed("critical point not interior to a unique piece at depth " +
                             std::to_string(depth));
    }
    return pieces;
}

Polyline Puzzle::face_boundary(
    int depth, const std::vector<std::pair<Angle, Angle>>& arcs,
    const std::vector<Complex>& corners) const {
    const double rd = r0_ * std::ldexp(1.0, -depth);
    auto level_index = [&](const ExternalRay& r) -> size_t {
        for (size_t i = 0; i < r.potentials.size(); ++i) {
            if (r.potentials[i] <= rd * (1.0 + 1e-9)) return i;
        }
        throw PullbackFailed("ray not traced to the depth equipotential");
    };

    Polyline b;
    const size_t m = arcs.size();
    for (size_t k = 0; k < m; ++k) {
        const auto& [x, y] = arcs[k];
        const ExternalRay& rx = ray(x);
        const ExternalRay& ry = ray(y);
        // Equipotential arc from x to y.
        const Rational len = arc_length(x, y);
        const int samples = std::max(
            2, static_cast<int>(std::ceil(to_double(len) *
                                          opts_.equi_samples_per_turn)));
        b.push_back(rx.samples[level_index(rx)]);
        for (int j = 1; j < samples; ++j) {
            const Angle phi = arc_point(x, len, Rational(j, samples));
            b.push_back(equipotential_point(param_, rd, phi));
        }
        // Down the ray at y, corner, back up the next arc's starting ray.
        for (size_t i = level_index(ry); i < ry.samples.size(); ++i) {
            b.push_back(ry.samples[i]);
        }
        b.push_back(corners[k]);
        const ExternalRay& rnext = ray(arcs[(k + 1) % m].first);
        const size_t up_top = level_index(rnext);
        for (size_t i = rnext.samples.size(); i-- > up_top + 1;) {
            b.push_back(rnext.samples[i]);
        }
    }
    // Drop exact consecutive duplicates (shared samples meet at junctions).
    Polyline clean;
    for (const Complex& z : b) {
        if (clean.empty() || clean.back() != z) clean.push_back(z);
    }
    if (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
    return clean;
}

// ---------------------------------------------------------------------------
// Queries

const std::vector<PuzzlePiece>& Puzzle::level(int depth) const {
    return levels_.at(static_cast<size_t>(depth));
}

std::vector<PuzzlePiece>& Puzzle::level_mutable(int depth) {
    return levels_.at(static_cast<size_t>(depth));
}

const std::vector<LandingGroup>& Puzzle::landing_groups(int depth) const {
    return groups_.at(static_cast<size_t>(depth));
}

const PuzzlePiece& Puzzle::critical_piece(int depth) const {
    for (const PuzzlePiece& p : level(depth)) {
        if (p.contains_critical) return p;
    }
    throw std::logic_error("no critical piece at depth " + std::to_string(depth));
}

const PuzzlePiece& Puzzle::piece_containing(int depth, Complex z) const {
    const double rd = r0_ * std::ldexp(1.0, -depth);
    if (green_value(param_, z) > rd) {
        throw OutsidePuzzle("point escapes the depth-" + std::to_string(depth) +
                            " equipotential");
    }
    for (const PuzzlePiece& p : level(depth)) {
        if (!point_inside(p.boundary, z)) continue;
        if (distance_to_polyline(p.boundary, z) < opts_.boundary_tol) {
            throw OnBoundary("point within tolerance of a piece boundary",
                             opts_.boundary_tol);
        }
        return p;
    }
    // Below the equipotential but claimed by no interior: numerically on
    // (or extremely near) some boundary curve.
    throw OnBoundary("point not interior to any piece at this depth",
                     opts_.boundary_tol);
}

const PuzzlePiece& Puzzle::parent_of(const PuzzlePiece& piece) const {
    if (piece.depth < 1) throw std::logic_error("depth-0 piece has no parent");
    const Angle& x = piece.arcs.front().first;
    for (const PuzzlePiece& p : level(piece.depth - 1)) {
        for (const auto& [X, Y] : p.arcs) {
            if (arc_starts_in(x, X, Y)) return p;
        }
    }
    throw std::logic_error("piece has no symbolic parent");
}

Complex Puzzle::interior_probe(const PuzzlePiece& piece) const {
    const double rd = r0_ * std::ldexp(1.0, -piece.depth);
    const auto& [x, y] = piece.arcs.front();
    const Angle mid = arc_point(x, arc_length(x, y), Rational(1, 2));
    return equipotential_point(param_, 0.5 * rd, mid);
}

std::vector<Complex> Puzzle::interior_samples(const PuzzlePiece& piece,
                                              int count, unsigned seed) const {
    std::mt19937 rng(seed);
    const double rd = r0_ * std::ldexp(1.0, -piece.depth);
    std::vector<double> weights;
    for (const auto& [x, y] : piece.arcs) {
        weights.push_back(to_double(arc_length(x, y)));
    }
    std::discrete_distribution<int> pick_arc(weights.begin(), weights.end());
    std::uniform_int_distribution<long> pick_offset(1, (1L << 20) - 1);

    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < count) {
        const auto& [x, y] = piece.arcs[static_cast<size_t>(pick_arc(rng))];
        const Angle phi = arc_point(x, arc_length(x, y),
                                    Rational(pick_offset(rng), 1L << 20));
        // One descent per angle yields a burst of interior points at
        // distinct potentials, all strictly inside the piece.
        const ExternalRay burst =
            trace_ray(param_, phi, rd * 0.75, rd * 0.75 * 0.125, 4);
        for (const Complex& z : burst.samples) {
            if (static_cast<int>(out.size()) >= count) break;
            out.push_back(z);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Checks

MarkovReport markov_check(const Puzzle& puzzle) {
    MarkovReport rep;
    const int depth_max = puzzle.max_depth();

    // Equal depth: faces own disjoint arc sets by construction; verify.
    for (int d = 0; d <= depth_max; ++d) {
        const auto& pieces = puzzle.level(d);
        for (size_t i = 0; i < pieces.size(); ++i) {
            for (size_t j = i + 1; j < pieces.size(); ++j) {
                ++rep.pairs_checked;
                for (const auto& [x, y] : pieces[i].arcs) {
                    for (const auto& [u, v] : pieces[j].arcs) {
                        if (x == u) {
                            rep.violations.push_back(
                                {d, pieces[i].id, d, pieces[j].id,
                                 "symbolic-overlap", 0.0});
                        }
                    }
                }
            }
        }
    }

    // Cross depth: every fine piece sits symbolically inside exactly one
    // coarse piece per shallower depth.
    for (int e = 1; e <= depth_max; ++e) {
        for (const PuzzlePiece& q : puzzle.level(e)) {
            for (int d = 0; d < e; ++d) {
                ++rep.pairs_checked;
                const PuzzlePiece* host = nullptr;
                bool split = false;
                for (const PuzzlePiece& p : puzzle.level(d)) {
                    bool any = false, all = true;
                    for (const auto& [x, y] : q.arcs) {
                        bool in = false;
                        for (const auto& [X, Y] : p.arcs) {
                            if (arc_starts_in(x, X, Y)) {
                                in = true;
                                break;
                            }
                        }
                        any = any || in;
                        all = all && in;
                    }
                    if (any && !all) split = true;
                    if (any && all) host = &p;
                }
                if (split || host == nullptr) {
                    rep.violations.push_back({d, host ? host->id : -1, e, q.id,
                                              "symbolic-overlap", 0.0});
                }
            }
        }
    }

    // Geometric audit: a probe strictly inside each piece must lie inside
    // its asserted parent and no other piece of that depth.
    for (int e = 1; e <= depth_max; ++e) {
        for (const PuzzlePiece& q : puzzle.level(e)) {
            const Complex probe = puzzle.interior_probe(q);
            const PuzzlePiece& parent = puzzle.parent_of(q);
            for (const PuzzlePiece& p : puzzle.level(e - 1)) {
                ++rep.pairs_checked;
                const bool inside = point_inside(p.boundary, probe);
                const double dist = distance_to_polyline(p.boundary, probe);
                if (p.id == parent.id) {
                    if (!inside && dist > puzzle.options().boundary_tol) {
                        rep.violations.push_back(
                            {p.depth, p.id, e, q.id, "leak", dist});
                    }
                } else if (inside && dist > puzzle.options().boundary_tol) {
                    rep.violations.push_back(
                        {p.depth, p.id, e, q.id, "containment", dist});
                }
            }
        }
    }
    return rep;
}

AnnulusRegion annulus_between(const Puzzle& puzzle, const PuzzlePiece& outer,
                              const PuzzlePiece& inner) {
    if (inner.depth <= outer.depth) {
        throw NotNested("inner piece must be strictly deeper");
    }
    for (const auto& [x, y] : inner.arcs) {
        bool in = false;
        for (const auto& [X, Y] : outer.arcs) {
            if (arc_starts_in(x, X, Y)) {
                in = true;
                break;
            }
        }
        if (!in) throw NotNested("inner piece footprint escapes the outer piece");
    }
    AnnulusRegion region;
    region.outer = outer.boundary;
    region.inner = inner.boundary;
    const double tol = puzzle.options().boundary_tol;
    auto note_pinch = [&](Complex z) {
        for (const Complex& w : region.pinch_points) {
            if (std::abs(w - z) < tol) return;
        }
        region.pinch_points.push_back(z);
    };
    for (const Complex& w : inner.corners) {
        if (distance_to_polyline(outer.boundary, w) < tol) note_pinch(w);
    }
    for (const Complex& w : outer.corners) {
        if (distance_to_polyline(inner.boundary, w) < tol) note_pinch(w);
    }
    return region;
}

double separation(const Puzzle& puzzle, int depth) {
    // Distance from the critical piece at `depth` to the critical piece two
    // PROPER refinements deeper. Consecutive critical pieces can carry the
    // exact same bounding-ray set when no new landing group cuts the
    // critical sector (the pullback then only lowers the equipotential lid,
    // and the shared rays make the in-between annuli degenerate). Such
    // repeats postpone the two-levels-down separation rather than refute
    // it, so they are skipped; for parameters where every pullback refines,
    // this is exactly depth+2.
    auto footprint = [&](int d) {
        std::vector<Angle> starts;
        for (const auto& [x, y] : puzzle.critical_piece(d).arcs) {
            starts.push_back(x);
        }
        std::sort(starts.begin(), starts.end());
        return starts;
    };
    std::vector<Angle> cur = footprint(depth);
    int d = depth;
    for (int refinements = 0; refinements < 2;) {
        ++d;
        if (d > puzzle.max_depth()) {
            throw std::out_of_range(
                "separation: puzzle not refined deep enough below depth " +
                std::to_string(depth));
        }
        std::vector<Angle> next = footprint(d);
        if (next != cur) {
            ++refinements;
            cur = std::move(next);
        }
    }
    return polyline_distance(puzzle.critical_piece(depth).boundary,
                             puzzle.critical_piece(d).boundary);
}

int forward_covariance_violations(const Puzzle& puzzle, int depth,
                                  int samples_per_piece, unsigned seed) {
    int violations = 0;
    for (const PuzzlePiece& q : puzzle.level(depth + 1)) {
        // Doubling sends consecutive bounding angles to consecutive bounding
        // angles, so the image piece is the one owning the doubled first arc.
        const Angle ix = q.arcs.front().first.doubled();
        const PuzzlePiece* image = nullptr;
        for (const PuzzlePiece& p : puzzle.level(depth)) {
            for (const auto& [X, Y] : p.arcs) {
                if (X == ix) {
                    image = &p;
                    break;
                }
            }
            if (image) break;
        }
        if (!image) {
            ++violations;
            continue;
        }
        const auto samples =
            puzzle.interior_samples(q, samples_per_piece,
                                    seed + static_cast<unsigned>(q.id));
        for (const Complex& z : samples) {
            const Complex w = puzzle.param().eval(z);
            if (!point_inside(image->boundary, w) &&
                distance_to_polyline(image->boundary, w) >
                    puzzle.options().boundary_tol) {
                ++violations;
            }
        }
    }
    return violations;
}

}  // namespace dualnest
