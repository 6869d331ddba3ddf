#include "dualnest/nest.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <random>
#include <sstream>

namespace dualnest {

namespace {

Rational pow2_rational(long long e) {
    Rational r = 1;
    if (e >= 0) {
        r = Rational(BigInt(1) << static_cast<unsigned>(e));
    } else {
        r = Rational(BigInt(1), BigInt(1) << static_cast<unsigned>(-e));
    }
    return r;
}

// Column critical depths D(j) = max{i : mark(i, j) = C}; D(0) is treated as
// +infinity since column 0 is critical at every depth.
std::vector<int> critical_depths(const Tableau& t) {
    std::vector<int> d(static_cast<size_t>(t.width), -1);
    d[0] = INT_MAX;
    for (int j = 1; j < t.width; ++j) {
        for (int i = t.max_depth(); i >= 0; --i) {
            if (t.at(i, j) == Mark::Critical) {
                d[static_cast<size_t>(j)] = i;
                break;
            }
        }
    }
    return d;
}

// Shared core: root scan + child closure, sorted into nesting (depth) order.
Nest build_nest_core(const Tableau& tableau) {
    Nest nest;
    nest.tableau = tableau;
    nest.column_critical_depth = critical_depths(tableau);

    int root = -1;
    for (int d = 0; d + 2 <= tableau.max_depth(); ++d) {
        if (children_of(tableau, d).size() >= 2) {
            root = d;
            break;
        }
    }
    if (root < 0) {
        throw WindowTooShallow(
            "no annulus with two children inside the window");
    }
    nest.root_depth = root;

    // Child closure; parent links are unique (two different parents of the
    // same depth would contradict the univalence requirement).
    std::map<int, std::pair<int, int>> origin;  // depth -> (parent depth, k)
    std::vector<int> frontier{root};
    origin[root] = {-1, 0};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int d : frontier) {
            if (d + 2 > tableau.max_depth()) continue;
            for (const ChildLink& link : children_of(tableau, d)) {
                if (origin.count(link.child_depth)) {
                    throw NotANest("annulus at depth " +
                                   std::to_string(link.child_depth) +
                                   " has two parents");
                }
                origin[link.child_depth] = {d, link.iterate};
                next.push_back(link.child_depth);
            }
        }
        frontier = std::move(next);
    }

    nest.annuli.reserve(origin.size());
    std::map<int, int> index_of;  // depth -> nest index (map is depth-sorted)
    for (const auto& [depth, par] : origin) {
        NestAnnulus a;
        a.index = static_cast<int>(nest.annuli.size());
        a.depth = depth;
        index_of[depth] = a.index;
        if (par.first >= 0) {
            a.parent = index_of.at(par.first);
            a.iterate_to_parent = par.second;
            const NestAnnulus& p = nest.annuli[static_cast<size_t>(a.parent)];
            a.generation = p.generation + 1;
            a.iterate_to_root = p.iterate_to_root + par.second;
            nest.annuli[static_cast<size_t>(a.parent)].children.push_back(
                a.index);
        }
        nest.annuli.push_back(std::move(a));
    }

    // Completeness: generation g counts as fully represented while it holds
    // at least 2^g annuli (the count guaranteed when every ancestor has two
    // children in the window).
    std::vector<long long> per_gen;
    for (const NestAnnulus& a : nest.annuli) {
        if (static_cast<size_t>(a.generation) >= per_gen.size()) {
            per_gen.resize(static_cast<size_t>(a.generation) + 1, 0);
        }
        ++per_gen[static_cast<size_t>(a.generation)];
    }
    int complete = 0;
    for (size_t g = 0; g < per_gen.size() && g < 62; ++g) {
        if (per_gen[g] < (1LL << g)) break;
        complete = static_cast<int>(g);
    }
    nest.complete_generations = complete;
    return nest;
}

// Follow the parent chain of node x through exactly K iterates; returns the
// landing nest index, or -1 when the chain cannot consume K exactly (the
// forward image is then not an annulus of the nest).
int walk_parent_chain(const Nest& nest, int x, int K,
                      std::vector<int>* iterates = nullptr) {
    while (K > 0) {
        const NestAnnulus& a = nest.annuli[static_cast<size_t>(x)];
        if (a.parent < 0 || a.iterate_to_parent > K) return -1;
        if (iterates) iterates->push_back(a.iterate_to_parent);
        K -= a.iterate_to_parent;
        x = a.parent;
    }
    return x;
}

}  // namespace

int Nest::index_of_depth(int d) const {
    auto it = std::lower_bound(
        annuli.begin(), annuli.end(), d,
        [](const NestAnnulus& a, int depth) { return a.depth < depth; });
    if (it == annuli.end() || it->depth != d) return -1;
    return it->index;
}

Nest nest_from_tableau(const Tableau& tableau) {
    return build_nest_core(tableau);
}

DescendantNode descendant_tree(const Nest& nest, int generations) {
    if (nest.annuli.empty()) throw NotANest("empty nest");
    if (nest.annuli[0].children.size() < 2) {
        throw NotExcellent("root annulus has fewer than two children");
    }
    if (generations > nest.complete_generations) {
        throw WindowTooShallow(
            "window supports only " +
            std::to_string(nest.complete_generations) +
            " complete generations, requested " + std::to_string(generations));
    }
    struct Builder {
        const Nest& nest;
        int limit;
        DescendantNode make(int idx) const {
            const NestAnnulus& a = nest.annuli[static_cast<size_t>(idx)];
            DescendantNode n;
            n.generation = a.generation;
            n.index = idx;
            n.depth = a.depth;
            n.iterate_to_root = a.iterate_to_root;
            n.covering_degree = 1LL << a.generation;
            n.degenerate = a.degenerate;
            if (a.generation < limit) {
                for (int c : a.children) n.children.push_back(make(c));
            }
            return n;
        }
    };
    return Builder{nest, generations}.make(0);
}

std::vector<ComplementaryAnnulus> complementary_annuli(const Nest& nest) {
    const size_t L = nest.annuli.size();
    if (L < 3) throw NotANest("nest has fewer than three annuli");
    for (size_t i = 1; i < L; ++i) {
        if (nest.annuli[i].depth <= nest.annuli[i - 1].depth) {
            throw NotANest("nest is not strictly nested");
        }
    }
    std::vector<ComplementaryAnnulus> out;
    out.reserve(L - 2);
    for (size_t j = 0; j + 2 < L; ++j) {
        ComplementaryAnnulus a;
        a.index = static_cast<int>(j);
        a.outer = static_cast<int>(j);
        a.middle = static_cast<int>(j + 1);
        a.inner = static_cast<int>(j + 2);
        a.outer_generation = nest.annuli[j].generation;
        a.inner_generation = nest.annuli[j + 2].generation;
        if (j < nest.alpha_moduli.size()) a.modulus = nest.alpha_moduli[j];
        if (j < nest.alpha_modulus_values.size()) {
            a.modulus_value = nest.alpha_modulus_values[j];
        }
        a.degenerate = nest.synthetic ? a.modulus == 0 : a.modulus_value == 0.0;
        a.intermediate_generation = intermediate_generation(nest, a);
        out.push_back(std::move(a));
    }
    return out;
}

int intermediate_generation(const Nest& nest, const ComplementaryAnnulus& a) {
    const NestAnnulus& inner = nest.annuli[static_cast<size_t>(a.inner)];
    if (inner.parent < 0) {
        throw ChainUnknown("inner annulus has no parent in the window");
    }
    const int K = inner.iterate_to_parent;
    const int landing = walk_parent_chain(nest, a.middle, K);
    // A failed walk means the forward image of the middle annulus leaves the
    // nest, i.e. has generation at most zero.
    if (landing < 0) return 0;
    return nest.annuli[static_cast<size_t>(landing)].generation;
}

AncestorLink ancestor_of(const Nest& nest,
                         const std::vector<ComplementaryAnnulus>& alphas,
                         const ComplementaryAnnulus& a) {
    const int ig = intermediate_generation(nest, a);
    if (ig < 1) {
        throw IntermediateGenerationTooLow(
            "complementary annulus " + std::to_string(a.index) +
            " has intermediate generation " + std::to_string(ig));
    }
    const NestAnnulus& inner = nest.annuli[static_cast<size_t>(a.inner)];
    const int K = inner.iterate_to_parent;
    const int iq = inner.parent;

    std::vector<int> middle_iterates;
    const int r_mid = walk_parent_chain(nest, a.middle, K, &middle_iterates);
    if (r_mid != iq - 1) {
        throw NotANest("middle annulus of " + std::to_string(a.index) +
                       " does not map onto the ancestor's middle annulus");
    }
    AncestorLink link;
    const int r_out = walk_parent_chain(nest, a.outer, K, &link.iterates);
    if (r_out != iq - 2) {
        throw NotANest("outer annulus of " + std::to_string(a.index) +
                       " does not map onto the ancestor's outer annulus");
    }
    link.from = a.index;
    link.to = iq - 2;  // alpha index equals the nest index of its outer ring
    link.pullback_steps = static_cast<int>(link.iterates.size());
    link.middle_degree = 1LL << middle_iterates.size();
    link.factor = pow2_rational(-link.pullback_steps);
    if (static_cast<size_t>(link.to) >= alphas.size()) {
        throw NotANest("ancestor index out of range");
    }
    return link;
}

std::pair<int, Rational> grand_ancestor(
    const Nest& nest, const std::vector<ComplementaryAnnulus>& alphas,
    const ComplementaryAnnulus& a) {
    int cur = a.index;
    Rational factor = 1;
    while (alphas[static_cast<size_t>(cur)].inner_generation > 1 &&
           intermediate_generation(nest, alphas[static_cast<size_t>(cur)]) >=
               1) {
        const AncestorLink link =
            ancestor_of(nest, alphas, alphas[static_cast<size_t>(cur)]);
        factor *= link.factor;
        cur = link.to;
    }
    return {cur, factor};
}

std::pair<Parity, std::vector<int>> select_nonoverlapping(
    const std::vector<ComplementaryAnnulus>& alphas, int outer_generation) {
    std::vector<int> at_gen;
    for (const ComplementaryAnnulus& a : alphas) {
        if (a.outer_generation == outer_generation) at_gen.push_back(a.index);
    }
    if (at_gen.empty()) {
        throw EmptyInput("no complementary annuli at outer generation " +
                         std::to_string(outer_generation));
    }
    size_t even = 0;
    for (int i : at_gen) {
        if (alphas[static_cast<size_t>(i)].inner_generation % 2 == 0) ++even;
    }
    const Parity parity =
        2 * even >= at_gen.size() ? Parity::Even : Parity::Odd;
    std::vector<int> selected;
    int last = -2;  // indices start at 0, so nothing clashes with this
    for (int i : at_gen) {
        const int want = parity == Parity::Even ? 0 : 1;
        if (alphas[static_cast<size_t>(i)].inner_generation % 2 != want) {
            continue;
        }
        // alpha_i and alpha_j overlap exactly when |i - j| <= 1; drop
        // stragglers greedily so the selection is pairwise disjoint.
        if (i - last <= 1) continue;
        selected.push_back(i);
        last = i;
    }
    return {parity, selected};
}

DivergenceReport divergence_report(const Nest& nest, int batch_count,
                                   bool allow_partial) {
    DivergenceReport rep;
    rep.requested_batches = batch_count;
    rep.achieved_generations = nest.complete_generations;
    const std::vector<ComplementaryAnnulus> alphas =
        complementary_annuli(nest);
    const bool exact = nest.synthetic;

    // One-step ancestor modulus bound, checked for every complementary
    // annulus that has an ancestor.
    for (const ComplementaryAnnulus& a : alphas) {
        if (a.intermediate_generation < 1) continue;
        AncestorLink link;
        try {
            link = ancestor_of(nest, alphas, a);
        } catch (const NotANest&) {
            if (!allow_partial) throw;
            continue;
        }
        const ComplementaryAnnulus& b = alphas[static_cast<size_t>(link.to)];
        bool ok = true;
        if (exact) {
            ok = a.modulus >= link.factor * b.modulus;
        } else if (b.modulus_value > 0.0) {
            const double bound =
                static_cast<double>(link.factor) * b.modulus_value;
            ok = a.modulus_value >= bound * (1.0 - 1e-9) - 1e-12;
        }
        if (!ok) {
            std::ostringstream msg;
            msg << "one-step ancestor modulus bound violated: alpha "
                << a.index << " has modulus " << a.modulus
                << " < 2^-" << link.pullback_steps << " * " << b.modulus
                << " (ancestor alpha " << link.to << ")";
            rep.violations.push_back(msg.str());
        }
    }

    // m0: smallest outer generation from which every complementary annulus
    // in the window has intermediate generation >= 1 (the shallower
    // exceptions are finitely many, all below m0).
    int max_gen = 0;
    for (const ComplementaryAnnulus& a : alphas) {
        max_gen = std::max(max_gen, a.outer_generation);
    }
    int m0 = -1;
    for (int m = 1; m <= max_gen; ++m) {
        bool all_ok = true;
        bool any = false;
        for (const ComplementaryAnnulus& a : alphas) {
            if (a.outer_generation < m) continue;
            any = true;
            if (a.intermediate_generation < 1) {
                all_ok = false;
                break;
            }
        }
        if (any && all_ok) {
            m0 = m;
            break;
        }
    }
    rep.m0 = m0;
    if (m0 < 0) {
        if (!allow_partial) {
            throw InsufficientDepth(
                "no outer generation has uniformly positive intermediate "
                "generations");
        }
        rep.all_bounds_hold = rep.violations.empty();
        return rep;
    }

    // Grand-ancestor floor M0 over the annuli the batches draw from.
    bool have_m0_value = false;
    for (const ComplementaryAnnulus& a : alphas) {
        if (a.outer_generation < m0) continue;
        int g = -1;
        try {
            g = grand_ancestor(nest, alphas, a).first;
        } catch (const NotANest&) {
            if (!allow_partial) throw;
            continue;
        }
        const ComplementaryAnnulus& ga = alphas[static_cast<size_t>(g)];
        if (!have_m0_value || ga.modulus < rep.M0) rep.M0 = ga.modulus;
        if (!have_m0_value || ga.modulus_value < rep.M0_value) {
            rep.M0_value = ga.modulus_value;
        }
        have_m0_value = true;
    }
    if (!have_m0_value) {
        if (!allow_partial) {
            throw InsufficientDepth(
                "no complementary annulus reaches a grand ancestor in the "
                "window");
        }
        rep.all_bounds_hold = rep.violations.empty();
        return rep;
    }

    // Batches: scan outer generations upward from m0. Within one generation
    // a single inner-generation parity keeps the batch pairwise disjoint
    // (the parity is re-chosen per batch by majority among the candidates
    // still disjoint from earlier batches); a batch is accepted only when
    // its sum clears M0/2. The report's parity is the one of the first
    // batch.
    std::vector<bool> used(alphas.size(), false);
    bool first_batch = true;
    for (int m = m0; m <= max_gen &&
                     static_cast<int>(rep.batches.size()) < batch_count;
         ++m) {
        std::vector<int> candidates;
        size_t even = 0;
        for (const ComplementaryAnnulus& a : alphas) {
            if (a.outer_generation != m) continue;
            const int i = a.index;
            // Disjointness against earlier batches.
            const bool clash =
                used[static_cast<size_t>(i)] ||
                (i > 0 && used[static_cast<size_t>(i - 1)]) ||
                (static_cast<size_t>(i + 1) < used.size() &&
                 used[static_cast<size_t>(i + 1)]);
            if (clash) continue;
            candidates.push_back(i);
            if (a.inner_generation % 2 == 0) ++even;
        }
        if (candidates.empty()) continue;
        const Parity parity = 2 * even >= candidates.size() ? Parity::Even
                                                            : Parity::Odd;
        const int want = parity == Parity::Even ? 0 : 1;
        std::vector<int> sel;
        int last = -2;
        for (int i : candidates) {
            if (alphas[static_cast<size_t>(i)].inner_generation % 2 != want) {
                continue;
            }
            // Same-parity annuli do not overlap geometrically; in nest
            // order the residual adjacencies are dropped greedily.
            if (i - last <= 1) continue;
            sel.push_back(i);
            last = i;
        }
        if (sel.empty()) continue;
        DivergenceBatch batch;
        batch.outer_generation = m;
        for (int i : sel) {
            batch.sum += alphas[static_cast<size_t>(i)].modulus;
            batch.sum_value += alphas[static_cast<size_t>(i)].modulus_value;
        }
        const bool clears = exact ? batch.sum * 2 >= rep.M0
                                  : batch.sum_value * 2.0 >=
                                        rep.M0_value * (1.0 - 1e-9);
        if (!clears) continue;  // keep scanning deeper generations
        if (first_batch) {
            rep.parity = parity;
            first_batch = false;
        }
        batch.alphas = sel;
        for (int i : sel) used[static_cast<size_t>(i)] = true;
        rep.running_total += batch.sum;
        rep.running_total_value += batch.sum_value;
        rep.batches.push_back(std::move(batch));
    }
    if (static_cast<int>(rep.batches.size()) < batch_count && !allow_partial) {
        throw InsufficientDepth(
            "only " + std::to_string(rep.batches.size()) + " of " +
            std::to_string(batch_count) + " batches fit in the window");
    }
    rep.all_bounds_hold =
        rep.violations.empty() &&
        static_cast<int>(rep.batches.size()) == batch_count;
    return rep;
}

// ---------------------------------------------------------------------------
// Synthetic mode

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// One attempt at a coherent column-depth sequence D(1..width-1). The escape
// sequence E(j) = D(j) + j must satisfy, for all j, k >= 1 with j + k in
// range,
//     min(E(j+k), E(j)) = min(E(k) + j, E(j)),
// which is exactly the transport of puzzle-piece membership along the
// orbit: whatever column k did, column j+k replays at depth offset j until
// the depth where column j's information runs out. Free positions (no
// forced value) follow a return schedule: a return at time s dives to depth
// about s, and the next return is placed just past its shadow s + D(s), so
// every annulus shallower than D(s) collects a new child at every later
// return and the descendant tree roughly doubles per return.
bool generate_depths(const SyntheticSpec& spec, std::mt19937_64& rng,
                     std::vector<int>& depths) {
    const int W = spec.width;
    std::vector<long long> E(static_cast<size_t>(W), 0);
    depths.assign(static_cast<size_t>(W), -1);
    long long max_depth = 0;
    long long next_return = 1;
    for (int t = 1; t < W; ++t) {
        long long forced = -1, lower = -1;
        for (int j = 1; j < t; ++j) {
            const int k = t - j;
            if (E[k] + j < E[j]) {
                const long long f = E[k] + j;
                if (forced >= 0 && forced != f) return false;
                forced = f;
            } else {
                lower = std::max(lower, E[j]);
            }
        }
        if (forced >= 0) {
            if (forced < lower) return false;
            E[t] = forced;
            if (t >= next_return) next_return = t + 1;
        } else {
            const long long base = std::max(lower, static_cast<long long>(t) - 1);
            if (t >= next_return) {
                const long long dive = std::min<long long>(
                    spec.depth_cap, t + static_cast<long long>(rng() % 4));
                E[t] = std::max(base, t + dive);
                next_return =
                    t + (E[t] - t) + 1 + static_cast<long long>(rng() % 4);
            } else {
                E[t] = base + ((rng() % 8) == 0 ? 1 : 0);
            }
        }
        depths[static_cast<size_t>(t)] = static_cast<int>(E[t] - t);
        max_depth = std::max(max_depth, E[t] - static_cast<long long>(t));
        if (max_depth > spec.depth_cap) return false;
    }
    return true;
}

Tableau tableau_from_depths(const std::vector<int>& depths) {
    Tableau t;
    t.width = static_cast<int>(depths.size());
    int max_d = 0;
    for (size_t j = 1; j < depths.size(); ++j) {
        max_d = std::max(max_d, depths[j]);
    }
    const int rows = max_d + 3;  // room for the semi-critical cell and below
    t.marks.assign(static_cast<size_t>(rows),
                   std::vector<Mark>(depths.size(), Mark::OffCritical));
    for (int i = 0; i < rows; ++i) t.marks[static_cast<size_t>(i)][0] = Mark::Critical;
    for (size_t j = 1; j < depths.size(); ++j) {
        for (int i = 0; i <= depths[j] && i < rows; ++i) {
            t.marks[static_cast<size_t>(i)][j] = Mark::Critical;
        }
        if (depths[j] + 1 < rows && depths[j] >= -1) {
            t.marks[static_cast<size_t>(depths[j] + 1)][j] =
                Mark::SemiCritical;
        }
    }
    return t;
}

}  // namespace

Nest synthetic_nest(const SyntheticSpec& spec) {
    if (spec.width < 8 || spec.depth_cap < 4 || spec.generations < 1 ||
        spec.batches < 1 || spec.M0 <= 0) {
        throw InvalidSpec("synthetic nest spec out of range");
    }
    for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
        std::mt19937_64 rng(splitmix64(spec.seed * 0x1000003ULL +
                                       static_cast<std::uint64_t>(attempt)));
        std::vector<int> depths;
        if (!generate_depths(spec, rng, depths)) continue;
        const Tableau tableau = tableau_from_depths(depths);
        if (!is_recurrent(tableau).recurrent_so_far) continue;
        if (is_periodic(tableau).periodic_in_window) continue;

        Nest nest;
        try {
            nest = build_nest_core(tableau);
        } catch (const WindowTooShallow&) {
            continue;
        } catch (const NotANest&) {
            continue;
        }
        nest.synthetic = true;
        nest.seed = spec.seed;
        nest.generation_attempts = attempt + 1;
        if (nest.complete_generations < spec.generations) continue;

        // Plant exact moduli: mod(alpha) = C * 2^{-outer generation}. The
        // one-step ancestor bound then holds with equality, and C is chosen
        // so the grand-ancestor floor equals the requested M0.
        std::vector<ComplementaryAnnulus> alphas;
        try {
            alphas = complementary_annuli(nest);
        } catch (const NotANest&) {
            continue;
        }
        bool consistent = true;
        int max_grand_gen = -1;
        for (const ComplementaryAnnulus& a : alphas) {
            if (a.intermediate_generation < 1) continue;
            try {
                (void)ancestor_of(nest, alphas, a);
                const auto [g, factor] = grand_ancestor(nest, alphas, a);
                max_grand_gen = std::max(
                    max_grand_gen,
                    alphas[static_cast<size_t>(g)].outer_generation);
            } catch (const NotANest&) {
                consistent = false;
                break;
            }
        }
        if (!consistent || max_grand_gen < 0) continue;

        nest.alpha_moduli.resize(alphas.size());
        nest.alpha_modulus_values.resize(alphas.size());
        for (const ComplementaryAnnulus& a : alphas) {
            // Floor-capped geometric decay: halves per generation down to
            // the deepest grand-ancestor generation, constant M0 below it.
            // The one-step bound mod(from) >= 2^{m1-m} mod(to) holds for
            // every m1 <= m, and the grand-ancestor floor is exactly M0.
            const Rational m =
                spec.M0 * pow2_rational(std::max(
                              max_grand_gen - a.outer_generation, 0));
            nest.alpha_moduli[static_cast<size_t>(a.index)] = m;
            nest.alpha_modulus_values[static_cast<size_t>(a.index)] =
                static_cast<double>(m);
        }

        // Dry-run the accounting before accepting the seed.
        try {
            const DivergenceReport rep = divergence_report(nest, spec.batches);
            if (!rep.all_bounds_hold) continue;
        } catch (const std::exception&) {
            continue;
        }

        if (spec.violation_alpha >= 0) {
            // Lower the requested (by rank) complementary annulus among
            // those whose one-step bound is actually checked to half of
            // what its ancestor demands -- a guaranteed violation.
            std::vector<int> eligible;
            for (const ComplementaryAnnulus& a : alphas) {
                if (a.intermediate_generation >= 1) eligible.push_back(a.index);
            }
            const int v = eligible[static_cast<size_t>(spec.violation_alpha) %
                                   eligible.size()];
            const AncestorLink link =
                ancestor_of(nest, alphas, alphas[static_cast<size_t>(v)]);
            nest.alpha_moduli[static_cast<size_t>(v)] =
                link.factor *
                nest.alpha_moduli[static_cast<size_t>(link.to)] / 2;
            nest.alpha_modulus_values[static_cast<size_t>(v)] =
                static_cast<double>(nest.alpha_moduli[static_cast<size_t>(v)]);
        }
        return nest;
    }
    throw InvalidSpec("no coherent synthetic nest found within " +
                      std::to_string(spec.max_attempts) + " attempts");
}

}  // namespace dualnest
