#pragma once

#include "dualnest/tableau.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualnest {

using Rational = boost::multiprecision::cpp_rational;

struct NotExcellent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotANest : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ChainUnknown : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IntermediateGenerationTooLow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientDepth : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One annulus A_d(0) of the critical nest, i.e. the region between
/// dP_d(0) and dP_{d+1}(0). The nest is the set of descendants of the
/// root (the first annulus with two children in the window), sorted by
/// depth, which is also the nesting order.
struct NestAnnulus {
    int index = -1;       // position in the nest
    int depth = -1;       // puzzle depth d
    int generation = 0;   // child links down from the root
    int parent = -1;      // nest index of the parent (-1 for the root)
    int iterate_to_parent = 0;   // k with f^k: this -> parent, degree 2
    long long iterate_to_root = 0;
    bool degenerate = true;
    Rational modulus = 0;        // exact (synthetic mode)
    double modulus_value = 0.0;  // solver estimate (geometric mode)
    std::vector<int> children;   // nest indices
};

struct Nest {
    bool synthetic = false;
    Tableau tableau;  // marks driving all combinatorics
    int root_depth = -1;
    std::vector<NestAnnulus> annuli;
    // Column critical depths D(j) = max{i : mark(i,j) = C}, D(0) treated as
    // +infinity. All child/iterate bookkeeping reduces to this sequence.
    std::vector<int> column_critical_depth;
    std::uint64_t seed = 0;       // synthetic provenance
    int generation_attempts = 0;  // rejection-sampling count (synthetic)
    // Moduli of the complementary annuli, indexed like the result of
    // complementary_annuli(): exact planted values in synthetic mode,
    // solver estimates in geometric mode. May be empty (geometric runs
    // that never priced the regions).
    std::vector<Rational> alpha_moduli;
    std::vector<double> alpha_modulus_values;
    // All nodes of generation < complete_generations have >= 2 children
    // inside the window, so generation counts below it are >= 2^i.
    int complete_generations = 0;

    int index_of_depth(int d) const;
};

/// Tree view of the nest (children recorded by value, to the requested
/// generation).
struct DescendantNode {
    int generation = 0;
    int index = -1;  // nest index of the annulus
    int depth = -1;
    long long iterate_to_root = 0;
    long long covering_degree = 1;  // = 2^generation
    bool degenerate = true;
    std::vector<DescendantNode> children;
};

/// alpha_j = in(A_j) \cap out(A_{j+2}) with middle annulus A_{j+1},
/// everything indexed into Nest::annuli.
struct ComplementaryAnnulus {
    int index = -1;  // j
    int outer = -1, middle = -1, inner = -1;  // nest indices j, j+1, j+2
    int outer_generation = 0;                 // m
    int inner_generation = 0;                 // n
    int intermediate_generation = 0;          // generation of the forward
                                              // image of the middle annulus
    Rational modulus = 0;
    double modulus_value = 0.0;
    bool degenerate = false;
};

struct AncestorLink {
    int from = -1, to = -1;     // complementary-annulus indices
    std::vector<int> iterates;  // k, k_1, ..., one per pullback step
    int pullback_steps = 0;     // m - m1
    long long middle_degree = 2;
    Rational factor;  // 2^{m1 - m}: mod(from) >= factor * mod(to)
};

enum class Parity { Even, Odd };

struct DivergenceBatch {
    int outer_generation = 0;
    std::vector<int> alphas;  // complementary-annulus indices
    Rational sum = 0;
    double sum_value = 0.0;
};

struct DivergenceReport {
    Rational M0 = 0;  // min modulus over reachable grand ancestors
    double M0_value = 0.0;
    Parity parity = Parity::Even;
    int m0 = -1;  // first outer generation from which every complementary
                  // annulus has intermediate generation >= 1
    std::vector<DivergenceBatch> batches;
    Rational running_total = 0;
    double running_total_value = 0.0;
    int requested_batches = 0;
    int achieved_generations = 0;
    std::vector<std::string> violations;  // named inequality failures
    bool all_bounds_hold = true;
};

struct SyntheticSpec {
    int width = 2600;      // tableau columns
    int depth_cap = 2400;  // cap on any single column's critical depth
    std::uint64_t seed = 1;
    Rational M0 = 1;      // normalized grand-ancestor floor
    int generations = 7;  // required complete tree generations
    int batches = 5;      // batches the planted nest must support
    int max_attempts = 200;
    // When >= 0, the modulus of that complementary annulus is scaled down
    // after planting so the one-step ancestor modulus bound fails (negative
    // control). -1 plants a clean nest.
    int violation_alpha = -1;
};

Nest synthetic_nest(const SyntheticSpec& spec);

/// Combinatorial nest from a geometric tableau (root scan + child closure);
/// moduli left unset. Throws WindowTooShallow when no excellent root fits.
Nest nest_from_tableau(const Tableau& tableau);

DescendantNode descendant_tree(const Nest& nest, int generations);

std::vector<ComplementaryAnnulus> complementary_annuli(const Nest& nest);

int intermediate_generation(const Nest& nest, const ComplementaryAnnulus& a);

/// Unique ancestor of a complementary annulus with intermediate generation
/// >= 1: inner boundary steps to its parent, the outer boundary follows its
/// own parent chain through the same number of iterates.
AncestorLink ancestor_of(const Nest& nest,
                         const std::vector<ComplementaryAnnulus>& alphas,
                         const ComplementaryAnnulus& a);

/// Iterated ancestors until the inner generation bottoms out; returns the
/// terminal annulus index and the accumulated modulus factor 2^{m_N - m}.
std::pair<int, Rational> grand_ancestor(
    const Nest& nest, const std::vector<ComplementaryAnnulus>& alphas,
    const ComplementaryAnnulus& a);

/// Majority inner-generation parity at the given outer generation (tie ->
/// Even); overlapping stragglers are dropped greedily so the selection is
/// pairwise disjoint.
std::pair<Parity, std::vector<int>> select_nonoverlapping(
    const std::vector<ComplementaryAnnulus>& alphas, int outer_generation);

DivergenceReport divergence_report(const Nest& nest, int batch_count,
                                   bool allow_partial = false);

}  // namespace dualnest
