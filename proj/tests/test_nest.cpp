#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dualnest/nest.hpp"

#include <map>

using namespace dualnest;

namespace {

Nest& default_nest() {
    static Nest nest = synthetic_nest(SyntheticSpec{});
    return nest;
}

std::vector<ComplementaryAnnulus>& default_alphas() {
    static std::vector<ComplementaryAnnulus> alphas =
        complementary_annuli(default_nest());
    return alphas;
}

ComplementaryAnnulus fake_alpha(int index, int inner_gen, int m = 3) {
    ComplementaryAnnulus a;
    a.index = index;
    a.outer_generation = m;
    a.inner_generation = inner_gen;
    a.intermediate_generation = 1;
    return a;
}

}  // namespace

TEST_CASE("synthetic nest: structure and determinism") {
    const Nest& nest = default_nest();
    CHECK(nest.synthetic);
    CHECK(nest.complete_generations >= 7);
    REQUIRE(!nest.annuli.empty());
    CHECK(nest.annuli.front().depth == nest.root_depth);

    std::map<int, int> per_generation;
    for (size_t i = 0; i < nest.annuli.size(); ++i) {
        const NestAnnulus& a = nest.annuli[i];
        CHECK(a.index == static_cast<int>(i));
        CHECK(a.degenerate);       // the A_j are planted degenerate
        CHECK(a.modulus == 0);
        if (i > 0) {
            CHECK(a.depth > nest.annuli[i - 1].depth);  // nesting order
            REQUIRE(a.parent >= 0);
            const NestAnnulus& p = nest.annuli[static_cast<size_t>(a.parent)];
            CHECK(a.generation == p.generation + 1);
            CHECK(a.depth - p.depth == a.iterate_to_parent);
            CHECK(a.iterate_to_root ==
                  p.iterate_to_root + a.iterate_to_parent);
        }
        ++per_generation[a.generation];
    }
    // Binary branching inside the complete window.
    for (int g = 0; g <= nest.complete_generations; ++g) {
        CHECK(per_generation[g] >= (1 << g));
    }

    const Nest again = synthetic_nest(SyntheticSpec{});
    REQUIRE(again.annuli.size() == nest.annuli.size());
    for (size_t i = 0; i < nest.annuli.size(); ++i) {
        CHECK(again.annuli[i].depth == nest.annuli[i].depth);
    }
}

TEST_CASE("descendant tree: degrees multiply, generations are full") {
    const Nest& nest = default_nest();
    const DescendantNode root = descendant_tree(nest, 4);
    std::map<int, int> count;
    const auto walk = [&](const DescendantNode& n, auto&& self) -> void {
        CHECK(n.covering_degree == (1LL << n.generation));
        ++count[n.generation];
        for (const DescendantNode& c : n.children) {
            CHECK(c.generation == n.generation + 1);
            self(c, self);
        }
    };
    walk(root, walk);
    for (int g = 0; g <= 4; ++g) CHECK(count[g] >= (1 << g));
    CHECK_THROWS_AS(descendant_tree(nest, 40), WindowTooShallow);
}

TEST_CASE("complementary annuli echo planted moduli") {
    const Nest& nest = default_nest();
    const auto& alphas = default_alphas();
    REQUIRE(alphas.size() == nest.annuli.size() - 2);
    for (const ComplementaryAnnulus& a : alphas) {
        CHECK(a.outer == a.index);
        CHECK(a.middle == a.index + 1);
        CHECK(a.inner == a.index + 2);
        CHECK(a.modulus ==
              nest.alpha_moduli[static_cast<size_t>(a.index)]);
        CHECK(a.modulus > 0);  // planted alphas are non-degenerate
        CHECK(!a.degenerate);
        CHECK(a.outer_generation ==
              nest.annuli[static_cast<size_t>(a.outer)].generation);
        CHECK(a.inner_generation ==
              nest.annuli[static_cast<size_t>(a.inner)].generation);
    }
}

TEST_CASE("every eligible annulus has exactly one ancestor, bound exact") {
    const Nest& nest = default_nest();
    const auto& alphas = default_alphas();
    int eligible = 0;
    for (const ComplementaryAnnulus& a : alphas) {
        if (a.intermediate_generation < 1) {
            CHECK_THROWS_AS(ancestor_of(nest, alphas, a),
                            IntermediateGenerationTooLow);
            continue;
        }
        ++eligible;
        const AncestorLink link = ancestor_of(nest, alphas, a);
        const ComplementaryAnnulus& b =
            alphas[static_cast<size_t>(link.to)];
        CHECK(link.from == a.index);
        CHECK(b.inner_generation == a.inner_generation - 1);
        CHECK(link.pullback_steps ==
              a.outer_generation - b.outer_generation);
        // factor = 2^{-pullback_steps}
        CHECK(link.factor * Rational(BigInt(1) << link.pullback_steps) == 1);
        CHECK(a.modulus >= link.factor * b.modulus);
        CHECK(link.middle_degree >= 2);
        CHECK(link.middle_degree <= (1LL << link.pullback_steps));
    }
    CHECK(eligible > 0);
}

TEST_CASE("grand ancestor accumulates the telescoping factor") {
    const Nest& nest = default_nest();
    const auto& alphas = default_alphas();
    for (const ComplementaryAnnulus& a : alphas) {
        if (a.intermediate_generation < 1) continue;
        const auto [g, factor] = grand_ancestor(nest, alphas, a);
        const ComplementaryAnnulus& terminal =
            alphas[static_cast<size_t>(g)];
        CHECK(factor * Rational(BigInt(1) << a.outer_generation) ==
              Rational(BigInt(1) << terminal.outer_generation));
        CHECK(a.modulus >= factor * terminal.modulus);
    }
}

TEST_CASE("parity selection") {
    // Indices must match vector positions; entries at other outer
    // generations pad the gaps so same-generation annuli are non-adjacent.
    SUBCASE("majority parity, two even ones selected") {
        std::vector<ComplementaryAnnulus> alphas{
            fake_alpha(0, 2), fake_alpha(1, 9, 99), fake_alpha(2, 4),
            fake_alpha(3, 9, 99), fake_alpha(4, 5)};
        const auto [parity, sel] = select_nonoverlapping(alphas, 3);
        CHECK(parity == Parity::Even);
        CHECK(sel == std::vector<int>{0, 2});
    }
    SUBCASE("tie breaks even") {
        std::vector<ComplementaryAnnulus> alphas{
            fake_alpha(0, 2), fake_alpha(1, 9, 99), fake_alpha(2, 3)};
        const auto [parity, sel] = select_nonoverlapping(alphas, 3);
        CHECK(parity == Parity::Even);
        CHECK(sel == std::vector<int>{0});
    }
    SUBCASE("adjacent same-parity stragglers dropped") {
        std::vector<ComplementaryAnnulus> alphas{
            fake_alpha(0, 2), fake_alpha(1, 4), fake_alpha(2, 9, 99),
            fake_alpha(3, 6)};
        const auto [parity, sel] = select_nonoverlapping(alphas, 3);
        CHECK(sel == std::vector<int>{0, 3});
    }
    SUBCASE("empty input rejected") {
        std::vector<ComplementaryAnnulus> alphas{fake_alpha(0, 2, 1)};
        CHECK_THROWS_AS(select_nonoverlapping(alphas, 9), EmptyInput);
    }
}

TEST_CASE("divergence accounting: 5 exact batches over M0 = 1") {
    const Nest& nest = default_nest();
    const DivergenceReport rep = divergence_report(nest, 5);
    CHECK(rep.M0 == 1);
    CHECK(rep.m0 >= 1);
    REQUIRE(rep.batches.size() == 5);
    std::vector<int> used;
    int prev_m = 0;
    for (const DivergenceBatch& b : rep.batches) {
        CHECK(b.outer_generation > prev_m);
        prev_m = b.outer_generation;
        CHECK(b.sum * 2 >= rep.M0);
        // One parity inside a batch; pairwise disjoint across everything.
        const auto& alphas = default_alphas();
        const int parity0 =
            alphas[static_cast<size_t>(b.alphas.front())].inner_generation %
            2;
        for (int i : b.alphas) {
            CHECK(alphas[static_cast<size_t>(i)].inner_generation % 2 ==
                  parity0);
            for (int j : used) CHECK(std::abs(i - j) > 1);
            used.push_back(i);
        }
    }
    CHECK(rep.running_total >= Rational(5, 2));
    CHECK(rep.all_bounds_hold);
    CHECK(rep.violations.empty());

    CHECK_THROWS_AS(divergence_report(nest, 50), InsufficientDepth);
    const DivergenceReport partial = divergence_report(nest, 50, true);
    CHECK(partial.batches.size() < 50);
    CHECK(static_cast<int>(partial.batches.size()) >= 5);
}

TEST_CASE("planted violation is caught and named") {
    SyntheticSpec spec;
    spec.violation_alpha = 3;
    const Nest nest = synthetic_nest(spec);
    const DivergenceReport rep = divergence_report(nest, 5, true);
    CHECK(!rep.all_bounds_hold);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().find("one-step ancestor modulus bound") !=
          std::string::npos);
}

TEST_CASE("invalid synthetic specs are rejected") {
    SyntheticSpec bad;
    bad.width = 2;
    CHECK_THROWS_AS(synthetic_nest(bad), InvalidSpec);
    SyntheticSpec impossible;
    impossible.generations = 30;  // cannot fit in any desk-size window
    impossible.max_attempts = 3;
    impossible.width = 64;
    impossible.depth_cap = 64;
    CHECK_THROWS_AS(synthetic_nest(impossible), InvalidSpec);
}
