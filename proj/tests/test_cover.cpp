#include "wpw/cover.hpp"
#include "wpw/errors.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace wpw;

namespace {

CoverInstance two_page(int R) {
    CoverInstance ci;
    ci.n = 2;
    ci.horizon = 3;
    ci.weights = {Rat(1), Rat(3)};
    ci.tiles = tiles_from_boundaries(0, {0, 2}, 3);
    auto b = tiles_from_boundaries(1, {0}, 3);
    ci.tiles.insert(ci.tiles.end(), b.begin(), b.end());
    ci.requirement.assign(4, R);
    return ci;
}

CoverInstance random_cover(std::mt19937_64& g, int pages, int horizon, int max_req, bool excl) {
    CoverInstance ci;
    ci.n = pages;
    ci.horizon = horizon;
    for (int p = 0; p < pages; ++p) {
        ci.weights.push_back(Rat(1 + static_cast<int>(g() % 5)));
        std::vector<int> b{0};
        for (int t = 1; t <= horizon; ++t)
            if (g() % 3 == 0) b.push_back(t);
        auto ts = tiles_from_boundaries(p, b, horizon);
        ci.tiles.insert(ci.tiles.end(), ts.begin(), ts.end());
    }
    for (int t = 0; t <= horizon; ++t) {
        int cap = excl ? pages - 1 : pages;
        ci.requirement.push_back(static_cast<int>(g() % static_cast<std::uint64_t>(std::min(max_req, cap) + 1)));
        if (excl) ci.excluded.push_back(static_cast<int>(g() % static_cast<std::uint64_t>(pages)));
    }
    return ci;
}

bool feasible_by_count(const CoverInstance& ci, const std::vector<std::size_t>& sel) {
    for (int t = 0; t <= ci.horizon; ++t) {
        int c = 0;
        for (auto j : sel)
            if (ci.tiles[j].contains(t) && ci.tiles[j].page != ci.excluded_at(t)) ++c;
        if (c < ci.requirement[static_cast<std::size_t>(t)]) return false;
    }
    return true;
}

}  // namespace

TEST(CoverOffline, CheapTilesWin) {
    auto s = solve_offline(two_page(1));
    EXPECT_EQ(s.weight, Rat(2));
    EXPECT_EQ(s.selected, (std::vector<std::size_t>{0, 1}));
}

TEST(CoverOffline, RequirementTwoTakesAll) { EXPECT_EQ(solve_offline(two_page(2)).weight, Rat(5)); }

TEST(CoverOffline, ZeroRequirementEmpty) {
    auto s = solve_offline(two_page(0));
    EXPECT_TRUE(s.selected.empty());
    EXPECT_EQ(s.weight, Rat(0));
}

TEST(CoverOffline, InfeasibleRequirement) { EXPECT_THROW(solve_offline(two_page(3)), InfeasibleCover); }

TEST(CoverOffline, MatchesExhaustiveProperty) {
    std::mt19937_64 g(1);
    for (int i = 0; i < 300; ++i) {
        int pages = 1 + static_cast<int>(g() % 5);
        auto ci = random_cover(g, pages, static_cast<int>(g() % 11), pages, false);
        auto a = solve_offline(ci);
        auto b = solve_exhaustive(ci);
        EXPECT_TRUE(feasible_by_count(ci, a.selected));
        EXPECT_EQ(a.weight, b.weight) << "case " << i;
        EXPECT_NEAR(cover_lp_value(ci), to_double(a.weight), 1e-9) << "case " << i;
    }
}

TEST(CoverOffline, RestrictedUsesOnlyAllowed) {
    auto ci = two_page(1);
    auto s = solve_offline_restricted(ci, {2});
    EXPECT_EQ(s.selected, std::vector<std::size_t>{2});
    EXPECT_EQ(s.weight, Rat(3));
}

TEST(CoverExcl, NonBindingExclusionsMatchPlain) {
    auto ci = two_page(1);
    auto plain = solve_offline(ci).weight;
    ci.excluded.assign(4, -1);
    EXPECT_EQ(solve_offline_excl(ci).weight, plain);
}

TEST(CoverExcl, ForcedSelection) {
    CoverInstance ci;
    ci.n = 3;
    ci.horizon = 0;
    ci.weights = {Rat(1), Rat(2), Rat(3)};
    for (int p = 0; p < 3; ++p) ci.tiles.push_back({p, 0, 0});
    ci.requirement = {2};
    ci.excluded = {0};
    auto s = solve_offline_excl(ci);
    EXPECT_EQ(s.selected, (std::vector<std::size_t>{1, 2}));
}

TEST(CoverExcl, WithinTwiceExhaustiveProperty) {
    std::mt19937_64 g(2);
    for (int i = 0; i < 300; ++i) {
        int pages = 2 + static_cast<int>(g() % 3);
        auto ci = random_cover(g, pages, static_cast<int>(g() % 9), pages, true);
        auto a = solve_offline_excl(ci);
        auto b = solve_exhaustive(ci);
        EXPECT_TRUE(feasible_by_count(ci, a.selected)) << "case " << i;
        EXPECT_LE(a.weight, Rat(2) * b.weight) << "case " << i;
        EXPECT_GE(a.weight, b.weight);
    }
}

TEST(CoverExcl, ExcludedTileNeverCounts) {
    CoverInstance ci;
    ci.n = 2;
    ci.horizon = 0;
    ci.weights = {Rat(1), Rat(1)};
    ci.tiles = {{0, 0, 0}, {1, 0, 0}};
    ci.requirement = {1};
    ci.excluded = {0};
    EXPECT_EQ(coverage_at(ci, {0}, 0), 0);
    EXPECT_EQ(coverage_at(ci, {0, 1}, 0), 1);
    EXPECT_FALSE(cover_feasible(ci, {0}));
}

TEST(CoverOnline, ZeroRequirementNothingBought) {
    auto r = run_online_cover(two_page(0), 2);
    EXPECT_TRUE(r.solution.selected.empty());
    EXPECT_EQ(r.fractional_cost, 0.0);
}

TEST(CoverOnline, ForcedWhenOneSlack) {
    std::mt19937_64 g(4);
    for (int i = 0; i < 40; ++i) {
        int pages = 2 + static_cast<int>(g() % 3);
        auto ci = random_cover(g, pages, 1 + static_cast<int>(g() % 8), pages, false);
        std::fill(ci.requirement.begin(), ci.requirement.end(), pages - 1);
        auto off = solve_offline(ci);
        auto on = run_online_cover(ci, 1);
        EXPECT_TRUE(feasible_by_count(ci, on.solution.selected));
        EXPECT_GE(on.solution.weight, off.weight);
    }
}

TEST(CoverOnline, FeasibleAndMonotoneProperty) {
    std::mt19937_64 g(5);
    for (int i = 0; i < 100; ++i) {
        int pages = 2 + static_cast<int>(g() % 4);
        int R = 1 + static_cast<int>(g() % static_cast<std::uint64_t>(pages - 1));
        auto ci = random_cover(g, pages, 2 + static_cast<int>(g() % 9), pages, i % 2 == 1);
        for (int t = 0; t <= ci.horizon; ++t) ci.requirement[static_cast<std::size_t>(t)] = std::min(R, ci.has_exclusions() ? pages - 1 : pages);
        OnlineCoverOptions o;
        o.seed = static_cast<std::uint64_t>(i + 1);
        OnlineCover oc(ci.weights, pages - R, ci.has_exclusions(), o);
        std::vector<double> last(static_cast<std::size_t>(pages), 0.0);
        for (int t = 0; t <= ci.horizon; ++t) {
            std::vector<int> closed;
            for (int p = 0; p < pages; ++p)
                for (const auto& tile : ci.tiles)
                    if (tile.page == p && tile.start == t && t > 0) closed.push_back(p);
            oc.begin_time(t, closed, ci.requirement[static_cast<std::size_t>(t)]);
            for (int p : closed) last[static_cast<std::size_t>(p)] = 0.0;
            for (int p = 0; p < pages; ++p) {
                double before = last[static_cast<std::size_t>(p)];
                oc.require(t, ci.requirement[static_cast<std::size_t>(t)], ci.excluded_at(t));
                EXPECT_GE(oc.z(p) + 1e-12, before);
                last[static_cast<std::size_t>(p)] = oc.z(p);
            }
        }
        auto run = run_online_cover(ci, pages - R, o);
        EXPECT_TRUE(feasible_by_count(ci, run.solution.selected)) << "case " << i;
    }
}

// Measured constant: mean online/offline over random no-exclusion runs
// stays under 3 ln(k+2).
TEST(CoverOnline, MonteCarloRatio) {
    std::mt19937_64 g(6);
    double sum = 0;
    int count = 0;
    for (int i = 0; i < 50; ++i) {
        int pages = 3 + static_cast<int>(g() % 3);
        int k = 1 + static_cast<int>(g() % 2);
        auto ci = random_cover(g, pages, 10, pages, false);
        std::fill(ci.requirement.begin(), ci.requirement.end(), pages - k);
        auto off = solve_offline(ci);
        if (off.weight == Rat(0)) continue;
        OnlineCoverOptions o;
        o.seed = static_cast<std::uint64_t>(100 + i);
        auto on = run_online_cover(ci, k, o);
        sum += to_double(on.solution.weight) / to_double(off.weight);
        ++count;
    }
    ASSERT_GT(count, 0);
    EXPECT_LE(sum / count, 3 * std::log(4.0));
}
