#include "testing.hpp"

#include "wpw/assembly.hpp"
#include "wpw/ip.hpp"
#include "wpw/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wpw;
using namespace wpw::testing;

TEST(Extensions, Right) {
    EXPECT_EQ(right_extension({2, 5}, 7), (TimeInterval{2, 7}));
    EXPECT_EQ(right_extension({2, 5}, 3), (TimeInterval{2, 5}));
    EXPECT_EQ(right_extension({2, 5}, 5), (TimeInterval{2, 5}));
    EXPECT_THROW(right_extension({2, 5}, 1), PreconditionViolated);
}

TEST(Extensions, Double) {
    EXPECT_EQ(double_extension({1, 4}, {3, 9}, 9), (TimeInterval{1, 9}));
    EXPECT_EQ(double_extension({5, 6}, {3, 9}, 9), (TimeInterval{3, 9}));
    EXPECT_EQ(double_extension({3, 9}, {3, 9}, 9), (TimeInterval{3, 9}));
    EXPECT_THROW(double_extension({3, 10}, {3, 9}, 9), PreconditionViolated);
}

TEST(Extensions, ContainmentProperty) {
    std::mt19937_64 g(9);
    for (int i = 0; i < 2000; ++i) {
        int s = static_cast<int>(g() % 10), e = s + static_cast<int>(g() % 5);
        int cs = static_cast<int>(g() % 10);
        int t = e + static_cast<int>(g() % 5);
        TimeInterval I{s, e}, crit{std::min(cs, t), t};
        EXPECT_TRUE(right_extension(I, t).contains(I));
        auto d = double_extension(I, crit, t);
        EXPECT_EQ(d.end, t);
        EXPECT_EQ(d.start, std::min(s, crit.start));
    }
}

TEST(Kp, UnitPenaltiesWeightFour) {
    std::vector<Request> rs;
    for (int i = 1; i <= 9; ++i) rs.push_back(soft(i, 0, i, i, Rat(1)));
    auto kp = build_kp(0, Rat(4), 9, rs);
    ASSERT_GE(kp.boundaries.size(), 2u);
    EXPECT_EQ(kp.boundaries[0], 0);
    EXPECT_EQ(kp.boundaries[1], 5);
}

TEST(Kp, NoRequestsSingleTile) {
    auto kp = build_kp(0, Rat(1), 6, {});
    EXPECT_EQ(kp.boundaries, std::vector<int>{0});
    EXPECT_EQ(kp.tile_end(0), 7);
}

TEST(Kp, HeavyPenaltyClosesAtDeadline) {
    auto kp = build_kp(0, Rat(2), 6, {soft(0, 0, 1, 3, Rat(5))});
    EXPECT_EQ(kp.boundaries, (std::vector<int>{0, 3}));
}

TEST(Kp, TilePenaltyBoundProperty) {
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        auto inst = tiny_normalized(seed, 3, 1, 10, Variant::wPwTwP);
        for (const auto& kp : build_all_kp(inst)) {
            for (std::size_t i = 0; i < kp.boundaries.size(); ++i) {
                int a = kp.tile_start(i), b = kp.tile_end(i);
                // The scan starts at t* + 1, so [t*, t*] itself is never tested.
                for (int tp = a + 1; tp < b; ++tp) {
                    Rat total{0};
                    bool hard_inside = false;
                    for (const auto& r : inst.requests) {
                        if (r.page != kp.page || r.start < a || r.deadline > tp) continue;
                        if (r.penalty.is_hard()) hard_inside = true;
                        else total += r.penalty.value();
                    }
                    EXPECT_FALSE(hard_inside) << "seed " << seed;
                    EXPECT_LE(total, inst.weight(kp.page)) << "seed " << seed;
                }
            }
        }
    }
}

TEST(TauD, LastTileBeforeStart) {
    KpPartition kp;
    kp.horizon = 12;
    kp.boundaries = {0, 3, 7};
    auto r = tau_and_D(kp, {5, 9});
    EXPECT_EQ(r.tau, 3);
    EXPECT_EQ(r.D, (TimeInterval{3, 9}));
    EXPECT_TRUE(r.prior);
}

TEST(TauD, NoPriorTileFallsBackToZero) {
    KpPartition kp;
    kp.horizon = 5;
    auto r = tau_and_D(kp, {0, 2});
    EXPECT_EQ(r.tau, 0);
    EXPECT_EQ(r.D, (TimeInterval{0, 2}));
    EXPECT_FALSE(r.prior);
}

TEST(TauD, EndingAtStartIsNotBefore) {
    KpPartition kp;
    kp.horizon = 8;
    kp.boundaries = {0, 3};
    auto r = tau_and_D(kp, {3, 6});
    EXPECT_EQ(r.tau, 0);
    EXPECT_FALSE(r.prior);
}

TEST(TauD, MonotoneOnNetsProperty) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        auto inst = tiny_normalized(seed, 4, 2, 10, Variant::wPwTwP);
        auto kp = build_all_kp(inst);
        auto crit = critical_index(inst);
        std::vector<std::pair<int, TimeInterval>> stream;
        for (int t = 0; t <= inst.horizon; ++t)
            if (crit[static_cast<std::size_t>(t)] >= 0)
                stream.emplace_back(t, interval_of(inst.requests[static_cast<std::size_t>(crit[static_cast<std::size_t>(t)])]));
        auto net = build_net(stream);
        std::map<int, TimeInterval> civ(stream.begin(), stream.end());
        for (int p = 0; p < inst.n; ++p) {
            int prev = -1;
            for (int t : net.net) {
                int tau = tau_and_D(kp[static_cast<std::size_t>(p)], civ.at(t)).tau;
                EXPECT_LE(prev, tau) << "seed " << seed;
                prev = tau;
            }
        }
    }
}

TEST(Dp, GreedyExample) {
    auto dp = build_dp(0, 8, {{2, {0, 2}}, {4, {1, 4}}, {6, {3, 6}}});
    EXPECT_EQ(dp.boundaries, (std::vector<int>{0, 2, 6}));
}

TEST(Dp, SingleInterval) {
    auto dp = build_dp(0, 5, {{5, {0, 5}}});
    EXPECT_EQ(dp.boundaries, (std::vector<int>{0, 5}));
    EXPECT_EQ(dp.tile_end(0), 5);
}

TEST(Dp, EmptyStream) {
    auto dp = build_dp(0, 5, {});
    EXPECT_EQ(dp.boundaries, std::vector<int>{0});
}

TEST(Dp, NestedInputRejected) {
    EXPECT_THROW(build_dp(0, 8, {{3, {2, 3}}, {5, {1, 5}}}), NestedInput);
}

TEST(Stars, FromSchedule) {
    auto inst = make(1, 1, 6, {Rat(1)}, {});
    ScheduleBuilder b;
    b.load(0, 0);
    b.evict(3, 0);
    b.load(5, 0);
    auto sol = schedule_to_stars(inst, b.schedule());
    EXPECT_EQ(sol.stars, (std::set<Star>{{0, 0}, {0, 3}, {0, 5}}));
    EXPECT_TRUE(schedule_to_stars(inst, Schedule{}).stars.empty());
}

TEST(IpCheck, EmptyQuantifierWhenFewPages) {
    auto inst = make(1, 1, 3, {Rat(1)}, {hard(0, 0, 1, 3)});
    EXPECT_TRUE(check_ip_constraints(inst, StarSolution{}).empty());
}

TEST(IpCheck, OracleStarsPassProperty) {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        auto inst = tiny_normalized(seed, 4, 2, 6, seed % 2 ? Variant::wPwTw : Variant::wPwTwP);
        auto opt = optimal_schedule(inst);
        auto v = check_ip_constraints(inst, schedule_to_stars(inst, opt.schedule));
        EXPECT_TRUE(v.empty()) << "seed " << seed << " violations " << v.size();
    }
}

TEST(IpCheck, MutationDetected) {
    int detected = 0, tried = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto inst = tiny_normalized(seed, 3, 2, 6);
        auto opt = optimal_schedule(inst);
        auto sol = schedule_to_stars(inst, opt.schedule);
        if (sol.stars.empty()) continue;
        ++tried;
        // Some star of an optimal set must be load-bearing once all are gone.
        StarSolution none;
        none.penalties = sol.penalties;
        if (opt.cost > Rat(0) && !check_ip_constraints(inst, none).empty()) ++detected;
        for (const auto& s : sol.stars) {
            auto cut = sol;
            cut.stars.erase(s);
            if (!check_ip_constraints(inst, cut).empty()) {
                ++detected;
                break;
            }
        }
    }
    EXPECT_GT(tried, 0);
    EXPECT_GT(detected, 0);
}

TEST(IpCheck, SingleStarRemovalHandCase) {
    // n = 2, k = 1: page 0 at [0,0] and [2,2], page 1 at [1,1].
    auto inst = make(2, 1, 2, {Rat(1), Rat(1)}, {hard(0, 0, 0, 0), hard(1, 1, 1, 1), hard(2, 0, 2, 2)});
    StarSolution sol;
    sol.stars = {{0, 1}, {1, 2}};
    EXPECT_TRUE(check_ip_constraints(inst, sol).empty());
    sol.stars.erase({0, 1});
    EXPECT_FALSE(check_ip_constraints(inst, sol).empty());
}

TEST(IpCheck, MonotoneUnderAddedStarsProperty) {
    std::mt19937_64 g(21);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto inst = tiny_normalized(seed, 4, 2, 6);
        StarSolution sol;
        for (int i = 0; i < 4; ++i)
            sol.stars.insert({static_cast<int>(g() % 4), static_cast<int>(g() % static_cast<std::uint64_t>(inst.horizon + 1))});
        auto before = check_ip_constraints(inst, sol).size();
        sol.stars.insert({static_cast<int>(g() % 4), static_cast<int>(g() % static_cast<std::uint64_t>(inst.horizon + 1))});
        EXPECT_LE(check_ip_constraints(inst, sol).size(), before);
    }
}

TEST(IpCheck, BudgetGuard) {
    auto inst = tiny_normalized(3, 4, 2, 6);
    IpCheckOptions o;
    o.budget = 0;
    if (count_ip_collections(inst) > 0) {
        EXPECT_THROW(check_ip_constraints(inst, StarSolution{}, o), EnumerationBudgetExceeded);
    }
}

TEST(IpCheck, ParallelMatchesSerialProperty) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto inst = tiny_normalized(seed, 5, 2, 8);
        IpCheckOptions par;
        par.parallel = true;
        auto a = check_ip_constraints(inst, StarSolution{});
        auto b = check_ip_constraints(inst, StarSolution{}, par);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].time, b[i].time);
            EXPECT_EQ(a[i].kind, b[i].kind);
            EXPECT_EQ(a[i].collection, b[i].collection);
        }
    }
}
