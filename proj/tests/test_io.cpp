#include "testing.hpp"

#include "wpw/errors.hpp"
#include "wpw/io.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace wpw;
using namespace wpw::testing;

namespace {

void expect_same(const Instance& a, const Instance& b) {
    EXPECT_EQ(a.variant, b.variant);
    EXPECT_EQ(a.n, b.n);
    EXPECT_EQ(a.k, b.k);
    EXPECT_EQ(a.horizon, b.horizon);
    EXPECT_EQ(a.weights, b.weights);
    ASSERT_EQ(a.requests.size(), b.requests.size());
    for (std::size_t i = 0; i < a.requests.size(); ++i) {
        EXPECT_EQ(a.requests[i].id, b.requests[i].id);
        EXPECT_EQ(a.requests[i].page, b.requests[i].page);
        EXPECT_EQ(a.requests[i].start, b.requests[i].start);
        EXPECT_EQ(a.requests[i].deadline, b.requests[i].deadline);
        EXPECT_EQ(a.requests[i].penalty, b.requests[i].penalty);
    }
    ASSERT_EQ(a.delays.size(), b.delays.size());
    for (std::size_t i = 0; i < a.delays.size(); ++i) {
        EXPECT_EQ(a.delays[i].id, b.delays[i].id);
        EXPECT_EQ(a.delays[i].arrival, b.delays[i].arrival);
        EXPECT_EQ(a.delays[i].loss, b.delays[i].loss);
    }
}

}  // namespace

TEST(Io, InstanceRoundTripProperty) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Variant v = seed % 3 == 0 ? Variant::wPwTw : seed % 3 == 1 ? Variant::wPwTwP : Variant::wPwD;
        auto inst = tiny(seed, 4, 2, 8, v);
        std::stringstream ss;
        write_instance(ss, inst);
        expect_same(inst, read_instance(ss));
    }
}

TEST(Io, FractionalValuesAsStrings) {
    auto inst = make(2, 1, 3, {Rat(1, 3), Rat(2)}, {soft(0, 0, 0, 1, Rat(5, 2))}, Variant::wPwTwP);
    std::stringstream ss;
    write_instance(ss, inst);
    EXPECT_NE(ss.str().find("\"1/3\""), std::string::npos);
    EXPECT_NE(ss.str().find("\"5/2\""), std::string::npos);
    expect_same(inst, read_instance(ss));
}

TEST(Io, ScheduleRoundTrip) {
    ScheduleBuilder b;
    b.load(0, 1);
    b.serve_transient(2, 0);
    b.evict(3, 1);
    std::stringstream ss;
    write_schedule(ss, b.schedule());
    EXPECT_EQ(read_schedule(ss), b.schedule());
}

TEST(Io, StarsRoundTrip) {
    StarSolution s;
    s.stars = {{0, 3}, {2, 1}};
    s.penalties = {4, 7};
    std::stringstream ss;
    write_stars(ss, s);
    auto r = read_stars(ss);
    EXPECT_EQ(r.stars, s.stars);
    EXPECT_EQ(r.penalties, s.penalties);
}

TEST(Io, CoverRoundTrip) {
    CoverInstance ci;
    ci.n = 2;
    ci.horizon = 3;
    ci.weights = {Rat(1), Rat(3, 2)};
    ci.tiles = tiles_from_boundaries(0, {0, 2}, 3);
    auto more = tiles_from_boundaries(1, {0}, 3);
    ci.tiles.insert(ci.tiles.end(), more.begin(), more.end());
    ci.requirement = {1, 1, 2, 0};
    ci.excluded = {-1, 0, -1, 1};
    std::stringstream ss;
    write_cover(ss, ci);
    auto r = read_cover(ss);
    EXPECT_EQ(r.n, ci.n);
    EXPECT_EQ(r.horizon, ci.horizon);
    EXPECT_EQ(r.weights, ci.weights);
    EXPECT_EQ(r.requirement, ci.requirement);
    EXPECT_EQ(r.excluded, ci.excluded);
    ASSERT_EQ(r.tiles.size(), ci.tiles.size());
    for (std::size_t i = 0; i < ci.tiles.size(); ++i) {
        EXPECT_EQ(r.tiles[i].page, ci.tiles[i].page);
        EXPECT_EQ(r.tiles[i].start, ci.tiles[i].start);
        EXPECT_EQ(r.tiles[i].end, ci.tiles[i].end);
    }
}

TEST(Io, ViolationsAndTraceOneLineEach) {
    std::stringstream v;
    write_violations(v, {{3, 'R', {0, 2}}, {5, 'D', {1}}});
    const std::string vs = v.str();
    EXPECT_EQ(std::count(vs.begin(), vs.end(), '\n'), 2);
    EXPECT_NE(vs.find("\"D1\""), std::string::npos);
    std::stringstream t;
    write_lp_trace(t, {{0, {{1, 0.5}}, 0.0, 0.5}, {1, {}, 1.0, 0.0}});
    const std::string ts = t.str();
    EXPECT_EQ(std::count(ts.begin(), ts.end(), '\n'), 2);
}

TEST(Io, ParseErrors) {
    std::istringstream empty("");
    EXPECT_THROW(read_instance(empty), ParseError);
    std::istringstream junk("{\"n\":2,\n");
    EXPECT_THROW(read_instance(junk), ParseError);
    std::istringstream action("{\"t\":0,\"seq\":0,\"action\":\"swap\",\"page\":0}\n");
    EXPECT_THROW(read_schedule(action), ParseError);
    std::istringstream rat("{\"n\":1,\"k\":1,\"horizon\":0,\"weights\":[\"1/0\"],\"variant\":\"wPwTw\"}\n");
    EXPECT_THROW(read_instance(rat), ParseError);
}
