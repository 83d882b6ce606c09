#include "shotnoise/cache_sim.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace shotnoise;
using namespace shotnoise::testing;

namespace {

constexpr auto inf = kInfiniteDistance;

std::vector<std::string> ids(std::initializer_list<const char *> xs)
{
    return {xs.begin(), xs.end()};
}

} // namespace

TEST_CASE("simulate_lru: hand-traced sequence")
{
    // 1 miss, 2 miss, 1 hit, 3 miss (evicts 2, last used at t=1), 1 hit
    auto r = simulate_lru(sequence_trace(ids({"1", "2", "1", "3", "1"})), 2);
    CHECK(r.requests == 5);
    CHECK(r.hits == 2);
    CHECK(r.evictions == 1);
    CHECK(r.hit_prob == doctest::Approx(0.4));
    CHECK(r.mean_eviction_time == doctest::Approx(2.0));
}

TEST_CASE("simulate_lru: only compulsory misses when everything fits")
{
    Trace t = random_trace(500, 30, 7);
    auto distinct = dense_ids(t).names.size();
    auto r = simulate_lru(t, distinct);
    CHECK(r.hits == t.size() - distinct);
    CHECK(r.evictions == 0);
    CHECK(r.mean_eviction_time == 0.0);
}

TEST_CASE("simulate_lru: single content")
{
    std::vector<std::string> seq(37, "x");
    for (std::uint64_t c : {1u, 2u, 100u}) {
        auto r = simulate_lru(sequence_trace(seq), c);
        CHECK(r.hit_prob == doctest::Approx(36.0 / 37.0));
    }
}

TEST_CASE("simulate_lru: zero capacity is rejected")
{
    CHECK_THROWS_AS(simulate_lru(sequence_trace(ids({"a"})), 0), std::invalid_argument);
}

TEST_CASE("reuse_distances: small cases")
{
    CHECK(reuse_distances(sequence_trace(ids({"1", "1", "1"}))) ==
          std::vector<std::uint64_t>{inf, 1, 1});
    CHECK(reuse_distances(sequence_trace(ids({"1", "2", "1"}))) ==
          std::vector<std::uint64_t>{inf, inf, 2});
    CHECK(reuse_distances(Trace{}).empty());
}

TEST_CASE("reuse_distances agree with an explicit LRU stack")
{
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Trace t = random_trace(10000, 200 + 300 * seed, seed);
        CHECK(reuse_distances(t) == naive_stack_distances(t));
    }
}

TEST_CASE("distance-derived hits equal direct simulation at every capacity")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Trace t = random_trace(1000, 50, 100 + seed);
        ReuseProfile profile(reuse_distances(t));
        for (std::uint64_t c = 1; c <= 50; ++c)
            REQUIRE(profile.hits(c) == simulate_lru(t, c).hits);
    }
}

TEST_CASE("hit_curve")
{
    std::vector<std::uint64_t> d{inf, 1, 1};
    std::vector<std::uint64_t> caps{1};
    CHECK(hit_curve(d, caps)[0].hit_prob == doctest::Approx(2.0 / 3.0));

    std::vector<std::uint64_t> none{inf, inf, inf};
    std::vector<std::uint64_t> many{1, 5, 1000};
    for (auto p : hit_curve(none, many))
        CHECK(p.hit_prob == 0.0);
}

TEST_CASE("hit_curve is non-decreasing in capacity")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Trace t = random_trace(2000, 10 + 20 * seed, seed);
        std::vector<std::uint64_t> caps;
        for (std::uint64_t c = 1; c <= 400; ++c)
            caps.push_back(c);
        auto curve = hit_curve(reuse_distances(t), caps);
        for (std::size_t i = 1; i < curve.size(); ++i)
            REQUIRE(curve[i].hit_prob >= curve[i - 1].hit_prob);
    }
}

TEST_CASE("size_for_hit_prob")
{
    std::vector<std::string> alt;
    for (int i = 0; i < 50; ++i)
        alt.push_back(i % 2 ? "2" : "1");
    auto d = reuse_distances(sequence_trace(alt));
    // C = 1 hits nothing, C = 2 hits (R - 2) / R = 0.96
    CHECK(size_for_hit_prob(d, 0.4) == std::optional<std::uint64_t>(2));
    CHECK(size_for_hit_prob(d, 0.96) == std::optional<std::uint64_t>(2));
    CHECK_FALSE(size_for_hit_prob(d, 0.961).has_value());

    std::vector<std::string> unique;
    for (int i = 0; i < 100; ++i)
        unique.push_back("u" + std::to_string(i));
    CHECK_FALSE(size_for_hit_prob(reuse_distances(sequence_trace(unique)), 0.999).has_value());

    CHECK_THROWS_AS(size_for_hit_prob(d, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(size_for_hit_prob(d, 1.0), std::invalid_argument);
}

TEST_CASE("size_for_hit_prob is exact when target * R rounds up")
{
    // 10 requests, 1 compulsory miss: hits(C) = 9 for C >= 1
    std::vector<std::string> seq(10, "a");
    auto d = reuse_distances(sequence_trace(seq));
    CHECK(size_for_hit_prob(d, 0.9) == std::optional<std::uint64_t>(1));
    CHECK_FALSE(size_for_hit_prob(d, 0.9000001).has_value());
}

TEST_CASE("size_for_hit_prob is the minimal capacity reaching the target")
{
    Trace t = random_trace(3000, 400, 3);
    auto d = reuse_distances(t);
    ReuseProfile profile(d);
    for (double target : {0.05, 0.1, 0.3, 0.5, 0.8}) {
        auto c = profile.size_for(target);
        REQUIRE(c.has_value());
        CHECK(profile.hit_prob(*c) >= target);
        if (*c > 1)
            CHECK(profile.hit_prob(*c - 1) < target);
    }
}

TEST_CASE("timestamps do not affect hits; eviction time scales")
{
    Trace t = random_trace(2000, 100, 11);
    Trace scaled = t;
    for (auto &e : scaled.events)
        e.timestamp *= 3.5;
    scaled.horizon *= 3.5;
    for (std::uint64_t c : {1u, 10u, 60u}) {
        auto a = simulate_lru(t, c);
        auto b = simulate_lru(scaled, c);
        CHECK(a.hits == b.hits);
        CHECK(b.mean_eviction_time == doctest::Approx(3.5 * a.mean_eviction_time));
    }
    CHECK(reuse_distances(t) == reuse_distances(scaled));
}

TEST_CASE("compare_required_sizes: identical traces give identical columns")
{
    Trace t = random_trace(2000, 100, 5);
    std::vector<LabeledTrace> traces{{"a", &t}, {"b", &t}};
    std::vector<double> targets{0.1, 0.5, 0.99};
    auto rows = compare_required_sizes(traces, targets);
    REQUIRE(rows.size() == 6);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(rows[i].size == rows[i + 3].size);
        CHECK(rows[i].label == "a");
        CHECK(rows[i + 3].label == "b");
    }
    CHECK_FALSE(rows[2].size.has_value());

    Trace empty;
    std::vector<LabeledTrace> bad{{"e", &empty}};
    CHECK_THROWS_AS(compare_required_sizes(bad, targets), std::invalid_argument);
}

TEST_CASE("CSV writers")
{
    std::ostringstream curve;
    write_hit_curve_csv({{1, 0.5}, {2, 0.75}}, curve);
    CHECK(curve.str() == "capacity,hit_prob\n1,0.5\n2,0.75\n");

    std::ostringstream sizes;
    std::vector<RequiredSize> rows{{"t", 0.1, 12}, {"t", 0.9, std::nullopt}};
    write_required_sizes_csv(rows, sizes);
    CHECK(sizes.str() == "trace_label,target,required_size\nt,0.1,12\nt,0.9,unattainable\n");
}
