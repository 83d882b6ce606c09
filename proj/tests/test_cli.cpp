#include "shotnoise/analysis.hpp"
#include "shotnoise/cli.hpp"
#include "shotnoise/snm_config.hpp"

#include "temp_dir.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace shotnoise;
using namespace shotnoise::testing;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "snmtool");
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

void save(const Trace &t, const std::string &path)
{
    std::ostringstream s;
    write_trace(t, s);
    spit(path, s.str());
}

Trace toy_trace()
{
    return sequence_trace({"a", "b", "a", "c", "a", "b", "a", "a", "b", "a"});
}

} // namespace

// ---- analyze ---------------------------------------------------------------------

TEST_CASE("analyze: rank CSV of the toy trace")
{
    TempDir dir;
    save(toy_trace(), dir / "toy.trace");
    auto r = cli({"analyze", dir / "toy.trace", "--out", dir / "out", "--slices", "1", "--top", "3"});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "out/rank_distribution.csv") ==
          "rank,mean,p5,p95\n1,0.6,0.6,0.6\n2,0.3,0.3,0.3\n3,0.1,0.1,0.1\n");
    for (auto f : {"content_stats.csv", "density_map.csv", "cumulative_requests.csv"})
        CHECK(std::filesystem::exists(dir.path() / "out" / f));
}

TEST_CASE("analyze: missing or invalid trace exits 2")
{
    TempDir dir;
    CHECK(cli({"analyze", dir / "nope.trace", "--out", dir / "out"}).code == 2);
    spit(dir.path() / "bad.trace", "1,a\n0.5,b\n");
    auto r = cli({"analyze", dir / "bad.trace", "--out", dir / "out"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    save(toy_trace(), dir / "toy.trace");
    CHECK(cli({"analyze", dir / "toy.trace", "--out", dir / "out", "--slices", "11"}).code == 2);
}

TEST_CASE("analyze output matches library calls byte for byte")
{
    TempDir dir;
    auto classes = reference_classes(20000, 30);
    Trace t = generate_snm(classes, 30, 3);
    save(t, dir / "g.trace");
    std::vector<std::string> ids{"c1_0", "c5_3"};
    auto r = cli({"analyze", dir / "g.trace", "--out", dir / "out", "--slices", "7", "--top", "50",
                  "--lbins", "0,2,5,8,13,40", "--vbins", "10,30,100,1000", "--ids", "c1_0,c5_3"});
    REQUIRE(r.code == 0);

    auto stats = content_stats(t);
    std::ostringstream s1, s2, s3, s4;
    write_content_stats_csv(stats, s1);
    write_rank_distribution_csv(sliced_popularity(t, 7, 50), s2);
    std::vector<double> l{0, 2, 5, 8, 13, 40}, v{10, 30, 100, 1000};
    write_density_map_csv(density_map(stats, 10, l, v), s3);
    write_cumulative_requests_csv(t, ids, s4);
    CHECK(slurp(dir / "out/content_stats.csv") == s1.str());
    CHECK(slurp(dir / "out/rank_distribution.csv") == s2.str());
    CHECK(slurp(dir / "out/density_map.csv") == s3.str());
    CHECK(slurp(dir / "out/cumulative_requests.csv") == s4.str());
}

// ---- fit ---------------------------------------------------------------------------

TEST_CASE("fit: only low-volume contents gives a single stationary class")
{
    TempDir dir;
    Trace t = random_trace(200, 50, 2); // every id well under 10 requests
    save(t, dir / "t.trace");
    REQUIRE(cli({"fit", dir / "t.trace", "--out", dir / "fit"}).code == 0);
    SnmConfig cfg = read_snm_config(dir / "fit/snm.cfg");
    REQUIRE(cfg.classes.size() == 1);
    CHECK(cfg.classes[0].class_id == 0);
    CHECK(cfg.classes[0].profile == ClassProfile::stationary);
    CHECK(cfg.horizon_days == t.horizon);
    CHECK(std::filesystem::exists(dir.path() / "fit/0.volumes"));
    CHECK(std::filesystem::exists(dir.path() / "fit/class_summary.csv"));
}

TEST_CASE("fit: --bounds overrides the class intervals")
{
    TempDir dir;
    // one content with l = 2.5 days (ten requests, unit steps of 0.3125)
    Trace t;
    for (int i = 0; i < 10; ++i)
        t.events.push_back({i * 0.3125, "m"});
    t.horizon = 10;
    save(t, dir / "t.trace");
    REQUIRE(cli({"fit", dir / "t.trace", "--out", dir / "a"}).code == 0);
    REQUIRE(cli({"fit", dir / "t.trace", "--out", dir / "b", "--bounds", "1,3,7,14"}).code == 0);
    // default bounds: 2 < 2.5 <= 5 -> class 2; overridden: 1 < 2.5 <= 3 -> class 2 of 6
    auto a = read_snm_config(dir / "a/snm.cfg");
    auto b = read_snm_config(dir / "b/snm.cfg");
    CHECK(a.classes.at(0).class_id == 2);
    CHECK(b.classes.at(0).class_id == 2);

    REQUIRE(cli({"fit", dir / "t.trace", "--out", dir / "c", "--bounds", "3,7"}).code == 0);
    CHECK(read_snm_config(dir / "c/snm.cfg").classes.at(0).class_id == 1);
    REQUIRE(cli({"fit", dir / "t.trace", "--out", dir / "d", "--bounds", "0.5,1,2"}).code == 0);
    // open-ended last class is written as stationary
    auto d = read_snm_config(dir / "d/snm.cfg");
    CHECK(d.classes.at(0).class_id == 4);
    CHECK(d.classes.at(0).profile == ClassProfile::stationary);
    CHECK(cli({"fit", dir / "t.trace", "--out", dir / "e", "--bounds", "3,1"}).code == 2);
}

TEST_CASE("fit: empty trace exits 2")
{
    TempDir dir;
    spit(dir.path() / "e.trace", "# trace-v1 horizon=5\n");
    CHECK(cli({"fit", dir / "e.trace", "--out", dir / "fit"}).code == 2);
}

TEST_CASE("fit -> generate -> fit keeps class arrival rates")
{
    TempDir dir;
    auto classes = with_low_volume_class(reference_classes(4e5, 60), 200, 3);
    save(generate_snm(classes, 60, 8), dir / "a.trace");
    REQUIRE(cli({"fit", dir / "a.trace", "--out", dir / "fit_a", "--seed", "5"}).code == 0);
    REQUIRE(cli({"generate", dir / "fit_a/snm.cfg", "--out", dir / "b.trace"}).code == 0);
    REQUIRE(cli({"fit", dir / "b.trace", "--out", dir / "fit_b"}).code == 0);
    auto a = read_snm_config(dir / "fit_a/snm.cfg");
    auto b = read_snm_config(dir / "fit_b/snm.cfg");
    REQUIRE(a.classes.size() == 6);
    REQUIRE(b.classes.size() == 6);
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
        const int id = a.classes[i].class_id;
        CHECK(b.classes[i].class_id == id);
        // classes 3 and 4 lose contents to horizon truncation at this length;
        // the long-horizon closure check lives in the acceptance run
        if (id == 3 || id == 4)
            continue;
        CAPTURE(id);
        CHECK(b.classes[i].arrival_rate == doctest::Approx(a.classes[i].arrival_rate).epsilon(0.15));
    }
}

// ---- generate -------------------------------------------------------------------------

TEST_CASE("generate: same config and seed give identical files")
{
    TempDir dir;
    SnmConfig cfg;
    cfg.horizon_days = 10;
    cfg.seed = 3;
    cfg.classes = reference_classes(5000, 10);
    write_snm_config(cfg, dir.path());
    REQUIRE(cli({"generate", dir / "snm.cfg", "--out", dir / "a.trace"}).code == 0);
    REQUIRE(cli({"generate", dir / "snm.cfg", "--out", dir / "b.trace"}).code == 0);
    CHECK(slurp(dir / "a.trace") == slurp(dir / "b.trace"));
    REQUIRE(cli({"generate", dir / "snm.cfg", "--out", dir / "c.trace", "--seed", "4"}).code == 0);
    CHECK(slurp(dir / "a.trace") != slurp(dir / "c.trace"));
}

TEST_CASE("generate: seed is mandatory")
{
    TempDir dir;
    SnmConfig cfg;
    cfg.horizon_days = 10;
    cfg.classes = reference_classes(500, 10);
    write_snm_config(cfg, dir.path());
    auto r = cli({"generate", dir / "snm.cfg", "--out", dir / "a.trace"});
    CHECK(r.code == 2);
    CHECK(r.err.find("seed") != std::string::npos);
    CHECK(cli({"generate", "--irm", "10,1,100,1", "--out", dir / "b.trace"}).code == 2);
    CHECK(cli({"shuffle", dir / "b.trace", "--slices", "1", "--out", dir / "c.trace"}).code == 2);
}

TEST_CASE("generate: invalid config names the field")
{
    TempDir dir;
    spit(dir.path() / "bad.cfg",
         "horizon_days=10\nseed=1\nclass=1, arrival_rate=-3, shape=stationary, volumes=const:2\n");
    auto r = cli({"generate", dir / "bad.cfg", "--out", dir / "a.trace"});
    CHECK(r.code == 2);
    CHECK(r.err.find("arrival_rate") != std::string::npos);
    CHECK(cli({"generate", dir / "missing.cfg", "--out", dir / "a.trace"}).code == 2);
}

TEST_CASE("generate --irm: fitted tail exponent")
{
    TempDir dir;
    REQUIRE(cli({"generate", "--irm", "1000,0.8,1000000,30", "--seed", "2", "--out", dir / "irm.trace"})
                .code == 0);
    Trace t = read_trace_file(dir / "irm.trace");
    CHECK(t.size() == 1000000);
    CHECK(t.horizon == 30);
    double alpha = fit_zipf(to_rank_frequencies(sliced_popularity(t, 1, 300)), {10, 300});
    CHECK(alpha == doctest::Approx(0.8).epsilon(0.0625));
    CHECK(cli({"generate", "--irm", "1000,0.8", "--seed", "2", "--out", dir / "x"}).code == 2);
}

TEST_CASE("generate: day/night modulation shapes the time of day")
{
    TempDir dir;
    spit(dir.path() / "dn.cfg", "horizon_days=20\nseed=4\ndaynight=on\n"
                                "class=5, arrival_rate=500, shape=stationary, volumes=const:20\n");
    REQUIRE(cli({"generate", dir / "dn.cfg", "--out", dir / "dn.trace"}).code == 0);
    Trace t = read_trace_file(dir / "dn.trace");
    std::vector<double> frac;
    for (const auto &e : t.events)
        frac.push_back(e.timestamp - std::floor(e.timestamp));
    auto cdf = [](double x) {
        return x + (1.0 - std::cos(2 * std::numbers::pi * x)) / (2 * std::numbers::pi);
    };
    CHECK(ks_statistic(frac, cdf) < ks_critical_1pct(frac.size()));

    // --daynight off turns the modulation off again: flat time of day
    REQUIRE(cli({"generate", dir / "dn.cfg", "--out", dir / "flat.trace", "--daynight", "off"}).code == 0);
    Trace flat = read_trace_file(dir / "flat.trace");
    frac.clear();
    for (const auto &e : flat.events)
        frac.push_back(e.timestamp - std::floor(e.timestamp));
    CHECK(ks_statistic(frac, [](double x) { return x; }) < ks_critical_1pct(frac.size()));
}

// ---- shuffle ----------------------------------------------------------------------------

TEST_CASE("shuffle subcommand")
{
    TempDir dir;
    Trace t = random_trace(800, 40, 6);
    save(t, dir / "t.trace");
    REQUIRE(cli({"shuffle", dir / "t.trace", "--slices", "800", "--seed", "1", "--out", dir / "id.trace"}).code == 0);
    CHECK(slurp(dir / "id.trace") == slurp(dir / "t.trace"));

    REQUIRE(cli({"shuffle", dir / "t.trace", "--slices", "3", "--seed", "1", "--out", dir / "a.trace"}).code == 0);
    REQUIRE(cli({"shuffle", dir / "t.trace", "--slices", "3", "--seed", "1", "--out", dir / "b.trace"}).code == 0);
    CHECK(slurp(dir / "a.trace") == slurp(dir / "b.trace"));
    auto va = content_stats(read_trace_file(dir / "a.trace"));
    auto vt = content_stats(t);
    REQUIRE(va.size() == vt.size());
    for (const auto &[id, s] : vt)
        CHECK(va.at(id).volume == s.volume);

    CHECK(cli({"shuffle", dir / "t.trace", "--slices", "0", "--seed", "1", "--out", dir / "x"}).code == 2);
    CHECK(cli({"shuffle", dir / "t.trace", "--slices", "801", "--seed", "1", "--out", dir / "x"}).code == 2);
}

// ---- evaluate ------------------------------------------------------------------------------

TEST_CASE("evaluate: hit curve of a hand-traced sequence")
{
    TempDir dir;
    save(sequence_trace({"1", "2", "1", "3", "1"}), dir / "toy.trace");
    auto r = cli({"evaluate", dir / "toy.trace", "--out", dir / "ev", "--capacities", "1,2,3",
                  "--targets", "0.2,0.4,0.5"});
    REQUIRE(r.code == 0);
    // C=1: no hits; C=2: both re-references of 1 hit; C=3: same
    CHECK(slurp(dir / "ev/hit_curve_toy.csv") == "capacity,hit_prob\n1,0\n2,0.4\n3,0.4\n");
    CHECK(slurp(dir / "ev/required_sizes.csv") ==
          "trace_label,target,required_size\ntoy,0.2,2\ntoy,0.4,2\ntoy,0.5,unattainable\n");

    r = cli({"evaluate", dir / "toy.trace", "--out", dir / "ev2", "--capacities", "2",
             "--eviction-stats"});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "ev2/hit_curve_toy.csv") == "capacity,hit_prob,mean_eviction_time\n2,0.4,2\n");
}

TEST_CASE("evaluate: identical traces and errors")
{
    TempDir dir;
    save(random_trace(3000, 200, 1), dir / "t.trace");
    auto r = cli({"evaluate", dir / "t.trace", dir / "t.trace", "--out", dir / "ev"});
    REQUIRE(r.code == 0);
    CHECK(slurp(dir / "ev/hit_curve_t.csv") == slurp(dir / "ev/hit_curve_t_2.csv"));
    std::istringstream rows(slurp(dir / "ev/required_sizes.csv"));
    std::string line;
    std::getline(rows, line);
    std::vector<std::string> a, b;
    while (std::getline(rows, line)) {
        auto comma = line.find(',');
        (line.substr(0, comma) == "t" ? a : b).push_back(line.substr(comma));
    }
    CHECK(a == b);
    CHECK(a.size() == 5);

    spit(dir.path() / "e.trace", "# trace-v1 horizon=1\n");
    CHECK(cli({"evaluate", dir / "e.trace", "--out", dir / "ev3"}).code == 2);
    CHECK(cli({"evaluate", dir / "t.trace", "--out", dir / "ev3", "--targets", "1.5"}).code == 2);
    CHECK(cli({"evaluate", dir / "t.trace", "--out", dir / "ev3", "--capacities", "0,4"}).code == 2);
}

TEST_CASE("usage errors exit 2, help exits 0")
{
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"shuffle"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}
