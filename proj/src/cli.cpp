#include "shotnoise/cli.hpp"

#include "shotnoise/analysis.hpp"
#include "shotnoise/cache_sim.hpp"
#include "shotnoise/format.hpp"
#include "shotnoise/irm.hpp"
#include "shotnoise/shuffle.hpp"
#include "shotnoise/snm.hpp"
#include "shotnoise/snm_config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace shotnoise {

namespace {

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> real_list(const std::string &flag, const std::string &text)
{
    std::vector<double> out;
    for (auto part : split(text, ',')) {
        double x = 0.0;
        if (!parse_real(trim(part), x))
            throw UsageError(flag + ": invalid number '" + std::string(part) + "'");
        out.push_back(x);
    }
    return out;
}

std::vector<std::uint64_t> uint_list(const std::string &flag, const std::string &text)
{
    std::vector<std::uint64_t> out;
    for (auto part : split(text, ',')) {
        std::uint64_t x = 0;
        if (!parse_uint(trim(part), x))
            throw UsageError(flag + ": invalid integer '" + std::string(part) + "'");
        out.push_back(x);
    }
    return out;
}

template <typename Writer> void emit(const fs::path &path, Writer &&write)
{
    std::ostringstream s;
    write(s);
    write_file_atomic(path, s.str());
}

void ensure_dir(const fs::path &dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw UsageError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

Trace load_trace(const std::string &path)
{
    try {
        return read_trace_file(path);
    } catch (const std::exception &e) {
        throw UsageError(path + ": " + e.what());
    }
}

// 1-2-5 series starting at `first`, extended until it passes `max_value`.
std::vector<double> decade_edges(double first, double max_value)
{
    std::vector<double> out{first};
    constexpr double steps[] = {2.0, 2.5, 2.0};
    for (std::size_t i = 0; out.back() <= max_value || out.size() < 2; ++i)
        out.push_back(out.back() * steps[i % 3]);
    return out;
}

// 1-2-5 capacities up to the number of distinct ids.
std::vector<std::uint64_t> default_capacities(std::uint64_t distinct)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t base = 1; base <= std::max<std::uint64_t>(distinct, 1); base *= 10)
        for (std::uint64_t m : {1, 2, 5})
            if (base * m <= std::max<std::uint64_t>(distinct, 1))
                out.push_back(base * m);
    return out;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeOptions {
    std::string trace;
    std::string out;
    std::uint64_t slices = 1;
    std::uint64_t top = 100;
    std::uint64_t threshold = kDefaultVolumeThreshold;
    std::string lbins;
    std::string vbins;
    std::string ids;
};

void cmd_analyze(const AnalyzeOptions &o)
{
    Trace trace = load_trace(o.trace);
    ensure_dir(o.out);
    fs::path dir(o.out);

    auto stats = content_stats(trace);
    emit(dir / "content_stats.csv", [&](std::ostream &s) { write_content_stats_csv(stats, s); });

    if (!trace.empty()) {
        if (o.slices < 1 || o.slices > trace.size())
            throw UsageError("--slices must be between 1 and the number of requests");
        if (o.top < 1)
            throw UsageError("--top must be positive");
        auto dist = sliced_popularity(trace, o.slices, o.top);
        emit(dir / "rank_distribution.csv",
             [&](std::ostream &s) { write_rank_distribution_csv(dist, s); });
    } else {
        emit(dir / "rank_distribution.csv",
             [&](std::ostream &s) { write_rank_distribution_csv({}, s); });
    }

    std::uint64_t max_volume = 0;
    for (const auto &[id, s] : stats)
        max_volume = std::max(max_volume, s.volume);
    std::vector<double> lbins;
    if (o.lbins.empty()) {
        auto days = static_cast<std::uint64_t>(std::ceil(std::max(trace.horizon, 1.0)));
        for (std::uint64_t d = 0; d <= days; ++d)
            lbins.push_back(static_cast<double>(d));
    } else {
        lbins = real_list("--lbins", o.lbins);
    }
    std::vector<double> vbins = o.vbins.empty()
                                    ? decade_edges(static_cast<double>(std::max<std::uint64_t>(
                                                       o.threshold, 1)),
                                                   static_cast<double>(max_volume))
                                    : real_list("--vbins", o.vbins);
    DensityMap map;
    try {
        map = density_map(stats, o.threshold, lbins, vbins);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    emit(dir / "density_map.csv", [&](std::ostream &s) { write_density_map_csv(map, s); });

    std::vector<std::string> ids;
    if (!o.ids.empty())
        for (auto part : split(o.ids, ','))
            ids.emplace_back(trim(part));
    emit(dir / "cumulative_requests.csv",
         [&](std::ostream &s) { write_cumulative_requests_csv(trace, ids, s); });
}

// ---- fit -------------------------------------------------------------------

struct FitOptions {
    std::string trace;
    std::string out;
    std::string bounds;
    std::uint64_t threshold = kDefaultVolumeThreshold;
    std::string shape = "uniform";
    std::optional<std::uint64_t> seed;
};

void cmd_fit(const FitOptions &o)
{
    Trace trace = load_trace(o.trace);
    if (trace.empty())
        throw UsageError(o.trace + ": trace has no contents");
    if (!(trace.horizon > 0.0))
        throw UsageError(o.trace + ": trace horizon must be positive");
    std::vector<double> bounds =
        o.bounds.empty() ? kDefaultLifespanBounds : real_list("--bounds", o.bounds);
    for (std::size_t i = 1; i < bounds.size(); ++i)
        if (!(bounds[i] > bounds[i - 1]))
            throw UsageError("--bounds must be strictly increasing");
    ShapeKind shape = ShapeKind::uniform;
    if (o.shape == "exponential")
        shape = ShapeKind::exponential;
    else if (o.shape != "uniform")
        throw UsageError("--shape must be uniform or exponential");

    auto stats = content_stats(trace);
    auto classes = classify_contents(stats, o.threshold, bounds);
    auto rows = class_summary(trace, classes, bounds);

    SnmConfig cfg = config_from_summary(rows, trace.horizon, shape);
    cfg.seed = o.seed;
    ensure_dir(o.out);
    write_snm_config(cfg, o.out);
    emit(fs::path(o.out) / "class_summary.csv",
         [&](std::ostream &s) { write_class_summary_csv(rows, s); });
}

// ---- generate --------------------------------------------------------------

struct GenerateOptions {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string irm;
    std::string daynight;
};

void cmd_generate(const GenerateOptions &o)
{
    Trace trace;
    if (!o.irm.empty()) {
        if (!o.config.empty())
            throw UsageError("give either a config file or --irm, not both");
        if (!o.seed)
            throw UsageError("--seed is required for --irm");
        auto parts = split(o.irm, ',');
        if (parts.size() != 4)
            throw UsageError("--irm expects N,alpha,R,horizon");
        IrmConfig irm;
        double alpha = 0.0, horizon = 0.0;
        if (!parse_uint(trim(parts[0]), irm.catalogue_size) || irm.catalogue_size == 0)
            throw UsageError("--irm: invalid N");
        if (!parse_real(trim(parts[1]), alpha) || !(alpha >= 0.0))
            throw UsageError("--irm: invalid alpha");
        if (!parse_uint(trim(parts[2]), irm.total_requests) || irm.total_requests == 0)
            throw UsageError("--irm: invalid R");
        if (!parse_real(trim(parts[3]), horizon) || !(horizon > 0.0) || !std::isfinite(horizon))
            throw UsageError("--irm: invalid horizon");
        irm.alpha = alpha;
        irm.horizon_days = horizon;
        trace = generate_irm(irm, *o.seed);
    } else {
        if (o.config.empty())
            throw UsageError("generate needs a config file or --irm");
        SnmConfig cfg;
        try {
            cfg = read_snm_config(o.config);
        } catch (const ConfigError &e) {
            throw UsageError(o.config + ": invalid field '" + e.field() + "': " + e.what());
        } catch (const std::exception &e) {
            throw UsageError(o.config + ": " + e.what());
        }
        if (o.seed)
            cfg.seed = o.seed;
        if (!cfg.seed)
            throw UsageError("no seed: pass --seed or set seed= in the config");
        if (o.daynight == "on")
            cfg.daynight = true;
        else if (o.daynight == "off")
            cfg.daynight = false;
        else if (!o.daynight.empty())
            throw UsageError("--daynight must be on or off");
        trace = generate_snm(cfg.classes, cfg.horizon_days, *cfg.seed, cfg.daynight);
    }
    emit(o.out, [&](std::ostream &s) { write_trace(trace, s); });
}

// ---- shuffle ---------------------------------------------------------------

struct ShuffleOptions {
    std::string trace;
    std::string out;
    std::uint64_t slices = 0;
    std::optional<std::uint64_t> seed;
};

void cmd_shuffle(const ShuffleOptions &o)
{
    if (!o.seed)
        throw UsageError("--seed is required");
    Trace trace = load_trace(o.trace);
    if (o.slices < 1 || o.slices > trace.size())
        throw UsageError("--slices must be between 1 and the number of requests (" +
                         std::to_string(trace.size()) + ")");
    Trace shuffled = slice_shuffle(trace, o.slices, *o.seed);
    emit(o.out, [&](std::ostream &s) { write_trace(shuffled, s); });
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateOptions {
    std::vector<std::string> traces;
    std::string out;
    std::string targets = "0.05,0.1,0.15,0.2,0.25";
    std::string capacities;
    std::string labels;
    bool eviction_stats = false;
};

std::vector<std::string> unique_labels(const EvaluateOptions &o)
{
    std::vector<std::string> labels;
    if (!o.labels.empty()) {
        for (auto part : split(o.labels, ','))
            labels.emplace_back(trim(part));
        if (labels.size() != o.traces.size())
            throw UsageError("--labels needs one label per trace");
    } else {
        for (const auto &t : o.traces)
            labels.push_back(fs::path(t).stem().string());
    }
    std::map<std::string, int> seen;
    for (auto &l : labels) {
        if (!valid_content_id(l))
            throw UsageError("label '" + l + "' must be visible ASCII without commas");
        int n = ++seen[l];
        if (n > 1)
            l += "_" + std::to_string(n);
    }
    return labels;
}

void cmd_evaluate(const EvaluateOptions &o)
{
    std::vector<double> targets = real_list("--targets", o.targets);
    for (double t : targets)
        if (!(t > 0.0 && t < 1.0))
            throw UsageError("--targets must lie in (0, 1)");
    std::vector<std::string> labels = unique_labels(o);

    std::vector<Trace> traces;
    for (const auto &p : o.traces) {
        traces.push_back(load_trace(p));
        if (traces.back().empty())
            throw UsageError(p + ": trace is empty");
    }
    std::vector<std::uint64_t> fixed_caps;
    if (!o.capacities.empty()) {
        fixed_caps = uint_list("--capacities", o.capacities);
        if (std::find(fixed_caps.begin(), fixed_caps.end(), 0u) != fixed_caps.end())
            throw UsageError("--capacities must be positive");
        std::sort(fixed_caps.begin(), fixed_caps.end());
        fixed_caps.erase(std::unique(fixed_caps.begin(), fixed_caps.end()), fixed_caps.end());
    }

    struct Result {
        std::string curve_csv;
        std::vector<RequiredSize> sizes;
    };
    auto work = [&](std::size_t i) {
        const Trace &trace = traces[i];
        DenseIds dense = dense_ids(trace);
        auto caps = fixed_caps.empty() ? default_capacities(dense.names.size()) : fixed_caps;
        std::ostringstream curve;
        if (o.eviction_stats) {
            std::vector<LruResult> runs;
            for (auto c : caps)
                runs.push_back(simulate_lru(trace, c));
            write_lru_results_csv(runs, curve);
        } else {
            write_hit_curve_csv(hit_curve(reuse_distances(dense.ids), caps), curve);
        }
        LabeledTrace lt{labels[i], &trace};
        return Result{curve.str(), compare_required_sizes(std::span(&lt, 1), targets)};
    };

    std::vector<std::future<Result>> jobs;
    for (std::size_t i = 0; i < traces.size(); ++i)
        jobs.push_back(std::async(std::launch::async, work, i));

    ensure_dir(o.out);
    std::vector<RequiredSize> table;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        Result r = jobs[i].get();
        write_file_atomic(fs::path(o.out) / ("hit_curve_" + labels[i] + ".csv"), r.curve_csv);
        table.insert(table.end(), r.sizes.begin(), r.sizes.end());
    }
    emit(fs::path(o.out) / "required_sizes.csv",
         [&](std::ostream &s) { write_required_sizes_csv(table, s); });
}

} // namespace

int run_cli(std::span<const std::string> args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Request-trace analysis, shot-noise/IRM generation and LRU evaluation"};
    app.name(args.empty() ? "snmtool" : args[0]);
    app.require_subcommand(1);

    AnalyzeOptions ao;
    auto *analyze = app.add_subcommand("analyze", "Per-content statistics, rank law, density map");
    analyze->add_option("trace", ao.trace, "Trace file")->required();
    analyze->add_option("--out", ao.out, "Output directory")->required();
    analyze->add_option("--slices", ao.slices, "Number of equal-count slices K");
    analyze->add_option("--top", ao.top, "Ranks to report");
    analyze->add_option("--threshold", ao.threshold, "Minimum volume for the density map");
    analyze->add_option("--lbins", ao.lbins, "Life-span bin edges (days), comma separated");
    analyze->add_option("--vbins", ao.vbins, "Volume bin edges, comma separated");
    analyze->add_option("--ids", ao.ids, "Content ids for cumulative request series");

    FitOptions fo;
    auto *fit = app.add_subcommand("fit", "Fit per-class generator parameters to a trace");
    fit->add_option("trace", fo.trace, "Trace file")->required();
    fit->add_option("--out", fo.out, "Output directory")->required();
    fit->add_option("--bounds", fo.bounds, "Life-span class bounds (days), comma separated");
    fit->add_option("--threshold", fo.threshold, "Volume below which contents go to class 0");
    fit->add_option("--shape", fo.shape, "Shot shape for classes 1..n-1: uniform|exponential");
    fit->add_option("--seed", fo.seed, "Seed recorded in the emitted config");

    GenerateOptions go;
    auto *generate = app.add_subcommand("generate", "Synthesize a trace");
    generate->add_option("config", go.config, "SNM config file");
    generate->add_option("--out", go.out, "Output trace file")->required();
    generate->add_option("--seed", go.seed, "Random seed (overrides the config)");
    generate->add_option("--irm", go.irm, "IRM trace: N,alpha,R,horizon_days");
    generate->add_option("--daynight", go.daynight, "Override day/night modulation: on|off");

    ShuffleOptions so;
    auto *shuffle = app.add_subcommand("shuffle", "Permute requests within K slices");
    shuffle->add_option("trace", so.trace, "Trace file")->required();
    shuffle->add_option("--slices", so.slices, "Number of slices K")->required();
    shuffle->add_option("--seed", so.seed, "Random seed");
    shuffle->add_option("--out", so.out, "Output trace file")->required();

    EvaluateOptions eo;
    auto *evaluate = app.add_subcommand("evaluate", "LRU hit curves and required cache sizes");
    evaluate->add_option("traces", eo.traces, "Trace files")->required();
    evaluate->add_option("--out", eo.out, "Output directory")->required();
    evaluate->add_option("--targets", eo.targets, "Target hit probabilities");
    evaluate->add_option("--capacities", eo.capacities, "Cache capacities (objects)");
    evaluate->add_option("--labels", eo.labels, "Trace labels, comma separated");
    evaluate->add_flag("--eviction-stats", eo.eviction_stats,
                       "Simulate each capacity and report mean eviction time");

    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze)
            cmd_analyze(ao);
        else if (*fit)
            cmd_fit(fo);
        else if (*generate)
            cmd_generate(go);
        else if (*shuffle)
            cmd_shuffle(so);
        else if (*evaluate)
            cmd_evaluate(eo);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace shotnoise
