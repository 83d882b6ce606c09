#include "shotnoise/analysis.hpp"

#include "shotnoise/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace shotnoise {

namespace {

// 1-based order-statistic index ceil(q V), computed in integers to avoid
// rounding 0.9 * 10 up to 10.
std::size_t quantile_index(std::size_t volume, std::size_t tenths)
{
    return std::max<std::size_t>(1, (tenths * volume + 9) / 10);
}

// Nearest-rank percentile of an ascending sample.
double nearest_rank(const std::vector<double> &sorted, double pct)
{
    auto n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * n));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

void require_increasing(std::span<const double> edges, const char *what)
{
    if (edges.size() < 2)
        throw std::invalid_argument(std::string(what) + ": need at least two edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw std::invalid_argument(std::string(what) + ": edges must be strictly increasing");
}

std::size_t bin_of(std::span<const double> edges, double x)
{
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    auto idx = static_cast<std::ptrdiff_t>(it - edges.begin()) - 1;
    auto last = static_cast<std::ptrdiff_t>(edges.size()) - 2;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(idx, 0, last));
}

} // namespace

double effective_lifespan(std::span<const double> sorted_times)
{
    const std::size_t v = sorted_times.size();
    if (v < 2)
        return 0.0;
    return sorted_times[quantile_index(v, 9) - 1] - sorted_times[quantile_index(v, 1) - 1];
}

ContentStatsMap content_stats(const Trace &trace)
{
    std::unordered_map<std::string_view, std::vector<double>> times;
    for (const auto &e : trace.events)
        times[e.content_id].push_back(e.timestamp);

    ContentStatsMap out;
    for (auto &[id, t] : times) {
        // trace order is already sorted; keep the guard for unvalidated input
        std::sort(t.begin(), t.end());
        ContentStats s;
        s.content_id = std::string(id);
        s.volume = t.size();
        s.lifespan = effective_lifespan(t);
        s.first_request = t.front();
        s.last_request = t.back();
        out.emplace(s.content_id, std::move(s));
    }
    return out;
}

std::vector<SliceRange> equal_count_slices(std::size_t requests, std::uint64_t slices)
{
    if (slices < 1 || slices > requests)
        throw std::invalid_argument("slice count must be between 1 and the number of requests");
    std::vector<SliceRange> out;
    out.reserve(slices);
    // 128-bit product keeps i * R exact for any realistic trace
    auto bound = [&](std::uint64_t i) {
        return static_cast<std::size_t>(static_cast<unsigned __int128>(i) * requests / slices);
    };
    for (std::uint64_t i = 0; i < slices; ++i)
        out.push_back({bound(i), bound(i + 1)});
    return out;
}

RankDistribution sliced_popularity(const Trace &trace, std::uint64_t slices,
                                   std::uint64_t top_ranks)
{
    if (top_ranks < 1)
        throw std::invalid_argument("top_ranks must be positive");
    auto ranges = equal_count_slices(trace.size(), slices);
    DenseIds dense = dense_ids(trace);

    // per_rank[n][k] = frequency of rank n+1 in slice k
    std::vector<std::vector<double>> per_rank(top_ranks, std::vector<double>(slices, 0.0));
    std::vector<std::uint64_t> counts(dense.names.size(), 0);
    std::vector<std::uint32_t> present;
    for (std::size_t k = 0; k < ranges.size(); ++k) {
        const auto [b, e] = ranges[k];
        present.clear();
        for (std::size_t i = b; i < e; ++i)
            if (counts[dense.ids[i]]++ == 0)
                present.push_back(dense.ids[i]);
        const std::size_t keep = std::min<std::size_t>(top_ranks, present.size());
        std::partial_sort(present.begin(), present.begin() + static_cast<std::ptrdiff_t>(keep),
                          present.end(), [&](std::uint32_t a, std::uint32_t c) {
                              if (counts[a] != counts[c])
                                  return counts[a] > counts[c];
                              return dense.names[a] < dense.names[c];
                          });
        const auto total = static_cast<double>(e - b);
        for (std::size_t n = 0; n < keep; ++n)
            per_rank[n][k] = static_cast<double>(counts[present[n]]) / total;
        for (auto id : present)
            counts[id] = 0;
    }

    RankDistribution dist;
    dist.slices = slices;
    for (std::uint64_t n = 0; n < top_ranks; ++n) {
        auto &f = per_rank[n];
        double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(slices);
        std::sort(f.begin(), f.end());
        dist.rows.push_back({n + 1, mean, nearest_rank(f, 5.0), nearest_rank(f, 95.0)});
    }
    return dist;
}

double fit_zipf(std::span<const RankFrequency> points, RankRange range)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto &p : points) {
        if (p.rank < range.first || p.rank > range.last)
            continue;
        if (!(p.frequency > 0.0))
            throw std::invalid_argument("fit_zipf: zero frequency at rank " +
                                        format_real(p.rank));
        double x = std::log(p.rank);
        double y = std::log(p.frequency);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3)
        throw std::invalid_argument("fit_zipf: need at least 3 ranks in range");
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (!(denom > 0.0))
        throw std::invalid_argument("fit_zipf: ranks in range must be distinct");
    return -(dn * sxy - sx * sy) / denom;
}

std::vector<RankFrequency> to_rank_frequencies(const RankDistribution &dist)
{
    std::vector<RankFrequency> out;
    out.reserve(dist.rows.size());
    for (const auto &r : dist.rows)
        out.push_back({static_cast<double>(r.rank), r.mean});
    return out;
}

int classify(std::uint64_t volume, double lifespan, std::uint64_t volume_threshold,
             std::span<const double> lifespan_bounds)
{
    if (volume < volume_threshold)
        return 0;
    auto above = std::lower_bound(lifespan_bounds.begin(), lifespan_bounds.end(), lifespan);
    return 1 + static_cast<int>(above - lifespan_bounds.begin());
}

ClassMap classify_contents(const ContentStatsMap &stats, std::uint64_t volume_threshold,
                           std::span<const double> lifespan_bounds)
{
    for (std::size_t i = 1; i < lifespan_bounds.size(); ++i)
        if (!(lifespan_bounds[i] > lifespan_bounds[i - 1]))
            throw std::invalid_argument("life-span bounds must be strictly increasing");
    ClassMap out;
    for (const auto &[id, s] : stats)
        out.emplace(id, classify(s.volume, s.lifespan, volume_threshold, lifespan_bounds));
    return out;
}

std::vector<ClassSummary> class_summary(const Trace &trace, const ClassMap &classes,
                                        std::span<const double> lifespan_bounds)
{
    if (!(trace.horizon > 0.0))
        throw std::invalid_argument("class_summary: trace horizon must be positive");
    const std::size_t nclasses = lifespan_bounds.size() + 2;
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<ClassSummary> rows(nclasses);
    for (std::size_t c = 0; c < nclasses; ++c) {
        rows[c].class_id = static_cast<int>(c);
        if (c == 0) {
            rows[c].lifespan_min = 0.0;
            rows[c].lifespan_max = inf;
        } else {
            rows[c].lifespan_min = c == 1 ? 0.0 : lifespan_bounds[c - 2];
            rows[c].lifespan_max = c - 1 < lifespan_bounds.size() ? lifespan_bounds[c - 1] : inf;
        }
    }

    std::vector<double> lifespan_sum(nclasses, 0.0);
    std::uint64_t total_requests = 0;
    auto stats = content_stats(trace);
    for (const auto &[id, s] : stats) {
        auto it = classes.find(id);
        if (it == classes.end())
            throw std::invalid_argument("class_summary: content '" + id + "' has no class");
        if (it->second < 0 || static_cast<std::size_t>(it->second) >= nclasses)
            throw std::invalid_argument("class_summary: class id out of range for '" + id + "'");
        auto &row = rows[static_cast<std::size_t>(it->second)];
        row.contents += 1;
        row.volume_samples.push_back(s.volume);
        lifespan_sum[static_cast<std::size_t>(row.class_id)] += s.lifespan;
        total_requests += s.volume;
    }

    const auto total_contents = static_cast<double>(stats.size());
    for (auto &row : rows) {
        std::sort(row.volume_samples.begin(), row.volume_samples.end());
        if (row.contents == 0)
            continue;
        const auto n = static_cast<double>(row.contents);
        double requests = 0.0;
        for (auto v : row.volume_samples)
            requests += static_cast<double>(v);
        row.pct_requests = 100.0 * requests / static_cast<double>(total_requests);
        row.pct_videos = 100.0 * n / total_contents;
        row.mean_lifespan = lifespan_sum[static_cast<std::size_t>(row.class_id)] / n;
        row.mean_volume = requests / n;
        row.arrival_rate = n / trace.horizon;
    }
    return rows;
}

std::uint64_t DensityMap::total() const
{
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

DensityMap density_map(const ContentStatsMap &stats, std::uint64_t volume_threshold,
                       std::span<const double> lifespan_edges,
                       std::span<const double> volume_edges)
{
    require_increasing(lifespan_edges, "lifespan bins");
    require_increasing(volume_edges, "volume bins");
    DensityMap map;
    map.lifespan_edges.assign(lifespan_edges.begin(), lifespan_edges.end());
    map.volume_edges.assign(volume_edges.begin(), volume_edges.end());
    map.counts.assign(map.lifespan_bins() * map.volume_bins(), 0);
    for (const auto &[id, s] : stats) {
        if (s.volume < volume_threshold)
            continue;
        std::size_t l = bin_of(lifespan_edges, s.lifespan);
        std::size_t v = bin_of(volume_edges, static_cast<double>(s.volume));
        ++map.counts[l * map.volume_bins() + v];
    }
    return map;
}

void write_content_stats_csv(const ContentStatsMap &stats, std::ostream &out)
{
    out << "content_id,volume,lifespan,first_request,last_request\n";
    for (const auto &[id, s] : stats)
        out << id << ',' << s.volume << ',' << format_real(s.lifespan) << ','
            << format_real(s.first_request) << ',' << format_real(s.last_request) << '\n';
}

void write_rank_distribution_csv(const RankDistribution &dist, std::ostream &out)
{
    out << "rank,mean,p5,p95\n";
    for (const auto &r : dist.rows)
        out << r.rank << ',' << format_real(r.mean) << ',' << format_real(r.p5) << ','
            << format_real(r.p95) << '\n';
}

void write_density_map_csv(const DensityMap &map, std::ostream &out)
{
    out << "l_bin_lo,l_bin_hi,v_bin_lo,v_bin_hi,count\n";
    for (std::size_t l = 0; l < map.lifespan_bins(); ++l)
        for (std::size_t v = 0; v < map.volume_bins(); ++v)
            out << format_real(map.lifespan_edges[l]) << ','
                << format_real(map.lifespan_edges[l + 1]) << ','
                << format_real(map.volume_edges[v]) << ','
                << format_real(map.volume_edges[v + 1]) << ',' << map.count(l, v) << '\n';
}

void write_class_summary_csv(std::span<const ClassSummary> rows, std::ostream &out)
{
    out << "class,lmin_days,lmax_days,pct_reqs,pct_videos,mean_lifespan,mean_volume,arrival_rate\n";
    for (const auto &r : rows)
        out << r.class_id << ',' << format_real(r.lifespan_min) << ','
            << format_real(r.lifespan_max) << ',' << format_real(r.pct_requests) << ','
            << format_real(r.pct_videos) << ',' << format_real(r.mean_lifespan) << ','
            << format_real(r.mean_volume) << ',' << format_real(r.arrival_rate) << '\n';
}

void write_cumulative_requests_csv(const Trace &trace, std::span<const std::string> ids,
                                   std::ostream &out)
{
    out << "content_id,timestamp,cumulative_requests\n";
    // grouped by id in the order requested
    for (const auto &id : ids) {
        std::uint64_t n = 0;
        for (const auto &e : trace.events)
            if (e.content_id == id)
                out << id << ',' << format_real(e.timestamp) << ',' << ++n << '\n';
    }
}

} // namespace shotnoise
