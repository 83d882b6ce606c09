#pragma once

#include "shotnoise/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace shotnoise {

/// Measured volume and effective life-span of one content.
struct ContentStats {
    std::string content_id;
    std::uint64_t volume = 0;
    double lifespan = 0.0; // days between the ceil(0.1 V)-th and ceil(0.9 V)-th requests
    double first_request = 0.0;
    double last_request = 0.0;
};

using ContentStatsMap = std::map<std::string, ContentStats>;

/// Effective life-span of sorted request times; 0 for fewer than two.
double effective_lifespan(std::span<const double> sorted_times);

ContentStatsMap content_stats(const Trace &trace);

/// Request index range [begin, end) of slice `index` out of `slices`.
struct SliceRange {
    std::size_t begin;
    std::size_t end;
};

/// Slice i covers [floor(i R / K), floor((i + 1) R / K)). Throws
/// std::invalid_argument unless 1 <= K <= R.
std::vector<SliceRange> equal_count_slices(std::size_t requests, std::uint64_t slices);

struct RankRow {
    std::uint64_t rank;
    double mean;
    double p5;
    double p95;
};

struct RankDistribution {
    std::uint64_t slices = 1;
    std::vector<RankRow> rows; // rank 1..top
};

/// Rank/frequency law averaged across K equal-count slices.
///
/// Inside a slice contents are ranked by descending count, ties by content
/// id. A slice with fewer than n distinct contents contributes frequency 0
/// at rank n. Percentiles use the nearest-rank method.
RankDistribution sliced_popularity(const Trace &trace, std::uint64_t slices,
                                   std::uint64_t top_ranks);

struct RankFrequency {
    double rank;
    double frequency;
};

struct RankRange {
    double first;
    double last; // inclusive
};

/// alpha = -slope of the least-squares line through (log rank, log freq) over
/// points whose rank lies in `range`.
double fit_zipf(std::span<const RankFrequency> points, RankRange range);
std::vector<RankFrequency> to_rank_frequencies(const RankDistribution &dist);

inline constexpr std::uint64_t kDefaultVolumeThreshold = 10;
inline const std::vector<double> kDefaultLifespanBounds{2.0, 5.0, 8.0, 13.0};

/// Class 0 below the volume threshold; otherwise 1 + number of bounds strictly
/// below the life-span (intervals closed on the upper edge).
int classify(std::uint64_t volume, double lifespan, std::uint64_t volume_threshold,
             std::span<const double> lifespan_bounds);

using ClassMap = std::map<std::string, int>;

ClassMap classify_contents(const ContentStatsMap &stats,
                           std::uint64_t volume_threshold = kDefaultVolumeThreshold,
                           std::span<const double> lifespan_bounds = kDefaultLifespanBounds);

struct ClassSummary {
    int class_id = 0;
    double lifespan_min = 0.0; // exclusive, except class 0 and class 1 which start at 0
    double lifespan_max = 0.0; // inclusive; infinity for the open classes
    double pct_requests = 0.0;
    double pct_videos = 0.0;
    double mean_lifespan = 0.0;
    double mean_volume = 0.0;
    double arrival_rate = 0.0; // contents per day
    std::uint64_t contents = 0;
    std::vector<std::uint64_t> volume_samples; // sorted
};

/// One row per class 0..bounds.size()+1, empty classes included. Throws
/// std::invalid_argument if a content has no class or the horizon is zero.
std::vector<ClassSummary> class_summary(const Trace &trace, const ClassMap &classes,
                                        std::span<const double> lifespan_bounds =
                                            kDefaultLifespanBounds);

struct DensityMap {
    std::vector<double> lifespan_edges;
    std::vector<double> volume_edges;
    std::vector<std::uint64_t> counts; // row-major, lifespan bin major

    std::size_t lifespan_bins() const { return lifespan_edges.size() - 1; }
    std::size_t volume_bins() const { return volume_edges.size() - 1; }
    std::uint64_t count(std::size_t l, std::size_t v) const { return counts[l * volume_bins() + v]; }
    std::uint64_t total() const;
};

/// 2-D histogram over contents with volume >= threshold; out-of-range values
/// go to the edge bins.
DensityMap density_map(const ContentStatsMap &stats, std::uint64_t volume_threshold,
                       std::span<const double> lifespan_edges,
                       std::span<const double> volume_edges);

void write_content_stats_csv(const ContentStatsMap &stats, std::ostream &out);
void write_rank_distribution_csv(const RankDistribution &dist, std::ostream &out);
void write_density_map_csv(const DensityMap &map, std::ostream &out);
void write_class_summary_csv(std::span<const ClassSummary> rows, std::ostream &out);
/// content_id,timestamp,cumulative_requests for each requested id.
void write_cumulative_requests_csv(const Trace &trace, std::span<const std::string> ids,
                                   std::ostream &out);

} // namespace shotnoise
