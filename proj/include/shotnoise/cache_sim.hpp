#pragma once

#include "shotnoise/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shotnoise {

/// Capacity counted in objects; every content has unit size.
struct LruResult {
    std::uint64_t capacity = 0;
    std::uint64_t requests = 0;
    std::uint64_t hits = 0;
    std::uint64_t evictions = 0;
    double hit_prob = 0.0;
    /// Mean over evictions of (eviction time - evicted object's last access),
    /// in days. Zero when nothing was evicted.
    double mean_eviction_time = 0.0;
};

/// Straight LRU replay. Throws std::invalid_argument when capacity < 1.
LruResult simulate_lru(const Trace &trace, std::uint64_t capacity);

inline constexpr std::uint64_t kInfiniteDistance = std::numeric_limits<std::uint64_t>::max();

/// LRU stack distance of every request: distinct ids referenced since the
/// previous request for the same id, counting the id itself. First references
/// get kInfiniteDistance. A request hits an LRU cache of capacity C iff its
/// distance is <= C. O(n log n) with a Fenwick tree over positions.
std::vector<std::uint64_t> reuse_distances(std::span<const std::uint32_t> ids);
std::vector<std::uint64_t> reuse_distances(const Trace &trace);

struct HitPoint {
    std::uint64_t capacity;
    double hit_prob;

    friend bool operator==(const HitPoint &, const HitPoint &) = default;
};

using HitCurve = std::vector<HitPoint>;

/// Sorted distance histogram answering hit-probability queries for any
/// capacity in O(log n).
class ReuseProfile {
  public:
    explicit ReuseProfile(std::span<const std::uint64_t> distances);

    std::uint64_t requests() const { return total_; }
    std::uint64_t hits(std::uint64_t capacity) const;
    double hit_prob(std::uint64_t capacity) const;
    /// Hit probability with unbounded capacity (only compulsory misses).
    double max_hit_prob() const;
    /// Smallest capacity reaching `target`, nullopt if unattainable.
    std::optional<std::uint64_t> size_for(double target) const;

  private:
    std::vector<std::uint64_t> finite_; // sorted
    std::uint64_t total_;
};

HitCurve hit_curve(std::span<const std::uint64_t> distances,
                   std::span<const std::uint64_t> capacities);

/// Throws std::invalid_argument unless 0 < target < 1.
std::optional<std::uint64_t> size_for_hit_prob(std::span<const std::uint64_t> distances,
                                               double target);

struct LabeledTrace {
    std::string label;
    const Trace *trace;
};

struct RequiredSize {
    std::string label;
    double target;
    std::optional<std::uint64_t> size; // nullopt = unattainable

    friend bool operator==(const RequiredSize &, const RequiredSize &) = default;
};

/// Rows ordered by trace, then by target as given.
std::vector<RequiredSize> compare_required_sizes(std::span<const LabeledTrace> traces,
                                                 std::span<const double> targets);

void write_hit_curve_csv(const HitCurve &curve, std::ostream &out);
/// capacity,hit_prob,mean_eviction_time
void write_lru_results_csv(std::span<const LruResult> results, std::ostream &out);
/// trace_label,target,required_size with "unattainable" for missing sizes.
void write_required_sizes_csv(std::span<const RequiredSize> rows, std::ostream &out);

} // namespace shotnoise
