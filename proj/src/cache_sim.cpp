#include "shotnoise/cache_sim.hpp"

#include "shotnoise/format.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <ostream>
#include <stdexcept>

namespace shotnoise {

namespace {

class Fenwick {
  public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t pos, std::int64_t delta)
    {
        for (std::size_t i = pos + 1; i < tree_.size(); i += i & (~i + 1))
            tree_[i] += delta;
    }

    // Sum over [0, pos).
    std::int64_t prefix(std::size_t pos) const
    {
        std::int64_t s = 0;
        for (std::size_t i = pos; i > 0; i -= i & (~i + 1))
            s += tree_[i];
        return s;
    }

  private:
    std::vector<std::int64_t> tree_;
};

} // namespace

LruResult simulate_lru(const Trace &trace, std::uint64_t capacity)
{
    if (capacity < 1)
        throw std::invalid_argument("simulate_lru: capacity must be >= 1");

    DenseIds dense = dense_ids(trace);
    struct Slot {
        std::uint32_t id;
        double last_access;
    };
    std::list<Slot> order; // front = most recently used
    std::vector<std::list<Slot>::iterator> where(dense.names.size(), order.end());
    std::vector<bool> resident(dense.names.size(), false);

    LruResult r;
    r.capacity = capacity;
    r.requests = trace.size();
    double eviction_sum = 0.0;
    std::uint64_t size = 0;

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const std::uint32_t id = dense.ids[i];
        const double now = trace.events[i].timestamp;
        if (resident[id]) {
            ++r.hits;
            order.splice(order.begin(), order, where[id]);
            where[id]->last_access = now;
            continue;
        }
        order.push_front({id, now});
        where[id] = order.begin();
        resident[id] = true;
        if (++size > capacity) {
            const Slot &victim = order.back();
            eviction_sum += now - victim.last_access;
            resident[victim.id] = false;
            order.pop_back();
            --size;
            ++r.evictions;
        }
    }
    r.hit_prob = r.requests ? static_cast<double>(r.hits) / static_cast<double>(r.requests) : 0.0;
    r.mean_eviction_time = r.evictions ? eviction_sum / static_cast<double>(r.evictions) : 0.0;
    return r;
}

std::vector<std::uint64_t> reuse_distances(std::span<const std::uint32_t> ids)
{
    // Position i is marked while it holds the latest reference to its id; the
    // stack distance is the number of marks after the previous reference.
    std::vector<std::uint64_t> out(ids.size(), kInfiniteDistance);
    std::uint32_t max_id = 0;
    for (auto id : ids)
        max_id = std::max(max_id, id);
    std::vector<std::int64_t> last(ids.empty() ? 0 : std::size_t{max_id} + 1, -1);
    Fenwick marks(ids.size());
    std::int64_t marked = 0;

    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::int64_t &prev = last[ids[i]];
        if (prev >= 0) {
            auto p = static_cast<std::size_t>(prev);
            out[i] = static_cast<std::uint64_t>(marked - marks.prefix(p + 1)) + 1;
            marks.add(p, -1);
            --marked;
        }
        marks.add(i, +1);
        ++marked;
        prev = static_cast<std::int64_t>(i);
    }
    return out;
}

std::vector<std::uint64_t> reuse_distances(const Trace &trace)
{
    return reuse_distances(dense_ids(trace).ids);
}

ReuseProfile::ReuseProfile(std::span<const std::uint64_t> distances) : total_(distances.size())
{
    for (auto d : distances)
        if (d != kInfiniteDistance)
            finite_.push_back(d);
    std::sort(finite_.begin(), finite_.end());
}

std::uint64_t ReuseProfile::hits(std::uint64_t capacity) const
{
    return static_cast<std::uint64_t>(
        std::upper_bound(finite_.begin(), finite_.end(), capacity) - finite_.begin());
}

double ReuseProfile::hit_prob(std::uint64_t capacity) const
{
    return total_ ? static_cast<double>(hits(capacity)) / static_cast<double>(total_) : 0.0;
}

double ReuseProfile::max_hit_prob() const
{
    return total_ ? static_cast<double>(finite_.size()) / static_cast<double>(total_) : 0.0;
}

std::optional<std::uint64_t> ReuseProfile::size_for(double target) const
{
    if (!(target > 0.0 && target < 1.0))
        throw std::invalid_argument("target hit probability must lie in (0, 1)");
    if (total_ == 0)
        return std::nullopt;
    const double n = static_cast<double>(total_);
    // Smallest hit count k with k / n >= target, robust to rounding in target * n.
    auto k = static_cast<std::uint64_t>(std::ceil(target * n));
    while (k > 0 && static_cast<double>(k - 1) / n >= target)
        --k;
    while (static_cast<double>(k) / n < target)
        ++k;
    if (k == 0)
        k = 1;
    if (k > finite_.size())
        return std::nullopt;
    return finite_[k - 1];
}

HitCurve hit_curve(std::span<const std::uint64_t> distances,
                   std::span<const std::uint64_t> capacities)
{
    ReuseProfile profile(distances);
    HitCurve curve;
    curve.reserve(capacities.size());
    for (auto c : capacities)
        curve.push_back({c, profile.hit_prob(c)});
    return curve;
}

std::optional<std::uint64_t> size_for_hit_prob(std::span<const std::uint64_t> distances,
                                               double target)
{
    return ReuseProfile(distances).size_for(target);
}

std::vector<RequiredSize> compare_required_sizes(std::span<const LabeledTrace> traces,
                                                 std::span<const double> targets)
{
    std::vector<RequiredSize> rows;
    for (const auto &lt : traces) {
        if (lt.trace == nullptr || lt.trace->empty())
            throw std::invalid_argument("compare_required_sizes: trace '" + lt.label + "' is empty");
        ReuseProfile profile(reuse_distances(*lt.trace));
        for (double t : targets)
            rows.push_back({lt.label, t, profile.size_for(t)});
    }
    return rows;
}

void write_hit_curve_csv(const HitCurve &curve, std::ostream &out)
{
    out << "capacity,hit_prob\n";
    for (const auto &p : curve)
        out << p.capacity << ',' << format_real(p.hit_prob) << '\n';
}

void write_lru_results_csv(std::span<const LruResult> results, std::ostream &out)
{
    out << "capacity,hit_prob,mean_eviction_time\n";
    for (const auto &r : results)
        out << r.capacity << ',' << format_real(r.hit_prob) << ','
            << format_real(r.mean_eviction_time) << '\n';
}

void write_required_sizes_csv(std::span<const RequiredSize> rows, std::ostream &out)
{
    out << "trace_label,target,required_size\n";
    for (const auto &r : rows) {
        out << r.label << ',' << format_real(r.target) << ',';
        if (r.size)
            out << *r.size;
        else
            out << "unattainable";
        out << '\n';
    }
}

} // namespace shotnoise
