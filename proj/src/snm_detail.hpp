#pragma once

// Pieces shared by the batch generator and the streaming scheduler. Both must
// draw identical random numbers in identical order.

#include "shotnoise/snm.hpp"

#include <cstdint>
#include <limits>
#include <tuple>
#include <vector>

namespace shotnoise::detail {

constexpr std::uint64_t kBirthStream = std::numeric_limits<std::uint64_t>::max();

/// Homogeneous Poisson birth instants of one class, in increasing order.
class BirthProcess {
  public:
    BirthProcess(const SnmClassConfig &cls, std::uint64_t seed)
        : rng_(derive_seed(seed, static_cast<std::uint64_t>(cls.class_id), kBirthStream)),
          gap_(cls.arrival_rate)
    {
    }

    double next()
    {
        now_ += gap_(rng_);
        return now_;
    }

  private:
    Rng rng_;
    std::exponential_distribution<double> gap_;
    double now_ = 0.0;
};

/// Requests of content (class, serial) born at `birth`; draws V_m first, then
/// the request times, all from the content's own sub-stream.
std::vector<double> content_requests(const SnmClassConfig &cls, double birth, double horizon,
                                     std::uint64_t seed, std::uint64_t serial, bool daynight);

/// Global event order: time, then class, then birth serial, then position
/// within the content.
struct EventKey {
    double time;
    int class_id;
    std::uint64_t serial;
    std::uint32_t seq;

    friend bool operator<(const EventKey &a, const EventKey &b)
    {
        return std::tie(a.time, a.class_id, a.serial, a.seq) <
               std::tie(b.time, b.class_id, b.serial, b.seq);
    }
    friend bool operator>(const EventKey &a, const EventKey &b) { return b < a; }
};

} // namespace shotnoise::detail
