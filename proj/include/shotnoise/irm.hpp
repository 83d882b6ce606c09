#pragma once

#include "shotnoise/random.hpp"
#include "shotnoise/trace.hpp"

#include <cstdint>
#include <vector>

namespace shotnoise {

struct IrmConfig {
    std::uint64_t catalogue_size = 1;
    double alpha = 0.0;
    std::uint64_t total_requests = 1;
    double horizon_days = 1.0;
};

/// Zipf(N, alpha) over ranks 1..N by inverse transform on the cumulative
/// distribution; O(log N) per draw.
class ZipfSampler {
  public:
    ZipfSampler(std::uint64_t catalogue_size, double alpha);

    std::uint64_t operator()(Rng &rng) const;
    double probability(std::uint64_t rank) const;
    std::uint64_t size() const { return cdf_.size(); }

  private:
    std::vector<double> cdf_;
};

/// i.i.d. Zipf draws at sorted Uniform[0, horizon] timestamps; ids "r<rank>".
Trace generate_irm(const IrmConfig &config, std::uint64_t seed);

} // namespace shotnoise
