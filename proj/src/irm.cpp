#include "shotnoise/irm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace shotnoise {

ZipfSampler::ZipfSampler(std::uint64_t catalogue_size, double alpha)
{
    if (catalogue_size == 0)
        throw std::invalid_argument("zipf: catalogue size must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("zipf: alpha must be finite and non-negative");
    cdf_.resize(catalogue_size);
    double acc = 0.0;
    for (std::uint64_t n = 1; n <= catalogue_size; ++n) {
        acc += std::pow(static_cast<double>(n), -alpha);
        cdf_[n - 1] = acc;
    }
    for (double &c : cdf_)
        c /= acc;
    cdf_.back() = 1.0;
}

std::uint64_t ZipfSampler::operator()(Rng &rng) const
{
    double u = uniform01(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end())
        --it;
    return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
}

double ZipfSampler::probability(std::uint64_t rank) const
{
    if (rank == 0 || rank > cdf_.size())
        return 0.0;
    return rank == 1 ? cdf_[0] : cdf_[rank - 1] - cdf_[rank - 2];
}

Trace generate_irm(const IrmConfig &config, std::uint64_t seed)
{
    if (config.total_requests == 0)
        throw std::invalid_argument("irm: total_requests must be positive");
    if (!(config.horizon_days > 0.0) || !std::isfinite(config.horizon_days))
        throw std::invalid_argument("irm: horizon must be positive and finite");
    ZipfSampler zipf(config.catalogue_size, config.alpha);

    Rng rank_rng(derive_seed(seed, 0));
    Rng time_rng(derive_seed(seed, 1));

    std::vector<double> times(config.total_requests);
    for (double &t : times)
        t = uniform01(time_rng) * config.horizon_days;
    std::sort(times.begin(), times.end());

    Trace trace;
    trace.horizon = config.horizon_days;
    trace.events.reserve(times.size());
    for (double t : times)
        trace.events.push_back({t, "r" + std::to_string(zipf(rank_rng))});
    return trace;
}

} // namespace shotnoise
