#include "shotnoise/snm.hpp"

#include "snm_detail.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace shotnoise {

std::string_view to_string(ClassProfile profile)
{
    switch (profile) {
    case ClassProfile::exponential:
        return "exponential";
    case ClassProfile::uniform:
        return "uniform";
    case ClassProfile::stationary:
        return "stationary";
    }
    return "stationary";
}

std::optional<ClassProfile> parse_class_profile(std::string_view text)
{
    if (text == "exponential")
        return ClassProfile::exponential;
    if (text == "uniform")
        return ClassProfile::uniform;
    if (text == "stationary")
        return ClassProfile::stationary;
    return std::nullopt;
}

VolumeSampler VolumeSampler::constant(double mean)
{
    if (!(mean > 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("volumes: constant mean must be positive and finite");
    return VolumeSampler(mean);
}

VolumeSampler VolumeSampler::empirical(std::vector<std::uint64_t> volumes)
{
    if (volumes.empty())
        throw std::invalid_argument("volumes: empirical sample list is empty");
    if (std::find(volumes.begin(), volumes.end(), 0u) != volumes.end())
        throw std::invalid_argument("volumes: empirical samples must be positive");
    return VolumeSampler(std::move(volumes));
}

double VolumeSampler::draw(Rng &rng) const
{
    if (is_constant())
        return constant_value();
    const auto &v = samples();
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
    return static_cast<double>(v[pick(rng)]);
}

double VolumeSampler::mean() const
{
    if (is_constant())
        return constant_value();
    const auto &v = samples();
    double sum = 0.0;
    for (auto x : v)
        sum += static_cast<double>(x);
    return sum / static_cast<double>(v.size());
}

void validate_classes(std::span<const SnmClassConfig> classes)
{
    if (classes.empty())
        throw std::invalid_argument("snm: class list is empty");
    std::set<int> seen;
    for (const auto &c : classes) {
        std::string where = "class " + std::to_string(c.class_id) + ": ";
        if (c.class_id < 0)
            throw std::invalid_argument(where + "class id must be non-negative");
        if (!seen.insert(c.class_id).second)
            throw std::invalid_argument(where + "duplicate class id");
        if (!(c.arrival_rate > 0.0) || !std::isfinite(c.arrival_rate))
            throw std::invalid_argument(where + "arrival_rate must be positive");
        if (c.profile != ClassProfile::stationary &&
            (!(c.lifespan_days > 0.0) || !std::isfinite(c.lifespan_days)))
            throw std::invalid_argument(where + "lifespan_days must be positive");
    }
}

std::vector<double> sample_shot_requests(const ContentShot &shot, double horizon, Rng &rng,
                                         bool daynight)
{
    const double window = horizon - shot.birth;
    if (!(window > 0.0))
        return {};
    const double mass = shot.shape.cdf(window);
    const double dominating = daynight ? 2.0 : 1.0;
    const std::uint64_t candidates = poisson(rng, dominating * shot.mean_volume * mass);

    std::vector<double> times;
    times.reserve(candidates);
    for (std::uint64_t i = 0; i < candidates; ++i) {
        double t = std::min(horizon, shot.birth + shot.shape.quantile(uniform01(rng) * mass));
        if (daynight && uniform01(rng) >= daynight_acceptance(t))
            continue;
        times.push_back(t);
    }
    std::sort(times.begin(), times.end());
    return times;
}

std::vector<double> sample_stationary_requests(double mean_volume, double horizon, Rng &rng,
                                               bool daynight)
{
    if (!(horizon > 0.0))
        return {};
    const double dominating = daynight ? 2.0 : 1.0;
    const std::uint64_t candidates = poisson(rng, dominating * mean_volume);
    std::vector<double> times;
    times.reserve(candidates);
    for (std::uint64_t i = 0; i < candidates; ++i) {
        double t = uniform01(rng) * horizon;
        if (daynight && uniform01(rng) >= daynight_acceptance(t))
            continue;
        times.push_back(t);
    }
    std::sort(times.begin(), times.end());
    return times;
}

std::string snm_content_id(int class_id, std::uint64_t serial)
{
    return "c" + std::to_string(class_id) + "_" + std::to_string(serial);
}

namespace detail {

std::vector<double> content_requests(const SnmClassConfig &cls, double birth, double horizon,
                                     std::uint64_t seed, std::uint64_t serial, bool daynight)
{
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(cls.class_id), serial));
    const double volume = cls.volumes.draw(rng);
    if (cls.profile == ClassProfile::stationary)
        return sample_stationary_requests(volume, horizon, rng, daynight);

    const ShapeKind kind =
        cls.profile == ClassProfile::exponential ? ShapeKind::exponential : ShapeKind::uniform;
    ContentShot shot{birth, volume, PopularityShape(kind, lifespan_to_scale(kind, cls.lifespan_days))};
    return sample_shot_requests(shot, horizon, rng, daynight);
}

} // namespace detail

Trace generate_snm(std::span<const SnmClassConfig> classes, double horizon, std::uint64_t seed,
                   bool daynight)
{
    validate_classes(classes);
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("snm: horizon must be positive and finite");

    std::vector<detail::EventKey> keys;
    for (const auto &cls : classes) {
        detail::BirthProcess births(cls, seed);
        std::uint64_t serial = 0;
        for (double birth = births.next(); birth <= horizon; birth = births.next(), ++serial) {
            auto times = detail::content_requests(cls, birth, horizon, seed, serial, daynight);
            for (std::uint32_t k = 0; k < times.size(); ++k)
                keys.push_back({times[k], cls.class_id, serial, k});
        }
    }
    std::sort(keys.begin(), keys.end());

    Trace trace;
    trace.horizon = horizon;
    trace.events.reserve(keys.size());
    for (const auto &k : keys)
        trace.events.push_back({k.time, snm_content_id(k.class_id, k.serial)});
    return trace;
}

} // namespace shotnoise
