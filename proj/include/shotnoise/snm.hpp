#pragma once

#include "shotnoise/popularity.hpp"
#include "shotnoise/random.hpp"
#include "shotnoise/trace.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace shotnoise {

/// How requests of a class are laid out in time.
///
/// `stationary` places a content's requests uniformly over the whole horizon,
/// regardless of its birth (the IRM-like treatment of unreliable classes).
enum class ClassProfile { exponential, uniform, stationary };

std::string_view to_string(ClassProfile profile);
std::optional<ClassProfile> parse_class_profile(std::string_view text);

/// Draws the mean volume V_m of a newly born content.
class VolumeSampler {
  public:
    static VolumeSampler constant(double mean);
    /// Uniform resampling of an observed volume multiset.
    static VolumeSampler empirical(std::vector<std::uint64_t> volumes);

    double draw(Rng &rng) const;

    bool is_constant() const { return std::holds_alternative<double>(source_); }
    double constant_value() const { return std::get<double>(source_); }
    const std::vector<std::uint64_t> &samples() const
    {
        return std::get<std::vector<std::uint64_t>>(source_);
    }
    double mean() const;

  private:
    explicit VolumeSampler(std::variant<double, std::vector<std::uint64_t>> source)
        : source_(std::move(source))
    {
    }
    std::variant<double, std::vector<std::uint64_t>> source_;
};

struct SnmClassConfig {
    int class_id = 0;
    double arrival_rate = 0.0;  // contents per day
    double lifespan_days = 0.0; // target effective life-span, ignored when stationary
    ClassProfile profile = ClassProfile::stationary;
    VolumeSampler volumes = VolumeSampler::constant(1.0);
};

/// Throws std::invalid_argument naming the offending field.
void validate_classes(std::span<const SnmClassConfig> classes);

/// One content's shot: rate mean_volume * shape.density(t - birth).
struct ContentShot {
    double birth = 0.0;
    double mean_volume = 0.0;
    PopularityShape shape{ShapeKind::uniform, 1.0};
};

/// Request times of one shot inside [birth, horizon], sorted.
///
/// Order-statistics construction: the count is Poisson with mean
/// V * F(horizon - birth), the times are i.i.d. from the profile truncated to
/// the window. With `daynight` the candidates come from twice that rate and
/// each is kept with probability f(t) / 2.
std::vector<double> sample_shot_requests(const ContentShot &shot, double horizon, Rng &rng,
                                         bool daynight = false);

/// Poisson(mean_volume) requests uniform on [0, horizon], sorted.
std::vector<double> sample_stationary_requests(double mean_volume, double horizon, Rng &rng,
                                               bool daynight = false);

/// Shot-noise trace: per class, births are Poisson(arrival_rate) on
/// [0, horizon]; content ids are "c<class>_<serial>" with serial counting
/// births from 0. Deterministic in (classes, horizon, seed, daynight).
Trace generate_snm(std::span<const SnmClassConfig> classes, double horizon, std::uint64_t seed,
                   bool daynight = false);

std::string snm_content_id(int class_id, std::uint64_t serial);

} // namespace shotnoise
