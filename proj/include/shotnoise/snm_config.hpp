#pragma once

#include "shotnoise/analysis.hpp"
#include "shotnoise/snm.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace shotnoise {

/// Generator settings as stored in an SNM config file:
///
///   horizon_days=30
///   seed=7
///   daynight=off
///   class=1, arrival_rate=7.1, lifespan_days=1.14, shape=uniform, volumes=1.volumes
///   class=5, arrival_rate=188, lifespan_days=24.6, shape=stationary, volumes=const:25.7
///
/// `volumes` is either a file with one integer per line (relative paths
/// resolve against the config's directory) or "const:<mean>".
struct SnmConfig {
    double horizon_days = 0.0;
    std::optional<std::uint64_t> seed;
    bool daynight = false;
    std::vector<SnmClassConfig> classes;
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string &what)
        : std::runtime_error(what), field_(std::move(field))
    {
    }
    const std::string &field() const { return field_; }

  private:
    std::string field_;
};

SnmConfig parse_snm_config(std::istream &in, const std::filesystem::path &base_dir);
SnmConfig read_snm_config(const std::filesystem::path &path);

/// Writes `<dir>/<name>` plus a "<class>.volumes" sidecar for every class
/// with an empirical sampler.
void write_snm_config(const SnmConfig &config, const std::filesystem::path &dir,
                      const std::string &name = "snm.cfg");

std::vector<std::uint64_t> read_volume_samples(const std::filesystem::path &path);

/// Shortest life-span written for a shot class whose measured mean is zero.
inline constexpr double kMinimumLifespanDays = 1.0 / 86400.0;

/// Turns measured classes into generator classes: class 0 and the open-ended
/// last class are stationary, the rest use `shot_shape` with the class's
/// mean life-span. Empty classes are dropped.
SnmConfig config_from_summary(std::span<const ClassSummary> rows, double horizon_days,
                              ShapeKind shot_shape = ShapeKind::uniform);

} // namespace shotnoise
