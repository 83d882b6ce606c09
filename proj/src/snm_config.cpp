#include "shotnoise/snm_config.hpp"

#include "shotnoise/format.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace shotnoise {

namespace {

using Fields = std::map<std::string, std::string, std::less<>>;

Fields parse_fields(std::string_view line, std::size_t line_no)
{
    Fields f;
    for (auto part : split(line, ',')) {
        part = trim(part);
        auto eq = part.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(part), "line " + std::to_string(line_no) +
                                                     ": expected key=value, got '" +
                                                     std::string(part) + "'");
        std::string key(trim(part.substr(0, eq)));
        if (!f.emplace(key, std::string(trim(part.substr(eq + 1)))).second)
            throw ConfigError(key, "line " + std::to_string(line_no) + ": duplicate field '" +
                                       key + "'");
    }
    return f;
}

const std::string &require(const Fields &f, const std::string &key, std::size_t line_no)
{
    auto it = f.find(key);
    if (it == f.end())
        throw ConfigError(key, "line " + std::to_string(line_no) + ": missing field '" + key + "'");
    return it->second;
}

double real_field(const std::string &key, const std::string &value)
{
    double x = 0.0;
    if (!parse_real(value, x))
        throw ConfigError(key, "field '" + key + "': not a number: '" + value + "'");
    return x;
}

SnmClassConfig parse_class(std::string_view line, std::size_t line_no,
                           const std::filesystem::path &base_dir)
{
    Fields f = parse_fields(line, line_no);
    SnmClassConfig c;

    std::uint64_t id = 0;
    const auto &id_text = require(f, "class", line_no);
    if (!parse_uint(id_text, id) || id > 1000000)
        throw ConfigError("class", "field 'class': invalid class id '" + id_text + "'");
    c.class_id = static_cast<int>(id);

    c.arrival_rate = real_field("arrival_rate", require(f, "arrival_rate", line_no));

    const auto &shape = require(f, "shape", line_no);
    auto profile = parse_class_profile(shape);
    if (!profile)
        throw ConfigError("shape", "field 'shape': unknown shape '" + shape + "'");
    c.profile = *profile;

    if (auto it = f.find("lifespan_days"); it != f.end())
        c.lifespan_days = real_field("lifespan_days", it->second);
    else if (c.profile != ClassProfile::stationary)
        require(f, "lifespan_days", line_no);

    const auto &vol = require(f, "volumes", line_no);
    try {
        constexpr std::string_view prefix = "const:";
        if (std::string_view(vol).substr(0, prefix.size()) == prefix)
            c.volumes = VolumeSampler::constant(real_field("volumes", vol.substr(prefix.size())));
        else {
            std::filesystem::path p(vol);
            if (p.is_relative())
                p = base_dir / p;
            c.volumes = VolumeSampler::empirical(read_volume_samples(p));
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError("volumes", "field 'volumes': " + std::string(e.what()));
    }

    if (!(c.arrival_rate > 0.0) || !std::isfinite(c.arrival_rate))
        throw ConfigError("arrival_rate", "field 'arrival_rate': must be positive");
    if (c.profile != ClassProfile::stationary &&
        (!(c.lifespan_days > 0.0) || !std::isfinite(c.lifespan_days)))
        throw ConfigError("lifespan_days", "field 'lifespan_days': must be positive");

    for (const auto &[key, value] : f) {
        if (key != "class" && key != "arrival_rate" && key != "lifespan_days" && key != "shape" &&
            key != "volumes")
            throw ConfigError(key, "line " + std::to_string(line_no) + ": unknown field '" +
                                       key + "'");
    }
    return c;
}

} // namespace

std::vector<std::uint64_t> read_volume_samples(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open volume file '" + path.string() + "'");
    std::vector<std::uint64_t> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto t = trim(line);
        if (t.empty())
            continue;
        std::uint64_t v = 0;
        if (!parse_uint(t, v))
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": not a non-negative integer");
        out.push_back(v);
    }
    return out;
}

SnmConfig parse_snm_config(std::istream &in, const std::filesystem::path &base_dir)
{
    SnmConfig cfg;
    bool has_horizon = false;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        if (line.substr(0, 6) == "class=") {
            cfg.classes.push_back(parse_class(line, line_no, base_dir));
            continue;
        }
        Fields f = parse_fields(line, line_no);
        for (const auto &[key, value] : f) {
            if (key == "horizon_days") {
                cfg.horizon_days = real_field(key, value);
                has_horizon = true;
            } else if (key == "seed") {
                std::uint64_t s = 0;
                if (!parse_uint(value, s))
                    throw ConfigError(key, "field 'seed': not an unsigned integer: '" + value + "'");
                cfg.seed = s;
            } else if (key == "daynight") {
                if (value != "on" && value != "off")
                    throw ConfigError(key, "field 'daynight': expected on or off");
                cfg.daynight = value == "on";
            } else {
                throw ConfigError(key, "line " + std::to_string(line_no) + ": unknown field '" +
                                           key + "'");
            }
        }
    }
    if (!has_horizon)
        throw ConfigError("horizon_days", "missing field 'horizon_days'");
    if (!(cfg.horizon_days > 0.0) || !std::isfinite(cfg.horizon_days))
        throw ConfigError("horizon_days", "field 'horizon_days': must be positive");
    if (cfg.classes.empty())
        throw ConfigError("class", "config defines no classes");
    try {
        validate_classes(cfg.classes);
    } catch (const std::invalid_argument &e) {
        throw ConfigError("class", e.what());
    }
    return cfg;
}

SnmConfig read_snm_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config '" + path.string() + "'");
    return parse_snm_config(in, path.parent_path());
}

void write_snm_config(const SnmConfig &config, const std::filesystem::path &dir,
                      const std::string &name)
{
    std::ostringstream cfg;
    cfg << "# snm-config\n";
    cfg << "horizon_days=" << format_real(config.horizon_days) << '\n';
    if (config.seed)
        cfg << "seed=" << *config.seed << '\n';
    cfg << "daynight=" << (config.daynight ? "on" : "off") << '\n';
    for (const auto &c : config.classes) {
        cfg << "class=" << c.class_id << ", arrival_rate=" << format_real(c.arrival_rate)
            << ", lifespan_days=" << format_real(c.lifespan_days)
            << ", shape=" << to_string(c.profile) << ", volumes=";
        if (c.volumes.is_constant()) {
            cfg << "const:" << format_real(c.volumes.constant_value());
        } else {
            std::string file = std::to_string(c.class_id) + ".volumes";
            std::ostringstream vol;
            for (auto v : c.volumes.samples())
                vol << v << '\n';
            write_file_atomic(dir / file, vol.str());
            cfg << file;
        }
        cfg << '\n';
    }
    write_file_atomic(dir / name, cfg.str());
}

SnmConfig config_from_summary(std::span<const ClassSummary> rows, double horizon_days,
                              ShapeKind shot_shape)
{
    SnmConfig cfg;
    cfg.horizon_days = horizon_days;
    const int last_class = rows.empty() ? 0 : rows.back().class_id;
    for (const auto &r : rows) {
        if (r.contents == 0)
            continue;
        SnmClassConfig c;
        c.class_id = r.class_id;
        c.arrival_rate = r.arrival_rate;
        const bool stationary = r.class_id == 0 || r.class_id == last_class;
        c.profile = stationary ? ClassProfile::stationary
                    : shot_shape == ShapeKind::exponential ? ClassProfile::exponential
                                                           : ClassProfile::uniform;
        c.lifespan_days = stationary ? r.mean_lifespan
                                     : std::max(r.mean_lifespan, kMinimumLifespanDays);
        c.volumes = VolumeSampler::empirical(r.volume_samples);
        cfg.classes.push_back(std::move(c));
    }
    return cfg;
}

} // namespace shotnoise
