#include "shotnoise/trace.hpp"

#include "shotnoise/format.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace shotnoise {

namespace {

constexpr std::string_view kMagic = "# trace-v1";
constexpr std::size_t kMaxIdLength = 64;

std::string at_line(std::size_t line, const std::string &what)
{
    return "line " + std::to_string(line) + ": " + what;
}

bool valid_timestamp(double t) { return std::isfinite(t) && t >= 0.0; }

// Parses "# trace-v1 [horizon=<real>]". Returns true if a horizon was given.
bool parse_header(std::string_view line, double &horizon)
{
    if (line.substr(0, kMagic.size()) != kMagic)
        throw ParseError(1, at_line(1, "expected '# trace-v1' header"));
    std::string_view rest = trim(line.substr(kMagic.size()));
    if (rest.empty())
        return false;
    constexpr std::string_view key = "horizon=";
    if (rest.substr(0, key.size()) != key)
        throw ParseError(1, at_line(1, "unknown header field '" + std::string(rest) + "'"));
    double h = 0.0;
    if (!parse_real(rest.substr(key.size()), h) || !valid_timestamp(h))
        throw ParseError(1, at_line(1, "invalid horizon"));
    horizon = h;
    return true;
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error(what), line_(line)
{
}

ValidationError::ValidationError(std::size_t line, const std::string &what)
    : std::runtime_error(what), line_(line)
{
}

std::string_view to_string(Invariant inv)
{
    switch (inv) {
    case Invariant::timestamp_range:
        return "timestamp_range";
    case Invariant::content_id:
        return "content_id";
    case Invariant::unsorted:
        return "unsorted";
    case Invariant::horizon:
        return "horizon";
    }
    return "unknown";
}

bool valid_content_id(std::string_view id)
{
    if (id.empty() || id.size() > kMaxIdLength)
        return false;
    for (char c : id) {
        // visible ASCII excluding the field separator
        if (c <= ' ' || c > '~' || c == ',')
            return false;
    }
    return true;
}

std::vector<Violation> validate(const Trace &trace)
{
    std::vector<Violation> out;
    const auto &ev = trace.events;
    auto first_index = [&](auto &&bad) -> std::ptrdiff_t {
        for (std::size_t i = 0; i < ev.size(); ++i)
            if (bad(i))
                return static_cast<std::ptrdiff_t>(i);
        return -1;
    };
    auto report = [&](Invariant inv, std::ptrdiff_t idx) {
        if (idx >= 0)
            out.push_back({inv, static_cast<std::size_t>(idx)});
    };

    report(Invariant::timestamp_range,
           first_index([&](std::size_t i) { return !valid_timestamp(ev[i].timestamp); }));
    report(Invariant::content_id,
           first_index([&](std::size_t i) { return !valid_content_id(ev[i].content_id); }));
    report(Invariant::unsorted, first_index([&](std::size_t i) {
               return i > 0 && ev[i].timestamp < ev[i - 1].timestamp;
           }));
    report(Invariant::horizon,
           first_index([&](std::size_t i) { return ev[i].timestamp > trace.horizon; }));
    return out;
}

Trace read_trace(std::istream &in)
{
    Trace trace;
    double header_horizon = 0.0;
    bool has_horizon = false;
    std::size_t sorted_error_line = 0;
    std::size_t horizon_error_line = 0;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line_no == 1 && !line.empty() && line.front() == '#') {
            has_horizon = parse_header(line, header_horizon);
            continue;
        }
        if (trim(line).empty())
            continue;

        std::size_t comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(line_no, at_line(line_no, "expected '<timestamp>,<content_id>'"));
        double t = 0.0;
        if (!parse_real(line.substr(0, comma), t))
            throw ParseError(line_no, at_line(line_no, "unparsable timestamp"));
        if (!valid_timestamp(t))
            throw ParseError(line_no, at_line(line_no, "timestamp must be finite and >= 0"));
        std::string_view id = line.substr(comma + 1);
        if (!valid_content_id(id))
            throw ParseError(line_no, at_line(line_no, "invalid content id"));

        if (sorted_error_line == 0 && !trace.events.empty() && t < trace.events.back().timestamp)
            sorted_error_line = line_no;
        if (horizon_error_line == 0 && has_horizon && t > header_horizon)
            horizon_error_line = line_no;
        trace.events.push_back({t, std::string(id)});
    }
    if (in.bad())
        throw std::runtime_error("I/O error while reading trace");

    if (sorted_error_line != 0)
        throw ValidationError(sorted_error_line,
                              at_line(sorted_error_line, "timestamps are not sorted"));

    if (horizon_error_line != 0)
        throw ValidationError(horizon_error_line,
                              at_line(horizon_error_line, "timestamp exceeds header horizon"));

    if (has_horizon)
        trace.horizon = header_horizon;
    else
        trace.horizon = trace.events.empty() ? 0.0 : trace.events.back().timestamp;
    return trace;
}

Trace read_trace_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open trace file '" + path + "'");
    return read_trace(in);
}

void write_trace(const Trace &trace, std::ostream &out)
{
    out << kMagic << " horizon=" << format_real(trace.horizon) << '\n';
    for (const auto &e : trace.events)
        out << format_real(e.timestamp) << ',' << e.content_id << '\n';
    if (!out)
        throw std::runtime_error("I/O error while writing trace");
}

DenseIds dense_ids(const Trace &trace)
{
    DenseIds d;
    d.ids.reserve(trace.size());
    std::unordered_map<std::string_view, std::uint32_t> index;
    for (const auto &e : trace.events) {
        auto [it, inserted] =
            index.try_emplace(e.content_id, static_cast<std::uint32_t>(d.names.size()));
        if (inserted)
            d.names.push_back(e.content_id);
        d.ids.push_back(it->second);
    }
    return d;
}

} // namespace shotnoise
