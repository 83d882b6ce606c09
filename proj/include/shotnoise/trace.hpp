#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace shotnoise {

/// One content request. Timestamps are days since the trace origin.
struct RequestEvent {
    double timestamp = 0.0;
    std::string content_id;

    friend bool operator==(const RequestEvent &, const RequestEvent &) = default;
};

/// A request sequence observed over [0, horizon] days.
///
/// Events are ordered by non-decreasing timestamp; among equal timestamps
/// the vector order is the request order. A Trace is a plain value and is
/// not validated on construction, see validate().
struct Trace {
    std::vector<RequestEvent> events;
    double horizon = 0.0;

    std::size_t size() const { return events.size(); }
    bool empty() const { return events.empty(); }

    friend bool operator==(const Trace &, const Trace &) = default;
};

/// Malformed input row. line() is 1-based.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string &what);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Well-formed rows that break a Trace invariant (ordering, horizon).
class ValidationError : public std::runtime_error {
  public:
    ValidationError(std::size_t line, const std::string &what);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

enum class Invariant {
    timestamp_range, // negative or non-finite timestamp
    content_id,      // empty, too long, or contains forbidden characters
    unsorted,
    horizon,
};

std::string_view to_string(Invariant inv);

struct Violation {
    Invariant invariant;
    std::size_t index; // first offending event

    friend bool operator==(const Violation &, const Violation &) = default;
};

/// At most one violation per invariant, each at its first offending index.
std::vector<Violation> validate(const Trace &trace);

bool valid_content_id(std::string_view id);

Trace read_trace(std::istream &in);
Trace read_trace_file(const std::string &path);

void write_trace(const Trace &trace, std::ostream &out);

/// Maps content ids to dense indices in order of first appearance.
struct DenseIds {
    std::vector<std::uint32_t> ids; // one per event
    std::vector<std::string> names; // index -> content_id
};

DenseIds dense_ids(const Trace &trace);

} // namespace shotnoise
