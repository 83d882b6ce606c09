#pragma once

#include "shotnoise/snm.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace shotnoise {

/// Streaming shot-noise generator.
///
/// Content births are drawn lazily in time order; at each birth the
/// content's requests are scheduled into a min-heap of pending requests.
/// Events come out in exactly the order generate_snm() produces for the same
/// arguments. Stationary classes spread requests over the whole horizon, so
/// all of their contents are scheduled up front.
///
/// Not thread-safe; one consumer per stream.
class SnmStream {
  public:
    /// horizon may be 0, which yields an empty stream.
    SnmStream(std::vector<SnmClassConfig> classes, double horizon, std::uint64_t seed,
              bool daynight = false);
    ~SnmStream();
    SnmStream(SnmStream &&) noexcept;
    SnmStream &operator=(SnmStream &&) noexcept;

    /// nullopt at end of stream.
    std::optional<RequestEvent> next_event();

    std::size_t pending() const;
    std::size_t peak_pending() const;

  private:
    struct State;
    std::unique_ptr<State> state_;
};

} // namespace shotnoise
