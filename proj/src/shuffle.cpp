#include "shotnoise/shuffle.hpp"

#include "shotnoise/analysis.hpp"
#include "shotnoise/random.hpp"

#include <algorithm>

namespace shotnoise {

Trace slice_shuffle(const Trace &trace, std::uint64_t slices, std::uint64_t seed)
{
    auto ranges = equal_count_slices(trace.size(), slices);
    Trace out = trace;
    for (std::size_t k = 0; k < ranges.size(); ++k) {
        auto [b, e] = ranges[k];
        if (e - b < 2)
            continue;
        std::vector<std::string> ids;
        ids.reserve(e - b);
        for (std::size_t i = b; i < e; ++i)
            ids.push_back(std::move(out.events[i].content_id));
        Rng rng(derive_seed(seed, k));
        std::shuffle(ids.begin(), ids.end(), rng);
        for (std::size_t i = b; i < e; ++i)
            out.events[i].content_id = std::move(ids[i - b]);
    }
    return out;
}

} // namespace shotnoise
