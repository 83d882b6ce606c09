#include "shotnoise/scheduler.hpp"

#include "snm_detail.hpp"

#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>

namespace shotnoise {

struct SnmStream::State {
    struct ShotClass {
        const SnmClassConfig *config;
        detail::BirthProcess births;
        double next_birth;
        std::uint64_t next_serial = 0;
    };

    std::vector<SnmClassConfig> classes;
    std::vector<ShotClass> shot_classes;
    double horizon;
    std::uint64_t seed;
    bool daynight;
    std::priority_queue<detail::EventKey, std::vector<detail::EventKey>,
                        std::greater<detail::EventKey>>
        pending;
    std::size_t peak = 0;

    void schedule(const SnmClassConfig &cls, double birth, std::uint64_t serial)
    {
        auto times = detail::content_requests(cls, birth, horizon, seed, serial, daynight);
        for (std::uint32_t k = 0; k < times.size(); ++k)
            pending.push({times[k], cls.class_id, serial, k});
        peak = std::max(peak, pending.size());
    }

    // Earliest upcoming birth among shot classes, or nullptr.
    ShotClass *earliest_birth()
    {
        ShotClass *best = nullptr;
        for (auto &sc : shot_classes) {
            if (sc.next_birth > horizon)
                continue;
            if (best == nullptr || sc.next_birth < best->next_birth)
                best = &sc;
        }
        return best;
    }
};

SnmStream::SnmStream(std::vector<SnmClassConfig> classes, double horizon, std::uint64_t seed,
                     bool daynight)
    : state_(std::make_unique<State>())
{
    validate_classes(classes);
    if (!(horizon >= 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("snm stream: horizon must be finite and non-negative");

    auto &s = *state_;
    s.classes = std::move(classes);
    s.horizon = horizon;
    s.seed = seed;
    s.daynight = daynight;
    for (const auto &cls : s.classes) {
        detail::BirthProcess births(cls, seed);
        if (cls.profile == ClassProfile::stationary) {
            std::uint64_t serial = 0;
            for (double b = births.next(); b <= horizon; b = births.next(), ++serial)
                s.schedule(cls, b, serial);
        } else {
            double first = births.next();
            s.shot_classes.push_back({&cls, std::move(births), first});
        }
    }
}

SnmStream::~SnmStream() = default;
SnmStream::SnmStream(SnmStream &&) noexcept = default;
SnmStream &SnmStream::operator=(SnmStream &&) noexcept = default;

std::optional<RequestEvent> SnmStream::next_event()
{
    auto &s = *state_;
    // A content born at b only schedules requests at times >= b, so once every
    // birth up to the head's time has been expanded the head is final.
    while (auto *sc = s.earliest_birth()) {
        if (!s.pending.empty() && s.pending.top().time < sc->next_birth)
            break;
        s.schedule(*sc->config, sc->next_birth, sc->next_serial++);
        sc->next_birth = sc->births.next();
    }
    if (s.pending.empty())
        return std::nullopt;
    detail::EventKey k = s.pending.top();
    s.pending.pop();
    return RequestEvent{k.time, snm_content_id(k.class_id, k.serial)};
}

std::size_t SnmStream::pending() const { return state_->pending.size(); }
std::size_t SnmStream::peak_pending() const { return state_->peak; }

} // namespace shotnoise
