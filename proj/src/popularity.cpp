#include "shotnoise/popularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace shotnoise {

std::string_view to_string(ShapeKind kind)
{
    return kind == ShapeKind::exponential ? "exponential" : "uniform";
}

PopularityShape::PopularityShape(ShapeKind kind, double scale_days)
    : kind_(kind), scale_(scale_days)
{
    if (!(scale_days > 0.0) || !std::isfinite(scale_days))
        throw std::invalid_argument("popularity shape: L must be positive and finite");
}

double PopularityShape::density(double t) const
{
    if (t < 0.0)
        return 0.0;
    switch (kind_) {
    case ShapeKind::exponential:
        return std::exp(-t / scale_) / scale_;
    case ShapeKind::uniform:
        return t <= 2.0 * scale_ ? 0.5 / scale_ : 0.0;
    }
    return 0.0;
}

double PopularityShape::cdf(double t) const
{
    if (t <= 0.0)
        return 0.0;
    switch (kind_) {
    case ShapeKind::exponential:
        return -std::expm1(-t / scale_);
    case ShapeKind::uniform:
        return std::min(1.0, t / (2.0 * scale_));
    }
    return 0.0;
}

double PopularityShape::quantile(double p) const
{
    p = std::clamp(p, 0.0, 1.0);
    switch (kind_) {
    case ShapeKind::exponential:
        return p >= 1.0 ? std::numeric_limits<double>::infinity() : -scale_ * std::log1p(-p);
    case ShapeKind::uniform:
        return 2.0 * scale_ * p;
    }
    return 0.0;
}

double PopularityShape::support_end() const
{
    return kind_ == ShapeKind::uniform ? 2.0 * scale_ : std::numeric_limits<double>::infinity();
}

double lifespan_to_scale(ShapeKind kind, double lifespan_days)
{
    if (!(lifespan_days > 0.0) || !std::isfinite(lifespan_days))
        throw std::invalid_argument("lifespan must be positive and finite");
    switch (kind) {
    case ShapeKind::uniform:
        return 0.5 * lifespan_days / 0.8;
    case ShapeKind::exponential:
        return lifespan_days / std::log(9.0);
    }
    return lifespan_days;
}

double daynight_factor(double t) { return 1.0 + std::sin(2.0 * std::numbers::pi * t); }

} // namespace shotnoise
