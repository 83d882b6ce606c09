#pragma once

#include <string_view>

namespace shotnoise {

enum class ShapeKind { exponential, uniform };

std::string_view to_string(ShapeKind kind);

/// Normalized causal popularity profile lambda(t) with time parameter L.
///
///   exponential: lambda(t) = exp(-t/L) / L        for t >= 0
///   uniform:     lambda(t) = 1 / (2L)             for t in [0, 2L]
///
/// lambda is zero for t < 0 and integrates to one over [0, inf).
class PopularityShape {
  public:
    /// Throws std::invalid_argument unless scale_days > 0 and finite.
    PopularityShape(ShapeKind kind, double scale_days);

    ShapeKind kind() const { return kind_; }
    double scale() const { return scale_; }

    double density(double t) const;
    double cdf(double t) const;
    /// Inverse of cdf on [0, 1]; quantile(1) is the support end.
    double quantile(double p) const;
    /// Right end of the support (infinity for the exponential).
    double support_end() const;

  private:
    ShapeKind kind_;
    double scale_;
};

/// L such that the 0.1 -> 0.9 quantile span of the shape equals `lifespan`.
///
/// Uniform on [0, 2L] spans 1.6 L; Exponential(L) spans L ln 9.
double lifespan_to_scale(ShapeKind kind, double lifespan_days);

/// Day/night rate factor f(t) = 1 + sin(2 pi t), t in days, phase 0 at t = 0.
double daynight_factor(double t);

/// Thinning acceptance against the dominating rate 2 * base rate.
inline double daynight_acceptance(double t) { return 0.5 * daynight_factor(t); }

} // namespace shotnoise
