#pragma once

#include <Eigen/Core>

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

#include "tswarp/errors.hpp"

namespace tswarp {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Uniform partition u_j = j / (n - 1) of [0, 1] with n points.
template <typename Scalar>
Vector<Scalar> uniform_grid(Index n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  const Scalar last = static_cast<Scalar>(n - 1);
  return Vector<Scalar>::NullaryExpr(n, [last](Index j) { return static_cast<Scalar>(j) / last; });
}

/// Composite trapezoid rule for samples on a uniform grid with spacing `step`.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::MatrixBase<Derived>& values,
                                   typename Derived::Scalar step) {
  using Scalar = typename Derived::Scalar;
  const Index n = values.size();
  if (n < 2) return Scalar(0);
  return step * (values.sum() - Scalar(0.5) * (values(0) + values(n - 1)));
}

/// Running trapezoid integral; out(0) = 0 and out(n-1) = trapezoid(values, step).
template <typename Derived>
Vector<typename Derived::Scalar> cumulative_trapezoid(const Eigen::MatrixBase<Derived>& values,
                                                      typename Derived::Scalar step) {
  using Scalar = typename Derived::Scalar;
  const Index n = values.size();
  Vector<Scalar> out(n);
  if (n == 0) return out;
  out(0) = Scalar(0);
  for (Index j = 1; j < n; ++j) {
    out(j) = out(j - 1) + Scalar(0.5) * step * (values(j - 1) + values(j));
  }
  return out;
}

namespace detail {

// Position of x on a grid with `intervals` cells, snapped to the nearest node
// when it is within rounding distance of one.
template <typename Scalar>
std::pair<Index, Scalar> locate_on_grid(Scalar x, Index intervals) {
  using std::floor;
  using std::abs;
  using std::round;
  const Scalar n = static_cast<Scalar>(intervals);
  Scalar p = x * n;
  if (!(p > Scalar(0))) return {0, Scalar(0)};
  if (p >= n) return {intervals - 1, Scalar(1)};
  const Scalar nearest = round(p);
  if (abs(p - nearest) <= Scalar(64) * Eigen::NumTraits<Scalar>::epsilon() * (Scalar(1) + n)) {
    p = nearest;
  }
  Index i = static_cast<Index>(floor(p));
  if (i >= intervals) i = intervals - 1;
  return {i, p - static_cast<Scalar>(i)};
}

}  // namespace detail

/// Real-valued signal on [0,1] stored as samples s(u_j) on the uniform grid
/// u_j = j/N, j = 0..N.  At least two samples, all finite.
template <typename Scalar>
class Signal {
 public:
  using scalar_type = Scalar;

  explicit Signal(Vector<Scalar> samples) : samples_(std::move(samples)) {
    if (samples_.size() < 2) throw std::invalid_argument("Signal: need at least 2 samples");
    if (!samples_.allFinite()) throw std::invalid_argument("Signal: samples must be finite");
  }

  Signal(std::initializer_list<Scalar> values)
      : Signal(Vector<Scalar>(Eigen::Map<const Vector<Scalar>>(values.begin(),
                                                               static_cast<Index>(values.size())))) {}

  /// Discretizes f on the uniform grid with `points` samples.
  template <typename F>
  static Signal sample(F&& f, Index points) {
    const Vector<Scalar> u = uniform_grid<Scalar>(points);
    return Signal(u.unaryExpr([&f](Scalar x) { return static_cast<Scalar>(f(x)); }).eval());
  }

  const Vector<Scalar>& samples() const noexcept { return samples_; }
  Index size() const noexcept { return samples_.size(); }
  /// N, the number of grid cells.
  Index intervals() const noexcept { return samples_.size() - 1; }
  Scalar step() const noexcept { return Scalar(1) / static_cast<Scalar>(intervals()); }
  Scalar operator[](Index j) const { return samples_(j); }

  /// Piecewise-linear evaluation at x in [0,1]; arguments outside are clamped.
  Scalar operator()(Scalar x) const {
    const auto [i, t] = detail::locate_on_grid(x, intervals());
    if (t == Scalar(0)) return samples_(i);
    if (t == Scalar(1)) return samples_(i + 1);
    return samples_(i) + t * (samples_(i + 1) - samples_(i));
  }

 private:
  Vector<Scalar> samples_;
};

/// Piecewise-linear resampling onto `points` uniform nodes.  Endpoints are
/// preserved exactly and resampling to the current size is the identity.
template <typename Scalar>
Signal<Scalar> resample(const Signal<Scalar>& s, Index points) {
  if (points < 2) throw std::invalid_argument("resample: need at least 2 points");
  if (points == s.size()) return s;
  const Vector<Scalar> u = uniform_grid<Scalar>(points);
  Vector<Scalar> out = u.unaryExpr([&s](Scalar x) { return s(x); });
  out(0) = s[0];
  out(points - 1) = s[s.size() - 1];
  return Signal<Scalar>(std::move(out));
}

/// Finite-difference derivative: central at interior nodes, one-sided at the
/// endpoints, scaled by 1/step.
template <typename Scalar>
Vector<Scalar> derivative(const Signal<Scalar>& s) {
  const Index n = s.size();
  const Vector<Scalar>& v = s.samples();
  const Scalar inv = static_cast<Scalar>(s.intervals());
  Vector<Scalar> d(n);
  d(0) = (v(1) - v(0)) * inv;
  d(n - 1) = (v(n - 1) - v(n - 2)) * inv;
  if (n > 2) {
    d.segment(1, n - 2) = (v.tail(n - 2) - v.head(n - 2)) * (Scalar(0.5) * inv);
  }
  return d;
}

/// Non-negative density on the signal grid with unit trapezoid mass, together
/// with the normalizer that was divided out.
template <typename Scalar>
struct DerivativeDensity {
  Vector<Scalar> values;
  Scalar mass = Scalar(1);

  Index size() const noexcept { return values.size(); }
  Scalar step() const noexcept { return Scalar(1) / static_cast<Scalar>(values.size() - 1); }

  /// Normalizes arbitrary non-negative grid values into a density.
  static DerivativeDensity from_values(Vector<Scalar> raw) {
    if (raw.size() < 2) throw std::invalid_argument("DerivativeDensity: need at least 2 values");
    if (!raw.allFinite() || (raw.array() < Scalar(0)).any()) {
      throw std::invalid_argument("DerivativeDensity: values must be finite and non-negative");
    }
    const Scalar h = Scalar(1) / static_cast<Scalar>(raw.size() - 1);
    const Scalar mass = trapezoid(raw, h);
    if (!(mass > Scalar(1e-12) * static_cast<Scalar>(raw.size()))) {
      throw ZeroVariation("density has zero mass");
    }
    return DerivativeDensity{raw / mass, mass};
  }
};

/// |s'| / ||s'||_1 with trapezoid normalization.  Throws ZeroVariation when the
/// trapezoid integral of |s'| is at most 1e-12 * length.
template <typename Scalar>
DerivativeDensity<Scalar> derivative_density(const Signal<Scalar>& s) {
  Vector<Scalar> abs_d = derivative(s).cwiseAbs();
  const Scalar mass = trapezoid(abs_d, s.step());
  if (!(mass > Scalar(1e-12) * static_cast<Scalar>(s.size()))) {
    throw ZeroVariation("signal has zero total variation (length " + std::to_string(s.size()) + ")");
  }
  return DerivativeDensity<Scalar>{abs_d / mass, mass};
}

/// Resamples the shorter of two signals onto the longer grid.
template <typename Scalar>
std::pair<Signal<Scalar>, Signal<Scalar>> equalize(const Signal<Scalar>& a, const Signal<Scalar>& b) {
  if (a.size() == b.size()) return {a, b};
  if (a.size() < b.size()) return {resample(a, b.size()), b};
  return {a, resample(b, a.size())};
}

/// L2 distance between raw aligned samples (lengths equalized by resampling).
template <typename Scalar>
Scalar euclidean(const Signal<Scalar>& a, const Signal<Scalar>& b) {
  if (a.size() == b.size()) return (a.samples() - b.samples()).norm();
  const auto [x, y] = equalize(a, b);
  return (x.samples() - y.samples()).norm();
}

}  // namespace tswarp
