#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tswarp/monotone.hpp"
#include "tswarp/signal.hpp"

namespace tswarp {

/// CDF of a grid density by cumulative trapezoid, pinned to F(0) = 0 and
/// F(1) = 1 and clamped to [0, 1].
template <typename Scalar>
MonotoneFunction<Scalar> cdf_from_density(const DerivativeDensity<Scalar>& d) {
  const Index n = d.size();
  Vector<Scalar> cdf = cumulative_trapezoid(d.values, d.step());
  cdf = cdf.cwiseMax(Scalar(0)).cwiseMin(Scalar(1));
  cdf(0) = Scalar(0);
  cdf(n - 1) = Scalar(1);
  for (Index j = 1; j < n; ++j) cdf(j) = std::max(cdf(j), cdf(j - 1));
  return MonotoneFunction<Scalar>(uniform_grid<Scalar>(n), std::move(cdf));
}

/// Monotone map of [0,1] into [0,1] sampled on a uniform grid, with its
/// finite-difference slope cached (negative slopes clamped to zero).
template <typename Scalar>
class TransportMap {
 public:
  explicit TransportMap(const Vector<Scalar>& grid_values)
      : map_(uniform_grid<Scalar>(grid_values.size()), grid_values),
        slope_(derivative(Signal<Scalar>(map_.knots_y())).cwiseMax(Scalar(0))) {}

  static TransportMap identity(Index points) { return TransportMap(uniform_grid<Scalar>(points)); }

  Scalar operator()(Scalar t) const { return map_(t); }
  const MonotoneFunction<Scalar>& function() const noexcept { return map_; }
  const Vector<Scalar>& values() const noexcept { return map_.knots_y(); }
  const Vector<Scalar>& slope() const noexcept { return slope_; }
  Index size() const noexcept { return map_.size(); }

 private:
  MonotoneFunction<Scalar> map_;
  Vector<Scalar> slope_;
};

/// g = F_dst^dagger o F_src evaluated at the nodes of the source grid.
template <typename Scalar>
TransportMap<Scalar> transport_map(const MonotoneFunction<Scalar>& src_cdf,
                                   const MonotoneFunction<Scalar>& dst_cdf) {
  const Vector<Scalar>& f = src_cdf.knots_y();
  Vector<Scalar> g(f.size());
  for (Index j = 0; j < f.size(); ++j) g(j) = quantile(dst_cdf, f(j));
  for (Index j = 1; j < g.size(); ++j) g(j) = std::max(g(j), g(j - 1));
  return TransportMap<Scalar>(g);
}

template <typename Scalar>
TransportMap<Scalar> transport_map(const DerivativeDensity<Scalar>& src,
                                   const DerivativeDensity<Scalar>& dst) {
  return transport_map(cdf_from_density(src), cdf_from_density(dst));
}

/// Sup-norm violation of the push-forward identity F_dst(g(t)) = F_src(t),
/// checked at the source nodes and at every cell midpoint (where g is only
/// known through interpolation).
template <typename Scalar>
Scalar push_forward_residual(const TransportMap<Scalar>& g, const DerivativeDensity<Scalar>& src,
                             const DerivativeDensity<Scalar>& dst) {
  const auto f_src = cdf_from_density(src);
  const auto f_dst = cdf_from_density(dst);
  const Index n = g.size();
  const Scalar h = Scalar(1) / static_cast<Scalar>(n - 1);
  Scalar worst = Scalar(0);
  for (Index k = 0; k <= 2 * (n - 1); ++k) {
    const Scalar t = Scalar(0.5) * h * static_cast<Scalar>(k);
    worst = std::max(worst, std::abs(f_dst(g(t)) - f_src(t)));
  }
  return worst;
}

/// 2-Wasserstein distance through quantile functions,
/// W2^2 = int_0^1 |Q_src(q) - Q_dst(q)|^2 dq.  Both quantile functions are
/// piecewise linear, so the integral is evaluated exactly on the merged
/// breakpoints.
template <typename Scalar>
Scalar wasserstein2(const DerivativeDensity<Scalar>& src, const DerivativeDensity<Scalar>& dst) {
  const auto q_src = generalized_inverse(cdf_from_density(src));
  const auto q_dst = generalized_inverse(cdf_from_density(dst));
  std::vector<Scalar> breaks(q_src.knots_x().begin(), q_src.knots_x().end());
  breaks.insert(breaks.end(), q_dst.knots_x().begin(), q_dst.knots_x().end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  Scalar total = Scalar(0);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const Scalar a = breaks[k];
    const Scalar b = breaks[k + 1];
    const Scalar d0 = q_src(a) - q_dst(a);
    const Scalar d1 = q_src.left_limit(b) - q_dst.left_limit(b);
    total += (b - a) * (d0 * d0 + d0 * d1 + d1 * d1) / Scalar(3);
  }
  return std::sqrt(std::max(total, Scalar(0)));
}

/// Everything d_T needs from one signal, computed once.
template <typename Scalar>
struct TransportProfile {
  Signal<Scalar> signal;
  DerivativeDensity<Scalar> density;
  MonotoneFunction<Scalar> cdf;

  explicit TransportProfile(Signal<Scalar> s)
      : signal(std::move(s)), density(derivative_density(signal)), cdf(cdf_from_density(density)) {}
};

/// Transport divergence between two profiled signals on the same grid:
///   d_T(s, phi)^2 = int_0^1 |s(x) - phi(g(x))|^2 sqrt(g'(x)) dx,
/// g the optimal map from the derivative density of s to that of phi.
/// Directional; d_T(s, phi) != d_T(phi, s) in general.
template <typename Scalar>
Scalar transport_divergence(const TransportProfile<Scalar>& s, const TransportProfile<Scalar>& phi) {
  if (s.signal.size() != phi.signal.size()) {
    throw std::invalid_argument("transport_divergence: profiles must share a grid");
  }
  const TransportMap<Scalar> g = transport_map(s.cdf, phi.cdf);
  const Vector<Scalar>& gv = g.values();
  Vector<Scalar> integrand(gv.size());
  for (Index j = 0; j < gv.size(); ++j) {
    const Scalar r = s.signal[j] - phi.signal(gv(j));
    integrand(j) = r * r * std::sqrt(g.slope()(j));
  }
  return std::sqrt(std::max(trapezoid(integrand, s.signal.step()), Scalar(0)));
}

/// d_T on raw signals; the shorter one is resampled onto the longer grid.
/// Throws ZeroVariation if either signal is constant.
template <typename Scalar>
Scalar d_T(const Signal<Scalar>& s, const Signal<Scalar>& phi) {
  const auto [a, b] = equalize(s, phi);
  return transport_divergence(TransportProfile<Scalar>(a), TransportProfile<Scalar>(b));
}

}  // namespace tswarp
