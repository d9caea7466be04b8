#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "tswarp/dataset.hpp"
#include "tswarp/monotone.hpp"
#include "tswarp/signal.hpp"

namespace tswarp {

struct WarpParams {
  Index knots = 8;          ///< number of linear pieces
  double roughness = 0.5;   ///< coefficient of variation of the piece increments, in [0, 1]
  bool allow_flat = false;  ///< flatten one interior piece with probability roughness / 2
};

/// Piecewise-linear non-decreasing map of [0,1] onto [0,1] with g(0) = 0 and
/// g(1) = 1 exactly.
template <typename Scalar>
class WarpFunction {
 public:
  WarpFunction(Vector<Scalar> knots_x, Vector<Scalar> knots_y) : fn_(std::move(knots_x), std::move(knots_y)) {
    const auto& x = fn_.knots_x();
    const auto& y = fn_.knots_y();
    if (x(0) != Scalar(0) || x(x.size() - 1) != Scalar(1) || y(0) != Scalar(0) || y(y.size() - 1) != Scalar(1)) {
      throw std::invalid_argument("WarpFunction: must map [0,1] onto [0,1] with fixed endpoints");
    }
  }

  static WarpFunction identity() { return WarpFunction(uniform_grid<Scalar>(2), uniform_grid<Scalar>(2)); }

  Scalar operator()(Scalar t) const { return fn_(t); }
  const MonotoneFunction<Scalar>& function() const noexcept { return fn_; }

  bool has_flat_piece() const {
    const auto& y = fn_.knots_y();
    return ((y.tail(y.size() - 1) - y.head(y.size() - 1)).array() == Scalar(0)).any();
  }

 private:
  MonotoneFunction<Scalar> fn_;
};

/// Random element of the warp set: `knots` positive increments with mean 1 and
/// coefficient of variation `roughness` (gamma distributed), cumulated and
/// normalized so the last knot is exactly 1.  Roughness 0 gives the identity.
template <typename Scalar, typename Rng>
WarpFunction<Scalar> random_warp(const WarpParams& params, Rng& rng) {
  if (params.knots < 2) throw std::invalid_argument("random_warp: need at least 2 knots");
  if (!(params.roughness >= 0.0 && params.roughness <= 1.0)) {
    throw std::invalid_argument("random_warp: roughness must lie in [0, 1]");
  }
  const Index k = params.knots;
  std::vector<double> inc(static_cast<std::size_t>(k), 1.0);
  if (params.roughness > 0.0) {
    const double r2 = params.roughness * params.roughness;
    std::gamma_distribution<double> gamma(1.0 / r2, r2);
    for (auto& v : inc) v = std::max(gamma(rng), 1e-12);
  }
  if (params.allow_flat && params.roughness > 0.0) {
    std::bernoulli_distribution flatten(params.roughness / 2.0);
    if (flatten(rng)) {
      const Index lo = k >= 3 ? 1 : 0;
      const Index hi = k >= 3 ? k - 2 : k - 1;
      std::uniform_int_distribution<Index> pick(lo, hi);
      inc[static_cast<std::size_t>(pick(rng))] = 0.0;
    }
  }
  Vector<Scalar> y(k + 1);
  y(0) = Scalar(0);
  double acc = 0.0;
  for (Index i = 0; i < k; ++i) {
    acc += inc[static_cast<std::size_t>(i)];
    y(i + 1) = static_cast<Scalar>(acc);
  }
  y /= y(k);
  y(k) = Scalar(1);
  return WarpFunction<Scalar>(uniform_grid<Scalar>(k + 1), std::move(y));
}

/// s o g sampled on the grid of s.
template <typename Scalar>
Signal<Scalar> apply_warp(const Signal<Scalar>& s, const WarpFunction<Scalar>& g) {
  const Vector<Scalar> u = uniform_grid<Scalar>(s.size());
  return Signal<Scalar>(u.unaryExpr([&](Scalar x) { return s(g(x)); }).eval());
}

/// Smooth train of `bumps` Gaussian bumps at evenly spaced centers; bit i of
/// `negative_mask` flips the sign of bump i.
template <typename Scalar>
Signal<Scalar> bump_train(int bumps, unsigned negative_mask, Index points) {
  const Scalar width = Scalar(0.15) / static_cast<Scalar>(bumps + 1);
  return Signal<Scalar>::sample(
      [=](Scalar x) {
        Scalar v = Scalar(0);
        for (int b = 0; b < bumps; ++b) {
          const Scalar center = static_cast<Scalar>(b + 1) / static_cast<Scalar>(bumps + 1);
          const Scalar z = (x - center) / width;
          const Scalar sign = (negative_mask >> b) & 1U ? Scalar(-1) : Scalar(1);
          v += sign * std::exp(Scalar(-0.5) * z * z);
        }
        return v;
      },
      points);
}

/// Deterministic catalog of k templates: all sign patterns of one bump, then
/// of two bumps, and so on.  Entry 0 is a single positive Gaussian bump.
template <typename Scalar>
std::vector<Signal<Scalar>> template_catalog(std::size_t k, Index points) {
  if (k < 1) throw std::invalid_argument("template_catalog: k must be at least 1");
  std::vector<Signal<Scalar>> out;
  out.reserve(k);
  for (int bumps = 1; out.size() < k; ++bumps) {
    for (unsigned mask = 0; mask < (1U << bumps) && out.size() < k; ++mask) {
      out.push_back(bump_train<Scalar>(bumps, mask, points));
    }
  }
  return out;
}

struct SyntheticSpec {
  int num_classes = 2;
  int atoms_per_class = 1;
  int samples_per_atom = 32;
  Index grid_size = 150;  ///< samples per signal
  Index warp_knots = 8;
  double warp_roughness = 0.5;
  std::uint64_t seed = 0;
  bool allow_flat = false;

  void validate() const;
};

/// Random stream for (seed, stream index); stream = class * atoms + atom.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream);

/// For every class c and atom m: samples_per_atom random warps of template
/// c * atoms_per_class + m, labeled (c, m).  Fully determined by the spec.
LabeledDataset generate_dataset(const SyntheticSpec& spec);

}  // namespace tswarp
