#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tswarp/errors.hpp"
#include "tswarp/signal.hpp"

namespace tswarp {

/// Whether path steps carry the arc-length weights (|di| + |dj|) / N.
enum class Weighting { none, arc_length };

/// Discrete warping path.  steps[i] = (index into s, index into phi).
/// weights[i] is the arc-length weight of the step that arrives at steps[i];
/// the start node has no incoming step, so weights[0] = 0.
template <typename Scalar>
struct DiscretePath {
  std::vector<std::pair<Index, Index>> steps;
  std::vector<Scalar> weights;

  /// L, the index of the last step.
  Index length() const noexcept { return static_cast<Index>(steps.size()) - 1; }
};

template <typename Scalar>
struct DtwResult {
  Scalar cost;
  DiscretePath<Scalar> path;
};

namespace detail {

// Step kinds, in tie-breaking order.  "Vertical" advances s, "horizontal"
// advances phi.
enum class Move : std::uint8_t { diagonal = 0, vertical = 1, horizontal = 2, start = 3 };

template <typename Scalar>
inline Scalar step_cost(Scalar mismatch, Move move, Weighting weighting, Scalar inv_n) {
  if (weighting == Weighting::none) return mismatch;
  switch (move) {
    case Move::diagonal:
      return mismatch * (Scalar(2) * inv_n);
    case Move::vertical:
    case Move::horizontal:
      return mismatch * inv_n;
    case Move::start:
      break;
  }
  return Scalar(0);
}

template <typename Scalar>
Scalar start_cost(Scalar mismatch, Weighting weighting) {
  return weighting == Weighting::none ? mismatch : Scalar(0);
}

template <typename Scalar>
Scalar weight_normalizer(const Signal<Scalar>& s, const Signal<Scalar>& phi, Weighting weighting) {
  if (weighting == Weighting::arc_length && s.size() != phi.size()) {
    throw std::invalid_argument("dtw_weighted: signals must have equal length");
  }
  return Scalar(1) / static_cast<Scalar>(s.intervals());
}

// Picks the cheapest predecessor with ties resolved diagonal > vertical > horizontal.
template <typename Scalar>
inline std::pair<Scalar, Move> best_of(Scalar diag, Scalar vert, Scalar horiz) {
  Scalar best = diag;
  Move move = Move::diagonal;
  if (vert < best) {
    best = vert;
    move = Move::vertical;
  }
  if (horiz < best) {
    best = horiz;
    move = Move::horizontal;
  }
  return {best, move};
}

template <typename Scalar>
Scalar dtw_rolling(const Signal<Scalar>& s, const Signal<Scalar>& phi, Weighting weighting) {
  const Scalar inv_n = weight_normalizer(s, phi, weighting);
  const Index n = s.size();
  const Index m = phi.size();
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  std::vector<Scalar> prev(static_cast<std::size_t>(m), inf);
  std::vector<Scalar> cur(static_cast<std::size_t>(m), inf);
  const Scalar* a = s.samples().data();
  const Scalar* b = phi.samples().data();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      const Scalar c = std::abs(a[i] - b[j]);
      if (i == 0 && j == 0) {
        cur[0] = start_cost(c, weighting);
        continue;
      }
      const Scalar diag = (i > 0 && j > 0) ? prev[j - 1] + step_cost(c, Move::diagonal, weighting, inv_n) : inf;
      const Scalar vert = i > 0 ? prev[j] + step_cost(c, Move::vertical, weighting, inv_n) : inf;
      const Scalar horiz = j > 0 ? cur[j - 1] + step_cost(c, Move::horizontal, weighting, inv_n) : inf;
      cur[j] = best_of(diag, vert, horiz).first;
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(m - 1)];
}

template <typename Scalar>
DtwResult<Scalar> dtw_with_path(const Signal<Scalar>& s, const Signal<Scalar>& phi, Weighting weighting) {
  const Scalar inv_n = weight_normalizer(s, phi, weighting);
  const Index n = s.size();
  const Index m = phi.size();
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> table(n, m);
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> from(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) {
      const Scalar c = std::abs(s[i] - phi[j]);
      if (i == 0 && j == 0) {
        table(0, 0) = start_cost(c, weighting);
        from(0, 0) = static_cast<std::uint8_t>(Move::start);
        continue;
      }
      const Scalar diag = (i > 0 && j > 0) ? table(i - 1, j - 1) + step_cost(c, Move::diagonal, weighting, inv_n) : inf;
      const Scalar vert = i > 0 ? table(i - 1, j) + step_cost(c, Move::vertical, weighting, inv_n) : inf;
      const Scalar horiz = j > 0 ? table(i, j - 1) + step_cost(c, Move::horizontal, weighting, inv_n) : inf;
      const auto [best, move] = best_of(diag, vert, horiz);
      table(i, j) = best;
      from(i, j) = static_cast<std::uint8_t>(move);
    }
  }

  DiscretePath<Scalar> path;
  Index i = n - 1;
  Index j = m - 1;
  for (;;) {
    path.steps.emplace_back(i, j);
    const auto move = static_cast<Move>(from(i, j));
    if (move == Move::start) break;
    if (move != Move::horizontal) --i;
    if (move != Move::vertical) --j;
  }
  std::reverse(path.steps.begin(), path.steps.end());
  path.weights.assign(path.steps.size(), Scalar(0));
  for (std::size_t k = 1; k < path.steps.size(); ++k) {
    const Index di = path.steps[k].first - path.steps[k - 1].first;
    const Index dj = path.steps[k].second - path.steps[k - 1].second;
    path.weights[k] = static_cast<Scalar>(di + dj) * inv_n;
  }
  return {table(n - 1, m - 1), std::move(path)};
}

template <typename Scalar>
void brute_force_walk(const Signal<Scalar>& s, const Signal<Scalar>& phi, Weighting weighting, Scalar inv_n,
                      Index i, Index j, Scalar acc, Scalar& best) {
  if (i == s.size() - 1 && j == phi.size() - 1) {
    if (acc < best) best = acc;
    return;
  }
  if (i + 1 < s.size() && j + 1 < phi.size()) {
    const Scalar c = std::abs(s[i + 1] - phi[j + 1]);
    brute_force_walk(s, phi, weighting, inv_n, i + 1, j + 1, acc + step_cost(c, Move::diagonal, weighting, inv_n), best);
  }
  if (i + 1 < s.size()) {
    const Scalar c = std::abs(s[i + 1] - phi[j]);
    brute_force_walk(s, phi, weighting, inv_n, i + 1, j, acc + step_cost(c, Move::vertical, weighting, inv_n), best);
  }
  if (j + 1 < phi.size()) {
    const Scalar c = std::abs(s[i] - phi[j + 1]);
    brute_force_walk(s, phi, weighting, inv_n, i, j + 1, acc + step_cost(c, Move::horizontal, weighting, inv_n), best);
  }
}

}  // namespace detail

/// Classic DTW with absolute mismatch and steps {(1,0), (0,1), (1,1)}.
/// Returns the optimal cost and one optimal path (ties: diagonal, then
/// advancing s, then advancing phi).
template <typename Scalar>
DtwResult<Scalar> dtw(const Signal<Scalar>& s, const Signal<Scalar>& phi) {
  return detail::dtw_with_path(s, phi, Weighting::none);
}

/// Cost only, keeping two rows of the table.
template <typename Scalar>
Scalar dtw_cost(const Signal<Scalar>& s, const Signal<Scalar>& phi) {
  return detail::dtw_rolling(s, phi, Weighting::none);
}

/// DTW with arc-length step weights: 1/N for axis steps, 2/N for diagonal
/// steps.  Requires equal lengths N+1.  Approximates the continuous-path
/// (line integral) formulation as N grows.
template <typename Scalar>
DtwResult<Scalar> dtw_weighted(const Signal<Scalar>& s, const Signal<Scalar>& phi) {
  return detail::dtw_with_path(s, phi, Weighting::arc_length);
}

template <typename Scalar>
Scalar dtw_weighted_cost(const Signal<Scalar>& s, const Signal<Scalar>& phi) {
  return detail::dtw_rolling(s, phi, Weighting::arc_length);
}

/// Exhaustive minimum over all admissible paths.  Test oracle; limited to
/// N + M <= 12 (index ranges, not lengths).
template <typename Scalar>
Scalar brute_force_dtw(const Signal<Scalar>& s, const Signal<Scalar>& phi, Weighting weighting) {
  if (s.intervals() + phi.intervals() > 12) {
    throw std::invalid_argument("brute_force_dtw: instance too large (N + M > 12)");
  }
  const Scalar inv_n = detail::weight_normalizer(s, phi, weighting);
  Scalar best = std::numeric_limits<Scalar>::infinity();
  const Scalar first = detail::start_cost(std::abs(s[0] - phi[0]), weighting);
  detail::brute_force_walk(s, phi, weighting, inv_n, Index(0), Index(0), first, best);
  return best;
}

/// Throws AdmissibilityError unless `path` runs from (0,0) to (n-1, m-1) with
/// unit non-null steps.
template <typename Scalar>
void check_admissible(const DiscretePath<Scalar>& path, Index n, Index m) {
  if (path.steps.empty()) throw AdmissibilityError("path is empty");
  if (path.steps.front() != std::pair<Index, Index>{0, 0}) {
    throw AdmissibilityError("path must start at (0,0)");
  }
  if (path.steps.back() != std::pair<Index, Index>{n - 1, m - 1}) {
    throw AdmissibilityError("path must end at (" + std::to_string(n - 1) + "," + std::to_string(m - 1) + ")");
  }
  for (std::size_t k = 1; k < path.steps.size(); ++k) {
    const Index di = path.steps[k].first - path.steps[k - 1].first;
    const Index dj = path.steps[k].second - path.steps[k - 1].second;
    if (di < 0 || di > 1 || dj < 0 || dj > 1 || (di == 0 && dj == 0)) {
      throw AdmissibilityError("invalid step at position " + std::to_string(k));
    }
  }
}

/// Objective of a given path, with or without arc-length weights.  The
/// summation order matches the dynamic program, so an optimal path
/// re-evaluates to the reported cost bit for bit.
template <typename Scalar>
Scalar evaluate_path(const Signal<Scalar>& s, const Signal<Scalar>& phi, const DiscretePath<Scalar>& path,
                     Weighting weighting) {
  check_admissible(path, s.size(), phi.size());
  const Scalar inv_n = detail::weight_normalizer(s, phi, weighting);
  Scalar total = detail::start_cost(std::abs(s[0] - phi[0]), weighting);
  for (std::size_t k = 1; k < path.steps.size(); ++k) {
    const auto [i, j] = path.steps[k];
    const Index di = i - path.steps[k - 1].first;
    const Index dj = j - path.steps[k - 1].second;
    const auto move = di == 1 && dj == 1 ? detail::Move::diagonal
                      : di == 1          ? detail::Move::vertical
                                         : detail::Move::horizontal;
    total += detail::step_cost(std::abs(s[i] - phi[j]), move, weighting, inv_n);
  }
  return total;
}

}  // namespace tswarp
