#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tswarp/signal.hpp"

namespace tswarp {

/// Non-decreasing, right-continuous, piecewise-linear function on
/// [knots_x.front(), knots_x.back()].
///
/// On each cell [x_i, x_{i+1}) the function runs linearly from y_i to the left
/// limit l_{i+1}; at x_{i+1} it jumps to y_{i+1} >= l_{i+1}.  A function with
/// l == y everywhere is continuous.  Evaluation at knots_x[i] returns knots_y[i].
/// l_0 <= y_0 is the value to the left of the domain, so a function may also
/// jump at its lower end.
template <typename Scalar>
class MonotoneFunction {
 public:
  using Point = std::pair<Scalar, Scalar>;

  MonotoneFunction(Vector<Scalar> knots_x, Vector<Scalar> knots_y)
      : x_(std::move(knots_x)), y_(std::move(knots_y)), left_(y_) {
    validate();
  }

  MonotoneFunction(Vector<Scalar> knots_x, Vector<Scalar> knots_y, Vector<Scalar> left_limits)
      : x_(std::move(knots_x)), y_(std::move(knots_y)), left_(std::move(left_limits)) {
    validate();
  }

  /// Builds the right-continuous function whose completed graph is the given
  /// monotone polyline.  Vertices sharing an abscissa describe a jump; the
  /// function takes the highest of them, the lowest is the left limit.
  static MonotoneFunction from_graph(const std::vector<Point>& graph) {
    if (graph.empty()) throw std::invalid_argument("MonotoneFunction: empty graph");
    std::vector<Scalar> xs, ys, ls;
    for (const auto& [px, py] : graph) {
      if (!xs.empty() && (px < xs.back() || py < ys.back())) {
        throw std::invalid_argument("MonotoneFunction: graph is not monotone");
      }
      if (!xs.empty() && px == xs.back()) {
        ys.back() = py;
      } else {
        xs.push_back(px);
        ys.push_back(py);
        ls.push_back(py);
      }
    }
    if (xs.size() < 2) throw std::invalid_argument("MonotoneFunction: degenerate domain");
    return MonotoneFunction(to_vector(xs), to_vector(ys), to_vector(ls));
  }

  const Vector<Scalar>& knots_x() const noexcept { return x_; }
  const Vector<Scalar>& knots_y() const noexcept { return y_; }
  const Vector<Scalar>& left_limits() const noexcept { return left_; }
  Index size() const noexcept { return x_.size(); }
  Scalar lower() const { return x_(0); }
  Scalar upper() const { return x_(x_.size() - 1); }

  /// F(t); l_0 below the domain, F(upper()) above it.
  Scalar operator()(Scalar t) const {
    const Index n = x_.size();
    if (t < x_(0)) return left_(0);
    if (!(t > x_(0))) return y_(0);
    if (t >= x_(n - 1)) return y_(n - 1);
    const Index i = cell_of(t);
    if (t == x_(i)) return y_(i);
    const Scalar w = (t - x_(i)) / (x_(i + 1) - x_(i));
    return y_(i) + w * (left_(i + 1) - y_(i));
  }

  /// lim_{u -> t^-} F(u); l_0 at and below the left end.
  Scalar left_limit(Scalar t) const {
    const Index n = x_.size();
    if (!(t > x_(0))) return left_(0);
    if (t > x_(n - 1)) return y_(n - 1);
    const Index i = cell_of(t);
    if (t == x_(i)) return left_(i);
    const Scalar w = (t - x_(i)) / (x_(i + 1) - x_(i));
    return y_(i) + w * (left_(i + 1) - y_(i));
  }

  bool continuous_at(Scalar t) const { return left_limit(t) == (*this)(t); }

  /// F(t) < F(t + eps) for every eps > 0 (within the domain).
  bool strictly_right_increasing_at(Scalar t) const {
    const Index n = x_.size();
    if (t < x_(0) || t >= x_(n - 1)) return false;
    // A flat segment ending in a jump is still flat immediately right of t.
    const Index i = cell_of(t);
    return left_(i + 1) > y_(i);
  }

  /// Vertices of the completed graph (jumps filled in by vertical segments).
  std::vector<Point> graph() const {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(2 * x_.size()));
    if (left_(0) < y_(0)) out.emplace_back(x_(0), left_(0));
    out.emplace_back(x_(0), y_(0));
    for (Index i = 1; i < x_.size(); ++i) {
      out.emplace_back(x_(i), left_(i));
      if (left_(i) < y_(i)) out.emplace_back(x_(i), y_(i));
    }
    return out;
  }

 private:
  static Vector<Scalar> to_vector(const std::vector<Scalar>& v) {
    return Eigen::Map<const Vector<Scalar>>(v.data(), static_cast<Index>(v.size()));
  }

  // Index i with x_i <= t < x_{i+1}, assuming x_0 <= t < x_n.
  Index cell_of(Scalar t) const {
    const Scalar* first = x_.data();
    const Scalar* last = x_.data() + x_.size();
    const Index i = static_cast<Index>(std::upper_bound(first, last, t) - first) - 1;
    return std::clamp<Index>(i, 0, x_.size() - 2);
  }

  void validate() const {
    const Index n = x_.size();
    if (n < 2) throw std::invalid_argument("MonotoneFunction: need at least 2 knots");
    if (y_.size() != n || left_.size() != n) {
      throw std::invalid_argument("MonotoneFunction: knot vectors differ in length");
    }
    if (!x_.allFinite() || !y_.allFinite() || !left_.allFinite()) {
      throw std::invalid_argument("MonotoneFunction: knots must be finite");
    }
    if (left_(0) > y_(0)) throw std::invalid_argument("MonotoneFunction: values must be non-decreasing");
    for (Index i = 1; i < n; ++i) {
      if (!(x_(i) > x_(i - 1))) {
        throw std::invalid_argument("MonotoneFunction: knots_x must be strictly increasing");
      }
      if (left_(i) < y_(i - 1) || left_(i) > y_(i)) {
        throw std::invalid_argument("MonotoneFunction: values must be non-decreasing");
      }
    }
  }

  Vector<Scalar> x_;
  Vector<Scalar> y_;
  Vector<Scalar> left_;
};

/// F^dagger(y) = inf{x in [a,b] : F(x) > y}, with inf of the empty set = b.
/// Binary search over the knots; O(log n).
template <typename Scalar>
Scalar quantile(const MonotoneFunction<Scalar>& F, Scalar y) {
  const Vector<Scalar>& xs = F.knots_x();
  const Vector<Scalar>& ys = F.knots_y();
  const Vector<Scalar>& ls = F.left_limits();
  const Index n = xs.size();
  if (ys(0) > y) return xs(0);
  const Scalar* first = ys.data();
  const Index k = static_cast<Index>(std::upper_bound(first, first + n, y) - first);
  if (k == n) return xs(n - 1);
  // F <= y on [a, x_{k-1}]; on [x_{k-1}, x_k) it rises from ys(k-1) to ls(k).
  if (ls(k) > y) {
    const Scalar w = (y - ys(k - 1)) / (ls(k) - ys(k - 1));
    return std::clamp(xs(k - 1) + w * (xs(k) - xs(k - 1)), xs(k - 1), xs(k));
  }
  return xs(k);
}

/// The generalized inverse as a function in its own right: the graph of F
/// reflected through the diagonal, flat regions turned into jumps and jumps
/// into flat regions.  Agrees with quantile(F, .) everywhere on [F(a), F(b)].
template <typename Scalar>
MonotoneFunction<Scalar> generalized_inverse(const MonotoneFunction<Scalar>& F) {
  auto graph = F.graph();
  for (auto& p : graph) std::swap(p.first, p.second);
  return MonotoneFunction<Scalar>::from_graph(graph);
}

}  // namespace tswarp
