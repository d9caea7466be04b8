#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tswarp/monotone.hpp"
#include "tswarp/signal.hpp"

namespace tswarp::testing {

using Fn = MonotoneFunction<double>;

inline Vector<double> vec(std::initializer_list<double> v) {
  Vector<double> out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Hand-built piecewise-linear monotone functions with flat pieces, jumps, and
// both at once, plus seeded random ones.  All map [0,1] into [0,1] with F(1)=1.
inline std::vector<Fn> monotone_catalog() {
  std::vector<Fn> c;
  c.emplace_back(vec({0, 1}), vec({0, 1}));
  c.emplace_back(vec({0, 0.5, 1}), vec({0, 0, 1}));
  c.emplace_back(vec({0, 0.5, 1}), vec({0, 1, 1}));
  c.emplace_back(vec({0, 0.25, 0.75, 1}), vec({0, 0.5, 0.5, 1}));
  c.emplace_back(vec({0, 0.5, 1}), vec({0, 0.3, 1}), vec({0, 0.1, 1}));
  c.emplace_back(vec({0, 0.5, 1}), vec({0, 0.8, 1}), vec({0, 0.2, 1}));
  c.emplace_back(vec({0, 0.5, 1}), vec({0.5, 0.5, 1}), vec({0.5, 0.5, 1}));
  c.emplace_back(vec({0, 0.3, 0.6, 1}), vec({0, 0.2, 0.7, 1}), vec({0, 0.2, 0.4, 1}));
  c.emplace_back(vec({0, 0.2, 0.4, 0.6, 0.8, 1}), vec({0, 0.2, 0.2, 0.6, 0.6, 1}));
  c.emplace_back(vec({0, 0.2, 0.4, 0.6, 1}), vec({0, 0.1, 0.5, 0.5, 1}), vec({0, 0.1, 0.3, 0.5, 0.9}));
  c.emplace_back(vec({0, 1}), vec({0.25, 1}));
  c.emplace_back(vec({0, 0.1, 1}), vec({0, 0.9, 1}));
  c.emplace_back(vec({0, 0.9, 1}), vec({0, 0.1, 1}));
  c.emplace_back(vec({0, 0.5, 1}), vec({0, 0.5, 1}), vec({0, 0, 1}));
  c.emplace_back(vec({0, 0.4, 0.5, 1}), vec({0, 0, 1, 1}));
  c.emplace_back(vec({0, 0.25, 0.5, 0.75, 1}), vec({0.1, 0.3, 0.3, 0.9, 1}), vec({0.1, 0.2, 0.3, 0.6, 1}));
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (c.size() < 28) {
    const int k = 3 + static_cast<int>(rng() % 6);
    std::vector<double> xs{0.0}, ys, ls;
    for (int i = 1; i < k; ++i) xs.push_back(static_cast<double>(i) / k + 0.3 * (u(rng) - 0.5) / k);
    xs.push_back(1.0);
    double y = u(rng) < 0.3 ? 0.2 * u(rng) : 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = u(rng);
      double left = y;
      if (i > 0) {
        if (r < 0.25) {
          left = y;  // flat piece
        } else {
          left = y + 0.3 * u(rng);
        }
      }
      double value = left;
      if (i > 0 && u(rng) < 0.3) value = left + 0.2 * u(rng);  // jump
      ls.push_back(std::min(left, 1.0));
      ys.push_back(std::min(value, 1.0));
      y = ys.back();
    }
    ys.back() = 1.0;
    ls.back() = std::min(ls.back(), 1.0);
    Vector<double> vx(static_cast<Index>(xs.size())), vy(vx.size()), vl(vx.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      vx(static_cast<Index>(i)) = xs[i];
      vy(static_cast<Index>(i)) = ys[i];
      vl(static_cast<Index>(i)) = ls[i];
    }
    c.emplace_back(vx, vy, vl);
  }
  return c;
}

// Probe points: a fine grid plus every knot.
inline std::vector<double> probe_points(const Fn& f, int fine = 200) {
  std::vector<double> t;
  for (int i = 0; i <= fine; ++i) t.push_back(static_cast<double>(i) / fine);
  for (Index i = 0; i < f.size(); ++i) t.push_back(f.knots_x()(i));
  return t;
}

struct LawReport {
  double inverse_of_inverse = 0.0;  // max |(F†)†(x) - F(x)| at continuity points
  double below_identity = 0.0;      // max (x - F†(F(x)))_+
  double right_increasing = 0.0;    // max |F†(F(x)) - x| where F strictly right-increasing
};

inline LawReport check_inverse_laws(const Fn& f) {
  LawReport r;
  const Fn fi = generalized_inverse(f);
  const Fn fii = generalized_inverse(fi);
  for (double x : probe_points(f)) {
    if (f.continuous_at(x)) r.inverse_of_inverse = std::max(r.inverse_of_inverse, std::abs(fii(x) - f(x)));
    const double back = fi(f(x));
    r.below_identity = std::max(r.below_identity, x - back);
    if (f.strictly_right_increasing_at(x)) r.right_increasing = std::max(r.right_increasing, std::abs(back - x));
  }
  return r;
}

// Smooth non-constant test signals on [0,1].
inline std::vector<std::function<double(double)>> smooth_signals() {
  const double pi = std::numbers::pi;
  return {
      [pi](double x) { return std::sin(2 * pi * x); },
      [](double x) { return x * x; },
      [pi](double x) { return std::cos(3 * pi * x) + 0.5 * x; },
      [](double x) { return std::exp(-20 * (x - 0.4) * (x - 0.4)); },
      [](double x) { return x * x * x - x; },
  };
}

// Smooth strictly increasing warps fixing 0 and 1, with closed-form inverses.
struct AnalyticWarp {
  std::function<double(double)> w;
  std::function<double(double)> inverse;
};

inline std::vector<AnalyticWarp> analytic_warps() {
  return {
      {[](double x) { return x * x; }, [](double y) { return std::sqrt(y); }},
      {[](double x) { return std::sqrt(x); }, [](double y) { return y * y; }},
      {[](double x) { return (std::exp(x) - 1) / (std::exp(1.0) - 1); },
       [](double y) { return std::log1p(y * (std::exp(1.0) - 1)); }},
  };
}

// Reported 1-NN accuracies (percent) on 15 UCR datasets: {d_T, DTW}.
inline const std::vector<std::pair<double, double>>& reference_accuracies() {
  static const std::vector<std::pair<double, double>> table{
      {99.33, 88.67}, {95.86, 93.34}, {70.00, 75.00}, {93.67, 90.64}, {87.89, 87.30},
      {75.86, 69.65}, {78.67, 80.53}, {82.95, 79.11}, {63.49, 74.59}, {93.07, 91.48},
      {95.06, 94.89}, {100.00, 99.11}, {93.33, 92.72}, {97.34, 100.00}, {95.14, 84.72},
  };
  return table;
}

// Pearson coefficient of the pairs above, computed independently in double
// precision.
inline constexpr double kReferenceCorrelation = 0.8746484190790281;

}  // namespace tswarp::testing
