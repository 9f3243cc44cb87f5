#ifndef TESTS_ORACLES_HPP
#define TESTS_ORACLES_HPP

// Independent reference implementations used to cross-check the library.
// Everything here recomputes results from first principles with its own
// enumeration and arithmetic, never through the code paths under test.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "elicit/core.hpp"
#include "elicit/regression.hpp"

namespace oracles {

/// Expected m-observation loss by direct base-K digit decoding of every
/// tuple index (no shared enumeration helper).
inline double naive_expected_loss(const elicit::MultiObsLoss& loss,
                                  const std::vector<double>& r,
                                  const elicit::Distribution& p) {
  const std::size_t K = p.size();
  std::size_t total_tuples = 1;
  for (std::size_t j = 0; j < loss.obs_count; ++j) total_tuples *= K;
  double total = 0.0;
  for (std::size_t t = 0; t < total_tuples; ++t) {
    elicit::ProductIndex idx(loss.obs_count);
    std::size_t rem = t;
    for (std::size_t j = loss.obs_count; j-- > 0;) {
      idx[j] = rem % K;
      rem /= K;
    }
    double prob = 1.0;
    for (std::size_t j = 0; j < loss.obs_count; ++j) prob *= p.p(idx[j]);
    total += prob * loss.loss(r, idx);
  }
  return total;
}

/// Scalar argmin by brute scan of the expected loss over the report box.
inline double dense_grid_minimizer(const elicit::MultiObsLoss& loss,
                                   const elicit::Distribution& p,
                                   int points) {
  const auto [lo, hi] = loss.report_box.at(0);
  double best_r = lo;
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= points; ++i) {
    const double r = lo + (hi - lo) * i / points;
    const double f = naive_expected_loss(loss, {r}, p);
    if (f < best_f) {
      best_f = f;
      best_r = r;
    }
  }
  return best_r;
}

/// Empirical risk of a linear model on clustered samples.
inline double cluster_risk(const std::vector<elicit::ClusterSample>& samples,
                           const std::function<double(const std::vector<double>&)>& g,
                           double intercept, double slope) {
  double total = 0.0;
  for (const auto& cs : samples) {
    const double diff = intercept + slope * cs.xbar - g(cs.ys);
    total += diff * diff;
  }
  return total;
}

struct GridFit {
  double intercept = 0.0;
  double slope = 0.0;
};

/// 2-d zoom-grid empirical risk minimization.  The objective is a convex
/// quadratic, so repeatedly re-centering a shrinking 41x41 window on the
/// best grid point converges to the global minimizer.
inline GridFit grid_erm_fit(
    const std::vector<elicit::ClusterSample>& samples,
    const std::function<double(const std::vector<double>&)>& g) {
  double ci = 0.0, cs = 0.0, half = 50.0;
  for (int round = 0; round < 7; ++round) {
    double best_i = ci, best_s = cs;
    double best_f = std::numeric_limits<double>::infinity();
    for (int a = -20; a <= 20; ++a) {
      for (int b = -20; b <= 20; ++b) {
        const double intercept = ci + half * a / 20.0;
        const double slope = cs + half * b / 20.0;
        const double f = cluster_risk(samples, g, intercept, slope);
        if (f < best_f) {
          best_f = f;
          best_i = intercept;
          best_s = slope;
        }
      }
    }
    ci = best_i;
    cs = best_s;
    half = half / 10.0;  // window still covers +/- 2 previous grid steps
  }
  return {ci, cs};
}

/// Minimum infinity-norm distance between mixtures of two point families,
/// with weights on a resolution-res simplex grid.  Groups of up to 3 points.
inline double grid_hull_min_dist(const std::vector<std::vector<double>>& A,
                                 const std::vector<std::vector<double>>& B,
                                 int res) {
  if (A.empty() || B.empty() || A.size() > 3 || B.size() > 3)
    throw std::invalid_argument("grid_hull_min_dist: need 1..3 points per side");
  const std::size_t dim = A.front().size();
  auto mixtures = [&](const std::vector<std::vector<double>>& pts) {
    std::vector<std::vector<double>> out;
    const std::size_t k = pts.size();
    std::vector<int> w(k, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == k) {
        w[i] = left;
        std::vector<double> mix(dim, 0.0);
        for (std::size_t q = 0; q < k; ++q)
          for (std::size_t c = 0; c < dim; ++c)
            mix[c] += (static_cast<double>(w[q]) / res) * pts[q][c];
        out.push_back(std::move(mix));
        return;
      }
      for (int take = 0; take <= left; ++take) {
        w[i] = take;
        rec(i + 1, left - take);
      }
    };
    rec(0, res);
    return out;
  };
  const std::vector<std::vector<double>> MA = mixtures(A);
  const std::vector<std::vector<double>> MB = mixtures(B);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : MA) {
    for (const auto& b : MB) {
      double d = 0.0;
      for (std::size_t c = 0; c < dim && d < best; ++c)
        d = std::max(d, std::fabs(a[c] - b[c]));
      if (d < best) best = d;
    }
  }
  return best;
}

}  // namespace oracles

#endif  // TESTS_ORACLES_HPP
