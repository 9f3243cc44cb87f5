#ifndef ELICIT_CATALOG_HPP
#define ELICIT_CATALOG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "elicit/core.hpp"

namespace elicit {

/// g(omega_1..omega_m) = sum_i prod_j table[i][j][omega_j].  Its expectation
/// under p^m is sum_i prod_j E_p[f_ij], the sum-of-products form that squared
/// loss elicits with m observations.
class SumProductEstimator {
 public:
  explicit SumProductEstimator(
      std::vector<std::vector<std::vector<double>>> terms)
      : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error("SumProductEstimator: no terms");
    obs_count_ = terms_.front().size();
    if (obs_count_ == 0) throw Error("SumProductEstimator: empty product");
    table_size_ = terms_.front().front().size();
    for (const auto& term : terms_) {
      if (term.size() != obs_count_)
        throw Error("SumProductEstimator: terms have mixed arity");
      for (const auto& table : term) {
        if (table.size() != table_size_)
          throw Error("SumProductEstimator: value tables have mixed size");
        for (double v : table)
          if (!std::isfinite(v))
            throw Error("SumProductEstimator: non-finite table entry");
      }
    }
    if (table_size_ < 2)
      throw Error("SumProductEstimator: tables must cover >= 2 outcomes");
  }

  std::size_t obs_count() const { return obs_count_; }
  std::size_t table_size() const { return table_size_; }
  const std::vector<std::vector<std::vector<double>>>& terms() const {
    return terms_;
  }

  double eval(const ProductIndex& idx) const {
    if (idx.size() != obs_count_)
      throw Error("SumProductEstimator: product index arity mismatch");
    double total = 0.0;
    for (const auto& term : terms_) {
      double prod = 1.0;
      for (std::size_t j = 0; j < obs_count_; ++j) {
        if (idx[j] >= table_size_)
          throw Error("SumProductEstimator: outcome index out of range");
        prod *= term[j][idx[j]];
      }
      total += prod;
    }
    return total;
  }

  /// sum_i prod_j E_p[f_ij]; the exact value squared loss drives reports to.
  double exact_value(const Distribution& p) const {
    if (p.size() != table_size_)
      throw Error("SumProductEstimator: distribution/table size mismatch");
    double total = 0.0;
    for (const auto& term : terms_) {
      double prod = 1.0;
      for (const auto& table : term) {
        double e = 0.0;
        for (std::size_t o = 0; o < table.size(); ++o) e += p.p(o) * table[o];
        prod *= e;
      }
      total += prod;
    }
    return total;
  }

  /// Range of g over all outcome tuples (used to declare report boxes).
  std::pair<double, double> value_range() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for_each_product(table_size_, obs_count_, [&](const ProductIndex& idx) {
      const double g = eval(idx);
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    });
    return {lo, hi};
  }

 private:
  std::vector<std::vector<std::vector<double>>> terms_;
  std::size_t obs_count_ = 0;
  std::size_t table_size_ = 0;
};

/// Squared loss (r - g(omega))^2 around a sum-of-products estimator, with
/// V(r, omega) = r - g(omega).  Minimized in expectation at E[g].
inline MultiObsLoss estimator_loss(const std::string& name,
                                   const SumProductEstimator& est) {
  auto [lo, hi] = est.value_range();
  const double pad = 0.25 * (hi - lo) + 1e-3;
  MultiObsLoss out;
  out.name = name;
  out.report_dim = 1;
  out.obs_count = est.obs_count();
  out.report_box = {{lo - pad, hi + pad}};
  out.loss = [est](const std::vector<double>& r, const ProductIndex& idx) {
    const double d = r[0] - est.eval(idx);
    return d * d;
  };
  out.ident = [est](const std::vector<double>& r, const ProductIndex& idx) {
    return std::vector<double>{r[0] - est.eval(idx)};
  };
  return out;
}

/// k-observation agreement loss (r - 1{omega_1 = ... = omega_k})^2.  Its
/// expected minimizer is sum_o p_o^k; the k-norm follows through r^(1/k).
inline MultiObsLoss knorm_loss(int k) {
  if (k < 2) throw Error("knorm_loss: k must be >= 2");
  MultiObsLoss out;
  out.name = "knorm" + std::to_string(k);
  out.report_dim = 1;
  out.obs_count = static_cast<std::size_t>(k);
  out.report_box = {{-0.25, 1.25}};
  auto agree = [](const ProductIndex& idx) {
    for (std::size_t j = 1; j < idx.size(); ++j)
      if (idx[j] != idx[0]) return 0.0;
    return 1.0;
  };
  out.loss = [agree](const std::vector<double>& r, const ProductIndex& idx) {
    const double d = r[0] - agree(idx);
    return d * d;
  };
  out.ident = [agree](const std::vector<double>& r, const ProductIndex& idx) {
    return std::vector<double>{r[0] - agree(idx)};
  };
  return out;
}

/// Loss b(omega) r^2 - 2 a(omega) r for a ratio E[a]/E[b].  Convex in r
/// whenever E[b] > 0, with minimizer exactly E[a]/E[b] and V = b r - a.
/// Distributions with E[b] <= 0 are outside the loss domain.
inline MultiObsLoss ratio_loss(const std::string& name,
                               const SumProductEstimator& numer,
                               const SumProductEstimator& denom,
                               std::pair<double, double> report_box) {
  if (numer.obs_count() != denom.obs_count())
    throw Error("ratio_loss: numerator/denominator arity mismatch");
  if (numer.table_size() != denom.table_size())
    throw Error("ratio_loss: numerator/denominator table size mismatch");
  MultiObsLoss out;
  out.name = name;
  out.report_dim = 1;
  out.obs_count = numer.obs_count();
  out.report_box = {report_box};
  out.loss = [numer, denom](const std::vector<double>& r,
                            const ProductIndex& idx) {
    return denom.eval(idx) * r[0] * r[0] - 2.0 * numer.eval(idx) * r[0];
  };
  out.ident = [numer, denom](const std::vector<double>& r,
                             const ProductIndex& idx) {
    return std::vector<double>{denom.eval(idx) * r[0] - numer.eval(idx)};
  };
  out.domain = [denom](const Distribution& p) {
    return denom.exact_value(p) > 0.0;
  };
  return out;
}

/// Default ratio report box from the tuple ranges of a and b; requires b
/// strictly positive on every tuple (use the explicit-box overload otherwise).
inline MultiObsLoss ratio_loss(const std::string& name,
                               const SumProductEstimator& numer,
                               const SumProductEstimator& denom) {
  auto [alo, ahi] = numer.value_range();
  auto [blo, bhi] = denom.value_range();
  if (blo <= 0.0)
    throw Error(
        "ratio_loss: denominator not positive on all tuples; pass an explicit "
        "report box");
  const double cands[4] = {alo / blo, alo / bhi, ahi / blo, ahi / bhi};
  double lo = cands[0], hi = cands[0];
  for (double c : cands) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  const double pad = 0.25 * (hi - lo) + 1e-3;
  return ratio_loss(name, numer, denom, {lo - pad, hi + pad});
}

namespace detail {

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::vector<double> power_table(const OutcomeSpace& space, int power) {
  std::vector<double> t(space.size());
  for (std::size_t o = 0; o < space.size(); ++o)
    t[o] = std::pow(space.value(o), power);
  return t;
}

}  // namespace detail

/// One block of a central-moment plan: an estimator S_j whose contribution to
/// mu_n is E[Y]^mean_power * E[S_j].
struct CentralMomentBlock {
  int mean_power;
  SumProductEstimator estimator;
};

/// Decomposition mu_n = sum_j E[Y]^{e_j} S_j with k blocks, each S_j needing
/// at most ceil(n/k) observations; a (k+1)-th component elicits E[Y] itself.
struct CentralMomentPlan {
  int n = 0;
  int k = 0;
  std::vector<CentralMomentBlock> blocks;

  /// Reassembles mu_n from the block estimators and the mean.
  double reconstruct(const Distribution& p) const {
    double mean = 0.0;
    for (std::size_t o = 0; o < p.size(); ++o)
      mean += p.p(o) * p.space()->value(o);
    double total = 0.0;
    for (const auto& block : blocks)
      total += std::pow(mean, block.mean_power) * block.estimator.exact_value(p);
    return total;
  }

  std::size_t max_obs() const {
    std::size_t m = 0;
    for (const auto& block : blocks) m = std::max(m, block.estimator.obs_count());
    return m;
  }
};

/// Builds the k-block plan for the n-th central moment over the binomial
/// expansion mu_n = sum_{i=0..n} (-1)^i C(n,i) E[Y]^i E[Y^{n-i}].  Indices
/// 0..n are split into k contiguous chunks; chunk j factors out E[Y]^{lo_j}
/// and keeps the rest as a sum-of-products estimator.
inline CentralMomentPlan central_moment_plan(int n, int k,
                                             const OutcomeSpace& space) {
  if (n < 1) throw Error("central_moment_plan: n must be >= 1");
  if (k < 1 || k > n) throw Error("central_moment_plan: need 1 <= k <= n");
  const int cap = (n + k - 1) / k;  // ceil(n/k) observations per block
  std::vector<std::pair<int, int>> chunks;
  int next = 0, remaining = n + 1;
  for (int j = 0; j + 1 < k; ++j) {
    const int size = std::min(cap, remaining - (k - 1 - j));
    chunks.emplace_back(next, next + size - 1);
    next += size;
    remaining -= size;
  }
  chunks.emplace_back(next, n);

  CentralMomentPlan plan;
  plan.n = n;
  plan.k = k;
  for (auto [lo, hi] : chunks) {
    std::size_t obs = 1;
    for (int i = lo; i <= hi; ++i) {
      const std::size_t factors = (i - lo) + (i < n ? 1 : 0);
      obs = std::max(obs, std::max<std::size_t>(factors, 1));
    }
    std::vector<std::vector<std::vector<double>>> terms;
    for (int i = lo; i <= hi; ++i) {
      const double coef = ((i % 2) ? -1.0 : 1.0) * detail::binom(n, i);
      std::vector<std::vector<double>> term;
      for (int c = 0; c < i - lo; ++c)
        term.push_back(detail::power_table(space, 1));
      if (i < n) term.push_back(detail::power_table(space, n - i));
      if (term.empty())
        term.push_back(std::vector<double>(space.size(), 1.0));
      while (term.size() < obs)
        term.push_back(std::vector<double>(space.size(), 1.0));
      for (double& v : term.front()) v *= coef;
      terms.push_back(std::move(term));
    }
    plan.blocks.push_back({lo, SumProductEstimator(std::move(terms))});
  }
  return plan;
}

/// Monomial in the probability coordinates: the multiset of outcome indices
/// whose probabilities are multiplied, mapped to its coefficient.
using PolynomialInP = std::map<std::vector<std::size_t>, double>;

/// Squared loss eliciting a degree-<=m polynomial of p with m observations:
/// each monomial prod p_o becomes a product of outcome indicators 1{omega_j=o},
/// padded with constant-1 factors.
inline MultiObsLoss polynomial_loss(const std::string& name,
                                    const PolynomialInP& poly, std::size_t m,
                                    std::size_t space_size) {
  if (m < 1) throw Error("polynomial_loss: m must be >= 1");
  if (poly.empty()) throw Error("polynomial_loss: empty polynomial");
  std::vector<std::vector<std::vector<double>>> terms;
  for (const auto& [mono, coef] : poly) {
    if (mono.size() > m)
      throw Error("polynomial_loss: monomial degree exceeds observation count");
    std::vector<std::vector<double>> term;
    for (std::size_t o : mono) {
      if (o >= space_size)
        throw Error("polynomial_loss: outcome index out of range");
      std::vector<double> ind(space_size, 0.0);
      ind[o] = 1.0;
      term.push_back(std::move(ind));
    }
    while (term.size() < m) term.push_back(std::vector<double>(space_size, 1.0));
    for (double& v : term.front()) v *= coef;
    terms.push_back(std::move(term));
  }
  return estimator_loss(name, SumProductEstimator(std::move(terms)));
}

namespace detail {

inline double dist_mean(const Distribution& p) {
  double mean = 0.0;
  for (std::size_t o = 0; o < p.size(); ++o)
    mean += p.p(o) * p.space()->value(o);
  return mean;
}

inline double dist_raw_moment(const Distribution& p, int power) {
  double m = 0.0;
  for (std::size_t o = 0; o < p.size(); ++o)
    m += p.p(o) * std::pow(p.space()->value(o), power);
  return m;
}

inline double dist_variance(const Distribution& p) {
  const double mean = dist_mean(p);
  return dist_raw_moment(p, 2) - mean * mean;
}

inline double dist_central_moment(const Distribution& p, int n) {
  const double mean = dist_mean(p);
  double m = 0.0;
  for (std::size_t o = 0; o < p.size(); ++o)
    m += p.p(o) * std::pow(p.space()->value(o) - mean, n);
  return m;
}

/// Identity, squared, and constant tables for building moment estimators.
inline SumProductEstimator value_product_estimator(
    const OutcomeSpace& space, const std::vector<int>& powers,
    double coef = 1.0) {
  std::vector<std::vector<double>> term;
  for (int pw : powers) term.push_back(power_table(space, pw));
  for (double& v : term.front()) v *= coef;
  return SumProductEstimator({term});
}

inline bool parse_int_suffix(const std::string& s, const std::string& prefix,
                             int& out) {
  if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0)
    return false;
  int v = 0;
  for (std::size_t i = prefix.size(); i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

/// Named statistics the toolkit knows how to evaluate exactly.  Supported:
/// mean, variance, knorm<k>, dispersion, sharpe, central_moment<n>, sine_demo.
inline Property named_property(const std::string& name) {
  Property prop;
  prop.name = name;
  int suffix = 0;
  if (name == "mean") {
    prop.report_evaluator = [](const Distribution& p) {
      return std::vector<double>{detail::dist_mean(p)};
    };
  } else if (name == "variance") {
    prop.report_evaluator = [](const Distribution& p) {
      return std::vector<double>{detail::dist_variance(p)};
    };
  } else if (detail::parse_int_suffix(name, "knorm", suffix)) {
    if (suffix < 2) throw Error("named_property: knorm order must be >= 2");
    const int k = suffix;
    prop.report_evaluator = [k](const Distribution& p) {
      double s = 0.0;
      for (std::size_t o = 0; o < p.size(); ++o) s += std::pow(p.p(o), k);
      return std::vector<double>{s};
    };
    prop.link = [k](const std::vector<double>& r) {
      return std::pow(std::max(r[0], 0.0), 1.0 / k);
    };
    prop.linked_target = name;
  } else if (name == "dispersion") {
    prop.report_evaluator = [](const Distribution& p) {
      return std::vector<double>{detail::dist_variance(p) /
                                 detail::dist_mean(p)};
    };
    prop.domain = [](const Distribution& p) { return detail::dist_mean(p) > 0.0; };
  } else if (name == "sharpe") {
    prop.report_evaluator = [](const Distribution& p) {
      const double mean = detail::dist_mean(p);
      return std::vector<double>{mean * mean / detail::dist_variance(p)};
    };
    prop.link = [](const std::vector<double>& r) {
      return std::sqrt(std::max(r[0], 0.0));
    };
    prop.linked_target = name;
    prop.domain = [](const Distribution& p) {
      return detail::dist_mean(p) > 0.0 && detail::dist_variance(p) > 0.0;
    };
  } else if (detail::parse_int_suffix(name, "central_moment", suffix)) {
    if (suffix < 1) throw Error("named_property: central moment order must be >= 1");
    const int n = suffix;
    prop.report_evaluator = [n](const Distribution& p) {
      return std::vector<double>{detail::dist_central_moment(p, n)};
    };
  } else if (name == "sine_demo") {
    prop.report_evaluator = [](const Distribution& p) {
      if (p.size() != 3) throw Error("sine_demo: needs exactly 3 outcomes");
      return std::vector<double>{p.p(0) - 0.5 * std::sin(1.0 / p.p(1))};
    };
    prop.domain = [](const Distribution& p) {
      if (p.size() != 3) return false;
      for (std::size_t o = 0; o < p.size(); ++o)
        if (p.p(o) <= 0.0) return false;
      return true;
    };
  } else {
    throw Error("named_property: unknown property '" + name + "'");
  }
  return prop;
}

/// Named loss constructions paired with named_property.  Supported: mean1,
/// variance2, knorm<k>, dispersion2, sharpe2, central_moment<n> (n obs).
inline MultiObsLoss named_loss(const std::string& name,
                               const OutcomeSpace& space) {
  int suffix = 0;
  if (name == "mean1") {
    return estimator_loss(
        name, detail::value_product_estimator(space, {1}));
  }
  if (name == "variance2") {
    // E[(Y1 - Y2)^2] / 2 = Var(Y); g(y1, y2) = (y1 - y2)^2 / 2.
    std::vector<std::vector<std::vector<double>>> terms;
    auto sq = detail::power_table(space, 2);
    auto id = detail::power_table(space, 1);
    auto one = std::vector<double>(space.size(), 1.0);
    auto half_sq = sq;
    for (double& v : half_sq) v *= 0.5;
    terms.push_back({half_sq, one});
    terms.push_back({one, half_sq});
    auto neg_id = id;
    for (double& v : neg_id) v = -v;
    terms.push_back({neg_id, id});
    return estimator_loss(name, SumProductEstimator(std::move(terms)));
  }
  if (detail::parse_int_suffix(name, "knorm", suffix)) return knorm_loss(suffix);
  if (name == "dispersion2") {
    // a = (y1 - y2)^2 / 2 (variance), b = y1 (mean); minimizer Var/E[Y].
    std::vector<std::vector<std::vector<double>>> aterms;
    auto sq = detail::power_table(space, 2);
    auto id = detail::power_table(space, 1);
    auto one = std::vector<double>(space.size(), 1.0);
    auto half_sq = sq;
    for (double& v : half_sq) v *= 0.5;
    auto neg_id = id;
    for (double& v : neg_id) v = -v;
    aterms.push_back({half_sq, one});
    aterms.push_back({one, half_sq});
    aterms.push_back({neg_id, id});
    SumProductEstimator a(std::move(aterms));
    SumProductEstimator b({{id, one}});
    auto [alo, ahi] = a.value_range();
    double vmax = 0.0;
    for (double v : space.values()) vmax = std::max(vmax, std::fabs(v));
    const double hi = std::max(1.0, ahi) * 2.0 + vmax;
    return ratio_loss(name, a, b, {std::min(0.0, alo) - 1.0, hi});
  }
  if (name == "sharpe2") {
    // a = y1 y2 (squared mean), b = (y1 - y2)^2 / 2 (variance); minimizer
    // mean^2 / Var.  Box is generous: the objective is convex whenever the
    // distribution is in domain, so refinement pins the minimum regardless.
    auto id = detail::power_table(space, 1);
    auto sq = detail::power_table(space, 2);
    auto one = std::vector<double>(space.size(), 1.0);
    SumProductEstimator a({{id, id}});
    std::vector<std::vector<std::vector<double>>> bterms;
    auto half_sq = sq;
    for (double& v : half_sq) v *= 0.5;
    auto neg_id = id;
    for (double& v : neg_id) v = -v;
    bterms.push_back({half_sq, one});
    bterms.push_back({one, half_sq});
    bterms.push_back({neg_id, id});
    SumProductEstimator b(std::move(bterms));
    double vmax = 1.0;
    for (double v : space.values()) vmax = std::max(vmax, std::fabs(v));
    return ratio_loss(name, a, b, {-1.0, 400.0 * vmax * vmax});
  }
  if (detail::parse_int_suffix(name, "central_moment", suffix)) {
    CentralMomentPlan plan = central_moment_plan(suffix, 1, space);
    return estimator_loss(name, plan.blocks.front().estimator);
  }
  throw Error("named_loss: unknown loss '" + name + "'");
}

}  // namespace elicit

#endif  // ELICIT_CATALOG_HPP
