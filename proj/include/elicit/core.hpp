#ifndef ELICIT_CORE_HPP
#define ELICIT_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace elicit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite outcome space: labels plus real payoff values, fixed at construction.
class OutcomeSpace {
 public:
  OutcomeSpace(std::vector<std::string> labels, std::vector<double> values)
      : labels_(std::move(labels)), values_(std::move(values)) {
    if (labels_.size() < 2)
      throw Error("OutcomeSpace: need at least 2 outcomes");
    if (labels_.size() != values_.size())
      throw Error("OutcomeSpace: label/value count mismatch");
    std::set<std::string> seen;
    for (const auto& l : labels_)
      if (!seen.insert(l).second)
        throw Error("OutcomeSpace: duplicate label '" + l + "'");
    for (double v : values_)
      if (!std::isfinite(v)) throw Error("OutcomeSpace: non-finite value");
  }

  static std::shared_ptr<const OutcomeSpace> from_values(
      const std::vector<double>& values) {
    std::vector<std::string> labels;
    labels.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      labels.push_back("y" + std::to_string(i));
    return std::make_shared<const OutcomeSpace>(labels, values);
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  double value(std::size_t i) const { return values_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
};

using SpacePtr = std::shared_ptr<const OutcomeSpace>;

/// Probability vector over an outcome space.  Inputs whose mass is within
/// 1e-9 of 1 are renormalized; anything farther off is rejected.
class Distribution {
 public:
  Distribution(SpacePtr space, std::vector<double> probs)
      : space_(std::move(space)), probs_(std::move(probs)) {
    if (!space_) throw Error("Distribution: null outcome space");
    if (probs_.size() != space_->size())
      throw Error("Distribution: probability count does not match space");
    double sum = 0.0;
    for (double& q : probs_) {
      if (!std::isfinite(q)) throw Error("Distribution: non-finite probability");
      if (q < 0.0) {
        if (q < -1e-12) throw Error("Distribution: negative probability");
        q = 0.0;
      }
      sum += q;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw Error("Distribution: probabilities sum to " + std::to_string(sum));
    for (double& q : probs_) q /= sum;
  }

  std::size_t size() const { return probs_.size(); }
  double p(std::size_t i) const { return probs_.at(i); }
  const std::vector<double>& probs() const { return probs_; }
  const SpacePtr& space() const { return space_; }

 private:
  SpacePtr space_;
  std::vector<double> probs_;
};

/// Tuple of m outcome indices addressing one coordinate of the m-fold product.
using ProductIndex = std::vector<std::size_t>;

/// Linear (lexicographic, first observation most significant) position of a
/// product index within the K^m tuple enumeration.
inline std::size_t linear_index(const ProductIndex& idx, std::size_t space_size) {
  std::size_t lin = 0;
  for (std::size_t o : idx) {
    if (o >= space_size) throw Error("ProductIndex: outcome index out of range");
    lin = lin * space_size + o;
  }
  return lin;
}

/// Invokes fn on every m-tuple of outcome indices in lexicographic order.
template <typename F>
inline void for_each_product(std::size_t space_size, std::size_t m, F&& fn) {
  if (m == 0) throw Error("for_each_product: m must be >= 1");
  ProductIndex idx(m, 0);
  while (true) {
    fn(static_cast<const ProductIndex&>(idx));
    std::size_t j = m;
    while (j > 0) {
      --j;
      if (++idx[j] < space_size) break;
      idx[j] = 0;
      if (j == 0) return;
    }
  }
}

inline std::size_t product_space_size(std::size_t space_size, std::size_t m) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < m; ++i) n *= space_size;
  return n;
}

/// P(omega_1) * ... * P(omega_m) for an i.i.d. draw addressed by idx.
inline double product_prob(const Distribution& p, const ProductIndex& idx) {
  if (idx.empty()) throw Error("product_prob: empty product index");
  double prob = 1.0;
  for (std::size_t o : idx) {
    if (o >= p.size()) throw Error("product_prob: outcome index out of range");
    prob *= p.p(o);
  }
  return prob;
}

/// A statistic of a distribution together with how its reports map to values.
///
/// report_evaluator gives the quantity a matching loss drives its report to;
/// when a link is declared, the final property value is link(report).  Without
/// a link the report is the value itself.
struct Property {
  std::string name;
  std::size_t report_dim = 1;
  std::function<std::vector<double>(const Distribution&)> report_evaluator;
  std::function<double(const std::vector<double>&)> link;  // may be empty
  std::string linked_target;                               // set iff link is
  std::function<bool(const Distribution&)> domain;         // empty = everywhere

  bool in_domain(const Distribution& p) const { return !domain || domain(p); }

  std::vector<double> report(const Distribution& p) const {
    if (!report_evaluator) throw Error("Property: missing evaluator");
    std::vector<double> r = report_evaluator(p);
    if (r.size() != report_dim)
      throw Error("Property '" + name + "': evaluator dimension mismatch");
    return r;
  }

  /// Final property value: link(report) when a link is declared, else report.
  std::vector<double> value(const Distribution& p) const {
    std::vector<double> r = report(p);
    if (link) return {link(r)};
    return r;
  }
};

/// Loss over m joint observations, ell(report, omega_1..omega_m), with an
/// optional identification function V of the same shape.
struct MultiObsLoss {
  std::string name;
  std::size_t report_dim = 1;
  std::size_t obs_count = 1;
  std::vector<std::pair<double, double>> report_box;  // per report coordinate
  std::function<double(const std::vector<double>&, const ProductIndex&)> loss;
  std::function<std::vector<double>(const std::vector<double>&,
                                    const ProductIndex&)>
      ident;                                        // may be empty
  std::function<bool(const Distribution&)> domain;  // empty = everywhere

  bool in_domain(const Distribution& p) const { return !domain || domain(p); }
};

inline void check_report(const MultiObsLoss& loss, const std::vector<double>& r) {
  if (r.size() != loss.report_dim)
    throw Error("loss '" + loss.name + "': report dimension mismatch");
}

/// Exact expected loss under the i.i.d. product of p: the full sum over all
/// |Y|^m outcome tuples.
inline double expected_loss(const MultiObsLoss& loss, const std::vector<double>& r,
                            const Distribution& p) {
  check_report(loss, r);
  double total = 0.0;
  for_each_product(p.size(), loss.obs_count, [&](const ProductIndex& idx) {
    total += product_prob(p, idx) * loss.loss(r, idx);
  });
  return total;
}

/// Exact E_{p^m}[V(r, omega)].  Errors when the loss declares no V.
inline std::vector<double> expected_identification(const MultiObsLoss& loss,
                                                   const std::vector<double>& r,
                                                   const Distribution& p) {
  check_report(loss, r);
  if (!loss.ident)
    throw Error("loss '" + loss.name + "': no identification function declared");
  std::vector<double> total(loss.report_dim, 0.0);
  for_each_product(p.size(), loss.obs_count, [&](const ProductIndex& idx) {
    const double w = product_prob(p, idx);
    std::vector<double> v = loss.ident(r, idx);
    if (v.size() != loss.report_dim)
      throw Error("loss '" + loss.name + "': V dimension mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) total[i] += w * v[i];
  });
  return total;
}

/// All distributions with probabilities k_i/N, in lexicographic order of
/// (k_0, ..., k_{K-1}).  With interior set, only tuples with every k_i >= 1
/// (so every coordinate is at least 1/N).
inline std::vector<Distribution> simplex_grid(const SpacePtr& space, int resolution,
                                              bool interior = false) {
  if (!space) throw Error("simplex_grid: null outcome space");
  if (resolution < 1) throw Error("simplex_grid: resolution must be >= 1");
  const std::size_t K = space->size();
  std::vector<Distribution> out;
  std::vector<int> counts(K, 0);
  const int lo = interior ? 1 : 0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t coord, int left) {
    if (coord + 1 == K) {
      if (left < lo) return;
      counts[coord] = left;
      std::vector<double> probs(K);
      for (std::size_t i = 0; i < K; ++i)
        probs[i] = static_cast<double>(counts[i]) / resolution;
      out.emplace_back(space, std::move(probs));
      return;
    }
    for (int k = lo; k <= left - lo * static_cast<int>(K - coord - 1); ++k) {
      counts[coord] = k;
      rec(coord + 1, left - k);
    }
  };
  rec(0, resolution);
  return out;
}

}  // namespace elicit

#endif  // ELICIT_CORE_HPP
