#ifndef ELICIT_WITNESS_HPP
#define ELICIT_WITNESS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elicit/core.hpp"

namespace elicit {

/// Distributions found on one level set {p : Gamma(p) = r}.
struct LevelSetSample {
  std::string property_name;
  double r = 0.0;
  std::vector<Distribution> members;
};

struct SampleOptions {
  int scan_resolution = 0;  // 0 picks 10000 (|Y| = 2) or 200 (|Y| = 3)
  double level_tol = 1e-12;
};

namespace detail {

inline std::optional<double> scalar_value(const Property& prop,
                                          const Distribution& p) {
  if (!prop.in_domain(p)) return std::nullopt;
  std::vector<double> v = prop.value(p);
  if (v.size() != 1)
    throw Error("sample_level_set: property value must be scalar");
  return v[0];
}

/// Bisects f(t) = Gamma((1-t) pa + t pb) - r on a sign change until
/// |f| <= tol; returns the located distribution, or nothing if the segment
/// leaves the domain or refinement stalls.
inline std::optional<Distribution> bisect_segment(
    const Property& prop, const SpacePtr& space, const std::vector<double>& pa,
    const std::vector<double>& pb, double fa, double fb, double r, double tol) {
  auto point = [&](double t) {
    std::vector<double> probs(pa.size());
    for (std::size_t i = 0; i < probs.size(); ++i)
      probs[i] = (1.0 - t) * pa[i] + t * pb[i];
    return Distribution(space, probs);
  };
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    Distribution pm = point(mid);
    std::optional<double> v = scalar_value(prop, pm);
    if (!v) return std::nullopt;
    const double fm = *v - r;
    if (std::fabs(fm) <= tol) return pm;
    if ((fa < 0.0) != (fm < 0.0)) {
      hi = mid;
      fb = fm;
    } else {
      lo = mid;
      fa = fm;
    }
    if (hi - lo < 1e-17) break;
  }
  return std::nullopt;
}

}  // namespace detail

/// Scans a dense parameter family of the simplex (|Y| = 2 or 3) and bisects
/// every sign change of Gamma(p) - r down to |Gamma(p) - r| <= level_tol.
inline LevelSetSample sample_level_set(const Property& prop, double r,
                                       const SpacePtr& space,
                                       SampleOptions opts = {}) {
  if (!space) throw Error("sample_level_set: null outcome space");
  const std::size_t K = space->size();
  if (K != 2 && K != 3)
    throw Error("sample_level_set: only 2- or 3-outcome spaces supported");
  const int res =
      opts.scan_resolution > 0 ? opts.scan_resolution : (K == 2 ? 10000 : 200);
  const double tol = opts.level_tol;

  std::vector<std::vector<double>> found;
  auto scan_segmentwise = [&](const std::vector<std::vector<double>>& line) {
    std::vector<std::pair<std::vector<double>, double>> vals;
    for (const auto& probs : line) {
      Distribution p(space, probs);
      std::optional<double> v = detail::scalar_value(prop, p);
      if (!v) {
        vals.clear();
        continue;
      }
      const double f = *v - r;
      if (std::fabs(f) <= tol) {
        found.push_back(p.probs());
        vals.clear();
        vals.emplace_back(probs, f);
        continue;
      }
      if (!vals.empty()) {
        const auto& [pa, fa] = vals.back();
        if ((fa < 0.0) != (f < 0.0)) {
          std::optional<Distribution> hit =
              detail::bisect_segment(prop, space, pa, probs, fa, f, r, tol);
          if (hit) found.push_back(hit->probs());
        }
      }
      vals.clear();
      vals.emplace_back(probs, f);
    }
  };

  if (K == 2) {
    std::vector<std::vector<double>> line;
    line.reserve(res + 1);
    for (int i = 0; i <= res; ++i) {
      const double t = static_cast<double>(i) / res;
      line.push_back({1.0 - t, t});
    }
    scan_segmentwise(line);
  } else {
    // Rows (fixed first coordinate) and columns (fixed second coordinate).
    for (int k0 = 0; k0 <= res; ++k0) {
      std::vector<std::vector<double>> line;
      for (int k1 = 0; k1 + k0 <= res; ++k1)
        line.push_back({static_cast<double>(k0) / res,
                        static_cast<double>(k1) / res,
                        static_cast<double>(res - k0 - k1) / res});
      scan_segmentwise(line);
    }
    for (int k1 = 0; k1 <= res; ++k1) {
      std::vector<std::vector<double>> line;
      for (int k0 = 0; k0 + k1 <= res; ++k0)
        line.push_back({static_cast<double>(k0) / res,
                        static_cast<double>(k1) / res,
                        static_cast<double>(res - k0 - k1) / res});
      scan_segmentwise(line);
    }
  }

  // Dedupe within 1e-9 in the max norm, keeping first-found order.
  std::vector<std::vector<double>> unique;
  for (const auto& q : found) {
    bool dup = false;
    for (const auto& u : unique) {
      double diff = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i)
        diff = std::max(diff, std::fabs(q[i] - u[i]));
      if (diff <= 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(q);
  }
  if (unique.empty())
    throw Error("sample_level_set: value " + std::to_string(r) +
                " not attained by property '" + prop.name + "'");

  LevelSetSample out;
  out.property_name = prop.name;
  out.r = r;
  for (auto& q : unique) out.members.emplace_back(space, std::move(q));
  return out;
}

/// The i.i.d. product p^m as a vector over outcome tuples, lexicographic with
/// the first observation most significant.
inline std::vector<double> embed_product(const Distribution& p, std::size_t m) {
  if (m == 0) throw Error("embed_product: m must be >= 1");
  std::vector<double> out;
  out.reserve(product_space_size(p.size(), m));
  for_each_product(p.size(), m, [&](const ProductIndex& idx) {
    out.push_back(product_prob(p, idx));
  });
  return out;
}

/// Certificate that two level sets share a mixture in the m-fold product
/// space: sum_i lambda1_i p1i^m = sum_j lambda2_j p2j^m.
struct Witness {
  std::size_t m = 1;
  double r1 = 0.0, r2 = 0.0;
  std::vector<Distribution> group1, group2;
  std::vector<double> lambda1, lambda2;
  double residual = 0.0;
};

struct WitnessResult {
  bool feasible = false;
  std::optional<Witness> witness;
  std::string note;  // "no_witness_in_sample" when infeasible
};

struct WitnessOptions {
  double slab = 1e-9;       // equality constraints relaxed to +/- slab
  double pivot_tol = 1e-11;
  std::size_t max_iters = 50000;
};

namespace detail {

/// Phase-1 simplex with Bland's rule on a tableau whose initial basis is
/// given per row.  Minimizes the total mass on artificial columns.
struct Phase1Result {
  double objective = 0.0;
  std::vector<double> x;
};

inline Phase1Result phase1_simplex(std::vector<std::vector<double>> T,
                                   std::vector<double> rhs,
                                   std::vector<std::size_t> basis,
                                   const std::vector<char>& artificial,
                                   double pivot_tol, std::size_t max_iters) {
  const std::size_t R = T.size();
  const std::size_t C = artificial.size();
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    // Reduced costs d_j = c_j - sum_r c_{basis_r} T[r][j], c = 1 on artificials.
    std::size_t enter = C;
    for (std::size_t j = 0; j < C && enter == C; ++j) {
      double d = artificial[j] ? 1.0 : 0.0;
      for (std::size_t rr = 0; rr < R; ++rr)
        if (artificial[basis[rr]]) d -= T[rr][j];
      if (d < -pivot_tol) enter = j;  // Bland: smallest improving index
    }
    if (enter == C) break;
    std::size_t leave = R;
    double best_ratio = 0.0;
    for (std::size_t rr = 0; rr < R; ++rr) {
      if (T[rr][enter] > pivot_tol) {
        const double ratio = rhs[rr] / T[rr][enter];
        if (leave == R || ratio < best_ratio - 1e-15 ||
            (ratio <= best_ratio + 1e-15 && basis[rr] < basis[leave])) {
          leave = rr;
          best_ratio = ratio;
        }
      }
    }
    if (leave == R)
      throw Error("witness_search: unbounded phase-1 direction");
    const double piv = T[leave][enter];
    for (std::size_t j = 0; j < C; ++j) T[leave][j] /= piv;
    rhs[leave] /= piv;
    for (std::size_t rr = 0; rr < R; ++rr) {
      if (rr == leave) continue;
      const double f = T[rr][enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < C; ++j) T[rr][j] -= f * T[leave][j];
      rhs[rr] -= f * rhs[leave];
    }
    basis[leave] = enter;
  }
  Phase1Result out;
  out.x.assign(C, 0.0);
  for (std::size_t rr = 0; rr < R; ++rr) {
    out.x[basis[rr]] = std::max(rhs[rr], 0.0);
    if (artificial[basis[rr]]) out.objective += std::max(rhs[rr], 0.0);
  }
  return out;
}

}  // namespace detail

/// Recomputes both mixtures of a witness from scratch and returns the
/// infinity-norm difference over all outcome tuples.
inline double verify_witness(const Witness& w) {
  if (w.group1.size() != w.lambda1.size() ||
      w.group2.size() != w.lambda2.size())
    throw Error("verify_witness: member/weight count mismatch");
  if (w.group1.empty() || w.group2.empty())
    throw Error("verify_witness: empty group");
  const std::size_t dim =
      product_space_size(w.group1.front().size(), w.m);
  std::vector<double> mix1(dim, 0.0), mix2(dim, 0.0);
  for (std::size_t i = 0; i < w.group1.size(); ++i) {
    std::vector<double> v = embed_product(w.group1[i], w.m);
    for (std::size_t c = 0; c < dim; ++c) mix1[c] += w.lambda1[i] * v[c];
  }
  for (std::size_t j = 0; j < w.group2.size(); ++j) {
    std::vector<double> v = embed_product(w.group2[j], w.m);
    for (std::size_t c = 0; c < dim; ++c) mix2[c] += w.lambda2[j] * v[c];
  }
  double diff = 0.0;
  for (std::size_t c = 0; c < dim; ++c)
    diff = std::max(diff, std::fabs(mix1[c] - mix2[c]));
  return diff;
}

/// A witness certifies only if the weights are a proper convex combination
/// (sums within 1e-9 of 1, no negative weights) and the recomputed residual
/// is at most 1e-7.
inline bool witness_valid(const Witness& w) {
  double s1 = 0.0, s2 = 0.0;
  for (double l : w.lambda1) {
    if (l < -1e-12) return false;
    s1 += l;
  }
  for (double l : w.lambda2) {
    if (l < -1e-12) return false;
    s2 += l;
  }
  if (std::fabs(s1 - 1.0) > 1e-9 || std::fabs(s2 - 1.0) > 1e-9) return false;
  return verify_witness(w) <= 1e-7;
}

/// LP feasibility search for mixture weights over two level-set samples.
/// Equality rows are relaxed to +/- slab; one redundant tuple coordinate is
/// dropped (embedded vectors sum to 1).  Infeasibility is reported as
/// "no_witness_in_sample": it rules out witnesses within these samples only.
inline WitnessResult witness_search(const LevelSetSample& A,
                                    const LevelSetSample& B, std::size_t m,
                                    WitnessOptions opts = {}) {
  if (m == 0) throw Error("witness_search: m must be >= 1");
  if (A.members.empty() || B.members.empty())
    throw Error("witness_search: empty level-set sample");
  if (A.r == B.r)
    throw Error("witness_search: level values must differ");
  const std::size_t K = A.members.front().size();
  for (const auto& p : A.members)
    if (p.size() != K) throw Error("witness_search: mixed outcome spaces");
  for (const auto& p : B.members)
    if (p.size() != K) throw Error("witness_search: mixed outcome spaces");

  const std::size_t k1 = A.members.size(), k2 = B.members.size();
  const std::size_t dim = product_space_size(K, m);
  std::vector<std::vector<double>> V1, V2;
  for (const auto& p : A.members) V1.push_back(embed_product(p, m));
  for (const auto& p : B.members) V2.push_back(embed_product(p, m));

  // Columns: lambda1, lambda2, one slack per slab row, artificials for the
  // two weight-sum rows.  Rows: 2(dim-1) slab inequalities + 2 sum rows.
  const std::size_t n = k1 + k2;
  const std::size_t slab_rows = 2 * (dim - 1);
  const std::size_t R = slab_rows + 2;
  const std::size_t C = n + slab_rows + 2;
  std::vector<std::vector<double>> T(R, std::vector<double>(C, 0.0));
  std::vector<double> rhs(R, 0.0);
  std::vector<std::size_t> basis(R);
  std::vector<char> artificial(C, 0);

  for (std::size_t c = 0; c + 1 < dim; ++c) {
    const std::size_t rp = 2 * c, rn = 2 * c + 1;
    for (std::size_t i = 0; i < k1; ++i) {
      T[rp][i] = V1[i][c];
      T[rn][i] = -V1[i][c];
    }
    for (std::size_t j = 0; j < k2; ++j) {
      T[rp][n - k2 + j] = -V2[j][c];
      T[rn][n - k2 + j] = V2[j][c];
    }
    T[rp][n + rp] = 1.0;
    T[rn][n + rn] = 1.0;
    rhs[rp] = rhs[rn] = opts.slab;
    basis[rp] = n + rp;
    basis[rn] = n + rn;
  }
  for (std::size_t i = 0; i < k1; ++i) T[slab_rows][i] = 1.0;
  for (std::size_t j = 0; j < k2; ++j) T[slab_rows + 1][k1 + j] = 1.0;
  rhs[slab_rows] = rhs[slab_rows + 1] = 1.0;
  T[slab_rows][C - 2] = 1.0;
  T[slab_rows + 1][C - 1] = 1.0;
  basis[slab_rows] = C - 2;
  basis[slab_rows + 1] = C - 1;
  artificial[C - 2] = artificial[C - 1] = 1;

  detail::Phase1Result sol = detail::phase1_simplex(
      std::move(T), std::move(rhs), std::move(basis), artificial,
      opts.pivot_tol, opts.max_iters);

  WitnessResult out;
  if (sol.objective > 1e-9) {
    out.feasible = false;
    out.note = "no_witness_in_sample";
    return out;
  }

  Witness w;
  w.m = m;
  w.r1 = A.r;
  w.r2 = B.r;
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < k1; ++i) {
    const double l = sol.x[i];
    if (l > 1e-12) {
      w.group1.push_back(A.members[i]);
      w.lambda1.push_back(l);
      s1 += l;
    }
  }
  for (std::size_t j = 0; j < k2; ++j) {
    const double l = sol.x[k1 + j];
    if (l > 1e-12) {
      w.group2.push_back(B.members[j]);
      w.lambda2.push_back(l);
      s2 += l;
    }
  }
  if (w.group1.empty() || w.group2.empty()) {
    out.feasible = false;
    out.note = "no_witness_in_sample";
    return out;
  }
  for (double& l : w.lambda1) l /= s1;
  for (double& l : w.lambda2) l /= s2;
  w.residual = verify_witness(w);
  if (w.residual > 1e-7) {
    out.feasible = false;
    out.note = "no_witness_in_sample";
    return out;
  }
  out.feasible = true;
  out.witness = std::move(w);
  return out;
}

}  // namespace elicit

#endif  // ELICIT_WITNESS_HPP
