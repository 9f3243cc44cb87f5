#ifndef ELICIT_VORONOI_HPP
#define ELICIT_VORONOI_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "elicit/core.hpp"
#include "elicit/witness.hpp"

namespace elicit {

/// A finite family of sites in the product-embedding space R^(K^m).  The
/// optional stat vector records the direction a band family thresholds.
struct SiteSet {
  std::size_t m = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> sites;
  std::vector<double> stat;  // empty unless the family came from thresholds

  SiteSet(std::size_t m_, std::vector<std::string> labels_,
          std::vector<std::vector<double>> sites_,
          std::vector<double> stat_ = {})
      : m(m_),
        labels(std::move(labels_)),
        sites(std::move(sites_)),
        stat(std::move(stat_)) {
    if (m == 0) throw Error("SiteSet: observation count must be >= 1");
    if (sites.empty()) throw Error("SiteSet: at least one site required");
    if (labels.size() != sites.size())
      throw Error("SiteSet: label count does not match site count");
    const std::size_t dim = sites.front().size();
    if (dim == 0) throw Error("SiteSet: sites must be non-empty vectors");
    for (const auto& s : sites) {
      if (s.size() != dim)
        throw Error("SiteSet: sites must share one dimension");
      for (double v : s)
        if (!std::isfinite(v)) throw Error("SiteSet: non-finite site entry");
    }
    for (std::size_t i = 0; i < sites.size(); ++i)
      for (std::size_t j = i + 1; j < sites.size(); ++j) {
        double diff = 0.0;
        for (std::size_t c = 0; c < dim; ++c)
          diff = std::max(diff, std::fabs(sites[i][c] - sites[j][c]));
        if (diff == 0.0)
          throw Error("SiteSet: sites '" + labels[i] + "' and '" + labels[j] +
                      "' coincide");
      }
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j])
          throw Error("SiteSet: duplicate label '" + labels[i] + "'");
  }

  std::size_t dim() const { return sites.front().size(); }
  std::size_t count() const { return sites.size(); }
};

/// Scalar loss whose minimizer over reports {0..count-1} picks the site
/// nearest to the embedded distribution: l(r, w) = |x_r|^2 - 2 x_r[w].
/// The report is an index; round before indexing.
inline MultiObsLoss site_loss(const SiteSet& ss, const SpacePtr& space) {
  if (!space) throw Error("site_loss: null outcome space");
  const std::size_t expect = product_space_size(space->size(), ss.m);
  if (ss.dim() != expect)
    throw Error("site_loss: site dimension " + std::to_string(ss.dim()) +
                " does not match |outcomes|^m = " + std::to_string(expect));
  MultiObsLoss loss;
  loss.name = "site_" + std::to_string(ss.count());
  loss.report_dim = 1;
  loss.obs_count = ss.m;
  loss.report_box = {{0.0, static_cast<double>(ss.count() - 1)}};
  const std::size_t K = space->size();
  const std::size_t m = ss.m;
  const std::size_t count = ss.count();
  std::vector<double> sqnorm(count, 0.0);
  for (std::size_t s = 0; s < count; ++s)
    for (double v : ss.sites[s]) sqnorm[s] += v * v;
  auto sites = std::make_shared<std::vector<std::vector<double>>>(ss.sites);
  auto norms = std::make_shared<std::vector<double>>(std::move(sqnorm));
  loss.loss = [sites, norms, K, m, count](const std::vector<double>& r,
                                          const ProductIndex& idx) {
    const long long ri = std::llround(r[0]);
    if (ri < 0 || ri >= static_cast<long long>(count))
      throw Error("site loss: report index out of range");
    const std::size_t s = static_cast<std::size_t>(ri);
    return (*norms)[s] - 2.0 * (*sites)[s][linear_index(idx, K)];
  };
  return loss;
}

/// Indices of the sites nearest to p^m in Euclidean distance; ties within
/// 1e-10 of the minimum are all reported, in site order.
inline std::vector<std::size_t> assign_cell(const SiteSet& ss,
                                            const Distribution& p) {
  const std::vector<double> x = embed_product(p, ss.m);
  if (x.size() != ss.dim())
    throw Error("assign_cell: embedded dimension does not match sites");
  std::vector<double> dist(ss.count(), 0.0);
  for (std::size_t s = 0; s < ss.count(); ++s) {
    double d2 = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double diff = x[c] - ss.sites[s][c];
      d2 += diff * diff;
    }
    dist[s] = std::sqrt(d2);
  }
  const double dmin = *std::min_element(dist.begin(), dist.end());
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < ss.count(); ++s)
    if (dist[s] <= dmin + 1e-10) out.push_back(s);
  return out;
}

/// Sites c_r u along a direction u whose Voronoi boundaries hit the
/// thresholds t_1 < ... < t_{R-1} of the statistic <x, u>: the bisector of
/// consecutive sites c_r u, c_{r+1} u is <x, u> = (c_r + c_{r+1}) |u|^2 / 2,
/// so c_{r+1} = 2 t_r / |u|^2 - c_r once c_1 is chosen.  c_1 is pinned to
/// the midpoint of the interval keeping the sequence consistent with the
/// ordering constraints c_r < t_r / |u|^2 < c_{r+1}.
inline SiteSet band_sites(const std::vector<double>& u,
                          const std::vector<double>& thresholds, std::size_t m,
                          std::vector<std::string> labels = {}) {
  if (u.empty()) throw Error("band_sites: empty direction");
  double U = 0.0;
  for (double v : u) {
    if (!std::isfinite(v)) throw Error("band_sites: non-finite direction entry");
    U += v * v;
  }
  if (U <= 0.0) throw Error("band_sites: direction must be non-zero");
  if (thresholds.empty()) throw Error("band_sites: at least one threshold");
  for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
    if (!(thresholds[i] < thresholds[i + 1]))
      throw Error("band_sites: thresholds must be strictly increasing");

  const std::size_t R = thresholds.size() + 1;
  if (labels.empty())
    for (std::size_t r = 1; r <= R; ++r)
      labels.push_back("band" + std::to_string(r));
  if (labels.size() != R)
    throw Error("band_sites: need one label per band (" + std::to_string(R) +
                ")");

  // c_r = a_r + s_r c_1 with s_r alternating sign; each ordering constraint
  // becomes a one-sided bound on c_1.
  std::vector<double> a(R, 0.0), s(R, 1.0);
  for (std::size_t r = 1; r < R; ++r) {
    a[r] = 2.0 * thresholds[r - 1] / U - a[r - 1];
    s[r] = -s[r - 1];
  }
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  std::string lo_from, hi_from;
  for (std::size_t r = 0; r + 1 < R; ++r) {
    const double bound = thresholds[r] / U;
    // c_r < bound and c_{r+1} > bound
    for (int side = 0; side < 2; ++side) {
      const std::size_t q = r + side;
      const bool upper = (side == 0) ? (s[q] > 0) : (s[q] < 0);
      const double limit = (bound - a[q]) / s[q];
      char buf[96];
      std::snprintf(buf, sizeof(buf), "c%zu %s t%zu/|u|^2", q + 1,
                    side == 0 ? "<" : ">", r + 1);
      if (upper) {
        if (limit < hi) {
          hi = limit;
          hi_from = buf;
        }
      } else {
        if (limit > lo) {
          lo = limit;
          lo_from = buf;
        }
      }
    }
  }
  if (!(lo < hi))
    throw Error("band_sites: no consistent first coefficient; constraints '" +
                lo_from + "' and '" + hi_from + "' leave an empty interval");
  const double c1 = 0.5 * (lo + hi);

  std::vector<std::vector<double>> sites;
  for (std::size_t r = 0; r < R; ++r) {
    const double cr = a[r] + s[r] * c1;
    std::vector<double> site(u.size());
    for (std::size_t c = 0; c < u.size(); ++c) site[c] = cr * u[c];
    sites.push_back(std::move(site));
  }
  return SiteSet(m, std::move(labels), std::move(sites), u);
}

struct CellRow {
  std::vector<double> probs;
  double stat = 0.0;
  bool has_stat = false;
  std::string labels;  // nearest-site labels joined with ';'
};

/// Tabulates the cell assignment over the resolution-N simplex grid.  When
/// the family carries a stat direction the row also reports <p^m, u>.
inline std::vector<CellRow> cell_map(const SiteSet& ss, const SpacePtr& space,
                                     int resolution) {
  if (!space) throw Error("cell_map: null outcome space");
  std::vector<CellRow> rows;
  for (const Distribution& p : simplex_grid(space, resolution)) {
    CellRow row;
    for (std::size_t o = 0; o < p.size(); ++o) row.probs.push_back(p.p(o));
    if (!ss.stat.empty()) {
      const std::vector<double> x = embed_product(p, ss.m);
      if (x.size() != ss.stat.size())
        throw Error("cell_map: stat dimension does not match embedding");
      double dot = 0.0;
      for (std::size_t c = 0; c < x.size(); ++c) dot += x[c] * ss.stat[c];
      row.stat = dot;
      row.has_stat = true;
    }
    std::string joined;
    for (std::size_t s : assign_cell(ss, p)) {
      if (!joined.empty()) joined += ";";
      joined += ss.labels[s];
    }
    row.labels = std::move(joined);
    rows.push_back(std::move(row));
  }
  return rows;
}

/// m = 2 helper tables for band constructions over a K-outcome space.
/// tuple_indicator_diag: 1 on (i, i) pairs; pair_half_sq_diff: (y1-y2)^2/2.
inline std::vector<double> tuple_indicator_diag(std::size_t K) {
  std::vector<double> t(K * K, 0.0);
  for (std::size_t i = 0; i < K; ++i) t[i * K + i] = 1.0;
  return t;
}

inline std::vector<double> pair_half_sq_diff(const std::vector<double>& values) {
  const std::size_t K = values.size();
  std::vector<double> t(K * K, 0.0);
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) {
      const double d = values[i] - values[j];
      t[i * K + j] = 0.5 * d * d;
    }
  return t;
}

}  // namespace elicit

#endif  // ELICIT_VORONOI_HPP
