#ifndef ELICIT_VERIFIER_HPP
#define ELICIT_VERIFIER_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elicit/catalog.hpp"
#include "elicit/core.hpp"
#include "elicit/witness.hpp"

namespace elicit {

struct MinimizeOptions {
  int coarse_points = 512;   // per-axis scan before refinement
  double width_tol = 1e-8;   // final bracket width
  int sweeps = 20;           // coordinate alternation rounds for d = 2
  double flat_tol = 1e-13;   // objective spread below this is non-unique
};

namespace detail {

/// Expected loss as a plain function of the report, with the tuple
/// probabilities precomputed once for p.
inline std::function<double(const std::vector<double>&)> compiled_expected_loss(
    const MultiObsLoss& loss, const Distribution& p) {
  auto tuples = std::make_shared<std::vector<ProductIndex>>();
  auto probs = std::make_shared<std::vector<double>>();
  for_each_product(p.size(), loss.obs_count, [&](const ProductIndex& idx) {
    const double w = product_prob(p, idx);
    if (w == 0.0) return;
    tuples->push_back(idx);
    probs->push_back(w);
  });
  auto fn = loss.loss;
  return [tuples, probs, fn](const std::vector<double>& r) {
    double total = 0.0;
    for (std::size_t i = 0; i < tuples->size(); ++i)
      total += (*probs)[i] * fn(r, (*tuples)[i]);
    return total;
  };
}

/// Coarse scan plus golden-section refinement of a 1-d function on [lo, hi].
/// flat_out, when given, receives the coarse objective spread.
inline double golden_minimize(const std::function<double(double)>& f, double lo,
                              double hi, const MinimizeOptions& opts,
                              double* flat_out) {
  const int M = std::max(opts.coarse_points, 2);
  int best = 0;
  double fbest = 0.0, fmin = 0.0, fmax = 0.0;
  for (int i = 0; i < M; ++i) {
    const double x = lo + (hi - lo) * i / (M - 1);
    const double fx = f(x);
    if (i == 0 || fx < fbest) {
      best = i;
      fbest = fx;
    }
    fmin = (i == 0) ? fx : std::min(fmin, fx);
    fmax = (i == 0) ? fx : std::max(fmax, fx);
  }
  if (flat_out) *flat_out = fmax - fmin;
  double a = lo + (hi - lo) * std::max(0, best - 1) / (M - 1);
  double b = lo + (hi - lo) * std::min(M - 1, best + 1) / (M - 1);
  const double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > opts.width_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

/// Locates the report minimizing the exact expected loss over the declared
/// report box.  d = 1 uses a coarse scan plus golden-section refinement;
/// d = 2 alternates golden-section line searches per coordinate.  A flat
/// objective (coarse spread under flat_tol) raises a non-unique error.
inline std::vector<double> minimize_report(const MultiObsLoss& loss,
                                           const Distribution& p,
                                           MinimizeOptions opts = {}) {
  if (loss.report_dim < 1 || loss.report_dim > 2)
    throw Error("minimize_report: only report dimensions 1 and 2 supported");
  if (loss.report_box.size() != loss.report_dim)
    throw Error("minimize_report: report box does not match dimension");
  auto objective = detail::compiled_expected_loss(loss, p);

  if (loss.report_dim == 1) {
    const auto [lo, hi] = loss.report_box[0];
    double spread = 0.0;
    const double x = detail::golden_minimize(
        [&](double r) { return objective({r}); }, lo, hi, opts, &spread);
    if (spread < opts.flat_tol)
      throw Error("minimize_report: flat objective, minimizer non-unique");
    return {x};
  }

  // Flatness check over a coarse product grid before alternating.
  {
    const int G = 48;
    double fmin = 0.0, fmax = 0.0;
    bool first = true;
    for (int i = 0; i < G; ++i) {
      for (int j = 0; j < G; ++j) {
        const double r0 = loss.report_box[0].first +
                          (loss.report_box[0].second - loss.report_box[0].first) *
                              i / (G - 1);
        const double r1 = loss.report_box[1].first +
                          (loss.report_box[1].second - loss.report_box[1].first) *
                              j / (G - 1);
        const double fx = objective({r0, r1});
        fmin = first ? fx : std::min(fmin, fx);
        fmax = first ? fx : std::max(fmax, fx);
        first = false;
      }
    }
    if (fmax - fmin < opts.flat_tol)
      throw Error("minimize_report: flat objective, minimizer non-unique");
  }

  std::vector<double> r = {
      0.5 * (loss.report_box[0].first + loss.report_box[0].second),
      0.5 * (loss.report_box[1].first + loss.report_box[1].second)};
  for (int sweep = 0; sweep < std::max(opts.sweeps, 1); ++sweep) {
    for (std::size_t c = 0; c < 2; ++c) {
      const auto [lo, hi] = loss.report_box[c];
      r[c] = detail::golden_minimize(
          [&](double x) {
            std::vector<double> probe = r;
            probe[c] = x;
            return objective(probe);
          },
          lo, hi, opts, nullptr);
    }
  }
  return r;
}

/// Outcome of a grid verification pass.  "verified (grid)" is deliberate
/// wording: the check samples a finite grid and proves nothing beyond it.
struct VerificationReport {
  std::string loss_name;
  std::string property_name;
  int resolution = 0;
  bool interior = false;
  double tolerance = 0.0;
  double worst_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  bool pass = false;
  std::string note;
};

/// Core verification loop over an explicit list of distributions; the
/// aggregate (worst error over the set) does not depend on their order.
inline VerificationReport verify_elicits(const MultiObsLoss& loss,
                                         const Property& prop,
                                         const std::vector<Distribution>& grid,
                                         double tol,
                                         MinimizeOptions opts = {}) {
  if (prop.report_dim != loss.report_dim)
    throw Error("verify_elicits: property and loss report dimensions differ");
  VerificationReport rep;
  rep.loss_name = loss.name;
  rep.property_name = prop.name;
  rep.tolerance = tol;
  for (const Distribution& p : grid) {
    if (!prop.in_domain(p) || !loss.in_domain(p)) {
      ++rep.skipped;
      continue;
    }
    std::vector<double> rhat = minimize_report(loss, p, opts);
    std::vector<double> got;
    if (prop.link)
      got = {prop.link(rhat)};
    else
      got = rhat;
    const std::vector<double> want = prop.value(p);
    if (got.size() != want.size())
      throw Error("verify_elicits: value dimension mismatch");
    double err = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i)
      err = std::max(err, std::fabs(got[i] - want[i]));
    rep.worst_error = std::max(rep.worst_error, err);
    ++rep.checked;
  }
  rep.pass = rep.checked > 0 && rep.worst_error <= tol;
  rep.note = rep.pass ? "verified (grid)" : "failed (grid)";
  return rep;
}

/// Grid-driven entry point: checks every simplex grid distribution, skipping
/// (and counting) points outside the property or loss domain.
inline VerificationReport verify_elicits(const MultiObsLoss& loss,
                                         const Property& prop,
                                         const SpacePtr& space, int resolution,
                                         double tol, bool interior = false,
                                         MinimizeOptions opts = {}) {
  VerificationReport rep = verify_elicits(
      loss, prop, simplex_grid(space, resolution, interior), tol, opts);
  rep.resolution = resolution;
  rep.interior = interior;
  return rep;
}

struct IdentificationReport {
  std::string loss_name;
  std::string property_name;
  double tolerance = 0.0;
  double worst_at_report = 0.0;  // max |E[V]| at the property's report
  double min_at_offset = 0.0;    // min |E[V]| at reports nudged 10 tol away
  std::size_t checked = 0;
  std::size_t skipped = 0;
  bool pass = false;
};

/// Checks E[V] = 0 (within tol) exactly at the property's report, and that a
/// 10 tol offset in any report coordinate moves |E[V]| above tol.
inline IdentificationReport check_identification(const MultiObsLoss& loss,
                                                 const Property& prop,
                                                 const SpacePtr& space,
                                                 int resolution, double tol,
                                                 bool interior = false) {
  if (prop.report_dim != loss.report_dim)
    throw Error("check_identification: report dimensions differ");
  if (!loss.ident)
    throw Error("check_identification: loss declares no identification function");
  IdentificationReport rep;
  rep.loss_name = loss.name;
  rep.property_name = prop.name;
  rep.tolerance = tol;
  rep.min_at_offset = std::numeric_limits<double>::infinity();
  for (const Distribution& p : simplex_grid(space, resolution, interior)) {
    if (!prop.in_domain(p) || !loss.in_domain(p)) {
      ++rep.skipped;
      continue;
    }
    const std::vector<double> rstar = prop.report(p);
    std::vector<double> ev = expected_identification(loss, rstar, p);
    for (double v : ev)
      rep.worst_at_report = std::max(rep.worst_at_report, std::fabs(v));
    for (std::size_t c = 0; c < rstar.size(); ++c) {
      std::vector<double> roff = rstar;
      roff[c] += 10.0 * tol;
      std::vector<double> evo = expected_identification(loss, roff, p);
      double norm = 0.0;
      for (double v : evo) norm = std::max(norm, std::fabs(v));
      rep.min_at_offset = std::min(rep.min_at_offset, norm);
    }
    ++rep.checked;
  }
  rep.pass = rep.checked > 0 && rep.worst_at_report <= tol &&
             rep.min_at_offset > tol;
  return rep;
}

/// One cell of an elicitability frontier scan.
struct FrontierCell {
  int d = 0;
  int m = 0;
  std::string status;    // verified | refuted | unknown
  std::string evidence;  // report summary, witness summary, or a note
};

struct FrontierOptions {
  int resolution = 10;
  double tol = 1e-3;
  int level_scan = 0;  // 0 = sample_level_set default
};

namespace detail {

struct CellConstruction {
  MultiObsLoss loss;
  Property prop;
  bool interior = false;
};

inline std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// d = 2 loss eliciting (E[Y], E[Y^2]) with one observation, linked down to a
/// scalar statistic of the pair.
inline CellConstruction moment_pair_construction(
    const std::string& prop_name, const SpacePtr& space,
    std::function<double(double, double)> combine, bool interior,
    std::function<bool(const Distribution&)> domain) {
  double vlo = space->value(0), vhi = space->value(0);
  for (double v : space->values()) {
    vlo = std::min(vlo, v);
    vhi = std::max(vhi, v);
  }
  double slo = vlo * vlo, shi = vlo * vlo;
  for (double v : space->values()) {
    slo = std::min(slo, v * v);
    shi = std::max(shi, v * v);
  }
  const double pad1 = 0.25 * (vhi - vlo) + 1e-3;
  const double pad2 = 0.25 * (shi - slo) + 1e-3;
  MultiObsLoss loss;
  loss.name = prop_name + "_moment_pair";
  loss.report_dim = 2;
  loss.obs_count = 1;
  loss.report_box = {{vlo - pad1, vhi + pad1}, {slo - pad2, shi + pad2}};
  const std::vector<double> vals = space->values();
  loss.loss = [vals](const std::vector<double>& r, const ProductIndex& idx) {
    const double y = vals[idx[0]];
    const double d1 = r[0] - y, d2 = r[1] - y * y;
    return d1 * d1 + d2 * d2;
  };
  loss.ident = [vals](const std::vector<double>& r, const ProductIndex& idx) {
    const double y = vals[idx[0]];
    return std::vector<double>{r[0] - y, r[1] - y * y};
  };
  Property prop;
  prop.name = prop_name;
  prop.report_dim = 2;
  prop.report_evaluator = [](const Distribution& p) {
    return std::vector<double>{dist_mean(p), dist_raw_moment(p, 2)};
  };
  prop.link = [combine](const std::vector<double>& r) {
    return combine(r[0], r[1]);
  };
  prop.linked_target = prop_name;
  prop.domain = std::move(domain);
  return {std::move(loss), std::move(prop), interior};
}

/// Full-distribution construction over the first K-1 probabilities,
/// linked down to a scalar property of p.  Only usable when K - 1 <= 2.
inline CellConstruction distribution_construction(
    const std::string& prop_name, const SpacePtr& space,
    std::function<double(const std::vector<double>&)> of_probs, bool interior,
    std::function<bool(const Distribution&)> domain) {
  const std::size_t K = space->size();
  const std::size_t d = K - 1;
  MultiObsLoss loss;
  loss.name = prop_name + "_scoring";
  loss.report_dim = d;
  loss.obs_count = 1;
  for (std::size_t c = 0; c < d; ++c) loss.report_box.push_back({-0.1, 1.1});
  loss.loss = [d](const std::vector<double>& r, const ProductIndex& idx) {
    double total = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double diff = r[c] - (idx[0] == c ? 1.0 : 0.0);
      total += diff * diff;
    }
    return total;
  };
  loss.ident = [d](const std::vector<double>& r, const ProductIndex& idx) {
    std::vector<double> v(d);
    for (std::size_t c = 0; c < d; ++c)
      v[c] = r[c] - (idx[0] == c ? 1.0 : 0.0);
    return v;
  };
  Property prop;
  prop.name = prop_name;
  prop.report_dim = d;
  prop.report_evaluator = [d](const Distribution& p) {
    std::vector<double> r(d);
    for (std::size_t c = 0; c < d; ++c) r[c] = p.p(c);
    return r;
  };
  prop.link = [of_probs](const std::vector<double>& r) {
    std::vector<double> probs(r.size() + 1);
    double sum = 0.0;
    for (std::size_t c = 0; c < r.size(); ++c) {
      probs[c] = r[c];
      sum += r[c];
    }
    probs[r.size()] = 1.0 - sum;
    return of_probs(probs);
  };
  prop.linked_target = prop_name;
  prop.domain = std::move(domain);
  return {std::move(loss), std::move(prop), interior};
}

struct FrontierProfile {
  // Cells where the source analysis asserts non-elicitability.
  std::vector<std::pair<int, int>> crosses;  // (d, m)
  // Concrete loss constructions per cell.
  std::function<std::optional<CellConstruction>(int d, int m)> construction;
  // Property used for level-set sampling in refutation attempts.
  Property scalar_prop;
  bool interior_scan = false;
};

inline FrontierProfile frontier_profile(const std::string& name,
                                        const SpacePtr& space, int max_d,
                                        int max_m) {
  const std::size_t K = space->size();
  FrontierProfile prof;
  int suffix = 0;

  auto own_loss_cell = [space](const std::string& loss_name,
                               const std::string& prop_name,
                               bool interior) -> CellConstruction {
    return {named_loss(loss_name, *space), named_property(prop_name), interior};
  };

  if (name == "mean") {
    prof.scalar_prop = named_property("mean");
    prof.construction = [own_loss_cell](int d, int m)
        -> std::optional<CellConstruction> {
      if (d == 1 && m == 1) return own_loss_cell("mean1", "mean", false);
      return std::nullopt;
    };
  } else if (name == "variance" || name == "dispersion" || name == "sharpe" ||
             name == "central_moment2") {
    const std::string canonical = (name == "central_moment2") ? "variance" : name;
    prof.crosses = {{1, 1}};
    prof.scalar_prop = named_property(canonical);
    prof.interior_scan = (canonical != "variance");
    const bool interior = prof.interior_scan;
    prof.construction = [canonical, space, own_loss_cell, interior](
                            int d, int m) -> std::optional<CellConstruction> {
      if (d == 1 && m == 2)
        return own_loss_cell(canonical == "variance" ? "variance2"
                             : canonical == "dispersion" ? "dispersion2"
                                                         : "sharpe2",
                             canonical, interior);
      if (d == 2 && m == 1) {
        if (canonical == "variance")
          return moment_pair_construction(
              canonical, space,
              [](double m1, double m2) { return m2 - m1 * m1; }, false, {});
        if (canonical == "dispersion")
          return moment_pair_construction(
              canonical, space,
              [](double m1, double m2) { return (m2 - m1 * m1) / m1; }, true,
              [](const Distribution& p) { return dist_mean(p) > 0.0; });
        return moment_pair_construction(
            canonical, space,
            [](double m1, double m2) {
              return m1 / std::sqrt(std::max(m2 - m1 * m1, 1e-300));
            },
            true, [](const Distribution& p) {
              return dist_mean(p) > 0.0 && dist_variance(p) > 0.0;
            });
      }
      return std::nullopt;
    };
  } else if (parse_int_suffix(name, "knorm", suffix)) {
    const int k = suffix;
    if (k < 2) throw Error("frontier_scan: knorm order must be >= 2");
    for (int d = 1; d + 1 < static_cast<int>(K); ++d)
      prof.crosses.emplace_back(d, 1);
    prof.scalar_prop = named_property(name);
    prof.construction = [name, k, K, space, own_loss_cell](
                            int d, int m) -> std::optional<CellConstruction> {
      if (d == 1 && m == k) return own_loss_cell(name, name, false);
      if (d == static_cast<int>(K) - 1 && m == 1 && K - 1 <= 2)
        return distribution_construction(
            name, space,
            [k](const std::vector<double>& probs) {
              double s = 0.0;
              for (double q : probs) s += std::pow(std::max(q, 0.0), k);
              return std::pow(s, 1.0 / k);
            },
            false, {});
      return std::nullopt;
    };
  } else if (parse_int_suffix(name, "central_moment", suffix)) {
    const int n = suffix;
    if (n == 4) prof.crosses = {{1, 1}};
    prof.scalar_prop = named_property(name);
    prof.construction = [name, n, own_loss_cell](
                            int d, int m) -> std::optional<CellConstruction> {
      if (d == 1 && m == n) return own_loss_cell(name, name, false);
      return std::nullopt;
    };
  } else if (name == "sine_demo") {
    for (int m = 1; m <= max_m; ++m) prof.crosses.emplace_back(1, m);
    prof.scalar_prop = named_property("sine_demo");
    prof.interior_scan = true;
    prof.construction = [space](int d,
                                int m) -> std::optional<CellConstruction> {
      if (d == 2 && m == 1 && space->size() == 3)
        return distribution_construction(
            "sine_demo", space,
            [](const std::vector<double>& probs) {
              return probs[0] - 0.5 * std::sin(1.0 / probs[1]);
            },
            true, [](const Distribution& p) {
              for (std::size_t o = 0; o < p.size(); ++o)
                if (p.p(o) <= 0.0) return false;
              return true;
            });
      return std::nullopt;
    };
  } else {
    throw Error("frontier_scan: no frontier profile for property '" + name +
                "'");
  }
  (void)max_d;
  return prof;
}

/// Quantile-spread level values for refutation attempts: 0.4 and 0.5 of the
/// property's observed range over a dense scan.
inline std::pair<double, double> pick_level_values(const Property& prop,
                                                   const SpacePtr& space,
                                                   bool interior) {
  double vlo = 0.0, vhi = 0.0;
  bool first = true;
  const int res = space->size() == 2 ? 2000 : 60;
  for (const Distribution& p : simplex_grid(space, res, interior)) {
    if (!prop.in_domain(p)) continue;
    const std::vector<double> v = prop.value(p);
    if (v.size() != 1) throw Error("frontier_scan: scalar property required");
    vlo = first ? v[0] : std::min(vlo, v[0]);
    vhi = first ? v[0] : std::max(vhi, v[0]);
    first = false;
  }
  if (first) throw Error("frontier_scan: no in-domain grid point");
  return {vlo + 0.4 * (vhi - vlo), vlo + 0.5 * (vhi - vlo)};
}

}  // namespace detail

/// Scans the (d, m) grid up to (max_d, max_m).  Cells with a catalog
/// construction are grid-verified; cells the source analysis marks
/// non-elicitable at d = 1 get a witness search; verification propagates
/// up-right (more report coordinates, more observations).
inline std::vector<FrontierCell> frontier_scan(const std::string& property_name,
                                               const SpacePtr& space, int max_d,
                                               int max_m,
                                               FrontierOptions opts = {}) {
  if (max_d < 1 || max_m < 1)
    throw Error("frontier_scan: max_d and max_m must be >= 1");
  detail::FrontierProfile prof =
      detail::frontier_profile(property_name, space, max_d, max_m);

  auto crossed = [&](int d, int m) {
    for (auto [cd, cm] : prof.crosses)
      if (cd == d && cm == m) return true;
    return false;
  };

  std::vector<std::vector<FrontierCell>> cells(
      max_d + 1, std::vector<FrontierCell>(max_m + 1));
  std::optional<WitnessResult> witness_cache;
  std::optional<std::string> witness_error;
  std::pair<double, double> levels{0.0, 0.0};

  for (int d = 1; d <= max_d; ++d) {
    for (int m = 1; m <= max_m; ++m) {
      FrontierCell& cell = cells[d][m];
      cell.d = d;
      cell.m = m;
      cell.status = "unknown";

      std::optional<detail::CellConstruction> cons =
          prof.construction ? prof.construction(d, m) : std::nullopt;
      if (cons && d <= 2) {
        try {
          VerificationReport rep =
              verify_elicits(cons->loss, cons->prop, space, opts.resolution,
                             opts.tol, cons->interior);
          if (rep.pass) {
            cell.status = "verified";
            cell.evidence = "verify loss=" + cons->loss.name + " grid=" +
                            std::to_string(opts.resolution) +
                            " worst=" + detail::fmt_g(rep.worst_error);
            continue;
          }
          cell.evidence = "construction failed: worst=" +
                          detail::fmt_g(rep.worst_error);
        } catch (const Error& e) {
          cell.evidence = std::string("construction error: ") + e.what();
        }
      }

      if (crossed(d, m)) {
        if (d > 1) {
          cell.evidence =
              "claimed not elicitable; no automated certificate for d > 1";
          continue;
        }
        if (!witness_cache && !witness_error) {
          try {
            levels = detail::pick_level_values(prof.scalar_prop, space,
                                               prof.interior_scan);
            SampleOptions sopts;
            sopts.scan_resolution = opts.level_scan;
            LevelSetSample A = sample_level_set(prof.scalar_prop, levels.first,
                                                space, sopts);
            LevelSetSample B = sample_level_set(prof.scalar_prop, levels.second,
                                                space, sopts);
            witness_cache = witness_search(A, B, m);
          } catch (const Error& e) {
            witness_error = e.what();
          }
        }
        // The cached search ran at the first crossed m; redo for other m.
        WitnessResult res;
        bool have = false;
        if (witness_error) {
          cell.evidence = "witness search error: " + *witness_error;
          continue;
        }
        if (witness_cache && witness_cache->feasible &&
            witness_cache->witness->m == static_cast<std::size_t>(m)) {
          res = *witness_cache;
          have = true;
        }
        if (!have) {
          try {
            SampleOptions sopts;
            sopts.scan_resolution = opts.level_scan;
            LevelSetSample A = sample_level_set(prof.scalar_prop, levels.first,
                                                space, sopts);
            LevelSetSample B = sample_level_set(prof.scalar_prop, levels.second,
                                                space, sopts);
            res = witness_search(A, B, m);
          } catch (const Error& e) {
            cell.evidence = "witness search error: " + std::string(e.what());
            continue;
          }
        }
        if (res.feasible && witness_valid(*res.witness)) {
          cell.status = "refuted";
          cell.evidence = "witness r1=" + detail::fmt_g(res.witness->r1) +
                          " r2=" + detail::fmt_g(res.witness->r2) +
                          " residual=" + detail::fmt_g(res.witness->residual);
        } else {
          cell.evidence = "no_witness_in_sample r1=" + detail::fmt_g(levels.first) +
                          " r2=" + detail::fmt_g(levels.second);
        }
      }
    }
  }

  // Monotone closure: verified cells propagate to more report coordinates
  // and more observations.
  for (int d = 1; d <= max_d; ++d) {
    for (int m = 1; m <= max_m; ++m) {
      FrontierCell& cell = cells[d][m];
      if (cell.status != "unknown") continue;
      if (d > 1 && cells[d - 1][m].status == "verified") {
        cell.status = "verified";
        cell.evidence = "closure from d=" + std::to_string(d - 1) +
                        " m=" + std::to_string(m);
      } else if (m > 1 && cells[d][m - 1].status == "verified") {
        cell.status = "verified";
        cell.evidence = "closure from d=" + std::to_string(d) +
                        " m=" + std::to_string(m - 1);
      }
    }
  }

  std::vector<FrontierCell> out;
  for (int d = 1; d <= max_d; ++d)
    for (int m = 1; m <= max_m; ++m) out.push_back(cells[d][m]);
  return out;
}

}  // namespace elicit

#endif  // ELICIT_VERIFIER_HPP
