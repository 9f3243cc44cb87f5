// Batch front-end for the elicitation toolkit: verification, witness
// certificates, frontier scans, site maps, and the regression study.
//
// Exit codes: 0 success/pass, 1 semantic fail (verification failed or no
// witness found in the sample), 2 usage or domain errors.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "elicit/elicit.hpp"

namespace {

using elicit::Json;

std::vector<double> parse_value_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw elicit::Error("empty entry in value list '" + csv + "'");
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw elicit::Error("bad number '" + item + "' in value list");
    }
  }
  if (out.empty()) throw elicit::Error("empty value list");
  return out;
}

elicit::SpacePtr space_from_flag(const std::string& outcomes) {
  return elicit::OutcomeSpace::from_values(parse_value_list(outcomes));
}

/// "@file.json" loads a sum-of-products estimator table; anything else is a
/// catalog name.
elicit::MultiObsLoss resolve_loss(const std::string& name,
                                  const elicit::OutcomeSpace& space) {
  if (!name.empty() && name.front() == '@') {
    const std::string path = name.substr(1);
    const Json doc = elicit::parse_json(elicit::read_file(path), path);
    elicit::SumProductEstimator est = elicit::estimator_from_json(doc);
    if (est.table_size() != space.size())
      throw elicit::Error("estimator tables cover " +
                          std::to_string(est.table_size()) +
                          " outcomes but the space has " +
                          std::to_string(space.size()));
    std::string label = path;
    if (doc.contains("name") && doc.at("name").is_string())
      label = doc.at("name").get<std::string>();
    return elicit::estimator_loss(label, est);
  }
  return elicit::named_loss(name, space);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    elicit::write_file(out_path, text);
}

/// Applies --config FILE: each key becomes --key unless that flag is already
/// present on the command line, so explicit flags always win.
std::vector<std::string> merge_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;
  const Json doc =
      elicit::parse_json(elicit::read_file(config_path), config_path);
  if (!doc.is_object())
    throw elicit::Error("config file: expected a JSON object of flag values");
  auto present = [&args](const std::string& flag) {
    for (const std::string& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string flag = "--" + it.key();
    if (present(flag)) continue;
    const Json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back(flag);
    } else if (v.is_string()) {
      args.push_back(flag);
      args.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      args.push_back(flag);
      args.push_back(std::to_string(v.get<long long>()));
    } else if (v.is_number()) {
      args.push_back(flag);
      args.push_back(elicit::format_double(v.get<double>()));
    } else {
      throw elicit::Error("config file: key '" + it.key() +
                          "' must be a scalar");
    }
  }
  return args;
}

struct VerifyArgs {
  std::string loss, property, outcomes, out, config;
  int grid = 10;
  double tol = 1e-3;
  bool interior = false;
};

int cmd_verify(const VerifyArgs& a) {
  elicit::SpacePtr space = space_from_flag(a.outcomes);
  const elicit::MultiObsLoss loss = resolve_loss(a.loss, *space);
  const elicit::Property prop = elicit::named_property(a.property);
  const elicit::VerificationReport rep =
      elicit::verify_elicits(loss, prop, space, a.grid, a.tol, a.interior);
  Json doc;
  doc["verification"] = elicit::to_json(rep);
  bool pass = rep.pass;
  if (loss.ident && prop.report_dim == loss.report_dim) {
    const elicit::IdentificationReport ident = elicit::check_identification(
        loss, prop, space, a.grid, a.tol, a.interior);
    doc["identification"] = elicit::to_json(ident);
    pass = pass && ident.pass;
  }
  doc["pass"] = pass;
  emit(doc.dump(2) + "\n", a.out);
  return pass ? 0 : 1;
}

struct WitnessArgs {
  std::string property, outcomes, out, config;
  int m = 1;
  double r1 = 0.0, r2 = 0.0;
  int scan = 0;
};

int cmd_witness(const WitnessArgs& a) {
  if (a.m < 1) throw elicit::Error("--m must be >= 1");
  elicit::SpacePtr space = space_from_flag(a.outcomes);
  const elicit::Property prop = elicit::named_property(a.property);
  elicit::SampleOptions sopts;
  sopts.scan_resolution = a.scan;
  const elicit::LevelSetSample s1 =
      elicit::sample_level_set(prop, a.r1, space, sopts);
  const elicit::LevelSetSample s2 =
      elicit::sample_level_set(prop, a.r2, space, sopts);
  const elicit::WitnessResult res =
      elicit::witness_search(s1, s2, static_cast<std::size_t>(a.m));
  if (res.feasible) {
    const double residual = elicit::verify_witness(*res.witness);
    if (residual > 1e-7)
      throw elicit::Error("witness failed re-verification, residual " +
                          elicit::format_double(residual));
  }
  emit(elicit::to_json(res).dump(2) + "\n", a.out);
  return res.feasible ? 0 : 1;
}

struct FrontierArgs {
  std::string property, outcomes, out, config;
  int max_d = 2, max_m = 2;
  int grid = 10;
  double tol = 1e-3;
  int scan = 0;
};

int cmd_frontier(const FrontierArgs& a) {
  elicit::SpacePtr space = space_from_flag(a.outcomes);
  elicit::FrontierOptions opts;
  opts.resolution = a.grid;
  opts.tol = a.tol;
  opts.level_scan = a.scan;
  const std::vector<elicit::FrontierCell> cells =
      elicit::frontier_scan(a.property, space, a.max_d, a.max_m, opts);
  emit(elicit::frontier_csv(cells), a.out);
  return 0;
}

struct VoronoiArgs {
  std::string sites, outcomes, dist, probs, out, config;
  int grid = 50;
};

int cmd_voronoi(const VoronoiArgs& a) {
  const elicit::SiteSet ss = elicit::sites_from_json(
      elicit::parse_json(elicit::read_file(a.sites), a.sites));
  if (!a.dist.empty() || !a.probs.empty()) {
    elicit::SpacePtr space;
    std::vector<double> probs;
    if (!a.dist.empty()) {
      auto [sp, p] = elicit::distribution_from_json(
          elicit::parse_json(elicit::read_file(a.dist), a.dist));
      space = sp;
      probs = p.probs();
    } else {
      space = space_from_flag(a.outcomes);
      probs = parse_value_list(a.probs);
    }
    const elicit::Distribution p(space, probs);
    std::vector<elicit::CellRow> rows;
    elicit::CellRow row;
    row.probs = p.probs();
    if (!ss.stat.empty()) {
      const std::vector<double> x = elicit::embed_product(p, ss.m);
      double dot = 0.0;
      for (std::size_t c = 0; c < x.size(); ++c) dot += x[c] * ss.stat[c];
      row.stat = dot;
      row.has_stat = true;
    }
    std::string joined;
    for (std::size_t s : elicit::assign_cell(ss, p)) {
      if (!joined.empty()) joined += ";";
      joined += ss.labels[s];
    }
    row.labels = joined;
    rows.push_back(row);
    emit(elicit::cell_map_csv(rows, p.size()), a.out);
    return 0;
  }
  elicit::SpacePtr space = space_from_flag(a.outcomes);
  const std::vector<elicit::CellRow> rows =
      elicit::cell_map(ss, space, a.grid);
  emit(elicit::cell_map_csv(rows, space->size()), a.out);
  return 0;
}

struct RegressArgs {
  std::string mode = "sliding";
  std::string data, out, config;
  double a = 0.0;
  std::size_t n = 10000;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

int cmd_regress(const RegressArgs& a) {
  if (!a.data.empty()) {
    // One-shot fits on an imported dataset; both estimates are reported as
    // quadratics f(x) = c0 + c1 x + c2 x^2 (the direct fit has c2 = 0).
    const elicit::ScatterDataset data =
        elicit::scatter_from_csv(elicit::read_file(a.data));
    const auto clusters = elicit::cluster_points(
        data, 2, elicit::parse_cluster_mode(a.mode));
    const elicit::LinearFit direct = elicit::fit_target_linear(
        clusters, [](const std::vector<double>& ys) {
          const double d = ys[0] - ys[1];
          return 0.5 * d * d;
        });
    const elicit::VarianceCurve indirect = elicit::fit_variance_indirect(data);
    std::string csv = "method,c0,c1,c2\n";
    csv += "two_obs," + elicit::format_double(direct.intercept) + "," +
           elicit::format_double(direct.slope) + ",0\n";
    const double b1 = indirect.f1.intercept, s1 = indirect.f1.slope;
    csv += "indirect," +
           elicit::format_double(indirect.f2.intercept - b1 * b1) + "," +
           elicit::format_double(indirect.f2.slope - 2.0 * b1 * s1) + "," +
           elicit::format_double(-s1 * s1) + "\n";
    emit(csv, a.out);
    return 0;
  }
  elicit::SimConfig cfg;
  cfg.a = a.a;
  cfg.n = a.n;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.mode = elicit::parse_cluster_mode(a.mode);
  cfg.jobs = a.jobs;
  const elicit::SimResult result = elicit::run_simulation(cfg);
  emit(elicit::regress_csv(cfg, result), a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property elicitation toolkit"};
  app.require_subcommand(1);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "Check that a loss elicits a property on a simplex grid");
  verify->add_option("--loss", va.loss, "Catalog loss name or @estimator.json")
      ->required();
  verify->add_option("--property", va.property, "Catalog property name")
      ->required();
  verify->add_option("--outcomes", va.outcomes, "Comma-separated outcome values")
      ->required();
  verify->add_option("--grid", va.grid, "Simplex grid resolution");
  verify->add_option("--tol", va.tol, "Report error tolerance");
  verify->add_flag("--interior", va.interior, "Restrict to interior grid points");
  verify->add_option("--out", va.out, "Write the JSON report here");
  verify->add_option("--config", va.config, "JSON file of default flags");

  WitnessArgs wa;
  CLI::App* witness = app.add_subcommand(
      "witness", "Search for equal mixtures of two level sets");
  witness->add_option("--property", wa.property, "Catalog property name")
      ->required();
  witness->add_option("--outcomes", wa.outcomes, "Comma-separated outcome values")
      ->required();
  witness->add_option("--m", wa.m, "Observation count")->required();
  witness->add_option("--r1", wa.r1, "First level value")->required();
  witness->add_option("--r2", wa.r2, "Second level value")->required();
  witness->add_option("--scan", wa.scan, "Level-set scan resolution");
  witness->add_option("--out", wa.out, "Write the JSON certificate here");
  witness->add_option("--config", wa.config, "JSON file of default flags");

  FrontierArgs fa;
  CLI::App* frontier = app.add_subcommand(
      "frontier", "Tabulate elicitability over report dimension and observations");
  frontier->add_option("--property", fa.property, "Catalog property name")
      ->required();
  frontier->add_option("--outcomes", fa.outcomes,
                       "Comma-separated outcome values")
      ->required();
  frontier->add_option("--max-d", fa.max_d, "Largest report dimension");
  frontier->add_option("--max-m", fa.max_m, "Largest observation count");
  frontier->add_option("--grid", fa.grid, "Verification grid resolution");
  frontier->add_option("--tol", fa.tol, "Verification tolerance");
  frontier->add_option("--scan", fa.scan, "Level-set scan resolution");
  frontier->add_option("--out", fa.out, "Write the CSV table here");
  frontier->add_option("--config", fa.config, "JSON file of default flags");

  VoronoiArgs oa;
  CLI::App* voronoi = app.add_subcommand(
      "voronoi", "Map simplex grid points to their nearest sites");
  voronoi->add_option("--sites", oa.sites, "Site file (JSON)")->required();
  voronoi->add_option("--outcomes", oa.outcomes,
                      "Comma-separated outcome values");
  voronoi->add_option("--grid", oa.grid, "Simplex grid resolution");
  voronoi->add_option("--dist", oa.dist,
                      "Distribution literal (JSON file); classify one point");
  voronoi->add_option("--p", oa.probs,
                      "Comma-separated probabilities; classify one point");
  voronoi->add_option("--out", oa.out, "Write the CSV map here");
  voronoi->add_option("--config", oa.config, "JSON file of default flags");

  RegressArgs ra;
  CLI::App* regress = app.add_subcommand(
      "regress", "Compare two-observation and indirect variance regression");
  regress->add_option("--a", ra.a, "Sine amplitude of the conditional mean");
  regress->add_option("--n", ra.n, "Points per trial");
  regress->add_option("--trials", ra.trials, "Trial count");
  regress->add_option("--seed", ra.seed, "Base seed (trial t uses seed + t)");
  regress->add_option("--mode", ra.mode, "Clustering mode: sliding|disjoint");
  regress->add_option("--jobs", ra.jobs, "Worker threads over trials");
  regress->add_option("--data", ra.data,
                      "Fit a two-column x,y CSV instead of simulating");
  regress->add_option("--out", ra.out, "Write the CSV summary here");
  regress->add_option("--config", ra.config, "JSON file of default flags");

  std::vector<std::string> merged;
  try {
    merged = merge_config_args(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::vector<const char*> cargv;
  cargv.push_back(argc > 0 ? argv[0] : "elicit");
  for (const std::string& s : merged) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(va);
    if (witness->parsed()) return cmd_witness(wa);
    if (frontier->parsed()) return cmd_frontier(fa);
    if (voronoi->parsed()) return cmd_voronoi(oa);
    if (regress->parsed()) return cmd_regress(ra);
  } catch (const elicit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}
