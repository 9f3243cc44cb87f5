#ifndef ELICIT_IO_HPP
#define ELICIT_IO_HPP

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"

#include "elicit/catalog.hpp"
#include "elicit/core.hpp"
#include "elicit/regression.hpp"
#include "elicit/verifier.hpp"
#include "elicit/voronoi.hpp"
#include "elicit/witness.hpp"

namespace elicit {

/// Ordered JSON keeps insertion order, so emitted documents are stable.
using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form.  Serialization refuses non-finite
/// values everywhere rather than emitting "nan"/"inf" tokens.
inline std::string format_double(double v) {
  if (!std::isfinite(v))
    throw Error("refusing to serialize non-finite number");
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
    throw Error("number formatting failed");
  return std::string(buf, res.ptr);
}

inline double checked_number(double v) {
  if (!std::isfinite(v))
    throw Error("refusing to serialize non-finite number");
  return v;
}

inline Json number_array(const std::vector<double>& v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(checked_number(x));
  return arr;
}

inline Json to_json(const Witness& w) {
  Json j;
  j["m"] = w.m;
  j["r1"] = checked_number(w.r1);
  j["r2"] = checked_number(w.r2);
  Json g1 = Json::array();
  for (std::size_t i = 0; i < w.group1.size(); ++i) {
    Json e;
    e["p"] = number_array(w.group1[i].probs());
    e["lambda"] = checked_number(w.lambda1[i]);
    g1.push_back(std::move(e));
  }
  j["group1"] = std::move(g1);
  Json g2 = Json::array();
  for (std::size_t i = 0; i < w.group2.size(); ++i) {
    Json e;
    e["p"] = number_array(w.group2[i].probs());
    e["lambda"] = checked_number(w.lambda2[i]);
    g2.push_back(std::move(e));
  }
  j["group2"] = std::move(g2);
  j["residual"] = checked_number(w.residual);
  return j;
}

inline Json to_json(const WitnessResult& res) {
  Json j;
  j["feasible"] = res.feasible;
  if (res.feasible && res.witness)
    j["witness"] = to_json(*res.witness);
  else
    j["note"] = res.note.empty() ? "no_witness_in_sample" : res.note;
  return j;
}

inline Json to_json(const VerificationReport& rep) {
  Json j;
  j["loss"] = rep.loss_name;
  j["property"] = rep.property_name;
  j["grid"] = rep.resolution;
  j["interior"] = rep.interior;
  j["tolerance"] = checked_number(rep.tolerance);
  j["worst_error"] = checked_number(rep.worst_error);
  j["checked"] = rep.checked;
  j["skipped"] = rep.skipped;
  j["pass"] = rep.pass;
  j["note"] = rep.note;
  return j;
}

inline Json to_json(const IdentificationReport& rep) {
  Json j;
  j["loss"] = rep.loss_name;
  j["property"] = rep.property_name;
  j["tolerance"] = checked_number(rep.tolerance);
  j["worst_at_report"] = checked_number(rep.worst_at_report);
  j["min_at_offset"] = checked_number(rep.min_at_offset);
  j["checked"] = rep.checked;
  j["skipped"] = rep.skipped;
  j["pass"] = rep.pass;
  return j;
}

inline Json sites_to_json(const SiteSet& ss) {
  Json j;
  j["m"] = ss.m;
  j["labels"] = ss.labels;
  Json sites = Json::array();
  for (const auto& s : ss.sites) sites.push_back(number_array(s));
  j["sites"] = std::move(sites);
  if (!ss.stat.empty()) j["stat"] = number_array(ss.stat);
  return j;
}

inline SiteSet sites_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("labels") ||
      !j.contains("sites"))
    throw Error("site file: expected object with m, labels, sites");
  const std::size_t m = j.at("m").get<std::size_t>();
  std::vector<std::string> labels =
      j.at("labels").get<std::vector<std::string>>();
  std::vector<std::vector<double>> sites =
      j.at("sites").get<std::vector<std::vector<double>>>();
  std::vector<double> stat;
  if (j.contains("stat")) stat = j.at("stat").get<std::vector<double>>();
  return SiteSet(m, std::move(labels), std::move(sites), std::move(stat));
}

/// Estimator tables as JSON: {"name": ..., "terms": [[[v...], [v...]], ...]}
/// where each innermost array lists one factor's per-outcome values.
inline SumProductEstimator estimator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms"))
    throw Error("estimator file: expected object with terms");
  const auto terms =
      j.at("terms").get<std::vector<std::vector<std::vector<double>>>>();
  return SumProductEstimator(terms);
}

/// Distribution literal: {"outcomes": [values...], "probs": [q...]}.
inline std::pair<SpacePtr, Distribution> distribution_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("outcomes") || !j.contains("probs"))
    throw Error("distribution literal: expected object with outcomes, probs");
  SpacePtr space =
      OutcomeSpace::from_values(j.at("outcomes").get<std::vector<double>>());
  Distribution p(space, j.at("probs").get<std::vector<double>>());
  return {space, p};
}

namespace detail {

inline std::string csv_field(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

}  // namespace detail

inline std::string frontier_csv(const std::vector<FrontierCell>& cells) {
  std::string out = "d,m,status,evidence\n";
  for (const FrontierCell& c : cells) {
    out += std::to_string(c.d) + "," + std::to_string(c.m) + "," + c.status +
           "," + detail::csv_field(c.evidence) + "\n";
  }
  return out;
}

inline std::string cell_map_csv(const std::vector<CellRow>& rows,
                                std::size_t outcome_count) {
  std::string out;
  for (std::size_t o = 0; o < outcome_count; ++o)
    out += "p_" + std::to_string(o) + ",";
  out += "stat,labels\n";
  for (const CellRow& row : rows) {
    if (row.probs.size() != outcome_count)
      throw Error("cell map row has wrong probability count");
    for (double q : row.probs) out += format_double(q) + ",";
    out += (row.has_stat ? format_double(row.stat) : std::string()) + "," +
           detail::csv_field(row.labels) + "\n";
  }
  return out;
}

inline std::string regress_csv(const SimConfig& cfg, const SimResult& result) {
  std::string out = "n,a,trials,mode,method,mse_mean,mse_median\n";
  const std::string prefix = std::to_string(cfg.n) + "," +
                             format_double(cfg.a) + "," +
                             std::to_string(cfg.trials) + "," +
                             to_string(cfg.mode) + ",";
  out += prefix + "two_obs," + format_double(mean_of(result.mse_two_obs)) +
         "," + format_double(median_of(result.mse_two_obs)) + "\n";
  out += prefix + "indirect," + format_double(mean_of(result.mse_indirect)) +
         "," + format_double(median_of(result.mse_indirect)) + "\n";
  return out;
}

/// Two-column scatter CSV; a leading "x,y" header row is optional.
inline ScatterDataset scatter_from_csv(const std::string& text) {
  ScatterDataset data;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.rfind("x,y", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw Error("scatter CSV: expected two comma-separated columns");
    try {
      data.push_back({std::stod(line.substr(0, comma)),
                      std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw Error("scatter CSV: bad number in line '" + line + "'");
    }
  }
  check_scatter(data);
  return data;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("write to '" + path + "' failed");
}

inline Json parse_json(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("invalid JSON in " + what);
  return j;
}

}  // namespace elicit

#endif  // ELICIT_IO_HPP
