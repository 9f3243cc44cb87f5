// End-to-end checks of the command-line front-end: exit codes, JSON and CSV
// shapes, config merging, and byte-stable output.  argv[1] is the CLI path.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cli_runner.hpp"

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

void check_exit(const cli_runner::RunResult& res, int want,
                const std::string& what) {
  if (res.exit_code != want) {
    ++failures;
    std::cerr << "FAIL: " << what << ": exit " << res.exit_code << ", want "
              << want << "\n";
  }
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-cli>\n";
    return 1;
  }
  const std::string cli = argv[1];

  {
    const auto res = cli_runner::run(
        cli, {"verify", "--loss", "variance2", "--property", "variance",
              "--outcomes", "0,1", "--grid", "8"});
    check_exit(res, 0, "verify variance2");
    check(contains(res.output, "\"pass\": true"), "verify reports pass");
    check(contains(res.output, "\"verification\""), "verify has report block");
    check(contains(res.output, "\"identification\""),
          "verify has identification block");
    check(contains(res.output, "\"checked\": 9"),
          "verify grid 8 checks 9 coin distributions");
  }

  {
    const auto res = cli_runner::run(
        cli, {"verify", "--loss", "no_such_loss", "--property", "variance",
              "--outcomes", "0,1"});
    check_exit(res, 2, "verify unknown loss");
  }

  {
    const auto res = cli_runner::run(
        cli, {"verify", "--loss", "mean1", "--property", "variance",
              "--outcomes", "0,1", "--grid", "8"});
    check_exit(res, 1, "verify mismatched loss");
    check(contains(res.output, "\"pass\": false"),
          "mismatched loss reports failure");
  }

  {
    write_text("/tmp/elicit_est.json",
               "{\"name\": \"avg\", \"terms\": [[[0, 1]]]}");
    const auto res = cli_runner::run(
        cli, {"verify", "--loss", "@/tmp/elicit_est.json", "--property",
              "mean", "--outcomes", "0,1", "--grid", "8"});
    check_exit(res, 0, "verify estimator file loss");
    check(contains(res.output, "\"loss\": \"avg\""),
          "estimator loss uses its declared name");
  }

  {
    const auto res = cli_runner::run(
        cli, {"witness", "--property", "variance", "--outcomes", "0,1",
              "--m", "1", "--r1", "0.16", "--r2", "0.21"});
    check_exit(res, 0, "witness m=1");
    check(contains(res.output, "\"feasible\": true"), "witness feasible");
    check(contains(res.output, "\"residual\""), "witness residual present");
    check(contains(res.output, "\"group1\""), "witness lists group1");
    check(contains(res.output, "\"r1\": 0.16"), "witness echoes r1");

    const auto again = cli_runner::run(
        cli, {"witness", "--property", "variance", "--outcomes", "0,1",
              "--m", "1", "--r1", "0.16", "--r2", "0.21"});
    check(res.output == again.output, "witness output is byte-stable");
  }

  {
    const auto res = cli_runner::run(
        cli, {"witness", "--property", "variance", "--outcomes", "0,1",
              "--m", "2", "--r1", "0.16", "--r2", "0.21"});
    check_exit(res, 1, "witness m=2 finds nothing");
    check(contains(res.output, "\"feasible\": false"), "m=2 infeasible");
    check(contains(res.output, "no_witness_in_sample"), "m=2 note");
  }

  {
    const auto res = cli_runner::run(
        cli, {"frontier", "--property", "variance", "--outcomes", "0,1",
              "--max-d", "2", "--max-m", "2"});
    check_exit(res, 0, "frontier variance");
    check(count_lines(res.output) == 5, "frontier emits header plus 4 rows");
    check(res.output.rfind("d,m,status,evidence\n", 0) == 0,
          "frontier header");
    check(contains(res.output, "1,1,refuted,"), "frontier (1,1) refuted");
    check(contains(res.output, "1,2,verified,"), "frontier (1,2) verified");
    check(contains(res.output, "2,1,verified,"), "frontier (2,1) verified");
    check(contains(res.output, "2,2,verified,"), "frontier (2,2) verified");

    const auto again = cli_runner::run(
        cli, {"frontier", "--property", "variance", "--outcomes", "0,1",
              "--max-d", "2", "--max-m", "2"});
    check(res.output == again.output, "frontier output is byte-stable");
  }

  {
    write_text("/tmp/elicit_sites.json",
               "{\"m\": 1, \"labels\": [\"A\", \"B\"], "
               "\"sites\": [[1, 0], [0, 1]]}");
    const auto res = cli_runner::run(
        cli, {"voronoi", "--sites", "/tmp/elicit_sites.json", "--outcomes",
              "0,1", "--grid", "2"});
    check_exit(res, 0, "voronoi grid map");
    check(res.output.rfind("p_0,p_1,stat,labels\n", 0) == 0,
          "voronoi header");
    check(count_lines(res.output) == 4, "voronoi grid 2 emits 3 rows");
    check(contains(res.output, ",A\n"), "voronoi has an A cell");
    check(contains(res.output, ",B\n"), "voronoi has a B cell");
    check(contains(res.output, ",A;B\n"), "voronoi marks the tie");
  }

  {
    const auto res = cli_runner::run(
        cli, {"voronoi", "--sites", "/tmp/elicit_sites.json", "--outcomes",
              "0,1", "--p", "0.7,0.3"});
    check_exit(res, 0, "voronoi single point");
    check(count_lines(res.output) == 2, "single point emits one row");
    check(contains(res.output, "0.7,0.3,,A\n"), "single point lands in A");
  }

  {
    write_text("/tmp/elicit_dist.json",
               "{\"outcomes\": [0, 1], \"probs\": [0.2, 0.8]}");
    const auto res = cli_runner::run(
        cli, {"voronoi", "--sites", "/tmp/elicit_sites.json", "--dist",
              "/tmp/elicit_dist.json"});
    check_exit(res, 0, "voronoi distribution literal");
    check(contains(res.output, "0.2,0.8,,B\n"), "literal lands in B");
  }

  {
    const auto res = cli_runner::run(
        cli, {"regress", "--a", "0", "--n", "200", "--trials", "3",
              "--seed", "1"});
    check_exit(res, 0, "regress simulation");
    check(res.output.rfind("n,a,trials,mode,method,mse_mean,mse_median\n",
                           0) == 0,
          "regress header");
    check(count_lines(res.output) == 3, "regress emits two method rows");
    check(contains(res.output, "200,0,3,sliding,two_obs,"),
          "regress two_obs row");
    check(contains(res.output, "200,0,3,sliding,indirect,"),
          "regress indirect row");
  }

  {
    write_text("/tmp/elicit_scatter.csv",
               "x,y\n0,1\n0.2,2\n0.4,1\n0.6,2\n0.8,1\n1,2\n");
    const auto res = cli_runner::run(
        cli, {"regress", "--data", "/tmp/elicit_scatter.csv"});
    check_exit(res, 0, "regress data import");
    check(res.output.rfind("method,c0,c1,c2\n", 0) == 0,
          "data import header");
    check(contains(res.output, "\ntwo_obs,"), "data import two_obs row");
    check(contains(res.output, "\nindirect,"), "data import indirect row");
    const std::size_t pos = res.output.find("\ntwo_obs,");
    const std::size_t end = res.output.find('\n', pos + 1);
    check(res.output.substr(pos, end - pos).rfind(",0") ==
              end - pos - 2,
          "direct fit row has no quadratic term");
  }

  {
    write_text("/tmp/elicit_config.json", "{\"grid\": 4, \"tol\": 0.001}");
    const auto res = cli_runner::run(
        cli, {"verify", "--loss", "variance2", "--property", "variance",
              "--outcomes", "0,1", "--config", "/tmp/elicit_config.json"});
    check_exit(res, 0, "verify with config defaults");
    check(contains(res.output, "\"grid\": 4"), "config grid applies");

    const auto override_res = cli_runner::run(
        cli, {"verify", "--loss", "variance2", "--property", "variance",
              "--outcomes", "0,1", "--grid", "6", "--config",
              "/tmp/elicit_config.json"});
    check_exit(override_res, 0, "verify with config and explicit grid");
    check(contains(override_res.output, "\"grid\": 6"),
          "explicit flag beats config");
  }

  {
    const std::string out_path = "/tmp/elicit_verify_out.json";
    std::remove(out_path.c_str());
    const auto res = cli_runner::run(
        cli, {"verify", "--loss", "variance2", "--property", "variance",
              "--outcomes", "0,1", "--grid", "6", "--out", out_path});
    check_exit(res, 0, "verify --out");
    check(res.output.empty(), "--out leaves stdout empty");
    std::ifstream in(out_path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    check(contains(content, "\"pass\": true"), "--out file holds the report");
  }

  {
    check_exit(cli_runner::run(cli, {}), 2, "no subcommand");
    check_exit(cli_runner::run(cli, {"verify", "--loss"}), 2,
               "dangling flag value");
    check_exit(cli_runner::run(cli, {"verify", "--loss", "mean1",
                                     "--property", "mean", "--outcomes",
                                     "0,1", "--bogus"}),
               2, "unknown flag");
    check_exit(cli_runner::run(cli, {"frontier", "--property", "variance",
                                     "--outcomes", "0,1", "--max-d", "0"}),
               2, "bad frontier bounds");
    check_exit(cli_runner::run(cli, {"--help"}), 0, "--help");
    const auto help = cli_runner::run(cli, {"--help"}, false);
    check(contains(help.output, "verify"), "help lists subcommands");
  }

  if (failures == 0) {
    std::cout << "test_cli: all checks passed\n";
    return 0;
  }
  std::cerr << "test_cli: " << failures << " check(s) failed\n";
  return 1;
}
