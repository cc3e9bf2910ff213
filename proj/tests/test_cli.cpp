// Copyright 2026 The qconn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "catch_utils.hpp"
#include "helpers.hpp"
#include "qconn/network_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using Catch::Approx;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QCONN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe))
    r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "qconn_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// CSV body without '#' comment lines
std::vector<std::string> data_lines(const std::string& csv) {
  std::vector<std::string> lines;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("generate is deterministic and self-describing") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "er.json";
  const std::string args = "generate --topology er --nodes 200 --avg-degree 8 "
                           "--dist delta:0.6 --seed 1 --output " +
                           out.string();
  const RunResult first = run_cli(args);
  REQUIRE(first.exit_code == 0);
  REQUIRE(first.out.find("rng: mt19937_64/53-bit seed=1") !=
          std::string::npos);
  const std::string bytes = slurp(out);

  // same invocation, byte-identical file
  REQUIRE(run_cli(args).exit_code == 0);
  REQUIRE(slurp(out) == bytes);

  const qconn::Network net = qconn::io::load_network(out.string());
  REQUIRE(net.node_count() == 200);
  for (const qconn::Edge& e : net.edges()) REQUIRE(e.concurrence == 0.6);

  // sidecar records the resolved config and the generator
  const json meta = json::parse(slurp(out.string() + ".meta.json"));
  REQUIRE(meta.at("command") == "generate");
  REQUIRE(meta.at("rng").at("algorithm") == "mt19937_64/53-bit");
  REQUIRE(meta.at("config").at("seed") == 1);
  REQUIRE(meta.at("config").at("distribution").at("kind") == "delta");
  REQUIRE(meta.at("config").at("distribution").at("c0") == 0.6);

  // re-running from the sidecar reproduces the file byte for byte
  const fs::path out2 = dir / "er2.json";
  const RunResult rerun =
      run_cli("generate --config " + out.string() + ".meta.json --output " +
              out2.string());
  REQUIRE(rerun.exit_code == 0);
  REQUIRE(slurp(out2) == bytes);

  // a hand-written config with the distribution as an object works too
  const fs::path cfg_path = dir / "gen.json";
  std::ofstream(cfg_path)
      << R"({"topology":"er","nodes":200,"avg_degree":8,)"
      << R"("distribution":{"kind":"delta","c0":0.6},"seed":1})";
  const fs::path out3 = dir / "er3.json";
  REQUIRE(run_cli("generate --config " + cfg_path.string() + " --output " +
                  out3.string())
              .exit_code == 0);
  REQUIRE(slurp(out3) == bytes);
}

TEST_CASE("generate validates its inputs") {
  const fs::path dir = work_dir();
  REQUIRE(run_cli("generate --topology er --nodes 10 --avg-degree 8 "
                  "--dist delta:1.2 --output " +
                  (dir / "x.json").string())
              .exit_code == 1);
  REQUIRE(run_cli("generate --topology tree --nodes 10 --dist delta:0.5 "
                  "--output " +
                  (dir / "x.json").string())
              .exit_code == 1);
  // unwritable output is an IO failure
  REQUIRE(run_cli("generate --topology complete --nodes 4 --dist delta:0.5 "
                  "--output /no/such/dir/x.json")
              .exit_code == 2);
}

TEST_CASE("metrics on the star network") {
  const fs::path dir = work_dir();
  const fs::path star_path = dir / "star.json";
  qconn::io::save_network(testutil::make_star(4, 0.8), star_path.string());

  SECTION("qcc of the hub") {
    const RunResult r = run_cli("metrics --network " + star_path.string() +
                                " --epsilon 0.3 --qcc 0");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    REQUIRE(rep.at("qcc").at("node") == 0);
    REQUIRE(rep.at("qcc").at("value").get<double>() == Approx(0.64));
    REQUIRE(rep.at("pairs") == 10);
  }
  SECTION("qcc of a leaf is undefined, not zero") {
    const RunResult r = run_cli("metrics --network " + star_path.string() +
                                " --epsilon 0.3 --qcc 1");
    REQUIRE(r.exit_code == 0);
    const json rep = json::parse(r.out);
    REQUIRE(rep.at("qcc").at("value").is_null());
    REQUIRE(rep.at("qcc").at("reason") == "undefined");
  }
  SECTION("threshold one excludes everything") {
    const RunResult r = run_cli("metrics --network " + star_path.string() +
                                " --epsilon 1.0");
    const json rep = json::parse(r.out);
    REQUIRE(rep.at("qcm") == 0.0);
    REQUIRE(rep.at("qcf") == 0.0);
  }
  SECTION("subset restriction") {
    const RunResult r = run_cli("metrics --network " + star_path.string() +
                                " --epsilon 0.3 --subset 1,2,3");
    const json rep = json::parse(r.out);
    REQUIRE(rep.at("pairs") == 3);
    REQUIRE(rep.at("qcf") == 1.0);
    REQUIRE(rep.at("qcm").get<double>() == Approx(0.64));
  }
  SECTION("csv format") {
    const RunResult r = run_cli("metrics --network " + star_path.string() +
                                " --epsilon 0.3 --format csv");
    REQUIRE(r.out.rfind("qcm,qcf,pairs,passing\n", 0) == 0);
  }
  SECTION("strength table export") {
    const fs::path csv = dir / "strengths.csv";
    const RunResult r =
        run_cli("metrics --network " + star_path.string() +
                " --epsilon 0.3 --subset 1,2 --strengths " + csv.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(slurp(csv) == "i,j,strength,hops,path\n1,2,0.64,2,1;0;2\n");
  }
  SECTION("validation and io exit codes") {
    REQUIRE(run_cli("metrics --network /no/such/net.json --epsilon 0.3")
                .exit_code == 2);
    REQUIRE(run_cli("metrics --network " + star_path.string() +
                    " --epsilon 2.0")
                .exit_code == 1);
    REQUIRE(run_cli("metrics --network " + star_path.string() +
                    " --epsilon 0.3 --subset 1,99")
                .exit_code == 1);
  }
}

TEST_CASE("pmf command emits the hop-length distribution") {
  const fs::path dir = work_dir();
  const fs::path path_net = dir / "path.json";
  qconn::io::save_network(testutil::make_path({1, 2, 3}, 0.5),
                          path_net.string());
  const RunResult r = run_cli("pmf --network " + path_net.string());
  REQUIRE(r.exit_code == 0);
  const json pmf = json::parse(r.out);
  REQUIRE(pmf.at("q").at("1").get<double>() == Approx(2.0 / 3.0));
  REQUIRE(pmf.at("q").at("2").get<double>() == Approx(1.0 / 3.0));
  REQUIRE(pmf.at("ell_max") == 2);
  REQUIRE(pmf.at("disconnected_fraction") == 0.0);
}

TEST_CASE("ensemble sweep over a complete family steps at the threshold") {
  const RunResult r = run_cli(
      "ensemble --topology complete --dist delta --epsilon 0.3 "
      "--cbar-grid 0.25:0.05:0.35");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 4);  // header + 3 grid points
  REQUIRE(lines[0] == "cbar,sigma2,epsilon,qcm,qcf,qcm_se,qcf_se,method");
  REQUIRE(lines[1] == "0.25,0,0.3,0,0,0,0,closed_form");
  REQUIRE(lines[2] == "0.3,0,0.3,0,0,0,0,closed_form");  // strict threshold
  REQUIRE(lines[3] == "0.35,0,0.3,0.35,1,0,0,closed_form");
}

TEST_CASE("ensemble from a stored pmf matches the family evaluation") {
  const fs::path dir = work_dir();
  const fs::path pmf_path = dir / "pmf.json";
  qconn::PathLengthPmf pmf;
  pmf.q[1] = 2.0 / 3.0;
  pmf.q[2] = 1.0 / 3.0;
  pmf.ell_max = 2;
  pmf.pair_count = 3;
  qconn::io::save_pmf(pmf, pmf_path.string());

  const RunResult r = run_cli("ensemble --topology er --pmf " +
                              pmf_path.string() +
                              " --dist delta --epsilon 0.3 "
                              "--cbar-grid 0.6:0.1:0.6");
  REQUIRE(r.exit_code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 2);
  // qcm = (2/3) 0.6 + (1/3) 0.36 = 0.52, qcf = 1
  std::istringstream row(lines[1]);
  std::vector<std::string> fields;
  std::string f;
  while (std::getline(row, f, ',')) fields.push_back(f);
  REQUIRE(fields.size() == 8);
  REQUIRE(fields[0] == "0.6");
  REQUIRE(std::stod(fields[3]) == Approx(0.52).margin(1e-12));
  REQUIRE(std::stod(fields[4]) == Approx(1.0).margin(1e-12));
  REQUIRE(fields[7] == "semi_analytic");
}

TEST_CASE("ensemble --auto builds its own pmf deterministically") {
  const RunResult a = run_cli(
      "ensemble --topology er --auto --nodes 300 --avg-degree 6 --seed 5 "
      "--dist uniform:0.005 --epsilon 0.3 --cbar-grid 0.5:0.1:0.7 "
      "--mc-samples 20000");
  REQUIRE(a.exit_code == 0);
  const RunResult b = run_cli(
      "ensemble --topology er --auto --nodes 300 --avg-degree 6 --seed 5 "
      "--dist uniform:0.005 --epsilon 0.3 --cbar-grid 0.5:0.1:0.7 "
      "--mc-samples 20000");
  REQUIRE(a.out == b.out);
  const auto lines = data_lines(a.out);
  REQUIRE(lines.size() == 4);
  // qcf grows with cbar
  auto qcf_of = [&](const std::string& line) {
    std::istringstream is(line);
    std::string f;
    for (int k = 0; k < 5; ++k) std::getline(is, f, ',');
    return std::stod(f);
  };
  REQUIRE(qcf_of(lines[1]) <= qcf_of(lines[2]));
  REQUIRE(qcf_of(lines[2]) <= qcf_of(lines[3]));

  // missing pmf source is a validation failure
  REQUIRE(run_cli("ensemble --topology er --dist delta --epsilon 0.3 "
                  "--cbar-grid 0:0.5:1")
              .exit_code == 1);
}

TEST_CASE("regional map on a waxman network") {
  const fs::path dir = work_dir();
  const fs::path net_path = dir / "wax.json";
  REQUIRE(run_cli("generate --topology waxman --nodes 120 --radius 1000 "
                  "--dist delta:0.6 --seed 7 --output " +
                  net_path.string())
              .exit_code == 0);

  SECTION("degenerate single region equals global metrics") {
    const RunResult global = run_cli("metrics --network " + net_path.string() +
                                     " --epsilon 0.3");
    const json rep = json::parse(global.out);
    const RunResult reg = run_cli("regional --network " + net_path.string() +
                                  " --epsilon 0.3 --region-radius 5000");
    REQUIRE(reg.exit_code == 0);
    const auto lines = data_lines(reg.out);
    REQUIRE(lines.size() == 2);
    std::istringstream is(lines[1]);
    std::string field;
    for (int k = 0; k < 5; ++k) std::getline(is, field, ',');
    REQUIRE(std::stod(field) == Approx(rep.at("qcm").get<double>()));
  }
  SECTION("region-scale map has plausible rows") {
    const RunResult reg = run_cli("regional --network " + net_path.string() +
                                  " --epsilon 0.3 --region-radius 200");
    REQUIRE(reg.exit_code == 0);
    REQUIRE(reg.out.find("density") != std::string::npos);
    const auto lines = data_lines(reg.out);
    REQUIRE(lines.size() > 2);
    REQUIRE(lines[0] ==
            "region_index,center_x,center_y,node_count,qcm,qcf");
  }
  SECTION("positions are required") {
    const fs::path bare = dir / "bare.json";
    qconn::io::save_network(testutil::make_star(3, 0.5), bare.string());
    REQUIRE(run_cli("regional --network " + bare.string() +
                    " --epsilon 0.3 --region-radius 100")
                .exit_code == 1);
  }
}
