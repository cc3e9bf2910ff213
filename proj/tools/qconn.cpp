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

// Command-line front end: generate network families, evaluate connectivity
// metrics, emit hop-length PMFs, run ensemble sweeps and regional maps.
// Every command is deterministic given its config and seed; file outputs
// carry the resolved config inline (CSV header comments) or in a
// <output>.meta.json sidecar (JSON outputs).

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qconn/qconn.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qconn;

// ---------------------------------------------------------------------
// small helpers

struct DistSpec {
  ConcurrenceDistribution::Kind kind = ConcurrenceDistribution::Kind::delta;
  std::optional<double> mean;  // absent in sweep mode (mean comes from grid)
  double sigma2 = 0.0;
};

// "delta:0.6" | "uniform:0.5,0.005" | sweep forms "delta" | "uniform:0.005"
DistSpec parse_dist(const std::string& spec, bool sweep_mode) {
  DistSpec d;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::string args =
      colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      detail::require(used == s.size(), errc::invalid_parameter, "");
      return v;
    } catch (const std::exception&) {
      throw Error(errc::invalid_parameter,
                  "bad number '" + s + "' in distribution '" + spec + "'");
    }
  };
  if (kind == "delta") {
    d.kind = ConcurrenceDistribution::Kind::delta;
    if (!args.empty()) d.mean = to_double(args);
  } else if (kind == "uniform") {
    d.kind = ConcurrenceDistribution::Kind::uniform;
    const auto comma = args.find(',');
    if (comma != std::string::npos) {
      d.mean = to_double(args.substr(0, comma));
      d.sigma2 = to_double(args.substr(comma + 1));
    } else if (!args.empty()) {
      if (sweep_mode)
        d.sigma2 = to_double(args);  // "uniform:<sigma2>"
      else
        throw Error(errc::invalid_parameter,
                    "uniform distribution needs mean,variance");
    }
  } else {
    throw Error(errc::invalid_parameter,
                "unknown distribution kind '" + kind + "'");
  }
  if (!sweep_mode && !d.mean)
    throw Error(errc::invalid_parameter,
                "distribution '" + spec + "' needs a value, e.g. delta:0.6");
  return d;
}

ConcurrenceDistribution make_dist(const DistSpec& d, double mean) {
  return d.kind == ConcurrenceDistribution::Kind::delta
             ? ConcurrenceDistribution::delta(mean)
             : ConcurrenceDistribution::uniform(mean, d.sigma2);
}

// configs carry the distribution as an object; the CLI flag form is the
// compact string
ordered_json dist_to_json(const DistSpec& d) {
  ordered_json j;
  if (d.kind == ConcurrenceDistribution::Kind::delta) {
    j["kind"] = "delta";
    if (d.mean) j["c0"] = *d.mean;
  } else {
    j["kind"] = "uniform";
    if (d.mean) j["mean"] = *d.mean;
    j["variance"] = d.sigma2;
  }
  return j;
}

std::string dist_config_to_string(const ordered_json& j, bool sweep_mode) {
  if (j.is_string()) return j.get<std::string>();
  detail::require(j.is_object() && j.contains("kind"), errc::invalid_parameter,
                  "distribution config needs a kind");
  const std::string kind = j.at("kind").get<std::string>();
  std::ostringstream os;
  os << kind;
  if (kind == "delta") {
    if (j.contains("c0"))
      os << ':' << io::format_double(j.at("c0").get<double>());
  } else if (kind == "uniform") {
    os << ':';
    if (j.contains("mean"))
      os << io::format_double(j.at("mean").get<double>()) << ',';
    else
      detail::require(sweep_mode, errc::invalid_parameter,
                      "uniform distribution config needs a mean");
    os << io::format_double(j.value("variance", 0.0));
  } else {
    throw Error(errc::invalid_parameter,
                "unknown distribution kind '" + kind + "'");
  }
  return os.str();
}

// Exact decimal grid "start:step:stop": values are k/10^d so a grid point
// written as 0.3 is the same double a user gets typing 0.3.
std::vector<double> parse_grid(const std::string& spec) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
      const auto next = s.find(sep, pos);
      out.push_back(s.substr(pos, next - pos));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return out;
  };
  const auto parts = split(spec, ':');
  detail::require(parts.size() == 3, errc::invalid_parameter,
                  "grid must be start:step:stop, got '" + spec + "'");
  // decimal -> (numerator, 10^digits)
  auto decimal = [&](const std::string& s) -> std::pair<long long, long long> {
    std::string t = s;
    bool neg = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
      neg = t[0] == '-';
      t = t.substr(1);
    }
    const auto dot = t.find('.');
    const std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
    const std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
    detail::require(!ip.empty() || !fp.empty(), errc::invalid_parameter,
                    "bad grid number '" + s + "'");
    long long num = 0, scale = 1;
    for (char c : ip + fp) {
      detail::require(c >= '0' && c <= '9', errc::invalid_parameter,
                      "bad grid number '" + s + "'");
      num = num * 10 + (c - '0');
    }
    for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
    return {neg ? -num : num, scale};
  };
  auto [an, as] = decimal(parts[0]);
  auto [sn, ss] = decimal(parts[1]);
  auto [bn, bs] = decimal(parts[2]);
  long long scale = std::max({as, ss, bs});
  an *= scale / as;
  sn *= scale / ss;
  bn *= scale / bs;
  detail::require(sn > 0, errc::invalid_parameter, "grid step must be > 0");
  detail::require(an <= bn, errc::invalid_parameter,
                  "grid start must not exceed stop");
  std::vector<double> values;
  for (long long k = an; k <= bn; k += sn)
    values.push_back(static_cast<double>(k) / static_cast<double>(scale));
  return values;
}

std::vector<double> parse_double_list(const std::string& spec) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const std::string tok = spec.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      detail::require(used == tok.size(), errc::invalid_parameter, "");
    } catch (const std::exception&) {
      throw Error(errc::invalid_parameter, "bad number '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  detail::require(!out.empty(), errc::invalid_parameter, "empty list");
  return out;
}

std::vector<NodeId> parse_id_list(const std::string& spec) {
  std::vector<NodeId> out;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const std::string tok = spec.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      detail::require(used == tok.size(), errc::invalid_parameter, "");
    } catch (const std::exception&) {
      throw Error(errc::invalid_parameter, "bad node id '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// --config accepts either a bare config object or a sidecar written by a
// previous run ({"command": ..., "config": {...}}).
ordered_json load_config_file(const std::string& path,
                              const std::string& command) {
  ordered_json j = io::detail_io::parse_file(path);
  if (j.is_object() && j.contains("config") && j.contains("command")) {
    detail::require(j.at("command").get<std::string>() == command,
                    errc::invalid_parameter,
                    "config file was written by command '" +
                        j.at("command").get<std::string>() + "'");
    return j.at("config");
  }
  return j;
}

template <class T>
void cfg_get(const ordered_json& cfg, const char* key, const CLI::Option* opt,
             T& dst) {
  if (opt->count() == 0 && cfg.contains(key)) dst = cfg.at(key).get<T>();
}

void write_sidecar(const std::string& output_path, const std::string& command,
                   const ordered_json& config) {
  ordered_json meta;
  meta["command"] = command;
  meta["config"] = config;
  meta["rng"] = {{"algorithm", kRngAlgorithm}};
  io::detail_io::write_file(output_path + ".meta.json",
                            meta.dump(2) + "\n");
}

std::string csv_header_comment(const std::string& command,
                               const ordered_json& config) {
  std::ostringstream os;
  os << "# qconn " << command << "\n# config: " << config.dump()
     << "\n# rng: " << kRngAlgorithm << "\n";
  return os.str();
}

void emit(const std::string& output, const std::string& body) {
  if (output.empty())
    std::cout << body;
  else
    io::detail_io::write_file(output, body);
}

// ---------------------------------------------------------------------
// generate

int cmd_generate(const std::string& topology, std::int64_t nodes,
                 double avg_degree, double radius, std::optional<double> alpha,
                 double gamma, double photons, const std::string& dist_spec,
                 std::uint64_t seed, const std::string& output) {
  const DistSpec dspec = parse_dist(dist_spec, /*sweep_mode=*/false);
  const ConcurrenceDistribution dist = make_dist(dspec, *dspec.mean);

  Topology topo;
  ordered_json config;
  config["topology"] = topology;
  if (topology == "complete") {
    topo = complete_graph(nodes);
    config["nodes"] = nodes;
  } else if (topology == "er") {
    topo = erdos_renyi(nodes, avg_degree, substream_seed(seed, 0));
    config["nodes"] = nodes;
    config["avg_degree"] = avg_degree;
  } else if (topology == "waxman") {
    WaxmanParams wp;
    wp.nodes = nodes;
    wp.radius_km = radius;
    wp.alpha = alpha;
    wp.gamma_db_per_km = gamma;
    wp.photons_per_attempt = photons;
    wp.seed = substream_seed(seed, 0);
    topo = waxman(wp);
    config["nodes"] = nodes;
    config["radius_km"] = radius;
    config["alpha"] = wp.resolved_alpha();
    config["gamma_db_per_km"] = gamma;
    config["photons_per_attempt"] = photons;
  } else {
    throw Error(errc::invalid_parameter,
                "unknown topology '" + topology + "'");
  }
  const Network net =
      sample_concurrences(topo, dist, substream_seed(seed, 1));
  config["distribution"] = dist_to_json(dspec);
  config["seed"] = seed;
  config["output"] = output;

  io::save_network(net, output);
  write_sidecar(output, "generate", config);
  std::cout << "wrote " << output << ": " << net.node_count() << " nodes, "
            << net.edge_count() << " edges\n"
            << "rng: " << kRngAlgorithm << " seed=" << seed << "\n";
  return 0;
}

// ---------------------------------------------------------------------
// metrics

int cmd_metrics(const std::string& network_path, double epsilon,
                const std::string& subset_spec, std::optional<NodeId> qcc_node,
                const std::string& format, const std::string& output,
                const std::string& strengths_path, unsigned threads) {
  const Network net = io::load_network(network_path);
  NodeSet subset;
  if (subset_spec.empty()) {
    std::vector<NodeId> all;
    all.reserve(net.node_count());
    for (const Node& n : net.nodes()) all.push_back(n.id);
    subset = NodeSet(std::move(all));
  } else {
    subset = NodeSet(parse_id_list(subset_spec));
    for (NodeId id : subset) net.index_of(id);  // unknown ids fail here
  }
  const MetricParams params{epsilon};
  const bool want_paths = !strengths_path.empty();
  const StrengthTable table = all_pairs_strengths(
      net, subset, {.keep_paths = want_paths, .threads = threads});
  const ConnectivityReport report = connectivity_report(table, params);

  if (want_paths) {
    std::ostringstream os;
    io::write_strengths_csv(table, os);
    io::detail_io::write_file(strengths_path, os.str());
  }

  std::optional<double> qcc_value;
  std::string qcc_state;
  if (qcc_node) {
    try {
      qcc_value = qcc(net, *qcc_node, params, threads);
    } catch (const Error& e) {
      if (e.code() != errc::degree_too_small) throw;
      qcc_state = "undefined";
    }
  }

  std::string body;
  if (format == "csv") {
    std::ostringstream os;
    if (qcc_node) {
      os << "qcm,qcf,pairs,passing,qcc_node,qcc\n"
         << io::format_double(report.qcm) << ','
         << io::format_double(report.qcf) << ',' << report.pair_count << ','
         << report.passing_pairs << ',' << *qcc_node << ','
         << (qcc_value ? io::format_double(*qcc_value) : "nan") << '\n';
    } else {
      io::write_report_csv(report, os);
    }
    body = os.str();
  } else {
    ordered_json j = io::to_json(report);
    if (qcc_node) {
      j["qcc"] = {{"node", *qcc_node}};
      if (qcc_value)
        j["qcc"]["value"] = *qcc_value;
      else
        j["qcc"] = {{"node", *qcc_node},
                    {"value", nullptr},
                    {"reason", qcc_state}};
    }
    body = j.dump(2) + "\n";
  }
  emit(output, body);
  if (!output.empty()) {
    ordered_json config{{"network", network_path},
                        {"epsilon", epsilon},
                        {"subset", subset_spec},
                        {"format", format}};
    if (qcc_node) config["qcc"] = *qcc_node;
    write_sidecar(output, "metrics", config);
  }
  return 0;
}

// ---------------------------------------------------------------------
// pmf

int cmd_pmf(const std::string& network_path, const std::string& output,
            unsigned threads) {
  const Network net = io::load_network(network_path);
  const PathLengthPmf pmf = hop_distance_pmf(net, threads);
  const std::string body = io::to_json(pmf).dump(2) + "\n";
  emit(output, body);
  if (!output.empty())
    write_sidecar(output, "pmf",
                  ordered_json{{"network", network_path}});
  return 0;
}

// ---------------------------------------------------------------------
// ensemble

int cmd_ensemble(const std::string& topology, const std::string& pmf_path,
                 bool auto_pmf, std::int64_t nodes, double avg_degree,
                 double radius, const std::string& dist_spec,
                 const std::string& epsilon_spec, const std::string& cbar_grid,
                 std::uint64_t mc_samples, std::uint64_t seed,
                 const std::string& output, unsigned threads) {
  const DistSpec dspec = parse_dist(dist_spec, /*sweep_mode=*/true);
  const std::vector<double> epsilons = parse_double_list(epsilon_spec);
  const std::vector<double> cbars = parse_grid(cbar_grid);

  std::optional<PathLengthPmf> pmf;
  if (topology != "complete") {
    if (!pmf_path.empty()) {
      pmf = io::load_pmf(pmf_path);
    } else if (auto_pmf) {
      Topology topo;
      if (topology == "er") {
        topo = erdos_renyi(nodes, avg_degree, substream_seed(seed, 0));
      } else if (topology == "waxman") {
        WaxmanParams wp;
        wp.nodes = nodes;
        wp.radius_km = radius;
        wp.seed = substream_seed(seed, 0);
        topo = waxman(wp);
      } else {
        throw Error(errc::invalid_parameter,
                    "unknown topology '" + topology + "'");
      }
      const Network net =
          sample_concurrences(topo, ConcurrenceDistribution::delta(1.0), 0);
      pmf = hop_distance_pmf(net, threads);
    } else {
      throw Error(errc::invalid_parameter,
                  "topology '" + topology + "' needs --pmf or --auto");
    }
  }

  ordered_json config{{"topology", topology},
                      {"distribution", dist_to_json(dspec)},
                      {"epsilon", epsilon_spec},
                      {"cbar_grid", cbar_grid},
                      {"seed", seed}};
  if (!pmf_path.empty()) config["pmf"] = pmf_path;
  if (auto_pmf) {
    config["auto"] = true;
    config["nodes"] = nodes;
    if (topology == "er") config["avg_degree"] = avg_degree;
    if (topology == "waxman") config["radius_km"] = radius;
  }
  const bool is_uniform =
      dspec.kind == ConcurrenceDistribution::Kind::uniform;
  if (is_uniform && topology != "complete") config["mc_samples"] = mc_samples;

  std::ostringstream os;
  os << csv_header_comment("ensemble", config);
  os << "cbar,sigma2,epsilon,qcm,qcf,qcm_se,qcf_se,method\n";
  std::uint64_t point = 0;
  for (double eps : epsilons) {
    for (double cbar : cbars) {
      EnsembleEstimate est;
      if (topology == "complete") {
        est = dspec.kind == ConcurrenceDistribution::Kind::delta
                  ? mean_complete_homogeneous(cbar, eps)
                  : mean_complete_uniform(cbar, dspec.sigma2, eps);
      } else {
        est = mean_from_pmf(*pmf, make_dist(dspec, cbar), eps,
                            is_uniform ? mc_samples : 0,
                            substream_seed(seed, 1000 + point), threads);
      }
      os << io::format_double(cbar) << ','
         << io::format_double(is_uniform ? dspec.sigma2 : 0.0) << ','
         << io::format_double(eps) << ',' << io::format_double(est.mean_qcm)
         << ',' << io::format_double(est.mean_qcf) << ','
         << io::format_double(est.qcm_se) << ','
         << io::format_double(est.qcf_se) << ',' << to_string(est.method)
         << '\n';
      ++point;
    }
  }
  emit(output, os.str());
  return 0;
}

// ---------------------------------------------------------------------
// regional

int cmd_regional(const std::string& network_path, double epsilon,
                 double region_radius, const std::string& output,
                 unsigned threads) {
  const Network net = io::load_network(network_path);
  const RegionPartition part = partition_regions(net, region_radius);
  const std::vector<RegionReport> regions =
      regional_qcm(net, part, {epsilon}, threads);

  const DensityReport density = density_report(
      static_cast<std::int64_t>(net.node_count()),
      part.disk_radius_km > 0.0 ? part.disk_radius_km : region_radius);
  std::cout << "# disk radius " << io::format_double(part.disk_radius_km)
            << " km, density " << io::format_double(density.rho)
            << " nodes per sq. km ("
            << (density.above_critical ? "above" : "below")
            << " critical " << io::format_double(kCriticalDensityPerKm2)
            << ")\n";

  ordered_json config{{"network", network_path},
                      {"epsilon", epsilon},
                      {"region_radius_km", region_radius}};
  std::ostringstream os;
  os << csv_header_comment("regional", config);
  io::write_regional_csv(regions, os);
  emit(output, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum network connectivity toolkit"};
  app.require_subcommand(1);

  // generate ----------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "sample a network family member");
  std::string g_topology, g_dist, g_output, g_config;
  std::int64_t g_nodes = 500;
  double g_avg_degree = 10.0, g_radius = 1000.0, g_gamma = 0.2,
         g_photons = 1000.0;
  double g_alpha = -1.0;  // <0 = model default 226/(2R)
  std::uint64_t g_seed = 0;
  auto* g_topo_opt = gen->add_option("--topology", g_topology,
                                     "complete | er | waxman");
  auto* g_nodes_opt = gen->add_option("--nodes", g_nodes, "node count");
  auto* g_deg_opt =
      gen->add_option("--avg-degree", g_avg_degree, "er: average degree");
  auto* g_radius_opt =
      gen->add_option("--radius", g_radius, "waxman: disk radius (km)");
  auto* g_alpha_opt =
      gen->add_option("--alpha", g_alpha, "waxman: edge-length parameter");
  auto* g_gamma_opt =
      gen->add_option("--gamma", g_gamma, "waxman: fiber loss (dB/km)");
  auto* g_photons_opt = gen->add_option("--photons", g_photons,
                                        "waxman: photons per attempt");
  auto* g_dist_opt = gen->add_option(
      "--dist", g_dist, "delta:<c0> or uniform:<mean>,<variance>");
  auto* g_seed_opt = gen->add_option("--seed", g_seed, "RNG seed");
  auto* g_output_opt =
      gen->add_option("--output", g_output, "network JSON path");
  gen->add_option("--config", g_config, "JSON config (flags override)");

  // metrics -----------------------------------------------------------
  auto* met = app.add_subcommand("metrics", "QCM/QCF (and QCC) of a network");
  std::string m_network, m_subset, m_format = "json", m_output, m_strengths,
              m_config;
  double m_epsilon = 0.0;
  NodeId m_qcc_node = 0;
  unsigned m_threads = 0;
  auto* m_net_opt = met->add_option("--network", m_network, "network JSON");
  auto* m_eps_opt =
      met->add_option("--epsilon", m_epsilon, "QIP task threshold");
  auto* m_subset_opt = met->add_option(
      "--subset", m_subset, "comma-separated node ids (default: all)");
  auto* m_qcc_opt =
      met->add_option("--qcc", m_qcc_node, "also report QCC of this node");
  auto* m_format_opt = met->add_option("--format", m_format, "json | csv");
  auto* m_output_opt =
      met->add_option("--output", m_output, "report path (default stdout)");
  auto* m_str_opt = met->add_option("--strengths", m_strengths,
                                    "also export the strength table CSV");
  met->add_option("--threads", m_threads, "worker threads (0 = auto)");
  met->add_option("--config", m_config, "JSON config (flags override)");

  // pmf ---------------------------------------------------------------
  auto* pm = app.add_subcommand("pmf", "hop-distance PMF of a network");
  std::string p_network, p_output, p_config;
  unsigned p_threads = 0;
  auto* p_net_opt = pm->add_option("--network", p_network, "network JSON");
  auto* p_output_opt =
      pm->add_option("--output", p_output, "PMF JSON path (default stdout)");
  pm->add_option("--threads", p_threads, "worker threads (0 = auto)");
  pm->add_option("--config", p_config, "JSON config (flags override)");

  // ensemble ----------------------------------------------------------
  auto* ens = app.add_subcommand(
      "ensemble", "mean QCM/QCF sweep over average edge concurrence");
  std::string e_topology, e_pmf, e_dist = "delta", e_epsilon = "0.3",
              e_grid = "0:0.01:1", e_output, e_config;
  bool e_auto = false;
  std::int64_t e_nodes = 500;
  double e_avg_degree = 10.0, e_radius = 1000.0;
  std::uint64_t e_mc = 100000, e_seed = 0;
  unsigned e_threads = 0;
  auto* e_topo_opt =
      ens->add_option("--topology", e_topology, "complete | er | waxman");
  auto* e_pmf_opt =
      ens->add_option("--pmf", e_pmf, "hop-length PMF JSON (from `pmf`)");
  auto* e_auto_opt = ens->add_flag(
      "--auto", e_auto, "simulate one realization to obtain the PMF");
  auto* e_nodes_opt = ens->add_option("--nodes", e_nodes, "auto: node count");
  auto* e_deg_opt = ens->add_option("--avg-degree", e_avg_degree,
                                    "auto er: average degree");
  auto* e_radius_opt =
      ens->add_option("--radius", e_radius, "auto waxman: disk radius (km)");
  auto* e_dist_opt = ens->add_option(
      "--dist", e_dist, "delta or uniform:<variance> (mean from grid)");
  auto* e_eps_opt = ens->add_option("--epsilon", e_epsilon,
                                    "threshold(s), comma-separated");
  auto* e_grid_opt =
      ens->add_option("--cbar-grid", e_grid, "start:step:stop");
  auto* e_mc_opt = ens->add_option("--mc-samples", e_mc,
                                   "MC samples per path length (uniform)");
  auto* e_seed_opt = ens->add_option("--seed", e_seed, "RNG seed");
  auto* e_output_opt =
      ens->add_option("--output", e_output, "sweep CSV path (default stdout)");
  ens->add_option("--threads", e_threads, "worker threads (0 = auto)");
  ens->add_option("--config", e_config, "JSON config (flags override)");

  // regional ----------------------------------------------------------
  auto* reg = app.add_subcommand("regional",
                                 "per-region QCM map of a positioned network");
  std::string r_network, r_output, r_config;
  double r_epsilon = 0.0, r_radius = 200.0;
  unsigned r_threads = 0;
  auto* r_net_opt = reg->add_option("--network", r_network, "network JSON");
  auto* r_eps_opt =
      reg->add_option("--epsilon", r_epsilon, "QIP task threshold");
  auto* r_radius_opt = reg->add_option("--region-radius", r_radius,
                                       "region scale r (km)");
  auto* r_output_opt =
      reg->add_option("--output", r_output, "map CSV path (default stdout)");
  reg->add_option("--threads", r_threads, "worker threads (0 = auto)");
  reg->add_option("--config", r_config, "JSON config (flags override)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (gen->parsed()) {
      if (!g_config.empty()) {
        const ordered_json cfg = load_config_file(g_config, "generate");
        cfg_get(cfg, "topology", g_topo_opt, g_topology);
        cfg_get(cfg, "nodes", g_nodes_opt, g_nodes);
        cfg_get(cfg, "avg_degree", g_deg_opt, g_avg_degree);
        cfg_get(cfg, "radius_km", g_radius_opt, g_radius);
        cfg_get(cfg, "alpha", g_alpha_opt, g_alpha);
        cfg_get(cfg, "gamma_db_per_km", g_gamma_opt, g_gamma);
        cfg_get(cfg, "photons_per_attempt", g_photons_opt, g_photons);
        if (g_dist_opt->count() == 0 && cfg.contains("distribution"))
          g_dist = dist_config_to_string(cfg.at("distribution"), false);
        cfg_get(cfg, "seed", g_seed_opt, g_seed);
        cfg_get(cfg, "output", g_output_opt, g_output);
      }
      detail::require(!g_topology.empty(), errc::invalid_parameter,
                      "generate needs --topology");
      detail::require(!g_dist.empty(), errc::invalid_parameter,
                      "generate needs --dist");
      detail::require(!g_output.empty(), errc::invalid_parameter,
                      "generate needs --output");
      return cmd_generate(g_topology, g_nodes, g_avg_degree, g_radius,
                          g_alpha > 0 ? std::optional<double>(g_alpha)
                                      : std::nullopt,
                          g_gamma, g_photons, g_dist, g_seed, g_output);
    }
    if (met->parsed()) {
      if (!m_config.empty()) {
        const ordered_json cfg = load_config_file(m_config, "metrics");
        cfg_get(cfg, "network", m_net_opt, m_network);
        cfg_get(cfg, "epsilon", m_eps_opt, m_epsilon);
        cfg_get(cfg, "subset", m_subset_opt, m_subset);
        cfg_get(cfg, "format", m_format_opt, m_format);
        cfg_get(cfg, "output", m_output_opt, m_output);
        cfg_get(cfg, "strengths", m_str_opt, m_strengths);
        if (m_qcc_opt->count() == 0 && cfg.contains("qcc")) {
          m_qcc_node = cfg.at("qcc").get<NodeId>();
          m_qcc_opt->add_result(std::to_string(m_qcc_node));
        }
      }
      detail::require(!m_network.empty(), errc::invalid_parameter,
                      "metrics needs --network");
      detail::require(m_eps_opt->count() > 0 || !m_config.empty(),
                      errc::invalid_parameter, "metrics needs --epsilon");
      return cmd_metrics(m_network, m_epsilon, m_subset,
                         m_qcc_opt->count() ? std::optional<NodeId>(m_qcc_node)
                                            : std::nullopt,
                         m_format, m_output, m_strengths, m_threads);
    }
    if (pm->parsed()) {
      if (!p_config.empty()) {
        const ordered_json cfg = load_config_file(p_config, "pmf");
        cfg_get(cfg, "network", p_net_opt, p_network);
        cfg_get(cfg, "output", p_output_opt, p_output);
      }
      detail::require(!p_network.empty(), errc::invalid_parameter,
                      "pmf needs --network");
      return cmd_pmf(p_network, p_output, p_threads);
    }
    if (ens->parsed()) {
      if (!e_config.empty()) {
        const ordered_json cfg = load_config_file(e_config, "ensemble");
        cfg_get(cfg, "topology", e_topo_opt, e_topology);
        cfg_get(cfg, "pmf", e_pmf_opt, e_pmf);
        cfg_get(cfg, "nodes", e_nodes_opt, e_nodes);
        cfg_get(cfg, "avg_degree", e_deg_opt, e_avg_degree);
        cfg_get(cfg, "radius_km", e_radius_opt, e_radius);
        if (e_dist_opt->count() == 0 && cfg.contains("distribution"))
          e_dist = dist_config_to_string(cfg.at("distribution"), true);
        cfg_get(cfg, "epsilon", e_eps_opt, e_epsilon);
        cfg_get(cfg, "cbar_grid", e_grid_opt, e_grid);
        cfg_get(cfg, "mc_samples", e_mc_opt, e_mc);
        cfg_get(cfg, "seed", e_seed_opt, e_seed);
        cfg_get(cfg, "output", e_output_opt, e_output);
        if (e_auto_opt->count() == 0 && cfg.contains("auto"))
          e_auto = cfg.at("auto").get<bool>();
      }
      detail::require(!e_topology.empty(), errc::invalid_parameter,
                      "ensemble needs --topology");
      return cmd_ensemble(e_topology, e_pmf, e_auto, e_nodes, e_avg_degree,
                          e_radius, e_dist, e_epsilon, e_grid, e_mc, e_seed,
                          e_output, e_threads);
    }
    if (reg->parsed()) {
      if (!r_config.empty()) {
        const ordered_json cfg = load_config_file(r_config, "regional");
        cfg_get(cfg, "network", r_net_opt, r_network);
        cfg_get(cfg, "epsilon", r_eps_opt, r_epsilon);
        cfg_get(cfg, "region_radius_km", r_radius_opt, r_radius);
        cfg_get(cfg, "output", r_output_opt, r_output);
      }
      detail::require(!r_network.empty(), errc::invalid_parameter,
                      "regional needs --network");
      return cmd_regional(r_network, r_epsilon, r_radius, r_output,
                          r_threads);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == errc::io_error ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
