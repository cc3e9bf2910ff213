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

#pragma once

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qconn/metrics.hpp"
#include "qconn/network.hpp"
#include "qconn/pathopt.hpp"
#include "qconn/spatial.hpp"

namespace qconn::io {

/// Shortest decimal form that round-trips the double. Keeps text outputs
/// byte-stable across runs.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace detail_io {

inline nlohmann::ordered_json parse_file(const std::string& path) {
  std::ifstream in(path);
  qconn::detail::require(in.good(), errc::io_error,
                         "cannot open " + path + " for reading");
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(errc::parse_error, path + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  qconn::detail::require(out.good(), errc::io_error,
                         "cannot open " + path + " for writing");
  out << body;
  qconn::detail::require(out.good(), errc::io_error,
                         "failed writing " + path);
}

}  // namespace detail_io

/// Network JSON: {"nodes": [{"id", "x"?, "y"?}], "edges": [{"u","v","c"}]}.
/// Positions are km; a node carries either both coordinates or neither.
inline nlohmann::ordered_json to_json(const Network& net) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const Node& n : net.nodes()) {
    nlohmann::ordered_json jn;
    jn["id"] = n.id;
    if (n.position) {
      jn["x"] = n.position->x;
      jn["y"] = n.position->y;
    }
    j["nodes"].push_back(std::move(jn));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : net.edges()) {
    j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"c", e.concurrence}});
  }
  return j;
}

inline Network network_from_json(const nlohmann::ordered_json& j) {
  qconn::detail::require(j.is_object() && j.contains("nodes") &&
                             j.contains("edges"),
                         errc::parse_error,
                         "network file needs top-level nodes and edges");
  std::vector<Node> nodes;
  for (const auto& jn : j.at("nodes")) {
    qconn::detail::require(jn.is_object() && jn.contains("id") &&
                               jn.at("id").is_number_integer(),
                           errc::parse_error, "node without integer id");
    Node n;
    n.id = jn.at("id").get<NodeId>();
    const bool has_x = jn.contains("x"), has_y = jn.contains("y");
    qconn::detail::require(has_x == has_y, errc::parse_error,
                           "node position needs both x and y");
    if (has_x)
      n.position = Position{jn.at("x").get<double>(),
                            jn.at("y").get<double>()};
    nodes.push_back(n);
  }
  std::vector<Edge> edges;
  for (const auto& je : j.at("edges")) {
    qconn::detail::require(je.is_object() && je.contains("u") &&
                               je.contains("v") && je.contains("c") &&
                               je.at("u").is_number_integer() &&
                               je.at("v").is_number_integer() &&
                               je.at("c").is_number(),
                           errc::parse_error,
                           "edge needs integer u, v and numeric c");
    edges.push_back(Edge{je.at("u").get<NodeId>(), je.at("v").get<NodeId>(),
                         je.at("c").get<double>()});
  }
  return build_network(std::move(nodes), std::move(edges));
}

inline void save_network(const Network& net, const std::string& path) {
  detail_io::write_file(path, to_json(net).dump(2) + "\n");
}

inline Network load_network(const std::string& path) {
  return network_from_json(detail_io::parse_file(path));
}

/// Hop-length PMF JSON: masses keyed by decimal hop count.
inline nlohmann::ordered_json to_json(const PathLengthPmf& pmf) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json q = nlohmann::ordered_json::object();
  for (const auto& [ell, mass] : pmf.q) q[std::to_string(ell)] = mass;
  j["q"] = std::move(q);
  j["ell_max"] = pmf.ell_max;
  j["disconnected_fraction"] = pmf.disconnected_fraction;
  j["pair_count"] = pmf.pair_count;
  return j;
}

inline PathLengthPmf pmf_from_json(const nlohmann::ordered_json& j) {
  PathLengthPmf pmf;
  qconn::detail::require(j.is_object() && j.contains("q") &&
                             j.at("q").is_object(),
                         errc::parse_error, "pmf file needs a q object");
  for (const auto& [key, value] : j.at("q").items()) {
    std::int32_t ell = 0;
    auto [p, ec] = std::from_chars(key.data(), key.data() + key.size(), ell);
    qconn::detail::require(ec == std::errc() && p == key.data() + key.size(),
                           errc::parse_error,
                           "pmf key '" + key + "' is not a hop count");
    pmf.q[ell] = value.get<double>();
  }
  if (j.contains("ell_max")) {
    pmf.ell_max = j.at("ell_max").get<std::int32_t>();
  } else {
    for (const auto& [ell, mass] : pmf.q)
      if (mass > 0.0) pmf.ell_max = std::max(pmf.ell_max, ell);
  }
  if (j.contains("disconnected_fraction"))
    pmf.disconnected_fraction = j.at("disconnected_fraction").get<double>();
  if (j.contains("pair_count"))
    pmf.pair_count = j.at("pair_count").get<std::uint64_t>();
  pmf.validate();
  return pmf;
}

inline void save_pmf(const PathLengthPmf& pmf, const std::string& path) {
  detail_io::write_file(path, to_json(pmf).dump(2) + "\n");
}

inline PathLengthPmf load_pmf(const std::string& path) {
  return pmf_from_json(detail_io::parse_file(path));
}

/// CSV export of a strength table: i,j,strength,hops,path with the path as
/// semicolon-joined node ids. Needs a table built with paths kept.
inline void write_strengths_csv(const StrengthTable& table,
                                std::ostream& out) {
  qconn::detail::require(table.has_paths(), errc::invalid_parameter,
                         "CSV export needs a table built with paths");
  out << "i,j,strength,hops,path\n";
  const NodeSet& s = table.subset();
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const NodeId i = s[a], j = s[b];
      out << i << ',' << j << ',' << format_double(table.strength(i, j))
          << ',' << table.hops(i, j) << ',';
      const auto& path = table.path(i, j);
      for (std::size_t k = 0; k < path.size(); ++k) {
        if (k > 0) out << ';';
        out << path[k];
      }
      out << '\n';
    }
  }
}

inline nlohmann::ordered_json to_json(const ConnectivityReport& r) {
  return {{"qcm", r.qcm},
          {"qcf", r.qcf},
          {"pairs", r.pair_count},
          {"passing", r.passing_pairs}};
}

inline void write_report_csv(const ConnectivityReport& r, std::ostream& out) {
  out << "qcm,qcf,pairs,passing\n"
      << format_double(r.qcm) << ',' << format_double(r.qcf) << ','
      << r.pair_count << ',' << r.passing_pairs << '\n';
}

/// Regional map rows, one per region; regions without pairs print nan.
inline void write_regional_csv(const std::vector<RegionReport>& regions,
                               std::ostream& out) {
  out << "region_index,center_x,center_y,node_count,qcm,qcf\n";
  for (const RegionReport& r : regions) {
    out << r.region << ',' << format_double(r.center.x) << ','
        << format_double(r.center.y) << ',' << r.node_count << ',';
    if (r.connectivity) {
      out << format_double(r.connectivity->qcm) << ','
          << format_double(r.connectivity->qcf) << '\n';
    } else {
      out << "nan,nan\n";
    }
  }
}

}  // namespace qconn::io
