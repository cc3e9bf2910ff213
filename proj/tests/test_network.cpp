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

#include "catch_utils.hpp"
#include "helpers.hpp"
#include "qconn/network.hpp"
#include "qconn/network_io.hpp"

using namespace qconn;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "qconn_test_network";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("minimal network builds and preserves fields") {
  const Network net = build_network({{0, {}}, {1, {}}}, {{0, 1, 0.5}});
  REQUIRE(net.node_count() == 2);
  REQUIRE(net.edge_count() == 1);
  REQUIRE(net.edges()[0].concurrence == 0.5);
  REQUIRE(net.has_node(1));
  REQUIRE_FALSE(net.has_node(2));
}

TEST_CASE("construction rejects invalid input") {
  REQUIRE_QCONN_ERROR(build_network({{0, {}}}, {{0, 0, 0.5}}),
                      errc::self_loop);
  REQUIRE_QCONN_ERROR(build_network({{0, {}}, {1, {}}}, {{0, 1, 1.2}}),
                      errc::concurrence_out_of_range);
  REQUIRE_QCONN_ERROR(build_network({{0, {}}, {1, {}}}, {{0, 1, -0.1}}),
                      errc::concurrence_out_of_range);
  REQUIRE_QCONN_ERROR(
      build_network({{0, {}}, {1, {}}}, {{0, 1, 0.5}, {1, 0, 0.7}}),
      errc::duplicate_edge);
  REQUIRE_QCONN_ERROR(build_network({{0, {}}, {1, {}}}, {{0, 2, 0.5}}),
                      errc::dangling_endpoint);
  REQUIRE_QCONN_ERROR(build_network({{0, {}}, {0, {}}}, {}),
                      errc::duplicate_node);
}

TEST_CASE("boundary concurrences 0 and 1 are valid") {
  const Network net =
      build_network({{0, {}}, {1, {}}, {2, {}}}, {{0, 1, 0.0}, {1, 2, 1.0}});
  REQUIRE(net.edge_count() == 2);
}

TEST_CASE("node ids can be arbitrary integers") {
  const Network net =
      build_network({{100, {}}, {7, {}}, {-3, {}}}, {{100, -3, 0.4}});
  REQUIRE(neighbor_set(net, 100) == NodeSet(std::vector<NodeId>{-3}));
  REQUIRE(neighbor_set(net, 7).empty());
}

TEST_CASE("neighbor_set on the star graph") {
  const Network star = testutil::make_star(4, 0.8);
  REQUIRE(neighbor_set(star, 0) == NodeSet(std::vector<NodeId>{1, 2, 3, 4}));
  REQUIRE(neighbor_set(star, 1) == NodeSet(std::vector<NodeId>{0}));

  const Network with_isolated = build_network({{0, {}}, {1, {}}, {2, {}}},
                                              {{0, 1, 0.5}});
  REQUIRE(neighbor_set(with_isolated, 2).empty());
  REQUIRE_QCONN_ERROR(neighbor_set(star, 9), errc::unknown_node);
}

TEST_CASE("neighbor_set is symmetric on random networks") {
  Rng rng(314159);
  for (int trial = 0; trial < 25; ++trial) {
    const Network net = testutil::random_test_network(rng);
    for (const Node& a : net.nodes()) {
      const NodeSet na = neighbor_set(net, a.id);
      for (NodeId b : na) {
        REQUIRE(neighbor_set(net, b).contains(a.id));
      }
    }
  }
}

TEST_CASE("node set rejects duplicates and ranks members") {
  REQUIRE_QCONN_ERROR(NodeSet(std::vector<NodeId>{1, 2, 1}), errc::duplicate_node);
  const NodeSet s(std::vector<NodeId>{5, 1, 3});
  REQUIRE(s.size() == 3);
  REQUIRE(s[0] == 1);
  REQUIRE(s.rank(5) == 2);
  REQUIRE_QCONN_ERROR(s.rank(4), errc::unknown_node);
}

TEST_CASE("save/load round-trip is the identity") {
  const auto path = temp_file("roundtrip.json");

  SECTION("minimal network") {
    const Network net = build_network({{0, {}}, {1, {}}}, {{0, 1, 0.5}});
    io::save_network(net, path.string());
    REQUIRE(io::load_network(path.string()) == net);
  }

  SECTION("positions survive at full precision") {
    const Network net = build_network(
        {{0, Position{0.1 + 0.2, -1.0 / 3.0}}, {1, Position{1e-17, 1234.5}}},
        {{0, 1, 0.123456789012345678}});
    io::save_network(net, path.string());
    const Network back = io::load_network(path.string());
    REQUIRE(back == net);
    REQUIRE(back.nodes()[0].position->x == 0.1 + 0.2);
    REQUIRE(back.nodes()[1].position->x == 1e-17);
  }

  SECTION("random networks") {
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
      const Network net = testutil::random_test_network(rng);
      io::save_network(net, path.string());
      REQUIRE(io::load_network(path.string()) == net);
    }
  }
}

TEST_CASE("loading bad files fails with the right category") {
  const auto path = temp_file("bad.json");

  SECTION("concurrence below zero is a validation failure") {
    std::ofstream(path) << R"({"nodes":[{"id":0},{"id":1}],)"
                        << R"("edges":[{"u":0,"v":1,"c":-0.1}]})";
    REQUIRE_QCONN_ERROR(io::load_network(path.string()),
                        errc::concurrence_out_of_range);
  }
  SECTION("half a position is a parse failure") {
    std::ofstream(path) << R"({"nodes":[{"id":0,"x":1.0}],"edges":[]})";
    REQUIRE_QCONN_ERROR(io::load_network(path.string()), errc::parse_error);
  }
  SECTION("non-integer id is a parse failure") {
    std::ofstream(path) << R"({"nodes":[{"id":0.5}],"edges":[]})";
    REQUIRE_QCONN_ERROR(io::load_network(path.string()), errc::parse_error);
  }
  SECTION("malformed JSON") {
    std::ofstream(path) << "{nodes: oops";
    REQUIRE_QCONN_ERROR(io::load_network(path.string()), errc::parse_error);
  }
  SECTION("missing file is an IO failure") {
    REQUIRE_QCONN_ERROR(io::load_network("/no/such/file.json"),
                        errc::io_error);
  }
  SECTION("unwritable target is an IO failure") {
    const Network net = build_network({{0, {}}}, {});
    REQUIRE_QCONN_ERROR(io::save_network(net, "/no/such/dir/out.json"),
                        errc::io_error);
  }
}
