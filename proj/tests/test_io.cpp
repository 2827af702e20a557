#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccd/io.hpp"
#include "ccd/objective.hpp"
#include "support.hpp"

using namespace ccd;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  std::string tmpl = (fs::temp_directory_path() / "ccd_io_XXXXXX").string();
  REQUIRE(mkdtemp(tmpl.data()) != nullptr);
  return tmpl;
}

std::size_t error_line(const std::string &text, io::EdgeList (*parse)(std::istream &, const std::string &)) {
  std::istringstream in(text);
  try {
    parse(in, "<test>");
  } catch (const io::ParseError &e) {
    return e.line();
  }
  return 0;
}

} // namespace

TEST_CASE("edge list parsing") {
  std::istringstream in("# header\n\n0 1 1.5\n  2 0 3\t\n# tail\n4 4 0.25\r\n");
  const io::EdgeList e = io::parse_edge_list(in);
  REQUIRE(e.edges.size() == 3);
  CHECK(e.vertex_bound == 5);
  CHECK(e.edges[0].weight == 1.5);
  CHECK(e.edges[1].u == 2);
  CHECK(e.edges[2].v == 4);
  CHECK(e.edges[2].weight == 0.25);

  std::istringstream empty("# nothing\n");
  CHECK(io::parse_edge_list(empty).vertex_bound == 0);
}

TEST_CASE("edge list errors carry line numbers") {
  CHECK(error_line("0 1 1\n0 1\n", io::parse_edge_list) == 2);
  CHECK(error_line("# c\n0 1 x\n", io::parse_edge_list) == 2);
  CHECK(error_line("0 1 1\n\n0 -1 1\n", io::parse_edge_list) == 3);
  CHECK(error_line("0 1 -2\n", io::parse_edge_list) == 1);
  CHECK(error_line("0 1 inf\n", io::parse_edge_list) == 1);
  CHECK(error_line("0 1 1 1\n", io::parse_edge_list) == 1);
  CHECK_THROWS(io::read_edge_list("/nonexistent/edges.txt"));
}

TEST_CASE("volume parsing") {
  std::istringstream in("# v f\n3 7\n0 2\n");
  const auto entries = io::parse_volumes(in);
  REQUIRE(entries.size() == 2);
  const VertexVolumes f = io::expand_volumes(entries, 5);
  CHECK(f.values()[0] == 2);
  CHECK(f.values()[1] == 0);
  CHECK(f.values()[3] == 7);
  CHECK(f.total() == 9);
  CHECK_THROWS_AS(io::expand_volumes(entries, 3), std::invalid_argument);

  std::istringstream dup("1 2\n1 3\n");
  CHECK_THROWS_AS(io::parse_volumes(dup), io::ParseError);
  std::istringstream neg("1 -2\n");
  CHECK_THROWS_AS(io::parse_volumes(neg), io::ParseError);
  std::istringstream frac("1 2.5\n");
  CHECK_THROWS_AS(io::parse_volumes(frac), io::ParseError);
}

TEST_CASE("assignment round trip") {
  CounterRng rng(1, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t p = 1 + rng.below(40);
    const Assignment x = test::random_assignment(rng, p, p);
    std::stringstream buf;
    io::write_assignment(buf, x);
    CHECK(io::parse_assignment(buf) == x);
  }
  std::istringstream text("vertex,label\n0,4\n1,4\n2,1\n");
  CHECK(io::parse_assignment(text) == Assignment(std::vector<Label>{4, 4, 1}));
}

TEST_CASE("assignment parse errors") {
  std::istringstream no_header("0,1\n");
  CHECK_THROWS_AS(io::parse_assignment(no_header), io::ParseError);
  std::istringstream gap("vertex,label\n0,1\n2,1\n");
  CHECK_THROWS_AS(io::parse_assignment(gap), io::ParseError);
  std::istringstream twice("vertex,label\n0,1\n0,2\n");
  CHECK_THROWS_AS(io::parse_assignment(twice), io::ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(io::parse_assignment(empty), io::ParseError);
}

TEST_CASE("doubles round-trip through 17 digits") {
  CounterRng rng(2, 0);
  for (int i = 0; i < 10000; ++i) {
    std::uint64_t bits = rng();
    double x = 0.0;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) {
      continue;
    }
    const std::string s = io::format_double(x);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(std::memcmp(&back, &x, sizeof x) == 0);
  }
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(14.0) == "14");
}

TEST_CASE("trace rows reload and re-verify") {
  CounterRng rng(3, 0);
  const WeightedGraph g = test::random_graph(rng, 20, 0.3);
  const VertexVolumes f = test::random_volumes(rng, 20, 4, 4);
  const ChainTrace t =
      constrained_optimize(g, f, 3, PenaltySchedule::at_end(), CoolingSchedule::exponential(), 12, 4, 9);
  std::stringstream buf;
  buf << io::kTraceHeader << '\n';
  io::write_trace_rows(buf, 7, t);
  const auto rows = io::parse_trace(buf);
  REQUIRE(rows.size() == t.records.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].chain == 7);
    CHECK(rows[i].record.modularity == t.records[i].modularity);
    CHECK(rows[i].record.hamiltonian == t.records[i].hamiltonian);
    CHECK(rows[i].record.theta == t.records[i].theta);
    CHECK(rows[i].record.infeasible == t.records[i].infeasible);
    CHECK(std::abs(rows[i].record.modularity - modularity(g, t.snapshots[i])) <= 1e-9);
  }
  std::istringstream bad("chain,round\n");
  CHECK_THROWS_AS(io::parse_trace(bad), io::ParseError);
}

TEST_CASE("key-value documents") {
  io::KeyValueDoc doc;
  doc.set("b", std::string("x y"));
  doc.set_int("a", -3);
  doc.set_double("c", 0.5);
  doc.set_bool("d", true);
  doc.set_int("a", 4);
  std::stringstream buf;
  doc.write(buf);
  CHECK(buf.str() == "b = x y\na = 4\nc = 0.5\nd = true\n");
  const io::KeyValueDoc back = io::KeyValueDoc::parse(buf);
  CHECK(back.entries() == doc.entries());
  CHECK(back.get("a") == std::optional<std::string>("4"));
  CHECK_FALSE(back.get("zzz").has_value());
  std::istringstream bad("no equals here\n");
  CHECK_THROWS_AS(io::KeyValueDoc::parse(bad), io::ParseError);
}

TEST_CASE("atomic file sets") {
  const fs::path dir = scratch_dir();
  io::AtomicFileSet files(dir / "out");
  files.add("a.txt", "alpha\n");
  files.add("b.txt", "beta\n");
  files.commit();
  std::ifstream a(dir / "out" / "a.txt");
  std::string line;
  std::getline(a, line);
  CHECK(line == "alpha");
  CHECK(fs::exists(dir / "out" / "b.txt"));
  CHECK_FALSE(fs::exists(dir / "out" / "a.txt.tmp"));

  // A regular file where the directory should be: nothing gets written.
  std::ofstream(dir / "blocker") << "x";
  io::AtomicFileSet blocked(dir / "blocker");
  blocked.add("a.txt", "alpha\n");
  CHECK_THROWS_AS(blocked.commit(), std::runtime_error);

  // A directory where a file should land: the rename fails and no temp remains.
  fs::create_directories(dir / "out2" / "c.txt");
  io::AtomicFileSet clash(dir / "out2");
  clash.add("a.txt", "alpha\n");
  clash.add("c.txt", "gamma\n");
  CHECK_THROWS_AS(clash.commit(), std::runtime_error);
  CHECK_FALSE(fs::exists(dir / "out2" / "c.txt.tmp"));
  CHECK_FALSE(fs::exists(dir / "out2" / "a.txt.tmp"));
  CHECK_FALSE(fs::exists(dir / "out2" / "a.txt"));
  fs::remove_all(dir);
}

TEST_CASE("generated instances survive the text formats") {
  CounterRng rng(4, 0);
  const WeightedGraph g = test::random_graph(rng, 15, 0.3, 1, 9, 0.2);
  const VertexVolumes f = test::random_volumes(rng, 15, 5, 9);
  std::stringstream edges;
  const auto list = g.edges();
  io::write_edge_list(edges, list);
  std::stringstream vols;
  io::write_volumes(vols, f);
  const io::EdgeList back = io::parse_edge_list(edges);
  const WeightedGraph h = build_graph(back.edges, 15);
  for (Vertex u = 0; u < 15; ++u) {
    for (Vertex v = 0; v < 15; ++v) {
      CHECK(h.weight(u, v) == g.weight(u, v));
    }
    CHECK(h.self_weight(u) == g.self_weight(u));
  }
  CHECK(io::expand_volumes(io::parse_volumes(vols), 15) == f);
}
