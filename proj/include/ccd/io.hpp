#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccd/graph.hpp"
#include "ccd/optimizer.hpp"
#include "ccd/types.hpp"

namespace ccd::io {

/// Malformed input; carries the source name and 1-based line.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &source, std::size_t line, const std::string &what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

struct EdgeList {
  std::vector<WeightedEdge> edges;
  /// 1 + largest index seen, 0 for an empty list.
  std::size_t vertex_bound = 0;
};

/// `u v w` per line, whitespace separated, 0-based; blank lines and lines
/// starting with '#' are skipped.
EdgeList parse_edge_list(std::istream &in, const std::string &source = "<edges>");
EdgeList read_edge_list(const std::filesystem::path &path);
void write_edge_list(std::ostream &out, std::span<const WeightedEdge> edges);

/// `v f` per line; vertices not listed have volume 0. Returns (vertex, volume)
/// pairs in file order. Duplicates and negative volumes are errors.
std::vector<std::pair<Vertex, Volume>> parse_volumes(std::istream &in, const std::string &source = "<volumes>");
std::vector<std::pair<Vertex, Volume>> read_volumes(const std::filesystem::path &path);
VertexVolumes expand_volumes(const std::vector<std::pair<Vertex, Volume>> &entries, std::size_t vertex_count);
/// Writes only the special vertices.
void write_volumes(std::ostream &out, const VertexVolumes &volumes);

/// CSV with header `vertex,label`, rows in vertex order.
void write_assignment(std::ostream &out, const Assignment &assignment);
/// Reads the CSV written above. Rows must cover vertices 0..p-1 exactly once;
/// arbitrary non-negative labels are accepted and kept as-is.
Assignment parse_assignment(std::istream &in, const std::string &source = "<assignment>");
Assignment read_assignment(const std::filesystem::path &path);

inline constexpr const char *kTraceHeader =
    "chain,round,sweep,theta,lambda,modularity,hamiltonian,feasible,n_communities";

/// One row per sweep record; `chain` is the caller's global chain index.
void write_trace_rows(std::ostream &out, std::size_t chain, const ChainTrace &trace);

struct TraceRow {
  std::size_t chain = 0;
  ChainRecord record;
};
std::vector<TraceRow> parse_trace(std::istream &in, const std::string &source = "<trace>");

/// Ordered `key = value` document.
class KeyValueDoc {
public:
  /// Replaces the value if the key already exists, otherwise appends.
  void set(const std::string &key, const std::string &value);
  void set_double(const std::string &key, double value) { set(key, format_double(value)); }
  void set_int(const std::string &key, std::int64_t value) { set(key, std::to_string(value)); }
  void set_bool(const std::string &key, bool value) { set(key, std::string(value ? "true" : "false")); }

  [[nodiscard]] std::optional<std::string> get(const std::string &key) const;
  [[nodiscard]] const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }

  void write(std::ostream &out) const;
  static KeyValueDoc parse(std::istream &in, const std::string &source = "<summary>");

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Stages file contents in memory and publishes them together: every file is
/// written to a temporary sibling, then renamed into place.
class AtomicFileSet {
public:
  explicit AtomicFileSet(std::filesystem::path directory) : directory_(std::move(directory)) {}

  void add(const std::string &name, std::string content);
  /// Throws std::runtime_error on any filesystem failure, removing temporaries.
  void commit();

private:
  std::filesystem::path directory_;
  std::vector<std::pair<std::string, std::string>> files_;
};

} // namespace ccd::io
