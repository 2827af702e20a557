#include "ccd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>
#include <system_error>

#include <fmt/format.h>

namespace ccd::io {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  if (sep == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
        ++i;
      }
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
        ++i;
      }
      if (i > start) {
        out.push_back(line.substr(start, i - start));
      }
    }
    return out;
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      std::string_view field = line.substr(start, i - start);
      while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
        field.remove_suffix(1);
      }
      while (!field.empty() && field.front() == ' ') {
        field.remove_prefix(1);
      }
      out.push_back(field);
      start = i + 1;
    }
  }
  return out;
}

bool skippable(std::string_view line) {
  for (char c : line) {
    if (c == '#') {
      return true;
    }
    if (c != ' ' && c != '\t' && c != '\r') {
      return false;
    }
  }
  return true;
}

template <typename T>
T parse_integer(std::string_view s, const std::string &source, std::size_t line, const char *what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(source, line, fmt::format("bad {} '{}'", what, s));
  }
  return value;
}

double parse_real(std::string_view s, const std::string &source, std::size_t line, const char *what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(source, line, fmt::format("bad {} '{}'", what, s));
  }
  return value;
}

Vertex parse_vertex(std::string_view s, const std::string &source, std::size_t line) {
  const auto v = parse_integer<std::uint64_t>(s, source, line, "vertex index");
  if (v >= kNoLabel) {
    throw ParseError(source, line, fmt::format("vertex index {} out of range", v));
  }
  return static_cast<Vertex>(v);
}

std::ifstream open_input(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return in;
}

} // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

EdgeList parse_edge_list(std::istream &in, const std::string &source) {
  EdgeList out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (skippable(line)) {
      continue;
    }
    const auto fields = split(line, ' ');
    if (fields.size() != 3) {
      throw ParseError(source, number, fmt::format("expected 'u v w', got {} fields", fields.size()));
    }
    const Vertex u = parse_vertex(fields[0], source, number);
    const Vertex v = parse_vertex(fields[1], source, number);
    const double w = parse_real(fields[2], source, number, "weight");
    if (!std::isfinite(w) || w < 0.0) {
      throw ParseError(source, number, fmt::format("weight must be finite and non-negative, got {}", fields[2]));
    }
    out.edges.push_back({u, v, w});
    out.vertex_bound = std::max<std::size_t>(out.vertex_bound, std::max(u, v) + std::size_t{1});
  }
  return out;
}

EdgeList read_edge_list(const std::filesystem::path &path) {
  auto in = open_input(path);
  return parse_edge_list(in, path.string());
}

void write_edge_list(std::ostream &out, std::span<const WeightedEdge> edges) {
  out << "# u v w\n";
  for (const WeightedEdge &e : edges) {
    out << e.u << ' ' << e.v << ' ' << format_double(e.weight) << '\n';
  }
}

std::vector<std::pair<Vertex, Volume>> parse_volumes(std::istream &in, const std::string &source) {
  std::vector<std::pair<Vertex, Volume>> out;
  std::set<Vertex> seen;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (skippable(line)) {
      continue;
    }
    const auto fields = split(line, ' ');
    if (fields.size() != 2) {
      throw ParseError(source, number, fmt::format("expected 'v f', got {} fields", fields.size()));
    }
    const Vertex v = parse_vertex(fields[0], source, number);
    const auto f = parse_integer<Volume>(fields[1], source, number, "volume");
    if (f < 0) {
      throw ParseError(source, number, "volume must be non-negative");
    }
    if (!seen.insert(v).second) {
      throw ParseError(source, number, fmt::format("vertex {} listed twice", v));
    }
    out.emplace_back(v, f);
  }
  return out;
}

std::vector<std::pair<Vertex, Volume>> read_volumes(const std::filesystem::path &path) {
  auto in = open_input(path);
  return parse_volumes(in, path.string());
}

VertexVolumes expand_volumes(const std::vector<std::pair<Vertex, Volume>> &entries, std::size_t vertex_count) {
  std::vector<Volume> values(vertex_count, 0);
  for (const auto &[v, f] : entries) {
    if (v >= vertex_count) {
      throw std::invalid_argument(fmt::format("volume given for vertex {} but the graph has {} vertices", v,
                                              vertex_count));
    }
    values[v] = f;
  }
  return VertexVolumes(std::move(values));
}

void write_volumes(std::ostream &out, const VertexVolumes &volumes) {
  out << "# v f\n";
  for (Vertex v : volumes.special_set()) {
    out << v << ' ' << volumes[v] << '\n';
  }
}

void write_assignment(std::ostream &out, const Assignment &assignment) {
  out << "vertex,label\n";
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    out << v << ',' << assignment[v] << '\n';
  }
}

Assignment parse_assignment(std::istream &in, const std::string &source) {
  std::string line;
  std::size_t number = 0;
  bool header = false;
  std::vector<Label> labels;
  std::vector<bool> filled;
  while (std::getline(in, line)) {
    ++number;
    if (skippable(line)) {
      continue;
    }
    const auto fields = split(line, ',');
    if (!header) {
      if (fields.size() != 2 || fields[0] != "vertex" || fields[1] != "label") {
        throw ParseError(source, number, "expected header 'vertex,label'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 2) {
      throw ParseError(source, number, "expected 'vertex,label'");
    }
    const Vertex v = parse_vertex(fields[0], source, number);
    const auto label = parse_integer<std::uint64_t>(fields[1], source, number, "label");
    if (label >= kNoLabel) {
      throw ParseError(source, number, "label out of range");
    }
    if (v >= labels.size()) {
      labels.resize(v + std::size_t{1}, kNoLabel);
      filled.resize(v + std::size_t{1}, false);
    }
    if (filled[v]) {
      throw ParseError(source, number, fmt::format("vertex {} listed twice", v));
    }
    filled[v] = true;
    labels[v] = static_cast<Label>(label);
  }
  if (!header) {
    throw ParseError(source, number, "missing header 'vertex,label'");
  }
  for (std::size_t v = 0; v < filled.size(); ++v) {
    if (!filled[v]) {
      throw ParseError(source, number, fmt::format("vertex {} has no label", v));
    }
  }
  return Assignment(std::move(labels));
}

Assignment read_assignment(const std::filesystem::path &path) {
  auto in = open_input(path);
  return parse_assignment(in, path.string());
}

void write_trace_rows(std::ostream &out, std::size_t chain, const ChainTrace &trace) {
  for (const ChainRecord &r : trace.records) {
    out << chain << ',' << r.round << ',' << r.sweep << ',' << format_double(r.theta) << ','
        << format_double(r.lambda) << ',' << format_double(r.modularity) << ',' << format_double(r.hamiltonian) << ','
        << (r.infeasible ? 0 : 1) << ',' << r.community_count << '\n';
  }
}

std::vector<TraceRow> parse_trace(std::istream &in, const std::string &source) {
  std::vector<TraceRow> rows;
  std::string line;
  std::size_t number = 0;
  if (!std::getline(in, line) || std::string_view(line).substr(0, line.find('\r')) != kTraceHeader) {
    throw ParseError(source, 1, "missing trace header");
  }
  number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (skippable(line)) {
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw ParseError(source, number, fmt::format("expected 9 fields, got {}", f.size()));
    }
    TraceRow row;
    row.chain = parse_integer<std::size_t>(f[0], source, number, "chain");
    row.record.round = parse_integer<std::size_t>(f[1], source, number, "round");
    row.record.sweep = parse_integer<std::size_t>(f[2], source, number, "sweep");
    row.record.theta = parse_real(f[3], source, number, "theta");
    row.record.lambda = parse_real(f[4], source, number, "lambda");
    row.record.modularity = parse_real(f[5], source, number, "modularity");
    row.record.hamiltonian = parse_real(f[6], source, number, "hamiltonian");
    const auto feasible = parse_integer<int>(f[7], source, number, "feasible flag");
    if (feasible != 0 && feasible != 1) {
      throw ParseError(source, number, "feasible flag must be 0 or 1");
    }
    row.record.infeasible = feasible == 0;
    row.record.community_count = parse_integer<std::size_t>(f[8], source, number, "community count");
    rows.push_back(row);
  }
  return rows;
}

void KeyValueDoc::set(const std::string &key, const std::string &value) {
  for (auto &[k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

std::optional<std::string> KeyValueDoc::get(const std::string &key) const {
  for (const auto &[k, v] : entries_) {
    if (k == key) {
      return v;
    }
  }
  return std::nullopt;
}

void KeyValueDoc::write(std::ostream &out) const {
  for (const auto &[k, v] : entries_) {
    out << k << " = " << v << '\n';
  }
}

KeyValueDoc KeyValueDoc::parse(std::istream &in, const std::string &source) {
  KeyValueDoc doc;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (skippable(line)) {
      continue;
    }
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) {
      throw ParseError(source, number, "expected 'key = value'");
    }
    std::string value = line.substr(eq + 3);
    if (!value.empty() && value.back() == '\r') {
      value.pop_back();
    }
    doc.set(line.substr(0, eq), value);
  }
  return doc;
}

void AtomicFileSet::add(const std::string &name, std::string content) {
  files_.emplace_back(name, std::move(content));
}

void AtomicFileSet::commit() {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory_, ec);
  if (ec || !fs::is_directory(directory_)) {
    throw std::runtime_error("cannot create output directory " + directory_.string());
  }
  std::vector<fs::path> temps;
  auto discard = [&temps] {
    std::error_code ignored;
    for (const fs::path &t : temps) {
      fs::remove(t, ignored);
    }
  };
  for (const auto &[name, content] : files_) {
    const fs::path temp = directory_ / (name + ".tmp");
    temps.push_back(temp);
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) {
      discard();
      throw std::runtime_error("cannot write " + temp.string());
    }
  }
  for (const auto &[name, content] : files_) {
    if (fs::is_directory(directory_ / name)) {
      discard();
      throw std::runtime_error("cannot replace directory " + (directory_ / name).string());
    }
  }
  for (std::size_t i = 0; i < files_.size(); ++i) {
    fs::rename(temps[i], directory_ / files_[i].first, ec);
    if (ec) {
      discard();
      throw std::runtime_error("cannot rename into " + (directory_ / files_[i].first).string() + ": " +
                               ec.message());
    }
  }
  files_.clear();
}

} // namespace ccd::io
