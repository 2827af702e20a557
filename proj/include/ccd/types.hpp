#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ccd {

using Vertex = std::uint32_t;
using Label = std::uint32_t;
using Volume = std::int64_t;

inline constexpr Label kNoLabel = static_cast<Label>(-1);

// A community label per vertex. Labels are drawn from {0, ..., p-1}; their
// numeric values carry no meaning beyond equality.
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::vector<Label> labels) : labels_(std::move(labels)) {}

  // x_v = v for every vertex.
  static Assignment singletons(std::size_t p);
  // x_v = 0 for every vertex.
  static Assignment single_community(std::size_t p);

  [[nodiscard]] std::size_t size() const { return labels_.size(); }
  [[nodiscard]] Label operator[](std::size_t v) const { return labels_[v]; }
  Label &operator[](std::size_t v) { return labels_[v]; }

  [[nodiscard]] std::span<const Label> labels() const { return labels_; }
  [[nodiscard]] std::vector<Label> &mutable_labels() { return labels_; }

  // Number of distinct labels.
  [[nodiscard]] std::size_t community_count() const;

  // Throws std::invalid_argument unless size() == p and every label < p.
  void validate(std::size_t p) const;

  // Relabels communities 0, 1, ... in order of first appearance.
  [[nodiscard]] Assignment canonical() const;

  friend bool operator==(const Assignment &, const Assignment &) = default;

private:
  std::vector<Label> labels_;
};

} // namespace ccd
