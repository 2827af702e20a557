#include "ccd/types.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace ccd {

Assignment Assignment::singletons(std::size_t p) {
  std::vector<Label> labels(p);
  std::iota(labels.begin(), labels.end(), Label{0});
  return Assignment(std::move(labels));
}

Assignment Assignment::single_community(std::size_t p) { return Assignment(std::vector<Label>(p, 0)); }

std::size_t Assignment::community_count() const {
  std::vector<bool> seen(labels_.size(), false);
  std::size_t count = 0;
  for (Label l : labels_) {
    if (l >= seen.size()) {
      seen.resize(static_cast<std::size_t>(l) + 1, false);
    }
    if (!seen[l]) {
      seen[l] = true;
      ++count;
    }
  }
  return count;
}

void Assignment::validate(std::size_t p) const {
  if (labels_.size() != p) {
    throw std::invalid_argument("assignment has " + std::to_string(labels_.size()) +
                                " labels, graph has " + std::to_string(p) + " vertices");
  }
  for (std::size_t v = 0; v < p; ++v) {
    if (labels_[v] >= p) {
      throw std::invalid_argument("label " + std::to_string(labels_[v]) + " of vertex " +
                                  std::to_string(v) + " is outside [0, " + std::to_string(p) + ")");
    }
  }
}

Assignment Assignment::canonical() const {
  std::vector<Label> remap;
  std::vector<Label> out(labels_.size());
  Label next = 0;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    const Label l = labels_[v];
    if (l >= remap.size()) {
      remap.resize(static_cast<std::size_t>(l) + 1, kNoLabel);
    }
    if (remap[l] == kNoLabel) {
      remap[l] = next++;
    }
    out[v] = remap[l];
  }
  return Assignment(std::move(out));
}

} // namespace ccd
