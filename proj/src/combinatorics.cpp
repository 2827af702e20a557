#include "ccd/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ccd/objective.hpp"

namespace ccd {

namespace {

BigCount factorial(unsigned n) {
  BigCount f = 1;
  for (unsigned i = 2; i <= n; ++i) {
    f *= i;
  }
  return f;
}

BigCount binomial(unsigned n, unsigned k) {
  BigCount b = 1;
  for (unsigned i = 1; i <= k; ++i) {
    b = b * (n - k + i) / i;
  }
  return b;
}

// Row n of the Stirling triangle, entries k = 0..n.
std::vector<BigCount> stirling_row(unsigned n) {
  std::vector<BigCount> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<BigCount> next(i + 1, 0);
    for (unsigned k = 1; k <= i; ++k) {
      const BigCount carry = k < row.size() ? BigCount(k) * row[k] : BigCount(0);
      next[k] = carry + row[k - 1];
    }
    row = std::move(next);
  }
  return row;
}

} // namespace

BigCount stirling2(unsigned n, unsigned k) {
  if (k > n) {
    return 0;
  }
  return stirling_row(n)[k];
}

BigCount stirling2_alternating_sum(unsigned n, unsigned k) {
  BigCount sum = 0;
  for (unsigned j = 0; j <= k; ++j) {
    BigCount term = binomial(k, j) * boost::multiprecision::pow(BigCount(j), n);
    if ((k - j) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum / factorial(k);
}

BigCount ordered_bell(unsigned r) {
  const auto row = stirling_row(r);
  BigCount sum = 0;
  BigCount kfact = 1;
  for (unsigned k = 1; k <= r; ++k) {
    kfact *= k;
    sum += row[k] * kfact;
  }
  return sum;
}

double ordered_bell_approx(unsigned r) {
  return std::exp(std::lgamma(r + 1.0) - std::log(2.0) - (r + 1.0) * std::log(std::numbers::ln2));
}

BigCount count_feasible_closed_form(unsigned p, unsigned r) {
  if (r > p) {
    throw std::invalid_argument("count_feasible_closed_form: r exceeds p");
  }
  const auto special = stirling_row(r);
  const auto plain = stirling_row(p - r);
  BigCount sum = 0;
  BigCount kfact = 1;
  for (unsigned k = 1; k <= r; ++k) {
    kfact *= k;
    if (k < plain.size()) {
      sum += plain[k] * special[k] * kfact;
    }
  }
  return sum;
}

BigCount count_feasible_exact(unsigned p, unsigned r) {
  if (r > p) {
    throw std::invalid_argument("count_feasible_exact: r exceeds p");
  }
  // Partition the specials into k blocks, then drop each ordinary vertex into one of them.
  const auto special = stirling_row(r);
  BigCount sum = 0;
  for (unsigned k = 1; k <= r; ++k) {
    sum += special[k] * boost::multiprecision::pow(BigCount(k), p - r);
  }
  return sum;
}

BigCount count_partitions_up_to(unsigned p, unsigned r) {
  const auto row = stirling_row(p);
  BigCount sum = 0;
  for (unsigned k = 1; k <= std::min(p, r); ++k) {
    sum += row[k];
  }
  return sum;
}

double log_feasible_asymptotic_bound(unsigned p, unsigned r) {
  if (r == 0 || r > p) {
    throw std::invalid_argument("log_feasible_asymptotic_bound needs 0 < r <= p");
  }
  return (p - r) * std::log(static_cast<double>(r)) - std::log(2.0) - (r + 1.0) * std::log(std::numbers::ln2);
}

double feasible_fraction_bound(unsigned r) {
  if (r == 0) {
    throw std::invalid_argument("feasible_fraction_bound needs r > 0");
  }
  return std::exp(std::lgamma(r + 1.0) - r * std::log(static_cast<double>(r)) - std::log(2.0) -
                  (r + 1.0) * std::log(std::numbers::ln2));
}

double feasible_fraction_bound_stirling(unsigned r) {
  const double lead = std::sqrt(2.0 * std::numbers::pi) / (2.0 * std::numbers::ln2);
  return lead * std::sqrt(static_cast<double>(r)) / std::pow(std::numbers::e * std::numbers::ln2, r);
}

std::size_t for_each_partition(std::size_t p, const std::function<void(std::span<const Label>)> &visit) {
  if (p == 0) {
    visit({});
    return 1;
  }
  // a[i] <= 1 + max(a[0..i-1]); prefix_max[i] = max(a[0..i]).
  std::vector<Label> a(p, 0);
  std::vector<Label> prefix_max(p, 0);
  std::size_t count = 0;
  while (true) {
    visit(a);
    ++count;
    std::size_t i = p - 1;
    while (i > 0 && a[i] == prefix_max[i - 1] + 1) {
      --i;
    }
    if (i == 0) {
      return count;
    }
    a[i] += 1;
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < p; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::optional<std::pair<Assignment, double>> brute_force_optimum(const WeightedGraph &graph,
                                                                 const VertexVolumes &volumes, Volume tau,
                                                                 bool constrained) {
  const std::size_t p = graph.vertex_count();
  if (p > kBruteForceLimit) {
    throw std::invalid_argument("brute_force_optimum: instance too large (p = " + std::to_string(p) + ")");
  }
  if (volumes.size() != p) {
    throw std::invalid_argument("volume vector length does not match the graph");
  }
  std::optional<std::pair<Assignment, double>> best;
  Assignment x(std::vector<Label>(p, 0));
  for_each_partition(p, [&](std::span<const Label> labels) {
    std::copy(labels.begin(), labels.end(), x.mutable_labels().begin());
    if (constrained && infeasibility(volumes, x, tau)) {
      return;
    }
    const double q = modularity(graph, x);
    if (!best || q > best->second) {
      best.emplace(x, q);
    }
  });
  return best;
}

std::uint64_t count_feasible_enumerated(std::size_t p, std::size_t r) {
  if (p > kBruteForceLimit || r > p) {
    throw std::invalid_argument("count_feasible_enumerated: need r <= p <= " + std::to_string(kBruteForceLimit));
  }
  std::uint64_t count = 0;
  std::vector<bool> has_special(p);
  for_each_partition(p, [&](std::span<const Label> labels) {
    std::fill(has_special.begin(), has_special.end(), false);
    for (std::size_t v = 0; v < r; ++v) {
      has_special[labels[v]] = true;
    }
    for (std::size_t v = 0; v < p; ++v) {
      if (!has_special[labels[v]]) {
        return;
      }
    }
    ++count;
  });
  return count;
}

} // namespace ccd
