#include "causal_sep/configuration.hpp"

#include <algorithm>
#include <limits>

#include "causal_sep/errors.hpp"

namespace causal_sep {

namespace {

void require_shape(int dim, int parties) {
  if (dim < 1) throw DomainError("dimension D must be >= 1, got " + std::to_string(dim));
  if (parties < 1) throw DomainError("party count N must be >= 1, got " + std::to_string(parties));
}

void require_same_shape(const Configuration& a, const Configuration& b) {
  if (a.dim() != b.dim() || a.parties() != b.parties()) {
    throw ShapeError("configuration shapes differ: " + to_string(a) + " (D=" +
                     std::to_string(a.dim()) + ") vs " + to_string(b) + " (D=" +
                     std::to_string(b.dim()) + ")");
  }
}

std::uint64_t require_budget(int dim, int parties, std::uint64_t budget) {
  std::uint64_t total = 0;
  try {
    total = checked_power(dim, parties);
  } catch (const OverflowError&) {
    throw BudgetExceeded("D^N overflows for D=" + std::to_string(dim) +
                         ", N=" + std::to_string(parties));
  }
  if (total > budget) {
    throw BudgetExceeded("enumeration of " + std::to_string(total) +
                         " configurations exceeds budget " + std::to_string(budget));
  }
  return total;
}

}  // namespace

std::string_view to_string(CouplingMode mode) noexcept {
  return mode == CouplingMode::Free ? "free" : "coupled";
}

CouplingMode parse_coupling(std::string_view text) {
  if (text == "free") return CouplingMode::Free;
  if (text == "coupled") return CouplingMode::Coupled;
  throw DomainError("unknown coupling mode '" + std::string(text) + "'");
}

Configuration::Configuration(int dim, std::vector<int> labels)
    : dim_(dim), labels_(std::move(labels)) {
  require_shape(dim, labels_.empty() ? 0 : static_cast<int>(labels_.size()));
  for (int label : labels_) {
    if (label < 0 || label >= dim) {
      throw DomainError("label " + std::to_string(label) + " outside [0, " +
                        std::to_string(dim - 1) + "]");
    }
  }
}

Configuration Configuration::from_index(int dim, int parties, std::uint64_t index) {
  require_shape(dim, parties);
  std::vector<int> labels(static_cast<std::size_t>(parties));
  const auto base = static_cast<std::uint64_t>(dim);
  for (int n = parties - 1; n >= 0; --n) {
    labels[static_cast<std::size_t>(n)] = static_cast<int>(index % base);
    index /= base;
  }
  if (index != 0) throw DomainError("configuration index outside D^N");
  return Configuration(dim, std::move(labels));
}

std::uint64_t Configuration::index() const noexcept {
  std::uint64_t idx = 0;
  for (int label : labels_) idx = idx * static_cast<std::uint64_t>(dim_) + static_cast<std::uint64_t>(label);
  return idx;
}

Configuration Configuration::shifted(int shift) const {
  std::vector<int> out(labels_.size());
  const int s = ((shift % dim_) + dim_) % dim_;
  std::transform(labels_.begin(), labels_.end(), out.begin(),
                 [&](int k) { return (k + s) % dim_; });
  return Configuration(dim_, std::move(out));
}

std::string to_string(const Configuration& c) {
  std::string s = "(";
  for (int n = 0; n < c.parties(); ++n) {
    if (n) s += ',';
    s += std::to_string(c[n]);
  }
  return s + ")";
}

std::uint64_t checked_power(int base, int exponent) {
  if (base < 0 || exponent < 0) throw DomainError("checked_power needs non-negative arguments");
  std::uint64_t result = 1;
  const auto b = static_cast<std::uint64_t>(base);
  for (int i = 0; i < exponent; ++i) {
    if (b != 0 && result > std::numeric_limits<std::uint64_t>::max() / b) {
      throw OverflowError(std::to_string(base) + "^" + std::to_string(exponent) +
                          " does not fit in 64 bits");
    }
    result *= b;
  }
  return result;
}

std::vector<Configuration> enumerate_configurations(int dim, int parties, std::uint64_t budget) {
  require_shape(dim, parties);
  const std::uint64_t total = require_budget(dim, parties, budget);
  std::vector<Configuration> out;
  out.reserve(total);
  std::vector<int> labels(static_cast<std::size_t>(parties), 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    out.emplace_back(dim, labels);
    for (int n = parties - 1; n >= 0; --n) {
      auto& digit = labels[static_cast<std::size_t>(n)];
      if (++digit < dim) break;
      digit = 0;
    }
  }
  return out;
}

bool is_completely_orthogonal(const Configuration& a, const Configuration& b) {
  require_same_shape(a, b);
  for (int n = 0; n < a.parties(); ++n) {
    if (a[n] == b[n]) return false;
  }
  return true;
}

std::vector<Configuration> cyclic_partners(const Configuration& c) {
  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(c.dim() - 1));
  for (int d = 1; d < c.dim(); ++d) out.push_back(c.shifted(d));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Configuration> completely_orthogonal_partners(const Configuration& c,
                                                          std::uint64_t budget) {
  const int dim = c.dim();
  const int parties = c.parties();
  if (dim < 2) return {};
  const std::uint64_t total = require_budget(dim - 1, parties, budget);

  // Odometer over the D-1 admissible labels at each party; admissible labels are
  // visited in increasing order so the output is already lexicographic.
  std::vector<int> choice(static_cast<std::size_t>(parties), 0);
  auto label_at = [&](int n) {
    const int k = choice[static_cast<std::size_t>(n)];
    return k < c[n] ? k : k + 1;
  };
  std::vector<Configuration> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::vector<int> labels(static_cast<std::size_t>(parties));
    for (int n = 0; n < parties; ++n) labels[static_cast<std::size_t>(n)] = label_at(n);
    out.emplace_back(dim, std::move(labels));
    for (int n = parties - 1; n >= 0; --n) {
      auto& digit = choice[static_cast<std::size_t>(n)];
      if (++digit < dim - 1) break;
      digit = 0;
    }
  }
  return out;
}

std::vector<Configuration> orthogonal_partners(const Configuration& c, CouplingMode mode,
                                               std::uint64_t budget) {
  return mode == CouplingMode::Free ? completely_orthogonal_partners(c, budget)
                                    : cyclic_partners(c);
}

ConfigCensus count_configurations(int dim, int parties, CouplingMode mode) {
  require_shape(dim, parties);
  ConfigCensus census{.dim = dim, .parties = parties};
  const std::uint64_t total = checked_power(dim, parties);
  if (mode == CouplingMode::Free) {
    // x = D^N / (1 + (D-1)^N); ceil in exact integer arithmetic.
    const std::uint64_t denom = checked_power(dim - 1, parties) + 1;
    census.distinct = total / denom + (total % denom != 0 ? 1 : 0);
  } else {
    census.distinct = checked_power(dim, parties - 1);
  }
  census.orthogonal = total - census.distinct;
  return census;
}

ConfigPartition partition_distinct(int dim, int parties, std::uint64_t budget) {
  require_shape(dim, parties);
  auto all = enumerate_configurations(dim, parties, budget);
  ConfigPartition out;
  std::vector<char> is_distinct(all.size(), 0);

  const std::uint64_t partner_count =
      dim >= 2 ? checked_power(dim - 1, parties) : std::uint64_t{0};

  for (std::size_t i = 0; i < all.size(); ++i) {
    const Configuration& c = all[i];
    bool clashes = false;
    if (partner_count < out.distinct.size()) {
      for (const auto& partner : completely_orthogonal_partners(c, budget)) {
        if (is_distinct[partner.index()]) {
          clashes = true;
          break;
        }
      }
    } else {
      clashes = std::any_of(out.distinct.begin(), out.distinct.end(),
                            [&](const Configuration& d) { return is_completely_orthogonal(c, d); });
    }
    if (clashes) {
      out.orthogonal.push_back(c);
    } else {
      is_distinct[i] = 1;
      out.distinct.push_back(c);
    }
  }
  return out;
}

}  // namespace causal_sep
