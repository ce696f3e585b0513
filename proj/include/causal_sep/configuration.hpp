#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace causal_sep {

/// Default cap on the number of configurations an enumeration may produce.
inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 20;

/// Whether the parties still interact at measurement time.
///
/// The mode swaps the two partner counts used by the criterion: the number of
/// completely orthogonal configurations summed in the ignorance probability and
/// the number of virtual transitions summed in the transition probability.
enum class CouplingMode { Free, Coupled };

std::string_view to_string(CouplingMode mode) noexcept;
CouplingMode parse_coupling(std::string_view text);

/// One base-state label per party, each in [0, D-1].
///
/// Ordering is lexicographic with party 0 most significant, so `index()` is the
/// row/column of this configuration in a D^N x D^N density matrix.
class Configuration {
 public:
  Configuration() = default;
  Configuration(int dim, std::vector<int> labels);
  Configuration(int dim, std::initializer_list<int> labels)
      : Configuration(dim, std::vector<int>(labels)) {}

  static Configuration from_index(int dim, int parties, std::uint64_t index);

  int dim() const noexcept { return dim_; }
  int parties() const noexcept { return static_cast<int>(labels_.size()); }
  std::span<const int> labels() const noexcept { return labels_; }
  int operator[](int party) const { return labels_[static_cast<std::size_t>(party)]; }

  std::uint64_t index() const noexcept;

  /// Every label shifted by `shift` modulo D.
  Configuration shifted(int shift) const;

  friend bool operator==(const Configuration& a, const Configuration& b) = default;
  friend std::strong_ordering operator<=>(const Configuration& a, const Configuration& b) {
    return a.labels_ <=> b.labels_;
  }

 private:
  int dim_ = 1;
  std::vector<int> labels_;
};

std::string to_string(const Configuration& c);

/// D^N with overflow detection.
std::uint64_t checked_power(int base, int exponent);

/// All D^N configurations in lexicographic order (last party fastest).
std::vector<Configuration> enumerate_configurations(
    int dim, int parties, std::uint64_t budget = kDefaultEnumerationBudget);

/// True iff the two configurations differ at every party.
bool is_completely_orthogonal(const Configuration& a, const Configuration& b);

/// Partners of `c` summed over by the criterion.
///
/// Free: all (D-1)^N completely orthogonal configurations.
/// Coupled: the D-1 uniform cyclic shifts c + d (mod D), d = 1..D-1.
/// Both lists are sorted lexicographically.
std::vector<Configuration> orthogonal_partners(
    const Configuration& c, CouplingMode mode,
    std::uint64_t budget = kDefaultEnumerationBudget);

/// The D-1 uniform cyclic shifts of `c`, sorted.
std::vector<Configuration> cyclic_partners(const Configuration& c);

/// All (D-1)^N completely orthogonal configurations of `c`, sorted.
std::vector<Configuration> completely_orthogonal_partners(
    const Configuration& c, std::uint64_t budget = kDefaultEnumerationBudget);

struct ConfigCensus {
  std::uint64_t distinct = 0;    ///< K
  std::uint64_t orthogonal = 0;  ///< K-bar
  int dim = 1;
  int parties = 1;
};

/// Counts of distinct and completely orthogonal configurations.
///
/// Free: K = ceil(D^N / (1 + (D-1)^N)), K-bar = D^N - K.
/// Coupled: K = D^(N-1), K-bar = (D-1) D^(N-1).
ConfigCensus count_configurations(int dim, int parties, CouplingMode mode);

struct ConfigPartition {
  std::vector<Configuration> distinct;
  std::vector<Configuration> orthogonal;
};

/// Greedy lexicographic cover: a configuration is distinct iff it is not
/// completely orthogonal to any earlier distinct configuration.
ConfigPartition partition_distinct(int dim, int parties,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace causal_sep
