#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mcbound {

struct ParityTally {
  std::uint64_t even = 0;
  std::uint64_t odd = 0;

  std::uint64_t shots() const noexcept { return even + odd; }
  friend bool operator==(const ParityTally&, const ParityTally&) = default;
};

/// Raw measurement record: a d x d coincidence matrix in the computational
/// basis (row = outcome of A, column = outcome of B) plus the even/odd tallies
/// of the two-copy parity measurement.
struct CountsRecord {
  std::size_t d = 0;
  std::vector<std::uint64_t> coincidences;  ///< row-major, d*d entries
  ParityTally parity;
  std::map<std::string, std::string> metadata;

  std::uint64_t at(std::size_t i, std::size_t j) const {
    return coincidences.at(i * d + j);
  }
  std::uint64_t& at(std::size_t i, std::size_t j) {
    return coincidences.at(i * d + j);
  }

  std::uint64_t correlated_total() const;
  std::uint64_t uncorrelated_total() const;
  std::uint64_t total() const { return correlated_total() + uncorrelated_total(); }

  /// Shape check; throws InputError.
  void validate() const;

  friend bool operator==(const CountsRecord&, const CountsRecord&) = default;
};

}  // namespace mcbound
