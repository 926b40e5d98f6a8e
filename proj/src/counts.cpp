#include "mcbound/counts.hpp"

#include "mcbound/errors.hpp"

namespace mcbound {

std::uint64_t CountsRecord::correlated_total() const {
  std::uint64_t s = 0;
  for (std::size_t k = 0; k < d; ++k) s += at(k, k);
  return s;
}

std::uint64_t CountsRecord::uncorrelated_total() const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i != j) s += at(i, j);
    }
  }
  return s;
}

void CountsRecord::validate() const {
  if (d < 2) throw InputError("counts: d must be >= 2");
  if (coincidences.size() != d * d) {
    throw InputError("counts: coincidence matrix must be d x d");
  }
}

}  // namespace mcbound
