#pragma once

#include <cstdint>
#include <vector>

namespace kmz {

/// Dominant regular highest weight given by n_i = <lambda, alpha_i^vee> >= 1.
struct LambdaData {
  std::vector<std::int64_t> n;

  bool operator==(const LambdaData&) const = default;
};

/// Throws Error(InvalidArgument) unless lam has the right rank and every n_i >= 1.
void validate_lambda(const LambdaData& lam, std::size_t rank);

}  // namespace kmz
