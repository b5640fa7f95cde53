#pragma once

#include <cstdint>
#include <map>
#include <mutex>

#include "kmz/gcm.hpp"
#include "kmz/lambda.hpp"
#include "kmz/rootsys.hpp"

namespace kmz {

/// Symmetrized bilinear form (x, y) = sum_ij x_i q_i a_ij y_j on the root lattice.
Integer root_form(const CartanMatrix& a, const RootVec& x, const RootVec& y);

/// Positive-root multiplicities up to a height bound (Peterson recurrence).
class RootMultTable {
 public:
  explicit RootMultTable(const CartanMatrix& a) : a_(a) {}

  std::int64_t height() const { return height_; }
  void extend_to(std::int64_t max_height);

  /// Multiplicity of beta as a root (0 for non-roots); beta must be within the
  /// current height. Throws Error(HeightExceeded) otherwise.
  Integer mult(const RootVec& beta) const;
  /// Roots with positive multiplicity, ordered by RootVec.
  const std::map<RootVec, Integer>& roots() const { return mults_; }

 private:
  void compute(const RootVec& beta);

  CartanMatrix a_;
  std::int64_t height_ = 0;
  std::map<RootVec, Rational> c_;  // c_beta = sum_n mult(beta/n)/n
  std::map<RootVec, Integer> mults_;
};

RootMultTable peterson_mults(const CartanMatrix& a, std::int64_t max_height);

/// Multiplicity of lambda - beta via Freudenthal's recursion; table must reach
/// height(beta) (else Error(HeightExceeded)). memo may be shared across calls.
Integer freudenthal_mult(const CartanMatrix& a, const LambdaData& lam, const RootVec& beta, const RootMultTable& table,
                         std::map<RootVec, Integer>& memo);

/// Memoized, self-extending Freudenthal oracle for one (A, lambda). Safe for
/// concurrent use.
class MultiplicityOracle {
 public:
  MultiplicityOracle(const CartanMatrix& a, LambdaData lam);

  Integer mult(const RootVec& beta);
  bool is_weight(const RootVec& beta) { return mult(beta) > 0; }
  const RootMultTable& table() const { return table_; }

 private:
  CartanMatrix a_;
  LambdaData lam_;
  std::mutex mutex_;
  RootMultTable table_;
  std::map<RootVec, Integer> memo_;
};

}  // namespace kmz
