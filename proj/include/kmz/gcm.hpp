#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "kmz/rational.hpp"

namespace kmz {

/// A validated symmetrizable generalized Cartan matrix.
///
/// Indices are 0-based inside the library; text formats and reports use
/// 1-based indices. The symmetrizer q satisfies q_i a_ij = q_j a_ji and is
/// normalized to positive integers with gcd 1 on every indecomposable
/// component.
class CartanMatrix {
 public:
  std::size_t rank() const { return size_; }
  long operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  const std::vector<Integer>& symmetrizer() const { return symmetrizer_; }

  /// Entry (i, j) of diag(q) * A.
  Integer symmetrized(std::size_t i, std::size_t j) const { return symmetrizer_[i] * (*this)(i, j); }

  std::vector<std::vector<long>> rows() const;
  bool indecomposable() const;
  /// Connected components of the graph of nonzero off-diagonal entries.
  std::vector<std::vector<std::size_t>> components() const;
  CartanMatrix principal_submatrix(const std::vector<std::size_t>& indices) const;

  bool operator==(const CartanMatrix& rhs) const { return size_ == rhs.size_ && entries_ == rhs.entries_; }

 private:
  friend CartanMatrix validate_gcm(const std::vector<std::vector<long>>& entries);

  std::size_t size_ = 0;
  std::vector<long> entries_;
  std::vector<Integer> symmetrizer_;
};

/// Checks the GCM axioms and computes the symmetrizer by spanning-tree
/// propagation. Throws Error(AxiomViolation) or Error(NotSymmetrizable); the
/// latter names a cycle whose forward and backward products differ.
CartanMatrix validate_gcm(const std::vector<std::vector<long>>& entries);

enum class Kind { Finite, Affine, Indefinite };

struct MatrixType {
  Kind kind = Kind::Finite;
  bool hyperbolic = false;

  bool operator==(const MatrixType&) const = default;
};

struct ComponentType {
  std::vector<std::size_t> indices;
  MatrixType type;
};

std::string to_string(Kind kind);

/// Type of an indecomposable matrix; throws Error(NotIndecomposable).
MatrixType classify(const CartanMatrix& a);
/// Componentwise classification of an arbitrary (possibly decomposable) matrix.
std::vector<ComponentType> classify_components(const CartanMatrix& a);

/// Throws Error(NotIndecomposable) unless a is indecomposable.
void require_indecomposable(const CartanMatrix& a);

/// GCM text format: first line the size, then one row per line.
CartanMatrix parse_gcm(std::istream& in);
CartanMatrix parse_gcm_text(const std::string& text);
std::string format_gcm(const CartanMatrix& a);

}  // namespace kmz
