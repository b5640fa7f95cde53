#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kmz/gcm.hpp"

namespace kmz {

/// Integer coordinates over the simple roots. Used both for roots and for the
/// depth vector beta of a weight lambda - beta.
struct RootVec {
  std::vector<std::int64_t> coords;

  RootVec() = default;
  explicit RootVec(std::size_t rank) : coords(rank, 0) {}
  explicit RootVec(std::vector<std::int64_t> c) : coords(std::move(c)) {}
  RootVec(std::initializer_list<std::int64_t> c) : coords(c) {}

  static RootVec simple(std::size_t rank, std::size_t i);

  std::size_t rank() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }
  std::int64_t& operator[](std::size_t i) { return coords[i]; }

  std::int64_t height() const;
  bool is_zero() const;
  bool is_positive() const;
  bool is_negative() const;
  /// All coordinates nonnegative (zero allowed).
  bool is_nonnegative() const;
  /// Componentwise <=.
  bool dominated_by(const RootVec& other) const;

  RootVec operator+(const RootVec& o) const;
  RootVec operator-(const RootVec& o) const;
  RootVec operator-() const;
  RootVec operator*(std::int64_t k) const;

  auto operator<=>(const RootVec&) const = default;
  bool operator==(const RootVec&) const = default;
};

std::string to_string(const RootVec& v);

/// Word in the simple reflections; letters are 0-based indices. The element is
/// w_{letters[0]} w_{letters[1]} ... acting on the left.
struct WeylWord {
  std::vector<std::size_t> letters;

  std::size_t length() const { return letters.size(); }
  WeylWord inverse() const;
  WeylWord append(std::size_t i) const;
  WeylWord prefix(std::size_t k) const;
  WeylWord suffix_from(std::size_t k) const;

  auto operator<=>(const WeylWord&) const = default;
  bool operator==(const WeylWord&) const = default;
};

std::string to_string(const WeylWord& w);

/// A real root presented as w(alpha_i).
struct RootWitness {
  WeylWord word;
  std::size_t index = 0;

  bool operator==(const RootWitness&) const = default;
};

struct InversionEntry {
  RootVec root;
  WeylWord prefix;
  std::size_t index = 0;  // root = prefix(alpha_index)

  RootWitness witness() const { return {prefix, index}; }
};

/// Inversion set of a reduced word, in the order induced by the word.
struct InversionSet {
  std::vector<InversionEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<RootVec> roots() const;
};

/// <alpha_j, alpha_i^vee> pairing of a root-lattice vector with a simple coroot.
std::int64_t simple_pairing(const CartanMatrix& a, std::size_t i, const RootVec& beta);

RootVec reflect_root(const CartanMatrix& a, std::size_t i, const RootVec& beta);
/// Left action: letters applied right to left.
RootVec weyl_act_root(const CartanMatrix& a, const WeylWord& w, const RootVec& beta);

/// Positive real roots of height <= max_height with their canonical witnesses.
/// Breadth-first closure of the simple roots under simple reflections, layered
/// by witness length; inside a layer the lexicographically smallest witness
/// word w.(i) wins.
std::map<RootVec, RootWitness> real_roots_up_to_height(const CartanMatrix& a, std::int64_t max_height);

/// Canonical witness of a positive real root; throws Error(NotRealRoot).
RootWitness canonical_witness(const CartanMatrix& a, const RootVec& beta);

bool is_reduced(const CartanMatrix& a, const WeylWord& w);
/// Throws Error(NotReduced) if w is not reduced.
InversionSet inversion_set(const CartanMatrix& a, const WeylWord& w);
/// The reduced word w.(i) built from the canonical witness; beta is the last
/// element of its inversion set. Throws Error(NotRealRoot).
WeylWord find_word_containing_root(const CartanMatrix& a, const RootVec& beta);

/// All reduced words of length <= max_length, in length-lexicographic order.
std::vector<WeylWord> reduced_words_up_to(const CartanMatrix& a, std::size_t max_length);

struct LambdaData;

/// Depth of w(lambda - beta): the weight lambda - beta mapped by the Weyl
/// group, written again as lambda - beta'.
RootVec weyl_act_weight_depth(const CartanMatrix& a, const LambdaData& lam, const WeylWord& w, const RootVec& beta);

/// <lambda - beta, alpha_i^vee> = n_i - sum_j a_ij beta_j.
std::int64_t weight_pairing(const CartanMatrix& a, const LambdaData& lam, std::size_t i, const RootVec& beta);

/// <lambda - beta, alpha^vee> for the real root alpha = w(alpha_i), computed as
/// <w^{-1}(lambda - beta), alpha_i^vee>.
std::int64_t coroot_pairing(const CartanMatrix& a, const LambdaData& lam, const RootVec& beta, const RootWitness& alpha);

}  // namespace kmz
