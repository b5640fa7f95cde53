#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "kmz/error.hpp"
#include "kmz/gcm.hpp"
#include "kmz/lambda.hpp"
#include "kmz/linalg.hpp"
#include "kmz/oracle.hpp"
#include "kmz/rootsys.hpp"

namespace kmz {

/// f_{letters[0]} f_{letters[1]} ... v_lambda (0-based letters).
struct FWord {
  std::vector<std::size_t> letters;

  RootVec content(std::size_t rank) const;
  auto operator<=>(const FWord&) const = default;
  bool operator==(const FWord&) const = default;
};

std::string to_string(const FWord& w);

/// The weight space V_{lambda - beta} with its basis, contravariant Gram
/// matrix, Z-lattice and the e/f maps to the spaces one step closer to v_lambda.
struct WeightSpace {
  RootVec beta;
  std::size_t dim = 0;
  std::vector<FWord> basis_words;
  RatMatrix gram;
  /// Column HNF; columns are a Z-basis of V_{lambda-beta,Z} in basis-word coordinates.
  RatMatrix lattice;
  /// f_j : V_{beta - alpha_j} -> V_beta (dim x dim_low); empty when beta_j = 0.
  std::vector<RatMatrix> f_from_below;
  /// e_j : V_beta -> V_{beta - alpha_j}; empty when beta_j = 0.
  std::vector<RatMatrix> e_to_below;
  /// True when the zero record came from the multiplicity oracle rather than a Gram rank.
  bool zero_from_oracle = false;
};

/// Exact element of the module, stored per weight space (depth -> coordinates).
/// Zero components are never stored.
class VectorV {
 public:
  using Components = std::map<RootVec, RatVector>;

  VectorV() = default;
  static VectorV basis_vector(const RootVec& beta, std::size_t dim, std::size_t k);

  const Components& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }
  /// Coordinates at beta, or an empty vector if the component vanishes.
  RatVector component(const RootVec& beta) const;
  std::vector<RootVec> support() const;

  void add(const RootVec& beta, const RatVector& coords, const Rational& scale = 1);
  VectorV& operator+=(const VectorV& rhs);
  VectorV& operator-=(const VectorV& rhs);
  VectorV& operator*=(const Rational& s);
  VectorV operator+(const VectorV& rhs) const;
  VectorV operator-(const VectorV& rhs) const;
  VectorV operator*(const Rational& s) const;

  bool operator==(const VectorV& rhs) const = default;

 private:
  Components components_;
};

/// Raised when an operation needs a nonzero weight space beyond the depth bound.
class TruncationOverflow : public Error {
 public:
  TruncationOverflow(const RootVec& weight, std::optional<std::size_t> atom, const std::string& what)
      : Error(Errc::TruncationOverflow, what), weight_(weight), atom_(atom) {}

  const RootVec& weight() const { return weight_; }
  std::optional<std::size_t> atom() const { return atom_; }

 private:
  RootVec weight_;
  std::optional<std::size_t> atom_;
};

/// Weight spaces of V^lambda with depth (height of beta) at most `depth`.
///
/// Spaces materialize on first access together with everything below them, so
/// the materialized set is always closed under decrease. Access is thread-safe.
class ModuleTruncation {
 public:
  struct Options {
    /// Record non-weights as dim-0 spaces straight from the oracle instead of
    /// computing a Gram rank for them.
    bool oracle_zero_shortcut = true;
  };

  ModuleTruncation(const CartanMatrix& a, const LambdaData& lam, std::int64_t depth);
  ModuleTruncation(const CartanMatrix& a, const LambdaData& lam, std::int64_t depth, Options options);

  const CartanMatrix& gcm() const { return a_; }
  const LambdaData& lambda() const { return lam_; }
  std::size_t rank() const { return a_.rank(); }
  std::int64_t depth() const;
  /// Raises the depth bound (never lowers it).
  void extend_depth(std::int64_t depth);

  /// Materializes beta if needed. Throws Error(DepthExceeded) when height(beta)
  /// exceeds the depth bound, Error(InvalidArgument) for negative coordinates.
  const WeightSpace& space(const RootVec& beta) const;
  bool is_materialized(const RootVec& beta) const;
  std::vector<RootVec> materialized() const;
  /// Eagerly builds every beta >= 0 with height <= depth.
  void materialize_all() const;

  MultiplicityOracle& oracle() const { return *oracle_; }

 private:
  const WeightSpace& build(const RootVec& beta) const;
  WeightSpace build_gram(const RootVec& beta) const;

  CartanMatrix a_;
  LambdaData lam_;
  Options options_;
  std::shared_ptr<MultiplicityOracle> oracle_;
  mutable std::recursive_mutex mutex_;
  std::int64_t depth_;
  mutable std::map<RootVec, std::unique_ptr<WeightSpace>> spaces_;
};

/// Contravariant form on FWords, by direct recursion <f_i u, v> = <u, e_i v>
/// (independent of the materialized bases). Throws Error(ContentMismatch).
Rational contravariant_form(const ModuleTruncation& trunc, const FWord& u, const FWord& v);

const WeightSpace& build_weight_space(const ModuleTruncation& trunc, const RootVec& beta);
std::size_t multiplicity(const ModuleTruncation& trunc, const RootVec& beta);

VectorV highest_weight_vector(const ModuleTruncation& trunc);
/// Coordinates of the word f_{i1} ... f_{ik} v_lambda.
VectorV word_vector(const ModuleTruncation& trunc, const FWord& w);

VectorV act_f(const ModuleTruncation& trunc, std::size_t i, const VectorV& v);
VectorV act_e(const ModuleTruncation& trunc, std::size_t i, const VectorV& v);

enum class Sign { Plus, Minus };

/// (1/m!) (e_i or f_i)^m v.
VectorV divided_power_act(const ModuleTruncation& trunc, Sign sign, std::size_t i, std::uint64_t m, const VectorV& v);

struct MembershipResult {
  bool member = true;
  /// Lattice coordinates per support weight.
  std::map<RootVec, RatVector> solutions;
  /// First non-integral coordinate (weight, index, value).
  std::optional<std::tuple<RootVec, std::size_t, Rational>> first_failure;
};

MembershipResult membership_VZ(const ModuleTruncation& trunc, const VectorV& v);

/// Upper bound on max{m : f_i^m V_{lambda-beta} != 0}: max(0, beta_i + <lambda-beta, alpha_i^vee>).
std::int64_t string_bound(const ModuleTruncation& trunc, const RootVec& beta, std::size_t i);

/// Exact alpha_i-string through the weight lambda - beta: `up` steps toward
/// v_lambda and `down` steps away from it remain weights (oracle-backed).
struct StringExtent {
  std::int64_t up = 0;
  std::int64_t down = 0;
};
StringExtent string_extent(const ModuleTruncation& trunc, const RootVec& beta, std::size_t i);

}  // namespace kmz
