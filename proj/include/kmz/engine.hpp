#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "kmz/hwmodule.hpp"

namespace kmz {

/// chi_{sign alpha_index}(t) = exp(t e_i) or exp(t f_i).
struct GroupAtom {
  Sign sign = Sign::Plus;
  std::size_t index = 0;
  Rational t;

  bool operator==(const GroupAtom&) const = default;
};

/// Product of atoms, written left to right and applied to vectors right to left.
struct GroupWord {
  std::vector<GroupAtom> atoms;

  std::size_t size() const { return atoms.size(); }
  bool empty() const { return atoms.empty(); }
  GroupWord inverse() const;
  GroupWord operator*(const GroupWord& rhs) const;
  GroupWord& operator*=(const GroupWord& rhs);

  bool operator==(const GroupWord&) const = default;
};

GroupWord atom_word(Sign sign, std::size_t i, const Rational& t);

/// w~_i(t) = chi_{alpha_i}(t) chi_{-alpha_i}(-1/t) chi_{alpha_i}(t); throws Error(ZeroParameter).
GroupWord wtilde_simple(std::size_t i, const Rational& t = 1);
/// w~ = w~_{i1} ... w~_{ik}; throws Error(NotReduced).
GroupWord wtilde(const CartanMatrix& a, const WeylWord& w);
/// h_{alpha_i}(t) = w~_i(t) w~_i(1)^{-1}; throws Error(ZeroParameter).
GroupWord h_element(std::size_t i, const Rational& t);
/// chi_{+-beta}(t) = w~ chi_{+-alpha_i}(t) w~^{-1} for beta = w(alpha_i).
GroupWord chi_real_root(const CartanMatrix& a, const RootWitness& beta, const Rational& t, Sign sign = Sign::Plus);
/// w~_beta = w~ w~_i w~^{-1}, a lift of the reflection in beta.
GroupWord wtilde_reflection(const CartanMatrix& a, const RootWitness& beta);

/// Parses whitespace-separated atoms `x[+i](p/q)`, `x[-i](p/q)` and macros
/// `wt(i1 i2 ...)`, `h(i, p/q)`, `xr(w=i1 i2 ..., i, p/q)` (1-based indices).
/// Throws Error(ParseError) with the offending position, or the errors of the
/// compiled macros.
GroupWord parse_group_word(const CartanMatrix& a, std::string_view text);
std::string to_string(const GroupWord& g);

/// Recognizes atoms k, k+1, k+2 as a reflection lift w~_i(t).
bool is_reflection_triple(const GroupWord& g, std::size_t k);

VectorV apply_atom(const ModuleTruncation& trunc, const GroupAtom& atom, const VectorV& v);
/// Right-to-left composition. TruncationOverflow carries the failing atom index.
VectorV apply_word(const ModuleTruncation& trunc, const GroupWord& g, const VectorV& v);

/// Every depth that applying g to a vector supported on `support` can touch.
///
/// Atoms on index i move a weight along its alpha_i-string (minus: down to the
/// string bound, plus: up toward v_lambda); a reflection triple w~_i(t) touches
/// the whole string but leaves its image only at the reflected weight. Only
/// weights of V are kept.
std::set<RootVec> weight_closure(const ModuleTruncation& trunc, const GroupWord& g, const std::set<RootVec>& support);

struct ClosurePlan {
  std::set<RootVec> weights;
  std::int64_t required_depth = 0;
};

/// Runs the closure and materializes every touched weight, first extending the
/// depth bound to required_depth + margin when needed.
ClosurePlan plan_and_materialize(ModuleTruncation& trunc, const GroupWord& g, const std::set<RootVec>& support,
                                 std::int64_t margin);

/// Coefficient of t^m in t -> chi_{sign beta}(t) v, recovered by Vandermonde
/// interpolation at t = 0, 1, ..., M where M bounds the polynomial degree.
VectorV divided_power_extract(const ModuleTruncation& trunc, const RootWitness& beta, Sign sign, std::uint64_t m,
                              const VectorV& v);

/// Degree bound for t -> chi_{sign beta}(t) v from real-root strings.
std::uint64_t extraction_degree_bound(const ModuleTruncation& trunc, const RootWitness& beta, Sign sign, const VectorV& v);

/// x_{sign beta}^{[m]} v computed by conjugation: w~ (e_i or f_i)^{(m)} w~^{-1} v.
VectorV conjugated_divided_power(const ModuleTruncation& trunc, const RootWitness& beta, Sign sign, std::uint64_t m,
                                 const VectorV& v);

}  // namespace kmz
