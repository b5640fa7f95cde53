#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kmz/engine.hpp"

namespace kmz {

struct ExperimentConfig {
  CartanMatrix gcm;
  LambdaData lam;
  WeylWord word;
  /// One per inversion root, in the order of the inversion set.
  std::vector<Rational> params;
  std::int64_t depth_margin = 2;
};

enum class ExperimentStatus { Ok, Overflow, Error };
std::string to_string(ExperimentStatus s);

enum class ExperimentKind { Inversion, BaseCase, Commuting };
std::string to_string(ExperimentKind k);

struct ExperimentReport {
  ExperimentKind kind = ExperimentKind::Inversion;
  WeylWord word;
  /// Roots of the compiled product, left to right, with their witnesses.
  std::vector<std::pair<RootVec, RootWitness>> roots;
  std::vector<Rational> params;

  ExperimentStatus status = ExperimentStatus::Ok;
  std::string error;
  bool member = false;
  bool expected = false;
  bool agree = false;
  MembershipResult certificate;
  std::int64_t depth_used = 0;
  std::int64_t ms = 0;

  /// The w''lambda component equals t_1^n x_{beta_1}^{[n]} (w~ v_lambda).
  std::optional<bool> component_identity;
  /// With integral parameters, u also maps the sampled lattice generators into V_Z.
  std::optional<bool> lattice_preserved;
};

/// Basis vectors of every weight space in `region` (materializing them).
std::vector<VectorV> region_basis(const ModuleTruncation& trunc, const std::set<RootVec>& region);
/// HNF lattice generators of every weight space in `region`.
std::vector<VectorV> region_lattice_generators(const ModuleTruncation& trunc, const std::set<RootVec>& region);
/// All beta >= 0 of height <= h that are weights.
std::set<RootVec> weights_up_to_depth(const ModuleTruncation& trunc, std::int64_t h);

/// x_alpha^{[n]} x_{-alpha}^{[n]} fixes every basis vector of V_mu, n = <mu, alpha^vee>.
/// Throws Error(PreconditionFailed) if mu + alpha is a weight or n <= 0.
bool check_Lxx(ModuleTruncation& trunc, const RootWitness& alpha, const RootVec& mu);

/// [e_i, f_i^k] = k f_i^{k-1} (alpha_i^vee - (k-1)) on every basis vector of the region.
bool check_commutator_identity(ModuleTruncation& trunc, std::size_t i, std::uint64_t k, const std::set<RootVec>& region);

/// g v_lambda = v_lambda; meant for products of positive root groups.
bool check_hwtstab(ModuleTruncation& trunc, const GroupWord& g);

/// chi_beta(t) w~_beta v_lambda in V_Z iff t in Z.
ExperimentReport base_case_experiment(ModuleTruncation& trunc, const RootWitness& beta, const Rational& t,
                                      std::int64_t depth_margin = 2);

/// u_(w) w~ v_lambda in V_Z iff all params are integers, u_(w) = prod_k chi_{beta_k}(t_k).
ExperimentReport inversion_experiment(ModuleTruncation& trunc, const WeylWord& w, const std::vector<Rational>& params,
                                      std::int64_t depth_margin = 2);
ExperimentReport inversion_experiment(const ExperimentConfig& cfg);

/// u_(w) as a compiled word for the given parameters.
GroupWord inversion_product(const CartanMatrix& a, const InversionSet& inv, const std::vector<Rational>& params);

/// True iff the operators u_(w) for the given (pairwise distinct) tuples all act
/// differently, on w~ v_lambda or else on the basis of `region`.
bool uniqueness_probe(ModuleTruncation& trunc, const WeylWord& w, const std::vector<std::vector<Rational>>& tuples,
                      const std::set<RootVec>& region);

/// Integrality on lattice generators of `region` for a product of commuting root
/// groups. Throws Error(PairNotCommuting).
ExperimentReport commuting_experiment(ModuleTruncation& trunc, const std::vector<RootWitness>& roots,
                                      const std::vector<Rational>& params, const std::set<RootVec>& region);

/// First `count` elements of Omega_side = {alpha_s, w_s alpha_s', w_s w_s' alpha_s, ...}
/// (side is 0-based). Throws Error(RankNotTwo), Error(NotReduced).
std::vector<RootVec> rank2_omega(const CartanMatrix& a, std::size_t side, std::size_t count);
WeylWord alternating_word(std::size_t side, std::size_t length);

struct ScanGrid {
  std::vector<WeylWord> words;
  std::vector<Rational> values;
  /// Real roots for base-case cells.
  std::vector<RootWitness> base_roots;
  std::int64_t depth_margin = 2;
  unsigned jobs = 1;
  bool timing = false;
};

/// Runs every (word, tuple in values^|word|) inversion cell and every
/// (root, value) base-case cell, in that order.
std::vector<ExperimentReport> scan(ModuleTruncation& trunc, const ScanGrid& grid);

}  // namespace kmz
