#include "kmz/integrality.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace kmz {

std::string to_string(ExperimentStatus s) {
  switch (s) {
    case ExperimentStatus::Ok: return "ok";
    case ExperimentStatus::Overflow: return "overflow";
    case ExperimentStatus::Error: return "error";
  }
  return "error";
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Inversion: return "inversion";
    case ExperimentKind::BaseCase: return "base_case";
    case ExperimentKind::Commuting: return "commuting";
  }
  return "inversion";
}

std::vector<VectorV> region_basis(const ModuleTruncation& trunc, const std::set<RootVec>& region) {
  std::vector<VectorV> out;
  for (const auto& b : region) {
    const WeightSpace& s = trunc.space(b);
    for (std::size_t k = 0; k < s.dim; ++k) out.push_back(VectorV::basis_vector(b, s.dim, k));
  }
  return out;
}

std::vector<VectorV> region_lattice_generators(const ModuleTruncation& trunc, const std::set<RootVec>& region) {
  std::vector<VectorV> out;
  for (const auto& b : region) {
    const WeightSpace& s = trunc.space(b);
    for (std::size_t k = 0; k < s.dim; ++k) {
      VectorV v;
      v.add(b, s.lattice.column(k));
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::set<RootVec> weights_up_to_depth(const ModuleTruncation& trunc, std::int64_t h) {
  std::set<RootVec> out;
  const std::size_t n = trunc.rank();
  std::vector<RootVec> layer{RootVec(std::vector<std::int64_t>(n, 0))};
  out.insert(layer.front());
  for (std::int64_t d = 1; d <= h; ++d) {
    std::set<RootVec> next;
    for (const auto& b : layer)
      for (std::size_t i = 0; i < n; ++i) {
        RootVec c = b + RootVec::simple(n, i);
        if (trunc.oracle().is_weight(c)) next.insert(c);
      }
    layer.assign(next.begin(), next.end());
    out.insert(next.begin(), next.end());
  }
  return out;
}

namespace {

std::set<RootVec> support_set(const VectorV& v) {
  std::set<RootVec> s;
  for (const auto& [b, c] : v.components()) s.insert(b);
  return s;
}

std::set<RootVec> support_set(const std::vector<VectorV>& vs) {
  std::set<RootVec> s;
  for (const auto& v : vs)
    for (const auto& [b, c] : v.components()) s.insert(b);
  return s;
}

// Plans, materializes and applies; on overflow retries once with a doubled
// margin. `required` collects the deepest weight any closure touched, which
// unlike the shared truncation depth does not depend on other cells.
struct Planner {
  ModuleTruncation& trunc;
  std::int64_t margin = 2;
  std::int64_t required = 0;

  void plan(const GroupWord& g, const std::set<RootVec>& support, std::int64_t m) {
    required = std::max(required, plan_and_materialize(trunc, g, support, m).required_depth);
  }

  VectorV apply(const GroupWord& g, const VectorV& v) {
    plan(g, support_set(v), margin);
    try {
      return apply_word(trunc, g, v);
    } catch (const TruncationOverflow&) {
      trunc.extend_depth(trunc.depth() + 2 * std::max<std::int64_t>(margin, 1));
      plan(g, support_set(v), 2 * margin);
      return apply_word(trunc, g, v);
    }
  }

  std::vector<VectorV> apply_all(const GroupWord& g, const std::vector<VectorV>& vs) {
    plan(g, support_set(vs), margin);
    std::vector<VectorV> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(apply(g, v));
    return out;
  }

  void prepare_extraction(const RootWitness& beta, Sign sign, const VectorV& v) {
    plan(chi_real_root(trunc.gcm(), beta, 1, sign), support_set(v), margin);
  }
};

bool all_integral(const std::vector<Rational>& params) {
  return std::all_of(params.begin(), params.end(), [](const Rational& t) { return is_integral(t); });
}

template <class Body>
ExperimentReport run_guarded(ExperimentReport report, Body&& body) {
  try {
    body(report);
  } catch (const TruncationOverflow& e) {
    report.status = ExperimentStatus::Overflow;
    report.error = e.what();
    report.agree = false;
  } catch (const Error& e) {
    report.status = ExperimentStatus::Error;
    report.error = e.what();
    report.agree = false;
  }
  return report;
}

}  // namespace

bool check_Lxx(ModuleTruncation& trunc, const RootWitness& alpha, const RootVec& mu) {
  const CartanMatrix& a = trunc.gcm();
  const RootVec root = weyl_act_root(a, alpha.word, RootVec::simple(a.rank(), alpha.index));
  const std::int64_t n = coroot_pairing(a, trunc.lambda(), mu, alpha);
  if (n <= 0) throw Error(Errc::PreconditionFailed, "<mu, alpha^vee> = " + std::to_string(n) + " is not positive");
  if (trunc.oracle().is_weight(mu - root))
    throw Error(Errc::PreconditionFailed, "mu + alpha is a weight (depth " + to_string(mu - root) + ")");
  const WeightSpace& s = trunc.space(mu);
  Planner planner{trunc};
  for (std::size_t k = 0; k < s.dim; ++k) {
    const VectorV v = VectorV::basis_vector(mu, s.dim, k);
    planner.prepare_extraction(alpha, Sign::Minus, v);
    const VectorV down = divided_power_extract(trunc, alpha, Sign::Minus, static_cast<std::uint64_t>(n), v);
    planner.prepare_extraction(alpha, Sign::Plus, down);
    const VectorV back = divided_power_extract(trunc, alpha, Sign::Plus, static_cast<std::uint64_t>(n), down);
    if (!(back == v)) return false;
  }
  return true;
}

bool check_commutator_identity(ModuleTruncation& trunc, std::size_t i, std::uint64_t k, const std::set<RootVec>& region) {
  if (k == 0) throw Error(Errc::InvalidArgument, "k must be positive");
  const std::size_t n = trunc.rank();
  std::int64_t need = 0;
  for (const auto& b : region) need = std::max(need, b.height() + static_cast<std::int64_t>(k));
  trunc.extend_depth(need);
  const auto fk = [&](std::uint64_t power, VectorV v) {
    for (std::uint64_t m = 0; m < power; ++m) v = act_f(trunc, i, v);
    return v;
  };
  for (const auto& b : region) {
    for (std::uint64_t m = 0; m <= k; ++m) trunc.space(b + RootVec::simple(n, i) * static_cast<std::int64_t>(m));
    const WeightSpace& s = trunc.space(b);
    const std::int64_t pairing = weight_pairing(trunc.gcm(), trunc.lambda(), i, b);
    for (std::size_t c = 0; c < s.dim; ++c) {
      const VectorV v = VectorV::basis_vector(b, s.dim, c);
      const VectorV lhs = act_e(trunc, i, fk(k, v)) - fk(k, act_e(trunc, i, v));
      const Rational scale = Rational(static_cast<long>(k)) * (pairing - static_cast<long>(k - 1));
      const VectorV rhs = fk(k - 1, v) * scale;
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

bool check_hwtstab(ModuleTruncation& trunc, const GroupWord& g) {
  const VectorV v = highest_weight_vector(trunc);
  Planner planner{trunc};
  return planner.apply(g, v) == v;
}

GroupWord inversion_product(const CartanMatrix& a, const InversionSet& inv, const std::vector<Rational>& params) {
  if (params.size() != inv.size())
    throw Error(Errc::InvalidArgument, "expected " + std::to_string(inv.size()) + " parameters, got " +
                                           std::to_string(params.size()));
  GroupWord g;
  for (std::size_t k = 0; k < inv.size(); ++k) g *= chi_real_root(a, inv.entries[k].witness(), params[k]);
  return g;
}

ExperimentReport base_case_experiment(ModuleTruncation& trunc, const RootWitness& beta, const Rational& t,
                                      std::int64_t depth_margin) {
  ExperimentReport report;
  report.kind = ExperimentKind::BaseCase;
  report.word = beta.word;
  report.word.letters.push_back(beta.index);
  const CartanMatrix& a = trunc.gcm();
  report.roots.emplace_back(weyl_act_root(a, beta.word, RootVec::simple(a.rank(), beta.index)), beta);
  report.params = {t};
  return run_guarded(std::move(report), [&](ExperimentReport& r) {
    Planner planner{trunc, depth_margin};
    const VectorV v0 = planner.apply(wtilde_reflection(a, beta), highest_weight_vector(trunc));
    const VectorV x = planner.apply(chi_real_root(a, beta, t), v0);
    r.certificate = membership_VZ(trunc, x);
    r.member = r.certificate.member;
    r.expected = is_integral(t);
    r.agree = r.member == r.expected;
    r.depth_used = planner.required;
  });
}

ExperimentReport inversion_experiment(ModuleTruncation& trunc, const WeylWord& w, const std::vector<Rational>& params,
                                      std::int64_t depth_margin) {
  ExperimentReport report;
  report.kind = ExperimentKind::Inversion;
  report.word = w;
  report.params = params;
  const CartanMatrix& a = trunc.gcm();
  const InversionSet inv = inversion_set(a, w);
  for (const auto& e : inv.entries) report.roots.emplace_back(e.root, e.witness());
  const GroupWord u = inversion_product(a, inv, params);
  return run_guarded(std::move(report), [&](ExperimentReport& r) {
    Planner planner{trunc, depth_margin};
    const VectorV v0 = planner.apply(wtilde(a, w), highest_weight_vector(trunc));
    const VectorV x = planner.apply(u, v0);
    r.certificate = membership_VZ(trunc, x);
    r.member = r.certificate.member;
    r.expected = all_integral(params);
    r.agree = r.member == r.expected;

    if (!w.letters.empty()) {
      const std::size_t i1 = w.letters.front();
      const RootVec mu = weyl_act_weight_depth(a, trunc.lambda(), w.suffix_from(1), RootVec(std::vector<std::int64_t>(a.rank(), 0)));
      const std::int64_t n = weight_pairing(a, trunc.lambda(), i1, mu);
      const RootWitness simple{WeylWord{}, i1};
      planner.prepare_extraction(simple, Sign::Plus, v0);
      VectorV expect = divided_power_extract(trunc, simple, Sign::Plus, static_cast<std::uint64_t>(std::max<std::int64_t>(n, 0)), v0);
      expect *= pow(params.front(), static_cast<unsigned long>(std::max<std::int64_t>(n, 0)));
      r.component_identity = x.component(mu) == expect.component(mu);
    }

    if (r.member && r.expected) {
      const std::set<RootVec> region = weights_up_to_depth(trunc, 1);
      bool ok = true;
      for (const auto& y : planner.apply_all(u, region_lattice_generators(trunc, region)))
        ok = ok && membership_VZ(trunc, y).member;
      r.lattice_preserved = ok;
    }
    r.depth_used = planner.required;
  });
}

ExperimentReport inversion_experiment(const ExperimentConfig& cfg) {
  ModuleTruncation trunc(cfg.gcm, cfg.lam, static_cast<std::int64_t>(cfg.word.length()) + cfg.depth_margin);
  return inversion_experiment(trunc, cfg.word, cfg.params, cfg.depth_margin);
}

bool uniqueness_probe(ModuleTruncation& trunc, const WeylWord& w, const std::vector<std::vector<Rational>>& tuples,
                      const std::set<RootVec>& region) {
  for (std::size_t p = 0; p < tuples.size(); ++p)
    for (std::size_t q = p + 1; q < tuples.size(); ++q)
      if (tuples[p] == tuples[q]) throw Error(Errc::PreconditionFailed, "tuples must be pairwise distinct");
  const CartanMatrix& a = trunc.gcm();
  const InversionSet inv = inversion_set(a, w);
  Planner planner{trunc};
  const VectorV v0 = planner.apply(wtilde(a, w), highest_weight_vector(trunc));
  std::vector<VectorV> images;
  for (const auto& t : tuples) images.push_back(planner.apply(inversion_product(a, inv, t), v0));
  std::vector<VectorV> basis;
  for (std::size_t p = 0; p < tuples.size(); ++p)
    for (std::size_t q = p + 1; q < tuples.size(); ++q) {
      if (!(images[p] == images[q])) continue;
      if (basis.empty()) basis = region_basis(trunc, region);
      const auto gp = planner.apply_all(inversion_product(a, inv, tuples[p]), basis);
      const auto gq = planner.apply_all(inversion_product(a, inv, tuples[q]), basis);
      if (gp == gq) return false;
    }
  return true;
}

ExperimentReport commuting_experiment(ModuleTruncation& trunc, const std::vector<RootWitness>& roots,
                                      const std::vector<Rational>& params, const std::set<RootVec>& region) {
  if (roots.size() != params.size()) throw Error(Errc::InvalidArgument, "one parameter per root is required");
  const CartanMatrix& a = trunc.gcm();
  const std::vector<VectorV> basis = region_basis(trunc, region);
  Planner planner{trunc};
  for (std::size_t p = 0; p < roots.size(); ++p)
    for (std::size_t q = p + 1; q < roots.size(); ++q)
      for (const Rational& s : {Rational(1), Rational(2)}) {
        const GroupWord g = chi_real_root(a, roots[p], 1);
        const GroupWord h = chi_real_root(a, roots[q], s);
        if (planner.apply_all(g * h, basis) != planner.apply_all(h * g, basis)) {
          const auto rp = weyl_act_root(a, roots[p].word, RootVec::simple(a.rank(), roots[p].index));
          const auto rq = weyl_act_root(a, roots[q].word, RootVec::simple(a.rank(), roots[q].index));
          throw Error(Errc::PairNotCommuting, "root groups of " + to_string(rp) + " and " + to_string(rq) + " do not commute");
        }
      }

  ExperimentReport report;
  report.kind = ExperimentKind::Commuting;
  report.params = params;
  GroupWord u;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    report.roots.emplace_back(weyl_act_root(a, roots[k].word, RootVec::simple(a.rank(), roots[k].index)), roots[k]);
    u *= chi_real_root(a, roots[k], params[k]);
  }
  return run_guarded(std::move(report), [&](ExperimentReport& r) {
    r.member = true;
    for (const auto& y : planner.apply_all(u, region_lattice_generators(trunc, region))) {
      MembershipResult m = membership_VZ(trunc, y);
      if (!m.member) {
        r.member = false;
        r.certificate = std::move(m);
        break;
      }
    }
    r.expected = all_integral(params);
    r.agree = r.member == r.expected;
    r.depth_used = planner.required;
  });
}

WeylWord alternating_word(std::size_t side, std::size_t length) {
  WeylWord w;
  for (std::size_t k = 0; k < length; ++k) w.letters.push_back(k % 2 == 0 ? side : 1 - side);
  return w;
}

std::vector<RootVec> rank2_omega(const CartanMatrix& a, std::size_t side, std::size_t count) {
  if (a.rank() != 2) throw Error(Errc::RankNotTwo, "rank is " + std::to_string(a.rank()));
  if (side > 1) throw Error(Errc::InvalidArgument, "side must be 1 or 2");
  const WeylWord w = alternating_word(side, count);
  std::vector<RootVec> out;
  for (std::size_t k = 0; k < count; ++k) {
    RootVec r = weyl_act_root(a, w.prefix(k), RootVec::simple(2, w.letters[k]));
    if (!r.is_positive() || std::find(out.begin(), out.end(), r) != out.end())
      throw Error(Errc::NotReduced, to_string(w.prefix(k + 1)) + " is not reduced");
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

struct Cell {
  bool base = false;
  WeylWord word;
  RootWitness root;
  std::vector<Rational> params;
};

void tuples(const std::vector<Rational>& values, std::size_t k, std::vector<Rational>& cur,
            std::vector<std::vector<Rational>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (const auto& v : values) {
    cur.push_back(v);
    tuples(values, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<ExperimentReport> scan(ModuleTruncation& trunc, const ScanGrid& grid) {
  std::vector<Cell> cells;
  for (const auto& w : grid.words) {
    std::vector<std::vector<Rational>> ts;
    std::vector<Rational> cur;
    tuples(grid.values, w.length(), cur, ts);
    for (auto& t : ts) cells.push_back({false, w, {}, std::move(t)});
  }
  for (const auto& r : grid.base_roots)
    for (const auto& t : grid.values) cells.push_back({true, {}, r, {t}});

  std::vector<ExperimentReport> reports(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c; (c = next.fetch_add(1)) < cells.size();) {
      const auto start = std::chrono::steady_clock::now();
      const Cell& cell = cells[c];
      ExperimentReport r = cell.base ? base_case_experiment(trunc, cell.root, cell.params.front(), grid.depth_margin)
                                     : inversion_experiment(trunc, cell.word, cell.params, grid.depth_margin);
      if (grid.timing)
        r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      reports[c] = std::move(r);
    }
  };
  const unsigned jobs = std::max(1u, grid.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return reports;
}

}  // namespace kmz
