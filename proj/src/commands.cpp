#include "kmz/commands.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace kmz {

namespace {

struct Outcome {
  Json report;
  int code = ExitOk;
  std::string csv;
};

const CartanMatrix& need_gcm(const RunConfig& cfg) {
  if (!cfg.gcm) throw Error(Errc::ParseError, "config needs gcm or gcm_file");
  return *cfg.gcm;
}

const LambdaData& need_lambda(const RunConfig& cfg) {
  if (!cfg.lambda) throw Error(Errc::ParseError, "config needs lambda");
  return *cfg.lambda;
}

Json header(const std::string& command, const RunConfig& cfg) {
  Json j;
  j["command"] = command;
  if (cfg.gcm) j["gcm"] = gcm_json(*cfg.gcm);
  if (cfg.lambda) j["lambda"] = cfg.lambda->n;
  return j;
}

bool by_height(const RootVec& x, const RootVec& y) {
  return x.height() != y.height() ? x.height() < y.height() : x < y;
}

std::vector<RootVec> sorted_by_height(std::vector<RootVec> v) {
  std::sort(v.begin(), v.end(), by_height);
  return v;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  for (auto it = cells.begin(); it != cells.end(); ++it) s += (it == cells.begin() ? "" : ",") + *it;
  return s + "\n";
}

std::string quoted(const RootVec& b) { return "\"" + to_string(b) + "\""; }

Outcome cmd_classify(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  Outcome o;
  Json j = header("classify", cfg);
  Json sym = Json::array();
  for (const auto& q : a.symmetrizer()) sym.push_back(q.get_si());
  j["symmetrizer"] = std::move(sym);
  j["indecomposable"] = a.indecomposable();
  Json comps = Json::array();
  for (const auto& c : classify_components(a)) {
    Json idx = Json::array();
    for (auto i : c.indices) idx.push_back(i + 1);
    comps.push_back(Json{{"indices", std::move(idx)}, {"kind", to_string(c.type.kind)}, {"hyperbolic", c.type.hyperbolic}});
  }
  j["components"] = std::move(comps);
  if (a.indecomposable()) {
    const MatrixType t = classify(a);
    j["kind"] = to_string(t.kind);
    j["hyperbolic"] = t.hyperbolic;
  }
  o.report = std::move(j);
  return o;
}

Outcome cmd_roots(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  Outcome o;
  Json j = header("roots", cfg);
  j["height"] = cfg.height;
  const auto roots = real_roots_up_to_height(a, cfg.height);
  std::vector<RootVec> keys;
  for (const auto& [r, w] : roots) keys.push_back(r);
  Json list = Json::array();
  o.csv = "root,height,witness_word,witness_index\n";
  for (const auto& r : sorted_by_height(keys)) {
    const RootWitness& w = roots.at(r);
    list.push_back(Json{{"root", to_json(r)}, {"height", r.height()}, {"witness", to_json(w)}});
    o.csv += csv_row({quoted(r), std::to_string(r.height()), "\"" + to_string(w.word) + "\"", std::to_string(w.index + 1)});
  }
  j["real_roots"] = std::move(list);
  o.report = std::move(j);
  return o;
}

Outcome cmd_word(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  if (!cfg.word) throw Error(Errc::ParseError, "config needs word");
  Outcome o;
  Json j = header("word", cfg);
  j["word"] = to_json(*cfg.word);
  j["length"] = cfg.word->length();
  const bool reduced = is_reduced(a, *cfg.word);
  j["reduced"] = reduced;
  if (reduced) {
    Json inv = Json::array();
    for (const auto& e : inversion_set(a, *cfg.word).entries)
      inv.push_back(Json{{"root", to_json(e.root)}, {"witness", to_json(e.witness())}});
    j["inversion_set"] = std::move(inv);
  } else {
    j["inversion_set"] = nullptr;
  }
  o.report = std::move(j);
  return o;
}

Outcome cmd_module(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  ModuleTruncation trunc(a, need_lambda(cfg), cfg.depth, ModuleTruncation::Options{false});
  trunc.materialize_all();
  Outcome o;
  Json j = header("module", cfg);
  j["depth"] = cfg.depth;
  Json spaces = Json::array();
  bool all_agree = true;
  o.csv = "beta,dim,oracle_mult,agree\n";
  for (const auto& b : sorted_by_height(trunc.materialized())) {
    const WeightSpace& s = trunc.space(b);
    const Integer m = trunc.oracle().mult(b);
    const bool agree = Integer(static_cast<unsigned long>(s.dim)) == m;
    all_agree = all_agree && agree;
    if (s.dim == 0 && m == 0) continue;
    Json words = Json::array();
    for (const auto& w : s.basis_words) words.push_back(to_json(w));
    spaces.push_back(Json{{"beta", to_json(b)},
                          {"dim", s.dim},
                          {"oracle_mult", m.get_si()},
                          {"agree", agree},
                          {"basis_words", std::move(words)},
                          {"gram", to_json(s.gram)},
                          {"lattice", to_json(s.lattice)}});
    o.csv += csv_row({quoted(b), std::to_string(s.dim), to_string(m), agree ? "1" : "0"});
  }
  j["spaces"] = std::move(spaces);
  j["all_agree"] = all_agree;
  o.report = std::move(j);
  o.code = all_agree ? ExitOk : ExitDisagreement;
  return o;
}

VectorV parse_vector(const ModuleTruncation& trunc, const std::string& text) {
  // "hw" or "basis(b1 b2 ..., k)" with k 1-based.
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return c == '\t'; }), s.end());
  if (s == "hw") return highest_weight_vector(trunc);
  if (s.rfind("basis(", 0) == 0 && s.back() == ')') {
    const std::string inner = s.substr(6, s.size() - 7);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) throw Error(Errc::ParseError, "vector: expected basis(b1 ... bn, k)");
    const RootVec beta = parse_root_text(inner.substr(0, comma), trunc.rank());
    const std::int64_t k = std::stoll(inner.substr(comma + 1));
    const WeightSpace& ws = trunc.space(beta);
    if (k < 1 || static_cast<std::size_t>(k) > ws.dim)
      throw Error(Errc::ParseError, "vector: basis index out of range 1.." + std::to_string(ws.dim));
    return VectorV::basis_vector(beta, ws.dim, static_cast<std::size_t>(k - 1));
  }
  throw Error(Errc::ParseError, "vector: expected hw or basis(b1 ... bn, k)");
}

std::set<RootVec> support_of(const VectorV& v) {
  std::set<RootVec> s;
  for (const auto& [b, c] : v.components()) s.insert(b);
  return s;
}

Outcome cmd_apply(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  ModuleTruncation trunc(a, need_lambda(cfg), cfg.depth);
  const GroupWord g = parse_group_word(a, cfg.group_word);
  const VectorV v = parse_vector(trunc, cfg.vector);
  const ClosurePlan plan = plan_and_materialize(trunc, g, support_of(v), cfg.depth_margin);
  const VectorV x = apply_word(trunc, g, v);
  Outcome o;
  Json j = header("apply", cfg);
  j["group_word"] = to_string(g);
  j["atoms"] = g.size();
  j["input"] = to_json(v);
  j["required_depth"] = plan.required_depth;
  j["output"] = to_json(x);
  j["membership"] = to_json(membership_VZ(trunc, x));
  o.report = std::move(j);
  return o;
}

std::set<RootVec> region_of(const ModuleTruncation& trunc, std::int64_t depth) { return weights_up_to_depth(trunc, depth); }

Outcome cmd_check(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  ModuleTruncation trunc(a, need_lambda(cfg), cfg.depth);
  std::vector<std::string> checks = cfg.checks;
  if (checks.empty()) checks = {"lxx", "commutator", "hwtstab"};
  Outcome o;
  Json j = header("check", cfg);
  Json results;
  bool all = true;
  for (const auto& c : checks) {
    Json r;
    std::size_t cases = 0, passed = 0;
    Json failures = Json::array();
    if (c == "lxx") {
      const auto roots = real_roots_up_to_height(a, cfg.check_height);
      std::vector<RootVec> keys;
      for (const auto& [root, w] : roots) keys.push_back(root);
      const auto weights = region_of(trunc, cfg.depth);
      for (const auto& root : sorted_by_height(keys)) {
        const RootWitness& w = roots.at(root);
        for (const auto& mu : sorted_by_height({weights.begin(), weights.end()})) {
          const std::int64_t n = coroot_pairing(a, trunc.lambda(), mu, w);
          if (n < 1 || n > cfg.n_max || trunc.oracle().is_weight(mu - root)) continue;
          ++cases;
          if (check_Lxx(trunc, w, mu)) ++passed;
          else failures.push_back(Json{{"root", to_json(root)}, {"mu", to_json(mu)}, {"n", n}});
        }
      }
      r["check_height"] = cfg.check_height;
    } else if (c == "commutator") {
      const auto region = region_of(trunc, cfg.region_depth);
      for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::uint64_t k = 1; k <= cfg.k_max; ++k) {
          ++cases;
          if (check_commutator_identity(trunc, i, k, region)) ++passed;
          else failures.push_back(Json{{"i", i + 1}, {"k", k}});
        }
      r["region_depth"] = cfg.region_depth;
      r["k_max"] = cfg.k_max;
    } else {
      const auto words = random_positive_words(a, cfg.samples, 6, cfg.check_height, cfg.seed);
      for (std::size_t k = 0; k < words.size(); ++k) {
        ++cases;
        if (check_hwtstab(trunc, words[k])) ++passed;
        else failures.push_back(Json{{"sample", k}, {"group_word", to_string(words[k])}});
      }
      r["samples"] = cfg.samples;
      r["seed"] = cfg.seed;
    }
    r["cases"] = cases;
    r["passed"] = passed;
    r["failures"] = std::move(failures);
    all = all && cases == passed;
    results[c] = std::move(r);
  }
  j["checks"] = std::move(results);
  j["all_passed"] = all;
  o.report = std::move(j);
  o.code = all ? ExitOk : ExitDisagreement;
  return o;
}

int report_code(const ExperimentReport& r) {
  switch (r.status) {
    case ExperimentStatus::Ok: return r.agree ? ExitOk : ExitDisagreement;
    case ExperimentStatus::Overflow: return ExitOverflow;
    case ExperimentStatus::Error: return ExitInternal;
  }
  return ExitInternal;
}

Outcome cmd_integrality(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  ModuleTruncation trunc(a, need_lambda(cfg), cfg.depth);
  ExperimentReport r;
  if (!cfg.roots.empty()) {
    std::vector<RootWitness> ws;
    for (const auto& root : cfg.roots) ws.push_back(canonical_witness(a, root));
    r = commuting_experiment(trunc, ws, cfg.params, region_of(trunc, cfg.region_depth));
  } else if (cfg.root) {
    if (!cfg.t) throw Error(Errc::ParseError, "base-case experiment needs t");
    r = base_case_experiment(trunc, canonical_witness(a, *cfg.root), *cfg.t, cfg.depth_margin);
  } else {
    if (!cfg.word) throw Error(Errc::ParseError, "config needs word and params, root and t, or roots and params");
    if (cfg.params.size() != cfg.word->length())
      throw Error(Errc::ParseError, "params must have one entry per letter of word");
    r = inversion_experiment(trunc, *cfg.word, cfg.params, cfg.depth_margin);
  }
  Outcome o;
  Json j = header("integrality", cfg);
  j["experiment"] = experiment_json(r);
  o.report = std::move(j);
  o.csv = scan_csv({r});
  o.code = report_code(r);
  return o;
}

Outcome cmd_scan(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  ModuleTruncation trunc(a, need_lambda(cfg), cfg.depth);
  ScanGrid grid;
  grid.words = cfg.grid_words;
  if (cfg.grid_max_length)
    for (auto& w : reduced_words_up_to(a, *cfg.grid_max_length))
      if (w.length() > 0) grid.words.push_back(std::move(w));
  grid.values = cfg.grid_values;
  if (cfg.grid_base_height) {
    const auto roots = real_roots_up_to_height(a, *cfg.grid_base_height);
    std::vector<RootVec> keys;
    for (const auto& [r, w] : roots) keys.push_back(r);
    for (const auto& r : sorted_by_height(keys)) grid.base_roots.push_back(roots.at(r));
  }
  grid.depth_margin = cfg.depth_margin;
  grid.jobs = cfg.jobs;
  grid.timing = cfg.timing;
  for (const auto& w : grid.words)
    if (!is_reduced(a, w)) throw Error(Errc::NotReduced, to_string(w) + " is not reduced");
  const auto reports = scan(trunc, grid);
  const ScanSummary s = summarize(reports);

  Outcome o;
  Json j = header("scan", cfg);
  Json words = Json::array();
  for (const auto& w : grid.words) words.push_back(to_json(w));
  Json values = Json::array();
  for (const auto& t : grid.values) values.push_back(to_string(t));
  j["grid"] = Json{{"words", std::move(words)}, {"values", std::move(values)},
                   {"base_height", cfg.grid_base_height ? Json(*cfg.grid_base_height) : Json(nullptr)},
                   {"depth_margin", cfg.depth_margin}};
  j["summary"] = to_json(s);
  Json cells = Json::array();
  for (const auto& r : reports) cells.push_back(experiment_json(r));
  j["cells"] = std::move(cells);
  o.report = std::move(j);
  o.csv = scan_csv(reports);
  o.code = s.disagree ? ExitDisagreement : s.overflow ? ExitOverflow : s.error ? ExitInternal : ExitOk;
  return o;
}

Outcome cmd_oracle_mults(const RunConfig& cfg) {
  const CartanMatrix& a = need_gcm(cfg);
  const RootMultTable table = peterson_mults(a, cfg.height);
  const auto real = real_roots_up_to_height(a, cfg.height);
  Outcome o;
  Json j = header("oracle-mults", cfg);
  j["height"] = cfg.height;
  std::vector<RootVec> keys;
  for (const auto& [r, m] : table.roots()) keys.push_back(r);
  Json roots = Json::array();
  o.csv = "kind,beta,mult,real\n";
  for (const auto& r : sorted_by_height(keys)) {
    const bool is_real = real.count(r) > 0;
    roots.push_back(Json{{"root", to_json(r)}, {"mult", table.mult(r).get_si()}, {"real", is_real}});
    o.csv += csv_row({"root", quoted(r), to_string(table.mult(r)), is_real ? "1" : "0"});
  }
  j["roots"] = std::move(roots);
  if (cfg.lambda) {
    MultiplicityOracle oracle(a, *cfg.lambda);
    Json weights = Json::array();
    for (std::int64_t h = 0; h <= cfg.height; ++h) {
      std::vector<RootVec> layer;
      std::vector<std::int64_t> c(a.rank(), 0);
      // all nonnegative vectors of height h
      std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
        if (pos + 1 == a.rank()) {
          c[pos] = left;
          layer.emplace_back(c);
          return;
        }
        for (std::int64_t x = 0; x <= left; ++x) {
          c[pos] = x;
          rec(pos + 1, left - x);
        }
      };
      rec(0, h);
      for (const auto& b : sorted_by_height(layer)) {
        const Integer m = oracle.mult(b);
        if (m == 0) continue;
        weights.push_back(Json{{"beta", to_json(b)}, {"mult", m.get_si()}});
        o.csv += csv_row({"weight", quoted(b), to_string(m), ""});
      }
    }
    j["weights"] = std::move(weights);
  }
  o.report = std::move(j);
  return o;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"classify", "roots",       "word", "module",      "apply",
                                                 "check",    "integrality", "scan", "oracle-mults"};
  return names;
}

std::vector<GroupWord> random_positive_words(const CartanMatrix& a, std::size_t count, std::size_t max_length,
                                             std::int64_t max_height, std::uint64_t seed) {
  // Raw engine output keeps the sample identical across standard libraries.
  std::mt19937_64 rng(seed);
  const auto pick = [&](std::uint64_t n) { return rng() % n; };
  const auto roots = real_roots_up_to_height(a, max_height);
  std::vector<RootWitness> witnesses;
  for (const auto& [r, w] : roots) witnesses.push_back(w);
  std::vector<GroupWord> out;
  for (std::size_t s = 0; s < count; ++s) {
    GroupWord g;
    const std::size_t len = 1 + pick(max_length);
    for (std::size_t k = 0; k < len; ++k) {
      const RootWitness& w = witnesses[pick(witnesses.size())];
      long num = static_cast<long>(pick(9)) - 4;
      if (num == 0) num = 1;
      const long den = 1 + static_cast<long>(pick(3));
      g *= chi_real_root(a, w, fraction(num, den));
    }
    out.push_back(std::move(g));
  }
  return out;
}

int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Outcome o;
    if (command == "classify") o = cmd_classify(cfg);
    else if (command == "roots") o = cmd_roots(cfg);
    else if (command == "word") o = cmd_word(cfg);
    else if (command == "module") o = cmd_module(cfg);
    else if (command == "apply") o = cmd_apply(cfg);
    else if (command == "check") o = cmd_check(cfg);
    else if (command == "integrality") o = cmd_integrality(cfg);
    else if (command == "scan") o = cmd_scan(cfg);
    else if (command == "oracle-mults") o = cmd_oracle_mults(cfg);
    else throw Error(Errc::ParseError, "unknown command '" + command + "'");
    if (cfg.format == "csv") {
      if (o.csv.empty()) throw Error(Errc::ParseError, "format csv is not available for " + command);
      out << o.csv;
    } else {
      out << dump(o.report);
    }
    return o.code;
  } catch (const TruncationOverflow& e) {
    err << e.what() << '\n';
    return ExitOverflow;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == Errc::Internal ? ExitInternal : e.code() == Errc::TruncationOverflow ? ExitOverflow : ExitConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return ExitInternal;
  }
}

}  // namespace kmz
