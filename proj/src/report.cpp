#include "kmz/report.hpp"

#include <sstream>

namespace kmz {

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const RootVec& beta) {
  Json j = Json::array();
  for (auto x : beta.coords) j.push_back(x);
  return j;
}

Json to_json(const WeylWord& w) {
  Json j = Json::array();
  for (auto i : w.letters) j.push_back(i + 1);
  return j;
}

Json to_json(const RootWitness& w) { return Json{{"word", to_json(w.word)}, {"index", w.index + 1}}; }

Json to_json(const FWord& w) {
  Json j = Json::array();
  for (auto i : w.letters) j.push_back(i + 1);
  return j;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Json coords_json(const RatVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

}  // namespace

Json to_json(const VectorV& v) {
  Json j = Json::array();
  for (const auto& [beta, coords] : v.components())
    j.push_back(Json{{"beta", to_json(beta)}, {"coords", coords_json(coords)}});
  return j;
}

Json to_json(const MembershipResult& m) {
  Json j;
  j["member"] = m.member;
  Json sol = Json::array();
  for (const auto& [beta, x] : m.solutions) sol.push_back(Json{{"beta", to_json(beta)}, {"lattice_coords", coords_json(x)}});
  j["solutions"] = std::move(sol);
  if (m.first_failure) {
    const auto& [beta, idx, value] = *m.first_failure;
    j["first_failure"] = Json{{"beta", to_json(beta)}, {"index", idx + 1}, {"value", to_string(value)}};
  } else {
    j["first_failure"] = nullptr;
  }
  return j;
}

Json gcm_json(const CartanMatrix& a) {
  Json j = Json::array();
  for (const auto& row : a.rows()) j.push_back(row);
  return j;
}

Json experiment_json(const ExperimentReport& r) {
  Json config;
  config["kind"] = to_string(r.kind);
  config["word"] = to_json(r.word);
  Json roots = Json::array();
  for (const auto& [root, w] : r.roots) roots.push_back(Json{{"root", to_json(root)}, {"witness", to_json(w)}});
  config["roots"] = std::move(roots);
  Json params = Json::array();
  for (const auto& t : r.params) params.push_back(to_string(t));
  config["params"] = std::move(params);

  Json j;
  j["config"] = std::move(config);
  j["status"] = to_string(r.status);
  j["member"] = r.member;
  j["expected"] = r.expected;
  j["agree"] = r.agree;
  j["certificate"] = r.status == ExperimentStatus::Ok ? to_json(r.certificate) : Json(nullptr);
  j["depth_used"] = r.depth_used;
  j["ms"] = r.ms;
  j["component_identity"] = r.component_identity ? Json(*r.component_identity) : Json(nullptr);
  j["lattice_preserved"] = r.lattice_preserved ? Json(*r.lattice_preserved) : Json(nullptr);
  j["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
  return j;
}

ScanSummary summarize(const std::vector<ExperimentReport>& reports) {
  ScanSummary s;
  s.cells = reports.size();
  for (const auto& r : reports) {
    switch (r.status) {
      case ExperimentStatus::Ok:
        ++s.ok;
        ++(r.agree ? s.agree : s.disagree);
        break;
      case ExperimentStatus::Overflow: ++s.overflow; break;
      case ExperimentStatus::Error: ++s.error; break;
    }
  }
  return s;
}

Json to_json(const ScanSummary& s) {
  return Json{{"cells", s.cells},       {"ok", s.ok},           {"agree", s.agree},
              {"disagree", s.disagree}, {"overflow", s.overflow}, {"error", s.error}};
}

std::string scan_csv(const std::vector<ExperimentReport>& reports) {
  std::ostringstream out;
  out << "kind,word,roots,params,status,member,expected,agree,depth_used,ms\n";
  const auto join_word = [](const WeylWord& w) {
    std::string s;
    for (std::size_t k = 0; k < w.letters.size(); ++k) s += (k ? " " : "") + std::to_string(w.letters[k] + 1);
    return s;
  };
  for (const auto& r : reports) {
    std::string roots, params;
    for (std::size_t k = 0; k < r.roots.size(); ++k) roots += (k ? " " : "") + to_string(r.roots[k].first);
    for (std::size_t k = 0; k < r.params.size(); ++k) params += (k ? " " : "") + to_string(r.params[k]);
    out << to_string(r.kind) << ',' << join_word(r.word) << ",\"" << roots << "\"," << params << ','
        << to_string(r.status) << ',' << r.member << ',' << r.expected << ',' << r.agree << ',' << r.depth_used << ','
        << r.ms << '\n';
  }
  return out.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace kmz
