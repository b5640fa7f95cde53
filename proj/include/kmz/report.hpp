#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "kmz/integrality.hpp"

namespace kmz {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const RootVec& beta);
/// 1-based letters.
Json to_json(const WeylWord& w);
Json to_json(const RootWitness& w);
Json to_json(const FWord& w);
Json to_json(const RatMatrix& m);
Json to_json(const VectorV& v);
Json to_json(const MembershipResult& m);
Json gcm_json(const CartanMatrix& a);

/// {config, status, member, expected, agree, certificate, depth_used, ms, ...}
Json experiment_json(const ExperimentReport& r);

struct ScanSummary {
  std::size_t cells = 0;
  std::size_t ok = 0;
  std::size_t agree = 0;
  std::size_t disagree = 0;
  std::size_t overflow = 0;
  std::size_t error = 0;
};
ScanSummary summarize(const std::vector<ExperimentReport>& reports);
Json to_json(const ScanSummary& s);

/// One row per cell.
std::string scan_csv(const std::vector<ExperimentReport>& reports);

/// Canonical text: two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace kmz
