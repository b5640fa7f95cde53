#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kmz/config.hpp"
#include "kmz/report.hpp"

namespace kmz {

enum ExitCode : int { ExitOk = 0, ExitDisagreement = 1, ExitOverflow = 2, ExitConfig = 3, ExitInternal = 4 };

const std::vector<std::string>& command_names();

/// Runs one command and writes its report (JSON or CSV) to `out`; diagnostics go
/// to `err`. Never throws; failures map to exit codes.
int run_command(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Random products of positive root groups: each factor is chi_beta(t) for a
/// real root beta of height <= max_height, t with denominator <= 3.
std::vector<GroupWord> random_positive_words(const CartanMatrix& a, std::size_t count, std::size_t max_length,
                                             std::int64_t max_height, std::uint64_t seed);

}  // namespace kmz
