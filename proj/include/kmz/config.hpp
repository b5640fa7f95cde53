#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kmz/gcm.hpp"
#include "kmz/lambda.hpp"
#include "kmz/rational.hpp"
#include "kmz/rootsys.hpp"

namespace kmz {

/// Parsed `key = value` configuration. Indices and words are 1-based in the
/// text and 0-based here.
struct RunConfig {
  std::optional<CartanMatrix> gcm;
  std::optional<LambdaData> lambda;

  std::int64_t depth = 4;
  std::int64_t height = 4;
  std::int64_t depth_margin = 2;

  std::optional<WeylWord> word;
  std::vector<Rational> params;
  std::optional<RootVec> root;
  std::optional<Rational> t;
  std::vector<RootVec> roots;
  std::string group_word;
  std::string vector = "hw";

  std::vector<WeylWord> grid_words;
  std::optional<std::size_t> grid_max_length;
  std::vector<Rational> grid_values;
  std::optional<std::int64_t> grid_base_height;

  std::vector<std::string> checks;
  std::int64_t check_height = 3;
  std::int64_t region_depth = 2;
  std::uint64_t k_max = 4;
  std::int64_t n_max = 4;
  std::size_t samples = 100;
  std::uint64_t seed = 1;

  unsigned jobs = 1;
  std::string format = "json";
  std::string output;
  bool timing = false;
};

/// Lines `key = value`; `#` starts a comment. Relative `gcm_file` paths are
/// resolved against base_dir. Throws Error(ParseError) naming line and key.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// The keys parse_config accepts, in documentation order.
const std::vector<std::string>& config_keys();

/// "1 2 1" -> 0-based word; validates indices against rank.
WeylWord parse_word_text(std::string_view text, std::size_t rank);
/// "1 1" -> coordinates.
RootVec parse_root_text(std::string_view text, std::size_t rank);

}  // namespace kmz
