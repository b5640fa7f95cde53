#include "kmz/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "kmz/error.hpp"

namespace kmz {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return parts;
}

std::vector<std::string> tokens(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::int64_t parse_int(std::string_view s) {
  const std::string t = trim(s);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "expected an integer, got '" + t + "'");
  }
  if (used != t.size()) throw Error(Errc::ParseError, "expected an integer, got '" + t + "'");
  return v;
}

std::int64_t parse_nonnegative(std::string_view s) {
  const std::int64_t v = parse_int(s);
  if (v < 0) throw Error(Errc::ParseError, "expected a nonnegative integer");
  return v;
}

std::vector<Rational> parse_rationals(std::string_view s) {
  std::vector<Rational> out;
  for (const auto& tok : tokens(s)) out.push_back(parse_rational(tok));
  return out;
}

bool parse_bool(std::string_view s) {
  const std::string t = trim(s);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw Error(Errc::ParseError, "expected true or false, got '" + t + "'");
}

CartanMatrix parse_inline_gcm(std::string_view s) {
  const auto rows = split(s, ';');
  std::ostringstream text;
  text << rows.size() << '\n';
  for (const auto& r : rows) text << r << '\n';
  return parse_gcm_text(text.str());
}

std::size_t require_rank(const RunConfig& cfg) {
  if (!cfg.gcm) throw Error(Errc::ParseError, "needs gcm or gcm_file on an earlier line");
  return cfg.gcm->rank();
}

}  // namespace

WeylWord parse_word_text(std::string_view text, std::size_t rank) {
  WeylWord w;
  for (const auto& tok : tokens(text)) {
    const std::int64_t i = parse_int(tok);
    if (i < 1 || static_cast<std::size_t>(i) > rank)
      throw Error(Errc::ParseError, "index " + tok + " out of range 1.." + std::to_string(rank));
    w.letters.push_back(static_cast<std::size_t>(i - 1));
  }
  return w;
}

RootVec parse_root_text(std::string_view text, std::size_t rank) {
  std::vector<std::int64_t> c;
  for (const auto& tok : tokens(text)) c.push_back(parse_int(tok));
  if (c.size() != rank)
    throw Error(Errc::ParseError, "expected " + std::to_string(rank) + " coordinates, got " + std::to_string(c.size()));
  return RootVec(std::move(c));
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "gcm",           "gcm_file",     "lambda",     "depth",        "height",    "depth_margin",
      "word",          "params",       "root",       "t",            "roots",     "group_word",
      "vector",        "grid_words",   "grid_max_length", "grid_values", "grid_base_height",
      "checks",        "check_height", "region_depth", "k_max",      "n_max",     "samples",
      "seed",          "jobs",         "format",     "output",       "timing"};
  return keys;
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"gcm", [&](const std::string& v) { cfg.gcm = parse_inline_gcm(v); }},
      {"gcm_file",
       [&](const std::string& v) {
         std::filesystem::path p = v;
         if (p.is_relative()) p = base_dir / p;
         std::ifstream in(p);
         if (!in) throw Error(Errc::ParseError, "cannot open '" + p.string() + "'");
         cfg.gcm = parse_gcm(in);
       }},
      {"lambda",
       [&](const std::string& v) {
         LambdaData lam;
         for (const auto& tok : tokens(v)) lam.n.push_back(parse_int(tok));
         validate_lambda(lam, require_rank(cfg));
         cfg.lambda = std::move(lam);
       }},
      {"depth", [&](const std::string& v) { cfg.depth = parse_nonnegative(v); }},
      {"height", [&](const std::string& v) { cfg.height = parse_nonnegative(v); }},
      {"depth_margin", [&](const std::string& v) { cfg.depth_margin = parse_nonnegative(v); }},
      {"word", [&](const std::string& v) { cfg.word = parse_word_text(v, require_rank(cfg)); }},
      {"params", [&](const std::string& v) { cfg.params = parse_rationals(v); }},
      {"root", [&](const std::string& v) { cfg.root = parse_root_text(v, require_rank(cfg)); }},
      {"t", [&](const std::string& v) { cfg.t = parse_rational(trim(v)); }},
      {"roots",
       [&](const std::string& v) {
         for (const auto& r : split(v, ';')) cfg.roots.push_back(parse_root_text(r, require_rank(cfg)));
       }},
      {"group_word", [&](const std::string& v) { cfg.group_word = v; }},
      {"vector", [&](const std::string& v) { cfg.vector = v; }},
      {"grid_words",
       [&](const std::string& v) {
         for (const auto& w : split(v, ';')) cfg.grid_words.push_back(parse_word_text(w, require_rank(cfg)));
       }},
      {"grid_max_length", [&](const std::string& v) { cfg.grid_max_length = parse_nonnegative(v); }},
      {"grid_values", [&](const std::string& v) { cfg.grid_values = parse_rationals(v); }},
      {"grid_base_height", [&](const std::string& v) { cfg.grid_base_height = parse_nonnegative(v); }},
      {"checks",
       [&](const std::string& v) {
         for (const auto& c : tokens(v)) {
           if (c != "lxx" && c != "commutator" && c != "hwtstab")
             throw Error(Errc::ParseError, "unknown check '" + c + "' (lxx, commutator, hwtstab)");
           cfg.checks.push_back(c);
         }
       }},
      {"check_height", [&](const std::string& v) { cfg.check_height = parse_nonnegative(v); }},
      {"region_depth", [&](const std::string& v) { cfg.region_depth = parse_nonnegative(v); }},
      {"k_max", [&](const std::string& v) { cfg.k_max = static_cast<std::uint64_t>(parse_nonnegative(v)); }},
      {"n_max", [&](const std::string& v) { cfg.n_max = parse_nonnegative(v); }},
      {"samples", [&](const std::string& v) { cfg.samples = static_cast<std::size_t>(parse_nonnegative(v)); }},
      {"seed", [&](const std::string& v) { cfg.seed = static_cast<std::uint64_t>(parse_nonnegative(v)); }},
      {"jobs",
       [&](const std::string& v) {
         const auto j = parse_nonnegative(v);
         if (j == 0) throw Error(Errc::ParseError, "jobs must be at least 1");
         cfg.jobs = static_cast<unsigned>(j);
       }},
      {"format",
       [&](const std::string& v) {
         if (v != "json" && v != "csv") throw Error(Errc::ParseError, "format must be json or csv");
         cfg.format = v;
       }},
      {"output", [&](const std::string& v) { cfg.output = v; }},
      {"timing", [&](const std::string& v) { cfg.timing = parse_bool(v); }},
  };

  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::ParseError, where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw Error(Errc::ParseError, where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) throw Error(Errc::ParseError, where + ": duplicate key '" + key + "'");
    try {
      it->second(value);
    } catch (const Error& e) {
      throw Error(Errc::ParseError, where + ": key '" + key + "': " + e.detail());
    }
    if (end == text.size()) break;
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace kmz
