#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "kmz/commands.hpp"

namespace {

const std::map<std::string, std::string> descriptions = {
    {"classify", "symmetrizer and finite/affine/indefinite type of the GCM"},
    {"roots", "real roots up to a height, with witnesses"},
    {"word", "reducedness and inversion set of a Weyl word"},
    {"module", "eager truncation: bases, Gram matrices, lattices, oracle check"},
    {"apply", "apply a group word to hw or a basis vector and test lattice membership"},
    {"check", "Lxx, commutator and highest weight stabilizer checks"},
    {"integrality", "one inversion, base-case or commuting-family experiment"},
    {"scan", "grid of integrality experiments"},
    {"oracle-mults", "root multiplicities (Peterson) and weight multiplicities (Freudenthal)"},
};

std::string key_of(const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) return {};
  std::string k = line.substr(0, eq);
  k.erase(0, k.find_first_not_of(" \t"));
  k.erase(k.find_last_not_of(" \t") + 1);
  return k;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmz: exact Kac-Moody modules, group operators and integrality experiments"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::string> sets;
  std::string format, output;
  unsigned jobs = 0;
  bool timing = false;

  for (const auto& name : kmz::command_names()) {
    CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
    sub->add_option("-c,--config", config_path, "key = value config file");
    sub->add_option("-s,--set", sets, "override a config key, as key=value (repeatable)");
    sub->add_option("-j,--jobs", jobs, "parallel experiment cells");
    sub->add_option("-f,--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--output", output, "write the report here instead of stdout");
    sub->add_flag("--timing", timing, "record wall-clock milliseconds in reports");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kmz::ExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::vector<std::string> overrides = sets;
  if (jobs) overrides.push_back("jobs=" + std::to_string(jobs));
  if (!format.empty()) overrides.push_back("format=" + format);
  if (!output.empty()) overrides.push_back("output=" + output);
  if (timing) overrides.push_back("timing=true");

  kmz::RunConfig cfg;
  try {
    std::string text;
    std::filesystem::path base;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw kmz::Error(kmz::Errc::ParseError, "cannot open config '" + config_path + "'");
      std::ostringstream buf;
      buf << in.rdbuf();
      text = buf.str();
      base = std::filesystem::path(config_path).parent_path();
    }
    std::set<std::string> replaced;
    for (const auto& o : overrides) replaced.insert(key_of(o));
    std::ostringstream merged;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      const std::string k = key_of(line.substr(0, line.find('#')));
      merged << (replaced.count(k) ? "# overridden: " + line : line) << '\n';
    }
    for (const auto& o : overrides) merged << o << '\n';
    cfg = kmz::parse_config(merged.str(), base);
  } catch (const kmz::Error& e) {
    std::cerr << e.what() << '\n';
    return kmz::ExitConfig;
  }

  if (cfg.output.empty()) return kmz::run_command(command, cfg, std::cout, std::cerr);
  std::ostringstream report;
  const int code = kmz::run_command(command, cfg, report, std::cerr);
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write '" << cfg.output << "'\n";
    return kmz::ExitConfig;
  }
  out << report.str();
  return code;
}
