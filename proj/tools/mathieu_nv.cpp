// mathieu-nv — reproduce the spin-pendulum sweeps as CSV/JSON files.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mnv/errors.hpp"
#include "mnv/sweep.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw mnv::ConfigError("cannot read config file " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mathieu spectra and NV spin-pendulum dynamics sweeps"};
  app.require_subcommand(1);

  struct Common {
    std::string preset, config, out, format, domain;
    int workers = 0;
    std::vector<std::string> sets;
  };
  std::map<std::string, Common> commons;
  const char* subcommands[] = {"spectrum", "dynamics", "lindblad", "bath",
                               "multilevel", "coherence", "classical"};
  for (const char* name : subcommands) {
    CLI::App* sub = app.add_subcommand(name);
    Common& c = commons[name];
    sub->add_option("--preset", c.preset, "named figure preset (fig1..fig12)");
    sub->add_option("--config", c.config, "flat key = value config file");
    sub->add_option("--out", c.out, "output path stem");
    sub->add_option("--format", c.format, "csv or json");
    sub->add_option("--workers", c.workers, "worker thread count");
    sub->add_option("--overlap-domain", c.domain, "full or half (where applicable)");
    sub->add_option("--set", c.sets, "extra key=value overrides")->take_all();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const Common& c = commons[name];

    std::map<std::string, std::string> file_entries;
    if (!c.config.empty()) file_entries = mnv::sweep::parse_config_text(read_file(c.config));

    std::map<std::string, std::string> cli_entries;
    for (const std::string& kv : c.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw mnv::ConfigError("--set expects key=value, got '" + kv + "'");
      cli_entries[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (!c.out.empty()) cli_entries["out"] = c.out;
    if (!c.format.empty()) cli_entries["format"] = c.format;
    if (c.workers != 0) cli_entries["workers"] = std::to_string(c.workers);
    if (!c.domain.empty()) cli_entries["overlap_domain"] = c.domain;

    const mnv::sweep::Options opt =
        mnv::sweep::resolve(name, c.preset, file_entries, cli_entries);
    const auto files = mnv::sweep::run(opt);
    mnv::sweep::write_files(files);
    for (const auto& f : files) std::cout << f.path << "\n";
    return 0;
  } catch (const mnv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const mnv::NonConverged& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
