// sweep.hpp — reproducible parameter sweeps behind the CLI: config
// resolution (defaults <- preset <- config file <- command line), the figure
// presets, deterministic CSV/JSON rendering, and the per-subcommand runners.
//
// run() is pure: it returns path -> content pairs so determinism can be
// checked without touching the filesystem. Identical resolved options yield
// byte-identical content regardless of the worker count.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace mnv::sweep {

struct Options {
  std::string subcommand;
  std::string preset;  // empty when none
  // Resolved parameters in a fixed, subcommand-specific order (echoed into
  // the output header verbatim, which is what makes headers re-runnable).
  std::vector<std::pair<std::string, std::string>> params;
  std::string out;     // output path stem
  std::string format;  // "csv" or "json"
  int workers = 1;

  const std::string& get(const std::string& key) const;
  double get_num(const std::string& key) const;
  int get_int(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
};

struct OutputFile {
  std::string path;
  std::string content;
};

// All known presets (fig1..fig12).
std::vector<std::string> preset_names();

// Subcommand a preset belongs to.
std::string preset_subcommand(const std::string& preset);

// Merge defaults, preset values, config-file entries and command-line
// overrides; rejects unknown keys and malformed values (ConfigError).
Options resolve(const std::string& subcommand, const std::string& preset,
                const std::map<std::string, std::string>& config_entries,
                const std::map<std::string, std::string>& cli_entries);

// Compute every output file for the resolved options.
std::vector<OutputFile> run(const Options& opt);

// Write files, creating parent directories as needed.
void write_files(const std::vector<OutputFile>& files);

// Flat "key = value" config text; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);

// Extract the "# key = value" lines from an emitted CSV header.
std::map<std::string, std::string> extract_header_config(const std::string& content);

}  // namespace mnv::sweep
