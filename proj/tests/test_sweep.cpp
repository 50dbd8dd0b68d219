#include <sstream>

#include "doctest.h"
#include "mnv/errors.hpp"
#include "mnv/sweep.hpp"

using namespace mnv;
using mnv::sweep::Options;

namespace {

Options small(const std::string& cmd, const std::map<std::string, std::string>& over) {
  return mnv::sweep::resolve(cmd, "", over, {});
}

std::vector<std::vector<std::string>> data_rows(const std::string& content) {
  std::istringstream is(content);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  bool past_header = false;
  while (std::getline(is, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!past_header) {  // column names
      past_header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        cells.push_back(cur);
        cur.clear();
      } else
        cur += ch;
    }
    cells.push_back(cur);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(small("spectrum", {{"bogus_key", "1"}}), ConfigError);
  CHECK_THROWS_AS(mnv::sweep::run(small("spectrum", {{"l_step", "abc"}})), ConfigError);
  CHECK_THROWS_AS(mnv::sweep::run(small("spectrum", {{"l_max", "-1"}})), ConfigError);
  CHECK_THROWS_AS(mnv::sweep::run(small("lindblad", {{"gamma_list", "-0.01"}})), ConfigError);
  CHECK_THROWS_AS(mnv::sweep::run(small("bath", {{"N_list", "0"}})), ConfigError);
  CHECK_THROWS_AS(mnv::sweep::run(small("coherence", {{"window_n2", "-1:5"},
                                                      {"n_list", "2"}})), ConfigError);
  CHECK_THROWS_AS(mnv::sweep::resolve("nosuch", "", {}, {}), ConfigError);
  CHECK_THROWS_AS(mnv::sweep::resolve("spectrum", "fig4", {}, {}), ConfigError);
}

TEST_CASE("config text parser") {
  const auto m = mnv::sweep::parse_config_text("a = 1\n# comment\n b=2 # trailing\n\n");
  CHECK(m.at("a") == "1");
  CHECK(m.at("b") == "2");
  CHECK_THROWS_AS(mnv::sweep::parse_config_text("not a pair"), ConfigError);
}

TEST_CASE("presets cover fig1..fig12 and map to their subcommands") {
  const auto names = mnv::sweep::preset_names();
  CHECK(names.size() == 12);
  CHECK(mnv::sweep::preset_subcommand("fig1") == "spectrum");
  CHECK(mnv::sweep::preset_subcommand("fig4") == "dynamics");
  CHECK(mnv::sweep::preset_subcommand("fig9") == "bath");
  CHECK(mnv::sweep::preset_subcommand("fig12") == "coherence");
}

TEST_CASE("spectrum output shape") {
  const auto files = mnv::sweep::run(
      small("spectrum", {{"l_max", "1"}, {"l_step", "0.5"}, {"n_max", "2"}}));
  REQUIRE(files.size() == 1);
  const auto rows = data_rows(files[0].content);
  REQUIRE(rows.size() == 3);  // l = 0, 0.5, 1
  // l, a0..a2, b1..b2, region_1..region_2
  CHECK(rows[0].size() == 1 + 3 + 2 + 2);
  CHECK(rows[0].back() == "G-");  // everything is degenerate at l = 0

  // n_max = 0 gives the minimal two-column file
  const auto minimal = mnv::sweep::run(
      small("spectrum", {{"l_max", "0.5"}, {"l_step", "0.5"}, {"n_max", "0"}}));
  CHECK(data_rows(minimal[0].content)[0].size() == 2);
}

TEST_CASE("byte determinism across runs and worker counts") {
  const std::map<std::string, std::string> base = {
      {"pairs", "3:7.535"}, {"t_max", "5"}, {"t_step", "0.5"}};
  const auto a = mnv::sweep::run(small("dynamics", base));
  const auto b = mnv::sweep::run(small("dynamics", base));
  auto opt_workers = small("dynamics", base);
  opt_workers.workers = 4;
  const auto c = mnv::sweep::run(opt_workers);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].path == b[i].path);
    CHECK(a[i].content == b[i].content);
    CHECK(a[i].content == c[i].content);
  }
}

TEST_CASE("header config round-trips to identical bytes") {
  const std::map<std::string, std::string> base = {
      {"pairs", "2:0.1"}, {"t_max", "3"}, {"t_step", "0.5"}};
  const auto first = mnv::sweep::run(small("dynamics", base));
  const auto header = mnv::sweep::extract_header_config(first[0].content);
  const Options again = mnv::sweep::resolve("dynamics", "", header, {});
  const auto second = mnv::sweep::run(again);
  REQUIRE(second.size() == first.size());
  CHECK(second[0].content == first[0].content);
}

TEST_CASE("dynamics sweeps") {
  // Q = 0 freezes every observable column
  const auto files = mnv::sweep::run(small(
      "dynamics", {{"pairs", "3:7.535"}, {"Q", "0"}, {"t_max", "2"}, {"t_step", "0.5"}}));
  for (const auto& row : data_rows(files[0].content)) {
    CHECK(row[1] == "0.000000000000e+00");  // sx
    CHECK(row[3] == "1.000000000000e+00");  // sz
  }
  // G- pair resolves to the gminus propagator
  const auto gm = mnv::sweep::run(small(
      "dynamics", {{"pairs", "2:0.1"}, {"t_max", "1"}, {"t_step", "0.5"}}));
  CHECK(gm[0].content.find("resolved_region = gminus") != std::string::npos);
}

TEST_CASE("lindblad file fan-out and the gamma = 0 column") {
  const auto files = mnv::sweep::run(small("lindblad", {{"t_max", "2"}, {"t_step", "1"}}));
  CHECK(files.size() == 8);  // 4 Q values + 4 gamma values

  const auto pure = mnv::sweep::run(small(
      "lindblad", {{"gamma_list", ""}, {"Q_list", "0.5"}, {"gamma_fixed", "0"},
                   {"t_max", "5"}, {"t_step", "1"}}));
  for (const auto& row : data_rows(pure[0].content))
    CHECK(std::abs(std::stod(row[1]) - 1.0) < 1e-9);
}

TEST_CASE("bath outputs") {
  const auto files = mnv::sweep::run(small(
      "bath", {{"delta_list", "0.2"}, {"N_list", "2,3"}, {"t_max", "2"}, {"t_step", "1"},
               {"N_max", "3"}}));
  // one contour + two purity files
  CHECK(files.size() == 3);
  // tau = 0: purity identically 1
  const auto pure = mnv::sweep::run(small(
      "bath", {{"tau", "0"}, {"delta_list", "0.2"}, {"N_list", "2"}, {"emit", "purity"},
               {"t_max", "2"}, {"t_step", "0.5"}}));
  for (const auto& row : data_rows(pure[0].content))
    CHECK(std::abs(std::stod(row[1]) - 1.0) < 1e-12);
}

TEST_CASE("coherence sweep") {
  const auto files = mnv::sweep::run(small(
      "coherence", {{"n_list", "2"}, {"window_n2", "0.5:0.6"}, {"l_step", "0.05"}}));
  REQUIRE(files.size() == 1);
  CHECK(files[0].content.find("homoclinic_ratio_quadrature_over_series") != std::string::npos);
  // p1 = p2 zeroes the whole C column
  const auto zero = mnv::sweep::run(small(
      "coherence", {{"n_list", "2"}, {"window_n2", "0.5:0.6"}, {"l_step", "0.05"},
                    {"p1", "0.5"}, {"p2", "0.5"}}));
  for (const auto& row : data_rows(zero[0].content))
    CHECK(std::abs(std::stod(row[1])) < 1e-15);
}

TEST_CASE("classical sweep") {
  // k = 0 (U = 0): constant action column
  const auto flat = mnv::sweep::run(small(
      "classical", {{"U", "0"}, {"E", "2"}, {"t_max", "2"}, {"t_step", "0.5"}}));
  const auto rows = data_rows(flat[0].content);
  for (const auto& row : rows) CHECK(row[1] == rows[0][1]);

  // separatrix energy is surfaced in the header, not thrown
  const auto sep = mnv::sweep::run(small("classical", {{"E", "1"}, {"U", "1"}}));
  CHECK(sep[0].content.find("# error =") != std::string::npos);
  CHECK(data_rows(sep[0].content).empty());

  // near-separatrix run gains the instanton column
  const auto inst = mnv::sweep::run(small(
      "classical", {{"E", "1.0000001"}, {"U", "1"}, {"t_max", "1"}, {"t_step", "0.5"}}));
  CHECK(inst[0].content.find("instanton") != std::string::npos);
}

TEST_CASE("json format mirrors the csv data") {
  auto opt = small("spectrum", {{"l_max", "0.5"}, {"l_step", "0.5"}, {"n_max", "1"}});
  opt.format = "json";
  const auto files = mnv::sweep::run(opt);
  REQUIRE(files.size() == 1);
  CHECK(files[0].path.ends_with(".json"));
  CHECK(files[0].content.find("\"columns\"") != std::string::npos);
  CHECK(files[0].content.find("\"rows\"") != std::string::npos);
}
