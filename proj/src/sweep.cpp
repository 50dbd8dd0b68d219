#include "mnv/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "mnv/coherence.hpp"
#include "mnv/dynamics.hpp"
#include "mnv/errors.hpp"
#include "mnv/hamiltonians.hpp"
#include "mnv/open_system.hpp"
#include "mnv/pendulum.hpp"

#include "json.hpp"

#ifndef MNV_VERSION
#define MNV_VERSION "dev"
#endif
#ifndef MNV_GIT_HASH
#define MNV_GIT_HASH "unknown"
#endif

namespace mnv::sweep {

namespace {

using Dict = std::map<std::string, std::string>;
using KV = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // fold -0 into +0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string fmt_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  size_t e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double to_num(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-numeric value '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_num(key, v);
  const int i = static_cast<int>(std::llround(x));
  if (std::abs(x - i) > 0.0)
    throw ConfigError("config: key '" + key + "' must be an integer, got '" + v + "'");
  return i;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

struct Pair {
  int n;
  std::string l_token;
  double l;
};

std::vector<Pair> parse_pairs(const std::string& key, const std::string& v) {
  std::vector<Pair> out;
  for (const std::string& tok : split(v, ',')) {
    const auto sep = tok.find(':');
    if (sep == std::string::npos)
      throw ConfigError("config: key '" + key + "' expects n:l pairs, got '" + tok + "'");
    Pair p;
    p.n = to_int(key, trim(tok.substr(0, sep)));
    p.l_token = trim(tok.substr(sep + 1));
    p.l = to_num(key, p.l_token);
    out.push_back(p);
  }
  if (out.empty()) throw ConfigError("config: key '" + key + "' must not be empty");
  return out;
}

double default_alpha() {
  // tan(alpha) = -omega_R/delta_spin with omega_R/2pi = 1 MHz, delta = 1 kHz.
  return std::atan(-(2.0 * std::numbers::pi * 1e6) / 1e3);
}

// Per-subcommand parameter schemas (fixed order; echoed into headers).
KV schema(const std::string& cmd) {
  const std::string alpha = fmt_param(default_alpha());
  if (cmd == "spectrum")
    return {{"l_min", "0"}, {"l_max", "30"}, {"l_step", "0.05"}, {"n_max", "5"},
            {"eps_deg", "0.05"}};
  if (cmd == "dynamics")
    return {{"mode", "traj"},
            {"pairs", "2:3.855,3:7.535,4:10.785"},
            {"region", "auto"},
            {"n_list", "2,3,4"},
            {"l_min", "0.05"},
            {"l_max", "25"},
            {"l_step", "0.05"},
            {"Q", "0.5"},
            {"omega0", "1"},
            {"alpha", alpha},
            {"t_max", "200"},
            {"t_step", "0.1"},
            {"eps_deg", "0.05"}};
  if (cmd == "lindblad")
    return {{"n", "4"},       {"l", "10.785"}, {"Q_list", "0.5,5,10,25"},
            {"Q_fixed", "0.5"}, {"gamma_list", "0.01,0.02,0.03,0.04"},
            {"gamma_fixed", "0.01"}, {"omega0", "1"}, {"alpha", alpha},
            {"t_max", "800"},  {"t_step", "0.1"}};
  if (cmd == "bath")
    return {{"tau", "1"},         {"g", "0.375"},      {"delta_list", "0.2,0.5"},
            {"N_list", "2,3,4"},  {"c0_abs", "0"},     {"c1_abs", "1"},
            {"emit", "both"},     {"N_min", "1"},      {"N_max", "10"},
            {"t_max", "30"},      {"t_step", "0.05"}};
  if (cmd == "multilevel")
    return {{"pairs", "2:3.855,3:7.535,4:10.785"},
            {"Q", "0.5"},
            {"omega0", "1"},
            {"alpha", alpha},
            {"overlap_domain", "full"},
            {"t_max", "200"},
            {"t_step", "0.05"}};
  if (cmd == "coherence")
    return {{"n_list", "2,3,4"},
            {"window_n2", "0.3:7.51"},
            {"window_n3", "1.15:13.93"},
            {"window_n4", "3.18:18.4"},
            {"l_step", "0.01"},
            {"p1", "0.9"},
            {"p2", "0.1"},
            {"delta_w0", "0.8"},
            {"omega0", "1"},
            {"alpha", alpha},
            {"Q", "5"},
            {"eps_deg", "0.05"}};
  if (cmd == "classical")
    return {{"E", "3"},     {"U", "1"},     {"omega_prime", "1"}, {"nu", "1"},
            {"t_min", "0"}, {"t_max", "10"}, {"t_step", "0.01"}};
  throw ConfigError("unknown subcommand '" + cmd + "'");
}

Dict preset_values(const std::string& preset) {
  if (preset == "fig1") return {};
  if (preset == "fig2") return {{"mode", "traj"}, {"pairs", "2:3.855,3:7.535,4:10.785"}};
  if (preset == "fig3") return {{"mode", "sweep"}};
  if (preset == "fig4") return {{"mode", "traj"}, {"pairs", "2:0.1,3:0.57,4:1.585"}};
  if (preset == "fig5") return {{"gamma_list", ""}, {"Q_list", "0.5,5,10,25"}, {"gamma_fixed", "0.01"}};
  if (preset == "fig6") return {{"Q_list", ""}, {"gamma_list", "0.01,0.02,0.03,0.04"}, {"Q_fixed", "0.5"}};
  if (preset == "fig7") return {{"Q_list", "1,5,25"}, {"gamma_list", "0.01,0.02,0.03,0.04"}};
  if (preset == "fig8") return {{"emit", "contour"}, {"delta_list", "0.2"}};
  if (preset == "fig9") return {{"emit", "purity"}, {"delta_list", "0.2,0.5"}, {"N_list", "2,3,4"}};
  if (preset == "fig10") return {{"overlap_domain", "half"}};
  if (preset == "fig11") return {};
  if (preset == "fig12") return {};
  throw ConfigError("unknown preset '" + preset + "'");
}

const std::map<std::string, std::string>& preset_commands() {
  static const std::map<std::string, std::string> m = {
      {"fig1", "spectrum"},  {"fig2", "dynamics"}, {"fig3", "dynamics"},
      {"fig4", "dynamics"},  {"fig5", "lindblad"}, {"fig6", "lindblad"},
      {"fig7", "lindblad"},  {"fig8", "bath"},     {"fig9", "bath"},
      {"fig10", "multilevel"}, {"fig11", "coherence"}, {"fig12", "coherence"}};
  return m;
}

// Runs f(0..n-1) on `workers` threads; each index writes only its own slot,
// so the assembled output is identical for every worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& f) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  const int nthreads = std::min(workers, n);
  for (int w = 0; w < nthreads; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  KV extra_header;  // notes appended after the resolved config
};

std::string render_csv(const Options& opt, const Table& t) {
  std::ostringstream os;
  os << "# mathieu-nv " << opt.subcommand << " " << MNV_VERSION << " (git " << MNV_GIT_HASH
     << ")\n";
  os << "# subcommand = " << opt.subcommand << "\n";
  if (!opt.preset.empty()) os << "# preset = " << opt.preset << "\n";
  os << "# format = " << opt.format << "\n";
  for (const auto& [k, v] : opt.params) os << "# " << k << " = " << v << "\n";
  for (const auto& [k, v] : t.extra_header) os << "# " << k << " = " << v << "\n";
  for (size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

std::string render_json(const Options& opt, const Table& t) {
  nlohmann::ordered_json j;
  j["tool"] = std::string("mathieu-nv ") + MNV_VERSION + " (git " + MNV_GIT_HASH + ")";
  nlohmann::ordered_json meta;
  meta["subcommand"] = opt.subcommand;
  if (!opt.preset.empty()) meta["preset"] = opt.preset;
  meta["format"] = opt.format;
  for (const auto& [k, v] : opt.params) meta[k] = v;
  for (const auto& [k, v] : t.extra_header) meta[k] = v;
  j["meta"] = meta;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  j["rows"] = rows;
  return j.dump(1) + "\n";
}

OutputFile make_file(const Options& opt, const std::string& stem_suffix, const Table& t) {
  OutputFile f;
  f.path = opt.out + stem_suffix + (opt.format == "json" ? ".json" : ".csv");
  f.content = (opt.format == "json") ? render_json(opt, t) : render_csv(opt, t);
  return f;
}

std::vector<double> time_grid(double t_min, double t_max, double t_step) {
  if (t_step <= 0.0) throw ConfigError("config: time step must be positive");
  if (t_max < t_min) throw ConfigError("config: empty time grid");
  std::vector<double> g;
  const int n = static_cast<int>(std::floor((t_max - t_min) / t_step + 1e-9));
  for (int i = 0; i <= n; ++i) g.push_back(t_min + i * t_step);
  return g;
}

// ---------------------------------------------------------------- spectrum

std::vector<OutputFile> run_spectrum(const Options& opt) {
  const double l_min = opt.get_num("l_min"), l_max = opt.get_num("l_max");
  const double l_step = opt.get_num("l_step");
  const int n_max = opt.get_int("n_max");
  const double eps = opt.get_num("eps_deg");
  if (l_step <= 0.0 || l_max < l_min) throw ConfigError("spectrum: empty l grid");
  if (n_max < 0) throw ConfigError("spectrum: n_max must be >= 0");

  const std::vector<double> ls = time_grid(l_min, l_max, l_step);
  Table t;
  t.columns = {"l"};
  for (int n = 0; n <= n_max; ++n) t.columns.push_back("a" + std::to_string(n));
  for (int n = 1; n <= n_max; ++n) t.columns.push_back("b" + std::to_string(n));
  for (int n = 1; n <= n_max; ++n) t.columns.push_back("region_" + std::to_string(n));
  t.rows.resize(ls.size());
  parallel_for(static_cast<int>(ls.size()), opt.workers, [&](int i) {
    const double l = ls[i];
    std::vector<std::string> row;
    row.push_back(fmt(l));
    for (int n = 0; n <= n_max; ++n) row.push_back(fmt(characteristic(Parity::CE, n, l)));
    for (int n = 1; n <= n_max; ++n) row.push_back(fmt(characteristic(Parity::SE, n, l)));
    for (int n = 1; n <= n_max; ++n)
      row.push_back(region_name(classify_region(n, l, eps).region));
    t.rows[i] = std::move(row);
  });
  return {make_file(opt, "", t)};
}

// ---------------------------------------------------------------- dynamics

std::vector<OutputFile> run_dynamics(const Options& opt) {
  const std::string mode_key = opt.get("mode");
  const double Q = opt.get_num("Q"), omega0 = opt.get_num("omega0");
  const double alpha = opt.get_num("alpha");
  const double eps = opt.get_num("eps_deg");
  std::vector<OutputFile> files;

  if (mode_key == "sweep") {
    const std::vector<double> ls =
        time_grid(opt.get_num("l_min"), opt.get_num("l_max"), opt.get_num("l_step"));
    for (const std::string& ntok : split(opt.get("n_list"), ',')) {
      const int n = to_int("n_list", ntok);
      Table t;
      t.columns = {"l", "amplitude", "frequency"};
      t.rows.resize(ls.size());
      parallel_for(static_cast<int>(ls.size()), opt.workers, [&](int i) {
        const RegionHamiltonian h = h_g0(Parity::CE, n, ls[i], omega0, alpha, Q);
        const AmplitudeFrequency af = g0_amplitude_frequency(h);
        t.rows[i] = {fmt(ls[i]), fmt(af.amplitude), fmt(af.frequency)};
      });
      files.push_back(make_file(opt, "_amplitude_n" + std::to_string(n), t));
    }
    return files;
  }
  if (mode_key != "traj") throw ConfigError("dynamics: mode must be traj or sweep");

  const std::vector<Pair> pairs = parse_pairs("pairs", opt.get("pairs"));
  const std::vector<double> ts = time_grid(0.0, opt.get_num("t_max"), opt.get_num("t_step"));
  const std::string region_key = opt.get("region");
  for (const Pair& pr : pairs) {
    std::string region = region_key;
    if (region == "auto") {
      const Region r = classify_region(pr.n, pr.l, eps).region;
      region = (r == Region::GMinus) ? "gminus" : "g0ce";
    }
    Table t;
    t.columns = {"t", "sx", "sy", "sz", "purity", "entropy"};
    t.extra_header.emplace_back("resolved_region", region);
    t.rows.resize(ts.size());
    if (region == "gminus") {
      const RegionHamiltonian h = h_gminus(pr.n, pr.l, omega0, alpha, Q);
      parallel_for(static_cast<int>(ts.size()), opt.workers, [&](int i) {
        const SpinObservables o = propagate_gminus(h, ts[i]).obs;
        t.rows[i] = {fmt(o.t), fmt(o.sx), fmt(o.sy), fmt(o.sz), fmt(o.purity), fmt(o.entropy)};
      });
    } else if (region == "g0ce" || region == "g0se") {
      const RegionHamiltonian h =
          h_g0(region == "g0ce" ? Parity::CE : Parity::SE, pr.n, pr.l, omega0, alpha, Q);
      parallel_for(static_cast<int>(ts.size()), opt.workers, [&](int i) {
        const SpinObservables o = propagate_g0(h, ts[i]).obs;
        t.rows[i] = {fmt(o.t), fmt(o.sx), fmt(o.sy), fmt(o.sz), fmt(o.purity), fmt(o.entropy)};
      });
    } else {
      throw ConfigError("dynamics: region must be auto, g0ce, g0se or gminus");
    }
    files.push_back(make_file(opt, "_n" + std::to_string(pr.n) + "_l" + pr.l_token, t));
  }
  return files;
}

// ---------------------------------------------------------------- lindblad

std::vector<OutputFile> run_lindblad(const Options& opt) {
  const int n = opt.get_int("n");
  const double l = opt.get_num("l");
  const double omega0 = opt.get_num("omega0"), alpha = opt.get_num("alpha");
  const std::vector<double> ts = time_grid(0.0, opt.get_num("t_max"), opt.get_num("t_step"));

  struct Case {
    std::string gamma_tok, q_tok;
    double gamma, q;
  };
  std::vector<Case> cases;
  for (const std::string& qtok : split(opt.get("Q_list"), ','))
    cases.push_back({opt.get("gamma_fixed"), qtok, opt.get_num("gamma_fixed"),
                     to_num("Q_list", qtok)});
  for (const std::string& gtok : split(opt.get("gamma_list"), ','))
    cases.push_back({gtok, opt.get("Q_fixed"), to_num("gamma_list", gtok),
                     opt.get_num("Q_fixed")});
  if (cases.empty()) throw ConfigError("lindblad: no (gamma, Q) cases configured");
  for (const Case& c : cases)
    if (c.gamma < 0.0) throw ConfigError("lindblad: gamma must be >= 0");

  std::vector<OutputFile> files;
  for (const Case& c : cases) {
    const RegionHamiltonian h = h_g0(Parity::CE, n, l, omega0, alpha, c.q);
    const LindbladParams p{c.gamma, h.coeff("b"), h.coeff("c")};
    const std::vector<LindbladSample> traj = lindblad_integrate(p, ts);
    Table t;
    t.columns = {"t", "purity_numeric", "purity_closed", "entropy", "sz"};
    t.rows.resize(ts.size());
    parallel_for(static_cast<int>(ts.size()), opt.workers, [&](int i) {
      const DensityMatrix& rho = traj[i].rho;
      t.rows[i] = {fmt(ts[i]), fmt(rho.purity()), fmt(lindblad_purity_formula(p, ts[i])),
                   fmt(rho.entropy_bits()),
                   fmt(rho.m(0, 0).real() - rho.m(1, 1).real())};
    });
    files.push_back(make_file(opt, "_gamma" + c.gamma_tok + "_Q" + c.q_tok, t));
  }
  return files;
}

// -------------------------------------------------------------------- bath

std::vector<OutputFile> run_bath(const Options& opt) {
  const double tau = opt.get_num("tau"), g = opt.get_num("g");
  const double c0_abs = opt.get_num("c0_abs"), c1_abs = opt.get_num("c1_abs");
  if (std::abs(c0_abs * c0_abs + c1_abs * c1_abs - 1.0) > 1e-12)
    throw ConfigError("bath: |c0|^2 + |c1|^2 must equal 1");
  if (tau < 0.0 || g < 0.0) throw ConfigError("bath: tau and g must be >= 0");
  const std::string emit = opt.get("emit");
  if (emit != "contour" && emit != "purity" && emit != "both")
    throw ConfigError("bath: emit must be contour, purity or both");
  const std::vector<double> ts =
      time_grid(opt.get_num("t_step"), opt.get_num("t_max"), opt.get_num("t_step"));

  std::vector<OutputFile> files;
  for (const std::string& dtok : split(opt.get("delta_list"), ',')) {
    const double delta = to_num("delta_list", dtok);
    if (emit != "purity") {
      const int N_min = opt.get_int("N_min"), N_max = opt.get_int("N_max");
      if (N_min < 1 || N_max < N_min) throw ConfigError("bath: need 1 <= N_min <= N_max");
      Table t;
      t.columns = {"N", "t", "F"};
      const int nN = N_max - N_min + 1;
      t.rows.resize(static_cast<size_t>(nN) * ts.size());
      parallel_for(nN, opt.workers, [&](int iN) {
        const ReservoirParams p{N_min + iN, tau, g, delta};
        for (size_t j = 0; j < ts.size(); ++j)
          t.rows[iN * ts.size() + j] = {std::to_string(N_min + iN), fmt(ts[j]),
                                        fmt(bath_F(p, ts[j]))};
      });
      files.push_back(make_file(opt, "_F_delta" + dtok, t));
    }
    if (emit != "contour") {
      for (const std::string& ntok : split(opt.get("N_list"), ',')) {
        const int N = to_int("N_list", ntok);
        if (N < 1) throw ConfigError("bath: reservoir count must be >= 1");
        const ReservoirParams p{N, tau, g, delta};
        Table t;
        t.columns = {"t", "purity", "c1_abs2"};
        t.rows.resize(ts.size());
        parallel_for(static_cast<int>(ts.size()), opt.workers, [&](int i) {
          const double c1sq = std::norm(bath_c1(p, c1_abs, ts[i]));
          t.rows[i] = {fmt(ts[i]), fmt(bath_purity(p, c0_abs, c1_abs, ts[i])), fmt(c1sq)};
        });
        files.push_back(make_file(opt, "_purity_delta" + dtok + "_N" + ntok, t));
      }
    }
  }
  return files;
}

// -------------------------------------------------------------- multilevel

std::vector<OutputFile> run_multilevel(const Options& opt) {
  const double Q = opt.get_num("Q"), omega0 = opt.get_num("omega0");
  const double alpha = opt.get_num("alpha");
  const std::string domain_key = opt.get("overlap_domain");
  if (domain_key != "full" && domain_key != "half")
    throw ConfigError("multilevel: overlap_domain must be full or half");
  const OverlapDomain domain =
      domain_key == "half" ? OverlapDomain::HalfPi : OverlapDomain::Full2Pi;
  const std::vector<double> ts = time_grid(0.0, opt.get_num("t_max"), opt.get_num("t_step"));

  std::vector<OutputFile> files;
  for (const Pair& pr : parse_pairs("pairs", opt.get("pairs"))) {
    const RegionHamiltonian h = h_multilevel(pr.n, pr.l, omega0, alpha, Q, domain);
    Table t;
    t.columns = {"t", "S1sq", "S2sq", "S3sq", "S4sq", "sx", "sy", "sz", "purity", "entropy"};
    t.extra_header.emplace_back("s2", fmt(h.coeff("s2")));
    t.extra_header.emplace_back(
        "note", "s2 vanishes identically on the full 2pi domain; the half-domain "
                "transition depends on that unresolved integration-domain reading");
    t.rows.resize(ts.size());
    parallel_for(static_cast<int>(ts.size()), opt.workers, [&](int i) {
      const MultilevelState st = propagate_multilevel(h, ts[i]);
      t.rows[i] = {fmt(ts[i]),
                   fmt(std::norm(st.amps[0])),
                   fmt(std::norm(st.amps[1])),
                   fmt(std::norm(st.amps[2])),
                   fmt(std::norm(st.amps[3])),
                   fmt(st.obs.sx),
                   fmt(st.obs.sy),
                   fmt(st.obs.sz),
                   fmt(st.obs.purity),
                   fmt(st.obs.entropy)};
    });
    files.push_back(make_file(opt, "_n" + std::to_string(pr.n) + "_l" + pr.l_token, t));
  }
  return files;
}

// --------------------------------------------------------------- coherence

std::vector<OutputFile> run_coherence(const Options& opt) {
  const double p1 = opt.get_num("p1"), p2 = opt.get_num("p2");
  const double dw0 = opt.get_num("delta_w0"), omega0 = opt.get_num("omega0");
  const double alpha = opt.get_num("alpha"), Q = opt.get_num("Q");
  const double l_step = opt.get_num("l_step");
  const double eps = opt.get_num("eps_deg");
  if (l_step <= 0.0) throw ConfigError("coherence: l_step must be positive");

  std::vector<OutputFile> files;
  for (const std::string& ntok : split(opt.get("n_list"), ',')) {
    const int n = to_int("n_list", ntok);
    const std::string wkey = "window_n" + std::to_string(n);
    const std::vector<std::string> w = split(opt.get(wkey), ':');
    if (w.size() != 2) throw ConfigError("coherence: " + wkey + " expects lo:hi");
    const double lo = to_num(wkey, w[0]), hi = to_num(wkey, w[1]);
    if (lo <= 0.0 || hi < lo) throw ConfigError("coherence: window must satisfy 0 < lo <= hi");
    const std::vector<double> ls = time_grid(lo, hi, l_step);

    Table t;
    t.columns = {"l", "C", "R", "region"};
    t.extra_header.emplace_back(
        "homoclinic_ratio_quadrature_over_series",
        fmt(homoclinic_distance(n, ls.front()).ratio));
    t.rows.resize(ls.size());
    parallel_for(static_cast<int>(ls.size()), opt.workers, [&](int i) {
      const QuenchSpec s = quench_eigensystem(n, ls[i], p1, p2, dw0, omega0, alpha, Q);
      const double C = coherence_relative_entropy(s);
      const double R = homoclinic_distance(n, ls[i]).value;
      t.rows[i] = {fmt(ls[i]), fmt(C), fmt(R),
                   region_name(classify_region(n, ls[i], eps).region)};
    });
    files.push_back(make_file(opt, "_n" + std::to_string(n), t));
  }
  return files;
}

// --------------------------------------------------------------- classical

std::vector<OutputFile> run_classical(const Options& opt) {
  const double E = opt.get_num("E"), U = opt.get_num("U");
  const double wp = opt.get_num("omega_prime"), nu = opt.get_num("nu");
  const std::vector<double> ts =
      time_grid(opt.get_num("t_min"), opt.get_num("t_max"), opt.get_num("t_step"));
  const ClassicalOrbit orbit{E, U, wp, nu};

  Table t;
  bool separatrix = false;
  try {
    classical_orbit(orbit, 0.0);
  } catch (const SeparatrixEnergy& e) {
    separatrix = true;
    t.extra_header.emplace_back("error", e.what());
  }
  const double k = (E + U > 0.0 && U > 0.0) ? orbit.k() : 0.0;
  t.extra_header.emplace_back("k", fmt_param(k));
  const bool with_instanton = U > 0.0 && std::abs(k - 1.0) < 0.05 && !separatrix;
  t.columns = {"t", "dI"};
  if (with_instanton) t.columns.push_back("instanton");
  if (!separatrix) {
    const TangleWidth tw = (U > 0.0) ? tangle_width(E, U, wp, nu) : TangleWidth{0, 0, true};
    if (U > 0.0) {
      t.extra_header.emplace_back("tangle_lhs", fmt_param(tw.lhs));
      t.extra_header.emplace_back("tangle_bound", fmt_param(tw.bound));
      t.extra_header.emplace_back("tangle_satisfied", tw.satisfied ? "1" : "0");
    }
    t.rows.resize(ts.size());
    parallel_for(static_cast<int>(ts.size()), opt.workers, [&](int i) {
      std::vector<std::string> row = {fmt(ts[i]), fmt(classical_orbit(orbit, ts[i]))};
      if (with_instanton) row.push_back(fmt(instanton(U, wp, ts[i])));
      t.rows[i] = std::move(row);
    });
  }
  return {make_file(opt, "", t)};
}

}  // namespace

const std::string& Options::get(const std::string& key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  throw ConfigError("config: missing key '" + key + "'");
}

double Options::get_num(const std::string& key) const { return to_num(key, get(key)); }

int Options::get_int(const std::string& key) const { return to_int(key, get(key)); }

void Options::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : params)
    if (k == key) {
      v = value;
      return;
    }
  throw ConfigError("config: unknown key '" + key + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : preset_commands()) out.push_back(k);
  return out;
}

std::string preset_subcommand(const std::string& preset) {
  const auto it = preset_commands().find(preset);
  if (it == preset_commands().end()) throw ConfigError("unknown preset '" + preset + "'");
  return it->second;
}

Options resolve(const std::string& subcommand, const std::string& preset,
                const std::map<std::string, std::string>& config_entries,
                const std::map<std::string, std::string>& cli_entries) {
  Options opt;
  opt.subcommand = subcommand;
  opt.preset = preset;
  opt.params = schema(subcommand);
  opt.out = subcommand;
  opt.format = "csv";
  opt.workers = 1;
  if (!preset.empty()) {
    if (preset_subcommand(preset) != subcommand)
      throw ConfigError("preset '" + preset + "' belongs to subcommand '" +
                        preset_subcommand(preset) + "'");
    for (const auto& [k, v] : preset_values(preset)) opt.set(k, v);
  }
  auto apply = [&](const std::map<std::string, std::string>& entries) {
    for (const auto& [k, v] : entries) {
      if (k == "out") opt.out = v;
      else if (k == "format") opt.format = v;
      else if (k == "workers") opt.workers = to_int("workers", v);
      else if (k == "subcommand" || k == "preset") continue;  // header provenance keys
      else opt.set(k, v);
    }
  };
  apply(config_entries);
  apply(cli_entries);
  if (opt.format != "csv" && opt.format != "json")
    throw ConfigError("config: format must be csv or json");
  if (opt.workers < 1) throw ConfigError("config: workers must be >= 1");
  return opt;
}

std::vector<OutputFile> run(const Options& opt) {
  if (opt.subcommand == "spectrum") return run_spectrum(opt);
  if (opt.subcommand == "dynamics") return run_dynamics(opt);
  if (opt.subcommand == "lindblad") return run_lindblad(opt);
  if (opt.subcommand == "bath") return run_bath(opt);
  if (opt.subcommand == "multilevel") return run_multilevel(opt);
  if (opt.subcommand == "coherence") return run_coherence(opt);
  if (opt.subcommand == "classical") return run_classical(opt);
  throw ConfigError("unknown subcommand '" + opt.subcommand + "'");
}

void write_files(const std::vector<OutputFile>& files) {
  namespace fs = std::filesystem;
  for (const OutputFile& f : files) {
    const fs::path p(f.path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error("cannot open output file " + f.path);
    os << f.content;
  }
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> extract_header_config(const std::string& content) {
  std::map<std::string, std::string> out;
  std::istringstream is(content);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("# ", 0) != 0) break;
    const std::string body = line.substr(2);
    const auto eq = body.find('=');
    if (eq == std::string::npos) continue;  // banner or note lines
    const std::string key = trim(body.substr(0, eq));
    if (key == "columns" || key == "note" || key == "resolved_region" || key == "error" ||
        key == "s2" || key.rfind("tangle", 0) == 0 || key == "k" ||
        key.rfind("homoclinic", 0) == 0)
      continue;  // derived annotations, not inputs
    out[key] = trim(body.substr(eq + 1));
  }
  return out;
}

}  // namespace mnv::sweep
