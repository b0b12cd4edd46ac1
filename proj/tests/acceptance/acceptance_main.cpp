// Acceptance suite: one line per criterion, nonzero exit when any selected
// criterion fails. `--only N` runs a single criterion, `--list` names them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "permlab/complex_matrix.hpp"
#include "permlab/correlations.hpp"
#include "permlab/errors.hpp"
#include "permlab/estimators.hpp"
#include "permlab/haar.hpp"
#include "permlab/permanent.hpp"
#include "permlab/rng.hpp"
#include "permlab_cli/experiments.hpp"
#include "permlab_cli/run_config.hpp"
#include "permlab_cli/verify.hpp"

using namespace permlab;
using namespace permlab::cli;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool passed;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream oss;
  oss.precision(4);
  oss << v;
  return oss.str();
}

// ---------------------------------------------------------------------------
// 1. Exact-permanent oracle: all-ones N! exact through N=12, Glynn == naive
//    to 1e-10 relative on 100 random complex 7x7 matrices, under a second.
Outcome criterion_1() {
  const auto start = Clock::now();
  double factorial = 1.0;
  for (std::size_t n = 1; n <= 12; ++n) {
    factorial *= static_cast<double>(n);
    ComplexMatrix ones(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ones.entry(i, j) = Complex{1.0, 0.0};
    const Complex perm = permanent_glynn(ones);
    if (perm.real() != factorial || perm.imag() != 0.0) {
      return {false, "all-ones " + std::to_string(n) + " != n! exactly"};
    }
  }

  RandomStream rng(kSeed);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    ComplexMatrix m(7, 7);
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) {
        double re, im;
        rng.next_gaussian_pair(re, im);
        m.entry(i, j) = Complex{re, im};
      }
    const Complex a = permanent_glynn(m);
    const Complex b = permanent_naive(m);
    worst = std::max(worst, std::abs(a - b) / std::abs(b));
  }
  const double elapsed = seconds_since(start);
  if (worst > 1e-10) return {false, "glynn vs naive relative " + fmt(worst)};
  if (elapsed >= 1.0) return {false, "runtime " + fmt(elapsed) + " s >= 1 s"};
  return {true, "n! exact to N=12; worst glynn/naive rel " + fmt(worst) + "; " +
                    fmt(elapsed) + " s"};
}

// ---------------------------------------------------------------------------
// Shared bias/error sweep: N=6, k=4, 50 Haar 24x24.
std::vector<ResultRow> bias_sweep(std::vector<std::uint64_t> l1_values,
                                  std::vector<PhaseConfig> d_values, std::uint64_t l2) {
  RunConfig cfg;
  cfg.experiment = ExperimentKind::perm2_bias;
  cfg.n_values = {6};
  cfg.k = 4.0;
  cfg.d_values = std::move(d_values);
  cfg.l1_values = std::move(l1_values);
  cfg.l2 = l2;
  cfg.n_matrices = 50;
  cfg.seed = kSeed;
  cfg.threads = 0;
  return run_perm2_bias(cfg);
}

// 2. Unbiasedness: at L = 1e6, delta <= 3 for >= 95% of matrices for both
//    d = 2 and continuous; matrix-averaged relative error ~ 1/sqrt(L) within
//    a factor 2 across L in {1e5, 1e6, 1e7}.
Outcome criterion_2() {
  const auto rows = bias_sweep({1000, 10000, 100000},
                               {PhaseConfig::discrete(2), PhaseConfig::continuous()}, 100);
  std::string detail;

  for (const std::string d : {"2", "continuous"}) {
    int total = 0, within = 0;
    for (const auto& r : rows) {
      if (r.aggregated || r.method != "qcp" || r.d != d || r.l1 != 10000) continue;
      ++total;
      if (*r.delta <= 3.0) ++within;
    }
    const double frac = total ? static_cast<double>(within) / total : 0.0;
    if (frac < 0.95) {
      return {false, "d=" + d + ": only " + std::to_string(within) + "/" +
                         std::to_string(total) + " matrices within 3 sigma"};
    }
    detail += "d=" + d + " " + std::to_string(within) + "/" + std::to_string(total) + " in 3sig";

    std::map<std::uint64_t, double> rel_err;
    std::map<std::uint64_t, int> count;
    for (const auto& r : rows) {
      if (r.aggregated || r.method != "qcp" || r.d != d) continue;
      rel_err[r.l1] += *r.actual_error / *r.exact;
      count[r.l1] += 1;
    }
    for (auto& [l1, v] : rel_err) v /= count[l1];
    const double r1 = rel_err[1000] / rel_err[10000];
    const double r2 = rel_err[10000] / rel_err[100000];
    const double lo = std::sqrt(10.0) / 2.0, hi = 2.0 * std::sqrt(10.0);
    if (r1 < lo || r1 > hi || r2 < lo || r2 > hi) {
      return {false, "d=" + d + ": decade ratios " + fmt(r1) + ", " + fmt(r2) +
                         " outside [" + fmt(lo) + ", " + fmt(hi) + "]"};
    }
    detail += ", decade ratios " + fmt(r1) + "/" + fmt(r2) + "; ";
  }
  return {true, detail};
}

// 3. Bias reproduction: at L1=1e3, d=2, the squared-mean comparator sits
//    above the exact value with matrix-averaged delta > 3 while the pair
//    estimator stays below 3 on the identical seed budget. The error
//    statistics for this comparison use 1000 sub-ensembles.
Outcome criterion_3() {
  const auto rows = bias_sweep({1000}, {PhaseConfig::discrete(2)}, 1000);
  double gurvits_delta = -1.0, qcp_delta = -1.0, gurvits_bias = 0.0;
  for (const auto& r : rows) {
    if (!r.aggregated) continue;
    if (r.method == "gurvits") {
      gurvits_delta = *r.delta;
      gurvits_bias = *r.mean - *r.exact;
    }
    if (r.method == "qcp") qcp_delta = *r.delta;
  }
  if (gurvits_bias <= 0.0) return {false, "biased estimator did not overshoot"};
  if (gurvits_delta <= 3.0) return {false, "gurvits mean delta " + fmt(gurvits_delta) + " <= 3"};
  if (qcp_delta >= 3.0) return {false, "qcp mean delta " + fmt(qcp_delta) + " >= 3"};
  return {true, "gurvits delta " + fmt(gurvits_delta) + " > 3 > qcp delta " + fmt(qcp_delta) +
                    ", bias +" + fmt(gurvits_bias)};
}

// 4. Simulation beats shot noise: k in {1,2}, N=3..8, L=1e6; the sampled
//    error stays below sqrt(Pbar/L) at every N.
Outcome criterion_4() {
  std::string detail;
  for (const double k : {1.0, 2.0}) {
    RunConfig cfg;
    cfg.experiment = ExperimentKind::scaling;
    cfg.n_values = {3, 4, 5, 6, 7, 8};
    cfg.k = k;
    cfg.d_values = {PhaseConfig::continuous()};
    cfg.l1_values = {10000};
    cfg.l2 = 100;
    cfg.n_matrices = 50;
    cfg.seed = kSeed;
    cfg.threads = 0;
    const auto rows = run_scaling(cfg);
    double worst_margin = 0.0;
    for (const auto& r : rows) {
      if (!r.aggregated) continue;
      if (!(*r.actual_error < *r.experimental_error)) {
        return {false, "k=" + fmt(k) + " N=" + std::to_string(r.n) + ": E=" +
                           fmt(*r.actual_error) + " >= shot " + fmt(*r.experimental_error)};
      }
      worst_margin = std::max(worst_margin, *r.actual_error / *r.experimental_error);
    }
    detail += "k=" + fmt(k) + " worst E/shot " + fmt(worst_margin) + "; ";
  }
  return {true, detail};
}

// 5. Scaling law: least-squares slope of ln Pbar_{N|2N} over N=4..10 within
//    15% of eps(2).
Outcome criterion_5() {
  const EnsembleConfig unused(10, 4, PhaseConfig::discrete(2), kSeed);
  std::vector<double> ns, logs;
  for (std::size_t n = 4; n <= 10; ++n) {
    RandomStream rng(derive_stream_seed(kSeed, StreamTag::unitary, n));
    const EstimateResult avg =
        haar_average_perm_squared(n, 2.0, 100, unused, rng, PermSquaredMethod::exact_glynn);
    ns.push_back(static_cast<double>(n));
    logs.push_back(std::log(avg.real_mean()));
  }
  const std::size_t cnt = ns.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < cnt; ++i) {
    sx += ns[i];
    sy += logs[i];
    sxx += ns[i] * ns[i];
    sxy += ns[i] * logs[i];
  }
  const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  const double target = scaling_law_epsilon(2.0);
  const double rel = std::abs(slope - target) / std::abs(target);
  if (rel > 0.15) {
    return {false, "slope " + fmt(slope) + " vs eps(2) " + fmt(target) + " (rel " + fmt(rel) + ")"};
  }
  return {true, "slope " + fmt(slope) + " vs eps(2) " + fmt(target) + ", rel " + fmt(rel)};
}

// 6. Combined-correlation oracle equivalence: M=12, N=3, Q in {0,1}, t=1,
//    20 matrices, sampled estimate within 4 sigma of the brute-force sum.
Outcome criterion_6() {
  const auto start = Clock::now();
  double worst = 0.0;
  for (const std::size_t q : {0u, 1u}) {
    for (std::size_t mi = 0; mi < 20; ++mi) {
      RandomStream rng(derive_stream_seed(kSeed, StreamTag::unitary, mi));
      TransmissionMatrix t(haar_random_unitary(12, rng));
      const ChannelSet sigma = ChannelSet::first_n(3, 12);
      const ChannelSet rho = q == 0 ? ChannelSet({}, 12) : ChannelSet({11}, 12);
      const CorrelationSpec spec(12, sigma, rho);
      const double exact = combined_correlation_exact(t, spec);
      const EnsembleConfig cfg(1000, 100, PhaseConfig::continuous(),
                               derive_stream_seed(kSeed, StreamTag::estimator, q * 100 + mi));
      const EstimateResult est = combined_correlation_qcp(t, spec, cfg, 0);
      const double sigmas = std::abs(est.real_mean() - exact) / est.std_error;
      worst = std::max(worst, sigmas);
      if (sigmas > 4.0) {
        return {false, "Q=" + std::to_string(q) + " matrix " + std::to_string(mi) + ": " +
                           fmt(sigmas) + " sigma from brute force"};
      }
    }
  }
  return {true, "40 cases within 4 sigma (worst " + fmt(worst) + "); " +
                    fmt(seconds_since(start)) + " s"};
}

// 7. Fourier-extraction exactness: 200 random vectors of length <= 20, the
//    instance's extraction order against the direct expansion, 1e-10
//    relative, under a second.
Outcome criterion_7() {
  const auto start = Clock::now();
  RandomStream rng(kSeed);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t len = 1 + rng.next_index(20);
    std::vector<Complex> m(len);
    for (auto& v : m) {
      double re, im;
      rng.next_gaussian_pair(re, im);
      v = Complex{re, im};
    }
    const FourierExtractor extractor(len + 1);
    const auto exact = elementary_symmetric_polynomials(m);
    const std::size_t order = rng.next_index(len + 1);
    const double rel = std::abs(extractor.extract(m, order) - exact[order]) /
                       std::max(1e-300, std::abs(exact[order]));
    worst = std::max(worst, rel);
    if (rel > 1e-10) {
      return {false, "relative " + fmt(rel) + " at order " + std::to_string(order) + "/" +
                         std::to_string(len)};
    }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) return {false, "runtime " + fmt(elapsed) + " s >= 1 s"};
  return {true, "worst relative " + fmt(worst) + "; " + fmt(elapsed) + " s"};
}

// 8. Conjecture check: k=6, N=5..8, last channel deleted, continuous phases,
//    L1=1e5, L2=200; the sampled mean within 5% of the analytic value and
//    within 4 sigma of it, with the relative gap shrinking in N on average.
//    Where the combination count permits (N=5), the brute-force sum is also
//    reported so a failure can be attributed to the estimator or to the
//    analytic value itself.
Outcome criterion_8() {
  std::string detail;
  std::vector<double> ns, rels;
  bool rel_ok = true, sigma_ok = true;
  for (const std::size_t n : {5u, 6u, 7u, 8u}) {
    const std::size_t m_modes = 6 * n;
    RandomStream rng(derive_stream_seed(kSeed, StreamTag::unitary, n));
    TransmissionMatrix t(haar_random_unitary(m_modes, rng));
    const ChannelSet sigma = ChannelSet::first_n(n, m_modes);
    const CorrelationSpec spec(m_modes, sigma, ChannelSet({m_modes - 1}, m_modes));
    const EnsembleConfig cfg(100000, 200, PhaseConfig::continuous(),
                             derive_stream_seed(kSeed, StreamTag::estimator, n));
    const EstimateResult est = combined_correlation_qcp(t, spec, cfg, 0);

    const double t_p = effective_loss(t.unitary(), m_modes - 1, 1.0, sigma);
    const double conj = conjecture_value(n, 6.0, t_p);
    const double rel = std::abs(est.real_mean() - conj) / conj;
    const double sigmas = std::abs(est.real_mean() - conj) / est.std_error;
    ns.push_back(static_cast<double>(n));
    rels.push_back(rel);
    rel_ok &= rel <= 0.05;
    sigma_ok &= sigmas <= 4.0;
    detail += "N=" + std::to_string(n) + " rel " + fmt(rel) + " (" + fmt(sigmas) + " sig); ";
    if (n == 5) {
      // C(29,5) combinations: within the brute-force guard.
      const double exact = combined_correlation_exact(t, spec);
      detail += "[N=5 oracle: estimate " +
                fmt(std::abs(est.real_mean() - exact) / est.std_error) +
                " sig from brute force, analytic value " + fmt(std::abs(conj - exact) / exact) +
                " rel from it] ";
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sx += ns[i];
    sy += rels[i];
    sxx += ns[i] * ns[i];
    sxy += ns[i] * rels[i];
  }
  const double slope =
      (static_cast<double>(ns.size()) * sxy - sx * sy) /
      (static_cast<double>(ns.size()) * sxx - sx * sx);
  detail += "trend slope " + fmt(slope);
  if (!rel_ok) return {false, detail + "; relative gap above 0.05"};
  if (!sigma_ok) return {false, detail + "; gap above 4 sigma of the sampling error"};
  if (slope > 0.0) return {false, detail + "; relative gap grows with N"};
  return {true, detail};
}

// 9. Reproducibility: reruns and thread-count changes leave the CSV
//    byte-identical.
Outcome criterion_9() {
  const fs::path dir = fs::temp_directory_path() / "permlab_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg_path = dir / "cfg.json";
  {
    std::ofstream out(cfg_path);
    out << R"({"experiment": "perm2-bias", "n": 4, "k": 2, "d": [2, "continuous"],)"
        << R"( "L1": 500, "L2": 10, "n_matrices": 3, "seed": 77})";
  }
  auto run = [&](const std::string& name, int threads) {
    const std::string cmd = std::string(PERMLAB_BIN_PATH) + " perm2-bias --config " +
                            cfg_path.string() + " --threads " + std::to_string(threads) +
                            " --out " + (dir / name).string() + " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  if (run("t1", 1) != 0 || run("t4", 4) != 0 || run("t1b", 1) != 0) {
    fs::remove_all(dir);
    return {false, "cli run failed"};
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(dir / "t1.csv");
  const std::string b = slurp(dir / "t4.csv");
  const std::string c = slurp(dir / "t1b.csv");
  fs::remove_all(dir);
  if (a.empty()) return {false, "empty CSV"};
  if (a != b) return {false, "threads 1 vs 4 differ"};
  if (a != c) return {false, "rerun differs"};
  return {true, "CSV byte-identical across reruns and threads 1/4"};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*fn)();
};

const Criterion kCriteria[] = {
    {1, "exact-permanent oracle", criterion_1},
    {2, "qcp unbiasedness and 1/sqrt(L) error scaling", criterion_2},
    {3, "gurvits-squared bias vs unbiased pairing", criterion_3},
    {4, "simulation error below shot noise", criterion_4},
    {5, "haar-average scaling law slope", criterion_5},
    {6, "combined-correlation oracle equivalence", criterion_6},
    {7, "fourier-extraction exactness", criterion_7},
    {8, "channel-deleted conjecture agreement", criterion_8},
    {9, "byte-identical reproducibility", criterion_9},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (arg == "--list") {
      for (const auto& c : kCriteria) std::cout << c.id << ": " << c.name << '\n';
      return 0;
    } else {
      std::cerr << "usage: permlab_acceptance [--only N] [--list]\n";
      return 2;
    }
  }

  bool all_passed = true;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = Clock::now();
    Outcome outcome{false, "exception"};
    try {
      outcome = c.fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    all_passed &= outcome.passed;
    std::cout << (outcome.passed ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name
              << " [" << fmt(seconds_since(start)) << " s] " << outcome.detail << '\n';
    std::cout.flush();
  }
  return all_passed ? 0 : 1;
}
