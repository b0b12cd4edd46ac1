#include "permlab_cli/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "permlab/correlations.hpp"
#include "permlab/errors.hpp"
#include "permlab/estimators.hpp"
#include "permlab/haar.hpp"
#include "permlab/matrix_io.hpp"
#include "permlab/permanent.hpp"
#include "permlab/rng.hpp"

namespace permlab::cli {

namespace {

std::string phase_label(PhaseConfig d) {
  return d.is_continuous() ? "continuous" : std::to_string(d.d());
}

std::string join_deleted(const std::vector<std::size_t>& deleted) {
  std::string out;
  for (std::size_t i = 0; i < deleted.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(deleted[i]);
  }
  return out;
}

ResultRow base_row(const RunConfig& cfg, const SweepPoint& pt, std::size_t m_modes) {
  ResultRow row;
  row.experiment = experiment_name(cfg.experiment);
  row.n = pt.n;
  row.m = m_modes;
  row.k = cfg.k;
  row.d = phase_label(pt.d);
  row.l1 = pt.l1;
  row.l2 = cfg.l2;
  row.n_matrices = cfg.n_matrices;
  row.t = cfg.t;
  row.seed = cfg.seed;
  return row;
}

/// The unitaries of a run depend only on the master seed and the matrix
/// index, so every sweep point sees the same matrix set.
ComplexMatrix unitary_for(const RunConfig& cfg, std::size_t m_modes, std::size_t matrix_index) {
  if (!cfg.unitary_file.empty()) {
    ComplexMatrix u = load_matrix_json(cfg.unitary_file);
    if (u.rows() != m_modes || u.cols() != m_modes) {
      throw config_error("pinned unitary size does not match k*n modes");
    }
    return u;
  }
  RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::unitary, matrix_index));
  return haar_random_unitary(m_modes, rng);
}

std::uint64_t estimator_seed(const RunConfig& cfg, std::size_t point_index,
                             std::size_t matrix_index) {
  const std::uint64_t point_seed =
      derive_stream_seed(cfg.seed, StreamTag::sweep_point, point_index);
  return derive_stream_seed(point_seed, StreamTag::estimator, matrix_index);
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (const double x : v) acc += x;
  return v.empty() ? 0.0 : acc / static_cast<double>(v.size());
}

void progress(const std::string& what) { std::cerr << "permlab: " << what << '\n'; }

struct MethodAccumulator {
  std::vector<double> means, std_errors, exacts, errors, deltas;

  void add(const EstimateResult& est, double exact) {
    means.push_back(est.real_mean());
    std_errors.push_back(est.std_error);
    exacts.push_back(exact);
    errors.push_back(actual_error(est, exact));
    deltas.push_back(error_ratio_delta(est, exact));
  }

  ResultRow aggregate(ResultRow row, std::uint64_t total_samples) const {
    row.aggregated = true;
    row.mean = mean_of(means);
    row.std_error = mean_of(std_errors);
    row.exact = mean_of(exacts);
    row.actual_error = mean_of(errors);
    row.delta = mean_of(deltas);
    row.experimental_error =
        experimental_error(std::max(0.0, mean_of(exacts)), total_samples);
    return row;
  }
};

}  // namespace

std::vector<ResultRow> run_perm2_bias(const RunConfig& cfg) {
  const auto points = cfg.expand_sweep();
  std::vector<ResultRow> rows;

  for (const std::size_t n : cfg.n_values) {
    if (n > kGlynnPermanentLimit) {
      throw size_limit_error(
          "perm2-bias needs the exact permanent for its error statistics; "
          "n exceeds the Glynn limit (30). Reduce n.");
    }
    (void)cfg.modes_for(n);
  }

  // Matrices and their exact values are shared across sweep points.
  struct MatrixCase {
    ComplexMatrix sub;
    double exact;
  };
  std::vector<std::vector<MatrixCase>> cases_by_n(cfg.n_values.size());
  for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
    const std::size_t n = cfg.n_values[ni];
    const std::size_t m_modes = cfg.modes_for(n);
    const ChannelSet lead = ChannelSet::first_n(n, m_modes);
    for (std::size_t mi = 0; mi < cfg.n_matrices; ++mi) {
      TransmissionMatrix t(unitary_for(cfg, m_modes, mi), cfg.t);
      ComplexMatrix sub = submatrix(t, lead, lead);
      const double exact = std::norm(permanent_glynn(sub));
      cases_by_n[ni].push_back(MatrixCase{std::move(sub), exact});
    }
  }

  const unsigned threads = cfg.effective_threads();
  for (const auto& pt : points) {
    const std::size_t ni =
        std::find(cfg.n_values.begin(), cfg.n_values.end(), pt.n) - cfg.n_values.begin();
    const std::size_t m_modes = cfg.modes_for(pt.n);
    const std::uint64_t total = pt.l1 * cfg.l2;
    const bool with_gurvits = !pt.d.is_continuous() && pt.d.d() == 2;

    MethodAccumulator qcp_acc, gur_acc;
    for (std::size_t mi = 0; mi < cfg.n_matrices; ++mi) {
      const MatrixCase& mc = cases_by_n[ni][mi];
      const EnsembleConfig est_cfg(pt.l1, cfg.l2, pt.d, estimator_seed(cfg, pt.index, mi));

      const EstimateResult qcp = estimate_perm_squared_qcp(mc.sub, est_cfg, threads);
      ResultRow row = base_row(cfg, pt, m_modes);
      row.method = "qcp";
      row.matrix_index = mi;
      row.mean = qcp.real_mean();
      row.std_error = qcp.std_error;
      row.exact = mc.exact;
      row.actual_error = actual_error(qcp, mc.exact);
      row.delta = error_ratio_delta(qcp, mc.exact);
      row.experimental_error = experimental_error(std::max(0.0, mc.exact), total);
      rows.push_back(row);
      qcp_acc.add(qcp, mc.exact);

      if (with_gurvits) {
        const EstimateResult gur = estimate_perm_squared_gurvits_biased(mc.sub, est_cfg, threads);
        ResultRow grow = base_row(cfg, pt, m_modes);
        grow.method = "gurvits";
        grow.matrix_index = mi;
        grow.mean = gur.real_mean();
        grow.std_error = gur.std_error;
        grow.exact = mc.exact;
        grow.actual_error = actual_error(gur, mc.exact);
        grow.delta = error_ratio_delta(gur, mc.exact);
        grow.experimental_error = experimental_error(std::max(0.0, mc.exact), total);
        rows.push_back(grow);
        gur_acc.add(gur, mc.exact);
      }
    }

    ResultRow qrow = base_row(cfg, pt, m_modes);
    qrow.method = "qcp";
    rows.push_back(qcp_acc.aggregate(qrow, total));
    if (with_gurvits) {
      ResultRow grow = base_row(cfg, pt, m_modes);
      grow.method = "gurvits";
      rows.push_back(gur_acc.aggregate(grow, total));
    }
    progress("perm2-bias point " + std::to_string(pt.index + 1) + "/" +
             std::to_string(points.size()) + " done (n=" + std::to_string(pt.n) +
             ", L1=" + std::to_string(pt.l1) + ", d=" + phase_label(pt.d) + ")");
  }
  return rows;
}

std::vector<ResultRow> run_scaling(const RunConfig& cfg) {
  const auto points = cfg.expand_sweep();
  std::vector<ResultRow> rows;
  const unsigned threads = cfg.effective_threads();

  for (const auto& pt : points) {
    if (pt.n > kGlynnPermanentLimit) {
      throw size_limit_error("scaling requires exact permanents; n exceeds the Glynn limit (30)");
    }
    const std::size_t m_modes = cfg.modes_for(pt.n);
    const ChannelSet lead = ChannelSet::first_n(pt.n, m_modes);
    const std::uint64_t total = pt.l1 * cfg.l2;

    MethodAccumulator acc;
    for (std::size_t mi = 0; mi < cfg.n_matrices; ++mi) {
      TransmissionMatrix t(unitary_for(cfg, m_modes, mi), cfg.t);
      const ComplexMatrix sub = submatrix(t, lead, lead);
      const double exact = std::norm(permanent_glynn(sub));
      const EnsembleConfig est_cfg(pt.l1, cfg.l2, pt.d, estimator_seed(cfg, pt.index, mi));
      const EstimateResult est = estimate_perm_squared_qcp(sub, est_cfg, threads);

      ResultRow row = base_row(cfg, pt, m_modes);
      row.method = "qcp";
      row.matrix_index = mi;
      row.mean = est.real_mean();
      row.std_error = est.std_error;
      row.exact = exact;
      row.actual_error = actual_error(est, exact);
      row.delta = error_ratio_delta(est, exact);
      row.experimental_error = experimental_error(std::max(0.0, exact), total);
      rows.push_back(row);
      acc.add(est, exact);
    }

    ResultRow arow = base_row(cfg, pt, m_modes);
    arow.method = "qcp";
    arow = acc.aggregate(std::move(arow), total);
    arow.reference = static_cast<double>(pt.n) * scaling_law_epsilon(cfg.k);  // ln P bar target
    rows.push_back(arow);
    progress("scaling point " + std::to_string(pt.index + 1) + "/" + std::to_string(points.size()) +
             " done (n=" + std::to_string(pt.n) + ")");
  }
  return rows;
}

std::vector<ResultRow> run_combined(const RunConfig& cfg) {
  const auto points = cfg.expand_sweep();
  std::vector<ResultRow> rows;
  const unsigned threads = cfg.effective_threads();

  for (const auto& pt : points) {
    const std::size_t m_modes = cfg.modes_for(pt.n);
    std::vector<std::size_t> deleted = cfg.deleted;
    if (deleted.empty()) deleted.push_back(m_modes - 1);  // last-channel deletion
    for (const std::size_t p : deleted) {
      if (p >= m_modes) throw config_error("deleted channel index out of range");
    }
    const ChannelSet rho(deleted, m_modes);
    const ChannelSet sigma = ChannelSet::first_n(pt.n, m_modes);
    const std::size_t q = rho.size();
    if (q >= m_modes || pt.n > m_modes - q) {
      throw config_error("deletion set leaves too few channels for n photons");
    }

    // Brute force only when the total work (combinations x Glynn cost) is small.
    const double combos = [&] {
      double c = 1.0;
      for (std::size_t i = 0; i < pt.n; ++i) {
        c *= static_cast<double>(m_modes - q - i) / static_cast<double>(i + 1);
      }
      return c;
    }();
    const bool with_exact = pt.n <= kGlynnPermanentLimit && combos <= kCombinationGuard &&
                            combos * std::ldexp(1.0, static_cast<int>(pt.n)) <= 2e8;

    MethodAccumulator acc;
    std::vector<double> refs, rels, tps;
    for (std::size_t mi = 0; mi < cfg.n_matrices; ++mi) {
      TransmissionMatrix t(unitary_for(cfg, m_modes, mi), cfg.t);
      const CorrelationSpec spec(m_modes, sigma, rho);
      const EnsembleConfig est_cfg(pt.l1, cfg.l2, pt.d, estimator_seed(cfg, pt.index, mi));
      const EstimateResult est = combined_correlation_qcp(t, spec, est_cfg, threads);

      ResultRow row = base_row(cfg, pt, m_modes);
      row.method = "qcp";
      row.matrix_index = mi;
      row.deleted = join_deleted(deleted);
      row.mean = est.real_mean();
      row.std_error = est.std_error;
      if (with_exact) {
        const double exact = combined_correlation_exact(t, spec);
        row.exact = exact;
        row.actual_error = actual_error(est, exact);
        row.delta = error_ratio_delta(est, exact);
        acc.add(est, exact);
      }
      if (q == 1 && cfg.k > 1.0) {
        const double t_p = effective_loss(t.unitary(), deleted.front(), cfg.t, sigma);
        const double ref = conjecture_value(pt.n, cfg.k, t_p);
        row.t_p = t_p;
        row.reference = ref;
        row.rel_diff = ref > 0.0 ? std::abs(est.real_mean() - ref) / ref : 0.0;
        refs.push_back(ref);
        rels.push_back(*row.rel_diff);
        tps.push_back(t_p);
      }
      rows.push_back(row);
    }

    if (cfg.n_matrices > 1) {
      ResultRow arow = base_row(cfg, pt, m_modes);
      arow.method = "qcp";
      arow.deleted = join_deleted(deleted);
      arow.aggregated = true;
      std::vector<double> means;
      for (auto it = rows.end() - static_cast<std::ptrdiff_t>(cfg.n_matrices); it != rows.end(); ++it) {
        means.push_back(*it->mean);
      }
      arow.mean = mean_of(means);
      if (!acc.exacts.empty()) {
        arow.exact = mean_of(acc.exacts);
        arow.actual_error = mean_of(acc.errors);
        arow.delta = mean_of(acc.deltas);
      }
      if (!refs.empty()) {
        arow.reference = mean_of(refs);
        arow.rel_diff = mean_of(rels);
        arow.t_p = mean_of(tps);
      }
      rows.push_back(arow);
    }
    progress("combined point " + std::to_string(pt.index + 1) + "/" + std::to_string(points.size()) +
             " done (n=" + std::to_string(pt.n) + ", M=" + std::to_string(m_modes) + ")");
  }
  return rows;
}

std::vector<ResultRow> run_conjecture_spread(const RunConfig& cfg) {
  if (cfg.n_matrices < 2) {
    throw config_error("conjecture-spread requires n_matrices >= 2");
  }
  std::vector<ResultRow> rows;
  std::size_t point_index = 0;
  for (const std::size_t n : cfg.n_values) {
    const std::size_t m_modes = cfg.modes_for(n);
    if (m_modes <= n) throw config_error("conjecture-spread requires k > 1");
    const ChannelSet sigma = ChannelSet::first_n(n, m_modes);

    std::vector<ComplexMatrix> us;
    us.reserve(cfg.n_matrices);
    RandomStream rng(derive_stream_seed(cfg.seed, StreamTag::unitary, point_index));
    for (std::size_t mi = 0; mi < cfg.n_matrices; ++mi) {
      us.push_back(haar_random_unitary(m_modes, rng));
    }
    const ConjectureSpread spread = conjecture_spread_over(us, n, cfg.k, cfg.t);
    double tp_mean = 0.0;
    for (const auto& u : us) tp_mean += effective_loss(u, m_modes - 1, cfg.t, sigma);
    tp_mean /= static_cast<double>(cfg.n_matrices);

    ResultRow row;
    row.experiment = experiment_name(cfg.experiment);
    row.method = "conjecture";
    row.n = n;
    row.m = m_modes;
    row.k = cfg.k;
    row.l1 = 0;
    row.l2 = 0;
    row.n_matrices = cfg.n_matrices;
    row.t = cfg.t;
    row.deleted = std::to_string(m_modes - 1);
    row.seed = cfg.seed;
    row.aggregated = true;
    row.mean = spread.mean;
    row.std_error = spread.std_dev;  // ensemble standard deviation, not an error of the mean
    row.t_p = tp_mean;
    row.rel_diff = spread.mean > 0.0 ? spread.std_dev / spread.mean : 0.0;
    rows.push_back(row);

    progress("conjecture-spread n=" + std::to_string(n) + " done");
    ++point_index;
  }
  return rows;
}

}  // namespace permlab::cli
