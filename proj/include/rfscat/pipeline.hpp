#pragma once

// Run orchestration for the command-line tool: the quasi-Monte Carlo sample
// loop, statistics evaluation on grids and far-field directions, and the
// writers for the plot-ready output files.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bem.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "halton.hpp"
#include "oracle.hpp"
#include "potentials.hpp"
#include "stats.hpp"
#include "types.hpp"

namespace rfscat {

/// Run fn(i) for i in [0, count) on up to `threads` workers, each taking a
/// contiguous block. The first exception (lowest block) is rethrown.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn &&fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = count * w / workers;
      const std::size_t hi = count * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : pool) t.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline CurveSpec nominal_curve(const RunConfig &cfg) {
  if (cfg.scatterer == Scatterer::circle) return Circle{cfg.circle_radius};
  return KiteNominal{};
}

/// Curve realization for parameter vector y.
inline CurveSpec sample_curve(const RunConfig &cfg,
                              const RadialPerturbation &perturbation,
                              const RealVector &y) {
  if (cfg.scatterer == Scatterer::circle || cfg.amplitude == 0.0) {
    return nominal_curve(cfg);
  }
  return PerturbedKite{perturbation, y};
}

/// What the sample loop hands to an observer for each sample.
struct SampleRecord {
  long index;  // zero-based; Halton index is start_index + index
  const RealVector &y;
  const BoundaryRealization &boundary;
  const std::vector<NeumannDensity> &densities;  // one per wavenumber
};

using SampleObserver = std::function<void(const SampleRecord &)>;

/// Finalized Cauchy-data statistics for every (wavenumber, radius) pair.
struct SampleStatistics {
  std::vector<double> kappas;
  std::vector<double> radii;
  std::vector<CorrelationBundle> bundles;  // kappa-major
  long count = 0;
  double seconds = 0.0;

  const CorrelationBundle &at(std::size_t k, std::size_t r) const {
    return bundles.at(k * radii.size() + r);
  }
};

namespace detail {

struct WorkerState {
  std::vector<CauchyAccumulator> acc;
};

inline WorkerState make_worker(const std::vector<double> &kappas,
                               const std::vector<double> &radii, int n_sigma) {
  WorkerState w;
  for (double k : kappas) {
    for (double r : radii) w.acc.emplace_back(ArtificialInterface(r, n_sigma), k);
  }
  return w;
}

}  // namespace detail

/// Solve the scattering problem for samples 0 .. cfg.samples-1 and accumulate
/// the Cauchy data on each interface. In deterministic mode samples are
/// processed in index order on one thread; in parallel mode each worker
/// handles a contiguous block and partial sums are merged in worker order.
inline SampleStatistics accumulate_samples(const RunConfig &cfg,
                                           const std::vector<double> &kappas,
                                           const std::vector<double> &radii,
                                           const SampleObserver &observer = {}) {
  validate(cfg, kappas);
  if (kappas.empty() || radii.empty()) {
    throw DomainError("accumulate_samples: empty wavenumber or radius list");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const HaltonSampler sampler(cfg.dimension, cfg.start_index);
  const RadialPerturbation perturbation =
      RadialPerturbation::cubic_decay(cfg.dimension, cfg.amplitude);
  const double r_min = *std::min_element(radii.begin(), radii.end());
  std::vector<HelmholtzContext> contexts;
  for (double k : kappas) contexts.emplace_back(k, cfg.coupling_for(k), cfg.direction);

  const int workers = cfg.mode == RunMode::deterministic
                          ? 1
                          : static_cast<int>(std::min<long>(cfg.threads, cfg.samples));
  std::vector<detail::WorkerState> states;
  for (int w = 0; w < workers; ++w) {
    states.push_back(detail::make_worker(kappas, radii, cfg.n_sigma));
  }
  std::mutex observer_lock;

  auto run_block = [&](int w) {
    const long lo = cfg.samples * w / workers;
    const long hi = cfg.samples * (w + 1) / workers;
    auto &acc = states[w].acc;
    for (long s = lo; s < hi; ++s) {
      const RealVector y = sampler.sample(static_cast<std::uint64_t>(s));
      const BoundaryRealization b =
          realize_boundary(sample_curve(cfg, perturbation, y), cfg.n_gamma);
      if (!(b.max_radius() < r_min)) {
        throw ContainmentError("sample " + std::to_string(s) +
                                   " (Halton index " +
                                   std::to_string(cfg.start_index + s) +
                                   "): boundary radius " +
                                   detail::format_double(b.max_radius()) +
                                   " not inside interface radius " +
                                   detail::format_double(r_min),
                               s);
      }
      std::vector<NeumannDensity> dens;
      dens.reserve(contexts.size());
      for (std::size_t k = 0; k < contexts.size(); ++k) {
        dens.push_back(solve_neumann(contexts[k], b));
        for (std::size_t r = 0; r < radii.size(); ++r) {
          acc[k * radii.size() + r].add(
              cauchy_on_sigma(dens.back(), acc[k * radii.size() + r].interface()));
        }
      }
      if (observer) {
        std::lock_guard<std::mutex> lock(observer_lock);
        observer(SampleRecord{s, y, b, dens});
      }
    }
  };

  if (workers == 1) {
    run_block(0);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          run_block(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors) {
      if (e) std::rethrow_exception(e);
    }
    for (int w = 1; w < workers; ++w) {
      for (std::size_t i = 0; i < states[0].acc.size(); ++i) {
        states[0].acc[i].merge(states[w].acc[i]);
      }
    }
  }

  SampleStatistics out;
  out.kappas = kappas;
  out.radii = radii;
  out.count = cfg.samples;
  for (auto &a : states[0].acc) out.bundles.push_back(a.finalize());
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

/// Polar grid on the annulus r_min <= |x| <= r_max; radius-major order.
inline std::vector<Point2> annulus_grid(const RunConfig &cfg) {
  std::vector<Point2> pts;
  if (!cfg.has_grid()) return pts;
  for (int i = 0; i < cfg.n_radial; ++i) {
    const double r = cfg.n_radial == 1
                         ? cfg.r_min
                         : cfg.r_min + (cfg.r_max - cfg.r_min) * i / (cfg.n_radial - 1);
    for (int j = 0; j < cfg.n_angular; ++j) {
      pts.push_back(r * direction_at(kTwoPi * j / cfg.n_angular));
    }
  }
  return pts;
}

inline std::vector<double> farfield_angles(int count) {
  std::vector<double> a(count);
  for (int j = 0; j < count; ++j) a[j] = kTwoPi * j / count;
  return a;
}

inline std::vector<Point2> directions_from_angles(const std::vector<double> &angles) {
  std::vector<Point2> d;
  for (double a : angles) d.push_back(direction_at(a));
  return d;
}

/// Plain CSV writer: header row, then rows of doubles printed with %.17g.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path &path, const std::vector<std::string> &header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << "\n";
  }

  void row(const std::vector<double> &values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out_ << (i ? "," : "") << detail::format_double(values[i]);
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

inline std::filesystem::path prepare_out_dir(const RunConfig &cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline NeumannDensity solve_nominal(const RunConfig &cfg, double kappa) {
  const HelmholtzContext ctx(kappa, cfg.coupling_for(kappa), cfg.direction);
  return solve_neumann(ctx, realize_boundary(nominal_curve(cfg), cfg.n_gamma));
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct NominalResult {
  std::vector<Point2> grid;
  std::vector<Complex> scattered;
  std::vector<double> angles;
  std::vector<Complex> farfield;
};

/// Nominal total field on the annulus grid and far field, via the boundary
/// representation. Writes field_nominal.csv (when the grid is non-empty) and
/// farfield_nominal.csv.
inline NominalResult run_nominal(const RunConfig &cfg) {
  validate(cfg, {cfg.kappa});
  const NeumannDensity density = solve_nominal(cfg, cfg.kappa);
  const HelmholtzContext ctx(cfg.kappa, cfg.coupling(), cfg.direction);
  NominalResult res;
  res.grid = annulus_grid(cfg);
  res.scattered.resize(res.grid.size());
  parallel_for(res.grid.size(), cfg.threads, [&](std::size_t i) {
    res.scattered[i] = eval_scattered_from_gamma(density, res.grid[i]);
  });
  res.angles = farfield_angles(cfg.farfield_directions);
  for (double a : res.angles) res.farfield.push_back(farfield_from_gamma(density, direction_at(a)));

  const auto dir = prepare_out_dir(cfg);
  if (!res.grid.empty()) {
    CsvWriter f(dir / "field_nominal.csv",
                {"x", "y", "re_u", "im_u", "abs_u", "re_us", "im_us"});
    for (std::size_t i = 0; i < res.grid.size(); ++i) {
      const Complex u = ctx.incident(res.grid[i]) + res.scattered[i];
      f.row({res.grid[i].x(), res.grid[i].y(), u.real(), u.imag(), std::abs(u),
             res.scattered[i].real(), res.scattered[i].imag()});
    }
  }
  CsvWriter ff(dir / "farfield_nominal.csv", {"angle_rad", "re_uinf", "im_uinf"});
  for (std::size_t j = 0; j < res.angles.size(); ++j) {
    ff.row({res.angles[j], res.farfield[j].real(), res.farfield[j].imag()});
  }
  return res;
}

inline void write_pivots(const std::filesystem::path &path, const LowRankFactor &f) {
  CsvWriter p(path, {"step", "pivot_index", "pivot_value", "residual_trace",
                     "residual_ratio"});
  for (std::size_t i = 0; i < f.pivots.size(); ++i) {
    p.row({double(i + 1), double(f.pivots[i]), f.pivot_values[i],
           f.residual_history[i],
           f.trace > 0.0 ? f.residual_history[i] / f.trace : 0.0});
  }
}

inline std::string rank_report(const LowRankFactor &f, double kappa, double radius,
                               long samples) {
  std::ostringstream os;
  os << "kappa = " << detail::format_double(kappa) << "\n"
     << "radius = " << detail::format_double(radius) << "\n"
     << "samples = " << samples << "\n"
     << "epsilon = " << detail::format_double(f.epsilon) << "\n"
     << "rank = " << f.rank() << "\n"
     << "trace = " << detail::format_double(f.trace) << "\n"
     << "residual_trace = " << detail::format_double(f.residual_trace) << "\n"
     << "trace_ratio = " << detail::format_double(f.trace_ratio) << "\n"
     << "pivots =";
  for (int p : f.pivots) os << " " << p;
  os << "\n";
  return os.str();
}

inline void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

/// Manifest: the full configuration plus result summary and timings. All
/// sections except [timings] are deterministic.
inline std::string manifest_text(const RunConfig &cfg, const std::string &command,
                                 const std::vector<std::pair<std::string, std::string>> &results,
                                 const std::vector<std::pair<std::string, double>> &timings) {
  std::ostringstream os;
  os << "# rfscat run manifest\n[command]\nname = " << command << "\n\n"
     << to_text(cfg) << "\n[result]\n";
  for (const auto &[k, v] : results) os << k << " = " << v << "\n";
  os << "\n[timings]\n";
  for (const auto &[k, v] : timings) os << k << "_seconds = " << detail::format_double(v) << "\n";
  return os.str();
}

struct UqResult {
  SampleStatistics statistics;
  LowRankFactor factor;
  FieldStatistics grid;
  FieldStatistics farfield;
  std::vector<Complex> nominal_farfield;
};

inline void write_farfield_stats(const std::filesystem::path &path,
                                 const std::vector<double> &angles,
                                 const FieldStatistics &ff,
                                 const std::vector<Complex> &nominal) {
  CsvWriter f(path, {"angle_rad", "re_mean", "im_mean", "std_dev", "variance",
                     "re_nominal", "im_nominal"});
  for (std::size_t j = 0; j < angles.size(); ++j) {
    f.row({angles[j], ff.expectation[j].real(), ff.expectation[j].imag(),
           std::sqrt(ff.variance[j]), ff.variance[j], nominal[j].real(),
           nominal[j].imag()});
  }
}

namespace detail {

inline UqResult run_statistics(const RunConfig &cfg, bool with_grid,
                               std::vector<std::pair<std::string, double>> &timings) {
  UqResult res;
  res.statistics = accumulate_samples(cfg, {cfg.kappa}, {cfg.sigma_radius});
  timings.emplace_back("sampling", res.statistics.seconds);
  const CorrelationBundle &bundle = res.statistics.at(0, 0);

  auto t = std::chrono::steady_clock::now();
  res.factor = pivoted_cholesky(bundle.correlation, cfg.epsilon);
  timings.emplace_back("cholesky", seconds_since(t));

  t = std::chrono::steady_clock::now();
  if (with_grid) {
    const auto pts = annulus_grid(cfg);
    res.grid.points = pts;
    res.grid.expectation.resize(pts.size());
    res.grid.variance.resize(pts.size());
    parallel_for(pts.size(), cfg.threads, [&](std::size_t i) {
      const ComplexVector w = sigma_field_weights(bundle.interface, bundle.kappa, pts[i]);
      res.grid.variance[i] =
          variance_from_weights(bundle.mean, res.factor, w, &res.grid.expectation[i]);
    });
  }
  const auto angles = farfield_angles(cfg.farfield_directions);
  res.farfield = farfield_statistics(bundle.mean, res.factor, bundle.interface,
                                     bundle.kappa, directions_from_angles(angles));
  const NeumannDensity nominal = solve_nominal(cfg, cfg.kappa);
  for (double a : angles) res.nominal_farfield.push_back(farfield_from_gamma(nominal, direction_at(a)));
  timings.emplace_back("evaluation", seconds_since(t));
  return res;
}

inline std::vector<std::pair<std::string, std::string>> uq_results(const UqResult &r) {
  return {{"samples", std::to_string(r.statistics.count)},
          {"rank", std::to_string(r.factor.rank())},
          {"trace", format_double(r.factor.trace)},
          {"trace_ratio", format_double(r.factor.trace_ratio)}};
}

}  // namespace detail

/// Full uncertainty pipeline: statistics on Sigma, low-rank factor,
/// expectation and variance on the annulus grid and far field.
inline UqResult run_uq(const RunConfig &cfg) {
  validate(cfg, {cfg.kappa});
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, double>> timings;
  UqResult res = detail::run_statistics(cfg, cfg.has_grid(), timings);
  const auto dir = prepare_out_dir(cfg);
  if (cfg.has_grid()) {
    CsvWriter e(dir / "expectation_grid.csv", {"x", "y", "re_mean_us", "im_mean_us", "abs_mean_us"});
    CsvWriter v(dir / "variance_grid.csv", {"x", "y", "variance", "std_dev"});
    for (std::size_t i = 0; i < res.grid.points.size(); ++i) {
      const Point2 &p = res.grid.points[i];
      const Complex m = res.grid.expectation[i];
      e.row({p.x(), p.y(), m.real(), m.imag(), std::abs(m)});
      v.row({p.x(), p.y(), res.grid.variance[i], std::sqrt(res.grid.variance[i])});
    }
  }
  const auto angles = farfield_angles(cfg.farfield_directions);
  write_farfield_stats(dir / "farfield_stats.csv", angles, res.farfield, res.nominal_farfield);
  write_text(dir / "rank_report.txt",
             rank_report(res.factor, cfg.kappa, cfg.sigma_radius, res.statistics.count));
  write_pivots(dir / "pivots.csv", res.factor);
  timings.emplace_back("total", seconds_since(t0));
  write_text(dir / "manifest.txt", manifest_text(cfg, "uq", detail::uq_results(res), timings));
  return res;
}

/// Far-field statistics only.
inline UqResult run_farfield_stats(const RunConfig &cfg) {
  validate(cfg, {cfg.kappa});
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, double>> timings;
  UqResult res = detail::run_statistics(cfg, false, timings);
  const auto dir = prepare_out_dir(cfg);
  write_farfield_stats(dir / "farfield_stats.csv", farfield_angles(cfg.farfield_directions),
                       res.farfield, res.nominal_farfield);
  timings.emplace_back("total", seconds_since(t0));
  write_text(dir / "manifest.txt",
             manifest_text(cfg, "farfield-stats", detail::uq_results(res), timings));
  return res;
}

struct RankTable {
  std::vector<double> radii;
  std::vector<double> kappas;
  std::vector<int> ranks;  // radius-major
  std::vector<LowRankFactor> factors;
  int rank(std::size_t r, std::size_t k) const { return ranks.at(r * kappas.size() + k); }
};

/// Ranks of the low-rank factor for every (R, kappa) in the table lists, from
/// one shared sample loop. Also writes the pivot decay of every factor and
/// the eigenvalues of the correlation matrix for the smallest radius.
inline RankTable run_table_ranks(const RunConfig &cfg) {
  validate(cfg, cfg.table_wavenumbers);
  for (double r : cfg.table_radii) {
    if (!(r > 0.0)) throw ConfigError("table.radii: radii must be positive");
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, double>> timings;
  const SampleStatistics st =
      accumulate_samples(cfg, cfg.table_wavenumbers, cfg.table_radii);
  timings.emplace_back("sampling", st.seconds);

  RankTable table;
  table.radii = cfg.table_radii;
  table.kappas = cfg.table_wavenumbers;
  auto t = std::chrono::steady_clock::now();
  for (std::size_t r = 0; r < table.radii.size(); ++r) {
    for (std::size_t k = 0; k < table.kappas.size(); ++k) {
      table.factors.push_back(pivoted_cholesky(st.at(k, r).correlation, cfg.epsilon));
      table.ranks.push_back(table.factors.back().rank());
    }
  }
  timings.emplace_back("cholesky", seconds_since(t));

  const auto dir = prepare_out_dir(cfg);
  {
    CsvWriter f(dir / "ranks.csv", {"radius", "kappa", "rank", "trace_ratio"});
    for (std::size_t r = 0; r < table.radii.size(); ++r) {
      for (std::size_t k = 0; k < table.kappas.size(); ++k) {
        const LowRankFactor &lf = table.factors[r * table.kappas.size() + k];
        f.row({table.radii[r], table.kappas[k], double(lf.rank()), lf.trace_ratio});
      }
    }
  }
  {
    std::ostringstream os;
    os << "R";
    for (double k : table.kappas) os << "\tkappa=" << detail::format_double(k);
    os << "\n";
    for (std::size_t r = 0; r < table.radii.size(); ++r) {
      os << detail::format_double(table.radii[r]);
      for (std::size_t k = 0; k < table.kappas.size(); ++k) os << "\t" << table.rank(r, k);
      os << "\n";
    }
    write_text(dir / "ranks_table.txt", os.str());
  }
  {
    CsvWriter f(dir / "pivot_decay.csv",
                {"radius", "kappa", "step", "pivot_value", "normalized_pivot"});
    for (std::size_t r = 0; r < table.radii.size(); ++r) {
      for (std::size_t k = 0; k < table.kappas.size(); ++k) {
        const LowRankFactor &lf = table.factors[r * table.kappas.size() + k];
        const double p0 = lf.pivot_values.empty() ? 1.0 : lf.pivot_values.front();
        for (std::size_t i = 0; i < lf.pivot_values.size(); ++i) {
          f.row({table.radii[r], table.kappas[k], double(i + 1), lf.pivot_values[i],
                 lf.pivot_values[i] / p0});
        }
      }
    }
  }
  t = std::chrono::steady_clock::now();
  {
    const std::size_t r0 = static_cast<std::size_t>(
        std::min_element(table.radii.begin(), table.radii.end()) - table.radii.begin());
    std::vector<RealVector> ev;
    for (std::size_t k = 0; k < table.kappas.size(); ++k) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(st.at(k, r0).correlation,
                                                      Eigen::EigenvaluesOnly);
      ev.push_back(es.eigenvalues().reverse());
    }
    std::vector<std::string> header{"index"};
    for (double k : table.kappas) header.push_back("kappa_" + detail::format_double(k));
    CsvWriter f(dir / "eigenvalues.csv", header);
    for (Eigen::Index i = 0; i < ev.front().size(); ++i) {
      std::vector<double> row{double(i + 1)};
      for (const auto &e : ev) row.push_back(e(i));
      f.row(row);
    }
  }
  timings.emplace_back("eigenvalues", seconds_since(t));
  timings.emplace_back("total", seconds_since(t0));
  std::vector<std::pair<std::string, std::string>> results{
      {"samples", std::to_string(st.count)}};
  for (std::size_t r = 0; r < table.radii.size(); ++r) {
    for (std::size_t k = 0; k < table.kappas.size(); ++k) {
      results.emplace_back("rank_R" + detail::format_double(table.radii[r]) + "_kappa" +
                               detail::format_double(table.kappas[k]),
                           std::to_string(table.rank(r, k)));
    }
  }
  write_text(dir / "manifest.txt", manifest_text(cfg, "table-ranks", results, timings));
  return table;
}

/// Frozen reference values of the disc solution, with generation metadata.
/// Output depends only on the configuration.
inline std::string oracle_dump_text(const RunConfig &cfg) {
  if (cfg.scatterer != Scatterer::circle) {
    throw ConfigError("oracle-dump: requires problem.scatterer = circle");
  }
  const oracle::MieSolution s =
      oracle::make_mie(cfg.circle_radius, cfg.kappa, cfg.direction);
  using detail::format_double;
  std::ostringstream os;
  os << "# rfscat oracle reference values\n"
     << "[metadata]\n"
     << "generator = rfscat oracle-dump\n"
     << "solution = separation of variables, sound-soft disc\n"
     << "radius = " << format_double(s.radius) << "\n"
     << "kappa = " << format_double(s.kappa) << "\n"
     << "direction = " << format_double(s.direction.x()) << ", "
     << format_double(s.direction.y()) << "\n"
     << "truncation_order = " << s.order << "\n"
     << "\n[scattered]\n# x, y, re_us, im_us\n";
  const std::vector<Point2> pts{{3.0, 0.0}, {0.0, 3.0}, {-3.0, 0.0}, {2.0, 2.0},
                                {5.0, -1.0}, {10.0, 0.0}};
  for (const auto &p : pts) {
    if (p.norm() < s.radius) continue;
    const Complex u = oracle::mie_scattered(s, p);
    os << format_double(p.x()) << ", " << format_double(p.y()) << ", "
       << format_double(u.real()) << ", " << format_double(u.imag()) << "\n";
  }
  os << "\n[farfield]\n# angle_rad, re_uinf, im_uinf\n";
  for (int j = 0; j < 8; ++j) {
    const double a = kTwoPi * j / 8;
    const Complex u = oracle::mie_farfield(s, direction_at(a));
    os << format_double(a) << ", " << format_double(u.real()) << ", "
       << format_double(u.imag()) << "\n";
  }
  os << "\n[neumann]\n# angle_rad, re_dudn, im_dudn\n";
  for (int j = 0; j < 8; ++j) {
    const double a = kTwoPi * j / 8;
    const Complex u = oracle::mie_neumann(s, a);
    os << format_double(a) << ", " << format_double(u.real()) << ", "
       << format_double(u.imag()) << "\n";
  }
  return os.str();
}

inline std::filesystem::path run_oracle_dump(const RunConfig &cfg) {
  const std::string text = oracle_dump_text(cfg);
  const auto path = prepare_out_dir(cfg) / "oracle_values.txt";
  write_text(path, text);
  return path;
}

}  // namespace rfscat
