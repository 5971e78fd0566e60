// Command-line driver: nominal, uq, table-ranks, farfield-stats, oracle-dump.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "rfscat/config.hpp"
#include "rfscat/errors.hpp"
#include "rfscat/pipeline.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::vector<std::string> overrides;
  bool deterministic = false;
  int threads = 0;
  std::string out_dir;
};

void add_common(CLI::App *cmd, CommonOptions &o) {
  cmd->add_option("--config", o.config, "Configuration file (INI sections)");
  cmd->add_option("--set", o.overrides, "Override, section.key=value (repeatable)");
  cmd->add_flag("--deterministic", o.deterministic,
                "Single-threaded, index-ordered accumulation");
  cmd->add_option("--threads", o.threads, "Worker threads (selects parallel mode)");
  cmd->add_option("--out-dir", o.out_dir, "Output directory");
}

rfscat::RunConfig resolve(const CommonOptions &o) {
  rfscat::RunConfig cfg = o.config.empty() ? rfscat::RunConfig{} : rfscat::load_config(o.config);
  for (const auto &s : o.overrides) rfscat::apply_override(cfg, s);
  if (o.threads > 0) {
    cfg.threads = o.threads;
    cfg.mode = rfscat::RunMode::parallel;
  }
  if (o.deterministic) cfg.mode = rfscat::RunMode::deterministic;
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Scattering by randomly perturbed obstacles"};
  app.require_subcommand(1);
  CommonOptions opts;
  auto *nominal = app.add_subcommand("nominal", "Nominal total field and far field");
  auto *uq = app.add_subcommand("uq", "Expectation and variance of the scattered field");
  auto *table = app.add_subcommand("table-ranks", "Low-rank factor ranks over radii and wavenumbers");
  auto *ff = app.add_subcommand("farfield-stats", "Expected far field and its standard deviation");
  auto *oracle = app.add_subcommand("oracle-dump", "Reference values for a circular scatterer");
  for (auto *c : {nominal, uq, table, ff, oracle}) add_common(c, opts);
  CLI11_PARSE(app, argc, argv);

  try {
    const rfscat::RunConfig cfg = resolve(opts);
    if (nominal->parsed()) {
      const auto r = rfscat::run_nominal(cfg);
      std::printf("nominal: %zu grid points, %zu directions -> %s\n", r.grid.size(),
                  r.angles.size(), cfg.out_dir.c_str());
    } else if (uq->parsed()) {
      const auto r = rfscat::run_uq(cfg);
      std::printf("uq: %ld samples, rank %d, trace ratio %.3e -> %s\n", r.statistics.count,
                  r.factor.rank(), r.factor.trace_ratio, cfg.out_dir.c_str());
    } else if (table->parsed()) {
      const auto t = rfscat::run_table_ranks(cfg);
      std::printf("R");
      for (double k : t.kappas) std::printf("\tkappa=%g", k);
      std::printf("\n");
      for (std::size_t r = 0; r < t.radii.size(); ++r) {
        std::printf("%g", t.radii[r]);
        for (std::size_t k = 0; k < t.kappas.size(); ++k) std::printf("\t%d", t.rank(r, k));
        std::printf("\n");
      }
    } else if (ff->parsed()) {
      const auto r = rfscat::run_farfield_stats(cfg);
      std::printf("farfield-stats: %ld samples, rank %d -> %s\n", r.statistics.count,
                  r.factor.rank(), cfg.out_dir.c_str());
    } else if (oracle->parsed()) {
      const auto path = rfscat::run_oracle_dump(cfg);
      std::printf("oracle-dump: %s\n", path.string().c_str());
    }
  } catch (const rfscat::ContainmentError &e) {
    std::fprintf(stderr, "containment error (sample %ld): %s\n", e.sample_index(), e.what());
    return 3;
  } catch (const rfscat::ConfigError &e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
