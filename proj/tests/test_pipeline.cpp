#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rfscat/oracle.hpp"
#include "rfscat/pipeline.hpp"

using namespace rfscat;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
  const fs::path p = fs::temp_directory_path() / ("rfscat_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string without_timings(const std::string &manifest) {
  return manifest.substr(0, manifest.find("[timings]"));
}

std::vector<std::vector<double>> read_csv(const fs::path &p, std::string *header = nullptr) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

RunConfig small_config(const std::string &name) {
  RunConfig c;
  c.n_gamma = 64;
  c.n_sigma = 160;
  c.samples = 6;
  c.dimension = 40;
  c.n_radial = 3;
  c.n_angular = 8;
  c.farfield_directions = 12;
  c.kappa = 1.0;
  c.out_dir = scratch(name).string();
  return c;
}

}  // namespace

TEST(Pipeline, NominalWithoutGridWritesFarFieldOnly) {
  RunConfig c = small_config("nogrid");
  c.n_radial = 0;
  run_nominal(c);
  EXPECT_FALSE(fs::exists(fs::path(c.out_dir) / "field_nominal.csv"));
  std::string header;
  const auto rows = read_csv(fs::path(c.out_dir) / "farfield_nominal.csv", &header);
  EXPECT_EQ(header, "angle_rad,re_uinf,im_uinf");
  EXPECT_EQ(rows.size(), 12u);
}

TEST(Pipeline, NominalCircleMatchesMie) {
  RunConfig c = small_config("circle");
  c.scatterer = Scatterer::circle;
  c.kappa = 2.0;
  c.n_gamma = 128;
  c.sigma_radius = 2.0;
  c.r_min = 3.0;
  c.r_max = 8.0;
  run_nominal(c);
  const auto mie = oracle::make_mie(1.0, 2.0, {1.0, 0.0});
  std::string header;
  const auto field = read_csv(fs::path(c.out_dir) / "field_nominal.csv", &header);
  EXPECT_EQ(header, "x,y,re_u,im_u,abs_u,re_us,im_us");
  ASSERT_EQ(field.size(), 24u);
  for (const auto &r : field) {
    const Complex us = oracle::mie_scattered(mie, {r[0], r[1]});
    EXPECT_LT(std::abs(Complex(r[5], r[6]) - us), 1e-8);
    const Complex u = std::polar(1.0, 2.0 * r[0]) + us;
    EXPECT_LT(std::abs(Complex(r[2], r[3]) - u), 1e-8);
  }
  for (const auto &r : read_csv(fs::path(c.out_dir) / "farfield_nominal.csv")) {
    const Complex f = oracle::mie_farfield(mie, direction_at(r[0]));
    EXPECT_LT(std::abs(Complex(r[1], r[2]) - f), 1e-8 * std::abs(f));
  }
}

TEST(Pipeline, SingleUnperturbedSampleReproducesNominal) {
  RunConfig c = small_config("single");
  c.samples = 1;
  c.amplitude = 0.0;
  c.n_sigma = 300;
  const UqResult uq = run_uq(c);
  const NominalResult nom = run_nominal(c);
  const fs::path dir(c.out_dir);
  const auto e = read_csv(dir / "expectation_grid.csv");
  const auto v = read_csv(dir / "variance_grid.csv");
  ASSERT_EQ(e.size(), nom.grid.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    EXPECT_LT(std::abs(Complex(e[i][2], e[i][3]) - nom.scattered[i]), 1e-8);
    EXPECT_LE(v[i][2], 1e-18);
  }
  for (double var : uq.farfield.variance) EXPECT_LE(var, 1e-18);
  EXPECT_EQ(uq.factor.rank(), 1);
  for (const char *f : {"farfield_stats.csv", "rank_report.txt", "pivots.csv", "manifest.txt"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
}

TEST(Pipeline, DeterministicRunsAreBitwiseIdentical) {
  RunConfig a = small_config("det_a");
  RunConfig b = small_config("det_b");
  b.out_dir = a.out_dir;
  run_uq(a);
  const fs::path dir(a.out_dir);
  std::map<std::string, std::string> first;
  for (const auto &e : fs::directory_iterator(dir)) first[e.path().filename().string()] = slurp(e.path());
  fs::remove_all(dir);
  run_uq(b);
  for (const auto &[name, content] : first) {
    const std::string again = slurp(dir / name);
    if (name == "manifest.txt") {
      EXPECT_EQ(without_timings(content), without_timings(again));
    } else {
      EXPECT_EQ(content, again) << name;
    }
  }
}

TEST(Pipeline, ParallelModeMatchesDeterministic) {
  RunConfig det = small_config("par_det");
  RunConfig par = small_config("par");
  par.mode = RunMode::parallel;
  par.threads = 3;
  const auto s1 = accumulate_samples(det, {1.0, 2.0}, {11.0, 12.0});
  const auto s2 = accumulate_samples(par, {1.0, 2.0}, {11.0, 12.0});
  const auto s3 = accumulate_samples(par, {1.0, 2.0}, {11.0, 12.0});
  ASSERT_EQ(s1.bundles.size(), 4u);
  for (std::size_t i = 0; i < s1.bundles.size(); ++i) {
    EXPECT_LT((s1.bundles[i].correlation - s2.bundles[i].correlation).norm(),
              1e-13 * s1.bundles[i].correlation.norm());
    EXPECT_EQ(s2.bundles[i].correlation, s3.bundles[i].correlation);
    EXPECT_EQ(s2.bundles[i].count, 6);
  }
}

TEST(Pipeline, ObserverSeesEverySampleInOrder) {
  RunConfig c = small_config("observer");
  std::vector<long> seen;
  accumulate_samples(c, {1.0, 4.0}, {11.0}, [&](const SampleRecord &r) {
    seen.push_back(r.index);
    EXPECT_EQ(r.densities.size(), 2u);
    EXPECT_EQ(r.y, HaltonSampler(40).sample(r.index));
  });
  EXPECT_EQ(seen, (std::vector<long>{0, 1, 2, 3, 4, 5}));
}

TEST(Pipeline, ContainmentViolationNamesSample) {
  RunConfig c = small_config("contain");
  c.n_radial = 0;
  c.sigma_radius = 8.6;
  c.samples = 200;
  const HaltonSampler hs(c.dimension);
  const auto p = RadialPerturbation::cubic_decay(c.dimension);
  long expected = -1;
  for (long s = 0; s < c.samples && expected < 0; ++s) {
    if (realize_boundary(PerturbedKite{p, hs.sample(s)}, c.n_gamma).max_radius() >= 8.6) expected = s;
  }
  ASSERT_GE(expected, 0);
  try {
    accumulate_samples(c, {1.0}, {8.6});
    FAIL() << "no containment error";
  } catch (const ContainmentError &e) {
    EXPECT_EQ(e.sample_index(), expected);
    EXPECT_NE(std::string(e.what()).find("sample " + std::to_string(expected)), std::string::npos);
  }
}

TEST(Pipeline, TableRanksFiles) {
  RunConfig c = small_config("table");
  c.table_radii = {11.0, 13.0};
  c.table_wavenumbers = {1.0, 2.0};
  const RankTable t = run_table_ranks(c);
  EXPECT_EQ(t.ranks.size(), 4u);
  const fs::path dir(c.out_dir);
  std::string header;
  const auto rows = read_csv(dir / "ranks.csv", &header);
  EXPECT_EQ(header, "radius,kappa,rank,trace_ratio");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][0], 11.0);
  EXPECT_EQ(rows[1][1], 2.0);
  EXPECT_EQ(int(rows[1][2]), t.rank(0, 1));
  const auto ev = read_csv(dir / "eigenvalues.csv", &header);
  EXPECT_EQ(header, "index,kappa_1,kappa_2");
  EXPECT_EQ(ev.size(), 320u);
  EXPECT_TRUE(fs::exists(dir / "pivot_decay.csv"));
  EXPECT_TRUE(fs::exists(dir / "ranks_table.txt"));
}

TEST(Pipeline, OracleDump) {
  RunConfig c = small_config("oracle");
  EXPECT_THROW(run_oracle_dump(c), ConfigError);
  c.scatterer = Scatterer::circle;
  c.kappa = 2.0;
  const fs::path p = run_oracle_dump(c);
  const std::string first = slurp(p);
  run_oracle_dump(c);
  EXPECT_EQ(first, slurp(p));
  EXPECT_NE(first.find("3, 0, -0.70508882093249381, 0.39778250135594534"), std::string::npos);
}

TEST(Pipeline, ManifestIsLoadableConfig) {
  RunConfig c = small_config("manifest");
  c.samples = 2;
  run_farfield_stats(c);
  const std::string m = slurp(fs::path(c.out_dir) / "manifest.txt");
  // The result sections are not configuration keys; cut them off.
  std::istringstream in(m.substr(m.find("[problem]"), m.find("[result]") - m.find("[problem]")));
  RunConfig back;
  parse_config(back, in, "manifest");
  EXPECT_EQ(to_text(back), to_text(c));
  EXPECT_NE(m.find("samples = 2"), std::string::npos);
  EXPECT_NE(m.find("sampling_seconds"), std::string::npos);
}
