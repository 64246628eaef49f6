#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "shepherd/harness.hpp"

namespace shepherd {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("shepherd_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Small flock so the sweep tests stay quick.
SweepSpec quick_spec() {
  SweepSpec spec;
  spec.params.sheep_count = 20;
  spec.params.step_limit = 150;
  spec.params = with_derived_offsets(spec.params);
  spec.threshold_levels = {-1, 0};
  spec.alpha_levels = {0, 3};
  spec.lambda_levels = {0, 4};
  spec.episodes_per_setup = 6;
  spec.master_seed = 77;
  return spec;
}

TEST(DeriveSeed, DeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(5, 3, 9), derive_seed(5, 3, 9));
  EXPECT_NE(derive_seed(5, 0, 0), derive_seed(5, 0, 1));
  EXPECT_NE(derive_seed(5, 0, 0), derive_seed(6, 0, 0));
}

TEST(DeriveSeed, NoCollisionsOverFullGrid) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t cell = 0; cell < 343; ++cell) {
    for (std::uint64_t e = 0; e < 300; ++e) seen.insert(derive_seed(1, cell, e));
  }
  EXPECT_EQ(seen.size(), 343u * 300u);
}

TEST(SetupIndex, CoversGridBijectively) {
  std::set<std::uint64_t> seen;
  for (int f = -3; f <= 3; ++f) {
    for (int a = 0; a <= 6; ++a) {
      for (int l = 0; l <= 6; ++l) seen.insert(setup_index({f, a, l}));
    }
  }
  EXPECT_EQ(seen.size(), 343u);
  EXPECT_EQ(*seen.begin(), 0u);
  EXPECT_EQ(*seen.rbegin(), 342u);
  EXPECT_EQ(setup_index({0, 0, 0}), 147u);
}

TEST(SweepSpec, DefaultGrid) {
  SweepSpec spec;
  EXPECT_EQ(spec.setups().size(), 343u);
  EXPECT_EQ(spec.episodes_per_setup, 300u);
  EXPECT_NO_THROW(spec.validate());
  EXPECT_EQ(spec.setups().front(), (SetupId{-3, 0, 0}));
  EXPECT_EQ(spec.setups().back(), (SetupId{3, 6, 6}));
}

TEST(SweepSpec, ValidateRejects) {
  SweepSpec a;
  a.alpha_levels = {7};
  EXPECT_THROW(a.validate(), std::out_of_range);
  SweepSpec b;
  b.episodes_per_setup = 0;
  EXPECT_THROW(b.validate(), std::invalid_argument);
  SweepSpec c;
  c.cells = std::vector<SetupId>{{4, 0, 0}};
  EXPECT_THROW(c.validate(), std::out_of_range);
  SweepSpec d;
  d.threshold_levels.clear();
  EXPECT_THROW(d.validate(), std::invalid_argument);
}

TEST(ParseCells, Examples) {
  const auto cells = parse_cells("0:0:0,-3:6:5");
  ASSERT_EQ(cells.size(), 2u);
  EXPECT_EQ(cells[0], (SetupId{0, 0, 0}));
  EXPECT_EQ(cells[1], (SetupId{-3, 6, 5}));
  EXPECT_THROW(parse_cells(""), std::invalid_argument);
  EXPECT_THROW(parse_cells("0:0"), std::invalid_argument);
  EXPECT_THROW(parse_cells("0:0:0:0"), std::invalid_argument);
  EXPECT_THROW(parse_cells("0:x:0"), std::invalid_argument);
  EXPECT_THROW(parse_cells("0:0:0,"), std::invalid_argument);
  EXPECT_THROW(parse_cells("0:0:7"), std::out_of_range);
}

TEST(RunSweep, RunsFullBudgetPerCell) {
  const SweepSpec spec = quick_spec();
  std::vector<SetupId> order;
  RunOptions opt;
  opt.on_cell_done = [&](const CellResult& c) { order.push_back(c.summary.setup); };
  const SweepResult r = run_sweep(spec, opt);
  ASSERT_EQ(r.cells.size(), 8u);
  EXPECT_EQ(order, spec.setups());
  for (const auto& c : r.cells) {
    ASSERT_EQ(c.episodes.size(), 6u);
    EXPECT_EQ(c.summary.episodes, 6u);
    for (std::size_t e = 0; e < c.episodes.size(); ++e) {
      EXPECT_EQ(c.episodes[e].seed,
                derive_seed(spec.master_seed, setup_index(c.summary.setup), e));
    }
  }
}

TEST(RunSweep, IndependentOfThreadCount) {
  const SweepSpec spec = quick_spec();
  const SweepResult one = run_sweep(spec, {1, {}, {}});
  const SweepResult four = run_sweep(spec, {4, {}, {}});
  ASSERT_EQ(one.cells.size(), four.cells.size());
  for (std::size_t i = 0; i < one.cells.size(); ++i) {
    EXPECT_EQ(one.cells[i].episodes, four.cells[i].episodes);
  }
  TempDir d;
  write_results(one, d.path() / "a");
  write_results(four, d.path() / "b");
  for (const char* f : {"episodes.csv", "summary.csv", "sem_curves.csv", "run.json"}) {
    EXPECT_EQ(slurp(d.path() / "a" / f), slurp(d.path() / "b" / f)) << f;
  }
}

TEST(RunSweep, SubsetRowsMatchFullRun) {
  const SweepSpec full = quick_spec();
  SweepSpec subset = full;
  subset.cells = std::vector<SetupId>{{0, 3, 4}, {-1, 0, 0}};
  const SweepResult a = run_sweep(full);
  const SweepResult b = run_sweep(subset);
  for (const auto& cb : b.cells) {
    bool found = false;
    for (const auto& ca : a.cells) {
      if (ca.summary.setup == cb.summary.setup) {
        EXPECT_EQ(ca.episodes, cb.episodes);
        found = true;
      }
    }
    EXPECT_TRUE(found);
  }
}

TEST(WriteResults, FilesAndRowCounts) {
  SweepSpec spec = quick_spec();
  spec.cells = std::vector<SetupId>{{0, 0, 0}};
  spec.episodes_per_setup = 10;
  TempDir d;
  write_results(run_sweep(spec), d.path());
  const auto ep = lines(d.path() / "episodes.csv");
  const auto sm = lines(d.path() / "summary.csv");
  const auto cv = lines(d.path() / "sem_curves.csv");
  ASSERT_EQ(ep.size(), 11u);
  ASSERT_EQ(sm.size(), 2u);
  ASSERT_EQ(cv.size(), 10u);
  EXPECT_EQ(ep[0], "setup_f,setup_alpha,setup_lambda,episode,seed,success,steps");
  EXPECT_EQ(sm[0],
            "f_level,alpha_level,lambda_level,episodes,success_rate_pct,mean_ns,sem,sem_percent,"
            "stable_at");
  EXPECT_EQ(cv[0], "f_level,alpha_level,lambda_level,episode,mean_ns,sem,sem_percent");

  const auto run = nlohmann::json::parse(slurp(d.path() / "run.json"));
  EXPECT_EQ(run["master_seed"].get<std::uint64_t>(), 77u);
  EXPECT_EQ(run["params"]["sheep_count"].get<int>(), 20);
  EXPECT_EQ(run["version"].get<std::string>(), std::string(library_version()));
}

TEST(WriteResults, ZeroSuccessRow) {
  SweepSpec spec;
  spec.params.sheep_count = 20;
  spec.params.step_limit = 1000;
  spec.params = with_derived_offsets(spec.params);
  spec.params.shepherd_speed = 0;  // nothing ever gets herded
  spec.params.sheep_speed = 0;
  spec.cells = std::vector<SetupId>{{0, 0, 0}};
  spec.episodes_per_setup = 3;
  TempDir d;
  write_results(run_sweep(spec), d.path());
  const auto sm = lines(d.path() / "summary.csv");
  ASSERT_EQ(sm.size(), 2u);
  const auto f = split(sm[1]);
  ASSERT_EQ(f.size(), 9u);
  EXPECT_EQ(f[4], "0.0");
  EXPECT_EQ(f[5], "1000.0");
  EXPECT_EQ(f[6], "0.0");
  // Identical step counts give SEM-P 0, which is stable from the second episode.
  EXPECT_EQ(f[7], "0.0");
  EXPECT_EQ(f[8], "2");
}

TEST(WriteResults, SummaryRecomputedFromEpisodes) {
  const SweepSpec spec = quick_spec();
  TempDir d;
  write_results(run_sweep(spec), d.path());
  std::map<std::tuple<int, int, int>, std::vector<double>> steps;
  std::map<std::tuple<int, int, int>, int> wins;
  const auto ep = lines(d.path() / "episodes.csv");
  for (std::size_t i = 1; i < ep.size(); ++i) {
    const auto f = split(ep[i]);
    const auto key = std::make_tuple(std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]));
    steps[key].push_back(std::stod(f[6]));
    wins[key] += std::stoi(f[5]);
  }
  const auto sm = lines(d.path() / "summary.csv");
  ASSERT_EQ(sm.size(), steps.size() + 1);
  for (std::size_t i = 1; i < sm.size(); ++i) {
    const auto f = split(sm[i]);
    const auto key = std::make_tuple(std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]));
    const auto& xs = steps.at(key);
    const double n = static_cast<double>(xs.size());
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1));
    EXPECT_EQ(std::stoul(f[3]), xs.size());
    EXPECT_NEAR(std::stod(f[4]), 100.0 * wins.at(key) / n, 1e-9);
    EXPECT_NEAR(std::stod(f[5]), mean, 1e-9);
    EXPECT_NEAR(std::stod(f[6]), sd / std::sqrt(n), 1e-9);
    if (!f[7].empty()) EXPECT_NEAR(std::stod(f[7]), 100 * sd / std::sqrt(n) / mean, 1e-9);
  }
}

TEST(ResultWriter, UnwritableDirectoryNamesPath) {
  try {
    ResultWriter w("/proc/shepherd_cannot_write_here", quick_spec());
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/proc/shepherd_cannot_write_here"), std::string::npos);
  }
}

TEST(RunSweep, WritesTrajectoriesOnRequest) {
  SweepSpec spec = quick_spec();
  spec.cells = std::vector<SetupId>{{0, 0, 0}};
  spec.episodes_per_setup = 2;
  TempDir d;
  RunOptions opt;
  opt.trajectory_dir = d.path() / "traj";
  run_sweep(spec, opt);
  EXPECT_TRUE(fs::exists(d.path() / "traj" / "f0_a0_l0_ep0.csv"));
  EXPECT_TRUE(fs::exists(d.path() / "traj" / "f0_a0_l0_ep1.csv"));
}

}  // namespace
}  // namespace shepherd
