#include <doctest.h>

#include <fstream>
#include <sstream>

#include "enkcf/cli.hpp"
#include "support/synthetic.hpp"

using namespace enkcf;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "enkcf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

/// Two small moving-square sequences under one dataset directory.
fs::path fixture_dataset() {
  static const fs::path root = [] {
    const fs::path dir = enkcf::testing::fresh_temp_dir("cli_dataset");
    for (int k = 0; k < 2; ++k) {
      enkcf::testing::SyntheticSpec spec{.width = 96, .height = 80, .frames = 3,
                                         .object_width = 20, .object_height = 20};
      spec.center = [k](int t) { return Point{40.0 + 2 * t + 5 * k, 40.0 + t}; };
      spec.seed = 10 + k;
      enkcf::testing::write_fixture(dir / (k == 0 ? "alpha" : "beta"),
                                    enkcf::testing::make_sequence(spec));
    }
    return dir;
  }();
  return root;
}

std::string table_arg() { return enkcf::testing::prototype_table_file().string(); }

}  // namespace

TEST_CASE("config-dump prints an editable document") {
  const Result r = cli({"config-dump"});
  CHECK(r.status == 0);
  CHECK(r.out.find("\nlearning_rate_L = 0.020\n") != std::string::npos);
  CHECK(r.out.find("\nscale_pool = 1.05,1.0,0.952381\n") != std::string::npos);
  CHECK(r.out.find("\nn = 5\n") != std::string::npos);

  const fs::path dir = enkcf::testing::fresh_temp_dir("cli_dump");
  std::ofstream(dir / "a.cfg") << r.out;
  const Result again = cli({"config-dump", "--config", (dir / "a.cfg").string()});
  CHECK(again.out == r.out);

  const Result flags = cli({"config-dump", "--low-fps-mode", "--strict-paper", "--seed", "7"});
  CHECK(flags.out.find("\nevery_frame_L = true\n") != std::string::npos);
  CHECK(flags.out.find("\npf_enabled = false\n") != std::string::npos);
  CHECK(flags.out.find("\nrecenter_on_scale = false\n") != std::string::npos);
  CHECK(flags.out.find("\nseed = 7\n") != std::string::npos);
}

TEST_CASE("track writes one row per frame and overlays") {
  const fs::path out = enkcf::testing::fresh_temp_dir("cli_track");
  const std::vector<std::string> args{"track", "--dataset", fixture_dataset().string(), "--seq",
                                      "alpha", "--out", out.string(), "--cn-table", table_arg(),
                                      "--overlay", "--no-timing"};
  const Result r = cli(args);
  REQUIRE_MESSAGE(r.status == 0, r.err);
  const std::string csv = slurp(out / "alpha_results.csv");
  CHECK(lines(csv) == 4);
  CHECK(csv.rfind("frame_index,pred_x,pred_y,pred_w,pred_h,seconds\n", 0) == 0);
  std::size_t images = 0;
  for (const auto& e : fs::directory_iterator(out / "alpha_overlay")) images += e.is_regular_file();
  CHECK(images == 3);

  fs::rename(out / "alpha_results.csv", out / "first.csv");
  REQUIRE(cli(args).status == 0);
  CHECK(slurp(out / "first.csv") == slurp(out / "alpha_results.csv"));

  // A sequence directory can also be passed directly.
  const Result direct = cli({"track", "--dataset", (fixture_dataset() / "beta").string(), "--out",
                             out.string(), "--cn-table", table_arg()});
  CHECK(direct.status == 0);
  CHECK(fs::exists(out / "beta_results.csv"));
}

TEST_CASE("eval summarises every sequence") {
  const fs::path out = enkcf::testing::fresh_temp_dir("cli_eval");
  const Result r = cli({"eval", "--dataset", fixture_dataset().string(), "--out", out.string(),
                        "--cn-table", table_arg(), "--jobs", "2"});
  REQUIRE_MESSAGE(r.status == 0, r.err);
  const std::string summary = slurp(out / "summary.csv");
  CHECK(lines(summary) == 4);
  CHECK(summary.find("\nalpha,") != std::string::npos);
  CHECK(summary.find("\naggregate,") != std::string::npos);
  CHECK(lines(slurp(out / "alpha_precision.csv")) == 52);
  CHECK(lines(slurp(out / "aggregate_success.csv")) == 22);

  const fs::path one = enkcf::testing::fresh_temp_dir("cli_eval_one");
  CHECK(cli({"eval", "--dataset", fixture_dataset().string(), "--seq", "beta", "--out",
             one.string(), "--cn-table", table_arg()})
            .status == 0);
  CHECK(lines(slurp(one / "summary.csv")) == 3);
}

TEST_CASE("eval reruns agree") {
  auto summary = [](const std::string& name) {
    const fs::path out = enkcf::testing::fresh_temp_dir(name);
    cli({"eval", "--dataset", fixture_dataset().string(), "--out", out.string(), "--cn-table",
         table_arg(), "--no-timing"});
    return slurp(out / "summary.csv");
  };
  const std::string a = summary("cli_rerun_a");
  CHECK(!a.empty());
  CHECK(a == summary("cli_rerun_b"));
}

TEST_CASE("command errors") {
  const fs::path out = enkcf::testing::fresh_temp_dir("cli_errors");
  const fs::path empty = enkcf::testing::fresh_temp_dir("cli_empty");
  Result r = cli({"eval", "--dataset", empty.string(), "--out", out.string(), "--cn-table",
                  table_arg()});
  CHECK(r.status != 0);
  CHECK(r.err.find("no sequences") != std::string::npos);

  r = cli({"track", "--dataset", fixture_dataset().string(), "--out", out.string()});
  CHECK(r.status != 0);
  CHECK(r.err.find("color-naming table") != std::string::npos);

  r = cli({"track", "--dataset", fixture_dataset().string(), "--out", out.string(), "--cn-table",
           table_arg()});
  CHECK(r.status != 0);
  CHECK(r.err.find("exactly one sequence") != std::string::npos);

  r = cli({"eval", "--dataset", fixture_dataset().string(), "--seq", "gamma", "--cn-table",
           table_arg(), "--out", out.string()});
  CHECK(r.status != 0);

  CHECK(cli({"track", "--dataset", "/nonexistent/data", "--cn-table", table_arg()}).status != 0);
  CHECK(cli({"frobnicate"}).status != 0);
  CHECK(cli({}).status != 0);

  // A broken sequence fails the run but the others still complete.
  const fs::path mixed = enkcf::testing::fresh_temp_dir("cli_mixed");
  fs::copy(fixture_dataset() / "alpha", mixed / "alpha", fs::copy_options::recursive);
  fs::create_directories(mixed / "broken" / "img");
  r = cli({"eval", "--dataset", mixed.string(), "--out", out.string(), "--cn-table", table_arg()});
  CHECK(r.status != 0);
  CHECK(r.err.find("broken") != std::string::npos);
  CHECK(lines(slurp(out / "summary.csv")) == 3);
}
