#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vibcool/vibcool.h"

namespace fs = std::filesystem;

namespace {

// Deliberately small system so the whole pipeline runs in seconds.
const char* kTinyConfig =
    "[system]\n"
    "mass = 2000\nr_min = 3\nr_max = 9.5\nn_points = 64\n"
    "ground = morse 0.02 0.8 5.0\nexcited = morse 0.016 0.75 5.15\n"
    "electronic_gap = 0.06\ndipole = 1\nn_ground = 6\nn_excited = 4\n"
    "[pulse]\n"
    "t_final = 3000\nn_steps = 300\ncenter = 1500\nfwhm = 600\npeak = 5e-4\n"
    "carrier = 0.0591\n"
    "[functional]\nvariant = assembly\nn_max = 3\nn_star = 1\n"
    "[krotov]\nlambda = 100\nmax_iterations = 8\ntol_delta_j = 0\n"
    "[cooling]\ninitial = equipartition 1 3\nn_cycles = 30\n"
    "[output]\ndirectory = capi_out\n";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SessionGuard {
  vibcool_session* s = nullptr;
  ~SessionGuard() { vibcool_close(s); }
};

}  // namespace

TEST_CASE("version string is present") {
  CHECK(std::string(vibcool_version()).size() > 0);
}

TEST_CASE("pipeline writes every artifact and reports metrics") {
  SessionGuard g;
  REQUIRE(vibcool_open_text(kTinyConfig, &g.s) == VIBCOOL_OK);

  std::vector<std::string> lines;
  vibcool_set_progress(
      g.s,
      [](void* user, const char* line) {
        static_cast<std::vector<std::string>*>(user)->emplace_back(line);
      },
      &lines);

  REQUIRE(vibcool_run(g.s, "pipeline", "capi_out_a") == VIBCOOL_OK);

  for (const char* f :
       {"levels.csv", "fcmap.csv", "convergence.csv", "pulse.csv", "spectrum.csv",
        "cooling_history.csv", "cooling_summary.json", "effective_config.cfg"}) {
    CHECK_MESSAGE(fs::exists(fs::path("capi_out_a") / f), f);
  }
  CHECK_FALSE(fs::exists(fs::path("capi_out_a") / "INCOMPLETE"));

  bool saw_iteration_line = false;
  for (const auto& l : lines) {
    if (l.find("iter") != std::string::npos) saw_iteration_line = true;
  }
  CHECK(saw_iteration_line);

  double v = -1;
  CHECK(vibcool_metric(g.s, "krotov.final_j_total", &v) == VIBCOOL_OK);
  CHECK(v >= 0.0);
  CHECK(vibcool_metric(g.s, "cooling.max_target_population", &v) == VIBCOOL_OK);
  CHECK(v >= 0.0);
  CHECK(v <= 1.0);
  CHECK(vibcool_metric(g.s, "pulse.energy_uj", &v) == VIBCOOL_OK);
  CHECK(v >= 0.0);
  CHECK(vibcool_metric(g.s, "no.such.metric", &v) == VIBCOOL_ERROR_CONFIG);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const char* dir : {"capi_det_1", "capi_det_2"}) {
    SessionGuard g;
    REQUIRE(vibcool_open_text(kTinyConfig, &g.s) == VIBCOOL_OK);
    REQUIRE(vibcool_run(g.s, "pipeline", dir) == VIBCOOL_OK);
  }
  for (const char* f : {"levels.csv", "fcmap.csv", "convergence.csv", "pulse.csv",
                        "spectrum.csv", "cooling_history.csv", "cooling_summary.json"}) {
    CHECK_MESSAGE(slurp(fs::path("capi_det_1") / f) == slurp(fs::path("capi_det_2") / f), f);
  }
}

TEST_CASE("overrides switch the variant and the iteration limit") {
  SessionGuard g;
  REQUIRE(vibcool_open_text(kTinyConfig, &g.s) == VIBCOOL_OK);
  REQUIRE(vibcool_set(g.s, "functional.variant", "symmetrized") == VIBCOOL_OK);
  REQUIRE(vibcool_set(g.s, "krotov.max_iterations", "4") == VIBCOOL_OK);
  REQUIRE(vibcool_run(g.s, "optimize", "capi_out_sym") == VIBCOOL_OK);
  const std::string conv = slurp(fs::path("capi_out_sym") / "convergence.csv");
  CHECK(conv.find("J_sym") != std::string::npos);
  double iters = 0;
  REQUIRE(vibcool_metric(g.s, "krotov.iterations", &iters) == VIBCOOL_OK);
  CHECK(iters == 4.0);
}

TEST_CASE("solve on a tabulated harmonic curve reproduces the ladder") {
  // Harmonic spectra are an analytic end-to-end check of the solve stage.
  const double mass = 1000.0, omega = 0.01, r_e = 6.0;
  {
    std::ofstream pot("capi_harmonic.dat");
    pot << "# harmonic test curve\n# units: a0 hartree\n";
    for (int i = 0; i <= 600; ++i) {
      const double r = 0.02 * i;
      pot << r << " " << 0.5 * mass * omega * omega * (r - r_e) * (r - r_e) << "\n";
    }
  }
  const std::string cfg =
      "[system]\n"
      "mass = 1000\nr_min = 0.5\nr_max = 11.5\nn_points = 256\n"
      "ground = tabulated capi_harmonic.dat\nexcited = tabulated capi_harmonic.dat\n"
      "electronic_gap = 0.06\nn_ground = 6\nn_excited = 4\n"
      "[pulse]\nt_final = 1000\nn_steps = 100\ncenter = 500\nfwhm = 200\npeak = 1e-4\n"
      "carrier = 0.06\n"
      "[functional]\nn_max = 3\nn_star = 1\n";
  SessionGuard g;
  REQUIRE(vibcool_open_text(cfg.c_str(), &g.s) == VIBCOOL_OK);
  REQUIRE(vibcool_run(g.s, "solve", "capi_harm_out") == VIBCOOL_OK);

  std::ifstream in("capi_harm_out/levels.csv");
  REQUIRE(in.good());
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.find("surface") == 0) continue;
    std::istringstream ls(line);
    std::string surface, cell;
    std::getline(ls, surface, ',');
    std::getline(ls, cell, ',');
    const int v = std::stoi(cell);
    std::getline(ls, cell, ',');
    const double energy = std::stod(cell);
    CHECK(std::abs(energy - omega * (v + 0.5)) / (omega * (v + 0.5)) < 1e-8);
    ++checked;
  }
  CHECK(checked == 10);  // 6 ground + 4 excited rows
  std::remove("capi_harmonic.dat");
}

TEST_CASE("trajectory dumps are written when requested") {
  SessionGuard g;
  const std::string cfg = std::string(kTinyConfig) + "dump_trajectories = 1\n";
  REQUIRE(vibcool_open_text(cfg.c_str(), &g.s) == VIBCOOL_OK);
  REQUIRE(vibcool_set(g.s, "krotov.max_iterations", "2") == VIBCOOL_OK);
  REQUIRE(vibcool_run(g.s, "optimize", "capi_out_dump") == VIBCOOL_OK);
  for (int n = 0; n <= 3; ++n) {
    CHECK(fs::exists(fs::path("capi_out_dump") /
                     ("trajectory_member_" + std::to_string(n) + ".csv")));
  }
}

TEST_CASE("config failures surface as status 2 with a message") {
  vibcool_session* s = nullptr;
  CHECK(vibcool_open_text("[functional]\nlambda_ss = -2\n", &s) == VIBCOOL_ERROR_CONFIG);
  CHECK(s == nullptr);
  CHECK(std::string(vibcool_last_error(nullptr)).size() > 0);

  CHECK(vibcool_open("/no/such/file.cfg", &s) == VIBCOOL_ERROR_CONFIG);
  CHECK(s == nullptr);

  SessionGuard g;
  REQUIRE(vibcool_open_text(kTinyConfig, &g.s) == VIBCOOL_OK);
  CHECK(vibcool_run(g.s, "no-such-stage", nullptr) == VIBCOOL_ERROR_CONFIG);
  CHECK(std::string(vibcool_last_error(g.s)).find("no-such-stage") != std::string::npos);

  CHECK(vibcool_set(g.s, "krotov.lambda", "-5") == VIBCOOL_ERROR_CONFIG);
  // The bad override must not poison later runs.
  CHECK(vibcool_run(g.s, "solve", "capi_out_solve") == VIBCOOL_OK);
}

TEST_CASE("numerical failures return status 3 and leave the incomplete marker") {
  SessionGuard g;
  REQUIRE(vibcool_open_text(kTinyConfig, &g.s) == VIBCOOL_OK);
  // An absurdly aggressive step size blows up the first iteration.
  REQUIRE(vibcool_set(g.s, "krotov.lambda", "1e-9") == VIBCOOL_OK);
  CHECK(vibcool_run(g.s, "optimize", "capi_out_blowup") == VIBCOOL_ERROR_NUMERIC);
  CHECK(std::string(vibcool_last_error(g.s)).find("optimize") != std::string::npos);
  CHECK(fs::exists(fs::path("capi_out_blowup") / "INCOMPLETE"));
}
