#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "hcsig/cli.hpp"
#include "hcsig/report.hpp"

using namespace hcsig;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hcsig");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(HCSIG_TEST_DATA_DIR) + "/" + name; }

bool has(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("demo ghz") {
  const Run a = run({"demo", "ghz"});
  CHECK(a.code == kExitSignaling);
  CHECK(has(a.out, "\"worst_probability\": -0.125"));
  CHECK(has(a.out, "[1.0, 0.0]"));
  CHECK(has(a.out, "\"verdict\": \"consistent_unique_qm\""));
  CHECK(a.out == run({"demo", "ghz"}).out);

  const Json j = Json::parse(a.out);
  const Run loose = run({"--tol", "1e-6", "demo", "ghz"});
  const Json k = Json::parse(loose.out);
  CHECK(loose.code == a.code);
  CHECK(j["condition2"]["verdict"] == k["condition2"]["verdict"]);
  CHECK(j["free"]["verdict"] == k["free"]["verdict"]);
  // Global flags may also follow the subcommand.
  CHECK(run({"demo", "ghz", "--tol", "1e-6"}).out == loose.out);
}

TEST_CASE("demo w") {
  const Run a = run({"demo", "w"});
  CHECK(a.code == kExitSignaling);
  CHECK(has(a.out, "\"e_ab_interval\": [0.333333333333, 1.0]"));
  CHECK(run({"demo", "nope"}).code == kExitUsage);
}

TEST_CASE("scenario files") {
  const Run s = run({"scenario", data("ghz_condition2.json")});
  CHECK(s.code == kExitSignaling);
  const Json demo = Json::parse(run({"demo", "ghz"}).out);
  CHECK(s.out == dump_json(demo["condition2"]) + "\n");

  const Run pf = run({"scenario", data("w_pf.json")});
  CHECK(pf.code == kExitSignaling);
  CHECK(has(pf.out, "\"window\": [0.75, 1.0]"));

  CHECK(run({"scenario", data("w_probe_constraints.json")}).code == kExitConsistent);
  CHECK(run({"scenario", data("multisim_probe.json")}).code == kExitConsistent);

  const Run box = run({"scenario", data("ghz_box.json")});
  CHECK(box.code == kExitConsistent);
  CHECK(has(box.out, "\"kind\": \"box_chsh\""));

  const Run bad = run({"scenario", data("non_normalized.json")});
  CHECK(bad.code == kExitUsage);
  CHECK(has(bad.err, "norm deficit"));

  const Run aa = run({"scenario", data("after_after.json")});
  CHECK(aa.code == kExitUsage);
  CHECK(has(aa.err, "undefined semantics"));

  CHECK(run({"scenario", data("unknown_key.json")}).code == kExitUsage);
  CHECK(run({"scenario", data("does_not_exist.json")}).code == kExitUsage);
}

TEST_CASE("timing command") {
  const Run pf = run({"timing", "--model", "pf", "--x", "1", "--v-hc", "4", "--t-c", "0.8"});
  CHECK(pf.code == kExitConsistent);
  const Json j = Json::parse(pf.out);
  CHECK(j["window"] == Json::array({0.75, 1.0}));
  CHECK(j["labels"]["ab"] == "no_hc");
  CHECK(j["labels"]["ac"] == "qm");

  const Run slow = run({"timing", "--model", "pf", "--x", "1", "--v-hc", "3"});
  CHECK(slow.code == kExitConsistent);
  CHECK(Json::parse(slow.out)["window"].is_null());
  CHECK(has(slow.err, "warning"));

  const Run ms = run({"timing", "--model", "multisim", "--v", "0.5"});
  CHECK(Json::parse(ms.out)["orderings"]["ab"] == "before_before");
  const Run ev = run({"timing", "--model", "multisim", "--events", "-1,0;1,0.3;0,0.6",
                      "--velocities", "0,0,0"});
  CHECK(Json::parse(ev.out)["orderings"]["ab"] == "before_after");

  CHECK(run({"timing", "--model", "multisim", "--v", "1.2"}).code == kExitUsage);
  CHECK(run({"timing", "--model", "pf", "--x", "1", "--v-hc", "-2"}).code == kExitUsage);
  CHECK(run({"timing", "--model", "warp"}).code == kExitUsage);
}

TEST_CASE("sweeps") {
  const Run g = run({"sweep", "--visibility", "--state", "ghz", "--obs", "z"});
  CHECK(g.code == kExitConsistent);
  CHECK(has(g.out, "index,obs,theta,qm_e_ab,v_min,v_max,v_max_unclipped,status\n"));
  const Json rows = Json::parse(run({"--output", "json", "sweep", "--visibility", "--state", "w",
                                     "--obs", "x"}).out);
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(rows[0]["v_min"].get<double>() - 0.5) < 1e-6);

  const Run grid = run({"sweep", "--visibility", "--state", "w", "--plane", "xz", "--theta-min",
                        "0", "--theta-max", "1.5", "--steps", "4"});
  CHECK(std::count(grid.out.begin(), grid.out.end(), '\n') == 5);
  CHECK(grid.out == run({"sweep", "--visibility", "--state", "w", "--plane", "xz", "--theta-min",
                         "0", "--theta-max", "1.5", "--steps", "4"}).out);

  const Run zero = run({"sweep", "--visibility", "--state", "ghz", "--obs", "x"});
  CHECK(has(zero.out, "zero_qm"));

  const Run box = run({"--output", "json", "sweep", "--box-chsh", "--state", "ghz", "--alice",
                       "x,y", "--bob", "x,y"});
  CHECK(box.code == kExitConsistent);
  CHECK(Json::parse(box.out)[0]["min_chsh"].get<double>() <= 2.0);

  const Run phi = run({"sweep", "--box-chsh", "--state", "w", "--phi-min", "0", "--phi-max", "1",
                       "--steps", "3"});
  CHECK(has(phi.out, "index,phi,qm_chsh,min_chsh,max_chsh,mixed_models_signal,status\n"));

  CHECK(run({"sweep", "--visibility", "--state", "w", "--plane", "xz", "--steps", "0"}).code == kExitUsage);
  CHECK(run({"sweep", "--visibility", "--state", "w", "--plane", "xz", "--theta-min", "1",
             "--theta-max", "0", "--steps", "3"}).code == kExitUsage);
  CHECK(run({"sweep", "--state", "w"}).code == kExitUsage);
  CHECK(run({"sweep", "--box-chsh", "--alice", "x,q", "--bob", "x,y"}).code == kExitUsage);
}

TEST_CASE("global flags") {
  const Run schema = run({"--schema"});
  CHECK(schema.code == kExitConsistent);
  CHECK(Json::parse(schema.out).contains("$defs"));
  CHECK(run({"--help"}).code == kExitConsistent);
  CHECK(run({"--frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  const Run csv = run({"--output", "csv", "demo", "ghz"});
  CHECK(csv.code == kExitSignaling);
  CHECK(has(csv.out, "condition2.worst_probability,-0.125\n"));
}
