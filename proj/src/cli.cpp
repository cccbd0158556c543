#include "hcsig/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hcsig/errors.hpp"
#include "hcsig/report.hpp"
#include "hcsig/scenario_io.hpp"
#include "hcsig/schema_text.hpp"

namespace hcsig {
namespace {

enum class OutputFormat { json, csv };

struct GlobalOptions {
  double tol = kDefaultValidityTolerance;
  bool tol_given = false;
  std::optional<OutputFormat> output;
};

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::InvalidArgument, message); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    usage(what + ": \"" + text + "\" is not a number");
  }
  if (used != text.size() || !std::isfinite(value)) usage(what + ": \"" + text + "\" is not a number");
  return value;
}

// "x", "-z", "xz@0.3" (angle in the xz plane), "xy@0.3".
BlochVector setting_from_token(const std::string& token) {
  const auto at = token.find('@');
  if (at == std::string::npos) return parse_bloch(Json(token));
  const std::string plane = token.substr(0, at);
  const double angle = parse_double(token.substr(at + 1), "setting angle");
  if (plane == "xz") return BlochVector::xz_plane(angle);
  if (plane == "xy") return BlochVector::xy_plane(angle);
  usage("unknown setting plane \"" + plane + "\" (expected xz or xy)");
}

std::vector<BlochVector> settings_from_list(const std::string& text) {
  std::vector<BlochVector> out;
  for (const auto& token : split(text, ',')) out.push_back(setting_from_token(token));
  return out;
}

// Flattens a report into "path,value" rows.
void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j.at(i), path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ',' << (j.is_string() ? j.get<std::string>() : dump_json(j)) << '\n';
  }
}

void emit_report(const Json& report, const GlobalOptions& opts, std::ostream& out) {
  if (opts.output.value_or(OutputFormat::json) == OutputFormat::csv) {
    out << "field,value\n";
    flatten(report, "", out);
  } else {
    out << dump_json(report) << '\n';
  }
}

std::string csv_cell(const Json& value) {
  if (value.is_null()) return "";
  if (value.is_string()) return value.get<std::string>();
  return dump_json(value);
}

// Rows share the key order of the first row; CSV by default.
void emit_table(const std::vector<std::string>& columns, const std::vector<Json>& rows,
                const GlobalOptions& opts, std::ostream& out) {
  if (opts.output.value_or(OutputFormat::csv) == OutputFormat::json) {
    out << dump_json(Json(rows)) << '\n';
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_cell(row.at(columns[i]));
    out << '\n';
  }
}

int verdict_exit(Verdict v) {
  return v == Verdict::signaling_witness ? kExitSignaling : kExitConsistent;
}

int cmd_demo(const std::string& name, const GlobalOptions& opts, std::ostream& out) {
  StateVector state = ghz_state();
  BlochVector setting = BlochVector::sigma_z();
  if (name == "w") {
    state = w_state();
    setting = BlochVector::sigma_x();
  } else if (name != "ghz") {
    throw Error(ErrorCode::UnknownDemo, "unknown demo \"" + name + "\" (expected ghz or w)");
  }
  const TimingStructure severed{PairLabel::no_hidden_communication, PairLabel::qm_correlated,
                                PairLabel::qm_correlated};
  const std::optional<Json> timing(std::in_place, Json{{"labels", to_json(severed)}});

  Scenario condition2{state, SettingTriple::all(setting), severed,
                      ScenarioMode::communication_only, opts.tol};
  Scenario free = condition2;
  free.mode = ScenarioMode::mixed_model_probe;
  const WitnessReport r2 = run_scenario(condition2);
  const WitnessReport rf = run_scenario(free);

  emit_report(Json{{"kind", "demo"},
                   {"demo", name},
                   {"condition2", scenario_report_json(condition2, r2, timing)},
                   {"free", scenario_report_json(free, rf, timing)}},
              opts, out);
  return verdict_exit(r2.verdict);
}

int cmd_scenario(const std::string& path, const GlobalOptions& opts, std::ostream& out) {
  ParsedScenario parsed = load_scenario(path);
  if (auto* scenario = std::get_if<Scenario>(&parsed.job)) {
    if (opts.tol_given) scenario->tol = opts.tol;
    const WitnessReport report = run_scenario(*scenario);
    emit_report(scenario_report_json(*scenario, report, parsed.timing_detail), opts, out);
    return verdict_exit(report.verdict);
  }
  BoxScenario& box = std::get<BoxScenario>(parsed.job);
  if (opts.tol_given) box.tol = opts.tol;
  try {
    const ChshBox result =
        mixed_model_box_test(box.state, box.alice, box.bob, box.charlie, box.selection, box.tol);
    Json j = to_json(result);
    if (parsed.timing_detail) j["timing"] = *parsed.timing_detail;
    emit_report(j, opts, out);
    return result.mixed_models_signal ? kExitSignaling : kExitConsistent;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyIntervalEncountered) throw;
    // Some setting pair is already infeasible on its own: a witness.
    emit_report(Json{{"kind", "box_chsh"}, {"empty_interval", true}, {"message", e.what()}}, opts, out);
    return kExitSignaling;
  }
}

struct TimingOptions {
  std::string model;
  double x = 1.0;
  double v_hc = 0.0;
  std::optional<double> t_c;
  double delay_a = 0.0;
  double delay_b = 0.0;
  std::optional<double> v;
  std::string events;
  std::string velocities;
};

int cmd_timing(const TimingOptions& t, const GlobalOptions& opts, std::ostream& out,
               std::ostream& err) {
  Json j{{"kind", "timing"}};
  if (t.model == "pf") {
    std::optional<TimingStructure> labels;
    if (t.t_c) labels = model1_classify(Model1Config::symmetric(t.x, t.v_hc, *t.t_c, t.delay_a, t.delay_b));
    const Json detail = model1_detail(t.x, t.v_hc, t.t_c, t.delay_a, t.delay_b, labels);
    if (detail.at("window").is_null()) {
      err << "hcsig: warning: no admissible detection time for C (the window is empty unless v_hc > 3)\n";
    }
    for (const auto& [key, value] : detail.items()) j[key] = value;
  } else {
    Model2Config cfg = Model2Config::receding(t.v.value_or(0.5));
    if (!t.events.empty()) {
      const auto events = split(t.events, ';');
      if (events.size() != 3) usage("--events must list three x,t pairs separated by ';'");
      for (std::size_t i = 0; i < 3; ++i) {
        const auto xt = split(events[i], ',');
        if (xt.size() != 2) usage("--events entries must be x,t");
        cfg.events[i] = {parse_double(xt[0], "event x"), parse_double(xt[1], "event t"), Frame::laboratory};
      }
    }
    if (!t.velocities.empty()) {
      const auto vs = split(t.velocities, ',');
      if (vs.size() != 3) usage("--velocities must list three speeds");
      for (std::size_t i = 0; i < 3; ++i) cfg.device_velocity[i] = parse_double(vs[i], "velocity");
    }
    const Json detail = model2_detail(cfg, multisim_classify(cfg));
    for (const auto& [key, value] : detail.items()) j[key] = value;
  }
  emit_report(j, opts, out);
  return kExitConsistent;
}

struct SweepOptions {
  bool visibility = false;
  bool box_chsh = false;
  std::string state = "ghz";
  std::string obs;
  std::string plane;
  double theta_min = 0.0;
  double theta_max = 0.0;
  int steps = 1;
  std::string alice;
  std::string bob;
  std::string charlie = "x";
};

std::vector<double> grid(double lo, double hi, int steps) {
  if (steps < 1) usage("--steps must be at least 1");
  if (!(lo <= hi)) usage("grid bounds must satisfy min <= max");
  if (steps == 1 && lo != hi) usage("a one-point grid needs min == max");
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  return out;
}

BlochVector plane_setting(const std::string& plane, double angle) {
  if (plane == "xz") return BlochVector::xz_plane(angle);
  if (plane == "xy") return BlochVector::xy_plane(angle);
  usage("--plane must be xz or xy");
}

const std::vector<std::string> kVisibilityColumns{
    "index", "obs", "theta", "qm_e_ab", "v_min", "v_max", "v_max_unclipped", "status"};
const std::vector<std::string> kBoxColumns{"index", "phi",      "qm_chsh",
                                           "min_chsh", "max_chsh", "mixed_models_signal",
                                           "status"};

int sweep_visibility(const SweepOptions& s, const StateVector& state, const GlobalOptions& opts,
                     std::ostream& out) {
  if (s.obs.empty() == s.plane.empty()) usage("--visibility needs exactly one of --obs and --plane");
  std::vector<std::pair<Json, BlochVector>> points;
  if (!s.obs.empty()) {
    points.emplace_back(nullptr, parse_bloch(Json(s.obs)));
  } else {
    for (double theta : grid(s.theta_min, s.theta_max, s.steps)) {
      points.emplace_back(theta, plane_setting(s.plane, theta));
    }
  }
  std::vector<Json> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Json row{{"index", static_cast<int>(i)},
             {"obs", s.obs.empty() ? s.plane : s.obs},
             {"theta", points[i].first}};
    try {
      const VisibilityReport v = visibility_report(state, SettingTriple::all(points[i].second), opts.tol);
      const Json fields = to_json(v);
      for (const auto& [key, value] : fields.items()) row[key] = value;
      row["status"] = "ok";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroQMValue) throw;
      for (const char* key : {"qm_e_ab", "v_min", "v_max", "v_max_unclipped"}) row[key] = nullptr;
      row["status"] = "zero_qm";
    }
    rows.push_back(std::move(row));
  }
  emit_table(kVisibilityColumns, rows, opts, out);
  return kExitConsistent;
}

int sweep_box(const SweepOptions& s, const StateVector& state, const GlobalOptions& opts,
              std::ostream& out) {
  const BlochVector charlie = setting_from_token(s.charlie);
  // Either explicit setting lists (one row) or the angle family
  // Alice {0, 2 phi}, Bob {phi, -phi} in --plane (default xy).
  std::vector<std::tuple<Json, std::vector<BlochVector>, std::vector<BlochVector>>> points;
  if (!s.alice.empty() || !s.bob.empty()) {
    if (s.alice.empty() || s.bob.empty()) usage("--box-chsh needs both --alice and --bob");
    points.emplace_back(nullptr, settings_from_list(s.alice), settings_from_list(s.bob));
  } else {
    const std::string plane = s.plane.empty() ? "xy" : s.plane;
    for (double phi : grid(s.theta_min, s.theta_max, s.steps)) {
      points.emplace_back(phi,
                          std::vector{plane_setting(plane, 0.0), plane_setting(plane, 2.0 * phi)},
                          std::vector{plane_setting(plane, phi), plane_setting(plane, -phi)});
    }
  }
  bool signal = false;
  std::vector<Json> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& [phi, alice, bob] = points[i];
    Json row{{"index", static_cast<int>(i)}, {"phi", phi}};
    try {
      const ChshBox box = mixed_model_box_test(state, alice, bob, charlie, {}, opts.tol);
      row["qm_chsh"] = box.qm_chsh;
      row["min_chsh"] = box.min_chsh;
      row["max_chsh"] = box.max_chsh;
      row["mixed_models_signal"] = box.mixed_models_signal;
      row["status"] = "ok";
      signal = signal || box.mixed_models_signal;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyIntervalEncountered) throw;
      for (const char* key : {"qm_chsh", "min_chsh", "max_chsh", "mixed_models_signal"}) row[key] = nullptr;
      row["status"] = "empty_interval";
      signal = true;
    }
    rows.push_back(std::move(row));
  }
  emit_table(kBoxColumns, rows, opts, out);
  return signal ? kExitSignaling : kExitConsistent;
}

int cmd_sweep(const SweepOptions& s, const GlobalOptions& opts, std::ostream& out) {
  if (s.visibility == s.box_chsh) usage("sweep needs exactly one of --visibility and --box-chsh");
  const StateVector state = parse_state(Json(s.state));
  return s.visibility ? sweep_visibility(s, state, opts, out) : sweep_box(s, state, opts, out);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signaling witnesses for hidden-communication models of three-party quantum "
               "correlations.",
               "hcsig"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  GlobalOptions opts;
  std::string output;
  bool print_schema = false;
  app.add_option("--tol", opts.tol, "Feasibility tolerance on probabilities (default 1e-9)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--output", output, "Output format: json (reports) or csv (sweeps)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--schema", print_schema, "Print the report JSON schema and exit");

  std::string demo_name;
  auto* demo = app.add_subcommand("demo", "Run a worked example: ghz or w (both branches)");
  demo->add_option("name", demo_name, "ghz or w")->required();

  std::string scenario_path;
  auto* scenario = app.add_subcommand("scenario", "Evaluate a scenario JSON file");
  scenario->add_option("path", scenario_path, "Scenario file")->required();

  TimingOptions timing_opts;
  auto* timing = app.add_subcommand("timing", "Classify the pair timings of a causal model");
  timing->add_option("--model", timing_opts.model, "pf (preferred frame) or multisim")
      ->required()
      ->check(CLI::IsMember({"pf", "multisim"}));
  timing->add_option("--x", timing_opts.x, "pf: half-distance between A and B (default 1)");
  timing->add_option("--v-hc", timing_opts.v_hc, "pf: hidden-communication speed in units of c");
  timing->add_option("--t-c", timing_opts.t_c, "pf: detection time of C; labels need it");
  timing->add_option("--delay-a", timing_opts.delay_a, "pf: delay added to A's detection");
  timing->add_option("--delay-b", timing_opts.delay_b, "pf: delay added to B's detection");
  timing->add_option("--v", timing_opts.v, "multisim: receding device speed (default 0.5)");
  timing->add_option("--events", timing_opts.events, "multisim: \"xA,tA;xB,tB;xC,tC\" lab events");
  timing->add_option("--velocities", timing_opts.velocities, "multisim: \"vA,vB,vC\" device speeds");

  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand(
      "sweep",
      "Tabulate visibility bounds or CHSH boxes over a grid.\n"
      "  --visibility columns: index,obs,theta,qm_e_ab,v_min,v_max,v_max_unclipped,status\n"
      "  --box-chsh columns:   index,phi,qm_chsh,min_chsh,max_chsh,mixed_models_signal,status\n"
      "  status is ok, zero_qm (no QM correlation to scale) or empty_interval (some setting\n"
      "  pair is infeasible by itself). Rows follow grid order.");
  sweep->add_flag("--visibility", sweep_opts.visibility, "Feasible visibility range of E(AB)");
  sweep->add_flag("--box-chsh", sweep_opts.box_chsh, "Severed-AB CHSH box test");
  sweep->add_option("--state", sweep_opts.state, "ghz or w (default ghz)");
  sweep->add_option("--obs", sweep_opts.obs, "visibility: one observable for all parties (x, y, z)");
  sweep->add_option("--plane", sweep_opts.plane, "Setting plane for angle grids: xz or xy");
  sweep->add_option("--theta-min,--phi-min", sweep_opts.theta_min, "Grid start (radians)");
  sweep->add_option("--theta-max,--phi-max", sweep_opts.theta_max, "Grid end (radians)");
  sweep->add_option("--steps", sweep_opts.steps, "Number of grid points (default 1)");
  sweep->add_option("--alice", sweep_opts.alice, "box: Alice's settings, e.g. \"x,y\" or \"xy@0.4,z\"");
  sweep->add_option("--bob", sweep_opts.bob, "box: Bob's settings");
  sweep->add_option("--charlie", sweep_opts.charlie, "box: Charlie's setting (default x)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitConsistent : kExitUsage;
  }

  if (print_schema) {
    out << detail::kReportSchema;
    return kExitConsistent;
  }
  opts.tol_given = app.count("--tol") > 0;
  if (!output.empty()) opts.output = output == "csv" ? OutputFormat::csv : OutputFormat::json;

  try {
    if (*demo) return cmd_demo(demo_name, opts, out);
    if (*scenario) return cmd_scenario(scenario_path, opts, out);
    if (*timing) return cmd_timing(timing_opts, opts, out, err);
    if (*sweep) return cmd_sweep(sweep_opts, opts, out);
    out << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "hcsig: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::InternalConsistency ? kExitInternal : kExitUsage;
  } catch (const std::exception& e) {
    err << "hcsig: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace hcsig
