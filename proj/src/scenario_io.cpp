#include "hcsig/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <tuple>

#include "hcsig/errors.hpp"

namespace hcsig {
namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::ValidationError, message);
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!j.is_object()) invalid(where + " must be a JSON object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!keys.contains(key)) invalid(where + ": unknown key \"" + key + "\"");
  }
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) invalid(what + " must be a number");
  return j.get<double>();
}

double required_number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) invalid(where + ": missing \"" + key + "\"");
  return number(j.at(key), where + "." + key);
}

double optional_number(const Json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j.at(key), where + "." + key) : fallback;
}

bool is_single_setting(const Json& j) {
  return j.is_string() || (j.is_array() && j.size() == 3 &&
                           std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_number(); }));
}

std::vector<BlochVector> parse_setting_list(const Json& j, const std::string& party) {
  if (is_single_setting(j)) return {parse_bloch(j)};
  if (!j.is_array() || j.empty()) invalid("settings." + party + " must be a setting or a list of settings");
  std::vector<BlochVector> out;
  for (const auto& entry : j) {
    if (!is_single_setting(entry)) invalid("settings." + party + " contains a malformed setting");
    out.push_back(parse_bloch(entry));
  }
  return out;
}

std::array<SpacetimeEvent, 3> parse_events(const Json& j, Frame frame) {
  if (!j.is_array() || j.size() != 3) invalid("timing.events must list three [x, t] pairs");
  std::array<SpacetimeEvent, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const Json& e = j.at(i);
    if (!e.is_array() || e.size() != 2) invalid("timing.events entries must be [x, t]");
    out[i] = {number(e.at(0), "event x"), number(e.at(1), "event t"), frame};
  }
  return out;
}

std::pair<int, int> parse_index_pair(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j.at(0).is_number_integer() ||
      !j.at(1).is_number_integer()) {
    invalid(where + " must be a pair of integer indices");
  }
  return {j.at(0).get<int>(), j.at(1).get<int>()};
}

}  // namespace

BlochVector parse_bloch(const Json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "x") return BlochVector::sigma_x();
    if (name == "y") return BlochVector::sigma_y();
    if (name == "z") return BlochVector::sigma_z();
    if (name == "-x") return -BlochVector::sigma_x();
    if (name == "-y") return -BlochVector::sigma_y();
    if (name == "-z") return -BlochVector::sigma_z();
    invalid("unknown named setting \"" + name + "\" (expected x, y, z, -x, -y or -z)");
  }
  if (!is_single_setting(j)) invalid("a setting must be a name or a Bloch triple [nx, ny, nz]");
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

StateVector parse_state(const Json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "ghz") return ghz_state();
    if (name == "w") return w_state();
    invalid("unknown named state \"" + name + "\" (expected ghz or w)");
  }
  if (!j.is_array() || j.size() != 8) {
    invalid("state must be \"ghz\", \"w\" or a list of 8 amplitudes");
  }
  std::array<Amplitude, 8> amplitudes{};
  for (std::size_t i = 0; i < 8; ++i) {
    const Json& a = j.at(i);
    if (a.is_number()) {
      amplitudes[i] = a.get<double>();
    } else if (a.is_array() && a.size() == 2 && a.at(0).is_number() && a.at(1).is_number()) {
      amplitudes[i] = {a.at(0).get<double>(), a.at(1).get<double>()};
    } else {
      invalid("amplitude " + std::to_string(i) + " must be a number or [re, im]");
    }
  }
  return StateVector(amplitudes);
}

Json model1_detail(double x, double v_hc, std::optional<double> t_c, double delay_a,
                   double delay_b, const std::optional<TimingStructure>& labels) {
  Json j = Json::object();
  j["model"] = "pf";
  j["x"] = x;
  j["v_hc"] = v_hc;
  if (t_c) j["t_c"] = *t_c;
  j["delay_a"] = delay_a;
  j["delay_b"] = delay_b;
  const auto window = model1_timing_window(x, v_hc);
  j["window"] = window ? Json::array({window->lo, window->hi}) : Json(nullptr);
  if (labels) j["labels"] = to_json(*labels);
  return j;
}

Json model2_detail(const Model2Config& cfg, const TimingStructure& labels) {
  static constexpr auto ordering = [](PairLabel l) -> const char* {
    switch (l) {
      case PairLabel::no_hidden_communication: return "before_before";
      case PairLabel::qm_correlated: return "before_after";
      case PairLabel::after_after_undefined: break;
    }
    return "after_after";
  };
  Json events = Json::array();
  for (const auto& e : cfg.events) events.push_back(Json::array({e.x, e.t}));
  Json velocities = Json::array();
  for (double v : cfg.device_velocity) velocities.push_back(v);
  return Json{{"model", "multisim"},
              {"events", events},
              {"velocities", velocities},
              {"orderings", {{"ab", ordering(labels.ab)}, {"ac", ordering(labels.ac)}, {"bc", ordering(labels.bc)}}},
              {"labels", to_json(labels)}};
}

ParsedTiming parse_timing(const Json& j) {
  if (!j.is_object()) invalid("timing must be a JSON object");
  if (j.contains("labels")) {
    reject_unknown_keys(j, {"labels"}, "timing");
    const Json& labels = j.at("labels");
    reject_unknown_keys(labels, {"ab", "ac", "bc"}, "timing.labels");
    const auto label = [&](const char* key) {
      if (!labels.contains(key) || !labels.at(key).is_string()) {
        invalid(std::string("timing.labels: missing or non-string \"") + key + "\"");
      }
      const auto parsed = pair_label_from_name(labels.at(key).get<std::string>());
      if (!parsed) invalid(std::string("timing.labels.") + key + ": expected qm, no_hc or after_after");
      return *parsed;
    };
    TimingStructure s{label("ab"), label("ac"), label("bc")};
    return {s, Json{{"labels", to_json(s)}}};
  }

  if (!j.contains("model") || !j.at("model").is_string()) {
    invalid("timing needs either \"labels\" or a \"model\" (pf or multisim)");
  }
  const std::string model = j.at("model").get<std::string>();
  if (model == "pf") {
    reject_unknown_keys(j, {"model", "x", "v_hc", "t_c", "t_a", "t_b", "delay_a", "delay_b"},
                        "timing");
    const double x = required_number(j, "x", "timing");
    const double v_hc = required_number(j, "v_hc", "timing");
    const double t_c = required_number(j, "t_c", "timing");
    const double delay_a = optional_number(j, "delay_a", 0.0, "timing");
    const double delay_b = optional_number(j, "delay_b", 0.0, "timing");
    Model1Config cfg = Model1Config::symmetric(x, v_hc, t_c, delay_a, delay_b);
    cfg.events[party_index(Party::A)].t = optional_number(j, "t_a", 0.0, "timing");
    cfg.events[party_index(Party::B)].t = optional_number(j, "t_b", 0.0, "timing");
    const TimingStructure s = model1_classify(cfg);
    return {s, model1_detail(x, v_hc, t_c, delay_a, delay_b, s)};
  }
  if (model == "multisim") {
    reject_unknown_keys(j, {"model", "events", "velocities"}, "timing");
    if (!j.contains("events") || !j.contains("velocities")) {
      invalid("timing: multisim needs \"events\" and \"velocities\"");
    }
    const Json& v = j.at("velocities");
    if (!v.is_array() || v.size() != 3) invalid("timing.velocities must list three speeds");
    Model2Config cfg{parse_events(j.at("events"), Frame::laboratory),
                     {number(v.at(0), "velocity"), number(v.at(1), "velocity"),
                      number(v.at(2), "velocity")}};
    const TimingStructure s = multisim_classify(cfg);
    return {s, model2_detail(cfg, s)};
  }
  invalid("timing.model must be \"pf\" or \"multisim\", got \"" + model + "\"");
}

ParsedScenario parse_scenario(const Json& doc) {
  reject_unknown_keys(doc, {"state", "settings", "timing", "constraints", "mode", "chsh_selection",
                            "tolerances"},
                      "scenario");
  if (!doc.contains("state")) invalid("scenario: missing \"state\"");
  if (!doc.contains("settings")) invalid("scenario: missing \"settings\"");
  const StateVector state = parse_state(doc.at("state"));

  const Json& settings = doc.at("settings");
  reject_unknown_keys(settings, {"a", "b", "c"}, "settings");
  for (const char* p : {"a", "b", "c"}) {
    if (!settings.contains(p)) invalid(std::string("settings: missing party \"") + p + "\"");
  }
  const auto alice = parse_setting_list(settings.at("a"), "a");
  const auto bob = parse_setting_list(settings.at("b"), "b");
  if (!is_single_setting(settings.at("c"))) invalid("settings.c must be a single setting");
  const BlochVector charlie = parse_bloch(settings.at("c"));

  double tol = kDefaultValidityTolerance;
  if (doc.contains("tolerances")) {
    reject_unknown_keys(doc.at("tolerances"), {"feasibility"}, "tolerances");
    tol = optional_number(doc.at("tolerances"), "feasibility", tol, "tolerances");
    if (!(tol >= 0.0)) invalid("tolerances.feasibility must be non-negative");
  }

  ScenarioMode mode = ScenarioMode::communication_only;
  if (doc.contains("mode")) {
    const Json& m = doc.at("mode");
    if (m == "communication_only") {
      mode = ScenarioMode::communication_only;
    } else if (m == "mixed_model_probe") {
      mode = ScenarioMode::mixed_model_probe;
    } else {
      invalid("mode must be \"communication_only\" or \"mixed_model_probe\"");
    }
  }

  std::optional<ParsedTiming> timing;
  if (doc.contains("timing")) timing = parse_timing(doc.at("timing"));

  const bool box = alice.size() > 1 || bob.size() > 1;
  if (box) {
    if (doc.contains("constraints")) invalid("the CHSH box test does not take explicit constraints");
    const TimingStructure severed{PairLabel::no_hidden_communication, PairLabel::qm_correlated,
                                  PairLabel::qm_correlated};
    if (timing && !(timing->structure == severed)) {
      invalid("the CHSH box test assumes timing {ab: no_hc, ac: qm, bc: qm}");
    }
    ChshSelection selection;
    if (doc.contains("chsh_selection")) {
      const Json& sel = doc.at("chsh_selection");
      reject_unknown_keys(sel, {"alice", "bob"}, "chsh_selection");
      if (sel.contains("alice")) {
        std::tie(selection.alice_first, selection.alice_second) =
            parse_index_pair(sel.at("alice"), "chsh_selection.alice");
      }
      if (sel.contains("bob")) {
        std::tie(selection.bob_first, selection.bob_second) =
            parse_index_pair(sel.at("bob"), "chsh_selection.bob");
      }
    }
    return {BoxScenario{state, alice, bob, charlie, selection, tol},
            timing ? std::optional<Json>(timing->detail) : std::nullopt};
  }

  if (doc.contains("chsh_selection")) invalid("chsh_selection needs lists of settings for a and b");
  if (doc.contains("timing") == doc.contains("constraints")) {
    invalid("scenario needs exactly one of \"timing\" and \"constraints\"");
  }
  Scenario scenario{state, {alice.front(), bob.front(), charlie}, ConstraintSpec{}, mode, tol};
  if (timing) {
    scenario.timing = timing->structure;
    return {scenario, timing->detail};
  }
  scenario.timing = constraints_from_json(doc.at("constraints"));
  return {scenario, std::nullopt};
}

ParsedScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open scenario file \"" + path + "\"");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "scenario file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace hcsig
