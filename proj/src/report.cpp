#include "hcsig/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hcsig/errors.hpp"

namespace hcsig {
namespace {

constexpr double kPrintZero = 5e-13;

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write(const Json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        write(value, depth + 1, out);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool inline_array = std::all_of(j.begin(), j.end(), is_scalar);
      out += inline_array ? "[" : "[\n";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += inline_array ? ", " : ",\n";
        first = false;
        if (!inline_array) out += pad;
        write(value, depth + 1, out);
      }
      out += inline_array ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

Json point_json(const Point& p) {
  Json arr = Json::array();
  for (double v : p) arr.push_back(v);
  return arr;
}

Json interval_json(const std::optional<Interval>& interval) {
  if (!interval) return nullptr;
  return Json::array({interval->lo, interval->hi});
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  if (std::abs(value) < kPrintZero) value = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const Json& value) {
  std::string out;
  write(value, 0, out);
  return out;
}

Json to_json(const CorrelationTensor& t) {
  Json j = Json::object();
  for (Component c : kComponents) j[std::string(component_name(c))] = t[c];
  return j;
}

Json to_json(const Distribution3& d) {
  Json j = Json::object();
  for (int i = 0; i < kOutcomeCount; ++i) j[outcome_label(i)] = d.p[i];
  return j;
}

Json to_json(const ConstraintSpec& spec) {
  Json j = Json::object();
  for (Component c : kComponents) {
    const std::string key(component_name(c));
    std::visit(
        [&](const auto& entry) {
          using T = std::decay_t<decltype(entry)>;
          if constexpr (std::is_same_v<T, Fixed>) {
            j[key] = Json{{"fixed", entry.value}};
          } else if constexpr (std::is_same_v<T, Free>) {
            j[key] = "free";
          } else {
            j[key] = "product";
          }
        },
        spec[c]);
  }
  return j;
}

Json to_json(const FeasibleRegion& region) {
  Json free = Json::array();
  for (Component c : region.free_components) free.push_back(std::string(component_name(c)));
  Json vertices = Json::array();
  for (const auto& v : region.vertices) vertices.push_back(point_json(v));
  return Json{{"empty", region.empty},
              {"dimension", region.dimension()},
              {"affine_dimension", region.affine_dimension},
              {"free_components", free},
              {"vertices", vertices}};
}

Json to_json(const TimingStructure& timing) {
  return Json{{"ab", std::string(pair_label_name(timing.ab))},
              {"ac", std::string(pair_label_name(timing.ac))},
              {"bc", std::string(pair_label_name(timing.bc))}};
}

Json to_json(const BlochVector& n) { return Json::array({n.x(), n.y(), n.z()}); }

Json to_json(const ChshBox& box) {
  Json pairs = Json::array();
  for (const auto& p : box.pairs) {
    pairs.push_back(Json{{"alice", p.alice},
                         {"bob", p.bob},
                         {"qm_e_ab", p.qm_e_ab},
                         {"e_ab_interval", Json::array({p.e_ab.lo, p.e_ab.hi})}});
  }
  return Json{{"kind", "box_chsh"},
              {"pairs", pairs},
              {"selection",
               {{"alice", Json::array({box.selection.alice_first, box.selection.alice_second})},
                {"bob", Json::array({box.selection.bob_first, box.selection.bob_second})}}},
              {"qm_chsh", box.qm_chsh},
              {"min_chsh", box.min_chsh},
              {"max_chsh", box.max_chsh},
              {"mixed_models_signal", box.mixed_models_signal}};
}

Json to_json(const VisibilityReport& report) {
  return Json{{"qm_e_ab", report.qm_e_ab},
              {"v_min", report.v_min},
              {"v_max", report.v_max},
              {"v_max_unclipped", report.v_max_unclipped}};
}

Json scenario_report_json(const Scenario& scenario, const WitnessReport& report,
                          const std::optional<Json>& timing_detail) {
  Json j = Json::object();
  j["kind"] = "witness";
  j["mode"] = std::string(scenario_mode_name(scenario.mode));
  if (timing_detail) j["timing"] = *timing_detail;
  j["qm_tensor"] = to_json(report.qm_tensor);
  j["constraints"] = to_json(report.constraint_spec);
  j["region"] = to_json(report.region);
  j["e_ab_interval"] = interval_json(report.e_ab_interval);
  j["worst_probability"] = report.worst_probability;
  j["worst_point"] = point_json(report.worst_point);
  j["worst_distribution"] =
      to_json(raw_probabilities(report.constraint_spec.substitute(report.worst_point)));
  j["verdict"] = std::string(verdict_name(report.verdict));
  return j;
}

ConstraintSpec constraints_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ValidationError, "constraints must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!component_from_name(key)) {
      throw Error(ErrorCode::ValidationError, "unknown constraint component \"" + key + "\"");
    }
  }
  ConstraintSpec spec;
  for (Component c : kComponents) {
    const std::string key(component_name(c));
    if (!j.contains(key)) {
      throw Error(ErrorCode::ValidationError, "constraints: missing component \"" + key + "\"");
    }
    const Json& entry = j.at(key);
    if (entry == "free") {
      spec.release(c);
    } else if (entry == "product") {
      if (!is_pair(c)) {
        throw Error(ErrorCode::ValidationError,
                    "constraints: only pair correlators can be \"product\", not \"" + key + "\"");
      }
      spec.pin_to_product(c);
    } else if (entry.is_object() && entry.size() == 1 && entry.contains("fixed") &&
               entry.at("fixed").is_number()) {
      spec.fix(c, entry.at("fixed").get<double>());
    } else {
      throw Error(ErrorCode::ValidationError,
                  "constraints: \"" + key + "\" must be \"free\", \"product\" or {\"fixed\": x}");
    }
  }
  return spec;
}

}  // namespace hcsig
