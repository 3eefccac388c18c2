#include "parkfn/rule_json.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace parkfn {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& why) {
  throw std::invalid_argument("rule field '" + field + "': " + why);
}

int want_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) field_error(field, "must be an integer");
  const auto x = v.get<long long>();
  if (x < -1000000000LL || x > 1000000000LL) field_error(field, "out of range");
  return static_cast<int>(x);
}

std::vector<int> int_or_array(const json& v, const std::string& field, int uniform_len) {
  if (v.is_number_integer()) {
    return std::vector<int>(uniform_len > 0 ? static_cast<std::size_t>(uniform_len) : 0,
                            want_int(v, field));
  }
  if (v.is_array()) {
    std::vector<int> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(want_int(e, field));
    return out;
  }
  field_error(field, "must be an integer or an array of integers");
}

const char* kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::ForwardOnly: return "forward";
    case PolicyKind::BackUpTo: return "back";
    case PolicyKind::TeleportBack: return "teleport_back";
    case PolicyKind::SingleTeleportForward: return "single_teleport";
    case PolicyKind::CoinBackOne: return "coin_back";
  }
  return "forward";
}

MovementPolicy policy_from_object(const json& v, const std::string& field) {
  if (!v.is_object()) field_error(field, "must be an object");
  for (const auto& [key, _] : v.items()) {
    if (key != "kind" && key != "k") field_error(field + "." + key, "unknown field");
  }
  if (!v.contains("kind") || !v["kind"].is_string()) {
    field_error(field + ".kind", "must be a string");
  }
  const std::string kind = v["kind"].get<std::string>();
  const bool has_k = v.contains("k");
  const int k = has_k ? want_int(v["k"], field + ".k") : 1;

  if (kind == "forward") return MovementPolicy::forward_only();
  if (kind == "back") return MovementPolicy::back_up_to(has_k ? k : 1);
  if (kind == "teleport_back") return MovementPolicy::teleport_back(k);
  if (kind == "single_teleport") return MovementPolicy::single_teleport_forward(k);
  if (kind == "coin_back") return MovementPolicy::coin_back_one();
  field_error(field + ".kind", "unknown kind '" + kind + "'");
}

std::vector<MovementPolicy> policies_from_json(const json& v, int cars) {
  if (!v.is_object()) field_error("policy", "must be an object");
  for (const auto& [key, _] : v.items()) {
    if (key != "kind" && key != "k" && key != "per_car" && key != "preset") {
      field_error("policy." + key, "unknown field");
    }
  }

  if (v.contains("preset")) {
    if (v.contains("kind") || v.contains("per_car") || v.contains("k")) {
      field_error("policy.preset", "cannot be combined with kind/k/per_car");
    }
    if (!v["preset"].is_string()) field_error("policy.preset", "must be a string");
    const std::string preset = v["preset"].get<std::string>();
    std::vector<MovementPolicy> out(cars > 0 ? static_cast<std::size_t>(cars) : 0);
    if (preset == "countdown") {
      for (int i = 1; i <= cars; ++i) out[i - 1] = MovementPolicy::back_up_to(cars - i + 1);
      return out;
    }
    if (preset == "odd_back_even_forward") {
      for (int i = 1; i <= cars; ++i) {
        out[i - 1] = (i % 2 == 1) ? MovementPolicy::back_up_to(1)
                                  : MovementPolicy::forward_only();
      }
      return out;
    }
    field_error("policy.preset", "unknown preset '" + preset + "'");
  }

  if (v.contains("per_car")) {
    if (v.contains("kind") || v.contains("k")) {
      field_error("policy.per_car", "cannot be combined with kind/k");
    }
    if (!v["per_car"].is_array()) field_error("policy.per_car", "must be an array");
    std::vector<MovementPolicy> out;
    out.reserve(v["per_car"].size());
    std::size_t i = 0;
    for (const auto& e : v["per_car"]) {
      out.push_back(policy_from_object(e, "policy.per_car[" + std::to_string(i) + "]"));
      ++i;
    }
    return out;
  }

  return std::vector<MovementPolicy>(cars > 0 ? static_cast<std::size_t>(cars) : 0,
                                     policy_from_object(v, "policy"));
}

json policy_to_object(const MovementPolicy& p) {
  json v;
  v["kind"] = kind_name(p.kind);
  if (p.kind == PolicyKind::BackUpTo || p.kind == PolicyKind::TeleportBack ||
      p.kind == PolicyKind::SingleTeleportForward) {
    v["k"] = p.k;
  }
  return v;
}

}  // namespace

RuleSpec rule_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("rule document must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "spots" && key != "capacities" && key != "obstructed" && key != "cars" &&
        key != "sizes" && key != "policy") {
      field_error(key, "unknown field");
    }
  }
  if (!doc.contains("spots")) field_error("spots", "required");
  if (!doc.contains("cars")) field_error("cars", "required");

  RuleSpec rule;
  rule.lot.spots = want_int(doc["spots"], "spots");
  rule.fleet.cars = want_int(doc["cars"], "cars");

  rule.lot.capacities = doc.contains("capacities")
                            ? int_or_array(doc["capacities"], "capacities", rule.lot.spots)
                            : std::vector<int>(rule.lot.spots > 0
                                                   ? static_cast<std::size_t>(rule.lot.spots)
                                                   : 0,
                                               1);
  if (doc.contains("obstructed")) {
    if (!doc["obstructed"].is_array()) field_error("obstructed", "must be an array");
    for (const auto& e : doc["obstructed"]) {
      rule.lot.obstructed.insert(want_int(e, "obstructed"));
    }
  }

  rule.fleet.sizes = doc.contains("sizes")
                         ? int_or_array(doc["sizes"], "sizes", rule.fleet.cars)
                         : std::vector<int>(rule.fleet.cars > 0
                                                ? static_cast<std::size_t>(rule.fleet.cars)
                                                : 0,
                                            1);
  rule.fleet.policies =
      doc.contains("policy")
          ? policies_from_json(doc["policy"], rule.fleet.cars)
          : std::vector<MovementPolicy>(rule.fleet.cars > 0
                                            ? static_cast<std::size_t>(rule.fleet.cars)
                                            : 0,
                                        MovementPolicy::forward_only());
  return rule;
}

json rule_to_json(const RuleSpec& rule) {
  json doc;
  doc["spots"] = rule.lot.spots;

  // Collapse to the uniform-integer shorthand only when the vector really
  // describes every spot/car; malformed rules must serialize faithfully.
  const auto& caps = rule.lot.capacities;
  const bool caps_uniform =
      static_cast<int>(caps.size()) == rule.lot.spots && !caps.empty() &&
      std::all_of(caps.begin(), caps.end(), [&](int c) { return c == caps.front(); });
  if (caps_uniform) {
    doc["capacities"] = caps.front();
  } else {
    doc["capacities"] = caps;
  }

  doc["obstructed"] = json::array();
  for (int s : rule.lot.obstructed) doc["obstructed"].push_back(s);

  doc["cars"] = rule.fleet.cars;

  const auto& sizes = rule.fleet.sizes;
  const bool sizes_uniform =
      static_cast<int>(sizes.size()) == rule.fleet.cars && !sizes.empty() &&
      std::all_of(sizes.begin(), sizes.end(), [&](int s) { return s == sizes.front(); });
  if (sizes_uniform) {
    doc["sizes"] = sizes.front();
  } else {
    doc["sizes"] = sizes;
  }

  const auto& pols = rule.fleet.policies;
  const bool pols_uniform =
      static_cast<int>(pols.size()) == rule.fleet.cars && !pols.empty() &&
      std::all_of(pols.begin(), pols.end(),
                  [&](const MovementPolicy& p) { return p == pols.front(); });
  if (pols_uniform) {
    doc["policy"] = policy_to_object(pols.front());
  } else {
    json per_car = json::array();
    for (const auto& p : pols) per_car.push_back(policy_to_object(p));
    doc["policy"] = {{"per_car", std::move(per_car)}};
  }
  return doc;
}

}  // namespace parkfn
