#include "parkfn/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace parkfn {

LotSpec LotSpec::uniform(int spots, int capacity) {
  LotSpec lot;
  lot.spots = spots;
  lot.capacities.assign(spots > 0 ? static_cast<std::size_t>(spots) : 0, capacity);
  return lot;
}

FleetSpec FleetSpec::uniform(int cars, MovementPolicy policy, int size) {
  FleetSpec fleet;
  fleet.cars = cars;
  fleet.sizes.assign(cars > 0 ? static_cast<std::size_t>(cars) : 0, size);
  fleet.policies.assign(cars > 0 ? static_cast<std::size_t>(cars) : 0, policy);
  return fleet;
}

namespace {

bool unit_size_only(PolicyKind kind) {
  return kind == PolicyKind::BackUpTo || kind == PolicyKind::TeleportBack ||
         kind == PolicyKind::CoinBackOne;
}

}  // namespace

std::vector<std::string> validate(const RuleSpec& rule) {
  std::vector<std::string> out;
  const LotSpec& lot = rule.lot;
  const FleetSpec& fleet = rule.fleet;

  if (lot.spots < 1) out.push_back("lot: spot count must be >= 1");
  if (static_cast<int>(lot.capacities.size()) != lot.spots) {
    out.push_back("lot: capacities length " + std::to_string(lot.capacities.size()) +
                  " != spot count " + std::to_string(lot.spots));
  }
  for (std::size_t s = 0; s < lot.capacities.size(); ++s) {
    if (lot.capacities[s] < 1) {
      out.push_back("lot: capacity of spot " + std::to_string(s + 1) + " must be >= 1");
    }
  }
  for (int s : lot.obstructed) {
    if (s < 1 || s > lot.spots) {
      out.push_back("lot: obstructed spot " + std::to_string(s) + " outside [1, " +
                    std::to_string(lot.spots) + "]");
    }
  }

  if (fleet.cars < 1) out.push_back("fleet: car count must be >= 1");
  if (static_cast<int>(fleet.sizes.size()) != fleet.cars) {
    out.push_back("fleet: sizes length " + std::to_string(fleet.sizes.size()) +
                  " != car count " + std::to_string(fleet.cars));
  }
  if (static_cast<int>(fleet.policies.size()) != fleet.cars) {
    out.push_back("fleet: policies length " + std::to_string(fleet.policies.size()) +
                  " != car count " + std::to_string(fleet.cars));
  }

  bool any_sized = false;
  const std::size_t described =
      std::min(fleet.sizes.size(), fleet.policies.size());
  for (std::size_t i = 0; i < fleet.sizes.size(); ++i) {
    if (fleet.sizes[i] < 1) {
      out.push_back("fleet: size of car " + std::to_string(i + 1) + " must be >= 1");
    }
    if (fleet.sizes[i] > 1) any_sized = true;
  }
  for (std::size_t i = 0; i < fleet.policies.size(); ++i) {
    const MovementPolicy& p = fleet.policies[i];
    switch (p.kind) {
      case PolicyKind::BackUpTo:
        if (p.k < 0) {
          out.push_back("fleet: back-window of car " + std::to_string(i + 1) +
                        " must be >= 0");
        }
        break;
      case PolicyKind::TeleportBack:
      case PolicyKind::SingleTeleportForward:
        if (p.k < 1) {
          out.push_back("fleet: teleport distance of car " + std::to_string(i + 1) +
                        " must be >= 1");
        }
        break;
      default:
        break;
    }
  }
  for (std::size_t i = 0; i < described; ++i) {
    if (fleet.sizes[i] > 1 && unit_size_only(fleet.policies[i].kind)) {
      out.push_back("fleet: car " + std::to_string(i + 1) +
                    " has size > 1 under a policy that only supports unit size");
    }
  }
  if (any_sized) {
    // Blocks of a sized car need completely empty spots, which is only
    // meaningful when every spot holds exactly one vehicle.
    for (int c : lot.capacities) {
      if (c != 1) {
        out.push_back("rule: sized cars require every spot capacity to be 1");
        break;
      }
    }
  }
  return out;
}

void ensure_valid(const RuleSpec& rule) {
  const auto violations = validate(rule);
  if (violations.empty()) return;
  std::string msg = "invalid rule:";
  for (const auto& v : violations) msg += " " + v + ";";
  msg.pop_back();
  throw std::invalid_argument(msg);
}

bool has_coin_policy(const RuleSpec& rule) {
  return std::any_of(rule.fleet.policies.begin(), rule.fleet.policies.end(),
                     [](const MovementPolicy& p) { return p.kind == PolicyKind::CoinBackOne; });
}

namespace {

[[noreturn]] void preset_error(const std::string& name, const std::string& why) {
  throw std::invalid_argument("preset '" + name + "': " + why);
}

void require_positive(const std::string& preset, const char* what, long long v) {
  if (v < 1) preset_error(preset, std::string(what) + " must be >= 1");
}

RuleSpec finish(const std::string& name, RuleSpec rule) {
  const auto violations = validate(rule);
  if (!violations.empty()) preset_error(name, "expansion is invalid: " + violations.front());
  return rule;
}

}  // namespace

RuleSpec classical(int n) {
  require_positive("classical", "n", n);
  return finish("classical",
                {LotSpec::uniform(n), FleetSpec::uniform(n, MovementPolicy::forward_only())});
}

RuleSpec naples(int n, int k) {
  require_positive("naples", "n", n);
  if (k < 0) preset_error("naples", "k must be >= 0");
  return finish("naples",
                {LotSpec::uniform(n), FleetSpec::uniform(n, MovementPolicy::back_up_to(k))});
}

RuleSpec countdown(int n) {
  require_positive("countdown", "n", n);
  RuleSpec rule{LotSpec::uniform(n), FleetSpec::uniform(n, MovementPolicy::forward_only())};
  for (int i = 1; i <= n; ++i) {
    rule.fleet.policies[i - 1] = MovementPolicy::back_up_to(n - i + 1);
  }
  return finish("countdown", std::move(rule));
}

RuleSpec odd_back_even_forward(int n) {
  require_positive("odd_back_even_forward", "n", n);
  RuleSpec rule{LotSpec::uniform(n), FleetSpec::uniform(n, MovementPolicy::forward_only())};
  for (int i = 1; i <= n; i += 2) {
    rule.fleet.policies[i - 1] = MovementPolicy::back_up_to(1);
  }
  return finish("odd_back_even_forward", std::move(rule));
}

RuleSpec clown(int m, int d, int n) {
  require_positive("clown", "m", m);
  require_positive("clown", "d", d);
  require_positive("clown", "n", n);
  return finish("clown",
                {LotSpec::uniform(m, d), FleetSpec::uniform(n, MovementPolicy::forward_only())});
}

RuleSpec scooter(int m, int d, int n) {
  require_positive("scooter", "m", m);
  require_positive("scooter", "d", d);
  require_positive("scooter", "n", n);
  return finish("scooter",
                {LotSpec::uniform(m, d), FleetSpec::uniform(n, MovementPolicy::back_up_to(1))});
}

RuleSpec obstructed_lot(int m, int n, const std::set<int>& blocked) {
  require_positive("obstructed", "m", m);
  require_positive("obstructed", "n", n);
  for (int s : blocked) {
    if (s < 1 || s > m) preset_error("obstructed", "blocked spot " + std::to_string(s) + " outside [1, " + std::to_string(m) + "]");
  }
  if (m - static_cast<int>(blocked.size()) < n) {
    preset_error("obstructed", "fewer than n unobstructed spots remain");
  }
  RuleSpec rule{LotSpec::uniform(m), FleetSpec::uniform(n, MovementPolicy::back_up_to(1))};
  rule.lot.obstructed = blocked;
  return finish("obstructed", std::move(rule));
}

RuleSpec teleport(int n, int k) {
  require_positive("teleport", "n", n);
  require_positive("teleport", "k", k);
  return finish("teleport",
                {LotSpec::uniform(n), FleetSpec::uniform(n, MovementPolicy::teleport_back(k))});
}

RuleSpec futuristic(int m, const std::vector<int>& sizes, int k) {
  require_positive("futuristic", "m", m);
  require_positive("futuristic", "k", k);
  if (sizes.empty()) preset_error("futuristic", "at least one car size is required");
  for (int s : sizes) {
    if (s < 1) preset_error("futuristic", "car sizes must be >= 1");
  }
  const int n = static_cast<int>(sizes.size());
  RuleSpec rule{LotSpec::uniform(m),
                FleetSpec::uniform(n, MovementPolicy::single_teleport_forward(k))};
  rule.fleet.sizes = sizes;
  return finish("futuristic", std::move(rule));
}

RuleSpec coin(int n) {
  require_positive("coin", "n", n);
  return finish("coin",
                {LotSpec::uniform(n), FleetSpec::uniform(n, MovementPolicy::coin_back_one())});
}

namespace {

long long want_int(const std::string& name, const std::vector<PresetArg>& args, std::size_t i,
                   const char* what) {
  if (i >= args.size() || args[i].is_list) {
    preset_error(name, std::string("expected integer parameter '") + what + "'");
  }
  return args[i].value;
}

std::vector<long long> want_list(const std::string& name, const std::vector<PresetArg>& args,
                                 std::size_t i, const char* what) {
  if (i >= args.size() || !args[i].is_list) {
    preset_error(name, std::string("expected bracketed list parameter '") + what + "'");
  }
  return args[i].list;
}

void want_arity(const std::string& name, const std::vector<PresetArg>& args, std::size_t n) {
  if (args.size() != n) {
    preset_error(name, "takes " + std::to_string(n) + " parameter(s), got " +
                           std::to_string(args.size()));
  }
}

int narrow(const std::string& name, long long v) {
  if (v < -1000000000LL || v > 1000000000LL) preset_error(name, "parameter out of range");
  return static_cast<int>(v);
}

}  // namespace

RuleSpec expand_preset(const std::string& name, const std::vector<PresetArg>& args) {
  if (name == "classical") {
    want_arity(name, args, 1);
    return classical(narrow(name, want_int(name, args, 0, "n")));
  }
  if (name == "naples") {
    want_arity(name, args, 2);
    return naples(narrow(name, want_int(name, args, 0, "n")),
                  narrow(name, want_int(name, args, 1, "k")));
  }
  if (name == "countdown") {
    want_arity(name, args, 1);
    return countdown(narrow(name, want_int(name, args, 0, "n")));
  }
  if (name == "odd_back_even_forward") {
    want_arity(name, args, 1);
    return odd_back_even_forward(narrow(name, want_int(name, args, 0, "n")));
  }
  if (name == "clown" || name == "scooter") {
    want_arity(name, args, 3);
    const int m = narrow(name, want_int(name, args, 0, "m"));
    const int d = narrow(name, want_int(name, args, 1, "d"));
    const int n = narrow(name, want_int(name, args, 2, "n"));
    return name == "clown" ? clown(m, d, n) : scooter(m, d, n);
  }
  if (name == "obstructed") {
    want_arity(name, args, 3);
    const int m = narrow(name, want_int(name, args, 0, "m"));
    const int n = narrow(name, want_int(name, args, 1, "n"));
    std::set<int> blocked;
    for (long long v : want_list(name, args, 2, "blocked")) blocked.insert(narrow(name, v));
    return obstructed_lot(m, n, blocked);
  }
  if (name == "teleport") {
    want_arity(name, args, 2);
    return teleport(narrow(name, want_int(name, args, 0, "n")),
                    narrow(name, want_int(name, args, 1, "k")));
  }
  if (name == "futuristic") {
    want_arity(name, args, 3);
    const int m = narrow(name, want_int(name, args, 0, "m"));
    std::vector<int> sizes;
    for (long long v : want_list(name, args, 1, "sizes")) sizes.push_back(narrow(name, v));
    const int k = narrow(name, want_int(name, args, 2, "k"));
    return futuristic(m, sizes, k);
  }
  if (name == "coin") {
    want_arity(name, args, 1);
    return coin(narrow(name, want_int(name, args, 0, "n")));
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

namespace {

long long parse_ll(const std::string& name, const std::string& tok) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    preset_error(name, "malformed integer '" + tok + "'");
  }
  if (used != tok.size() || tok.empty()) preset_error(name, "malformed integer '" + tok + "'");
  return v;
}

}  // namespace

RuleSpec expand_preset(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  const std::size_t colon = s.find(':');
  const std::string name = s.substr(0, colon);
  if (name.empty()) throw std::invalid_argument("empty preset name");

  std::vector<PresetArg> args;
  if (colon != std::string::npos) {
    const std::string rest = s.substr(colon + 1);
    std::size_t i = 0;
    while (i < rest.size()) {
      if (rest[i] == '[') {
        const std::size_t close = rest.find(']', i);
        if (close == std::string::npos) preset_error(name, "unterminated '['");
        std::vector<long long> xs;
        std::string body = rest.substr(i + 1, close - i - 1);
        std::size_t pos = 0;
        while (pos < body.size()) {
          std::size_t comma = body.find(',', pos);
          if (comma == std::string::npos) comma = body.size();
          xs.push_back(parse_ll(name, body.substr(pos, comma - pos)));
          pos = comma + 1;
        }
        args.emplace_back(std::move(xs));
        i = close + 1;
        if (i < rest.size()) {
          if (rest[i] != ',') preset_error(name, "expected ',' after ']'");
          ++i;
        }
      } else {
        std::size_t comma = rest.find(',', i);
        std::size_t bracket = rest.find('[', i);
        std::size_t end = std::min(comma, bracket);
        if (end == std::string::npos) end = rest.size();
        if (bracket < comma) preset_error(name, "unexpected '['");
        args.emplace_back(parse_ll(name, rest.substr(i, end - i)));
        i = (end < rest.size()) ? end + 1 : end;
      }
    }
    if (!rest.empty() && rest.back() == ',') preset_error(name, "trailing ','");
  }
  return expand_preset(name, args);
}

}  // namespace parkfn
