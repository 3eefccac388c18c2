#pragma once

// Rule documents. The schema is the CLI's wire format:
//
//   {
//     "spots": 5,
//     "capacities": 1,          // integer (uniform) or array of length spots
//     "obstructed": [3],        // optional, default []
//     "cars": 5,
//     "sizes": 1,               // integer (uniform) or array of length cars
//     "policy": {
//       "kind": "back",         // forward | back | teleport_back |
//                               // single_teleport | coin_back
//       "k": 1,                 // window / distance, defaults to 1 where used
//       "per_car": [...],       // optional array of policy objects
//       "preset": "countdown"   // optional named per-car pattern:
//                               // countdown | odd_back_even_forward
//     }
//   }
//
// Parsing is structural only; semantic problems (length mismatches, bad
// ranges) are reported by validate() so that they surface as violations.

#include <json.hpp>

#include "parkfn/core.hpp"

namespace parkfn {

nlohmann::json rule_to_json(const RuleSpec& rule);

// Throws std::invalid_argument naming the offending field.
RuleSpec rule_from_json(const nlohmann::json& doc);

}  // namespace parkfn
