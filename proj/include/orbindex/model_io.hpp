#pragma once

#include <string>

#include "orbindex/char_index.hpp"

namespace orbindex {

// Parses the textual ring-element grammar over a model's generators:
// sums of products of rational/cyclotomic scalars and generator powers.
RingElement parse_ring_element(const RingModelPtr& model, const std::string& text);

// Model file schema (JSON):
// {
//   "geometric": bool,
//   "sectors": [ {
//       "name": str, "k": int, "m": int, "top_degree": int,
//       "generators": [ {"name": str, "degree": int}, ... ],
//       "integrals": { "<monomial>": "<scalar>", ... },
//       "tangent_roots": [ "<element>", ... ],
//       "normal_blocks": [ {"lambda": "<scalar>", "root": "<element>"}, ... ],
//       "omega": "<element>",
//       "bundles": { "E": [ {"mu": "<scalar>", "roots": ["<element>", ...]} ],
//                    "F": [ ... ] }
//   } ],
//   "lefschetz": { "group_order": int, "identity_term": "<rational>",
//                  "elements": [ { "fixed_points":
//                      [ {"rotation": "<scalar>", "numerator": "<scalar>"} ] } ] }
// }
// Violations raise parse_error with the offending field path.
OrbifoldModel load_model(const std::string& path);
OrbifoldModel parse_model_json(const std::string& text, const std::string& origin);

std::string model_to_json(const OrbifoldModel& model);

}  // namespace orbindex
