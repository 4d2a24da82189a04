#pragma once

#include <string>

#include "fakemu/epsilon_spec.hpp"

namespace fakemu {

// SpecDocument JSON: {"name": optional, "prefix": [int,...], "tail": {...}}
// with tail one of
//   {"kind":"constant","value":-1}
//   {"kind":"periodic","pattern":[-1,1]}
//   {"kind":"mu_r","r":3}
//   {"kind":"bitstream","alpha_plus":"1/sqrt2","alpha_minus":"0",
//    "beta_plus":"1","beta_minus":"0"}
// Bitstream sources use the ExactReal string forms; a source that needs the
// trailing-ones expansion of a dyadic rational adds e.g.
// "alpha_plus_nonterminating": true (absent means the default expansion).
std::string spec_to_json(const EpsilonSpec& spec);
EpsilonSpec spec_from_json(const std::string& text);

void save_spec(const EpsilonSpec& spec, const std::string& path);
EpsilonSpec load_spec(const std::string& path);

}  // namespace fakemu
