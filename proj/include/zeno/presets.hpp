// presets.hpp — built-in (H, A) system presets for the CLI and tests.

#pragma once

#include <string>
#include <vector>

#include "zeno/linalg.hpp"

namespace zeno {

struct Preset {
    std::string name;
    std::string description;
    ComplexMatrix hamiltonian;
    ComplexMatrix observable;
};

// Known presets:
//   two-level-rabi — H = (ω/2)σ_x (ω configurable, default 1), A = σ_z
//   commuting      — H = σ_z, A = σ_z
//   three-level    — fixed nondegenerate 3×3 H, A = diag(0, 1, 2)
// Throws ValidationError for unknown names.
Preset make_preset(const std::string& name, double omega = 1.0);

const std::vector<std::string>& preset_names();

} // namespace zeno
