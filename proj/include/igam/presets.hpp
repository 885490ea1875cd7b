#pragma once

#include "igam/multipatch.hpp"

#include <string>
#include <vector>

namespace igam {

enum class BoundaryMode {
    Dirichlet,   ///< u = 0 strongly on the whole outer boundary
    Neumann,     ///< natural conditions everywhere
    ClampedWest, ///< Dirichlet on the leftmost edge, Neumann elsewhere
};

struct PresetSpec {
    std::string name;
    int degree = 2;
    int elements = 4; ///< per direction on the slave patch
    BoundaryMode bc = BoundaryMode::Dirichlet;
    bool penalize_neumann = false;   ///< tag Neumann sides as Gamma_BC
    bool penalize_dirichlet = false; ///< tag Dirichlet sides as Gamma_BC (plate problems)
};

/// Build one of the named preset geometries. Throws std::invalid_argument
/// for unknown names.
MultiPatch make_preset(const PresetSpec& spec);

/// Preset names with one-line descriptions, stable order.
std::vector<std::pair<std::string, std::string>> list_presets();

} // namespace igam
