#include "igam/presets.hpp"

#include <stdexcept>

namespace igam {

namespace {

TensorSplineSpace uniform_space_1d(int p, int n) {
    return TensorSplineSpace(make_open_knot_vector(p, n));
}

TensorSplineSpace uniform_space_2d(int p, int nx, int ny) {
    return TensorSplineSpace(make_open_knot_vector(p, nx), make_open_knot_vector(p, ny));
}

std::vector<std::array<SideTag, 4>> tag_boundary(const MultiPatch& mp, const PresetSpec& spec) {
    std::vector<std::array<SideTag, 4>> tags(mp.num_patches());
    const int nsides = mp.dim() == 1 ? 2 : 4;
    // leftmost outer side for ClampedWest: West side of patch 0 by convention
    for (int k = 0; k < mp.num_patches(); ++k) {
        for (int s = 0; s < nsides; ++s) {
            const Side side = static_cast<Side>(s);
            if (mp.side_on_interface(k, side)) continue;
            bool dir = false;
            switch (spec.bc) {
                case BoundaryMode::Dirichlet: dir = true; break;
                case BoundaryMode::Neumann: dir = false; break;
                case BoundaryMode::ClampedWest: dir = (k == 0 && side == Side::West); break;
            }
            tags[k][s].dirichlet = dir;
            tags[k][s].penalized = dir ? spec.penalize_dirichlet : spec.penalize_neumann;
        }
    }
    return tags;
}

MultiPatch with_tags(std::vector<Patch> patches, const std::vector<InterfaceSpec>& specs,
                     const PresetSpec& spec) {
    // build once with empty tags to query interface incidence, then re-tag
    std::vector<std::array<SideTag, 4>> empty(patches.size());
    MultiPatch mp = build_multipatch(patches, specs, empty);
    mp.tags = tag_boundary(mp, spec);
    // crosspoints of penalized corners depend on tags; rebuild for consistency
    return build_multipatch(std::move(mp.patches), specs, mp.tags);
}

} // namespace

MultiPatch make_preset(const PresetSpec& spec) {
    const int p = spec.degree;
    const int n = spec.elements;
    if (p < 1 || p > 5) throw std::invalid_argument("make_preset: degree must be in 1..5");
    if (n < 1) throw std::invalid_argument("make_preset: need at least one element");

    if (spec.name == "unit-line-1patch") {
        Patch patch{make_line_geometry(0.0, 1.0), uniform_space_1d(p, n)};
        return with_tags({patch}, {}, spec);
    }
    if (spec.name == "unit-line-2patch") {
        Patch left{make_line_geometry(0.0, 0.5), uniform_space_1d(p, n)};
        Patch right{make_line_geometry(0.5, 1.0), uniform_space_1d(p, n)};
        InterfaceSpec itf{0, Side::East, 1, Side::West};
        return with_tags({left, right}, {itf}, spec);
    }
    if (spec.name == "unit-square-1patch") {
        Patch patch{make_rectangle_geometry(0, 0, 1, 1), uniform_space_2d(p, n, n)};
        return with_tags({patch}, {}, spec);
    }
    if (spec.name == "unit-square-2patch") {
        // Omega = (0,1)^2 split at x = 1/2; slave n x n, master (n+1) x (n+1)
        Patch left{make_rectangle_geometry(0, 0, 0.5, 1), uniform_space_2d(p, n, n)};
        Patch right{make_rectangle_geometry(0.5, 0, 1, 1), uniform_space_2d(p, n + 1, n + 1)};
        InterfaceSpec itf{0, Side::East, 1, Side::West};
        return with_tags({left, right}, {itf}, spec);
    }
    if (spec.name == "rect-2patch-nonmatching") {
        // Omega = (0,2)x(0,1); slave n x n, master (n+1) x (n+1)
        Patch left{make_rectangle_geometry(0, 0, 1, 1), uniform_space_2d(p, n, n)};
        Patch right{make_rectangle_geometry(1, 0, 2, 1), uniform_space_2d(p, n + 1, n + 1)};
        InterfaceSpec itf{0, Side::East, 1, Side::West};
        return with_tags({left, right}, {itf}, spec);
    }
    if (spec.name == "rect-2patch-matching") {
        Patch left{make_rectangle_geometry(0, 0, 1, 1), uniform_space_2d(p, n, n)};
        Patch right{make_rectangle_geometry(1, 0, 2, 1), uniform_space_2d(p, n, n)};
        InterfaceSpec itf{0, Side::East, 1, Side::West};
        return with_tags({left, right}, {itf}, spec);
    }
    if (spec.name == "quarter-annulus-2patch") {
        Patch inner{make_annulus_sector_geometry(1.0, 1.5), uniform_space_2d(p, n, n)};
        Patch outer{make_annulus_sector_geometry(1.5, 2.0), uniform_space_2d(p, n + 1, n + 1)};
        InterfaceSpec itf{0, Side::North, 1, Side::South};
        return with_tags({inner, outer}, {itf}, spec);
    }
    throw std::invalid_argument("make_preset: unknown preset '" + spec.name + "'");
}

std::vector<std::pair<std::string, std::string>> list_presets() {
    return {
        {"unit-line-1patch", "single patch on (0,1)"},
        {"unit-line-2patch", "two patches on (0,1) split at 0.5, point interface"},
        {"unit-square-1patch", "single patch on (0,1)^2"},
        {"unit-square-2patch", "(0,1)^2 split at x=1/2, slave n / master n+1 elements"},
        {"rect-2patch-nonmatching", "(0,2)x(0,1), split at x=1, slave n / master n+1 elements"},
        {"rect-2patch-matching", "(0,2)x(0,1), split at x=1, matched meshes"},
        {"quarter-annulus-2patch", "NURBS quarter annulus, radii 1 and 2, split at r=1.5"},
    };
}

} // namespace igam
