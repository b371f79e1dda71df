#pragma once

#include <string>

#include "proxitop/jordan.hpp"
#include "proxitop/nerves.hpp"

namespace proxitop::svg {

// Region shading from the labeling (one translucent square per cell) with
// the curve drawn on top. Deterministic text for identical inputs.
std::string jordan_svg(const PlanarCurve& curve, const RegionLabeling& labeling);

// The complex drawn at the cover elements' centroids: filled triangles,
// edges, then labeled vertices.
std::string nerve_svg(const Cover& cover, const SimplicialComplex& nerve);

}  // namespace proxitop::svg
