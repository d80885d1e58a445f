#pragma once

#include <string>
#include <vector>

#include "cellsheaf/simplicial.hpp"

namespace cellsheaf {

/// Interval: vertices a, b and the edge e.
ComplexPtr interval();
/// Circle as a triangle boundary on vertices 0, 1, 2.
ComplexPtr circle();
/// Full 2-simplex on vertices 0, 1, 2.
ComplexPtr triangle();
/// Boundary of the 2-simplex, vertices 0, 1, 2.
ComplexPtr triangle_boundary();
/// Boundary of the 3-simplex, vertices 0, 1, 2, 3.
ComplexPtr tetrahedron_boundary();
/// Single vertex p.
ComplexPtr point();

/// Names accepted by fixture(): I, C3, D2, dD2, dD3, pt.
const std::vector<std::string>& fixture_names();
/// Fixtures without boundary: C3, dD2, dD3.
const std::vector<std::string>& closed_fixture_names();
/// Throws std::invalid_argument for an unknown name.
ComplexPtr fixture(const std::string& name);

}  // namespace cellsheaf
