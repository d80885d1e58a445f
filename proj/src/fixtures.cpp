#include "cellsheaf/fixtures.hpp"

#include <stdexcept>

namespace cellsheaf {

ComplexPtr interval() {
    static const ComplexPtr k = make_complex(SimplicialComplex({"a", "b"}, {{0, 1}}, {{"e", {0, 1}}}));
    return k;
}

ComplexPtr circle() {
    static const ComplexPtr k = make_complex(SimplicialComplex({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}}));
    return k;
}

ComplexPtr triangle() {
    static const ComplexPtr k = make_complex(SimplicialComplex({"0", "1", "2"}, {{0, 1, 2}}));
    return k;
}

ComplexPtr triangle_boundary() {
    static const ComplexPtr k = make_complex(SimplicialComplex({"0", "1", "2"}, {{0, 1}, {1, 2}, {0, 2}}));
    return k;
}

ComplexPtr tetrahedron_boundary() {
    static const ComplexPtr k =
        make_complex(SimplicialComplex({"0", "1", "2", "3"}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
    return k;
}

ComplexPtr point() {
    static const ComplexPtr k = make_complex(SimplicialComplex({"p"}, {{0}}));
    return k;
}

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names{"I", "C3", "D2", "dD2", "dD3", "pt"};
    return names;
}

const std::vector<std::string>& closed_fixture_names() {
    static const std::vector<std::string> names{"C3", "dD2", "dD3"};
    return names;
}

ComplexPtr fixture(const std::string& name) {
    if (name == "I") return interval();
    if (name == "C3") return circle();
    if (name == "D2") return triangle();
    if (name == "dD2") return triangle_boundary();
    if (name == "dD3") return tetrahedron_boundary();
    if (name == "pt") return point();
    throw std::invalid_argument("unknown fixture \"" + name + "\"");
}

}  // namespace cellsheaf
