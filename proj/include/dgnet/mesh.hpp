#ifndef DGNET_MESH_HPP
#define DGNET_MESH_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace dgnet {

/// Uniform 1-D partition of [x_min, x_max] into K elements with N_p
/// Lagrange nodes per element. Interface nodes are duplicated: each
/// interior interface carries one DOF from the left element and one from
/// the right, so the represented solution may jump there.
struct Mesh1D {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t K = 0;        // element count
    std::size_t N_p = 0;      // nodes per element
    double h = 0.0;           // uniform element width
    std::vector<std::pair<double, double>> element_bounds;

    std::size_t num_dofs() const { return K * N_p; }
};

/// Per-element DOF coordinates plus the interface/ghost bookkeeping.
struct DofLayout {
    // node_coords[k*N_p + n] = physical coordinate of node n of element k
    std::vector<double> node_coords;
    // interior interface i (i = 0..K-2, between elements i and i+1):
    // (left element's right node, right element's left node)
    std::vector<std::pair<std::size_t, std::size_t>> interface_dofs;
    // single exterior-trace value slots at x_min and x_max
    double ghost_left = 0.0;
    double ghost_right = 0.0;
};

struct MeshAndLayout {
    Mesh1D mesh;
    DofLayout layout;
};

/// Builds the uniform mesh and its DOF layout.
/// Throws std::invalid_argument for K = 0, x_max <= x_min, or N_p < 2.
MeshAndLayout build_mesh(double x_min, double x_max, std::size_t K, std::size_t N_p);

/// Element index containing x; interface coordinates resolve to the left
/// element. Throws std::out_of_range for x outside [x_min, x_max].
std::size_t element_of(const Mesh1D& mesh, double x);

}  // namespace dgnet

#endif
