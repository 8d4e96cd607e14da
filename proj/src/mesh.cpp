#include "dgnet/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgnet {

MeshAndLayout build_mesh(double x_min, double x_max, std::size_t K, std::size_t N_p) {
    if (!(x_max > x_min)) throw std::invalid_argument("build_mesh: x_max must exceed x_min");
    if (K == 0) throw std::invalid_argument("build_mesh: K must be positive");
    if (N_p < 2) throw std::invalid_argument("build_mesh: N_p must be at least 2");

    Mesh1D mesh;
    mesh.x_min = x_min;
    mesh.x_max = x_max;
    mesh.K = K;
    mesh.N_p = N_p;
    mesh.h = (x_max - x_min) / static_cast<double>(K);
    mesh.element_bounds.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double xa = x_min + static_cast<double>(k) * mesh.h;
        const double xb = x_min + static_cast<double>(k + 1) * mesh.h;
        mesh.element_bounds.emplace_back(xa, k + 1 == K ? x_max : xb);
    }

    DofLayout layout;
    layout.node_coords.resize(K * N_p);
    for (std::size_t k = 0; k < K; ++k) {
        const auto [xa, xb] = mesh.element_bounds[k];
        for (std::size_t n = 0; n < N_p; ++n) {
            // equispaced Lagrange nodes; endpoints exact
            const double s = static_cast<double>(n) / static_cast<double>(N_p - 1);
            double x = xa + s * (xb - xa);
            if (n == 0) x = xa;
            if (n == N_p - 1) x = xb;
            layout.node_coords[k * N_p + n] = x;
        }
    }
    layout.interface_dofs.reserve(K - 1);
    for (std::size_t i = 0; i + 1 < K; ++i) {
        layout.interface_dofs.emplace_back(i * N_p + (N_p - 1), (i + 1) * N_p);
    }
    return {std::move(mesh), std::move(layout)};
}

std::size_t element_of(const Mesh1D& mesh, double x) {
    if (x < mesh.x_min || x > mesh.x_max)
        throw std::out_of_range("element_of: x outside the mesh domain");
    if (x == mesh.x_min) return 0;
    const double s = (x - mesh.x_min) / mesh.h;
    auto k = std::min(static_cast<std::size_t>(std::max(s, 0.0)), mesh.K - 1);
    // interface coordinates resolve to the left element
    while (k > 0 && x <= mesh.element_bounds[k].first) --k;
    while (k + 1 < mesh.K && x > mesh.element_bounds[k].second) ++k;
    return k;
}

}  // namespace dgnet
