#include <doctest.h>

#include <stdexcept>
#include <limits>

#include <cmath>
#include <random>

#include "dgnet/mesh.hpp"

using namespace dgnet;

TEST_CASE("build_mesh produces the uniform partition") {
    auto [mesh, layout] = build_mesh(-2.0, 2.0, 128, 2);
    CHECK(mesh.h == doctest::Approx(0.03125).epsilon(1e-15));
    CHECK(mesh.num_dofs() == 256);
    CHECK(layout.node_coords.size() == 256);

    auto single = build_mesh(0.0, 1.0, 1, 2);
    CHECK(single.mesh.element_bounds.size() == 1);
    CHECK(single.mesh.element_bounds[0].first == 0.0);
    CHECK(single.mesh.element_bounds[0].second == 1.0);
    CHECK(single.mesh.num_dofs() == 2);

    auto four = build_mesh(-1.0, 1.0, 4, 2);
    const double expect[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(four.mesh.element_bounds[k].first == doctest::Approx(expect[k]).epsilon(1e-15));
        CHECK(four.mesh.element_bounds[k].second ==
              doctest::Approx(expect[k + 1]).epsilon(1e-15));
    }
}

TEST_CASE("build_mesh rejects degenerate input") {
    CHECK_THROWS_AS(build_mesh(0.0, 1.0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh(1.0, 1.0, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh(1.0, 0.0, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_mesh(0.0, 1.0, 4, 1), std::invalid_argument);
}

TEST_CASE("element widths tile the domain") {
    for (std::size_t K : {1u, 7u, 128u, 1000u}) {
        auto [mesh, layout] = build_mesh(-2.0, 2.0, K, 2);
        double sum = 0.0;
        for (const auto& [a, b] : mesh.element_bounds) sum += b - a;
        CHECK(std::abs(sum - 4.0) <= 4.0 * K * 4.0 * 2.220446049250313e-16);
        // adjacent elements share their interface coordinate exactly
        for (std::size_t k = 0; k + 1 < K; ++k)
            CHECK(mesh.element_bounds[k].second == mesh.element_bounds[k + 1].first);
    }
}

TEST_CASE("interior interfaces carry duplicated DOFs") {
    auto [mesh, layout] = build_mesh(-2.0, 2.0, 128, 2);
    CHECK(layout.interface_dofs.size() == 127);
    for (const auto& [ldof, rdof] : layout.interface_dofs) {
        CHECK(ldof != rdof);
        CHECK(layout.node_coords[ldof] == layout.node_coords[rdof]);
    }
}

TEST_CASE("element_of locates points and breaks ties left") {
    auto m128 = build_mesh(-2.0, 2.0, 128, 2).mesh;
    CHECK(element_of(m128, -2.0) == 0);
    CHECK(element_of(m128, 2.0) == 127);
    auto m4 = build_mesh(-1.0, 1.0, 4, 2).mesh;
    CHECK(element_of(m4, -0.5) == 0);
    CHECK_THROWS_AS(element_of(m4, -1.0001), std::out_of_range);
    CHECK_THROWS_AS(element_of(m4, 1.0001), std::out_of_range);
}

TEST_CASE("element_of hits the owning element at every midpoint") {
    for (std::size_t K : {1u, 3u, 128u, 1024u}) {
        auto mesh = build_mesh(-2.0, 2.0, K, 2).mesh;
        for (std::size_t k = 0; k < K; ++k) {
            const auto& [a, b] = mesh.element_bounds[k];
            CHECK(element_of(mesh, 0.5 * (a + b)) == k);
        }
    }
}
