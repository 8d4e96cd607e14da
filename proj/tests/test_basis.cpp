#include <doctest.h>

#include <stdexcept>
#include <limits>

#include <cmath>

#include "dgnet/basis.hpp"
#include "dgnet/mesh.hpp"

using namespace dgnet;

namespace {
constexpr double kPi = 3.14159265358979323846;

double monomial_integral(int m) {
    // int_{-1}^{1} xi^m dxi
    return (m % 2 == 1) ? 0.0 : 2.0 / (m + 1);
}
}  // namespace

TEST_CASE("gauss_rule reproduces the classical rules") {
    auto r1 = gauss_rule(1);
    REQUIRE(r1.size() == 1);
    CHECK(r1.points[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r1.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    auto r2 = gauss_rule(2);
    REQUIRE(r2.size() == 2);
    CHECK(r2.points[0] == doctest::Approx(-0.5773502692).epsilon(1e-9));
    CHECK(r2.points[1] == doctest::Approx(0.5773502692).epsilon(1e-9));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    // n=2 applied to f = xi^2 gives the exact 2/3
    double s = 0.0;
    for (std::size_t q = 0; q < 2; ++q) s += r2.weights[q] * r2.points[q] * r2.points[q];
    CHECK(s == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(gauss_rule(0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_rule(6), std::invalid_argument);
}

TEST_CASE("n-point Gauss rules satisfy the moment conditions up to degree 2n-1") {
    for (std::size_t n = 1; n <= 5; ++n) {
        auto r = gauss_rule(n);
        double wsum = 0.0;
        for (double w : r.weights) {
            CHECK(w > 0.0);
            wsum += w;
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (int m = 0; m <= static_cast<int>(2 * n - 1); ++m) {
            double s = 0.0;
            for (std::size_t q = 0; q < r.size(); ++q)
                s += r.weights[q] * std::pow(r.points[q], m);
            CHECK(std::abs(s - monomial_integral(m)) < 1e-13);
        }
    }
}

TEST_CASE("linear_basis tabulates the hat functions") {
    auto basis = linear_basis(gauss_rule(2));
    REQUIRE(basis.N_p == 2);
    // at xi = -1/sqrt(3)
    CHECK(basis.value(0, 0) == doctest::Approx(0.7886751346).epsilon(1e-9));
    CHECK(basis.value(0, 1) == doctest::Approx(0.2113248654).epsilon(1e-9));
    // endpoint (Lagrange node) values
    CHECK(basis.left_values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(basis.left_values[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(basis.right_values[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(basis.right_values[1] == doctest::Approx(1.0).epsilon(1e-15));
    // partition of unity and derivative sum at every quadrature point
    for (std::size_t q = 0; q < basis.rule.size(); ++q) {
        CHECK(basis.value(q, 0) + basis.value(q, 1) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(basis.deriv(q, 0) + basis.deriv(q, 1) ==
              doctest::Approx(0.0).epsilon(1e-15));
        CHECK(basis.deriv(q, 0) == doctest::Approx(-0.5).epsilon(1e-15));
        CHECK(basis.deriv(q, 1) == doctest::Approx(0.5).epsilon(1e-15));
    }
    // Lagrange property at nodes
    for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t m = 0; m < 2; ++m)
            CHECK(basis.shape(n, basis.nodes[m]) ==
                  doctest::Approx(n == m ? 1.0 : 0.0).epsilon(1e-15));
}

TEST_CASE("lagrange_basis of higher order keeps the partition of unity") {
    for (std::size_t N_p : {3u, 4u}) {
        auto basis = lagrange_basis(N_p, gauss_rule(4));
        for (std::size_t q = 0; q < basis.rule.size(); ++q) {
            double vs = 0.0, ds = 0.0;
            for (std::size_t n = 0; n < N_p; ++n) {
                vs += basis.value(q, n);
                ds += basis.deriv(q, n);
            }
            CHECK(vs == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(std::abs(ds) < 1e-12);
        }
    }
}

TEST_CASE("make_kernels evaluates element data at Gauss points") {
    auto basis = linear_basis(gauss_rule(2));
    auto kernels = make_kernels(basis);

    std::vector<double> nodal = {0.0, 1.0};
    std::vector<double> at_gauss, deriv_at_gauss;
    kernels.values.apply(nodal, at_gauss);
    kernels.derivs.apply(nodal, deriv_at_gauss);
    REQUIRE(at_gauss.size() == 2);
    CHECK(at_gauss[0] == doctest::Approx(0.2113248654).epsilon(1e-9));
    CHECK(at_gauss[1] == doctest::Approx(0.7886751346).epsilon(1e-9));
    CHECK(deriv_at_gauss[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(deriv_at_gauss[1] == doctest::Approx(0.5).epsilon(1e-15));

    std::vector<double> constant = {3.25, 3.25, -1.0, -1.0};  // two elements
    std::vector<double> out;
    kernels.values.apply(constant, out);
    REQUIRE(out.size() == 4);
    CHECK(out[0] == doctest::Approx(3.25).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(3.25).epsilon(1e-15));
    CHECK(out[2] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(out[3] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("kernel route matches a direct per-element loop") {
    auto basis = linear_basis(gauss_rule(2));
    auto kernels = make_kernels(basis);
    const std::size_t K = 7;
    std::vector<double> nodal(K * 2);
    for (std::size_t i = 0; i < nodal.size(); ++i)
        nodal[i] = std::sin(0.7 * static_cast<double>(i)) + 0.3;
    std::vector<double> via_kernel;
    kernels.values.apply(nodal, via_kernel);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t q = 0; q < 2; ++q) {
            double direct = basis.value(q, 0) * nodal[k * 2] + basis.value(q, 1) * nodal[k * 2 + 1];
            CHECK(std::abs(via_kernel[k * 2 + q] - direct) <=
                  1e-15 * std::max(1.0, std::abs(direct)));
        }
}

TEST_CASE("interpolate is exact on linears and honors trace semantics") {
    auto [mesh, layout] = build_mesh(0.0, 1.0, 1, 2);
    auto basis = linear_basis(gauss_rule(2));
    ElementField f(1, 2);
    f(0, 0) = 0.0;
    f(0, 1) = 1.0;
    CHECK(interpolate(f, mesh, basis, 0.5) == doctest::Approx(0.5).epsilon(1e-15));

    auto [m4, l4] = build_mesh(-1.0, 1.0, 4, 2);
    ElementField g(4, 2);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t n = 0; n < 2; ++n)
            g(k, n) = 3.0 * l4.node_coords[k * 2 + n] + 2.0;
    for (double x : {-1.0, -0.77, -0.5, 0.0, 0.31, 0.99, 1.0}) {
        const double exact = 3.0 * x + 2.0;
        CHECK(std::abs(interpolate(g, m4, basis, x) - exact) <= 1e-14 * std::abs(exact));
    }
    CHECK_THROWS_AS(interpolate(g, m4, basis, 1.5), std::out_of_range);

    // jump at x = 0: interface evaluation takes the left-element trace
    ElementField jump(4, 2);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t n = 0; n < 2; ++n)
            jump(k, n) = (k < 2) ? 1.0 : -1.0;
    CHECK(interpolate(jump, m4, basis, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(interpolate(jump, m4, basis, 1e-12) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("project_initial_condition samples nodes with one-sided limits") {
    auto basis = linear_basis(gauss_rule(2));

    auto [m, l] = build_mesh(-1.0, 1.0, 128, 2);
    auto f = project_initial_condition(plain_initial([](double x) { return -std::sin(kPi * x); }),
                                       m, l, basis);
    for (std::size_t k = 0; k < m.K; ++k)
        for (std::size_t n = 0; n < 2; ++n)
            CHECK(f(k, n) ==
                  doctest::Approx(-std::sin(kPi * l.node_coords[k * 2 + n])).epsilon(1e-14));

    // staircase with jumps at -1.5, -0.5, 0.5 on [-2, 2]: duplicated
    // interface DOFs take the two one-sided limits
    auto [m2, l2] = build_mesh(-2.0, 2.0, 8, 2);
    InitialFn stairs = [](double x, Side side) {
        if (x < -1.5 || (x == -1.5 && side == Side::Left)) return 0.25;
        if (x < -0.5 || (x == -0.5 && side == Side::Left)) return 0.0;
        if (x < 0.5 || (x == 0.5 && side == Side::Left)) return -0.25;
        return -0.5;
    };
    auto g = project_initial_condition(stairs, m2, l2, basis);
    // element width is 0.5, so the jumps sit exactly on interfaces
    CHECK(g(0, 1) == doctest::Approx(0.25).epsilon(1e-15));   // right node of [-2,-1.5]
    CHECK(g(1, 0) == doctest::Approx(0.0).epsilon(1e-15));    // left node of [-1.5,-1]
    CHECK(g(2, 1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(g(3, 0) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(g(4, 1) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(g(5, 0) == doctest::Approx(-0.5).epsilon(1e-15));

    auto z = project_initial_condition(plain_initial([](double) { return 0.0; }), m2, l2, basis);
    for (double v : z.data) CHECK(v == 0.0);
}
