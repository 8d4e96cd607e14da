#include <doctest.h>

#include <stdexcept>
#include <limits>

#include <cmath>
#include <functional>
#include <random>

#include "dgnet/autodiff.hpp"

using namespace dgnet::ad;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(gen);
    return v;
}

// Central finite-difference check of d(scalar f)/d(inputs) against autodiff.
// `build` assembles the scalar loss from parameter tensors created from the
// given value arrays (a fresh tape per evaluation).
void check_gradients(const std::vector<std::vector<double>>& inputs,
                     const std::vector<std::vector<std::size_t>>& shapes,
                     const std::function<Tensor(std::vector<Tensor>&)>& build,
                     double tol = 1e-7) {
    std::vector<Tensor> params;
    for (std::size_t i = 0; i < inputs.size(); ++i)
        params.push_back(Tensor::param(inputs[i], shapes[i]));
    Tensor loss = build(params);
    backward(loss);

    const double eps = 1e-5;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        for (std::size_t j = 0; j < inputs[i].size(); ++j) {
            auto probe = [&](double delta) {
                std::vector<Tensor> p2;
                for (std::size_t a = 0; a < inputs.size(); ++a) {
                    auto vals = inputs[a];
                    if (a == i) vals[j] += delta;
                    p2.push_back(Tensor::param(vals, shapes[a]));
                }
                return build(p2).scalar();
            };
            const double fd = (probe(eps) - probe(-eps)) / (2 * eps);
            const double ad_grad = params[i].grad()[j];
            CHECK(std::abs(fd - ad_grad) <= tol * std::max(1.0, std::abs(fd)));
        }
    }
}

}  // namespace

TEST_CASE("conv1d matches hand cross-correlation with zero padding") {
    auto x = Tensor::constant({1, 2, 3, 4}, {1, 4});
    auto w = Tensor::param({1, 0, -1}, {1, 1, 3});
    auto b = Tensor::param({0}, {1});
    auto y = conv1d(x, w, b);
    REQUIRE(y.size() == 4);
    CHECK(y.values()[0] == doctest::Approx(-2).epsilon(1e-15));
    CHECK(y.values()[1] == doctest::Approx(-2).epsilon(1e-15));
    CHECK(y.values()[2] == doctest::Approx(-2).epsilon(1e-15));
    CHECK(y.values()[3] == doctest::Approx(3).epsilon(1e-15));

    auto id = Tensor::param({0, 1, 0}, {1, 1, 3});
    auto y2 = conv1d(x, id, b);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(y2.values()[i] == doctest::Approx(x.values()[i]).epsilon(1e-15));
}

TEST_CASE("conv1d bias gradient of the summed output equals the length") {
    auto x = Tensor::constant(random_values(8, 1), {2, 4});
    auto w = Tensor::param(random_values(2 * 2 * 3, 2), {2, 2, 3});
    auto b = Tensor::param({0.1, -0.2}, {2});
    auto loss = sum(conv1d(x, w, b));
    backward(loss);
    CHECK(b.grad()[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(b.grad()[1] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("conv1d rejects channel mismatch") {
    auto x = Tensor::constant(random_values(8, 1), {2, 4});
    auto w = Tensor::param(random_values(9, 2), {1, 3, 3});
    auto b = Tensor::param({0.0}, {1});
    CHECK_THROWS_AS(conv1d(x, w, b), std::invalid_argument);
}

TEST_CASE("relu forward and dead-region gradient") {
    auto x = Tensor::param({-1, 0, 2}, {3});
    auto y = relu(x);
    CHECK(y.values()[0] == 0.0);
    CHECK(y.values()[1] == 0.0);
    CHECK(y.values()[2] == 2.0);
    backward(sum(y));
    CHECK(x.grad()[0] == 0.0);
    CHECK(x.grad()[1] == 0.0);  // subgradient at 0 defined as 0
    CHECK(x.grad()[2] == 1.0);

    auto w = Tensor::param({-0.5, -2.0}, {2});
    auto l = sum(relu(w));
    backward(l);
    CHECK(w.grad()[0] == 0.0);
    CHECK(w.grad()[1] == 0.0);
}

TEST_CASE("linear-form gradient identity") {
    auto xv = random_values(6, 3);
    auto w = Tensor::param(random_values(6, 4), {6});
    auto x = Tensor::constant(xv, {6});
    backward(sum(mul(w, x)));
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(w.grad()[i] == doctest::Approx(xv[i]).epsilon(1e-14));
}

TEST_CASE("backward rejects non-scalar roots and accumulates on repeat") {
    auto x = Tensor::param({1.0, 2.0}, {2});
    CHECK_THROWS_AS(backward(relu(x)), std::invalid_argument);

    auto l = sum(x);
    backward(l);
    backward(l);
    CHECK(x.grad()[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("elementwise op gradients match finite differences") {
    auto a = random_values(5, 10);
    auto b = random_values(5, 11);
    std::vector<std::vector<std::size_t>> shp = {{5}, {5}};

    check_gradients({a, b}, shp, [](std::vector<Tensor>& p) {
        return sum(mul(add(p[0], p[1]), sub(p[0], p[1])));
    });
    check_gradients({a, b}, shp, [](std::vector<Tensor>& p) {
        return sum(add_scaled(p[0], p[1], -1.7));
    });
    check_gradients({a, b}, shp, [](std::vector<Tensor>& p) {
        return sum(mul(scale(p[0], 0.3), relu(p[1])));
    });
    check_gradients({a, b}, shp, [](std::vector<Tensor>& p) {
        return sum(maximum(p[0], p[1]));
    });
    check_gradients({a}, {{5}}, [](std::vector<Tensor>& p) { return sum(abs(p[0])); });
}

TEST_CASE("structural op gradients match finite differences") {
    auto a = random_values(6, 20);
    auto b = random_values(9, 21);

    check_gradients({a, b}, {{2, 3}, {3, 3}}, [](std::vector<Tensor>& p) {
        return sum(relu(concat_channels({p[0], p[1]})));
    });

    std::vector<double> M = random_values(6, 22);  // 3x2 blockwise matrix
    check_gradients({a}, {{6}}, [M](std::vector<Tensor>& p) {
        return sum(relu(block_linear(p[0], M, 2, 3)));
    });

    std::vector<long> idx = {2, -1, 0, 5, -1};
    std::vector<double> pad = {0.0, 3.5, 0.0, 0.0, -1.0};
    check_gradients({a}, {{6}}, [idx, pad](std::vector<Tensor>& p) {
        return sum(relu(gather_pad(p[0], idx, pad)));
    });

    std::vector<double> lw = {1.0, 0.0}, rw = {0.0, 1.0};
    check_gradients({random_values(4, 23)}, {{4}}, [lw, rw](std::vector<Tensor>& p) {
        return sum(relu(surface_scatter(p[0], lw, rw, 3)));
    });

    std::vector<double> keep = {1, 0, 1, 1, 0, 1};
    std::vector<double> repl = {0, 9, 0, 0, -4, 0};
    check_gradients({a}, {{6}}, [keep, repl](std::vector<Tensor>& p) {
        return sum(relu(overwrite(p[0], keep, repl)));
    });
}

TEST_CASE("masked_mean_abs and conv1d gradients match finite differences") {
    auto a = random_values(6, 30);
    std::vector<double> mask = {1, 1, 0, 1, 1, 0};
    check_gradients({a}, {{6}}, [mask](std::vector<Tensor>& p) {
        return masked_mean_abs(p[0], mask);
    });

    auto x = random_values(8, 31);
    auto w = random_values(2 * 2 * 3, 32);
    auto bias = random_values(2, 33);
    check_gradients({x, w, bias}, {{2, 4}, {2, 2, 3}, {2}}, [](std::vector<Tensor>& p) {
        return sum(relu(conv1d(p[0], p[1], p[2])));
    });
}

TEST_CASE("surface_scatter computes the endpoint difference stencil") {
    // out[k*N_p + n] = right_w[n] * f[k+1] - left_w[n] * f[k]
    auto f = Tensor::constant({10, 20, 30}, {3});
    std::vector<double> lw = {1.0, 0.0}, rw = {0.0, 1.0};
    auto y = surface_scatter(f, lw, rw, 2);
    REQUIRE(y.size() == 4);
    CHECK(y.values()[0] == doctest::Approx(-10).epsilon(1e-15));
    CHECK(y.values()[1] == doctest::Approx(20).epsilon(1e-15));
    CHECK(y.values()[2] == doctest::Approx(-20).epsilon(1e-15));
    CHECK(y.values()[3] == doctest::Approx(30).epsilon(1e-15));
}
