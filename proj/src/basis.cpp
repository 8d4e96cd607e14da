#include "dgnet/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace dgnet {

QuadratureRule gauss_rule(std::size_t n_points) {
    QuadratureRule r;
    switch (n_points) {
        case 1:
            r.points = {0.0};
            r.weights = {2.0};
            break;
        case 2: {
            const double p = 1.0 / std::sqrt(3.0);
            r.points = {-p, p};
            r.weights = {1.0, 1.0};
            break;
        }
        case 3: {
            const double p = std::sqrt(3.0 / 5.0);
            r.points = {-p, 0.0, p};
            r.weights = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
            break;
        }
        case 4: {
            const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
            const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
            const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
            const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
            r.points = {-b, -a, a, b};
            r.weights = {wb, wa, wa, wb};
            break;
        }
        case 5: {
            const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
            const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
            const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
            const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
            r.points = {-b, -a, 0.0, a, b};
            r.weights = {wb, wa, 128.0 / 225.0, wa, wb};
            break;
        }
        default:
            throw std::invalid_argument("gauss_rule: supported point counts are 1..5");
    }
    return r;
}

namespace {

double lagrange_value(const std::vector<double>& nodes, std::size_t n, double xi) {
    double v = 1.0;
    for (std::size_t m = 0; m < nodes.size(); ++m) {
        if (m == n) continue;
        v *= (xi - nodes[m]) / (nodes[n] - nodes[m]);
    }
    return v;
}

double lagrange_deriv(const std::vector<double>& nodes, std::size_t n, double xi) {
    double d = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (j == n) continue;
        double term = 1.0 / (nodes[n] - nodes[j]);
        for (std::size_t m = 0; m < nodes.size(); ++m) {
            if (m == n || m == j) continue;
            term *= (xi - nodes[m]) / (nodes[n] - nodes[m]);
        }
        d += term;
    }
    return d;
}

}  // namespace

double BasisTable::shape(std::size_t n, double xi) const {
    return lagrange_value(nodes, n, xi);
}

double BasisTable::shape_deriv(std::size_t n, double xi) const {
    return lagrange_deriv(nodes, n, xi);
}

BasisTable lagrange_basis(std::size_t N_p, const QuadratureRule& rule) {
    if (N_p < 2) throw std::invalid_argument("lagrange_basis: N_p must be at least 2");
    BasisTable b;
    b.N_p = N_p;
    b.rule = rule;
    b.nodes.resize(N_p);
    for (std::size_t n = 0; n < N_p; ++n)
        b.nodes[n] = -1.0 + 2.0 * static_cast<double>(n) / static_cast<double>(N_p - 1);
    b.nodes.front() = -1.0;
    b.nodes.back() = 1.0;

    const std::size_t nq = rule.size();
    b.values.resize(nq * N_p);
    b.derivs.resize(nq * N_p);
    for (std::size_t q = 0; q < nq; ++q) {
        for (std::size_t n = 0; n < N_p; ++n) {
            b.values[q * N_p + n] = lagrange_value(b.nodes, n, rule.points[q]);
            b.derivs[q * N_p + n] = lagrange_deriv(b.nodes, n, rule.points[q]);
        }
    }
    b.left_values.resize(N_p);
    b.right_values.resize(N_p);
    for (std::size_t n = 0; n < N_p; ++n) {
        b.left_values[n] = lagrange_value(b.nodes, n, -1.0);
        b.right_values[n] = lagrange_value(b.nodes, n, 1.0);
    }
    return b;
}

BasisTable linear_basis(const QuadratureRule& rule) { return lagrange_basis(2, rule); }

void ConvKernel::apply(const std::vector<double>& in, std::vector<double>& out) const {
    const std::size_t K = in.size() / n_cols;
    out.assign(K * n_rows, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        const double* ib = in.data() + k * n_cols;
        double* ob = out.data() + k * n_rows;
        for (std::size_t r = 0; r < n_rows; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < n_cols; ++c) acc += w[r * n_cols + c] * ib[c];
            ob[r] = acc;
        }
    }
}

Kernels make_kernels(const BasisTable& basis) {
    Kernels ks;
    ks.values.n_rows = basis.rule.size();
    ks.values.n_cols = basis.N_p;
    ks.values.w = basis.values;
    ks.derivs.n_rows = basis.rule.size();
    ks.derivs.n_cols = basis.N_p;
    ks.derivs.w = basis.derivs;
    return ks;
}

double interpolate(const ElementField& field, const Mesh1D& mesh,
                   const BasisTable& basis, double x) {
    const std::size_t k = element_of(mesh, x);
    const auto [xa, xb] = mesh.element_bounds[k];
    const double xi = 2.0 * (x - xa) / (xb - xa) - 1.0;
    double v = 0.0;
    for (std::size_t n = 0; n < field.N_p; ++n)
        v += field(k, n) * basis.shape(n, xi);
    return v;
}

InitialFn plain_initial(std::function<double(double)> f) {
    return [f = std::move(f)](double x, Side) { return f(x); };
}

ElementField project_initial_condition(const InitialFn& u0, const Mesh1D& mesh,
                                       const DofLayout& layout, const BasisTable& basis) {
    (void)basis;
    ElementField field(mesh.K, mesh.N_p, 0.0);
    for (std::size_t k = 0; k < mesh.K; ++k) {
        for (std::size_t n = 0; n < mesh.N_p; ++n) {
            const double x = layout.node_coords[k * mesh.N_p + n];
            // endpoint nodes take the limit from inside their element
            Side side = Side::Interior;
            if (n == 0) side = Side::Right;
            if (n == mesh.N_p - 1) side = Side::Left;
            field(k, n) = u0(x, side);
        }
    }
    return field;
}

}  // namespace dgnet
