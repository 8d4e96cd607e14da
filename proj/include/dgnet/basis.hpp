#ifndef DGNET_BASIS_HPP
#define DGNET_BASIS_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "dgnet/field.hpp"
#include "dgnet/mesh.hpp"

namespace dgnet {

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
    std::size_t size() const { return points.size(); }
};

/// Lagrange shape functions tabulated at the quadrature points of a rule.
/// values(q, n) = Phi_n(xi_q), derivs(q, n) = dPhi_n/dxi(xi_q).
struct BasisTable {
    std::size_t N_p = 0;
    QuadratureRule rule;
    std::vector<double> values;       // n_q x N_p, row-major
    std::vector<double> derivs;       // n_q x N_p
    std::vector<double> left_values;  // Phi_n(-1), size N_p
    std::vector<double> right_values; // Phi_n(+1), size N_p
    std::vector<double> nodes;        // reference node coordinates, size N_p

    double value(std::size_t q, std::size_t n) const { return values[q * N_p + n]; }
    double deriv(std::size_t q, std::size_t n) const { return derivs[q * N_p + n]; }

    /// Phi_n evaluated at an arbitrary reference coordinate.
    double shape(std::size_t n, double xi) const;
    double shape_deriv(std::size_t n, double xi) const;
};

/// n_rows x n_cols weight block applied per element (stride n_cols over the
/// nodal layout). The values kernel maps nodal data to Gauss-point values,
/// matching a strided convolution over the flattened field.
struct ConvKernel {
    std::size_t n_rows = 0;  // outputs per element
    std::size_t n_cols = 0;  // inputs per element
    std::vector<double> w;   // row-major

    double operator()(std::size_t r, std::size_t c) const { return w[r * n_cols + c]; }

    /// out[k*n_rows + r] = sum_c w(r,c) * in[k*n_cols + c]
    void apply(const std::vector<double>& in, std::vector<double>& out) const;
};

/// Gauss-Legendre rule with n_points in {1..5}; throws otherwise.
QuadratureRule gauss_rule(std::size_t n_points);

/// Linear (two-node) Lagrange basis tabulated at the rule points.
BasisTable linear_basis(const QuadratureRule& rule);

/// Equispaced-node Lagrange basis of arbitrary order.
BasisTable lagrange_basis(std::size_t N_p, const QuadratureRule& rule);

struct Kernels {
    ConvKernel values;
    ConvKernel derivs;
};

Kernels make_kernels(const BasisTable& basis);

/// Point evaluation of the DG field; interfaces take the left-element trace.
double interpolate(const ElementField& field, const Mesh1D& mesh,
                   const BasisTable& basis, double x);

/// Which side of a discontinuity a nodal sample should take.
enum class Side { Left, Interior, Right };

/// Initial datum with optional one-sided evaluation at discontinuities.
/// Plain functions ignore the side argument.
using InitialFn = std::function<double(double x, Side side)>;

InitialFn plain_initial(std::function<double(double)> f);

/// Nodal interpolation of u0: element-endpoint nodes take the one-sided
/// limit from inside their element, so a jump at an interface lands on the
/// duplicated DOF pair with its two limits.
ElementField project_initial_condition(const InitialFn& u0, const Mesh1D& mesh,
                                       const DofLayout& layout, const BasisTable& basis);

}  // namespace dgnet

#endif
