#ifndef DGNET_WEAKFORM_HPP
#define DGNET_WEAKFORM_HPP

#include <vector>

#include "dgnet/basis.hpp"
#include "dgnet/problem.hpp"

namespace dgnet {

/// Everything fixed once the domain is discretized.
struct Discretization {
    Mesh1D mesh;
    DofLayout layout;
    BasisTable basis;
    Kernels kernels;

    static Discretization make(double x_min, double x_max, std::size_t K,
                               std::size_t N_p = 2, std::size_t n_gauss = 2);
};

/// Interface traces and the resulting oriented Lax-Friedrichs values for
/// all K+1 interfaces (boundary closure already applied).
struct InterfaceFluxes {
    std::vector<double> u_left;   // trace from the left of interface i
    std::vector<double> u_right;  // trace from the right
    std::vector<double> fhat;     // x-oriented numerical flux value
};

InterfaceFluxes interface_fluxes(const ElementField& u, const ProblemSpec& prob,
                                 double t);

/// Weak-form residual tested against every shape function: entry (k, n) is
/// the four-term residual of element k against Phi_n.
ElementField assemble_residual(const ElementField& u, const ElementField& udot,
                               const ProblemSpec& prob, double t,
                               const Discretization& disc);

/// Overwrites Dirichlet boundary DOFs with the prescribed trace values.
ElementField apply_dirichlet(const ElementField& u, const BCSpec& bc, double t);
void apply_dirichlet_in_place(ElementField& u, const BCSpec& bc, double t);

/// Flat-DOF mask: true where apply_dirichlet overwrites (at most one DOF
/// per Dirichlet boundary). Residual rows tested against these DOFs are
/// excluded from the training loss.
std::vector<bool> dirichlet_mask(const Mesh1D& mesh, const BCSpec& bc);

/// M_ij = integral of Phi_i Phi_j over an element of width h, by the
/// table's quadrature rule. Row-major N_p x N_p.
std::vector<double> element_mass_matrix(double h, const BasisTable& basis);

/// Quadrature integral of the DG field over the whole domain.
double total_mass(const ElementField& u, const Mesh1D& mesh, const BasisTable& basis);

/// Sum of absolute differences over consecutive DOFs (interface jumps
/// included via the duplicated nodes).
double total_variation(const ElementField& u);

/// Total variation of the element mean values (shock diagnostic).
double total_variation_of_means(const ElementField& u, const BasisTable& basis);

}  // namespace dgnet

#endif
