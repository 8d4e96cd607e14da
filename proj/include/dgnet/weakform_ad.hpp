#ifndef DGNET_WEAKFORM_AD_HPP
#define DGNET_WEAKFORM_AD_HPP

#include "dgnet/autodiff.hpp"
#include "dgnet/weakform.hpp"

namespace dgnet {

/// Differentiable weak-form residual on flat (K*N_p) tensors. Matches the
/// loop assembler entry-for-entry; quadrature evaluation goes through the
/// blockwise basis kernels. The source term is evaluated at the current
/// state values and treated as constant on the tape (all bundled problems
/// have u-independent sources).
ad::Tensor assemble_residual_tensor(const ad::Tensor& u, const ad::Tensor& udot,
                                    const ProblemSpec& prob, double t,
                                    const Discretization& disc);

/// Tensor counterpart of apply_dirichlet: boundary DOFs replaced by the
/// prescribed values; gradients masked there.
ad::Tensor apply_dirichlet_tensor(const ad::Tensor& u, const BCSpec& bc, double t,
                                  const Mesh1D& mesh);

}  // namespace dgnet

#endif
