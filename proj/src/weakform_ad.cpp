#include "dgnet/weakform_ad.hpp"

#include <cmath>
#include <stdexcept>

namespace dgnet {

namespace {

ad::Tensor flux_values(const FluxModel& flux, const ad::Tensor& u) {
    switch (flux.kind()) {
        case FluxModel::Kind::Zero:
            return ad::Tensor::constant(std::vector<double>(u.size(), 0.0));
        case FluxModel::Kind::Advection:
            return ad::scale(u, flux.param());
        case FluxModel::Kind::Burgers:
            return ad::scale(ad::mul(u, u), 0.5);
    }
    throw std::logic_error("flux_values: unhandled flux kind");
}

/// C = max(|speed(uL)|, |speed(uR)|) elementwise.
ad::Tensor lf_speed(const FluxModel& flux, const ad::Tensor& uL, const ad::Tensor& uR) {
    switch (flux.kind()) {
        case FluxModel::Kind::Zero:
            return ad::Tensor::constant(std::vector<double>(uL.size(), 0.0));
        case FluxModel::Kind::Advection:
            return ad::Tensor::constant(
                std::vector<double>(uL.size(), std::abs(flux.param())));
        case FluxModel::Kind::Burgers:
            return ad::maximum(ad::abs(uL), ad::abs(uR));
    }
    throw std::logic_error("lf_speed: unhandled flux kind");
}

}  // namespace

ad::Tensor assemble_residual_tensor(const ad::Tensor& u, const ad::Tensor& udot,
                                    const ProblemSpec& prob, double t,
                                    const Discretization& disc) {
    const std::size_t K = disc.mesh.K, Np = disc.mesh.N_p;
    const auto& basis = disc.basis;
    const std::size_t nq = basis.rule.size();
    if (u.size() != K * Np || udot.size() != K * Np)
        throw std::invalid_argument("assemble_residual_tensor: shape mismatch");
    const double jac = 0.5 * disc.mesh.h;

    // Gauss-point interpolation kernel (values) and the projection kernels
    const std::vector<double>& V = basis.values;  // nq x Np
    std::vector<double> proj(Np * nq), dproj(Np * nq);
    for (std::size_t n = 0; n < Np; ++n)
        for (std::size_t q = 0; q < nq; ++q) {
            proj[n * nq + q] = jac * basis.rule.weights[q] * basis.value(q, n);
            dproj[n * nq + q] = basis.rule.weights[q] * basis.deriv(q, n);
        }

    ad::Tensor uq = ad::block_linear(u, V, Np, nq);
    ad::Tensor udotq = ad::block_linear(udot, V, Np, nq);

    ad::Tensor mass = ad::block_linear(udotq, proj, nq, Np);
    ad::Tensor vol = ad::block_linear(flux_values(*prob.flux, uq), dproj, nq, Np);

    // source projection, constant on the tape
    std::vector<double> src(K * Np, 0.0);
    if (prob.source) {
        for (std::size_t k = 0; k < K; ++k) {
            const double xa = disc.mesh.element_bounds[k].first;
            for (std::size_t n = 0; n < Np; ++n) {
                double s = 0.0;
                for (std::size_t q = 0; q < nq; ++q) {
                    const double xq = xa + jac * (basis.rule.points[q] + 1.0);
                    const double uval = uq.values()[k * nq + q];
                    s += basis.rule.weights[q] * prob.source(uval, xq, t) * basis.value(q, n);
                }
                src[k * Np + n] = jac * s;
            }
        }
    }

    // interface traces with boundary closure
    prob.bc.validate();
    std::vector<long> idxL(K + 1), idxR(K + 1);
    std::vector<double> padL(K + 1, 0.0), padR(K + 1, 0.0);
    for (std::size_t i = 1; i <= K; ++i) idxL[i] = static_cast<long>((i - 1) * Np + (Np - 1));
    for (std::size_t i = 0; i < K; ++i) idxR[i] = static_cast<long>(i * Np);
    switch (prob.bc.left.kind) {
        case BCKind::Dirichlet:
            idxL[0] = -1;
            padL[0] = prob.bc.left.value(t);
            break;
        case BCKind::Periodic: idxL[0] = static_cast<long>(K * Np - 1); break;
        default: idxL[0] = 0; break;
    }
    switch (prob.bc.right.kind) {
        case BCKind::Dirichlet:
            idxR[K] = -1;
            padR[K] = prob.bc.right.value(t);
            break;
        case BCKind::Periodic: idxR[K] = 0; break;
        default: idxR[K] = static_cast<long>(K * Np - 1); break;
    }

    ad::Tensor uL = ad::gather_pad(u, idxL, padL);
    ad::Tensor uR = ad::gather_pad(u, idxR, padR);
    ad::Tensor central = ad::scale(ad::add(flux_values(*prob.flux, uL), flux_values(*prob.flux, uR)), 0.5);
    ad::Tensor penalty = ad::mul(ad::scale(lf_speed(*prob.flux, uL, uR), 0.5), ad::sub(uR, uL));
    ad::Tensor fhat = ad::sub(central, penalty);

    // prescribed-flux boundaries override the LF value
    if (prob.bc.left.kind == BCKind::Neumann || prob.bc.right.kind == BCKind::Neumann) {
        std::vector<double> keep(K + 1, 1.0), repl(K + 1, 0.0);
        if (prob.bc.left.kind == BCKind::Neumann) {
            keep[0] = 0.0;
            repl[0] = prob.bc.left.value(t);
        }
        if (prob.bc.right.kind == BCKind::Neumann) {
            keep[K] = 0.0;
            repl[K] = prob.bc.right.value(t);
        }
        fhat = ad::overwrite(fhat, keep, repl);
    }

    ad::Tensor surf = ad::surface_scatter(fhat, basis.left_values, basis.right_values, K);
    ad::Tensor r = ad::sub(ad::add(mass, surf), vol);
    return ad::sub(r, ad::Tensor::constant(std::move(src)));
}

ad::Tensor apply_dirichlet_tensor(const ad::Tensor& u, const BCSpec& bc, double t,
                                  const Mesh1D& mesh) {
    if (bc.left.kind != BCKind::Dirichlet && bc.right.kind != BCKind::Dirichlet) return u;
    std::vector<double> keep(mesh.num_dofs(), 1.0), repl(mesh.num_dofs(), 0.0);
    if (bc.left.kind == BCKind::Dirichlet) {
        keep[0] = 0.0;
        repl[0] = bc.left.value(t);
    }
    if (bc.right.kind == BCKind::Dirichlet) {
        keep[mesh.num_dofs() - 1] = 0.0;
        repl[mesh.num_dofs() - 1] = bc.right.value(t);
    }
    return ad::overwrite(u, keep, repl);
}

}  // namespace dgnet
