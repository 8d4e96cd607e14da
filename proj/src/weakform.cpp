#include "dgnet/weakform.hpp"

#include <cmath>
#include <stdexcept>

namespace dgnet {

Discretization Discretization::make(double x_min, double x_max, std::size_t K,
                                    std::size_t N_p, std::size_t n_gauss) {
    auto [mesh, layout] = build_mesh(x_min, x_max, K, N_p);
    Discretization d;
    d.mesh = std::move(mesh);
    d.layout = std::move(layout);
    d.basis = lagrange_basis(N_p, gauss_rule(n_gauss));
    d.kernels = make_kernels(d.basis);
    return d;
}

InterfaceFluxes interface_fluxes(const ElementField& u, const ProblemSpec& prob,
                                 double t) {
    prob.bc.validate();
    const std::size_t K = u.K;
    const std::size_t Np = u.N_p;
    InterfaceFluxes f;
    f.u_left.resize(K + 1);
    f.u_right.resize(K + 1);
    f.fhat.resize(K + 1);

    for (std::size_t i = 1; i < K; ++i) {
        f.u_left[i] = u(i - 1, Np - 1);
        f.u_right[i] = u(i, 0);
    }
    // boundary exterior traces
    const double uin_l = u(0, 0);
    const double uin_r = u(K - 1, Np - 1);
    switch (prob.bc.left.kind) {
        case BCKind::Dirichlet: f.u_left[0] = prob.bc.left.value(t); break;
        case BCKind::Periodic: f.u_left[0] = uin_r; break;
        default: f.u_left[0] = uin_l; break;  // outflow / Neumann / none
    }
    f.u_right[0] = uin_l;
    switch (prob.bc.right.kind) {
        case BCKind::Dirichlet: f.u_right[K] = prob.bc.right.value(t); break;
        case BCKind::Periodic: f.u_right[K] = uin_l; break;
        default: f.u_right[K] = uin_r; break;
    }
    f.u_left[K] = uin_r;

    for (std::size_t i = 0; i <= K; ++i)
        f.fhat[i] = lf_flux_value(*prob.flux, f.u_left[i], f.u_right[i]);
    // prescribed-flux boundaries override the LF value
    if (prob.bc.left.kind == BCKind::Neumann) f.fhat[0] = prob.bc.left.value(t);
    if (prob.bc.right.kind == BCKind::Neumann) f.fhat[K] = prob.bc.right.value(t);
    return f;
}

ElementField assemble_residual(const ElementField& u, const ElementField& udot,
                               const ProblemSpec& prob, double t,
                               const Discretization& disc) {
    if (!u.same_shape(udot) || u.K != disc.mesh.K || u.N_p != disc.mesh.N_p)
        throw std::invalid_argument("assemble_residual: shape mismatch");
    for (double v : u.data)
        if (!std::isfinite(v)) throw std::invalid_argument("assemble_residual: non-finite state");
    for (double v : udot.data)
        if (!std::isfinite(v)) throw std::invalid_argument("assemble_residual: non-finite rate");

    const auto& basis = disc.basis;
    const auto& rule = basis.rule;
    const std::size_t K = u.K, Np = u.N_p, nq = rule.size();
    const double h = disc.mesh.h;
    const double jac = 0.5 * h;

    const InterfaceFluxes fl = interface_fluxes(u, prob, t);

    ElementField R(K, Np, t);
    std::vector<double> uq(nq), udotq(nq), gq(nq);
    for (std::size_t k = 0; k < K; ++k) {
        const double xa = disc.mesh.element_bounds[k].first;
        for (std::size_t q = 0; q < nq; ++q) {
            double a = 0.0, b = 0.0;
            for (std::size_t n = 0; n < Np; ++n) {
                a += basis.value(q, n) * u(k, n);
                b += basis.value(q, n) * udot(k, n);
            }
            uq[q] = a;
            udotq[q] = b;
            if (prob.source) {
                const double xq = xa + jac * (rule.points[q] + 1.0);
                gq[q] = prob.source(a, xq, t);
            } else {
                gq[q] = 0.0;
            }
        }
        for (std::size_t n = 0; n < Np; ++n) {
            double mass = 0.0, vol = 0.0, src = 0.0;
            for (std::size_t q = 0; q < nq; ++q) {
                const double w = rule.weights[q];
                mass += w * udotq[q] * basis.value(q, n);
                // reference-derivative weights: the h/2 Jacobian cancels
                // against the 2/h of d/dx
                vol += w * prob.flux->value(uq[q]) * basis.deriv(q, n);
                src += w * gq[q] * basis.value(q, n);
            }
            const double surf =
                fl.fhat[k + 1] * basis.right_values[n] - fl.fhat[k] * basis.left_values[n];
            R(k, n) = jac * mass - vol + surf - jac * src;
        }
    }
    return R;
}

void apply_dirichlet_in_place(ElementField& u, const BCSpec& bc, double t) {
    if (bc.left.kind == BCKind::Dirichlet) u(0, 0) = bc.left.value(t);
    if (bc.right.kind == BCKind::Dirichlet) u(u.K - 1, u.N_p - 1) = bc.right.value(t);
}

ElementField apply_dirichlet(const ElementField& u, const BCSpec& bc, double t) {
    ElementField out = u;
    apply_dirichlet_in_place(out, bc, t);
    return out;
}

std::vector<bool> dirichlet_mask(const Mesh1D& mesh, const BCSpec& bc) {
    std::vector<bool> mask(mesh.num_dofs(), false);
    if (bc.left.kind == BCKind::Dirichlet) mask[0] = true;
    if (bc.right.kind == BCKind::Dirichlet) mask[mesh.num_dofs() - 1] = true;
    return mask;
}

std::vector<double> element_mass_matrix(double h, const BasisTable& basis) {
    if (!(h > 0.0)) throw std::invalid_argument("element_mass_matrix: h must be positive");
    const std::size_t Np = basis.N_p, nq = basis.rule.size();
    std::vector<double> M(Np * Np, 0.0);
    for (std::size_t i = 0; i < Np; ++i)
        for (std::size_t j = 0; j < Np; ++j) {
            double s = 0.0;
            for (std::size_t q = 0; q < nq; ++q)
                s += basis.rule.weights[q] * basis.value(q, i) * basis.value(q, j);
            M[i * Np + j] = 0.5 * h * s;
        }
    return M;
}

double total_mass(const ElementField& u, const Mesh1D& mesh, const BasisTable& basis) {
    const std::size_t nq = basis.rule.size();
    double total = 0.0;
    for (std::size_t k = 0; k < u.K; ++k) {
        double elem = 0.0;
        for (std::size_t q = 0; q < nq; ++q) {
            double uq = 0.0;
            for (std::size_t n = 0; n < u.N_p; ++n) uq += basis.value(q, n) * u(k, n);
            elem += basis.rule.weights[q] * uq;
        }
        total += 0.5 * mesh.h * elem;
    }
    return total;
}

double total_variation(const ElementField& u) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < u.data.size(); ++i)
        tv += std::abs(u.data[i + 1] - u.data[i]);
    return tv;
}

double total_variation_of_means(const ElementField& u, const BasisTable& basis) {
    const std::size_t nq = basis.rule.size();
    std::vector<double> means(u.K);
    for (std::size_t k = 0; k < u.K; ++k) {
        double elem = 0.0;
        for (std::size_t q = 0; q < nq; ++q) {
            double uq = 0.0;
            for (std::size_t n = 0; n < u.N_p; ++n) uq += basis.value(q, n) * u(k, n);
            elem += basis.rule.weights[q] * uq;
        }
        means[k] = 0.5 * elem;  // divided by reference length 2
    }
    double tv = 0.0;
    for (std::size_t k = 0; k + 1 < u.K; ++k) tv += std::abs(means[k + 1] - means[k]);
    return tv;
}

}  // namespace dgnet
