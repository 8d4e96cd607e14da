#include "dgnet/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgnet {

namespace {

void check_finite(const ElementField& f, const char* what) {
    for (double v : f.data)
        if (!std::isfinite(v)) throw std::runtime_error(std::string("ssprk2_step: non-finite ") + what);
}

/// In-place LU solve of a dense N x N system (no pivoting; the mass matrix
/// is SPD and tiny).
void solve_dense(std::vector<double> A, std::size_t N, double* b) {
    for (std::size_t i = 0; i < N; ++i) {
        const double piv = A[i * N + i];
        if (piv == 0.0) throw std::runtime_error("oracle_rhs: singular mass matrix");
        for (std::size_t r = i + 1; r < N; ++r) {
            const double f = A[r * N + i] / piv;
            for (std::size_t c = i; c < N; ++c) A[r * N + c] -= f * A[i * N + c];
            b[r] -= f * b[i];
        }
    }
    for (std::size_t i = N; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < N; ++c) s -= A[i * N + c] * b[c];
        b[i] = s / A[i * N + i];
    }
}

}  // namespace

ElementField ssprk2_step(const RhsFn& rhs, const ElementField& u, double t, double dt,
                         const BCSpec& bc) {
    if (!(dt > 0.0)) throw std::invalid_argument("ssprk2_step: dt must be positive");
    const ElementField k0 = rhs(u, t);
    check_finite(k0, "stage-1 rate");

    ElementField v1 = u;
    for (std::size_t i = 0; i < v1.data.size(); ++i) v1.data[i] += dt * k0.data[i];
    v1.time = t + dt;
    apply_dirichlet_in_place(v1, bc, t + dt);

    const ElementField k1 = rhs(v1, t + dt);
    check_finite(k1, "stage-2 rate");

    ElementField out = u;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] += 0.5 * dt * (k0.data[i] + k1.data[i]);
    out.time = t + dt;
    apply_dirichlet_in_place(out, bc, t + dt);
    return out;
}

ElementField oracle_rhs(const ElementField& u, const ProblemSpec& prob, double t,
                        const Discretization& disc) {
    if (u.K != disc.mesh.K || u.N_p != disc.mesh.N_p)
        throw std::invalid_argument("oracle_rhs: shape mismatch");
    // b = -(non-mass terms) = residual with udot = 0, negated
    const ElementField zero(u.K, u.N_p, t);
    ElementField b = assemble_residual(u, zero, prob, t, disc);
    for (double& v : b.data) v = -v;

    const std::vector<double> M = element_mass_matrix(disc.mesh.h, disc.basis);
    ElementField udot(u.K, u.N_p, t);
    for (std::size_t k = 0; k < u.K; ++k) {
        for (std::size_t n = 0; n < u.N_p; ++n) udot(k, n) = b(k, n);
        solve_dense(M, u.N_p, &udot.data[k * u.N_p]);
    }
    return udot;
}

bool cfl_ok(const ElementField& u, const ProblemSpec& prob, const Mesh1D& mesh,
            double dt, double cfl) {
    double smax = 0.0;
    for (double v : u.data) smax = std::max(smax, std::abs(prob.flux->speed(v)));
    if (smax == 0.0) return true;
    return dt <= cfl * mesh.h / smax;
}

OracleResult oracle_solve(const ProblemSpec& prob, const Discretization& disc,
                          double dt, double T, const std::vector<double>& snapshot_times) {
    if (!(dt > 0.0)) throw std::invalid_argument("oracle_solve: dt must be positive");
    ElementField u = project_initial_condition(prob.u0, disc.mesh, disc.layout, disc.basis);
    apply_dirichlet_in_place(u, prob.bc, 0.0);

    std::vector<double> marks = snapshot_times;
    marks.push_back(T);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    const RhsFn rhs = [&](const ElementField& s, double tt) {
        return oracle_rhs(s, prob, tt, disc);
    };

    OracleResult result;
    double t = 0.0;
    const double eps = 1e-12 * std::max(1.0, T);
    for (double mark : marks) {
        if (mark > T + eps) break;
        while (t < mark - eps) {
            const double step = std::min(dt, mark - t);
            u = ssprk2_step(rhs, u, t, step, prob.bc);
            t += step;
            ++result.steps_taken;
            double umax = 0.0;
            for (double v : u.data) umax = std::max(umax, std::abs(v));
            if (umax > 1e6) throw std::runtime_error("oracle_solve: blow-up detected");
        }
        for (double want : snapshot_times) {
            if (std::abs(want - mark) <= eps) {
                ElementField snap = u;
                snap.time = mark;
                result.snapshots.push_back(std::move(snap));
                result.snapshot_times.push_back(mark);
            }
        }
    }
    return result;
}

}  // namespace dgnet
