#ifndef DGNET_TIMESTEP_HPP
#define DGNET_TIMESTEP_HPP

#include <functional>
#include <vector>

#include "dgnet/weakform.hpp"

namespace dgnet {

using RhsFn = std::function<ElementField(const ElementField&, double t)>;

/// One SSP-RK2 step; Dirichlet post-processing is applied to the stage
/// state and the result. Throws on non-finite rhs output.
ElementField ssprk2_step(const RhsFn& rhs, const ElementField& u, double t, double dt,
                         const BCSpec& bc);

/// Method-of-lines rate: udot = M^{-1} b with b the negated non-mass terms
/// of the weak form, solved element-block by element-block.
ElementField oracle_rhs(const ElementField& u, const ProblemSpec& prob, double t,
                        const Discretization& disc);

struct OracleResult {
    std::vector<ElementField> snapshots;  // one per requested time, in order
    std::vector<double> snapshot_times;
    std::size_t steps_taken = 0;
};

/// Classical DG reference solver: repeated SSP-RK2 with oracle_rhs from the
/// projected initial condition. Snapshot times are hit exactly by shrinking
/// the final partial step. Aborts (throws std::runtime_error) if max|u|
/// exceeds 1e6.
OracleResult oracle_solve(const ProblemSpec& prob, const Discretization& disc,
                          double dt, double T, const std::vector<double>& snapshot_times);

/// Advisory CFL bound dt <= cfl * h / max|dFdu| estimated over the current
/// state; returns true when dt respects it.
bool cfl_ok(const ElementField& u, const ProblemSpec& prob, const Mesh1D& mesh,
            double dt, double cfl = 0.3);

}  // namespace dgnet

#endif
