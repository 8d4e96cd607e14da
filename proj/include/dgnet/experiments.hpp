#ifndef DGNET_EXPERIMENTS_HPP
#define DGNET_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "dgnet/optimize.hpp"
#include "dgnet/problem.hpp"

namespace dgnet {

/// A canonical benchmark: problem definition plus the solver settings.
struct ExperimentSpec {
    std::string name;
    ProblemSpec prob;
    double x_min = -2.0;
    double x_max = 2.0;
    std::size_t K = 128;
    std::size_t N_p = 2;
    std::size_t n_gauss = 2;
    double dt = 0.004;
    double T = 1.0;
    std::vector<double> snapshot_times;
    TrainConfig trainer;
    RDNConfig net;
    bool compare_oracle = true;

    Discretization discretize() const {
        return Discretization::make(x_min, x_max, K, N_p, n_gauss);
    }
};

/// Rate equation with a fixed jump at x = 0 (zero flux, split trig source).
ExperimentSpec static_discontinuity_problem();

/// Unit-speed advection of a Gaussian pulse.
ExperimentSpec advection_smooth_problem();

/// Unit-speed advection of a three-jump staircase.
ExperimentSpec advection_jump_problem();

/// Inviscid Burgers with -sin(pi x) data; shock forms at x = 0, t = 1/pi.
ExperimentSpec burgers_problem();

ExperimentSpec experiment_by_name(const std::string& name);
std::vector<std::string> experiment_names();

/// Characteristics solution of the Burgers benchmark (safeguarded Newton
/// on the characteristic origin, tolerance 1e-12; odd continuation and a
/// stationary shock at x = 0 after t = 1/pi).
double burgers_characteristics(double x, double t, Side side = Side::Interior);

/// First characteristic-crossing time for the -sin(pi x) datum.
double burgers_shock_time();

struct ErrorMetrics {
    double mse = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;    // root-mean-square error
    double linf = 0.0;
};

/// Node-wise metrics over all DOFs; the analytic reference is evaluated
/// with the matching one-sided limit at duplicated interface nodes.
ErrorMetrics error_metrics(const ElementField& numeric, const AnalyticFn& analytic,
                           const Mesh1D& mesh, const DofLayout& layout, double t);

}  // namespace dgnet

#endif
