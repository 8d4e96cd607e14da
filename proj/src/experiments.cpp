#include "dgnet/experiments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dgnet {

namespace {

constexpr double kPi = std::numbers::pi;

double split_trig_source(double x, Side side) {
    // right branch owns x = 0 unless the left limit is requested
    const bool left = x < 0.0 || (x == 0.0 && side == Side::Left);
    return left ? std::sin(6.0 * x) : std::cos(12.0 * x);
}

double split_trig_initial(double x, Side side) {
    const bool left = x < 0.0 || (x == 0.0 && side == Side::Left);
    return left ? 0.2 * std::sin(6.0 * x) : 0.5 * std::cos(12.0 * x);
}

double staircase(double xs, Side side) {
    // plateaus 0.25 | 0 | -0.25 | -0.5 with breaks at -1.5, -0.5, 0.5;
    // a break coordinate belongs to the left plateau unless the right
    // limit is requested
    static constexpr double breaks[3] = {-1.5, -0.5, 0.5};
    static constexpr double vals[4] = {0.25, 0.0, -0.25, -0.5};
    std::size_t idx = 0;
    for (double b : breaks) {
        if (xs > b || (xs == b && side == Side::Right)) ++idx;
    }
    return vals[idx];
}

}  // namespace

double burgers_shock_time() { return 1.0 / kPi; }

namespace {

/// Solves phi(s) = s - t*sin(pi*s) - x = 0 for the characteristic origin s
/// within [lo, hi]; safeguarded Newton with bisection fallback.
double solve_characteristic_origin(double x, double t, double lo, double hi) {
    auto phi = [&](double s) { return s - t * std::sin(kPi * s) - x; };
    auto dphi = [&](double s) { return 1.0 - kPi * t * std::cos(kPi * s); };
    double flo = phi(lo);
    double fhi = phi(hi);
    if (flo > 0.0 && fhi > 0.0) return lo;
    if (flo < 0.0 && fhi < 0.0) return hi;
    if (flo > 0.0) std::swap(lo, hi);
    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = phi(s);
        if (std::abs(f) < 1e-14) return s;
        if (f < 0.0)
            lo = s;
        else
            hi = s;
        const double d = dphi(s);
        double next = d != 0.0 ? s - f / d : 0.5 * (lo + hi);
        // fall back to bisection when Newton leaves the bracket
        if (!((next > std::min(lo, hi)) && (next < std::max(lo, hi))))
            next = 0.5 * (lo + hi);
        if (std::abs(next - s) < 1e-15) return next;
        s = next;
    }
    return s;
}

}  // namespace

double burgers_characteristics(double x, double t, Side side) {
    if (t < 0.0) throw std::invalid_argument("burgers_characteristics: t must be >= 0");
    if (t == 0.0) return -std::sin(kPi * x);
    if (t < burgers_shock_time()) {
        // the origin map is monotone before characteristics cross
        const double s = solve_characteristic_origin(x, t, -1.0, 1.0);
        return -std::sin(kPi * s);
    }
    // stationary shock at x = 0; resolve each side by odd symmetry
    if (x == 0.0) {
        if (side == Side::Interior) return 0.0;
        const double lo = std::acos(std::min(1.0, 1.0 / (kPi * t))) / kPi;
        const double s = solve_characteristic_origin(0.0, t, std::max(lo, 1e-12), 1.0);
        const double u_right = -std::sin(kPi * s);
        return side == Side::Right ? u_right : -u_right;
    }
    const double ax = std::abs(x);
    const double lo = std::acos(std::min(1.0, 1.0 / (kPi * t))) / kPi;
    const double s = solve_characteristic_origin(ax, t, std::max(lo, 1e-12), 1.0);
    const double u = -std::sin(kPi * s);
    return x > 0.0 ? u : -u;
}

// Shared trainer tuning for the full-size benchmark networks. A slow
// plateau schedule (patience 200) keeps the learning rate high long enough
// to fit localized residual rows (domain edges, interface jumps) that a
// fast anneal leaves frozen at large error; the per-step convergence
// tolerance sits just above the measured loss floor of each problem so that
// warm-started steps exit in a handful of epochs instead of burning the
// full budget on sub-floor noise.
static void tune_trainer(TrainConfig& cfg, double tolerance) {
    cfg.scheduler.patience = 200;
    // keep the stall window longer than the scheduler patience so a
    // learning-rate cut gets a chance before the step gives up
    cfg.stall_patience = 250;
    cfg.tolerance = tolerance;
}

ExperimentSpec static_discontinuity_problem() {
    ExperimentSpec e;
    e.name = "static-discontinuity";
    e.x_min = -2.0;
    e.x_max = 2.0;
    e.T = 1.0;
    e.snapshot_times = {0.1, 0.5, 1.0};
    e.prob.flux = zero_flux();
    e.prob.source = [](double, double x, double) { return split_trig_source(x, Side::Interior); };
    e.prob.u0 = [](double x, Side side) { return split_trig_initial(x, side); };
    e.prob.bc = {BoundaryCondition::outflow(), BoundaryCondition::outflow()};
    e.prob.analytic = [](double x, double t, Side side) {
        const bool left = x < 0.0 || (x == 0.0 && side == Side::Left);
        return left ? (0.2 + t) * std::sin(6.0 * x) : (0.5 + t) * std::cos(12.0 * x);
    };
    tune_trainer(e.trainer, 1e-4);
    return e;
}

ExperimentSpec advection_smooth_problem() {
    ExperimentSpec e;
    e.name = "advection-smooth";
    e.x_min = -2.0;
    e.x_max = 2.0;
    e.T = 1.5;
    e.snapshot_times = {0.25, 0.75, 1.25};
    e.prob.flux = advection_flux(1.0);
    e.prob.u0 = plain_initial([](double x) { return std::exp(-5.0 * x * x); });
    e.prob.bc = {BoundaryCondition::dirichlet([](double) { return 0.0; }),
                 BoundaryCondition::outflow()};
    e.prob.analytic = [](double x, double t, Side) {
        const double s = x - t;
        return std::exp(-5.0 * s * s);
    };
    tune_trainer(e.trainer, 1e-4);
    return e;
}

ExperimentSpec advection_jump_problem() {
    ExperimentSpec e;
    e.name = "advection-jump";
    e.x_min = -2.0;
    e.x_max = 2.0;
    e.T = 1.5;
    e.snapshot_times = {0.25, 0.75, 1.25};
    e.prob.flux = advection_flux(1.0);
    e.prob.u0 = [](double x, Side side) { return staircase(x, side); };
    e.prob.bc = {BoundaryCondition::dirichlet([](double) { return 0.25; }),
                 BoundaryCondition::outflow()};
    e.prob.analytic = [](double x, double t, Side side) { return staircase(x - t, side); };
    tune_trainer(e.trainer, 1e-4);
    return e;
}

ExperimentSpec burgers_problem() {
    ExperimentSpec e;
    e.name = "burgers";
    e.x_min = -1.0;
    e.x_max = 1.0;
    e.T = 0.8;
    e.snapshot_times = {0.2, 0.5, 0.8};
    e.prob.flux = burgers_flux();
    e.prob.u0 = plain_initial([](double x) { return -std::sin(kPi * x); });
    e.prob.bc = {BoundaryCondition::dirichlet([](double) { return 0.0; }),
                 BoundaryCondition::dirichlet([](double) { return 0.0; })};
    e.prob.analytic = [](double x, double t, Side side) {
        return burgers_characteristics(x, t, side);
    };
    // the nonlinear flux leaves a larger quadrature-limited loss floor
    tune_trainer(e.trainer, 1e-3);
    return e;
}

std::vector<std::string> experiment_names() {
    return {"static-discontinuity", "advection-smooth", "advection-jump", "burgers"};
}

ExperimentSpec experiment_by_name(const std::string& name) {
    if (name == "static-discontinuity") return static_discontinuity_problem();
    if (name == "advection-smooth") return advection_smooth_problem();
    if (name == "advection-jump") return advection_jump_problem();
    if (name == "burgers") return burgers_problem();
    throw std::invalid_argument("unknown experiment: " + name);
}

ErrorMetrics error_metrics(const ElementField& numeric, const AnalyticFn& analytic,
                           const Mesh1D& mesh, const DofLayout& layout, double t) {
    ErrorMetrics m;
    const std::size_t N = numeric.size();
    for (std::size_t k = 0; k < numeric.K; ++k) {
        for (std::size_t n = 0; n < numeric.N_p; ++n) {
            const double x = layout.node_coords[k * mesh.N_p + n];
            Side side = Side::Interior;
            if (n == 0) side = Side::Right;
            if (n == numeric.N_p - 1) side = Side::Left;
            const double e = numeric(k, n) - analytic(x, t, side);
            m.mse += e * e;
            m.l1 += std::abs(e);
            m.linf = std::max(m.linf, std::abs(e));
        }
    }
    m.mse /= static_cast<double>(N);
    m.l1 /= static_cast<double>(N);
    m.l2 = std::sqrt(m.mse);
    return m;
}

}  // namespace dgnet
