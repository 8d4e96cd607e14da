#ifndef DGNET_PROBLEM_HPP
#define DGNET_PROBLEM_HPP

#include <functional>
#include <optional>
#include <stdexcept>

#include "dgnet/basis.hpp"
#include "dgnet/flux.hpp"

namespace dgnet {

enum class BCKind { None, Dirichlet, Neumann, Periodic, Outflow };

/// Boundary treatment at one domain end.
struct BoundaryCondition {
    BCKind kind = BCKind::Outflow;
    // Dirichlet: prescribed trace value g(t); Neumann: prescribed flux q(t)
    std::function<double(double t)> value;

    static BoundaryCondition dirichlet(std::function<double(double)> g) {
        return {BCKind::Dirichlet, std::move(g)};
    }
    static BoundaryCondition neumann(std::function<double(double)> q) {
        return {BCKind::Neumann, std::move(q)};
    }
    static BoundaryCondition periodic() { return {BCKind::Periodic, {}}; }
    static BoundaryCondition outflow() { return {BCKind::Outflow, {}}; }
};

struct BCSpec {
    BoundaryCondition left;
    BoundaryCondition right;

    void validate() const {
        const bool lp = left.kind == BCKind::Periodic;
        const bool rp = right.kind == BCKind::Periodic;
        if (lp != rp)
            throw std::invalid_argument("BCSpec: periodic must be specified at both ends");
    }
    bool periodic() const { return left.kind == BCKind::Periodic; }
};

/// Source term G(u, x, t). All bundled experiments have u-independent
/// sources; the autodiff residual route relies on that (see weakform_ad).
using SourceFn = std::function<double(double u, double x, double t)>;

/// Exact solution u(x, t) with one-sided evaluation at discontinuities.
using AnalyticFn = std::function<double(double x, double t, Side side)>;

struct ProblemSpec {
    FluxPtr flux;
    SourceFn source;  // may be null (no source)
    InitialFn u0;
    BCSpec bc;
    std::optional<AnalyticFn> analytic;
};

}  // namespace dgnet

#endif
