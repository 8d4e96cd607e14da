#ifndef DGNET_FLUX_HPP
#define DGNET_FLUX_HPP

#include <cmath>
#include <memory>
#include <string>

namespace dgnet {

/// Scalar flux model F(u) with exact wave speed dF/du.
/// Implementations are closed-form so the same model can be evaluated on
/// autodiff tensors (see weakform_ad) without finite differencing.
class FluxModel {
public:
    enum class Kind { Zero, Advection, Burgers };

    virtual ~FluxModel() = default;
    virtual double value(double u) const = 0;
    virtual double speed(double u) const = 0;
    virtual Kind kind() const = 0;
    virtual std::string name() const = 0;
    /// model parameter (advection velocity); unused otherwise
    virtual double param() const { return 0.0; }
};

using FluxPtr = std::shared_ptr<const FluxModel>;

/// One-sided traces at an interface seen from an element with outward
/// normal n in {-1, +1}.
struct InterfaceState {
    double u_minus = 0.0;  // interior trace
    double u_plus = 0.0;   // exterior trace
    double n = 1.0;
};

FluxPtr zero_flux();
FluxPtr advection_flux(double v);
FluxPtr burgers_flux();

/// Oriented local Lax-Friedrichs value F_hat(u_minus, u_plus) with
/// C = max(|dFdu(u-)|, |dFdu(u+)|); global variant takes a fixed C.
double lf_flux_value(const FluxModel& model, double u_minus, double u_plus);
double lf_flux_value_global(const FluxModel& model, double u_minus, double u_plus, double C);

/// Numerical flux contracted with the outward normal: n * F_hat.
double lax_friedrichs(const FluxModel& model, const InterfaceState& s);

}  // namespace dgnet

#endif
