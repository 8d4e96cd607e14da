#include "dgnet/flux.hpp"

#include <algorithm>

namespace dgnet {

namespace {

class ZeroFlux final : public FluxModel {
public:
    double value(double) const override { return 0.0; }
    double speed(double) const override { return 0.0; }
    Kind kind() const override { return Kind::Zero; }
    std::string name() const override { return "zero"; }
};

class AdvectionFlux final : public FluxModel {
public:
    explicit AdvectionFlux(double v) : v_(v) {}
    double value(double u) const override { return v_ * u; }
    double speed(double) const override { return v_; }
    Kind kind() const override { return Kind::Advection; }
    std::string name() const override { return "advection"; }
    double param() const override { return v_; }

private:
    double v_;
};

class BurgersFlux final : public FluxModel {
public:
    double value(double u) const override { return 0.5 * u * u; }
    double speed(double u) const override { return u; }
    Kind kind() const override { return Kind::Burgers; }
    std::string name() const override { return "burgers"; }
};

}  // namespace

FluxPtr zero_flux() { return std::make_shared<ZeroFlux>(); }
FluxPtr advection_flux(double v) { return std::make_shared<AdvectionFlux>(v); }
FluxPtr burgers_flux() { return std::make_shared<BurgersFlux>(); }

double lf_flux_value(const FluxModel& model, double u_minus, double u_plus) {
    const double C = std::max(std::abs(model.speed(u_minus)), std::abs(model.speed(u_plus)));
    return lf_flux_value_global(model, u_minus, u_plus, C);
}

double lf_flux_value_global(const FluxModel& model, double u_minus, double u_plus, double C) {
    return 0.5 * (model.value(u_minus) + model.value(u_plus)) - 0.5 * C * (u_plus - u_minus);
}

double lax_friedrichs(const FluxModel& model, const InterfaceState& s) {
    // jump penalty carries no normal factor, so the same interface seen
    // from both sides yields opposite contributions (conservative form)
    const double C = std::max(std::abs(model.speed(s.u_minus)), std::abs(model.speed(s.u_plus)));
    return s.n * 0.5 * (model.value(s.u_minus) + model.value(s.u_plus)) +
           0.5 * C * (s.u_minus - s.u_plus);
}

}  // namespace dgnet
