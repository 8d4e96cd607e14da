#ifndef DGNET_OPTIMIZE_HPP
#define DGNET_OPTIMIZE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "dgnet/rdn.hpp"
#include "dgnet/weakform_ad.hpp"

namespace dgnet {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Per-parameter moment buffers; shapes mirror the parameter list.
class AdamState {
public:
    AdamState(const std::vector<ad::Tensor>& params, AdamConfig cfg = {});

    /// Bias-corrected update from the gradients currently stored in the
    /// parameter tensors; gradients are cleared afterwards. Throws on
    /// non-finite gradients.
    void step(std::vector<ad::Tensor>& params, double lr);

    std::size_t steps() const { return t_; }
    const AdamConfig& config() const { return cfg_; }

private:
    AdamConfig cfg_;
    std::size_t t_ = 0;
    std::vector<std::vector<double>> m_, v_;
};

struct SchedulerConfig {
    double factor = 0.5;
    std::size_t patience = 50;
    double min_lr = 1e-6;
};

/// Reduce-on-plateau learning-rate schedule; lr never increases.
struct SchedulerState {
    double lr = 1e-3;
    double best = std::numeric_limits<double>::infinity();
    std::size_t bad_epochs = 0;
    SchedulerConfig cfg;

    void update(double loss);
};

struct TrainConfig {
    double initial_lr = 1e-3;
    std::size_t epochs = 1000;       // budget per time step
    AdamConfig adam;
    SchedulerConfig scheduler;
    std::uint64_t seed = 0;
    double tolerance = 1e-8;         // early stop on the L1 loss
    double stage_weight_0 = 1.0;
    double stage_weight_1 = 1.0;
    // stop once the loss has not improved on its best by a relative margin
    // for `stall_patience` consecutive epochs (0 disables): the step has
    // reached its attainable floor and further epochs only spend budget
    std::size_t stall_patience = 150;
};

/// Mean |r| over residual entries, excluding rows tested against
/// Dirichlet-overwritten DOFs.
ad::Tensor l1_loss(const ad::Tensor& residual, const std::vector<bool>& dirichlet);

/// Producer of the nodal rate for one RK stage; the network route wraps
/// rdn_forward_tensor, the oracle route wraps oracle_rhs.
using StageRhs = std::function<ad::Tensor(const ad::Tensor& state, double t)>;

StageRhs network_stage_rhs(NetworkParams& params);
StageRhs oracle_stage_rhs(const ProblemSpec& prob, const Discretization& disc);

struct StageOutputs {
    ad::Tensor loss;
    ad::Tensor w0, w1;  // stage rates
    ad::Tensor v1;      // first-stage state
};

/// Two-stage SSP-RK residual loss: both stage residuals enter with the
/// configured weights.
StageOutputs step_loss(const ElementField& u_t, const StageRhs& rhs,
                       const ProblemSpec& prob, double t, double dt,
                       const Discretization& disc, const TrainConfig& cfg = {});

struct EpochRecord {
    std::size_t epoch;
    double loss;
    double lr;
};

struct TrainStepResult {
    ElementField u_next;
    std::vector<EpochRecord> history;
    double final_loss = 0.0;
    bool converged = false;
};

/// Per-time-step residual minimization (Adam + plateau scheduling), then
/// the SSP-RK2 update with the trained rates. Parameters are updated in
/// place and warm-start the next call.
TrainStepResult train_time_step(const ElementField& u_t, NetworkParams& params,
                                const ProblemSpec& prob, double t, double dt,
                                const Discretization& disc, const TrainConfig& cfg,
                                AdamState& adam, SchedulerState& sched);

}  // namespace dgnet

#endif
