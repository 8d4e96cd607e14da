#include "dgnet/optimize.hpp"

#include <cmath>
#include <stdexcept>

#include "dgnet/timestep.hpp"

namespace dgnet {

AdamState::AdamState(const std::vector<ad::Tensor>& params, AdamConfig cfg) : cfg_(cfg) {
    m_.reserve(params.size());
    v_.reserve(params.size());
    for (const auto& p : params) {
        m_.emplace_back(p.size(), 0.0);
        v_.emplace_back(p.size(), 0.0);
    }
}

void AdamState::step(std::vector<ad::Tensor>& params, double lr) {
    if (params.size() != m_.size())
        throw std::invalid_argument("AdamState::step: parameter list changed");
    ++t_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        auto& node = params[i].node();
        node.ensure_grad();
        auto& m = m_[i];
        auto& v = v_[i];
        auto& val = node.val;
        auto& g = node.grad;
        for (std::size_t j = 0; j < val.size(); ++j) {
            if (!std::isfinite(g[j]))
                throw std::runtime_error("AdamState::step: non-finite gradient");
            m[j] = cfg_.beta1 * m[j] + (1.0 - cfg_.beta1) * g[j];
            v[j] = cfg_.beta2 * v[j] + (1.0 - cfg_.beta2) * g[j] * g[j];
            const double mhat = m[j] / bc1;
            const double vhat = v[j] / bc2;
            val[j] -= lr * mhat / (std::sqrt(vhat) + cfg_.epsilon);
        }
        std::fill(g.begin(), g.end(), 0.0);
    }
}

void SchedulerState::update(double loss) {
    if (loss < best) {
        best = loss;
        bad_epochs = 0;
        return;
    }
    ++bad_epochs;
    if (bad_epochs > cfg.patience) {
        lr = std::max(lr * cfg.factor, cfg.min_lr);
        bad_epochs = 0;
    }
}

ad::Tensor l1_loss(const ad::Tensor& residual, const std::vector<bool>& dirichlet) {
    std::vector<double> include(residual.size(), 1.0);
    for (std::size_t i = 0; i < dirichlet.size() && i < include.size(); ++i)
        if (dirichlet[i]) include[i] = 0.0;
    return ad::masked_mean_abs(residual, include);
}

StageRhs network_stage_rhs(NetworkParams& params) {
    return [&params](const ad::Tensor& state, double) {
        if (state.shape().size() == 2 && state.shape()[0] == 1)
            return rdn_forward_tensor(state, params);
        // flat states get a 1-channel view via an identity node
        ad::Tensor chan = ad::scale(state, 1.0);
        chan.node().shape = {1, state.size()};
        return rdn_forward_tensor(chan, params);
    };
}

StageRhs oracle_stage_rhs(const ProblemSpec& prob, const Discretization& disc) {
    return [&prob, &disc](const ad::Tensor& state, double t) {
        ElementField u(disc.mesh.K, disc.mesh.N_p, t);
        u.data = state.values();
        const ElementField rate = oracle_rhs(u, prob, t, disc);
        return ad::Tensor::constant(rate.data);
    };
}

StageOutputs step_loss(const ElementField& u_t, const StageRhs& rhs,
                       const ProblemSpec& prob, double t, double dt,
                       const Discretization& disc, const TrainConfig& cfg) {
    if (u_t.K != disc.mesh.K || u_t.N_p != disc.mesh.N_p)
        throw std::invalid_argument("step_loss: shape mismatch");
    const std::vector<bool> mask = dirichlet_mask(disc.mesh, prob.bc);

    ad::Tensor u0 = ad::Tensor::constant(u_t.data);
    ad::Tensor w0 = rhs(u0, t);
    if (w0.shape().size() == 2) w0.node().shape = {w0.size()};
    ad::Tensor v1 = apply_dirichlet_tensor(ad::add_scaled(u0, w0, dt), prob.bc, t + dt,
                                           disc.mesh);
    ad::Tensor w1 = rhs(v1, t + dt);
    if (w1.shape().size() == 2) w1.node().shape = {w1.size()};

    ad::Tensor r0 = assemble_residual_tensor(u0, w0, prob, t, disc);
    ad::Tensor r1 = assemble_residual_tensor(v1, w1, prob, t + dt, disc);
    ad::Tensor loss = ad::add(ad::scale(l1_loss(r0, mask), cfg.stage_weight_0),
                              ad::scale(l1_loss(r1, mask), cfg.stage_weight_1));
    return {loss, w0, w1, v1};
}

TrainStepResult train_time_step(const ElementField& u_t, NetworkParams& params,
                                const ProblemSpec& prob, double t, double dt,
                                const Discretization& disc, const TrainConfig& cfg,
                                AdamState& adam, SchedulerState& sched) {
    // minimum relative improvement for an epoch to count as progress
    constexpr double kStallImprovement = 5e-3;
    const StageRhs rhs = network_stage_rhs(params);
    TrainStepResult result;
    // plateau detection is per minimization problem: the attainable loss
    // floor moves with u_t, so each time step starts with a fresh best while
    // keeping the warm learning rate
    sched.best = std::numeric_limits<double>::infinity();
    sched.bad_epochs = 0;
    double best_seen = std::numeric_limits<double>::infinity();
    std::size_t stalled = 0;
    double loss_value = 0.0;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        StageOutputs out = step_loss(u_t, rhs, prob, t, dt, disc, cfg);
        loss_value = out.loss.scalar();
        if (!std::isfinite(loss_value))
            throw std::runtime_error("train_time_step: non-finite loss");
        result.history.push_back({epoch, loss_value, sched.lr});
        if (loss_value < cfg.tolerance) {
            result.converged = true;
            break;
        }
        ad::backward(out.loss);
        adam.step(params.tensors(), sched.lr);
        sched.update(loss_value);
        // give up on the step once the loss has sat at its floor for a
        // while: no relative improvement over the best for stall_patience
        // epochs means the remaining budget only reshuffles sub-floor noise
        if (loss_value < best_seen * (1.0 - kStallImprovement)) {
            best_seen = loss_value;
            stalled = 0;
        } else if (cfg.stall_patience > 0) {
            if (++stalled >= cfg.stall_patience) break;  // converged as far as it will
        }
    }
    result.final_loss = loss_value;
    if (loss_value < cfg.tolerance) result.converged = true;

    // final SSP-RK2 update with the trained parameters
    StageOutputs out = step_loss(u_t, rhs, prob, t, dt, disc, cfg);
    result.final_loss = out.loss.scalar();
    ElementField next(u_t.K, u_t.N_p, t + dt);
    for (std::size_t i = 0; i < next.data.size(); ++i)
        next.data[i] = u_t.data[i] + 0.5 * dt * (out.w0.values()[i] + out.w1.values()[i]);
    apply_dirichlet_in_place(next, prob.bc, t + dt);
    result.u_next = std::move(next);
    return result;
}

}  // namespace dgnet
