#ifndef DGNET_RDN_HPP
#define DGNET_RDN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dgnet/autodiff.hpp"
#include "dgnet/field.hpp"

namespace dgnet {

struct RDNConfig {
    std::size_t blocks = 4;        // residual dense blocks
    std::size_t layers = 8;        // conv layers per block
    std::size_t growth = 32;       // channels added per dense layer
    std::size_t features = 32;     // base channel count
    std::size_t kernel_size = 3;   // odd
    void validate() const;
};

/// All trainable tensors of the residual dense network, in a fixed order.
class NetworkParams {
public:
    NetworkParams() = default;
    NetworkParams(const RDNConfig& cfg, std::uint64_t seed);

    const RDNConfig& config() const { return cfg_; }
    std::vector<ad::Tensor>& tensors() { return tensors_; }
    const std::vector<ad::Tensor>& tensors() const { return tensors_; }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t parameter_count() const;

    ad::Tensor& named(const std::string& name);

    void save(const std::string& path) const;
    static NetworkParams load(const std::string& path);

private:
    RDNConfig cfg_;
    std::vector<ad::Tensor> tensors_;
    std::vector<std::string> names_;
};

/// Closed-form trainable-parameter count for a config.
std::size_t rdn_parameter_count(const RDNConfig& cfg);

/// One residual dense block: L dense conv+ReLU layers, 1x1 local fusion,
/// local residual. `block` indexes into the parameter set.
ad::Tensor rdb_forward(const ad::Tensor& x, NetworkParams& params, std::size_t block);

/// Full network on a (1, n) tensor; output is (1, n).
ad::Tensor rdn_forward_tensor(const ad::Tensor& x, NetworkParams& params);

/// Field-level forward: the flattened nodal state in, the predicted nodal
/// time derivative out.
ElementField rdn_forward(const ElementField& u, NetworkParams& params);

}  // namespace dgnet

#endif
