#ifndef DGNET_AUTODIFF_HPP
#define DGNET_AUTODIFF_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace dgnet::ad {

/// One value array in the computation tape. Nodes form a DAG through
/// `parents`; `backprop` scatters this node's gradient into its parents.
struct Node {
    std::vector<double> val;
    std::vector<double> grad;  // sized lazily during backward
    std::vector<std::size_t> shape;
    bool requires_grad = false;
    std::vector<std::shared_ptr<Node>> parents;
    std::function<void()> backprop;

    std::size_t size() const { return val.size(); }
    void ensure_grad() {
        if (grad.size() != val.size()) grad.assign(val.size(), 0.0);
    }
};

/// Value-semantics handle to a tape node.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::shared_ptr<Node> n) : n_(std::move(n)) {}

    static Tensor constant(std::vector<double> values, std::vector<std::size_t> shape = {});
    static Tensor param(std::vector<double> values, std::vector<std::size_t> shape = {});
    static Tensor zeros(std::size_t n, bool requires_grad = false);

    bool valid() const { return static_cast<bool>(n_); }
    Node& node() const { return *n_; }
    std::shared_ptr<Node> ptr() const { return n_; }
    const std::vector<double>& values() const { return n_->val; }
    std::vector<double>& mutable_values() { return n_->val; }
    const std::vector<double>& grad() const { return n_->grad; }
    const std::vector<std::size_t>& shape() const { return n_->shape; }
    std::size_t size() const { return n_->size(); }
    double scalar() const;

private:
    std::shared_ptr<Node> n_;
};

// ---- elementwise ----
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double c);
/// a + c * b
Tensor add_scaled(const Tensor& a, const Tensor& b, double c);
Tensor relu(const Tensor& a);
Tensor abs(const Tensor& a);
Tensor maximum(const Tensor& a, const Tensor& b);

// ---- reductions ----
Tensor sum(const Tensor& a);
/// mean of |a_i| over entries where include[i] != 0
Tensor masked_mean_abs(const Tensor& a, const std::vector<double>& include);

// ---- structure ----
/// Channels-first concatenation of (c_i, n) tensors into (sum c_i, n).
Tensor concat_channels(const std::vector<Tensor>& parts);

/// Blockwise dense map: x is a flat array of len/in_block blocks; each
/// block of in_block entries is multiplied by the out_block x in_block
/// matrix M (plain, untracked weights).
Tensor block_linear(const Tensor& x, const std::vector<double>& M,
                    std::size_t in_block, std::size_t out_block);

/// out[i] = x[idx[i]] when idx[i] >= 0, else pad[i] (constant, no grad).
Tensor gather_pad(const Tensor& x, const std::vector<long>& idx,
                  const std::vector<double>& pad);

/// out[k*n_p + n] = right_w[n] * f[k+1] - left_w[n] * f[k], k = 0..K-1.
Tensor surface_scatter(const Tensor& f, const std::vector<double>& left_w,
                       const std::vector<double>& right_w, std::size_t K);

/// out = x where keep[i] != 0, else replacement[i]; gradient is masked.
Tensor overwrite(const Tensor& x, const std::vector<double>& keep,
                 const std::vector<double>& replacement);

// ---- neural-net layers ----
/// Same-padded 1-D cross-correlation: x (c_in, n), w (c_out, c_in, k) with
/// odd k, bias (c_out); output (c_out, n).
Tensor conv1d(const Tensor& x, const Tensor& w, const Tensor& bias);

/// Reverse-mode sweep from a scalar loss; accumulates into Node::grad of
/// every reachable node with requires_grad set (and intermediates).
/// Throws std::invalid_argument when loss is not scalar.
void backward(const Tensor& loss);

}  // namespace dgnet::ad

#endif
