#include "dgnet/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace dgnet::ad {

namespace {

std::shared_ptr<Node> make_node(std::vector<double> val, std::vector<std::size_t> shape,
                                std::vector<std::shared_ptr<Node>> parents) {
    auto n = std::make_shared<Node>();
    n->val = std::move(val);
    n->shape = std::move(shape);
    n->parents = std::move(parents);
    for (const auto& p : n->parents)
        if (p->requires_grad) n->requires_grad = true;
    return n;
}

void check_same_size(const Tensor& a, const Tensor& b, const char* op) {
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(op) + ": size mismatch");
}

}  // namespace

Tensor Tensor::constant(std::vector<double> values, std::vector<std::size_t> shape) {
    if (shape.empty()) shape = {values.size()};
    return Tensor(make_node(std::move(values), std::move(shape), {}));
}

Tensor Tensor::param(std::vector<double> values, std::vector<std::size_t> shape) {
    if (shape.empty()) shape = {values.size()};
    auto n = make_node(std::move(values), std::move(shape), {});
    n->requires_grad = true;
    return Tensor(n);
}

Tensor Tensor::zeros(std::size_t n, bool requires_grad) {
    auto t = requires_grad ? param(std::vector<double>(n, 0.0))
                           : constant(std::vector<double>(n, 0.0));
    return t;
}

double Tensor::scalar() const {
    if (size() != 1) throw std::invalid_argument("Tensor::scalar: not a scalar");
    return n_->val[0];
}

Tensor add(const Tensor& a, const Tensor& b) {
    check_same_size(a, b, "add");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] + b.values()[i];
    auto n = make_node(std::move(v), a.shape(), {a.ptr(), b.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    Node* pb = b.ptr().get();
    n->backprop = [self, pa, pb] {
        pa->ensure_grad();
        pb->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i) {
            pa->grad[i] += self->grad[i];
            pb->grad[i] += self->grad[i];
        }
    };
    return Tensor(n);
}

Tensor sub(const Tensor& a, const Tensor& b) {
    check_same_size(a, b, "sub");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] - b.values()[i];
    auto n = make_node(std::move(v), a.shape(), {a.ptr(), b.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    Node* pb = b.ptr().get();
    n->backprop = [self, pa, pb] {
        pa->ensure_grad();
        pb->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i) {
            pa->grad[i] += self->grad[i];
            pb->grad[i] -= self->grad[i];
        }
    };
    return Tensor(n);
}

Tensor mul(const Tensor& a, const Tensor& b) {
    check_same_size(a, b, "mul");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * b.values()[i];
    auto n = make_node(std::move(v), a.shape(), {a.ptr(), b.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    Node* pb = b.ptr().get();
    n->backprop = [self, pa, pb] {
        pa->ensure_grad();
        pb->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i) {
            pa->grad[i] += pb->val[i] * self->grad[i];
            pb->grad[i] += pa->val[i] * self->grad[i];
        }
    };
    return Tensor(n);
}

Tensor scale(const Tensor& a, double c) {
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a.values()[i];
    auto n = make_node(std::move(v), a.shape(), {a.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    n->backprop = [self, pa, c] {
        pa->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i) pa->grad[i] += c * self->grad[i];
    };
    return Tensor(n);
}

Tensor add_scaled(const Tensor& a, const Tensor& b, double c) {
    check_same_size(a, b, "add_scaled");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] + c * b.values()[i];
    auto n = make_node(std::move(v), a.shape(), {a.ptr(), b.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    Node* pb = b.ptr().get();
    n->backprop = [self, pa, pb, c] {
        pa->ensure_grad();
        pb->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i) {
            pa->grad[i] += self->grad[i];
            pb->grad[i] += c * self->grad[i];
        }
    };
    return Tensor(n);
}

Tensor relu(const Tensor& a) {
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(0.0, a.values()[i]);
    auto n = make_node(std::move(v), a.shape(), {a.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    n->backprop = [self, pa] {
        pa->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i)
            if (pa->val[i] > 0.0) pa->grad[i] += self->grad[i];
    };
    return Tensor(n);
}

Tensor abs(const Tensor& a) {
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(a.values()[i]);
    auto n = make_node(std::move(v), a.shape(), {a.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    n->backprop = [self, pa] {
        pa->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i) {
            const double x = pa->val[i];
            if (x > 0.0)
                pa->grad[i] += self->grad[i];
            else if (x < 0.0)
                pa->grad[i] -= self->grad[i];
        }
    };
    return Tensor(n);
}

Tensor maximum(const Tensor& a, const Tensor& b) {
    check_same_size(a, b, "maximum");
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(a.values()[i], b.values()[i]);
    auto n = make_node(std::move(v), a.shape(), {a.ptr(), b.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    Node* pb = b.ptr().get();
    n->backprop = [self, pa, pb] {
        pa->ensure_grad();
        pb->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i) {
            // ties route to the first argument
            if (pa->val[i] >= pb->val[i])
                pa->grad[i] += self->grad[i];
            else
                pb->grad[i] += self->grad[i];
        }
    };
    return Tensor(n);
}

Tensor sum(const Tensor& a) {
    double s = 0.0;
    for (double x : a.values()) s += x;
    auto n = make_node({s}, {1}, {a.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    n->backprop = [self, pa] {
        pa->ensure_grad();
        for (std::size_t i = 0; i < pa->size(); ++i) pa->grad[i] += self->grad[0];
    };
    return Tensor(n);
}

Tensor masked_mean_abs(const Tensor& a, const std::vector<double>& include) {
    if (include.size() != a.size())
        throw std::invalid_argument("masked_mean_abs: mask size mismatch");
    double count = 0.0, s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (include[i] != 0.0) {
            s += std::abs(a.values()[i]);
            count += 1.0;
        }
    }
    if (count == 0.0) throw std::invalid_argument("masked_mean_abs: empty mask");
    auto n = make_node({s / count}, {1}, {a.ptr()});
    Node* self = n.get();
    Node* pa = a.ptr().get();
    n->backprop = [self, pa, include, count] {
        pa->ensure_grad();
        const double g = self->grad[0] / count;
        for (std::size_t i = 0; i < pa->size(); ++i) {
            if (include[i] == 0.0) continue;
            const double x = pa->val[i];
            if (x > 0.0)
                pa->grad[i] += g;
            else if (x < 0.0)
                pa->grad[i] -= g;
        }
    };
    return Tensor(n);
}

Tensor concat_channels(const std::vector<Tensor>& parts) {
    if (parts.empty()) throw std::invalid_argument("concat_channels: no inputs");
    const std::size_t n_len = parts[0].shape().size() == 2 ? parts[0].shape()[1] : parts[0].size();
    std::size_t c_total = 0;
    for (const auto& p : parts) {
        if (p.shape().size() != 2 || p.shape()[1] != n_len)
            throw std::invalid_argument("concat_channels: incompatible shapes");
        c_total += p.shape()[0];
    }
    std::vector<double> v;
    v.reserve(c_total * n_len);
    std::vector<std::shared_ptr<Node>> parents;
    for (const auto& p : parts) {
        v.insert(v.end(), p.values().begin(), p.values().end());
        parents.push_back(p.ptr());
    }
    auto n = make_node(std::move(v), {c_total, n_len}, std::move(parents));
    Node* self = n.get();
    std::vector<Node*> raw;
    for (const auto& p : parts) raw.push_back(p.ptr().get());
    n->backprop = [self, raw] {
        std::size_t off = 0;
        for (Node* p : raw) {
            p->ensure_grad();
            for (std::size_t i = 0; i < p->size(); ++i) p->grad[i] += self->grad[off + i];
            off += p->size();
        }
    };
    return Tensor(n);
}

Tensor block_linear(const Tensor& x, const std::vector<double>& M,
                    std::size_t in_block, std::size_t out_block) {
    if (x.size() % in_block != 0)
        throw std::invalid_argument("block_linear: length not a multiple of the block size");
    if (M.size() != in_block * out_block)
        throw std::invalid_argument("block_linear: matrix size mismatch");
    const std::size_t nblocks = x.size() / in_block;
    std::vector<double> v(nblocks * out_block);
    for (std::size_t k = 0; k < nblocks; ++k) {
        const double* xin = x.values().data() + k * in_block;
        for (std::size_t r = 0; r < out_block; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < in_block; ++c) acc += M[r * in_block + c] * xin[c];
            v[k * out_block + r] = acc;
        }
    }
    auto n = make_node(std::move(v), {nblocks * out_block}, {x.ptr()});
    Node* self = n.get();
    Node* px = x.ptr().get();
    n->backprop = [self, px, M, in_block, out_block] {
        px->ensure_grad();
        const std::size_t nblocks = px->size() / in_block;
        for (std::size_t k = 0; k < nblocks; ++k) {
            const double* g = self->grad.data() + k * out_block;
            double* gx = px->grad.data() + k * in_block;
            for (std::size_t r = 0; r < out_block; ++r)
                for (std::size_t c = 0; c < in_block; ++c)
                    gx[c] += M[r * in_block + c] * g[r];
        }
    };
    return Tensor(n);
}

Tensor gather_pad(const Tensor& x, const std::vector<long>& idx,
                  const std::vector<double>& pad) {
    if (pad.size() != idx.size())
        throw std::invalid_argument("gather_pad: pad size mismatch");
    std::vector<double> v(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= 0) {
            if (static_cast<std::size_t>(idx[i]) >= x.size())
                throw std::out_of_range("gather_pad: index out of range");
            v[i] = x.values()[static_cast<std::size_t>(idx[i])];
        } else {
            v[i] = pad[i];
        }
    }
    auto n = make_node(std::move(v), {idx.size()}, {x.ptr()});
    Node* self = n.get();
    Node* px = x.ptr().get();
    n->backprop = [self, px, idx] {
        px->ensure_grad();
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (idx[i] >= 0) px->grad[static_cast<std::size_t>(idx[i])] += self->grad[i];
    };
    return Tensor(n);
}

Tensor surface_scatter(const Tensor& f, const std::vector<double>& left_w,
                       const std::vector<double>& right_w, std::size_t K) {
    if (f.size() != K + 1) throw std::invalid_argument("surface_scatter: need K+1 interface values");
    if (left_w.size() != right_w.size())
        throw std::invalid_argument("surface_scatter: weight size mismatch");
    const std::size_t Np = left_w.size();
    std::vector<double> v(K * Np);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t n = 0; n < Np; ++n)
            v[k * Np + n] = right_w[n] * f.values()[k + 1] - left_w[n] * f.values()[k];
    auto nd = make_node(std::move(v), {K * Np}, {f.ptr()});
    Node* self = nd.get();
    Node* pf = f.ptr().get();
    nd->backprop = [self, pf, left_w, right_w, K] {
        pf->ensure_grad();
        const std::size_t Np = left_w.size();
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t n = 0; n < Np; ++n) {
                const double g = self->grad[k * Np + n];
                pf->grad[k + 1] += right_w[n] * g;
                pf->grad[k] -= left_w[n] * g;
            }
    };
    return Tensor(nd);
}

Tensor overwrite(const Tensor& x, const std::vector<double>& keep,
                 const std::vector<double>& replacement) {
    if (keep.size() != x.size() || replacement.size() != x.size())
        throw std::invalid_argument("overwrite: size mismatch");
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = keep[i] != 0.0 ? x.values()[i] : replacement[i];
    auto n = make_node(std::move(v), x.shape(), {x.ptr()});
    Node* self = n.get();
    Node* px = x.ptr().get();
    n->backprop = [self, px, keep] {
        px->ensure_grad();
        for (std::size_t i = 0; i < self->size(); ++i)
            if (keep[i] != 0.0) px->grad[i] += self->grad[i];
    };
    return Tensor(n);
}

Tensor conv1d(const Tensor& x, const Tensor& w, const Tensor& bias) {
    const auto& xs = x.shape();
    const auto& ws = w.shape();
    if (xs.size() != 2 || ws.size() != 3)
        throw std::invalid_argument("conv1d: expected x (c_in, n) and w (c_out, c_in, k)");
    const std::size_t c_in = xs[0], n_len = xs[1];
    const std::size_t c_out = ws[0], k = ws[2];
    if (ws[1] != c_in) throw std::invalid_argument("conv1d: channel mismatch");
    if (k % 2 == 0) throw std::invalid_argument("conv1d: kernel size must be odd");
    if (bias.size() != c_out) throw std::invalid_argument("conv1d: bias size mismatch");
    const long pad = static_cast<long>(k / 2);

    std::vector<double> out(c_out * n_len);
    const double* xv = x.values().data();
    const double* wv = w.values().data();
    for (std::size_t co = 0; co < c_out; ++co) {
        double* orow = out.data() + co * n_len;
        const double b = bias.values()[co];
        for (std::size_t i = 0; i < n_len; ++i) orow[i] = b;
        for (std::size_t ci = 0; ci < c_in; ++ci) {
            const double* xrow = xv + ci * n_len;
            const double* wrow = wv + (co * c_in + ci) * k;
            for (std::size_t t = 0; t < k; ++t) {
                const double wt = wrow[t];
                if (wt == 0.0) continue;
                const long shift = static_cast<long>(t) - pad;
                const std::size_t lo = shift < 0 ? static_cast<std::size_t>(-shift) : 0;
                const std::size_t hi =
                    shift > 0 ? n_len - static_cast<std::size_t>(shift) : n_len;
                const double* src = xrow + shift;
                for (std::size_t i = lo; i < hi; ++i) orow[i] += wt * src[i];
            }
        }
    }

    auto n = make_node(std::move(out), {c_out, n_len}, {x.ptr(), w.ptr(), bias.ptr()});
    Node* self = n.get();
    Node* px = x.ptr().get();
    Node* pw = w.ptr().get();
    Node* pb = bias.ptr().get();
    n->backprop = [self, px, pw, pb, c_in, c_out, n_len, k, pad] {
        px->ensure_grad();
        pw->ensure_grad();
        pb->ensure_grad();
        const double* g = self->grad.data();
        const double* xv = px->val.data();
        const double* wv = pw->val.data();
        for (std::size_t co = 0; co < c_out; ++co) {
            const double* grow = g + co * n_len;
            double acc = 0.0;
            for (std::size_t i = 0; i < n_len; ++i) acc += grow[i];
            pb->grad[co] += acc;
            for (std::size_t ci = 0; ci < c_in; ++ci) {
                const double* xrow = xv + ci * n_len;
                const double* wrow = wv + (co * c_in + ci) * k;
                double* gxrow = px->grad.data() + ci * n_len;
                double* gwrow = pw->grad.data() + (co * c_in + ci) * k;
                for (std::size_t t = 0; t < k; ++t) {
                    const long shift = static_cast<long>(t) - pad;
                    const std::size_t lo = shift < 0 ? static_cast<std::size_t>(-shift) : 0;
                    const std::size_t hi =
                        shift > 0 ? n_len - static_cast<std::size_t>(shift) : n_len;
                    // dL/dw[t] = sum_i g[i] * x[i + shift]; four independent
                    // accumulators so the reduction vectorizes without
                    // reassociating the final sum
                    const double* src = xrow + shift;
                    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
                    std::size_t i = lo;
                    for (; i + 4 <= hi; i += 4) {
                        a0 += grow[i] * src[i];
                        a1 += grow[i + 1] * src[i + 1];
                        a2 += grow[i + 2] * src[i + 2];
                        a3 += grow[i + 3] * src[i + 3];
                    }
                    double wacc = (a0 + a1) + (a2 + a3);
                    for (; i < hi; ++i) wacc += grow[i] * src[i];
                    gwrow[t] += wacc;
                    // dL/dx[i + shift] += w[t] * g[i]
                    const double wt = wrow[t];
                    if (wt != 0.0) {
                        double* dst = gxrow + shift;
                        for (std::size_t i = lo; i < hi; ++i) dst[i] += wt * grow[i];
                    }
                }
            }
        }
    };
    return Tensor(n);
}

void backward(const Tensor& loss) {
    if (loss.size() != 1) throw std::invalid_argument("backward: loss must be scalar");
    // iterative post-order topological sort
    std::vector<Node*> order;
    std::unordered_set<Node*> visited;
    std::vector<std::pair<Node*, std::size_t>> stack;
    stack.emplace_back(&loss.node(), 0);
    visited.insert(&loss.node());
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < node->parents.size()) {
            Node* p = node->parents[next++].get();
            if (visited.insert(p).second) stack.emplace_back(p, 0);
        } else {
            order.push_back(node);
            stack.pop_back();
        }
    }
    loss.node().ensure_grad();
    loss.node().grad[0] = 1.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Node* n = *it;
        if (n->backprop && n->requires_grad && !n->grad.empty()) n->backprop();
    }
}

}  // namespace dgnet::ad
