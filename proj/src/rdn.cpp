#include "dgnet/rdn.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

namespace dgnet {

void RDNConfig::validate() const {
    if (blocks == 0 || layers == 0 || growth == 0 || features == 0)
        throw std::invalid_argument("RDNConfig: all counts must be positive");
    if (kernel_size % 2 == 0) throw std::invalid_argument("RDNConfig: kernel size must be odd");
}

std::size_t rdn_parameter_count(const RDNConfig& c) {
    const std::size_t f = c.features, g = c.growth, k = c.kernel_size;
    const std::size_t D = c.blocks, L = c.layers;
    std::size_t n = 0;
    n += f * 1 * k + f;      // shallow conv 1
    n += f * f * k + f;      // shallow conv 2
    // dense layers: sum over l of g*(f + l*g)*k + g, l = 0..L-1
    const std::size_t dense = L * (g * f * k + g) + g * g * k * (L * (L - 1) / 2);
    n += D * (dense + f * (f + L * g) + f);  // + 1x1 local fusion
    n += f * (D * f) + f;    // global 1x1 fusion
    n += f * f * k + f;      // global feature conv
    n += 1 * f * k + 1;      // output conv
    return n;
}

namespace {

ad::Tensor make_conv_weight(std::size_t c_out, std::size_t c_in, std::size_t k,
                            std::mt19937_64& rng, bool zero) {
    std::vector<double> w(c_out * c_in * k, 0.0);
    if (!zero) {
        const double bound = std::sqrt(1.0 / static_cast<double>(c_in * k));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (double& x : w) x = dist(rng);
    }
    return ad::Tensor::param(std::move(w), {c_out, c_in, k});
}

ad::Tensor make_bias(std::size_t c_out) {
    return ad::Tensor::param(std::vector<double>(c_out, 0.0), {c_out});
}

}  // namespace

NetworkParams::NetworkParams(const RDNConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
    cfg.validate();
    std::mt19937_64 rng(seed);
    const std::size_t f = cfg.features, g = cfg.growth, k = cfg.kernel_size;

    auto push = [&](const std::string& name, ad::Tensor t) {
        names_.push_back(name);
        tensors_.push_back(std::move(t));
    };

    push("sfe1.w", make_conv_weight(f, 1, k, rng, false));
    push("sfe1.b", make_bias(f));
    push("sfe2.w", make_conv_weight(f, f, k, rng, false));
    push("sfe2.b", make_bias(f));
    for (std::size_t d = 0; d < cfg.blocks; ++d) {
        for (std::size_t l = 0; l < cfg.layers; ++l) {
            const std::string base = "rdb" + std::to_string(d) + ".conv" + std::to_string(l);
            push(base + ".w", make_conv_weight(g, f + l * g, k, rng, false));
            push(base + ".b", make_bias(g));
        }
        const std::string base = "rdb" + std::to_string(d) + ".fuse";
        push(base + ".w", make_conv_weight(f, f + cfg.layers * g, 1, rng, false));
        push(base + ".b", make_bias(f));
    }
    push("gff.w", make_conv_weight(f, cfg.blocks * f, 1, rng, false));
    push("gff.b", make_bias(f));
    push("gfc.w", make_conv_weight(f, f, k, rng, false));
    push("gfc.b", make_bias(f));
    // zero-initialized output conv: the network starts from udot = 0
    push("out.w", make_conv_weight(1, f, k, rng, true));
    push("out.b", make_bias(1));

    if (parameter_count() != rdn_parameter_count(cfg))
        throw std::logic_error("NetworkParams: parameter count mismatch");
}

std::size_t NetworkParams::parameter_count() const {
    std::size_t n = 0;
    for (const auto& t : tensors_) n += t.size();
    return n;
}

ad::Tensor& NetworkParams::named(const std::string& name) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return tensors_[i];
    throw std::out_of_range("NetworkParams: no tensor named " + name);
}

ad::Tensor rdb_forward(const ad::Tensor& x, NetworkParams& params, std::size_t block) {
    const std::string prefix = "rdb" + std::to_string(block);
    std::vector<ad::Tensor> feats{x};
    for (std::size_t l = 0; l < params.config().layers; ++l) {
        const std::string base = prefix + ".conv" + std::to_string(l);
        ad::Tensor cat = feats.size() == 1 ? feats[0] : ad::concat_channels(feats);
        feats.push_back(ad::relu(ad::conv1d(cat, params.named(base + ".w"), params.named(base + ".b"))));
    }
    ad::Tensor fused = ad::conv1d(ad::concat_channels(feats), params.named(prefix + ".fuse.w"),
                                  params.named(prefix + ".fuse.b"));
    return ad::add(fused, x);
}

ad::Tensor rdn_forward_tensor(const ad::Tensor& x, NetworkParams& params) {
    if (x.shape().size() != 2 || x.shape()[0] != 1)
        throw std::invalid_argument("rdn_forward: expected a (1, n) input tensor");
    ad::Tensor s1 = ad::conv1d(x, params.named("sfe1.w"), params.named("sfe1.b"));
    ad::Tensor h = ad::conv1d(s1, params.named("sfe2.w"), params.named("sfe2.b"));
    std::vector<ad::Tensor> block_outs;
    for (std::size_t d = 0; d < params.config().blocks; ++d) {
        h = rdb_forward(h, params, d);
        block_outs.push_back(h);
    }
    ad::Tensor gff = ad::conv1d(ad::concat_channels(block_outs), params.named("gff.w"),
                                params.named("gff.b"));
    ad::Tensor gfc = ad::conv1d(gff, params.named("gfc.w"), params.named("gfc.b"));
    ad::Tensor merged = ad::add(gfc, s1);
    return ad::conv1d(merged, params.named("out.w"), params.named("out.b"));
}

ElementField rdn_forward(const ElementField& u, NetworkParams& params) {
    ad::Tensor x = ad::Tensor::constant(u.data, {1, u.data.size()});
    ad::Tensor y = rdn_forward_tensor(x, params);
    ElementField out(u.K, u.N_p, u.time);
    out.data = y.values();
    return out;
}

namespace {
constexpr char kMagic[8] = {'R', 'D', 'N', 'C', 'K', 'P', 'T', '1'};
}

void NetworkParams::save(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("NetworkParams::save: cannot open " + path);
    f.write(kMagic, sizeof(kMagic));
    const std::uint64_t hdr[5] = {cfg_.blocks, cfg_.layers, cfg_.growth, cfg_.features,
                                  cfg_.kernel_size};
    f.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    const std::uint64_t count = tensors_.size();
    f.write(reinterpret_cast<const char*>(&count), sizeof(count));
    for (std::size_t i = 0; i < tensors_.size(); ++i) {
        const std::uint64_t nlen = names_[i].size();
        f.write(reinterpret_cast<const char*>(&nlen), sizeof(nlen));
        f.write(names_[i].data(), static_cast<std::streamsize>(nlen));
        const auto& shape = tensors_[i].shape();
        const std::uint64_t rank = shape.size();
        f.write(reinterpret_cast<const char*>(&rank), sizeof(rank));
        for (std::size_t s : shape) {
            const std::uint64_t dim = s;
            f.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
        }
        const auto& vals = tensors_[i].values();
        f.write(reinterpret_cast<const char*>(vals.data()),
                static_cast<std::streamsize>(vals.size() * sizeof(double)));
    }
    if (!f) throw std::runtime_error("NetworkParams::save: write failed for " + path);
}

NetworkParams NetworkParams::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("NetworkParams::load: cannot open " + path);
    char magic[8];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("NetworkParams::load: bad checkpoint header");
    std::uint64_t hdr[5];
    f.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    NetworkParams p;
    p.cfg_ = RDNConfig{hdr[0], hdr[1], hdr[2], hdr[3], hdr[4]};
    std::uint64_t count = 0;
    f.read(reinterpret_cast<char*>(&count), sizeof(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t nlen = 0;
        f.read(reinterpret_cast<char*>(&nlen), sizeof(nlen));
        std::string name(nlen, '\0');
        f.read(name.data(), static_cast<std::streamsize>(nlen));
        std::uint64_t rank = 0;
        f.read(reinterpret_cast<char*>(&rank), sizeof(rank));
        std::vector<std::size_t> shape(rank);
        std::size_t total = 1;
        for (std::uint64_t r = 0; r < rank; ++r) {
            std::uint64_t dim = 0;
            f.read(reinterpret_cast<char*>(&dim), sizeof(dim));
            shape[r] = dim;
            total *= dim;
        }
        std::vector<double> vals(total);
        f.read(reinterpret_cast<char*>(vals.data()),
               static_cast<std::streamsize>(total * sizeof(double)));
        if (!f) throw std::runtime_error("NetworkParams::load: truncated checkpoint");
        p.names_.push_back(std::move(name));
        p.tensors_.push_back(ad::Tensor::param(std::move(vals), std::move(shape)));
    }
    return p;
}

}  // namespace dgnet
