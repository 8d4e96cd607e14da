#ifndef DGNET_FIELD_HPP
#define DGNET_FIELD_HPP

#include <cstddef>
#include <vector>

namespace dgnet {

/// K x N_p block of nodal solution values, stored row-major per element.
struct ElementField {
    std::size_t K = 0;
    std::size_t N_p = 0;
    double time = 0.0;
    std::vector<double> data;  // size K * N_p

    ElementField() = default;
    ElementField(std::size_t K_, std::size_t N_p_, double t = 0.0)
        : K(K_), N_p(N_p_), time(t), data(K_ * N_p_, 0.0) {}

    double& operator()(std::size_t k, std::size_t n) { return data[k * N_p + n]; }
    double operator()(std::size_t k, std::size_t n) const { return data[k * N_p + n]; }
    std::size_t size() const { return data.size(); }
    bool same_shape(const ElementField& o) const { return K == o.K && N_p == o.N_p; }
};

}  // namespace dgnet

#endif
