#include "ddsense/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddsense::kernels {

std::complex<double> dirichlet(double phi, int z_count) {
    if (z_count < 1) throw std::invalid_argument("dirichlet: Z >= 1 required");
    const double step = 2.0 * std::numbers::pi * phi / z_count;
    std::complex<double> acc{0.0, 0.0};
    for (int z = 0; z < z_count; ++z) acc += std::polar(1.0, step * z);
    return acc;
}

std::complex<double> weighted_exp_sum(double phi, int z_count, int i_lo, int i_hi, double alpha,
                                      double beta) {
    if (z_count < 1) throw std::invalid_argument("weighted_exp_sum: Z >= 1 required");
    if (i_lo < 0 || i_hi > z_count - 1 || i_lo > i_hi + 1)
        throw std::invalid_argument("weighted_exp_sum: need 0 <= i_lo <= i_hi+1 and i_hi <= Z-1");
    const double step = 2.0 * std::numbers::pi * phi / z_count;
    std::complex<double> acc{0.0, 0.0};
    for (int i = i_lo; i <= i_hi; ++i) acc += (alpha + beta * i) * std::polar(1.0, step * i);
    return acc;
}

} // namespace ddsense::kernels
