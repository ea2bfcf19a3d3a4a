#pragma once

#include <complex>

namespace ddsense::kernels {

/**
 * Dirichlet kernel Dir(phi, Z) = sum_{z=0}^{Z-1} e^{j*2*pi*phi*z/Z}.
 *
 * Evaluated term by term; there is no closed-form branch, so the value at
 * removable singularities is whatever the finite sum gives (Z at integer
 * multiples of Z, ~0 at other integers).
 */
std::complex<double> dirichlet(double phi, int z_count);

/**
 * Index-weighted exponential sum
 *   sum_{i=i_lo}^{i_hi} (alpha + beta*i) * e^{j*2*pi*phi*i/Z}.
 *
 * Requires 0 <= i_lo and i_hi <= Z-1; an empty range (i_lo == i_hi + 1)
 * yields 0. This generalizes the inner sums of every channel builder and
 * derivative: dirichlet(phi, Z) == weighted_exp_sum(phi, Z, 0, Z-1, 1, 0).
 */
std::complex<double> weighted_exp_sum(double phi, int z_count, int i_lo, int i_hi, double alpha,
                                      double beta);

} // namespace ddsense::kernels
