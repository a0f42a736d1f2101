#pragma once

#include <complex>

namespace hypwave {

// log Gamma(z) for complex z, principal branch (Lanczos g=7 with reflection).
std::complex<double> log_gamma(std::complex<double> z);

std::complex<double> gamma_fn(std::complex<double> z);

}  // namespace hypwave
