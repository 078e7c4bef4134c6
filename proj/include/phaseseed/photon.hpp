#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace phaseseed {

/// cos(theta/2)|0> + e^{i varphi} sin(theta/2)|1>.
struct QubitState {
    double theta = 0.0;
    double varphi = 0.0;
    std::complex<double> c0;
    std::complex<double> c1;
};

QubitState qubit_state(double theta, double varphi);
/// <a|b>.
std::complex<double> overlap(const QubitState& a, const QubitState& b);

double poisson_pmf(unsigned n, double mu);

/// max(20, ceil(mu + 10 sqrt(mu))).
std::size_t default_truncation(double mu);

struct FockVector {
    std::vector<std::complex<double>> amplitudes;  ///< |0> .. |n_max>

    std::size_t n_max() const noexcept { return amplitudes.size() - 1; }
    double norm2() const;
    double tail() const { return 1.0 - norm2(); }
};

/// c_n = e^{-mu/2} (sqrt(mu) e^{i theta})^n / sqrt(n!).
FockVector coherent_fock(double mu, double theta, std::size_t n_max);

/// Row-major (n_max + 1)^2 complex matrix.
struct DensityMatrix {
    std::size_t dim = 0;
    std::vector<std::complex<double>> data;

    std::complex<double>& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
    const std::complex<double>& operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
    std::size_t n_max() const noexcept { return dim - 1; }
    std::complex<double> trace() const;
    double tail() const { return 1.0 - trace().real(); }
    double max_off_diagonal() const;
    double hermiticity_error() const;
};

/// Average of |alpha><alpha| over K equally spaced phases 2 pi j / K.
DensityMatrix phase_averaged_density_matrix(double mu, std::size_t n_max, std::size_t K);

/// mu 10^(-loss_dB / 10).
double attenuate(double mu, double loss_dB);

/// 1 - P(0) - P(1).
double multiphoton_probability(double mu);

/// row,col,re,im for entries with magnitude above 1e-15.
void write_density_matrix_csv(std::ostream& os, const DensityMatrix& rho);

}  // namespace phaseseed
