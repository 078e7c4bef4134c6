#include "phaseseed/photon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "phaseseed/errors.hpp"

namespace phaseseed {

namespace {

void check_mu(double mu) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("mean photon number must be finite and >= 0");
}

}  // namespace

QubitState qubit_state(double theta, double varphi) {
    if (!std::isfinite(theta) || !std::isfinite(varphi)) throw DomainError("qubit_state: angles must be finite");
    QubitState q{theta, varphi, {std::cos(theta / 2.0), 0.0}, std::polar(std::sin(theta / 2.0), varphi)};
    return q;
}

std::complex<double> overlap(const QubitState& a, const QubitState& b) {
    return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

double poisson_pmf(unsigned n, double mu) {
    check_mu(mu);
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    const double k = static_cast<double>(n);
    return std::exp(k * std::log(mu) - mu - std::lgamma(k + 1.0));
}

std::size_t default_truncation(double mu) {
    check_mu(mu);
    return std::max<std::size_t>(20, static_cast<std::size_t>(std::ceil(mu + 10.0 * std::sqrt(mu))));
}

double FockVector::norm2() const {
    double s = 0.0;
    for (const auto& c : amplitudes) s += std::norm(c);
    return s;
}

FockVector coherent_fock(double mu, double theta, std::size_t n_max) {
    check_mu(mu);
    FockVector v;
    v.amplitudes.resize(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double mag = std::sqrt(poisson_pmf(static_cast<unsigned>(n), mu));
        v.amplitudes[n] = std::polar(mag, theta * static_cast<double>(n));
    }
    return v;
}

std::complex<double> DensityMatrix::trace() const {
    std::complex<double> t{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) t += (*this)(i, i);
    return t;
}

double DensityMatrix::max_off_diagonal() const {
    double m = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if (r != c) m = std::max(m, std::abs((*this)(r, c)));
        }
    }
    return m;
}

double DensityMatrix::hermiticity_error() const {
    double m = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
    return m;
}

DensityMatrix phase_averaged_density_matrix(double mu, std::size_t n_max, std::size_t K) {
    check_mu(mu);
    if (K == 0) throw DomainError("phase average needs K >= 1");
    DensityMatrix rho;
    rho.dim = n_max + 1;
    rho.data.assign(rho.dim * rho.dim, {0.0, 0.0});
    std::vector<double> mag(rho.dim);
    for (std::size_t n = 0; n <= n_max; ++n) mag[n] = std::sqrt(poisson_pmf(static_cast<unsigned>(n), mu));
    // rho_nm = sqrt(P_n P_m) (1/K) sum_j e^{i 2 pi j (n - m) / K}; the phase
    // sum depends only on (n - m) mod K and is evaluated directly.
    const double w = 2.0 * std::numbers::pi / static_cast<double>(K);
    std::vector<std::complex<double>> phase_sum(K);
    for (std::size_t d = 0; d < K; ++d) {
        std::complex<double> s{0.0, 0.0};
        if (d == 0) {
            s = 1.0;
        } else {
            for (std::size_t j = 0; j < K; ++j) {
                const auto a = static_cast<double>((j * d) % K);
                s += std::polar(1.0, w * a);
            }
            s /= static_cast<double>(K);
        }
        phase_sum[d] = s;
    }
    for (std::size_t r = 0; r < rho.dim; ++r) {
        for (std::size_t c = 0; c < rho.dim; ++c) {
            const std::size_t d = r >= c ? (r - c) % K : (K - (c - r) % K) % K;
            rho(r, c) = mag[r] * mag[c] * phase_sum[d];
        }
    }
    return rho;
}

double attenuate(double mu, double loss_dB) {
    check_mu(mu);
    if (!(loss_dB >= 0.0) || !std::isfinite(loss_dB)) throw DomainError("attenuate: loss_dB must be >= 0");
    return mu * std::pow(10.0, -loss_dB / 10.0);
}

double multiphoton_probability(double mu) {
    check_mu(mu);
    // 1 - e^{-mu}(1 + mu) without cancellation for small mu.
    return -std::expm1(-mu) - mu * std::exp(-mu);
}

void write_density_matrix_csv(std::ostream& os, const DensityMatrix& rho) {
    os << "row,col,re,im\n";
    char buf[128];
    for (std::size_t r = 0; r < rho.dim; ++r) {
        for (std::size_t c = 0; c < rho.dim; ++c) {
            const auto v = rho(r, c);
            if (std::abs(v) <= 1e-15) continue;
            std::snprintf(buf, sizeof buf, "%zu,%zu,%.15e,%.15e\n", r, c, v.real(), v.imag());
            os << buf;
        }
    }
}

}  // namespace phaseseed
