#pragma once

#include <numbers>

namespace phaseseed {

namespace constants {
inline constexpr double electron_charge = 1.602176634e-19;  // C
inline constexpr double planck = 6.62607015e-34;            // J s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

/// Rate-equation parameters of a single-mode diode laser, in SI units.
///
/// Densities are per m^3, lifetimes in s.  `nu` is the emission frequency
/// entering the photon energy h*nu of the output-power relation; `kappa` is
/// the injection coupling rate used when this laser is the injected one.
struct LaserParams {
    double tau_n = 0.0;   ///< carrier lifetime [s]
    double tau_p = 0.0;   ///< photon lifetime [s]
    double g = 0.0;       ///< differential gain [m^3/s]
    double eps = 0.0;     ///< gain compression [m^3]
    double N0 = 0.0;      ///< transparency carrier density [1/m^3]
    double beta = 0.0;    ///< spontaneous-emission coupling fraction
    double alpha = 0.0;   ///< linewidth enhancement factor
    double eta = 0.0;     ///< differential quantum efficiency
    double V = 0.0;       ///< active volume [m^3]
    double Gamma = 0.0;   ///< confinement factor
    double nu = 0.0;      ///< optical frequency [Hz]
    double kappa = 0.0;   ///< injection coupling rate [1/s]

    /// Throws DomainError naming the first violated invariant.
    void validate() const;

    /// Carrier density at which modal gain balances cavity loss.
    double threshold_density() const noexcept { return N0 + 1.0 / (Gamma * g * tau_p); }

    /// One photon in the active volume.
    double photon_floor() const noexcept { return 1.0 / V; }

    bool operator==(const LaserParams&) const = default;
};

/// The same parameters expressed in the customary laboratory units
/// (ns, ps, cm^3 with the usual powers of ten factored out).
struct TableUnits {
    double tau_n_ns = 0.0;
    double tau_p_ps = 0.0;
    double g_1e6_cm3_per_s = 0.0;     ///< g in units of 1e-6 cm^3/s
    double eps_1e17_cm3 = 0.0;        ///< eps in units of 1e-17 cm^3
    double N0_1e18_per_cm3 = 0.0;     ///< N0 in units of 1e18 cm^-3
    double beta_1e5 = 0.0;            ///< beta in units of 1e-5
    double alpha = 0.0;
    double eta = 0.0;
    double V_1e11_cm3 = 0.0;          ///< V in units of 1e-11 cm^3
    double Gamma = 0.0;
    double kappa_1e11_per_s = 0.0;    ///< kappa in units of 1e11 1/s
    double nu_THz = 0.0;

    bool operator==(const TableUnits&) const = default;
};

LaserParams from_table_units(const TableUnits& t);
TableUnits to_table_units(const LaserParams& p);

/// The DFB parameter set used throughout the examples and recipes
/// (1550 nm band, nu = 193.4 THz).
TableUnits reference_dfb_table();
LaserParams reference_dfb();

/// Approximate lasing threshold I_th = q V N_th / tau_n (eps and beta neglected).
/// Intended for drive design only.
double threshold_current(const LaserParams& p);

/// Output power for photon density S: P = V eta h nu S / (2 Gamma tau_p).
double output_power(double S, const LaserParams& p);

}  // namespace phaseseed
