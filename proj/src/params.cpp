#include "phaseseed/params.hpp"

#include <cmath>
#include <string>

#include "phaseseed/errors.hpp"

namespace phaseseed {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("invalid laser parameter: ") + what);
}

}  // namespace

void LaserParams::validate() const {
    const double all[] = {tau_n, tau_p, g, eps, N0, beta, alpha, eta, V, Gamma, nu, kappa};
    for (const double v : all) require(std::isfinite(v), "non-finite value");
    require(tau_n > 0.0, "tau_n must be > 0");
    require(tau_p > 0.0, "tau_p must be > 0");
    require(g > 0.0, "g must be > 0");
    require(V > 0.0, "V must be > 0");
    require(nu > 0.0, "nu must be > 0");
    require(Gamma > 0.0 && Gamma <= 1.0, "Gamma must be in (0, 1]");
    require(beta >= 0.0 && beta <= 1.0, "beta must be in [0, 1]");
    require(eta > 0.0 && eta <= 1.0, "eta must be in (0, 1]");
    require(eps >= 0.0, "eps must be >= 0");
    require(N0 >= 0.0, "N0 must be >= 0");
    require(kappa >= 0.0, "kappa must be >= 0");
}

// cm^3 -> m^3 is 1e-6; cm^-3 -> m^-3 is 1e6.
LaserParams from_table_units(const TableUnits& t) {
    LaserParams p;
    p.tau_n = t.tau_n_ns * 1e-9;
    p.tau_p = t.tau_p_ps * 1e-12;
    p.g = t.g_1e6_cm3_per_s * 1e-6 * 1e-6;
    p.eps = t.eps_1e17_cm3 * 1e-17 * 1e-6;
    p.N0 = t.N0_1e18_per_cm3 * 1e18 * 1e6;
    p.beta = t.beta_1e5 * 1e-5;
    p.alpha = t.alpha;
    p.eta = t.eta;
    p.V = t.V_1e11_cm3 * 1e-11 * 1e-6;
    p.Gamma = t.Gamma;
    p.kappa = t.kappa_1e11_per_s * 1e11;
    p.nu = t.nu_THz * 1e12;
    return p;
}

TableUnits to_table_units(const LaserParams& p) {
    TableUnits t;
    t.tau_n_ns = p.tau_n / 1e-9;
    t.tau_p_ps = p.tau_p / 1e-12;
    t.g_1e6_cm3_per_s = p.g / 1e-12;
    t.eps_1e17_cm3 = p.eps / 1e-23;
    t.N0_1e18_per_cm3 = p.N0 / 1e24;
    t.beta_1e5 = p.beta / 1e-5;
    t.alpha = p.alpha;
    t.eta = p.eta;
    t.V_1e11_cm3 = p.V / 1e-17;
    t.Gamma = p.Gamma;
    t.kappa_1e11_per_s = p.kappa / 1e11;
    t.nu_THz = p.nu / 1e12;
    return t;
}

TableUnits reference_dfb_table() {
    TableUnits t;
    t.tau_n_ns = 0.74;
    t.tau_p_ps = 0.74;
    t.g_1e6_cm3_per_s = 1.27;
    t.eps_1e17_cm3 = 1.18;
    t.N0_1e18_per_cm3 = 0.85;
    t.beta_1e5 = 0.50;
    t.alpha = 2.7;
    t.eta = 0.20;
    t.V_1e11_cm3 = 1.72;
    t.Gamma = 0.27;
    t.kappa_1e11_per_s = 1.13;
    t.nu_THz = 193.4;
    return t;
}

LaserParams reference_dfb() { return from_table_units(reference_dfb_table()); }

double threshold_current(const LaserParams& p) {
    return constants::electron_charge * p.V * p.threshold_density() / p.tau_n;
}

double output_power(double S, const LaserParams& p) {
    return p.V * p.eta * constants::planck * p.nu * S / (2.0 * p.Gamma * p.tau_p);
}

}  // namespace phaseseed
