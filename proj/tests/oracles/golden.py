"""Independent oracles for the frozen values in tests/golden_values.hpp.

Run: python3 tests/oracles/golden.py > tests/golden_values.hpp
Uses mpmath at 50 digits, scipy for chi-square quantiles and hashlib.
"""
import hashlib
import struct

import mpmath as mp
from scipy import stats

mp.mp.dps = 50
q = mp.mpf("1.602176634e-19")
h = mp.mpf("6.62607015e-34")

# Reference DFB in SI units.
tau_n = mp.mpf("0.74e-9")
tau_p = mp.mpf("0.74e-12")
g = mp.mpf("1.27e-6") * mp.mpf("1e-6")
eps = mp.mpf("1.18e-17") * mp.mpf("1e-6")
N0 = mp.mpf("0.85e18") * mp.mpf("1e6")
beta = mp.mpf("0.5e-5")
alpha = mp.mpf("2.7")
eta = mp.mpf("0.2")
V = mp.mpf("1.72e-11") * mp.mpf("1e-6")
Gamma = mp.mpf("0.27")
kappa = mp.mpf("1.13e11")
nu = mp.mpf("193.4e12")

N_th = N0 + 1 / (Gamma * g * tau_p)
I_th = q * V * N_th / tau_n


def rates(N, S, I):
    gain = g * (N - N0) / (1 + eps * S)
    dN = I / (q * V) - N / tau_n - gain * S
    dS = Gamma * gain * S - S / tau_p + Gamma * beta * N / tau_n
    dphi = alpha / 2 * (Gamma * g * (N - N0) - 1 / tau_p)
    return dN, dS, dphi


def steady(I):
    # Photon balance is linear in N; the carrier balance then fixes S.
    def N_of(S):
        sat = S / (1 + eps * S)
        return (S / tau_p + Gamma * g * N0 * sat) / (Gamma * g * sat + Gamma * beta / tau_n)

    def residual(x):
        S = mp.e ** x
        return rates(N_of(S), S, I)[0] * tau_n / N_th

    S0 = Gamma * tau_p * (I - I_th) / (q * V)
    S = mp.e ** mp.findroot(residual, (mp.log(S0 / 10), mp.log(S0 * 10)), solver="anderson")
    return N_of(S), S


N2, S2 = steady(2 * I_th)
omega2 = rates(N2, S2, 2 * I_th)[2]
N10, S10 = steady(10 * I_th)
omega10 = rates(N10, S10, 10 * I_th)[2]


def delta_I(dphi, t_m):
    return dphi * 2 * q * V / (t_m * Gamma * alpha * eps)


def power(S):
    return V * eta * h * nu * S / (2 * Gamma * tau_p)


# Noise-off Euler-Maruyama in plain doubles, from (N, S, phi) = (0, 1/V, 0)
# under a 2 I_th step, with the S >= 1/V and N >= 0 clamps.
def euler(steps, dt=1e-13):
    fq, fV = float(q), float(V)
    N, S, phi = 0.0, 1.0 / fV, 0.0
    I = float(2 * I_th)
    fg, fN0, feps, fG = float(g), float(N0), float(eps), float(Gamma)
    ftn, ftp, fb, fa = float(tau_n), float(tau_p), float(beta), float(alpha)
    for _ in range(steps):
        gain = fg * (N - fN0) / (1 + feps * S)
        dN = I / (fq * fV) - N / ftn - gain * S
        dS = fG * gain * S - S / ftp + fG * fb * N / ftn
        dphi = fa / 2 * (fG * fg * (N - fN0) - 1 / ftp)
        N, S, phi = N + dt * dN, S + dt * dS, phi + dt * dphi
        S = max(S, 1.0 / fV)
        N = max(N, 0.0)
    return N, S, phi


eN, eS, ephi = euler(5000)


def poisson(n, mu):
    return mp.e ** (-mu) * mu ** n / mp.factorial(n)


# Philox4x32-10, written from the Random123 description.
M0, M1, W0, W1 = 0xD2511F53, 0xCD9E8D57, 0x9E3779B9, 0xBB67AE85


def philox(ctr, key):
    c = list(ctr)
    k0, k1 = key
    for _ in range(10):
        p0 = M0 * c[0]
        p1 = M1 * c[2]
        c = [((p1 >> 32) ^ c[1] ^ k0) & 0xFFFFFFFF, p1 & 0xFFFFFFFF,
             ((p0 >> 32) ^ c[3] ^ k1) & 0xFFFFFFFF, p0 & 0xFFFFFFFF]
        k0 = (k0 + W0) & 0xFFFFFFFF
        k1 = (k1 + W1) & 0xFFFFFFFF
    return c


kat = [
    ([0, 0, 0, 0], [0, 0]),
    ([0xFFFFFFFF] * 4, [0xFFFFFFFF] * 2),
    ([0x243F6A88, 0x85A308D3, 0x13198A2E, 0x03707344], [0xA4093822, 0x299F31D0]),
]

wave = struct.pack("<5d", 1e-13, 0.0, 0.0, 1e-3, 2.5e-2)


def f(x):
    return mp.nstr(mp.mpf(x), 17, min_fixed=1, max_fixed=0) if x != 0 else "0.0"


print("#pragma once")
print("// Generated by tests/oracles/golden.py; do not edit by hand.")
print()
print("namespace golden {")
print()
print(f"inline constexpr double threshold_current = {f(I_th)};  // [A]")
print(f"inline constexpr double threshold_density = {f(N_th)};  // [1/m^3]")
print(f"inline constexpr double steady_N_2ith = {f(N2)};")
print(f"inline constexpr double steady_S_2ith = {f(S2)};")
print(f"inline constexpr double phase_rate_2ith = {f(omega2)};  // [rad/s]")
print(f"inline constexpr double phase_rate_10ith = {f(omega10)};  // [rad/s]")
print(f"inline constexpr double power_2ith = {f(power(S2))};  // [W]")
print(f"inline constexpr double delta_I_pi_250ps = {f(delta_I(mp.pi, mp.mpf('250e-12')))};  // [A]")
print(f"inline constexpr double delta_I_pi_200ps = {f(delta_I(mp.pi, mp.mpf('200e-12')))};  // [A]")
print(f"inline constexpr double locking_upper_r003 = {f(kappa * mp.sqrt(mp.mpf('0.03')))};")
print(f"inline constexpr double locking_lower_r003 = {f(-kappa * mp.sqrt(1 + alpha**2) * mp.sqrt(mp.mpf('0.03')))};")
print(f"inline constexpr double asymmetry = {f(mp.sqrt(1 + alpha**2))};")
print()
print("// Noise-off Euler from (0, 1/V, 0) after 5000 steps of 0.1 ps at 2 I_th.")
print(f"inline constexpr double euler_N = {eN!r};")
print(f"inline constexpr double euler_S = {eS!r};")
print(f"inline constexpr double euler_phi = {ephi!r};")
print()
print(f"inline constexpr double poisson_0_05 = {f(poisson(0, mp.mpf('0.5')))};")
print(f"inline constexpr double poisson_1_05 = {f(poisson(1, mp.mpf('0.5')))};")
print(f"inline constexpr double poisson_2_05 = {f(poisson(2, mp.mpf('0.5')))};")
print(f"inline constexpr double poisson_3_05 = {f(poisson(3, mp.mpf('0.5')))};")
print(f"inline constexpr double poisson_20_20 = {f(poisson(20, mp.mpf(20)))};")
print(f"inline constexpr double poisson_150_100 = {f(poisson(150, mp.mpf(100)))};")
print(f"inline constexpr double multiphoton_01 = {f(1 - mp.e**-mp.mpf('0.1') - mp.mpf('0.1') * mp.e**-mp.mpf('0.1'))};")
print(f"inline constexpr double multiphoton_1em4 = {f(1 - mp.e**-mp.mpf('1e-4') - mp.mpf('1e-4') * mp.e**-mp.mpf('1e-4'))};")
c3 = mp.e ** (-mp.mpf("0.25")) * mp.mpf("0.5") ** mp.mpf("1.5") / mp.sqrt(6)
print(f"inline constexpr double coherent_abs_3_05 = {f(c3)};  // |<3|alpha>|, mu = 0.5")
print()
print(f"inline constexpr double chi2_crit_15_001 = {f(stats.chi2.ppf(0.99, 15))};")
print(f"inline constexpr double chi2_crit_7_005 = {f(stats.chi2.ppf(0.95, 7))};")
print(f"inline constexpr double chi2_sf_20_15 = {f(stats.chi2.sf(20.0, 15))};")
print(f"inline constexpr double arcsine_cdf_01 = {f(2 / mp.pi * mp.asin(mp.sqrt(mp.mpf('0.1'))))};")
print(f"inline constexpr double arcsine_cdf_09 = {f(2 / mp.pi * mp.asin(mp.sqrt(mp.mpf('0.9'))))};")
print()
print("// Philox4x32-10 known answers: counter words, key words, output words.")
print("inline constexpr unsigned philox_kat[3][10] = {")
for ctr, key in kat:
    out = philox(ctr, key)
    words = ", ".join(f"0x{w:08x}u" for w in ctr + key + out)
    print(f"    {{{words}}},")
print("};")
print()
print(f'inline constexpr const char* sha256_abc = "{hashlib.sha256(b"abc").hexdigest()}";')
print("// dt = 1e-13, t0 = 0, samples {0, 1e-3, 2.5e-2}")
print(f'inline constexpr const char* waveform_hash_small = "{hashlib.sha256(wave).hexdigest()}";')
print()
print("}  // namespace golden")
