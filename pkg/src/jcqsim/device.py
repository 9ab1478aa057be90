"""Two-qubit Josephson charge-qubit device model.

Maps the physical controls (gate voltages, threading fluxes, shared
inductance) onto the effective qubit Hamiltonian

    H = eps1*sz(1) + eps2*sz(2) - ej1*sx(1) - ej2*sx(2) + j12*sx(1)sx(2)

and builds its equilibrium (Gibbs) states.  All energies are stored in
kelvin (E / k_B), so beta = 1/T with T in kelvin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmath
from .errors import InvalidParameterError, UnsupportedRegimeError


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants; fixed, never user-modified."""

    e: float = 1.602176634e-19        # elementary charge, C
    k_b: float = 1.380649e-23         # Boltzmann constant, J/K
    phi_0: float = 2.067833848e-15    # flux quantum h/2e, Wb


CONSTANTS = PhysicalConstants()

# Eigenvalues within this relative distance of the minimum belong to the
# ground eigenspace when taking the T -> 0 limit.
GROUND_DEGENERACY_RTOL = 1e-10


@dataclass(frozen=True)
class DeviceParams:
    """Physical controls and fabrication constants.

    l       shared inductance, H
    c       gate capacitance, F
    c_j0    junction capacitance, F
    e_j0    single-SQUID Josephson energy, K (energy / k_B)
    n       Cooper-pair number offset (integer)
    v_x1/2  gate voltages, V
    phi_e   external flux through the inductance, units of phi_0
    phi_x1/2  local SQUID fluxes, units of phi_0
    xi      intrabit proportionality constant (dimensionless)
    """

    l: float = 30e-9
    c: float = 1e-6
    c_j0: float = 1e-5
    e_j0: float = 0.02
    n: int = 0
    v_x1: float = 20e-6
    v_x2: float = 20e-6
    phi_e: float = 0.5
    phi_x1: float = 0.0
    phi_x2: float = 0.0
    xi: float = 1.0

    def __post_init__(self):
        if not (self.l > 0 and self.c > 0 and self.c_j0 > 0):
            raise InvalidParameterError("l, c and c_j0 must all be positive")
        if not self.e_j0 >= 0:
            raise InvalidParameterError("e_j0 must be nonnegative")


@dataclass(frozen=True)
class EffectiveParams:
    """Hamiltonian coefficients in kelvin.

    eps1, eps2 are the charge (sigma_z) energies, ej1, ej2 the intrabit
    (sigma_x) couplings and j12 the interbit sigma_x sigma_x coupling.
    """

    eps1: float
    eps2: float
    ej1: float = 0.0
    ej2: float = 0.0
    j12: float = 0.0

    def __post_init__(self):
        for name in ("eps1", "eps2", "ej1", "ej2", "j12"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")

    @classmethod
    def symmetric(cls, eps: float, j: float) -> "EffectiveParams":
        """Dimensionless mode: equal charge energies, no intrabit coupling."""
        return cls(eps1=eps, eps2=eps, ej1=0.0, ej2=0.0, j12=j)


@dataclass(frozen=True)
class ThermalSpec:
    """Equilibrium temperature in kelvin; T = 0 selects the ground space."""

    temperature: float

    def __post_init__(self):
        if not (math.isfinite(self.temperature) and self.temperature >= 0):
            raise InvalidParameterError("temperature must be finite and >= 0")

    @property
    def zero_temperature(self) -> bool:
        return self.temperature == 0.0


def _cos_pi(x: float) -> float:
    """cos(pi*x) with exact argument reduction.

    Exactly 2-periodic in x and exactly zero at half-integers, which the
    flux maps rely on.
    """
    y = abs(math.fmod(x, 2.0))
    if y > 1.0:
        y = 2.0 - y
    if y == 0.5:
        return 0.0
    if y > 0.5:
        return -math.cos(math.pi * (1.0 - y))
    return math.cos(math.pi * y)


def _sin_pi(x: float) -> float:
    """sin(pi*x) with exact argument reduction; exactly zero at integers."""
    y = math.fmod(x, 2.0)
    if y < 0.0:
        y += 2.0
    sign = 1.0
    if y > 1.0:
        y = y - 1.0
        sign = -1.0
    if y == 0.0 or y == 1.0:
        return 0.0
    if y > 0.5:
        y = 1.0 - y
    return sign * math.sin(math.pi * y)


def _check_qubit_index(which: int) -> None:
    if which not in (1, 2):
        raise InvalidParameterError(f"qubit index must be 1 or 2, got {which!r}")


def charge_energy(p: DeviceParams) -> float:
    """Single-box charging energy E_c = 2e^2/(C + C_J0), in kelvin."""
    total_c = p.c + p.c_j0
    if total_c <= 0:
        raise InvalidParameterError("total capacitance must be positive")
    return 2.0 * CONSTANTS.e**2 / (total_c * CONSTANTS.k_b)


def epsilon_from_voltage(p: DeviceParams, which: int) -> float:
    """Gate-voltage-controlled charge energy of one qubit, in kelvin."""
    _check_qubit_index(which)
    v = p.v_x1 if which == 1 else p.v_x2
    return (p.c * v / CONSTANTS.e - (2 * p.n + 1)) * charge_energy(p) / 2.0


def intrabit_coupling(p: DeviceParams, which: int) -> float:
    """Flux-controlled sigma_x coupling of one qubit, in kelvin.

    Vanishes exactly when the external flux sits at half a flux quantum.
    """
    _check_qubit_index(which)
    phi_x = p.phi_x1 if which == 1 else p.phi_x2
    return p.xi * 2.0 * p.e_j0 * _cos_pi(phi_x) * _cos_pi(p.phi_e)


def interbit_coupling(p: DeviceParams) -> float:
    """Inductance-mediated sigma_x sigma_x coupling, in kelvin.

    J12 = -pi^2 L E_J1 E_J2 sin^2(pi*phi_e) / phi_0^2 with
    E_Jk = 2 E_J0 cos(pi*phi_xk); negative for the default controls.
    """
    e_j0_joule = p.e_j0 * CONSTANTS.k_b
    prefactor = 4.0 * e_j0_joule**2 * math.pi**2 * p.l / CONSTANTS.phi_0**2
    s = _sin_pi(p.phi_e)
    return -prefactor * _cos_pi(p.phi_x1) * _cos_pi(p.phi_x2) * s * s / CONSTANTS.k_b


def effective_params(p: DeviceParams) -> EffectiveParams:
    """Collect all control maps into the effective Hamiltonian coefficients."""
    return EffectiveParams(
        eps1=epsilon_from_voltage(p, 1),
        eps2=epsilon_from_voltage(p, 2),
        ej1=intrabit_coupling(p, 1),
        ej2=intrabit_coupling(p, 2),
        j12=interbit_coupling(p),
    )


def build_hamiltonian(eff: EffectiveParams) -> np.ndarray:
    """Two-qubit Hamiltonian matrix in the |00>,|01>,|10>,|11> basis (kelvin)."""
    sx, sz, i2 = qmath.SIGMA_X, qmath.SIGMA_Z, qmath.IDENTITY_2
    return (
        eff.eps1 * qmath.kron(sz, i2)
        + eff.eps2 * qmath.kron(i2, sz)
        - eff.ej1 * qmath.kron(sx, i2)
        - eff.ej2 * qmath.kron(i2, sx)
        + eff.j12 * qmath.kron(sx, sx)
    )


def gibbs_state(h, spec: ThermalSpec) -> np.ndarray:
    """Equilibrium state exp(-H/T)/Z; at T = 0 the ground-space projector.

    A degenerate ground space yields the uniform mixture over it, the
    T -> 0+ limit of the Gibbs state.
    """
    h = qmath.require_hermitian(h, "hamiltonian")
    w, v = np.linalg.eigh(h)
    if spec.zero_temperature:
        cut = w[0] + GROUND_DEGENERACY_RTOL * float(np.linalg.norm(h))
        ground = v[:, w <= cut]
        rho = ground @ ground.conj().T
        rho /= np.trace(rho).real
    else:
        # Shift by the ground energy so the exponentials never overflow.
        weights = np.exp(-(w - w[0]) / spec.temperature)
        rho = (v * weights) @ v.conj().T
        rho /= weights.sum()
    return 0.5 * (rho + rho.conj().T)


def closed_form_thermal(eff: EffectiveParams, t: float) -> np.ndarray:
    """Closed-form thermal X state for the symmetric, zero-intrabit regime.

    Valid only when ej1 = ej2 = 0, eps1 = eps2, j12 != 0 and T > 0; any other
    regime should go through :func:`gibbs_state`.  With eps = eps1 and
    lam = sqrt(4 eps^2 + j12^2) the nonzero entries are

        rho_11,44 = [cosh(b*lam) -/+ (2 eps/lam) sinh(b*lam)] / Z
        rho_22 = rho_33 = cosh(b*j12) / Z
        rho_23 = rho_32 = -sinh(b*j12) / Z
        rho_14 = rho_41 = -(j12/lam) sinh(b*lam) / Z
        Z = 2 cosh(b*lam) + 2 cosh(b*j12),   b = 1/T.

    Equivalently rho_11,44 = w_-/+ / (alpha*Z) and rho_14 = -gamma/(alpha*Z)
    with w_-/+ = j12^2 [lam^2 cosh(b*lam) -/+ 2 eps lam sinh(b*lam)],
    gamma = j12^3 lam sinh(b*lam) and normalization alpha = j12^2 lam^2.
    A variant of alpha sometimes quoted for this model, j12^4 - 12 eps^4,
    does not reproduce exp(-H/T)/Z and is treated here as a misprint; the
    test suite pins the equivalence with direct exponentiation.

    The implementation rescales every term by exp(-b*lam) so large b never
    overflows.
    """
    if eff.ej1 != 0.0 or eff.ej2 != 0.0:
        raise UnsupportedRegimeError(
            "closed form requires zero intrabit couplings; use gibbs_state"
        )
    if eff.eps1 != eff.eps2:
        raise UnsupportedRegimeError(
            "closed form requires eps1 == eps2; use gibbs_state"
        )
    if eff.j12 == 0.0:
        raise UnsupportedRegimeError(
            "closed form is singular at j12 = 0; use gibbs_state"
        )
    if not (math.isfinite(t) and t > 0.0):
        raise UnsupportedRegimeError("closed form requires T > 0; use gibbs_state")

    eps, j = eff.eps1, eff.j12
    beta = 1.0 / t
    lam = math.hypot(2.0 * eps, j)
    # All exponents below are <= 0 because lam >= |j|.
    u = math.exp(-2.0 * beta * lam)
    a = math.exp(-beta * (lam - j))
    b = math.exp(-beta * (lam + j))
    z = (1.0 + u) + a + b          # Z scaled by exp(-beta*lam)/2

    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = ((1.0 + u) - (2.0 * eps / lam) * (1.0 - u)) / (2.0 * z)
    rho[3, 3] = ((1.0 + u) + (2.0 * eps / lam) * (1.0 - u)) / (2.0 * z)
    rho[1, 1] = rho[2, 2] = (a + b) / (2.0 * z)
    rho[1, 2] = rho[2, 1] = -(a - b) / (2.0 * z)
    rho[0, 3] = rho[3, 0] = -(j / lam) * (1.0 - u) / (2.0 * z)
    return rho


def thermal_state(params, temperature: float) -> np.ndarray:
    """Thermal state for device or effective parameters at the given T (K)."""
    eff = params if isinstance(params, EffectiveParams) else effective_params(params)
    return gibbs_state(build_hamiltonian(eff), ThermalSpec(temperature))
