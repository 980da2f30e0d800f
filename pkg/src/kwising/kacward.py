"""Twisted Kac-Ward determinants and the Ising partition function.

The transition matrix ``T`` is indexed by darts: ``T[e, e']`` is nonzero
when ``e'`` leaves the endpoint of ``e`` and is not its reversal, and
equals ``phi(e) * i * exp(-i beta / 2) * x_e`` where ``beta`` is the
corner angle from :func:`~kwising.ribbon.corner_beta`.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass

import numpy as np

from .cohomology import Cocycle, SpinStructure, spin_structures
from .errors import HypothesisViolation, NotASquare, TooLarge
from .linalg import det
from .ribbon import IsoradialMap, check_hypotheses, corner_beta

# largest map for the series square root; the 6x6 square torus has 72 edges
# and the FFT sampling stays well inside the residual bound there
SQRT_MAX_EDGES = 128
SQRT_RESIDUAL = 1e-6


@dataclass(frozen=True)
class WeightSystem:
    """One weight per unoriented edge, in edge order."""

    values: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))

    @classmethod
    def critical_nu(cls, m: IsoradialMap) -> WeightSystem:
        return cls(np.tan(m.theta_radians / 2), "nu")

    @classmethod
    def critical_c(cls, m: IsoradialMap) -> WeightSystem:
        return cls(np.tan(m.theta_radians), "c")

    @classmethod
    def critical_mu(cls, m: IsoradialMap) -> WeightSystem:
        return cls(1j * np.tan(m.theta_radians), "mu")

    @classmethod
    def coupling_J(cls, m: IsoradialMap, couplings) -> WeightSystem:
        j = np.broadcast_to(np.asarray(couplings, dtype=float), (m.n_edges,)).copy()
        if np.any(j < 0):
            raise ValueError("couplings must be nonnegative")
        return cls(j, "J")

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0))

    def scaled(self, t) -> WeightSystem:
        return WeightSystem(self.values * t, self.kind)

    def __len__(self):
        return len(self.values)


def critical_weights(m: IsoradialMap, kind: str = "nu") -> WeightSystem:
    try:
        return {"nu": WeightSystem.critical_nu, "c": WeightSystem.critical_c, "mu": WeightSystem.critical_mu}[kind](m)
    except KeyError:
        raise ValueError(f"unknown weight kind {kind!r}") from None


def critical_coupling(theta: float) -> float:
    """Coupling ``J`` with ``sinh 2J = tan theta``."""
    return 0.5 * math.log((1 + math.sin(theta)) / math.cos(theta))


def _weights(m: IsoradialMap, weights) -> np.ndarray:
    if weights is None:
        return WeightSystem.critical_nu(m).values
    w = weights.values if isinstance(weights, WeightSystem) else np.asarray(weights, dtype=complex)
    if w.shape != (m.n_edges,):
        raise ValueError(f"expected {m.n_edges} weights, got shape {w.shape}")
    return w


def _phases(m, phi) -> np.ndarray:
    if phi is None:
        return np.ones(m.dart_count, dtype=complex)
    if isinstance(phi, SpinStructure):
        phi = phi.cocycle
    if isinstance(phi, Cocycle):
        if phi.host is not m and phi.host.dart_count != m.dart_count:
            raise ValueError("cocycle lives on a different map")
        return phi.values
    v = np.asarray(phi, dtype=complex)
    if v.shape != (m.dart_count,):
        raise ValueError(f"expected {m.dart_count} dart values")
    return v


_PATTERN: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _transition_pattern(m: IsoradialMap):
    pat = _PATTERN.get(m)
    if pat is None:
        rows, cols, base = [], [], []
        for e in range(m.dart_count):
            eb = m.reversal[e]
            for f in m.vertices[m.origin[eb]]:
                if f == eb:
                    continue
                beta = corner_beta(m, e, f)
                rows.append(e)
                cols.append(f)
                base.append(1j * (-beta / 2).exp_i())
        pat = (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64), np.array(base, dtype=complex))
        _PATTERN[m] = pat
    return pat


def kw_matrix(m: IsoradialMap, weights=None, phi=None) -> np.ndarray:
    """The matrix ``I - T^phi`` of order ``2|E|``."""
    x = _weights(m, weights)
    ph = _phases(m, phi)
    rows, cols, base = _transition_pattern(m)
    vals = ph[rows] * base * x[m.edge_of[rows]]
    a = np.eye(m.dart_count, dtype=complex)
    np.add.at(a, (rows, cols), -vals)
    return a


def tau(m: IsoradialMap, weights=None, phi=None) -> complex:
    return det(kw_matrix(m, weights, phi))


def m_matrix(m: IsoradialMap, phi=None) -> np.ndarray:
    ph = _phases(m, phi)
    mu = WeightSystem.critical_mu(m).values[m.edge_of]
    n = m.dart_count
    a = np.eye(n, dtype=complex)
    idx = np.arange(n)
    np.add.at(a, (idx, np.array(m.reversal)), ph * mu)
    np.add.at(a, (idx, np.array(m.rotation)), -(1 + mu))
    return a


def m_prefactor(m: IsoradialMap) -> float:
    chi = m.n_vertices - m.n_edges
    c = np.cos(m.theta_radians)
    return float(2.0 ** (-chi) * np.prod(c * c / (1 + c)))


def tau_via_m(m: IsoradialMap, phi=None) -> complex:
    """``tau`` at critical weights through the smaller-bandwidth matrix ``I + J phi mu - R (mu + 1)``."""
    return m_prefactor(m) * det(m_matrix(m, phi))


def _series_sqrt(c: np.ndarray, degree: int) -> np.ndarray:
    p = np.zeros(degree + 1, dtype=complex)
    p[0] = 1.0
    for k in range(1, degree + 1):
        s = np.dot(p[1:k], p[k - 1:0:-1]) if k > 1 else 0.0
        p[k] = (c[k] - s) / 2
    return p


def tau_polynomial(m: IsoradialMap, weights, phi) -> np.ndarray:
    """Coefficients of ``t -> tau(t x)`` (degree at most ``2|E|``)."""
    x = _weights(m, weights)
    n = 2 * m.n_edges + 1
    ts = np.exp(2j * np.pi * np.arange(n) / n)
    samples = np.array([tau(m, x * t, phi) for t in ts])
    return np.fft.fft(samples) / n


def tau_sqrt(m: IsoradialMap, weights, lam) -> float:
    """``p(1)`` for the polynomial ``p`` with ``p(0) = 1`` and ``p(t)^2 = tau(t x)``."""
    x = _weights(m, weights)
    if np.any(x.imag != 0):
        raise ValueError("square root path needs real weights")
    if m.n_edges > SQRT_MAX_EDGES:
        raise TooLarge(f"{m.n_edges} edges exceed the square-root cap {SQRT_MAX_EDGES}")
    if not np.any(x):
        return 1.0
    c = tau_polynomial(m, x, lam)
    ne = m.n_edges
    p = _series_sqrt(c, ne)
    sq = np.convolve(p, p)
    scale = max(np.max(np.abs(c)), 1.0)
    resid = np.max(np.abs(sq - c)) / scale
    if resid > SQRT_RESIDUAL:
        raise NotASquare(f"tau is not a square of a polynomial (residual {resid:.3g})")
    return float(np.sum(p).real)


def partition_function_kw(m: IsoradialMap, weights=None, structures=None) -> float:
    """Ising partition function as the Arf-signed average of spin-structure square roots."""
    rep = check_hypotheses(m, "all_odd")
    if not rep.passed:
        raise HypothesisViolation(
            f"cone angles not odd multiples of 2pi at vertices {rep.vertex_violators}, faces {rep.face_violators}"
        )
    x = _weights(m, weights)
    if np.any(x.imag != 0):
        raise ValueError("partition function needs real weights")
    if structures is None:
        structures = spin_structures(m)
    total = 0.0
    for lam in structures:
        total += (-1) ** lam.arf * tau_sqrt(m, x, lam)
    return total / 2**m.genus


def vdw_convert(m: IsoradialMap, couplings):
    """``(prefactor, weights)`` with ``Z^J = prefactor * Z(G, tanh J)``."""
    j = np.broadcast_to(np.asarray(couplings, dtype=float), (m.n_edges,))
    prefactor = float(np.prod(np.cosh(j)) * 2.0**m.n_vertices)
    return prefactor, WeightSystem(np.tanh(j), "nu")
