"""Two-sided numerical checks of the determinant identities."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .cohomology import (
    Character,
    Cocycle,
    SpinStructure,
    character_to_cocycle,
    spin_structures,
)
from .errors import DivisionNearZero, GenusTooHigh, GenusTooLow, HypothesisViolation
from .kacward import WeightSystem, critical_coupling, kw_matrix, partition_function_kw, tau, vdw_convert
from .builders import gen_torus_lattice
from .laplacian import det_laplacian, laplacian_matrix, laplacian_scale
from .linalg import det, row_norm_scale
from .ribbon import IsoradialMap, check_hypotheses, dual, quad_graph

RESIDUAL_FLOOR = 1e-30


@dataclass
class VerificationReport:
    lhs: complex
    rhs: complex
    residual: float
    scale: float = 1.0
    hypothesis_flags: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, lhs, rhs, scale=1.0, **kw) -> VerificationReport:
        lhs, rhs = complex(lhs), complex(rhs)
        res = abs(lhs - rhs) / max(abs(lhs), abs(rhs), RESIDUAL_FLOOR)
        return cls(lhs, rhs, float(res), float(scale), **kw)

    @property
    def absolute(self) -> float:
        return abs(self.lhs - self.rhs)

    def passed(self, tol: float = 1e-9) -> bool:
        """Relative agreement, or both sides zero at the ``tol * scale`` level."""
        if self.residual <= tol:
            return True
        return max(abs(self.lhs), abs(self.rhs)) <= tol * self.scale

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("lhs", "rhs"):
            z = complex(d[key])
            d[key] = [z.real, z.imag]
        return d


def _require(m: IsoradialMap, mode: str) -> dict:
    rep = check_hypotheses(m, mode)
    if not rep.passed:
        raise HypothesisViolation(
            f"{mode} hypothesis fails at vertices {rep.vertex_violators}, faces {rep.face_violators}"
        )
    return rep.to_dict()


def _cocycle(m, phi) -> Cocycle:
    if phi is None:
        return Cocycle.trivial(m)
    if isinstance(phi, SpinStructure):
        return phi.cocycle
    if isinstance(phi, Character):
        return character_to_cocycle(m, phi)
    return phi


def quad_cocycle_pair(m: IsoradialMap, quad_phi) -> tuple[Cocycle, Cocycle]:
    """Cocycles on ``G`` and ``G*`` induced by one cocycle (or character) on the quad graph."""
    qg = quad_graph(m)
    q = _cocycle(qg.quad_map, quad_phi)
    d = dual(m)
    pv = q.values[[a for a, _ in qg.primal_edge_paths]] * q.values[[b for _, b in qg.primal_edge_paths]]
    dv = q.values[[a for a, _ in qg.dual_edge_paths]] * q.values[[b for _, b in qg.dual_edge_paths]]
    if q.is_exact:
        pp = [q.phases[a] + q.phases[b] for a, b in qg.primal_edge_paths]
        dp = [q.phases[a] + q.phases[b] for a, b in qg.dual_edge_paths]
        return Cocycle.from_phases(m, pp), Cocycle.from_phases(d, dp)
    return Cocycle(m, pv), Cocycle(d, dv)


def _duality_side(m: IsoradialMap, phi: Cocycle):
    c = np.cos(m.theta_radians)
    pre = 2.0**m.n_vertices * float(np.prod(1 + c))
    a = kw_matrix(m, WeightSystem.critical_nu(m), phi)
    return pre * det(a), pre * row_norm_scale(a)


def duality_check(m: IsoradialMap, quad_phi=None) -> VerificationReport:
    """Compare the weighted Kac-Ward determinants of ``G`` and ``G*`` for one surface class.

    ``quad_phi`` is a cocycle or character on the quad graph of ``m``; the
    cocycles on ``G`` and ``G*`` are read off along its two-step paths.
    """
    flags = _require(m, "all_odd")
    phi_g, phi_d = quad_cocycle_pair(m, quad_phi)
    phi_g.check(1e-9)
    phi_d.check(1e-9)
    d = phi_d.host
    lhs, s1 = _duality_side(d, phi_d)
    rhs, s2 = _duality_side(m, phi_g)
    return VerificationReport.compare(
        lhs, rhs, max(s1, s2), hypothesis_flags=flags, inputs={"vertices": m.n_vertices, "dual_vertices": d.n_vertices}
    )


def vertices_three_mod_four(m: IsoradialMap) -> int:
    """Number of vertices whose cone angle is ``3 * 2pi`` modulo ``8pi``."""
    return sum(1 for a in m.primal_cone_angles if (a.turns % 4) == 3)


def delta_identity_rhs(m: IsoradialMap, phi) -> tuple[complex, float]:
    c = np.cos(m.theta_radians)
    chi = m.n_vertices - m.n_edges
    pre = (-1) ** vertices_three_mod_four(m) * 2.0 ** (-chi) * float(np.prod(c / (1 + c)))
    c = WeightSystem.critical_c(m)
    return pre * det_laplacian(m, c, phi), abs(pre) * laplacian_scale(m, c)


def delta_identity_check(m: IsoradialMap, phi=None) -> VerificationReport:
    """Kac-Ward determinant against the signed, rescaled twisted Laplacian determinant (genus <= 1)."""
    if m.genus > 1:
        raise GenusTooHigh(f"identity only holds for genus <= 1, map has genus {m.genus}")
    flags = _require(m, "primal_odd")
    phi = _cocycle(m, phi)
    a = kw_matrix(m, WeightSystem.critical_nu(m), phi)
    lhs = det(a)
    rhs, s2 = delta_identity_rhs(m, phi)
    return VerificationReport.compare(
        lhs, rhs, max(row_norm_scale(a), s2), hypothesis_flags=flags, inputs={"genus": m.genus}
    )


@dataclass
class ProbeResult:
    ratios: list[complex]
    spread: float
    skipped: list[int]

    def to_dict(self) -> dict:
        return {
            "ratios": [[complex(r).real, complex(r).imag] for r in self.ratios],
            "spread": self.spread,
            "skipped": self.skipped,
        }


def nonproportionality_probe(m: IsoradialMap, characters, threshold: float = 1e-9) -> ProbeResult:
    """Ratios ``tau / det Delta`` over characters; in genus >= 2 their moduli are not constant."""
    if m.genus < 2:
        raise GenusTooLow(f"probe needs genus >= 2, map has genus {m.genus}")
    _require(m, "primal_odd")
    ratios, skipped = [], []
    c = WeightSystem.critical_c(m)
    for i, ch in enumerate(characters):
        phi = _cocycle(m, ch)
        lap = laplacian_matrix(m, c, phi)
        dl = det(lap)
        if abs(dl) <= threshold * laplacian_scale(m, c):
            skipped.append(i)
            continue
        ratios.append(tau(m, None, phi) / dl)
    if len(ratios) < 2:
        raise DivisionNearZero(f"only {len(ratios)} characters had a usable Laplacian determinant")
    mods = np.abs(ratios)
    return ProbeResult(ratios, float(mods.max() / mods.min()), skipped)


def kw_coupling_check(theta: float) -> VerificationReport:
    """``sinh 2J(theta) * sinh 2J(pi/2 - theta) = 1`` for the critical couplings."""
    if not 0 < theta < math.pi / 2:
        raise ValueError("theta must lie in (0, pi/2)")
    j = critical_coupling(theta)
    jd = critical_coupling(math.pi / 2 - theta)
    return VerificationReport.compare(
        math.sinh(2 * j) * math.sinh(2 * jd), 1.0, inputs={"theta": theta, "J": j, "J_dual": jd}
    )


@dataclass
class FreeEnergyRow:
    n: int
    f: float
    laplacian_side: float
    gap: float
    identity_residual: float
    laplacian_sides: list[float]

    def to_dict(self) -> dict:
        return asdict(self)


def free_energy_table(kind: str = "square", n_max: int = 6, structure: int = 0) -> list[FreeEnergyRow]:
    """Finite-size free energy per fundamental domain against the Laplacian expression.

    ``structure`` picks one of the Arf-0 (non-trivial) spin structures, in
    bit order; ``laplacian_sides`` lists the value for each of them.
    """
    if n_max > 12:
        raise ValueError("n_max is capped at 12")
    base_vertices = gen_torus_lattice(kind, 1, 1).n_vertices
    rows = []
    for n in range(1, n_max + 1):
        m = gen_torus_lattice(kind, n, n)
        structures = spin_structures(m)
        couplings = np.array([critical_coupling(t) for t in m.theta_radians])
        prefactor, nu = vdw_convert(m, couplings)
        z = partition_function_kw(m, nu, structures)
        f = -(math.log(prefactor) + math.log(z)) / n**2
        sides, resid = [], []
        c = WeightSystem.critical_c(m)
        for lam in (s for s in structures if s.arf == 0):
            dl = det_laplacian(m, c, lam.cocycle)
            sides.append(-base_vertices * math.log(2) / 2 - math.log(abs(dl)) / (2 * n**2))
            resid.append(delta_identity_check(m, lam).residual)
        rows.append(FreeEnergyRow(n, f, sides[structure], abs(f - sides[structure]), max(resid), sides))
    return rows
