"""Exponential-time reference sums.

These are coded against the ribbon module only, so they stay independent
of the matrix code they are used to check.  The inner loops live in
:mod:`kwising.kernels`.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

import numpy as np

from . import kernels
from .errors import HypothesisViolation, TooLarge
from .ribbon import CombinatorialMap, IsoradialMap, check_hypotheses, turning_alpha

MAX_CYCLE_RANK = 24
MAX_VERTICES = 24
MAX_EDGES = 24


def _phases(m, phi) -> np.ndarray:
    if phi is None:
        return np.ones(m.dart_count, dtype=complex)
    phi = getattr(phi, "cocycle", phi)
    return np.asarray(getattr(phi, "values", phi), dtype=complex)


def _values(weights, default) -> np.ndarray:
    if weights is None:
        return np.asarray(default, dtype=complex)
    return np.asarray(getattr(weights, "values", weights), dtype=complex)


def cycle_space_basis(m: CombinatorialMap) -> np.ndarray:
    """Fundamental cycles of a BFS spanning tree, as 0/1 rows over edges."""
    nv, ne = m.n_vertices, m.n_edges
    seen = [False] * nv
    up: list = [None] * nv  # edge to the BFS parent, and the parent
    seen[0] = True
    queue = deque([0])
    tree = set()
    while queue:
        v = queue.popleft()
        for d in m.vertices[v]:
            w = m.terminus(d)
            if not seen[w]:
                seen[w] = True
                up[w] = (int(m.edge_of[d]), v)
                tree.add(int(m.edge_of[d]))
                queue.append(w)

    def to_root(v):
        path = []
        while up[v] is not None:
            k, v = up[v]
            path.append(k)
        return path

    rows = []
    for k, (a, b) in enumerate(m.edges):
        if k in tree:
            continue
        row = np.zeros(ne, dtype=np.uint8)
        row[k] = 1
        for j in to_root(m.origin[a]) + to_root(m.origin[b]):
            row[j] ^= 1
        rows.append(row)
    return np.array(rows, dtype=np.uint8).reshape(len(rows), ne)


def even_subgraph_z(m: IsoradialMap, weights=None) -> complex:
    """``sum over even subgraphs F of prod_{e in F} x_e``; default weights ``tan(theta/2)``."""
    x = _values(weights, np.tan(m.theta_radians / 2) if weights is None else None)
    basis = cycle_space_basis(m)
    if basis.shape[0] > MAX_CYCLE_RANK:
        raise TooLarge(f"cycle space of dimension {basis.shape[0]} exceeds {MAX_CYCLE_RANK}")
    return complex(kernels.even_subgraph_sum(basis, x))


def ising_sum(n_vertices: int, edges: Iterable[tuple[int, int]], couplings) -> float:
    """Brute-force Ising sum on an explicit edge list; a graph with no edges gives ``2^V``."""
    edges = list(edges)
    if n_vertices > MAX_VERTICES:
        raise TooLarge(f"{n_vertices} vertices exceed {MAX_VERTICES}")
    j = np.broadcast_to(np.asarray(couplings, dtype=float), (len(edges),))
    eu = np.array([u for u, _ in edges], dtype=np.int64)
    ev = np.array([v for _, v in edges], dtype=np.int64)
    return float(kernels.spin_config_sum(n_vertices, eu, ev, np.ascontiguousarray(j)))


def spin_config_z(m: CombinatorialMap, couplings) -> float:
    edges = [(m.origin[a], m.origin[b]) for a, b in m.edges]
    return ising_sum(m.n_vertices, edges, couplings)


def _mask_edges(m, mask) -> list[int]:
    if isinstance(mask, (int, np.integer)):
        return [k for k in range(m.n_edges) if int(mask) >> k & 1]
    return sorted(set(int(k) for k in mask))


def boundary_components(m: CombinatorialMap, mask) -> list[tuple[int, ...]]:
    """Orbits of ``e -> R_F^{-1}(J e)`` on the darts of the edge subset F."""
    ks = _mask_edges(m, mask)
    if not ks:
        raise ValueError("empty mask")
    inf = np.zeros(m.dart_count, dtype=bool)
    for k in ks:
        a, b = m.edges[k]
        inf[a] = inf[b] = True
    rinv = m.rotation_inverse
    seen = np.zeros(m.dart_count, dtype=bool)
    out = []
    for d0 in range(m.dart_count):
        if not inf[d0] or seen[d0]:
            continue
        orbit = []
        d = d0
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = rinv[m.reversal[d]]
            while not inf[d]:
                d = rinv[d]
        out.append(tuple(orbit))
    return out


def expansion_constant(m: IsoradialMap) -> complex:
    chi = m.n_vertices - m.n_edges
    c = np.cos(m.theta_radians)
    out = (-1) ** m.n_vertices * 2.0 ** (-chi) * complex(np.prod(c / (1 + c)))
    for a in m.primal_cone_angles:
        out *= (a / 4).exp_i()
    return out


def tau_combinatorial(m: IsoradialMap, phi=None) -> complex:
    """Kac-Ward determinant at critical weights as a sum over subgraphs with no tree component."""
    rep = check_hypotheses(m, "primal_odd")
    if not rep.passed:
        raise HypothesisViolation(f"vertex cone angles not odd multiples of 2pi at {rep.vertex_violators}")
    if m.n_edges > MAX_EDGES:
        raise TooLarge(f"{m.n_edges} edges exceed {MAX_EDGES}")
    mu = 1j * np.tan(m.theta_radians)
    s = kernels.boundary_sum(
        m.n_vertices,
        np.array(m.origin, dtype=np.int64),
        np.array(m.reversal, dtype=np.int64),
        np.array(m.rotation_inverse, dtype=np.int64),
        np.array(m.edges, dtype=np.int64),
        _phases(m, phi),
        mu,
    )
    return expansion_constant(m) * complex(s)


def forman_det(m: CombinatorialMap, weights=None, phi=None) -> complex:
    """Laplacian determinant as a sum over spanning subgraphs with unicyclic components."""
    if m.n_edges > MAX_EDGES:
        raise TooLarge(f"{m.n_edges} edges exceed {MAX_EDGES}")
    default = np.tan(m.theta_radians) if weights is None else None
    x = _values(weights, default)
    ph = _phases(m, phi)
    first = np.array([a for a, _ in m.edges], dtype=np.int64)
    eu = np.array([m.origin[a] for a, _ in m.edges], dtype=np.int64)
    ev = np.array([m.origin[b] for _, b in m.edges], dtype=np.int64)
    return complex(kernels.unicyclic_sum(m.n_vertices, eu, ev, ph[first], x))


def _prime_cycles(m: IsoradialMap, max_length: int):
    """Closed non-backtracking walks up to rotation, primitive, as lexicographically least rotations."""
    succ = [[f for f in m.vertices[m.terminus(e)] if f != m.reversal[e]] for e in range(m.dart_count)]
    for n in range(1, max_length + 1):
        for start in range(m.dart_count):
            stack = [[start]]
            while stack:
                w = stack.pop()
                if len(w) == n:
                    if w[0] not in succ[w[-1]]:
                        continue
                    t = tuple(w)
                    if min(t[i:] + t[:i] for i in range(n)) != t:
                        continue
                    if any(n % p == 0 and t == t[p:] + t[:p] for p in range(1, n)):
                        continue
                    yield t
                    continue
                for f in succ[w[-1]]:
                    if f >= start:
                        stack.append(w + [f])


def bass_truncation(m: IsoradialMap, weights=None, phi=None, max_length: int = 6) -> complex:
    """Product of ``1 - phi(g) exp(i alpha(g)/2) x(g)`` over prime reduced cycles of length at most ``max_length``."""
    x = _values(weights, np.tan(m.theta_radians / 2) if weights is None else None)
    ph = _phases(m, phi)
    out = 1 + 0j
    for cyc in _prime_cycles(m, max_length):
        val = (turning_alpha(m, cyc) / 2).exp_i()
        for d in cyc:
            val *= ph[d] * x[m.edge_of[d]]
        out *= 1 - val
    return out


__all__ = [
    "cycle_space_basis",
    "even_subgraph_z",
    "ising_sum",
    "spin_config_z",
    "boundary_components",
    "expansion_constant",
    "tau_combinatorial",
    "forman_det",
    "bass_truncation",
]
