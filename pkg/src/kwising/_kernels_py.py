"""Pure-Python enumeration kernels.

Same signatures and results as the compiled ``_kernels`` extension; used
when the extension is missing or ``KWISING_PURE_PYTHON=1`` is set.
Arrays come in as numpy arrays but every loop here is plain Python.
"""

from __future__ import annotations

import math
from itertools import combinations


def even_subgraph_sum(basis, weights) -> complex:
    """Sum of ``prod(weights[F])`` over all F in the span (over GF(2)) of the basis rows."""
    k = len(basis)
    ne = len(weights)
    w = [complex(x) for x in weights]
    rows = [[j for j in range(ne) if basis[i][j]] for i in range(k)]
    mask = [0] * ne
    total = 1 + 0j  # empty subgraph
    for step in range(1, 1 << k):
        # Gray code: flip the row indexed by the lowest set bit of step
        i = (step & -step).bit_length() - 1
        for j in rows[i]:
            mask[j] ^= 1
        prod = 1 + 0j
        for j in range(ne):
            if mask[j]:
                prod *= w[j]
        total += prod
    return total


def spin_config_sum(n_vertices: int, eu, ev, couplings) -> float:
    """``sum over sigma in {+-1}^V of exp(sum_e J_e sigma_u sigma_v)``."""
    ne = len(couplings)
    us = [int(u) for u in eu]
    vs = [int(v) for v in ev]
    js = [float(j) for j in couplings]
    total = 0.0
    for s in range(1 << n_vertices):
        energy = 0.0
        for a in range(ne):
            differ = ((s >> us[a]) ^ (s >> vs[a])) & 1
            energy += -js[a] if differ else js[a]
        total += math.exp(energy)
    return total


def unicyclic_sum(n_vertices: int, eu, ev, phase, weights) -> complex:
    """Sum over spanning edge sets of size ``|V|`` whose components are all unicyclic.

    ``phase[a]`` is the cocycle value on the dart ``eu[a] -> ev[a]``; each
    component contributes ``2 - 2 Re(holonomy of its cycle)``.
    """
    ne = len(weights)
    us = [int(u) for u in eu]
    vs = [int(v) for v in ev]
    ph = [complex(z) for z in phase]
    w = [complex(x) for x in weights]
    total = 0j
    for subset in combinations(range(ne), n_vertices):
        parent = list(range(n_vertices))
        pot = [1 + 0j] * n_vertices  # phase along the path to the parent
        cyc = [False] * n_vertices
        coeff = 1 + 0j
        ok = True
        for a in subset:
            ru = _root(parent, pot, us[a])
            rv = _root(parent, pot, vs[a])
            pu, pv = pot[us[a]] if us[a] != ru else 1, pot[vs[a]] if vs[a] != rv else 1
            if ru == rv:
                if cyc[ru]:
                    ok = False
                    break
                h = ph[a] * pv * pu.conjugate()
                coeff *= 2 - 2 * h.real
                cyc[ru] = True
            else:
                if cyc[ru] and cyc[rv]:
                    ok = False
                    break
                parent[ru] = rv
                pot[ru] = ph[a] * pv * pu.conjugate()
                cyc[rv] = cyc[rv] or cyc[ru]
            coeff *= w[a]
        if ok:
            total += coeff
    return total


def _root(parent, pot, v):
    """Root of ``v``; afterwards ``parent[v]`` is the root and ``pot[v]`` the phase to it."""
    path = []
    while parent[v] != v:
        path.append(v)
        v = parent[v]
    acc = 1 + 0j
    for u in reversed(path):
        acc = pot[u] * acc
        pot[u] = acc
        parent[u] = v
    return v


def boundary_sum(n_vertices: int, origin, reversal, rotation_inverse, edge_darts, phase, mu) -> complex:
    """Sum over spanning edge masks with no tree component of ``prod(1 - phi(gamma)) * mu(F)``.

    ``gamma`` runs over the orbits of ``e -> R_F^{-1}(J e)`` on the darts of F.
    """
    ne = len(mu)
    nd = 2 * ne
    org = [int(x) for x in origin]
    rev = [int(x) for x in reversal]
    rinv = [int(x) for x in rotation_inverse]
    ed = [(int(a), int(b)) for a, b in edge_darts]
    ph = [complex(z) for z in phase]
    m = [complex(z) for z in mu]
    total = 0j
    for mask in range(1, 1 << ne):
        inf = [False] * nd
        parent = list(range(n_vertices))
        nedges = [0] * n_vertices
        nverts = [1] * n_vertices
        for k in range(ne):
            if mask >> k & 1:
                a, b = ed[k]
                inf[a] = inf[b] = True
                ra = _plain_root(parent, org[a])
                rb = _plain_root(parent, org[b])
                if ra != rb:
                    parent[ra] = rb
                    nedges[rb] += nedges[ra]
                    nverts[rb] += nverts[ra]
                nedges[rb] += 1
        tree = False
        for v in range(n_vertices):
            if parent[v] == v and nedges[v] < nverts[v]:
                tree = True
                break
        if tree:
            continue
        coeff = 1 + 0j
        for k in range(ne):
            if mask >> k & 1:
                coeff *= m[k]
        seen = [False] * nd
        for d0 in range(nd):
            if not inf[d0] or seen[d0]:
                continue
            hol = 1 + 0j
            d = d0
            while not seen[d]:
                seen[d] = True
                hol *= ph[d]
                d = rinv[rev[d]]
                while not inf[d]:
                    d = rinv[d]
            coeff *= 1 - hol
        total += coeff
    return total


def _plain_root(parent, v):
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v
