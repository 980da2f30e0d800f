# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the reference versions."""

import numpy as np
from libc.math cimport exp
from libc.stdlib cimport malloc, free


def even_subgraph_sum(basis, weights):
    cdef const unsigned char[:, ::1] b = np.ascontiguousarray(basis, dtype=np.uint8)
    cdef const double complex[::1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef Py_ssize_t k = b.shape[0], ne = w.shape[0], j
    cdef unsigned char[::1] mask = np.zeros(ne, dtype=np.uint8)
    cdef double complex total = 1, prod
    cdef unsigned long long step, top = 1ULL << k
    cdef int i
    step = 1
    while step < top:
        i = 0
        while not (step >> i) & 1:
            i += 1
        for j in range(ne):
            mask[j] ^= b[i, j]
        prod = 1
        for j in range(ne):
            if mask[j]:
                prod = prod * w[j]
        total = total + prod
        step += 1
    return complex(total)


def spin_config_sum(int n_vertices, eu, ev, couplings):
    cdef const long long[::1] us = np.ascontiguousarray(eu, dtype=np.int64)
    cdef const long long[::1] vs = np.ascontiguousarray(ev, dtype=np.int64)
    cdef const double[::1] js = np.ascontiguousarray(couplings, dtype=np.float64)
    cdef Py_ssize_t ne = js.shape[0], a
    cdef unsigned long long s, top = 1ULL << n_vertices
    cdef double total = 0, energy
    s = 0
    while s < top:
        energy = 0
        for a in range(ne):
            if ((s >> us[a]) ^ (s >> vs[a])) & 1:
                energy -= js[a]
            else:
                energy += js[a]
        total += exp(energy)
        s += 1
    return total


cdef inline int _root(const int* parent, const double complex* pot, int v, double complex* phase) noexcept nogil:
    # no path compression: components have at most 24 vertices
    cdef double complex acc = 1
    while parent[v] != v:
        acc = acc * pot[v]
        v = parent[v]
    phase[0] = acc
    return v


def unicyclic_sum(int n_vertices, eu, ev, phase, weights):
    cdef const long long[::1] us = np.ascontiguousarray(eu, dtype=np.int64)
    cdef const long long[::1] vs = np.ascontiguousarray(ev, dtype=np.int64)
    cdef const double complex[::1] ph = np.ascontiguousarray(phase, dtype=np.complex128)
    cdef const double complex[::1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef int ne = w.shape[0], nv = n_vertices
    cdef double complex total = 0, coeff, h, pu, pv
    cdef int i, a, ru, rv, ok, u, v
    if nv > ne or nv <= 0:
        return complex(total)
    cdef int* idx = <int*> malloc(nv * sizeof(int))
    cdef int* parent = <int*> malloc(nv * sizeof(int))
    cdef char* cyc = <char*> malloc(nv)
    cdef double complex* pot = <double complex*> malloc(nv * sizeof(double complex))
    for i in range(nv):
        idx[i] = i
    try:
        while True:
            for i in range(nv):
                parent[i] = i
                cyc[i] = 0
                pot[i] = 1
            coeff = 1
            ok = 1
            for i in range(nv):
                a = idx[i]
                u = us[a]
                v = vs[a]
                ru = _root(parent, pot, u, &pu)
                rv = _root(parent, pot, v, &pv)
                if ru == rv:
                    if cyc[ru]:
                        ok = 0
                        break
                    h = ph[a] * pv * pu.conjugate()
                    coeff = coeff * (2 - 2 * h.real)
                    cyc[ru] = 1
                else:
                    if cyc[ru] and cyc[rv]:
                        ok = 0
                        break
                    parent[ru] = rv
                    pot[ru] = ph[a] * pv * pu.conjugate()
                    if cyc[ru]:
                        cyc[rv] = 1
                coeff = coeff * w[a]
            if ok:
                total = total + coeff
            # next combination in lexicographic order
            i = nv - 1
            while i >= 0 and idx[i] == ne - nv + i:
                i -= 1
            if i < 0:
                break
            idx[i] += 1
            for a in range(i + 1, nv):
                idx[a] = idx[a - 1] + 1
    finally:
        free(idx)
        free(parent)
        free(cyc)
        free(pot)
    return complex(total)


cdef inline int _plain_root(int* parent, int v) noexcept nogil:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def boundary_sum(int n_vertices, origin, reversal, rotation_inverse, edge_darts, phase, mu):
    cdef const long long[::1] org = np.ascontiguousarray(origin, dtype=np.int64)
    cdef const long long[::1] rev = np.ascontiguousarray(reversal, dtype=np.int64)
    cdef const long long[::1] rinv = np.ascontiguousarray(rotation_inverse, dtype=np.int64)
    cdef const long long[:, ::1] ed = np.ascontiguousarray(edge_darts, dtype=np.int64)
    cdef const double complex[::1] ph = np.ascontiguousarray(phase, dtype=np.complex128)
    cdef const double complex[::1] m = np.ascontiguousarray(mu, dtype=np.complex128)
    cdef int ne = m.shape[0], nd = 2 * ne, nv = n_vertices
    cdef int k, v, a, b, ra, rb, d, d0, tree
    cdef unsigned long long mask, top = 1ULL << ne
    cdef double complex total = 0, coeff, hol
    cdef char* inf = <char*> malloc(nd)
    cdef char* seen = <char*> malloc(nd)
    cdef int* parent = <int*> malloc(nv * sizeof(int))
    cdef int* nedges = <int*> malloc(nv * sizeof(int))
    cdef int* nverts = <int*> malloc(nv * sizeof(int))
    try:
        mask = 1
        while mask < top:
            for d in range(nd):
                inf[d] = 0
                seen[d] = 0
            for v in range(nv):
                parent[v] = v
                nedges[v] = 0
                nverts[v] = 1
            for k in range(ne):
                if (mask >> k) & 1:
                    a = ed[k, 0]
                    b = ed[k, 1]
                    inf[a] = 1
                    inf[b] = 1
                    ra = _plain_root(parent, org[a])
                    rb = _plain_root(parent, org[b])
                    if ra != rb:
                        parent[ra] = rb
                        nedges[rb] += nedges[ra]
                        nverts[rb] += nverts[ra]
                    nedges[rb] += 1
            tree = 0
            for v in range(nv):
                if parent[v] == v and nedges[v] < nverts[v]:
                    tree = 1
                    break
            if not tree:
                coeff = 1
                for k in range(ne):
                    if (mask >> k) & 1:
                        coeff = coeff * m[k]
                for d0 in range(nd):
                    if not inf[d0] or seen[d0]:
                        continue
                    hol = 1
                    d = d0
                    while not seen[d]:
                        seen[d] = 1
                        hol = hol * ph[d]
                        d = rinv[rev[d]]
                        while not inf[d]:
                            d = rinv[d]
                    coeff = coeff * (1 - hol)
                total = total + coeff
            mask += 1
    finally:
        free(inf)
        free(seen)
        free(parent)
        free(nedges)
        free(nverts)
    return complex(total)
