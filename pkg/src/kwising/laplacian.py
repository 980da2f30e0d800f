"""Twisted discrete Laplacians.

``(Delta f)(v) = sum over darts e = (v, w) of x_e (f(v) - phi(e) f(w))``.
Works on any weighted map; no angle hypothesis is used.
"""

from __future__ import annotations

import numpy as np

from .cohomology import Cocycle, SpinStructure
from .linalg import det


def _dart_phases(m, phi) -> np.ndarray:
    if phi is None:
        return np.ones(m.dart_count, dtype=complex)
    if isinstance(phi, SpinStructure):
        phi = phi.cocycle
    if isinstance(phi, Cocycle):
        return phi.values
    return np.asarray(phi, dtype=complex)


def _edge_weights(m, weights) -> np.ndarray:
    if weights is None:
        return np.tan(m.theta_radians).astype(complex)
    w = getattr(weights, "values", weights)
    w = np.asarray(w, dtype=complex)
    if w.shape != (m.n_edges,):
        raise ValueError(f"expected {m.n_edges} weights, got shape {w.shape}")
    return w


def laplacian_matrix(m, weights=None, phi=None) -> np.ndarray:
    """Dense ``|V| x |V|`` matrix; ``weights`` default to ``c_e = tan theta_e``."""
    x = _edge_weights(m, weights)[m.edge_of]
    ph = _dart_phases(m, phi)
    org = np.array(m.origin)
    ter = org[list(m.reversal)]
    lap = np.zeros((m.n_vertices, m.n_vertices), dtype=complex)
    np.add.at(lap, (org, org), x)
    np.add.at(lap, (org, ter), -x * ph)
    return lap


def det_laplacian(m, weights=None, phi=None) -> complex:
    return det(laplacian_matrix(m, weights, phi))


def laplacian_scale(m, weights=None) -> float:
    """Bound on ``|det Delta|`` for unimodular phases: product over vertices of twice the weighted degree."""
    x = np.abs(_edge_weights(m, weights))[m.edge_of]
    deg = np.zeros(m.n_vertices)
    np.add.at(deg, np.array(m.origin), x)
    return float(np.prod(2 * deg))
