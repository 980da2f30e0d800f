"""Generators for the standard isoradial maps.

Dart numbering is frozen: edge ``k`` owns darts ``2k`` (forward) and
``2k + 1`` (backward).

square n x m
    vertex ``(i, j)`` has index ``i + n*j``; edge ``2v`` is the horizontal
    edge ``(i, j) -> (i+1, j)`` and edge ``2v + 1`` the vertical edge
    ``(i, j) -> (i, j+1)``.  Counterclockwise order at a vertex:
    east, north, west, south.  For ``n = m = 1`` the darts are
    ``h = 0, h̄ = 1, v = 2, v̄ = 3`` with rotation cycle ``(h v h̄ v̄)``.
triangular n x m
    edges ``3v + k`` leave ``(i, j)`` towards ``(i+1, j)``, ``(i, j+1)``,
    ``(i-1, j+1)`` (directions 0, 60 and 120 degrees).
hexagonal n x m
    cell ``c = i + n*j`` holds vertices ``A = 2c`` and ``B = 2c + 1``;
    edges ``3c + k`` leave ``A(i, j)`` towards ``B(i, j)``, ``B(i, j-1)``
    and ``B(i+1, j-1)`` (directions 90, 210 and 330 degrees).
"""

from __future__ import annotations

from typing import Sequence

from .angles import AnglePi
from .ribbon import IsoradialMap, build_isoradial_map
from .errors import SizeOverflow

MAX_DARTS = 20000

_THETA = {"square": AnglePi(1, 4), "triangular": AnglePi(1, 6), "hexagonal": AnglePi(1, 3)}


def _fwd(k: int) -> int:
    return 2 * k


def _bwd(k: int) -> int:
    return 2 * k + 1


def _assemble(n_edges: int, fans: list[list[int]], theta: AnglePi) -> IsoradialMap:
    dart_count = 2 * n_edges
    reversal = [d ^ 1 for d in range(dart_count)]
    rotation = [0] * dart_count
    for fan in fans:
        for a, b in zip(fan, fan[1:] + fan[:1]):
            rotation[a] = b
    return build_isoradial_map(dart_count, reversal, rotation, [theta] * n_edges)


def gen_torus_lattice(kind: str, n: int, m: int, max_darts: int = MAX_DARTS) -> IsoradialMap:
    """An ``n x m`` fundamental domain of a periodic lattice glued into a flat torus."""
    if kind not in _THETA:
        raise ValueError(f"unknown lattice kind {kind!r}")
    if n < 1 or m < 1:
        raise ValueError("lattice sizes must be >= 1")
    per_cell = {"square": 2, "triangular": 3, "hexagonal": 3}[kind]
    if 2 * per_cell * n * m > max_darts:
        raise SizeOverflow(f"{kind} {n}x{m} lattice exceeds {max_darts} darts")

    def cell(i, j):
        return (i % n) + n * (j % m)

    fans = []
    if kind == "square":
        for j in range(m):
            for i in range(n):
                v = cell(i, j)
                fans.append([
                    _fwd(2 * v),
                    _fwd(2 * v + 1),
                    _bwd(2 * cell(i - 1, j)),
                    _bwd(2 * cell(i, j - 1) + 1),
                ])
        return _assemble(2 * n * m, fans, _THETA[kind])

    if kind == "triangular":
        for j in range(m):
            for i in range(n):
                v = cell(i, j)
                fans.append([
                    _fwd(3 * v),
                    _fwd(3 * v + 1),
                    _fwd(3 * v + 2),
                    _bwd(3 * cell(i - 1, j)),
                    _bwd(3 * cell(i, j - 1) + 1),
                    _bwd(3 * cell(i + 1, j - 1) + 2),
                ])
        return _assemble(3 * n * m, fans, _THETA[kind])

    # hexagonal: A-vertices then B-vertex fans per cell
    for j in range(m):
        for i in range(n):
            c = cell(i, j)
            fans.append([_fwd(3 * c), _fwd(3 * c + 1), _fwd(3 * c + 2)])
            # B(i, j): 30 deg to A(i, j+1), 150 deg to A(i-1, j+1), 270 deg to A(i, j)
            fans.append([
                _bwd(3 * cell(i, j + 1) + 1),
                _bwd(3 * cell(i - 1, j + 1) + 2),
                _bwd(3 * c),
            ])
    return _assemble(3 * n * m, fans, _THETA[kind])


def star_construction(
    edges: Sequence[tuple[int, int]],
    theta: AnglePi,
    cyclic_orders: dict[int, Sequence[tuple[int, int]]] | None = None,
) -> IsoradialMap:
    """Glue isosceles triangles of apex angle ``2*theta`` around every vertex.

    ``edges[k] = (u, v)`` becomes darts ``2k`` (leaving ``u``) and ``2k+1``
    (leaving ``v``).  ``cyclic_orders[w]`` lists the half-edges at ``w`` as
    ``(k, side)`` pairs, side 0 being the ``u`` end; the default order is by
    edge index.  The cone angle at ``w`` is ``2*theta*deg(w)``; whether it
    satisfies any hypothesis is left to :func:`~kwising.ribbon.check_hypotheses`.
    """
    theta = AnglePi.of(theta)
    if cyclic_orders is None:
        cyclic_orders = {}
        for k, (u, v) in enumerate(edges):
            cyclic_orders.setdefault(u, []).append((k, 0))
            cyclic_orders.setdefault(v, []).append((k, 1))
    fans = []
    for w in sorted(cyclic_orders):
        fan = [2 * k + side for k, side in cyclic_orders[w]]
        for k, side in cyclic_orders[w]:
            if edges[k][side] != w:
                raise ValueError(f"half-edge {(k, side)} does not end at vertex {w}")
        fans.append(fan)
    covered = sorted(d for fan in fans for d in fan)
    if covered != list(range(2 * len(edges))):
        raise ValueError("cyclic orders must list every half-edge exactly once")
    return _assemble(len(edges), fans, theta)


def gen_genus2_bouquet() -> IsoradialMap:
    """One vertex, loops a, b, c, d with rotation word ``a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹``, theta = 3pi/8."""
    order = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (3, 0), (2, 1), (3, 1)]
    return star_construction([(0, 0)] * 4, AnglePi(3, 8), {0: order})
