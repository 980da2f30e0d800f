"""Combinatorial maps carrying exact half-rhombus angles.

A map is a set of darts ``0..2|E|-1`` with two permutations: the reversal
``J`` (a fixed-point-free involution) and the rotation ``R`` sending a dart
to the next dart counterclockwise around its origin.  Vertices are the
orbits of ``R`` and faces are the orbits of ``e -> R^{-1}(J(e))``; with
this convention a face walk keeps its face on the left.

Edges are reversal orbits, numbered in increasing order of their smaller
dart.  An :class:`IsoradialMap` attaches a half-rhombus angle ``theta_e``
in ``(0, pi/2)`` to every edge; all geometry of the flat surface (cone
angles, corner angles, turning angles) is derived from that data.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .angles import PI, ZERO, AnglePi
from .errors import (
    BacktrackTransition,
    NonOrientableOrInconsistent,
    NotAnInvolution,
    NotAPermutation,
    ThetaOutOfRange,
)

HALF_PI = AnglePi(1, 2)


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        out.append(tuple(orbit))
    return out


def _check_permutation(name: str, perm: Sequence[int], n: int) -> None:
    if len(perm) != n:
        raise NotAPermutation(f"{name} has length {len(perm)}, expected {n}")
    if sorted(perm) != list(range(n)):
        raise NotAPermutation(f"{name} is not a permutation of 0..{n - 1}")


@dataclass(frozen=True, eq=False)
class CombinatorialMap:
    """An oriented combinatorial map without angle data."""

    reversal: tuple[int, ...]
    rotation: tuple[int, ...]

    @property
    def dart_count(self) -> int:
        return len(self.reversal)

    @cached_property
    def rotation_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.dart_count
        for d, r in enumerate(self.rotation):
            inv[r] = d
        return tuple(inv)

    @cached_property
    def face_step(self) -> tuple[int, ...]:
        """The permutation ``e -> R^{-1}(J(e))`` whose orbits are the faces."""
        rinv = self.rotation_inverse
        return tuple(rinv[self.reversal[d]] for d in range(self.dart_count))

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return _orbits(self.rotation)

    @cached_property
    def faces(self) -> list[tuple[int, ...]]:
        return _orbits(self.face_step)

    @cached_property
    def origin(self) -> tuple[int, ...]:
        out = [0] * self.dart_count
        for v, orbit in enumerate(self.vertices):
            for d in orbit:
                out[d] = v
        return tuple(out)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        out = [0] * self.dart_count
        for f, orbit in enumerate(self.faces):
            for d in orbit:
                out[d] = f
        return tuple(out)

    def terminus(self, d: int) -> int:
        return self.origin[self.reversal[d]]

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(d, J(d))`` with ``d < J(d)``, sorted by ``d``."""
        return [(d, self.reversal[d]) for d in range(self.dart_count) if d < self.reversal[d]]

    @cached_property
    def edge_of(self) -> np.ndarray:
        out = np.empty(self.dart_count, dtype=np.int64)
        for k, (a, b) in enumerate(self.edges):
            out[a] = k
            out[b] = k
        return out

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return self.dart_count // 2

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def is_connected(self) -> bool:
        n = self.dart_count
        if n == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            d = queue.popleft()
            for e in (self.reversal[d], self.rotation[d], self.rotation_inverse[d]):
                if e not in seen:
                    seen.add(e)
                    queue.append(e)
        return len(seen) == n

    def validate(self) -> None:
        n = self.dart_count
        if n == 0 or n % 2:
            raise NotAnInvolution(f"dart count must be even and positive, got {n}")
        _check_permutation("reversal", self.reversal, n)
        _check_permutation("rotation", self.rotation, n)
        for d, e in enumerate(self.reversal):
            if e == d or self.reversal[e] != d:
                raise NotAnInvolution(f"reversal is not a fixed-point-free involution at dart {d}")
        if not self.is_connected():
            raise NonOrientableOrInconsistent("map is not connected")
        chi = self.euler_characteristic
        if chi % 2 or chi > 2:
            raise NonOrientableOrInconsistent(f"Euler characteristic {chi} gives no integer genus >= 0")


@dataclass(frozen=True, eq=False)
class IsoradialMap(CombinatorialMap):
    """A combinatorial map with one exact half-rhombus angle per edge."""

    theta: tuple[AnglePi, ...] = field(default=())

    def validate(self) -> None:
        super().validate()
        if len(self.theta) != self.n_edges:
            raise ThetaOutOfRange(f"expected {self.n_edges} angles, got {len(self.theta)}")
        for k, t in enumerate(self.theta):
            if not (ZERO < t < HALF_PI):
                raise ThetaOutOfRange(f"theta of edge {k} is {t}, outside (0, pi/2)")

    def dart_theta(self, d: int) -> AnglePi:
        return self.theta[self.edge_of[d]]

    @cached_property
    def theta_radians(self) -> np.ndarray:
        return np.array([t.radians() for t in self.theta])

    @cached_property
    def primal_cone_angles(self) -> list[AnglePi]:
        return [sum((2 * self.dart_theta(d) for d in orbit), ZERO) for orbit in self.vertices]

    @cached_property
    def dual_cone_angles(self) -> list[AnglePi]:
        return [sum((PI - 2 * self.dart_theta(d) for d in orbit), ZERO) for orbit in self.faces]


def build_isoradial_map(
    dart_count: int,
    reversal: Sequence[int],
    rotation: Sequence[int],
    theta: Sequence[AnglePi | Fraction | int | str],
) -> IsoradialMap:
    """Validate raw dart data and return the map; ``theta`` is given per edge."""
    if len(reversal) != dart_count:
        raise NotAnInvolution(f"reversal has length {len(reversal)}, expected {dart_count}")
    if len(rotation) != dart_count:
        raise NotAPermutation(f"rotation has length {len(rotation)}, expected {dart_count}")
    m = IsoradialMap(
        reversal=tuple(int(x) for x in reversal),
        rotation=tuple(int(x) for x in rotation),
        theta=tuple(AnglePi.of(t) for t in theta),
    )
    m.validate()
    return m


@dataclass(frozen=True)
class Topology:
    vertices: list[tuple[int, ...]]
    faces: list[tuple[int, ...]]
    euler_characteristic: int
    genus: int
    primal_cone_angles: list[AnglePi]
    dual_cone_angles: list[AnglePi]


def topology(m: IsoradialMap) -> Topology:
    return Topology(
        vertices=list(m.vertices),
        faces=list(m.faces),
        euler_characteristic=m.euler_characteristic,
        genus=m.genus,
        primal_cone_angles=list(m.primal_cone_angles),
        dual_cone_angles=list(m.dual_cone_angles),
    )


def gauss_bonnet_defect(m: IsoradialMap) -> AnglePi:
    """``sum(2pi - cone angle)`` over vertices and faces, minus ``2pi * chi``; zero for every map."""
    total = ZERO
    for a in m.primal_cone_angles + m.dual_cone_angles:
        total = total + (AnglePi(2) - a)
    return total - AnglePi(2 * m.euler_characteristic)


@dataclass(frozen=True)
class HypothesisReport:
    mode: str
    vertex_multipliers: list[Fraction]
    face_multipliers: list[Fraction]
    vertex_violators: list[int]
    face_violators: list[int]

    @property
    def passed(self) -> bool:
        return not self.vertex_violators and not self.face_violators

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "passed": self.passed,
            "vertex_multipliers": [str(x) for x in self.vertex_multipliers],
            "face_multipliers": [str(x) for x in self.face_multipliers],
            "vertex_violators": self.vertex_violators,
            "face_violators": self.face_violators,
        }


def _is_odd_integer(q: Fraction) -> bool:
    return q.denominator == 1 and q.numerator % 2 == 1


def check_hypotheses(m: IsoradialMap, mode: str = "all_odd") -> HypothesisReport:
    """Exact test of "cone angle / 2pi is an odd integer".

    ``all_odd`` checks vertices and faces, ``primal_odd`` only vertices.
    """
    if mode not in ("all_odd", "primal_odd"):
        raise ValueError(f"unknown hypothesis mode {mode!r}")
    vm = [a.turns for a in m.primal_cone_angles]
    fm = [a.turns for a in m.dual_cone_angles]
    vbad = [v for v, q in enumerate(vm) if not _is_odd_integer(q)]
    fbad = [f for f, q in enumerate(fm) if not _is_odd_integer(q)] if mode == "all_odd" else []
    return HypothesisReport(mode, vm, fm, vbad, fbad)


def corner_beta(m: IsoradialMap, e: int, e_next: int) -> AnglePi:
    """Counterclockwise angle at ``t(e)`` from ``e_next`` to the reversal of ``e``.

    Accumulated exactly as the sum of ``theta(d) + theta(R(d))`` over the
    rotation steps from ``e_next`` to ``J(e)``, so the result lies in
    ``(0, cone angle)`` even at singular vertices.
    """
    eb = m.reversal[e]
    if e_next == eb:
        raise BacktrackTransition(f"dart {e_next} reverses dart {e}")
    if m.origin[e_next] != m.origin[eb]:
        raise ValueError(f"dart {e_next} does not start where dart {e} ends")
    total = ZERO
    d = e_next
    while d != eb:
        nxt = m.rotation[d]
        total = total + m.dart_theta(d) + m.dart_theta(nxt)
        d = nxt
    return total


def _check_closed(m: CombinatorialMap, walk: Sequence[int]) -> None:
    if not walk:
        raise ValueError("empty walk")
    for a, b in zip(walk, list(walk[1:]) + [walk[0]]):
        if m.terminus(a) != m.origin[b]:
            raise ValueError(f"walk is not closed: dart {a} does not lead to dart {b}")


def turning_alpha(m: IsoradialMap, walk: Sequence[int]) -> AnglePi:
    """Total turning ``sum(pi - beta)`` of a closed non-backtracking walk."""
    _check_closed(m, walk)
    total = ZERO
    n = len(walk)
    for k in range(n):
        total = total + (PI - corner_beta(m, walk[k], walk[(k + 1) % n]))
    return total


def dual(m: IsoradialMap) -> IsoradialMap:
    """The dual map with half-angles ``pi/2 - theta``.

    Dual dart ``e*`` keeps the index of ``e``; it runs from the face of
    ``e`` to the face of ``J(e)``.  The dual rotation is the face step, so
    dual vertices are primal faces and dual faces are primal vertices.
    """
    theta = tuple(HALF_PI - t for t in m.theta)
    d = IsoradialMap(reversal=m.reversal, rotation=m.face_step, theta=theta)
    d.validate()
    return d


@dataclass(frozen=True)
class QuadGraph:
    """The rhombic (quad) graph on ``V(G) u V(G*)``.

    Quad dart ``2e`` runs from ``o(e)`` to the face of ``e`` (the corner of
    ``e``), quad dart ``2e+1`` is its reversal.  Quad vertices are numbered
    primal vertices first, then faces.
    """

    quad_map: CombinatorialMap
    primal_edge_paths: list[tuple[int, int]]
    dual_edge_paths: list[tuple[int, int]]
    vertex_of_primal: list[int]
    vertex_of_face: list[int]


def quad_graph(m: CombinatorialMap) -> QuadGraph:
    n = m.dart_count
    fstep = m.face_step
    reversal = [0] * (2 * n)
    rotation = [0] * (2 * n)
    for e in range(n):
        reversal[2 * e] = 2 * e + 1
        reversal[2 * e + 1] = 2 * e
        rotation[2 * e] = 2 * m.rotation[e]
        rotation[2 * e + 1] = 2 * fstep[e] + 1
    q = CombinatorialMap(reversal=tuple(reversal), rotation=tuple(rotation))
    q.validate()
    # primal dart e = corner(e) then back from the face to t(e) along corner(face_step(e))
    primal = [(2 * e, 2 * fstep[e] + 1) for e in range(n)]
    # dual dart e* = face(e) -> t(e) -> face(J(e))
    dual_paths = [(2 * fstep[e] + 1, 2 * m.reversal[e]) for e in range(n)]
    vp = [q.origin[2 * m.vertices[v][0]] for v in range(m.n_vertices)]
    vf = [q.origin[2 * m.faces[f][0] + 1] for f in range(m.n_faces)]
    return QuadGraph(q, primal, dual_paths, vp, vf)


def canonical_code(m: CombinatorialMap) -> tuple:
    """Lexicographically minimal relabeling code over all starting darts."""
    n = m.dart_count
    theta = getattr(m, "theta", None)
    best = None
    for start in range(n):
        label = {start: 0}
        order = [start]
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for e in (m.reversal[d], m.rotation[d]):
                if e not in label:
                    label[e] = len(order)
                    order.append(e)
        rev = tuple(label[m.reversal[d]] for d in order)
        rot = tuple(label[m.rotation[d]] for d in order)
        th = tuple(theta[m.edge_of[d]].multiple_of_pi for d in order) if theta else ()
        code = (rev, rot, th)
        if best is None or code < best:
            best = code
    return best


def is_isomorphic(a: CombinatorialMap, b: CombinatorialMap) -> bool:
    if a.dart_count != b.dart_count:
        return False
    return canonical_code(a) == canonical_code(b)
