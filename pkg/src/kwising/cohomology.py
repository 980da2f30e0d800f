"""Characters, the discrete canonical bundle and discrete spin structures.

Everything is expressed in the tree-cotree gauge of a map: a BFS spanning
tree ``T`` of the graph, a BFS spanning tree of the dual graph among the
remaining edges (the cotree), and ``2g`` leftover edges whose fundamental
cycles form the canonical homology basis.  Every dart then carries an
integer vector ``vec[d]`` in ``Z^{2g}`` (zero on the tree, a unit vector on
leftover edges, fixed on cotree edges by the face relations), and a
cocycle with generator phases ``x`` has dart phase ``vec[d] . x``.  Face
products are therefore 1 identically, not just numerically.
"""

from __future__ import annotations

import cmath
import itertools
import weakref
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .angles import ZERO, AnglePi
from .errors import (
    DegenerateForm,
    DisconnectedGraph,
    GaussSumNotPM2g,
    HypothesisViolation,
    InconsistentSystem,
    NotPlusMinusOne,
    UnsolvableSigns,
)
from .ribbon import CombinatorialMap, IsoradialMap, check_hypotheses, turning_alpha

Walk = Sequence[int]


# ---------------------------------------------------------------------------
# cocycles


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Unit-modulus dart labels with ``phi(J e) = conj(phi(e))`` and trivial face products.

    ``phases`` holds exact arguments when known; ``values`` is always set.
    """

    host: CombinatorialMap
    values: np.ndarray
    phases: tuple[AnglePi, ...] | None = None

    @classmethod
    def trivial(cls, host: CombinatorialMap) -> Cocycle:
        return cls.from_phases(host, [ZERO] * host.dart_count)

    @classmethod
    def from_phases(cls, host: CombinatorialMap, phases: Sequence[AnglePi]) -> Cocycle:
        phases = tuple(AnglePi.of(p) for p in phases)
        values = np.array([p.exp_i() for p in phases], dtype=complex)
        return cls(host, values, phases)

    @classmethod
    def from_values(cls, host: CombinatorialMap, values) -> Cocycle:
        return cls(host, np.asarray(values, dtype=complex))

    @property
    def is_exact(self) -> bool:
        return self.phases is not None

    def holonomy(self, walk: Walk) -> complex:
        out = 1 + 0j
        for d in walk:
            out *= self.values[d]
        return complex(out)

    def exact_holonomy(self, walk: Walk) -> AnglePi:
        if self.phases is None:
            raise ValueError("cocycle has no exact phases")
        return sum((self.phases[d] for d in walk), ZERO)

    def __mul__(self, other: Cocycle) -> Cocycle:
        if self.host is not other.host:
            raise ValueError("cocycles live on different maps")
        if self.phases is not None and other.phases is not None:
            return Cocycle.from_phases(self.host, [a + b for a, b in zip(self.phases, other.phases)])
        return Cocycle(self.host, self.values * other.values)

    def times_coboundary(self, vertex_values) -> Cocycle:
        """Gauge change: multiply ``phi(e)`` by ``g(t(e)) / g(o(e))``."""
        g = np.asarray(vertex_values, dtype=complex)
        h = self.host
        ter = np.array([h.terminus(d) for d in range(h.dart_count)])
        org = np.array(h.origin)
        return Cocycle(h, self.values * g[ter] / g[org])

    def check(self, tol: float = 1e-12) -> None:
        h = self.host
        if self.phases is not None:
            for d in range(h.dart_count):
                if (self.phases[d] + self.phases[h.reversal[d]]).mod_2pi() != ZERO:
                    raise InconsistentSystem(f"phase of dart {d} is not antisymmetric")
            for f in h.faces:
                if self.exact_holonomy(f).mod_2pi() != ZERO:
                    raise InconsistentSystem(f"face {f} has nontrivial holonomy")
            return
        v = self.values
        if np.max(np.abs(np.abs(v) - 1)) > tol:
            raise InconsistentSystem("cocycle values are not unimodular")
        if np.max(np.abs(v[list(h.reversal)] - np.conj(v))) > tol:
            raise InconsistentSystem("cocycle is not conjugation symmetric")
        for f in h.faces:
            if abs(self.holonomy(f) - 1) > tol:
                raise InconsistentSystem(f"face {f} has nontrivial holonomy")


# ---------------------------------------------------------------------------
# tree-cotree decomposition


@dataclass(frozen=True)
class TreeCotree:
    root: int
    parent_dart: list[int | None]
    depth: list[int]
    tree_edges: list[int]
    chords: list[int]
    fundamental_cycles: list[tuple[int, ...]]
    cotree_edges: list[int]
    generators: list[int]
    homology_basis: list[tuple[int, ...]]
    gen_vectors: np.ndarray = field(repr=False)

    @property
    def spanning_tree_darts(self) -> list[int]:
        return [d for d in self.parent_dart if d is not None]


def _tree_path(m: CombinatorialMap, parent: list, depth: list, a: int, b: int) -> list[int]:
    """Darts of the tree path from vertex ``a`` to vertex ``b``."""
    up, down = [], []
    while depth[a] > depth[b]:
        d = parent[a]
        up.append(m.reversal[d])
        a = m.origin[d]
    while depth[b] > depth[a]:
        d = parent[b]
        down.append(d)
        b = m.origin[d]
    while a != b:
        da, db = parent[a], parent[b]
        up.append(m.reversal[da])
        a = m.origin[da]
        down.append(db)
        b = m.origin[db]
    return up + down[::-1]


def _compute_tree_cotree(m: CombinatorialMap) -> TreeCotree:
    nv = m.n_vertices
    parent: list = [None] * nv
    depth = [-1] * nv
    depth[0] = 0
    queue = deque([0])
    tree = set()
    while queue:
        v = queue.popleft()
        for d in m.vertices[v]:
            w = m.terminus(d)
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = d
                tree.add(int(m.edge_of[d]))
                queue.append(w)
    if min(depth) < 0:
        raise DisconnectedGraph("graph is not connected")

    edges = m.edges
    chords = [k for k in range(m.n_edges) if k not in tree]
    cycles = []
    for k in chords:
        c = edges[k][0]
        cycles.append(tuple([c] + _tree_path(m, parent, depth, m.terminus(c), m.origin[c])))

    # spanning tree of the dual graph using chord edges only
    nf = m.n_faces
    chord_set = set(chords)
    fparent: list = [None] * nf
    fseen = [False] * nf
    fseen[0] = True
    forder = [0]
    queue = deque([0])
    cotree = set()
    while queue:
        f = queue.popleft()
        for d in m.faces[f]:
            k = int(m.edge_of[d])
            if k not in chord_set:
                continue
            g = m.face_of[m.reversal[d]]
            if not fseen[g]:
                fseen[g] = True
                fparent[g] = m.reversal[d]  # dart of the cotree edge lying on face g
                cotree.add(k)
                forder.append(g)
                queue.append(g)
    generators = [k for k in chords if k not in cotree]
    ngen = len(generators)
    if ngen != 2 - m.euler_characteristic:
        raise InconsistentSystem(f"{ngen} generators for genus {m.genus}")

    vec = np.zeros((m.dart_count, ngen), dtype=np.int64)
    for i, k in enumerate(generators):
        a, b = edges[k]
        vec[a, i] = 1
        vec[b, i] = -1
    for g in reversed(forder[1:]):
        d = fparent[g]
        rest = np.zeros(ngen, dtype=np.int64)
        for e in m.faces[g]:
            if e != d:
                rest += vec[e]
        vec[d] = -rest
        vec[m.reversal[d]] = rest
    basis = [cycles[chords.index(k)] for k in generators]
    return TreeCotree(
        root=0,
        parent_dart=parent,
        depth=depth,
        tree_edges=sorted(tree),
        chords=chords,
        fundamental_cycles=cycles,
        cotree_edges=sorted(cotree),
        generators=generators,
        homology_basis=basis,
        gen_vectors=vec,
    )


_TC_CACHE: "weakref.WeakKeyDictionary[CombinatorialMap, TreeCotree]" = weakref.WeakKeyDictionary()


def tree_cotree_basis(m: CombinatorialMap) -> TreeCotree:
    tc = _TC_CACHE.get(m)
    if tc is None:
        tc = _compute_tree_cotree(m)
        _TC_CACHE[m] = tc
    return tc


def homology_basis(m: CombinatorialMap) -> list[tuple[int, ...]]:
    """The canonical ordered basis of ``2g`` simple closed walks."""
    return tree_cotree_basis(m).homology_basis


# ---------------------------------------------------------------------------
# characters


@dataclass(frozen=True)
class Character:
    """One unit value per basis walk; entries may be exact (:class:`AnglePi` phases) or complex."""

    basis: list[tuple[int, ...]]
    values: list

    def __post_init__(self):
        if len(self.basis) != len(self.values):
            raise ValueError("basis and values differ in length")

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, AnglePi) for v in self.values)


def canonical_character(m: CombinatorialMap, values) -> Character:
    return Character(homology_basis(m), list(values))


def _solve_fraction(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    rows = [list(r) + [v] for r, v in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise InconsistentSystem("basis walks are not independent in homology")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


def _generator_phases(m: CombinatorialMap, character: Character):
    tc = tree_cotree_basis(m)
    vec = tc.gen_vectors
    ngen = vec.shape[1]
    if len(character.basis) != ngen:
        raise ValueError(f"character needs {ngen} basis values, got {len(character.basis)}")
    a = np.array([vec[list(w)].sum(axis=0) if len(w) else np.zeros(ngen, dtype=np.int64) for w in character.basis])
    identity = ngen == 0 or np.array_equal(a, np.eye(ngen, dtype=np.int64))
    if character.is_exact:
        b = [v.multiple_of_pi for v in character.values]
        if identity:
            return [AnglePi(x) for x in b]
        x = _solve_fraction([[Fraction(int(v)) for v in row] for row in a], b)
        return [AnglePi(q) for q in x]
    b = np.array([cmath.phase(complex(v.exp_i() if isinstance(v, AnglePi) else v)) for v in character.values])
    if identity:
        return b
    if abs(np.linalg.det(a)) < 0.5:
        raise InconsistentSystem("basis walks are not independent in homology")
    return np.linalg.solve(a.astype(float), b)


def character_to_cocycle(m: CombinatorialMap, character: Character) -> Cocycle:
    """A cocycle whose holonomy along each basis walk is the prescribed value."""
    x = _generator_phases(m, character)
    vec = tree_cotree_basis(m).gen_vectors
    if character.is_exact:
        phases = []
        for d in range(m.dart_count):
            phases.append(sum((int(c) * g for c, g in zip(vec[d], x)), ZERO))
        return Cocycle.from_phases(m, phases)
    ang = vec @ np.asarray(x, dtype=float) if vec.shape[1] else np.zeros(m.dart_count)
    return Cocycle(m, np.exp(1j * ang))


def h1_mod2_reps(m: CombinatorialMap) -> list[Cocycle]:
    """One {+1, -1}-valued cocycle per class of H^1(surface; Z2), indexed by sign bits on the basis."""
    vec = tree_cotree_basis(m).gen_vectors
    ngen = vec.shape[1]
    out = []
    for bits in itertools.product((0, 1), repeat=ngen):
        par = (vec @ np.array(bits, dtype=np.int64)) % 2 if ngen else np.zeros(m.dart_count, dtype=np.int64)
        out.append(Cocycle.from_phases(m, [AnglePi(int(p)) for p in par]))
    return out


def sign_characters(m: CombinatorialMap) -> list[Character]:
    basis = homology_basis(m)
    return [Character(basis, [AnglePi(b) for b in bits]) for bits in itertools.product((0, 1), repeat=len(basis))]


def random_character(m: CombinatorialMap, rng: np.random.Generator) -> Character:
    basis = homology_basis(m)
    return Character(basis, list(np.exp(2j * np.pi * rng.random(len(basis)))))


# ---------------------------------------------------------------------------
# canonical bundle and spin structures


def _require_multiples_of_2pi(m: IsoradialMap) -> None:
    bad = [v for v, a in enumerate(m.primal_cone_angles) if not a.is_multiple_of_2pi()]
    badf = [f for f, a in enumerate(m.dual_cone_angles) if not a.is_multiple_of_2pi()]
    if bad or badf:
        raise HypothesisViolation(f"cone angles not multiples of 2pi at vertices {bad}, faces {badf}")


def canonical_bundle(m: IsoradialMap) -> Cocycle:
    """Exact cocycle ``kappa`` with ``kappa(gamma) = exp(-i alpha(gamma))`` on closed walks."""
    _require_multiples_of_2pi(m)
    tc = tree_cotree_basis(m)
    values = [-turning_alpha(m, w) for w in tc.homology_basis]
    kappa = character_to_cocycle(m, Character(tc.homology_basis, values))
    for w in tc.fundamental_cycles:
        if (kappa.exact_holonomy(w) + turning_alpha(m, w)).mod_2pi() != ZERO:
            raise InconsistentSystem(f"canonical bundle disagrees with holonomy on cycle {w}")
    return kappa


def _gf2_solve(rows: list[list[int]], rhs: list[int], ncols: int) -> list[int] | None:
    """Solve over GF(2); returns one solution or None."""
    a = [r[:] + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    if any(row[ncols] for row in a[r:]):
        return None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = a[i][ncols]
    return x


def gf2_rank(mat) -> int:
    a = [list(int(x) % 2 for x in row) for row in mat]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                a[i] = [x ^ y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def _half_cocycle(m: IsoradialMap, kappa: Cocycle) -> Cocycle:
    """Halve the phases of ``kappa`` and repair face signs over GF(2)."""
    half = [p / 2 for p in kappa.phases]
    # half-phases must stay antisymmetric: use the representative of the smaller dart
    for a, b in m.edges:
        half[b] = -half[a]
    face_bits = []
    for f in m.faces:
        t = sum((half[d] for d in f), ZERO).mod_2pi()
        if t == ZERO:
            face_bits.append(0)
        elif t == AnglePi(1):
            face_bits.append(1)
        else:
            raise UnsolvableSigns(f"face holonomy {t} of the half bundle is not a sign")
    if any(face_bits):
        rows = []
        for f in m.faces:
            row = [0] * m.n_edges
            for d in f:
                row[m.edge_of[d]] ^= 1
            rows.append(row)
        shift = _gf2_solve(rows, face_bits, m.n_edges)
        if shift is None:
            raise UnsolvableSigns("no sign correction makes the half bundle a cocycle")
        for k, (a, b) in enumerate(m.edges):
            if shift[k]:
                half[a] = half[a] + AnglePi(1)
                half[b] = -half[a]
    return Cocycle.from_phases(m, half)


@dataclass(frozen=True, eq=False)
class SpinStructure:
    """A discrete spin structure ``lambda`` (``lambda^2 = kappa``) on an isoradial map."""

    host: IsoradialMap
    cocycle: Cocycle
    bits: tuple[int, ...]

    @cached_property
    def quadratic_values(self) -> list[int]:
        """``q`` on the canonical basis: winding-number parity plus one."""
        out = []
        for w in homology_basis(self.host):
            s = winding_sign(self.host, self, w)
            out.append((0 if s == 1 else 1) ^ 1)
        return out

    @cached_property
    def gauss_sum(self) -> int:
        return gauss_sum(self.quadratic_values, intersection_form_mod2(self.host, homology_basis(self.host)))

    @cached_property
    def arf(self) -> int:
        return arf(self.host, self)

    def is_trivial_class(self) -> bool:
        """True when ``lambda`` is cohomologous to the constant cocycle 1."""
        return all(self.cocycle.exact_holonomy(w).mod_2pi() == ZERO for w in homology_basis(self.host))


def spin_structures(m: IsoradialMap) -> list[SpinStructure]:
    """All ``2^{2g}`` discrete spin structures, ordered by their sign bits."""
    rep = check_hypotheses(m, "all_odd")
    if not rep.passed:
        raise HypothesisViolation(
            f"cone angles not odd multiples of 2pi at vertices {rep.vertex_violators}, faces {rep.face_violators}"
        )
    kappa = canonical_bundle(m)
    base = _half_cocycle(m, kappa)
    out = []
    reps = h1_mod2_reps(m)
    ngen = len(homology_basis(m))
    for bits, sign in zip(itertools.product((0, 1), repeat=ngen), reps):
        lam = base * sign
        for d in range(m.dart_count):
            if (2 * lam.phases[d] - kappa.phases[d]).mod_2pi() != ZERO:
                raise UnsolvableSigns(f"lambda^2 differs from kappa at dart {d}")
        s = SpinStructure(m, lam, tuple(bits))
        for f in m.faces:
            if winding_sign(m, s, f) != -1:
                raise UnsolvableSigns(f"face {f} has even winding for spin structure {bits}")
        out.append(s)
    return out


def winding_sign(m: IsoradialMap, lam: SpinStructure | Cocycle, walk: Walk) -> int:
    """``lambda(walk) * exp(i alpha(walk) / 2)`` as an exact sign."""
    c = lam.cocycle if isinstance(lam, SpinStructure) else lam
    alpha = turning_alpha(m, walk)
    if c.is_exact:
        t = (c.exact_holonomy(walk) + alpha / 2).mod_2pi()
        if t == ZERO:
            return 1
        if t == AnglePi(1):
            return -1
        raise NotPlusMinusOne(f"winding phase {t} is not a sign")
    z = c.holonomy(walk) * (alpha / 2).exp_i()
    if abs(z - 1) < 1e-9:
        return 1
    if abs(z + 1) < 1e-9:
        return -1
    raise NotPlusMinusOne(f"winding value {z} is not a sign")


def _half_edge_counts(m: CombinatorialMap, walk: Walk) -> dict[int, int]:
    counts: dict[int, int] = {}
    for d in walk:
        for h in (d, m.reversal[d]):
            counts[h] = counts.get(h, 0) + 1
    return counts


def intersection_form_mod2(m: CombinatorialMap, basis: Sequence[Walk]) -> np.ndarray:
    """Mod-2 intersection numbers of closed walks.

    Walk ``i`` is pushed off to its left; at each visited vertex the pushed
    copy crosses the half-edges lying strictly between the outgoing dart and
    the reversed incoming dart (counterclockwise).  Counting the half-edges
    of walk ``j`` among them gives ``i . j`` mod 2.
    """
    n = len(basis)
    counts = [_half_edge_counts(m, w) for w in basis]
    form = np.zeros((n, n), dtype=np.int64)
    for i, w in enumerate(basis):
        sectors = []
        for k in range(len(w)):
            e_in, e_out = w[k - 1], w[k]
            stop = m.reversal[e_in]
            d = m.rotation[e_out]
            while d != stop:
                sectors.append(d)
                d = m.rotation[d]
        for j in range(n):
            if j != i:
                form[i, j] = sum(counts[j].get(d, 0) for d in sectors) % 2
    if not np.array_equal(form, form.T):
        raise DegenerateForm("intersection counts are not symmetric")
    if gf2_rank(form) != n:
        raise DegenerateForm(f"intersection form has rank {gf2_rank(form)} < {n}")
    return form


def gauss_sum(q_basis: Sequence[int], form: np.ndarray) -> int:
    """``sum over x in Z2^n of (-1)^q(x)`` with ``q(x+y) = q(x) + q(y) + x.y``."""
    n = len(q_basis)
    total = 0
    for bits in itertools.product((0, 1), repeat=n):
        q = 0
        for i in range(n):
            if bits[i]:
                q += q_basis[i]
                for j in range(i + 1, n):
                    if bits[j]:
                        q += int(form[i, j])
        total += -1 if q % 2 else 1
    return total


def arf(m: IsoradialMap, lam: SpinStructure) -> int:
    basis = homology_basis(m)
    g = len(basis) // 2
    s = gauss_sum(lam.quadratic_values, intersection_form_mod2(m, basis))
    if s == 2**g:
        return 0
    if s == -(2**g):
        return 1
    raise GaussSumNotPM2g(f"Gauss sum {s} is not +-{2 ** g}")
