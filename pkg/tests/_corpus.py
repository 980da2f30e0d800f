"""Maps shared by the test modules."""

from __future__ import annotations

from functools import lru_cache

from kwising import AnglePi, build_isoradial_map, gen_genus2_bouquet, gen_torus_lattice, star_construction
from kwising.ribbon import check_hypotheses, dual


def rectangular_torus(n: int, m: int, a: AnglePi) -> object:
    """Square-lattice torus with horizontal half-angle ``a`` and vertical ``pi/2 - a``."""
    sq = gen_torus_lattice("square", n, m)
    theta = [a if k % 2 == 0 else AnglePi(1, 2) - a for k in range(sq.n_edges)]
    return build_isoradial_map(sq.dart_count, sq.reversal, sq.rotation, theta)


@lru_cache(maxsize=None)
def ising_corpus() -> dict:
    """Maps whose cone angles are all odd multiples of 2pi."""
    maps = {
        "square-1x1": gen_torus_lattice("square", 1, 1),
        "square-2x1": gen_torus_lattice("square", 2, 1),
        "square-2x2": gen_torus_lattice("square", 2, 2),
        "square-3x3": gen_torus_lattice("square", 3, 3),
        "rect-2x2": rectangular_torus(2, 2, AnglePi(1, 6)),
        "rect-3x2": rectangular_torus(3, 2, AnglePi(1, 5)),
        "triangular-1x1": gen_torus_lattice("triangular", 1, 1),
        "triangular-2x1": gen_torus_lattice("triangular", 2, 1),
        "triangular-2x2": gen_torus_lattice("triangular", 2, 2),
        "hexagonal-1x1": gen_torus_lattice("hexagonal", 1, 1),
        "hexagonal-2x1": gen_torus_lattice("hexagonal", 2, 1),
        "hexagonal-2x2": gen_torus_lattice("hexagonal", 2, 2),
        "bouquet": gen_genus2_bouquet(),
        "bouquet-dual": dual(gen_genus2_bouquet()),
    }
    for name, m in maps.items():
        assert check_hypotheses(m, "all_odd").passed, name
    return maps


def small_ising_corpus(max_edges: int = 12) -> dict:
    return {k: m for k, m in ising_corpus().items() if m.n_edges <= max_edges}


@lru_cache(maxsize=None)
def graph_corpus() -> dict:
    """Weighted graphs for the Laplacian, including loops and multiple edges; no angle hypothesis."""
    q = AnglePi(1, 4)
    graphs = {
        "single-loop": star_construction([(0, 0)], q),
        "theta-graph": star_construction([(0, 1), (0, 1), (0, 1)], q),
        "loops-and-multi": star_construction([(0, 1), (0, 1), (0, 0), (1, 1)], AnglePi(1, 3)),
        "k4": star_construction([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], AnglePi(1, 5)),
        "triangle-with-loops": star_construction([(0, 1), (1, 2), (2, 0), (0, 0), (2, 2)], AnglePi(2, 7)),
        "double-bouquet": star_construction([(0, 0), (0, 0), (0, 1), (1, 1), (1, 1)], AnglePi(1, 8)),
    }
    graphs.update(small_ising_corpus())
    return graphs
