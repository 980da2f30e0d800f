"""Time the compiled kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat N]

Each row runs one oracle-sized workload through both backends, checks the
results agree and prints the best-of-N wall time.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from kwising import _kernels_py, gen_genus2_bouquet, gen_torus_lattice
from kwising.cohomology import character_to_cocycle, random_character
from kwising.oracles import cycle_space_basis

try:
    from kwising import _kernels
except ImportError:  # extension not built
    _kernels = None


def workloads():
    rng = np.random.default_rng(0)
    sq = gen_torus_lattice("square", 3, 3)
    x = np.tan(sq.theta_radians / 2).astype(complex)
    yield "even_subgraph_sum  square 3x3 (2^10)", "even_subgraph_sum", (cycle_space_basis(sq), x)

    big = gen_torus_lattice("square", 4, 4)
    xb = np.tan(big.theta_radians / 2).astype(complex)
    yield "even_subgraph_sum  square 4x4 (2^17)", "even_subgraph_sum", (cycle_space_basis(big), xb)

    eu = np.array([big.origin[a] for a, _ in big.edges], dtype=np.int64)
    ev = np.array([big.origin[b] for _, b in big.edges], dtype=np.int64)
    j = rng.uniform(0.1, 0.8, big.n_edges)
    yield "spin_config_sum    square 4x4 (2^16)", "spin_config_sum", (big.n_vertices, eu, ev, j)

    phi = character_to_cocycle(sq, random_character(sq, rng)).values
    first = np.array([a for a, _ in sq.edges], dtype=np.int64)
    su = np.array([sq.origin[a] for a, _ in sq.edges], dtype=np.int64)
    sv = np.array([sq.origin[b] for _, b in sq.edges], dtype=np.int64)
    c = np.tan(sq.theta_radians).astype(complex)
    yield "unicyclic_sum      square 3x3 (C(18,9))", "unicyclic_sum", (sq.n_vertices, su, sv, phi[first], c)

    cases = [("hexagonal 2x2", gen_torus_lattice("hexagonal", 2, 2)), ("square 3x2", gen_torus_lattice("square", 3, 2))]
    for name, m in cases + [("bouquet", gen_genus2_bouquet())]:
        ph = character_to_cocycle(m, random_character(m, rng)).values
        args = (
            m.n_vertices,
            np.array(m.origin, dtype=np.int64),
            np.array(m.reversal, dtype=np.int64),
            np.array(m.rotation_inverse, dtype=np.int64),
            np.array(m.edges, dtype=np.int64),
            ph,
            1j * np.tan(m.theta_radians),
        )
        yield f"boundary_sum       {name} (2^{m.n_edges})", "boundary_sum", args


def best_of(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled extension not available; only the Python backend can run")
    print(f"{'workload':40s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for label, name, wargs in workloads():
        tp, vp = best_of(getattr(_kernels_py, name), wargs, args.repeat)
        if _kernels is None:
            print(f"{label:40s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        tc, vc = best_of(getattr(_kernels, name), wargs, args.repeat)
        assert abs(vp - vc) <= 1e-9 * max(abs(vp), 1.0), (label, vp, vc)
        print(f"{label:40s} {tp:10.4f} {tc:10.4f} {tp / tc:7.0f}x")


if __name__ == "__main__":
    main()
