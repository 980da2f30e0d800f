"""Command-line front end.

Every subcommand reads a map document (``--input`` or stdin), runs one
computation and prints a single JSON object.  ``gen`` and ``dual`` print
map documents instead.  Exit codes: 0 ok, 1 computational error, 2 usage
error, 3 hypothesis violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .angles import AnglePi
from .builders import gen_genus2_bouquet, gen_torus_lattice
from .cohomology import (
    Character,
    canonical_character,
    character_to_cocycle,
    homology_basis,
    random_character,
    sign_characters,
    spin_structures,
)
from .errors import HypothesisViolation, KWIsingError
from .identities import (
    delta_identity_check,
    duality_check,
    free_energy_table,
    kw_coupling_check,
    nonproportionality_probe,
)
from .kacward import WeightSystem, partition_function_kw, tau, vdw_convert
from .laplacian import det_laplacian, laplacian_matrix
from .mapio import MapDocument, read_map, write_map
from .oracles import even_subgraph_z, spin_config_z
from .ribbon import check_hypotheses, dual, quad_graph, topology

EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _cplx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def parse_value(text: str):
    """``exp:p/q`` (meaning e^{i pi p/q}) or a complex literal such as ``0.6+0.8i``."""
    text = text.strip()
    if text.startswith("exp:"):
        try:
            return AnglePi(Fraction(text[4:]))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad exponent in {text!r}") from None
    try:
        z = complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse character value {text!r}") from None
    if abs(abs(z) - 1) > 1e-9:
        raise UsageError(f"character value {text!r} is not unimodular")
    return z


def parse_character(text: str, basis) -> Character:
    vals = [parse_value(t) for t in text.split(",")]
    if len(vals) != len(basis):
        raise UsageError(f"character needs {len(basis)} values, got {len(vals)}")
    return Character(basis, vals)


def _characters(args, host, default_random: int = 0) -> list[Character]:
    basis = homology_basis(host)
    if args.character and args.all_sign_characters:
        raise UsageError("--character and --all-sign-characters are exclusive")
    if args.character:
        return [parse_character(args.character, basis)]
    if args.all_sign_characters:
        return sign_characters(host)
    k = getattr(args, "random_characters", None) or default_random
    if k:
        if args.seed is None:
            raise UsageError("random characters need --seed")
        rng = np.random.default_rng(args.seed)
        return [random_character(host, rng) for _ in range(k)]
    return [canonical_character(host, [AnglePi(0)] * len(basis))]


def _character_json(ch: Character) -> list:
    out = []
    for v in ch.values:
        if isinstance(v, AnglePi):
            out.append(f"exp:{v.numerator}/{v.denominator}")
        else:
            out.append(_cplx(v))
    return out


def _read_doc(args) -> MapDocument:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    return MapDocument.loads(text)


def _weights(args, m, doc: MapDocument, kind: str) -> WeightSystem:
    text = args.weights
    if text is None:
        if doc.weights is not None:
            return WeightSystem(np.array([float(w) for w in doc.weights]), "document")
        text = "critical"
    if text == "critical":
        return WeightSystem.critical_c(m) if kind == "c" else WeightSystem.critical_nu(m)
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad weights {text!r}") from None
    if len(vals) == 1:
        vals = vals * m.n_edges
    if len(vals) != m.n_edges:
        raise UsageError(f"need {m.n_edges} weights, got {len(vals)}")
    return WeightSystem(np.array(vals), "custom")


# -- commands -----------------------------------------------------------------


def cmd_gen(args):
    if args.kind == "bouquet":
        m = gen_genus2_bouquet()
        name = "genus2-bouquet"
    else:
        m = gen_torus_lattice(args.kind, args.n, args.m)
        name = f"{args.kind}-{args.n}x{args.m}"
    return write_map(m, name=name)


def cmd_dual(args, m, doc):
    return write_map(dual(m), name=f"dual-of-{doc.name}" if doc.name else None)


def cmd_validate(args, m, doc):
    t = topology(m)
    return {
        "vertices": m.n_vertices,
        "edges": m.n_edges,
        "faces": m.n_faces,
        "euler_characteristic": t.euler_characteristic,
        "genus": t.genus,
        "primal_cone_angles": [str(a) for a in t.primal_cone_angles],
        "dual_cone_angles": [str(a) for a in t.dual_cone_angles],
        "primal_odd": check_hypotheses(m, "primal_odd").passed,
    }


def cmd_spin_structures(args, m, doc):
    out = []
    for s in spin_structures(m):
        out.append(
            {
                "bits": list(s.bits),
                "arf": s.arf,
                "gauss_sum": s.gauss_sum,
                "quadratic_form": s.quadratic_values,
            }
        )
    return {"genus": m.genus, "count": len(out), "structures": out}


def cmd_tau(args, m, doc):
    x = _weights(args, m, doc, "nu")
    rows = []
    for ch in _characters(args, m):
        phi = character_to_cocycle(m, ch)
        rows.append({"character": _character_json(ch), "tau": _cplx(tau(m, x, phi))})
    return {"weights": x.kind, "results": rows}


def cmd_partition(args, m, doc):
    x = _weights(args, m, doc, "nu")
    if args.method == "kw":
        z = partition_function_kw(m, x)
    elif args.method == "oracle":
        z = even_subgraph_z(m, x).real
    else:
        xr = x.values.real
        if np.any(xr <= -1) or np.any(xr >= 1):
            raise UsageError("spin-sum method needs weights in (-1, 1)")
        j = np.arctanh(xr)
        prefactor, _ = vdw_convert(m, j)
        z = spin_config_z(m, j) / prefactor
    return {"method": args.method, "weights": x.kind, "Z": z}


def cmd_laplacian(args, m, doc):
    c = _weights(args, m, doc, "c")
    rows = []
    for ch in _characters(args, m):
        phi = character_to_cocycle(m, ch)
        row = {"character": _character_json(ch), "det": _cplx(det_laplacian(m, c, phi))}
        if args.matrix:
            row["matrix"] = [[_cplx(z) for z in r] for r in laplacian_matrix(m, c, phi)]
        rows.append(row)
    return {"weights": c.kind, "results": rows}


def _check_rows(reports, chars, tol):
    rows = [{"character": _character_json(ch), **r.to_dict(), "passed": r.passed(tol)} for ch, r in zip(chars, reports)]
    worst = max((r["residual"] for r in rows), default=0.0)
    return rows, worst, all(r["passed"] for r in rows)


def cmd_duality_check(args, m, doc):
    qm = quad_graph(m).quad_map
    chars = _characters(args, qm)
    reports = [duality_check(m, ch) for ch in chars]
    rows, worst, ok = _check_rows(reports, chars, args.tolerance)
    return {"character_basis": "quad-graph", "max_residual": worst, "passed": ok, "results": rows}, ok


def cmd_delta_check(args, m, doc):
    chars = _characters(args, m)
    reports = [delta_identity_check(m, ch) for ch in chars]
    rows, worst, ok = _check_rows(reports, chars, args.tolerance)
    return {"max_residual": worst, "passed": ok, "results": rows}, ok


def cmd_nonprop_probe(args, m, doc):
    chars = _characters(args, m, default_random=50)
    res = nonproportionality_probe(m, chars)
    ok = res.spread > args.spread_threshold
    return {**res.to_dict(), "spread_threshold": args.spread_threshold, "passed": ok}, ok


def cmd_coupling_check(args):
    if args.theta is not None:
        thetas = [float(Fraction(args.theta)) * math.pi]
    else:
        if args.seed is None:
            raise UsageError("--sweep needs --seed")
        rng = np.random.default_rng(args.seed)
        thetas = list(0.01 + (math.pi / 2 - 0.02) * rng.random(args.sweep))
    reports = [kw_coupling_check(t) for t in thetas]
    worst = max(r.residual for r in reports)
    ok = worst <= args.tolerance
    return {"count": len(reports), "max_residual": worst, "passed": ok, "first": reports[0].to_dict()}, ok


def cmd_free_energy(args):
    rows = free_energy_table(args.kind, args.n_max, args.structure)
    gaps = [r.gap for r in rows]
    monotone = all(b <= a for a, b in zip(gaps[1:], gaps[2:]))
    ok = monotone and all(r.identity_residual <= args.tolerance for r in rows)
    return {"kind": args.kind, "rows": [r.to_dict() for r in rows], "gap_monotone_from_2": monotone, "passed": ok}, ok


# -- plumbing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kwising", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("--input", help="map document (default: stdin)")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--tolerance", type=float, default=1e-9)
        return sp

    def chars(sp, random=True):
        sp.add_argument("--character", help="comma-separated unit values on the canonical basis")
        sp.add_argument("--all-sign-characters", action="store_true")
        if random:
            sp.add_argument("--random-characters", type=int, metavar="K")

    g = common(sub.add_parser("gen", help="generate a standard map"), with_input=False)
    g.add_argument("--kind", required=True, choices=["square", "triangular", "hexagonal", "bouquet"])
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--m", type=int, default=1)

    common(sub.add_parser("validate", help="topology and cone-angle hypotheses"))
    common(sub.add_parser("dual", help="dual map document"))
    common(sub.add_parser("spin-structures", help="spin structures with Arf invariants"))

    t = common(sub.add_parser("tau", help="twisted Kac-Ward determinants"))
    t.add_argument("--weights", help="'critical' or comma-separated edge weights")
    chars(t)

    pa = common(sub.add_parser("partition", help="Ising partition function Z(G, x)"))
    pa.add_argument("--weights", help="'critical' or comma-separated edge weights")
    pa.add_argument("--method", choices=["kw", "oracle", "spins"], default="kw")

    la = common(sub.add_parser("laplacian", help="twisted Laplacian determinants"))
    la.add_argument("--weights", help="'critical' (tan theta) or comma-separated edge weights")
    la.add_argument("--matrix", action="store_true")
    chars(la)

    chars(common(sub.add_parser("duality-check", help="primal/dual determinant identity")))
    chars(common(sub.add_parser("delta-check", help="Kac-Ward vs Laplacian identity, genus <= 1")))
    np_ = common(sub.add_parser("nonprop-probe", help="ratio spread in genus >= 2"))
    chars(np_)
    np_.add_argument("--spread-threshold", type=float, default=1.01)

    cc = common(sub.add_parser("coupling-check", help="critical coupling duality relation"), with_input=False)
    grp = cc.add_mutually_exclusive_group(required=True)
    grp.add_argument("--theta", help="angle as a fraction of pi, e.g. 1/4")
    grp.add_argument("--sweep", type=int, metavar="N")
    cc.set_defaults(tolerance=1e-12)

    fe = common(sub.add_parser("free-energy", help="finite-size free-energy table"), with_input=False)
    fe.add_argument("--kind", default="square", choices=["square", "triangular", "hexagonal"])
    fe.add_argument("--n-max", type=int, default=6)
    fe.add_argument("--structure", type=int, default=0, help="index among the Arf-0 spin structures")
    return p


MAP_COMMANDS = {
    "validate": cmd_validate,
    "dual": cmd_dual,
    "spin-structures": cmd_spin_structures,
    "tau": cmd_tau,
    "partition": cmd_partition,
    "laplacian": cmd_laplacian,
    "duality-check": cmd_duality_check,
    "delta-check": cmd_delta_check,
    "nonprop-probe": cmd_nonprop_probe,
}


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(args, status: str, payload, doc=None, m=None, error: str | None = None) -> str:
    rep = {"command": args.command, "status": status}
    if doc is not None:
        rep["map_sha256"] = doc.sha256()
    if m is not None:
        rep["hypotheses"] = check_hypotheses(m, "all_odd").to_dict()
    rep["tolerance"] = getattr(args, "tolerance", None)
    if args.seed is not None:
        rep["seed"] = args.seed
    if error is not None:
        rep["error"] = error
    if payload is not None:
        rep["result"] = payload
    return json.dumps(rep, default=str) + "\n"


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    doc = m = None
    try:
        if args.command == "gen":
            _emit(cmd_gen(args).dumps(), args)
            return EXIT_OK
        if args.command in ("coupling-check", "free-energy"):
            fn = cmd_coupling_check if args.command == "coupling-check" else cmd_free_energy
            payload, ok = fn(args)
            _emit(_report(args, "ok" if ok else "error", payload), args)
            return EXIT_OK if ok else EXIT_ERROR
        doc = _read_doc(args)
        m = read_map(doc)
        result = MAP_COMMANDS[args.command](args, m, doc)
        if isinstance(result, MapDocument):
            _emit(result.dumps(), args)
            return EXIT_OK
        payload, ok = result if isinstance(result, tuple) else (result, True)
        _emit(_report(args, "ok" if ok else "error", payload, doc, m), args)
        return EXIT_OK if ok else EXIT_ERROR
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"kwising: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisViolation as exc:
        print(f"kwising: hypothesis violation: {exc}", file=sys.stderr)
        _emit(_report(args, "hypothesis_violation", None, doc, m, str(exc)), args)
        return EXIT_HYPOTHESIS
    except (KWIsingError, ValueError, OSError) as exc:
        print(f"kwising: {type(exc).__name__}: {exc}", file=sys.stderr)
        _emit(_report(args, "error", None, doc, m, f"{type(exc).__name__}: {exc}"), args)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
