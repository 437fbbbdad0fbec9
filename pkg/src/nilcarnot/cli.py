"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 inconclusive verdict,
3 budget or memory limit reached.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .carnot import GradedLieAlgebra, NotGraded, associated_graded, is_carnot
from .catalog import PRESETS, preset
from .exactlin import Q, fmt
from .fileformat import NilgDocument, NilgError, dumps, read_document, to_spec
from .growth import InsufficientRadius, estimate_growth_exponent, growth_report
from .iso import DEFAULT_BUDGET, invariant_profile, iso_verdict
from .lie import center, derived_series, lower_central_series, validate
from .morphisms import Functional, Homomorphism, pansu_quotient, validate_hom
from .nilgroup import GeneratingSet, GroupElement, parse_element, word_ball
from .obstruction import INCONCLUSIVE, obstruction_verdict
from .packing import InstanceInvalid, PackingInstance, build_packing, expected_count

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE, EXIT_LIMIT = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INVALID):
        super().__init__(message)
        self.code = code


def default_seed() -> int:
    raw = os.environ.get("NILCARNOT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"NILCARNOT_SEED must be an integer, got {raw!r}") from None


def _q(text: str) -> Fraction:
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(f"not an exact rational: {text!r}") from None


def _emit(args, text: str, payload: dict) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _fracs(v) -> list[str]:
    return [fmt(c) for c in v]


def _load_valid(ref: str) -> NilgDocument:
    doc = read_document(ref)
    report = validate(doc.algebra)
    if not report.ok:
        raise CliError(f"{ref}: {report.message}")
    return doc


def graded_view(doc: NilgDocument, allow_regrading: bool = True) -> GradedLieAlgebra:
    """The file's own grading: a ``layers`` block, else the natural one when the
    coordinates are already stratified, else (if allowed) the Carnot completion."""
    L = doc.algebra
    try:
        if doc.layers is not None:
            G = GradedLieAlgebra(L, doc.layers)
        else:
            G = GradedLieAlgebra(L, lower_central_series(L).layer_ranks)
        if is_carnot(G):
            return G
    except NotGraded:
        if doc.layers is not None:
            raise
    if allow_regrading:
        return associated_graded(L)
    raise CliError(
        f"{doc.name or doc.path}: coordinates are not stratified; export the Carnot completion "
        "with `carnot --export` and use that file"
    )


def cmd_validate(args) -> int:
    doc = read_document(args.file)
    r = validate(doc.algebra)
    payload = {
        "ok": r.ok, "antisymmetric": r.antisymmetric, "jacobi": r.jacobi,
        "nilpotent": r.nilpotent, "violation": list(r.violation) if r.violation else None,
        "message": r.message, "step": r.step,
    }
    text = f"{doc.name}: valid nilpotent Lie algebra, step {r.step}\n" if r.ok else f"{doc.name}: INVALID: {r.message}\n"
    _emit(args, text, payload)
    return EXIT_OK if r.ok else EXIT_INVALID


def cmd_series(args) -> int:
    doc = _load_valid(args.file)
    L = doc.algebra
    lcs, der, z = lower_central_series(L), derived_series(L), center(L)
    payload = {
        "name": doc.name, "dimension": L.dim, "step": lcs.step,
        "lower_central_dims": list(lcs.dims), "layer_ranks": list(lcs.layer_ranks),
        "derived_dims": list(der.dims), "center_dim": z.dim,
        "center_basis": [_fracs(v) for v in z.basis],
    }
    text = (
        f"lower central series dims: {list(lcs.dims)}\n"
        f"layer ranks: {list(lcs.layer_ranks)}\nstep: {lcs.step}\n"
        f"derived series dims: {list(der.dims)}\ncenter dimension: {z.dim}\n"
    )
    _emit(args, text, payload)
    return EXIT_OK


def cmd_carnot(args) -> int:
    doc = _load_valid(args.file)
    G = associated_graded(doc.algebra)
    out = dumps(G)
    if args.export:
        Path(args.export).write_text(out)
    payload = {
        "name": G.name, "layers": list(G.layer_dims), "carnot": is_carnot(G),
        "basis_names": list(G.algebra.basis_names),
        "brackets": json.loads(out)["brackets"],
        "complements": [[_fracs(r) for r in cm] for cm in G.complements],
    }
    lines = [f"layers: {list(G.layer_dims)}", f"carnot: {is_carnot(G)}"]
    for (i, j), v in G.algebra.structure:
        names = G.algebra.basis_names
        rhs = " + ".join(f"{fmt(c)}*{names[k]}" for k, c in enumerate(v) if c)
        lines.append(f"[{names[i]},{names[j]}] = {rhs}")
    _emit(args, "\n".join(lines) + "\n", payload)
    return EXIT_OK


def cmd_growth(args) -> int:
    doc = _load_valid(args.file)
    L = doc.algebra
    ball = None
    code = EXIT_OK
    if args.radius is not None:
        S = (
            GeneratingSet.symmetric_closure(L, doc.generators)
            if doc.generators else GeneratingSet.standard(L)
        )
        ball = word_ball(L, S, args.radius, max_elements=args.max_elements)
        if ball.truncated:
            code = EXIT_LIMIT
        if args.csv:
            Path(args.csv).write_text(ball.to_csv())
    rep = growth_report(L, ball)
    payload = {
        "name": doc.name, "d": rep.d, "rank": rep.rank, "layer_ranks": list(rep.layer_ranks),
    }
    text = rep.to_text()
    if ball is not None:
        payload["ball_counts"] = list(ball.counts)
        payload["truncated"] = ball.truncated
        payload["empirical"] = [
            {"n": n, "count": c, "doubling_exponent_estimate": round(e, 6)} for n, c, e in rep.empirical
        ]
        try:
            est = estimate_growth_exponent(ball)
            payload["estimate"] = round(est, 6)
            text += f"growth exponent estimate (n={ball.radius // 2}): {est:.4f}\n"
        except InsufficientRadius:
            pass
        if ball.truncated:
            text += f"memory budget reached: counts stop at radius {ball.radius}\n"
    _emit(args, text, payload)
    return code


def cmd_iso(args) -> int:
    a, b = _load_valid(args.a), _load_valid(args.b)
    v = iso_verdict(associated_graded(a.algebra), associated_graded(b.algebra), args.budget, args.seed)
    payload = v.to_dict()
    payload["profiles"] = [
        _profile_dict(invariant_profile(a.algebra)), _profile_dict(invariant_profile(b.algebra))
    ]
    text = f"{v.kind}: {v.note}\n"
    if v.witness is not None:
        text += "witness (first-layer block induced to all layers):\n"
        text += "".join("  [" + ", ".join(_fracs(r)) + "]\n" for r in v.witness.matrix)
    _emit(args, text, payload)
    return EXIT_INCONCLUSIVE if v.kind == "Unknown" else EXIT_OK


def _profile_dict(p) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in p.as_dict().items()}


def cmd_obstruct(args) -> int:
    a, b = to_spec(_load_valid(args.a)), to_spec(_load_valid(args.b))
    report = obstruction_verdict(a, b, args.budget, args.seed)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_INCONCLUSIVE if report.conclusion == INCONCLUSIVE else EXIT_OK


def _resolve_target(doc: NilgDocument, ref: str) -> NilgDocument:
    if doc.path is not None and not ref.startswith("preset:"):
        candidate = doc.path.parent / ref
        if candidate.exists():
            ref = str(candidate)
    return _load_valid(ref)


def cmd_pansu(args) -> int:
    doc = _load_valid(args.file)
    if not doc.hom:
        raise CliError(f"{args.file}: no 'hom' block")
    target_doc = _resolve_target(doc, str(doc.hom.get("target", "")))
    S = graded_view(doc, allow_regrading=False)
    T = graded_view(target_doc, allow_regrading=False)
    try:
        matrix = [[Q(x) for x in row] for row in doc.hom["matrix"]]
        F = Homomorphism.make(S, T, matrix)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise CliError(f"{args.file}:hom: {exc}") from None
    if not validate_hom(F):
        raise CliError(f"{args.file}:hom: matrix is not bracket compatible")
    if not F.graded:
        raise CliError(f"{args.file}:hom: matrix is not graded")
    g = parse_element(S.algebra, args.g) if args.g else GroupElement.identity(S.algebra)
    x = parse_element(S.algebra, args.x)
    scales = [_q(s) for s in args.s]
    rows = []
    for s in scales:
        q = pansu_quotient(F, g, x, s)
        rows.append({"s": fmt(s), "quotient": _fracs(q.coords), "equals_F(x)": q.coords == F(x).coords})
    text = "".join(f"s={r['s']}: {r['quotient']}  (= F(x): {r['equals_F(x)']})\n" for r in rows)
    _emit(args, text, {"F(x)": _fracs(F(x).coords), "quotients": rows})
    return EXIT_OK


def cmd_pack(args) -> int:
    doc = _load_valid(args.file)
    if not doc.packing:
        raise CliError(f"{args.file}: no 'packing' block")
    G = graded_view(doc)
    L = G.algebra
    p = doc.packing
    try:
        lift = tuple(Q(c) for c in p["ell"])
        ell = Functional(lift[: G.layer_dims[0]], lift, sum((c * c for c in lift), Fraction(0)))
        inst = PackingInstance(
            G, ell,
            GroupElement.of(L, p["h"]),
            GroupElement.of(L, p.get("x", ["0"] * L.dim)),
            Q(p["eps"]), Q(p["mu"]),
            tuple(GroupElement.of(L, s) for s in p["samples"]),
        )
    except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliError(f"{args.file}:packing: {exc}") from None
    try:
        rep = build_packing(inst)
    except InstanceInvalid as exc:
        raise CliError(f"{args.file}:packing: {exc}") from None
    payload = {
        "count": rep.count, "expected_count": expected_count(inst.eps, inst.mu),
        "pairwise_disjoint": rep.pairwise_disjoint, "intervals_hold": rep.intervals_hold,
        "radius_bound_ok": rep.radius_bound_ok, "ell_h_eps": fmt(rep.ell_h_eps),
        "intervals": [[j, fmt(lo), fmt(hi)] for j, lo, hi in rep.interval_witnesses],
    }
    _emit(args, rep.to_text(), payload)
    return EXIT_OK


def cmd_catalog(args) -> int:
    names = sorted(PRESETS)
    if args.write:
        out = Path(args.write)
        out.mkdir(parents=True, exist_ok=True)
        for n in names:
            (out / f"{n}.nilg").write_text(dumps(preset(n)))
    _emit(args, "".join(f"{n}\n" for n in names), {"presets": names})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilcarnot",
        description="Exact Carnot-completion and growth obstructions for torsion-free nilpotent groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check antisymmetry, Jacobi and nilpotency")
    p.add_argument("file")
    p = add("series", cmd_series, "lower central / derived series and center")
    p.add_argument("file")
    p = add("carnot", cmd_carnot, "associated graded (Carnot) algebra")
    p.add_argument("file")
    p.add_argument("--export", metavar="OUT", help="write the graded algebra as a .nilg file")
    p = add("growth", cmd_growth, "homogeneous dimension and word-ball counts")
    p.add_argument("file")
    p.add_argument("--radius", type=int, help="enumerate word balls up to this radius")
    p.add_argument("--max-elements", type=int, default=2_000_000)
    p.add_argument("--csv", metavar="OUT", help="write radius,count rows")
    for name, func, help_ in (
        ("iso", cmd_iso, "graded isomorphism test of the Carnot completions"),
        ("obstruct", cmd_obstruct, "Lipschitz injection / translation-like action verdict"),
    ):
        p = add(name, func, help_)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--seed", type=int, default=None)
    p = add("pansu", cmd_pansu, "exact difference quotients of the file's graded homomorphism")
    p.add_argument("file")
    p.add_argument("--g", help="base point, comma-separated rationals (default identity)")
    p.add_argument("--x", required=True, help="direction, comma-separated rationals")
    p.add_argument("--s", nargs="+", default=["1", "1/2", "1/7", "3/5"])
    p = add("pack", cmd_pack, "disjoint translates from the file's packing block")
    p.add_argument("file")
    p = add("catalog", cmd_catalog, "list built-in presets")
    p.add_argument("--write", metavar="DIR", help="write every preset as DIR/<name>.nilg")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = default_seed()
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NilgError, NotGraded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except MemoryError:
        print("error: out of memory", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
