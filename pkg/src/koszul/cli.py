"""Command-line surface: one binary, one subcommand per module family.

Reports are JSON objects with a versioned schema; given identical argv and
seed the bytes are identical (timing is only attached on request). Exit
codes: 0 success, 2 validation or precondition failure, 3 conformance
mismatch (two routes to the same value disagreed, i.e. a library bug
surfaced by a built-in cross-check).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from koszul import (
    algebra as algebra_mod,
    catalog,
    cohomology,
    connections,
    flatmodels,
    gauge,
    invariants,
    io as kio,
    spencer,
)
from koszul.errors import ConformanceMismatch, KoszulError, ValidationError
from koszul.forms import BilinearForm, identity_form
from koszul.spaces import LinearSolutionSpace

SCHEMA = "koszul-report/1"


class _Inputs:
    """Collects raw input material for the digest and optional dump."""

    def __init__(self):
        self.material = {}
        self.dump = {}

    def add_file(self, role: str, path):
        try:
            self.material[role] = Path(path).read_text()
        except OSError as exc:
            raise ValidationError(f"cannot read {path}: {exc}") from exc

    def add_value(self, role: str, value):
        self.material[role] = repr(value)

    def digest(self) -> str:
        blob = json.dumps(self.material, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def _frac_list(vec):
    return [kio.fraction_str(x) for x in vec]


def _mat_doc(mat):
    return [_frac_list(row) for row in mat]


def _defect_doc(t) -> dict:
    entries = [[*idx, kio.fraction_str(v)] for idx, v in t.items() if v]
    return {"zero": t.is_zero(), "max_abs": kio.fraction_str(t.max_abs()),
            "entries": entries}


def _witness_doc(w):
    if w is None or isinstance(w, (str, int)):
        return w
    if isinstance(w, BilinearForm):
        return kio.dump_form(w)
    if isinstance(w, connections.InvariantConnection):
        return kio.dump_connection(w)
    if isinstance(w, algebra_mod.BilinearProduct):
        return kio.dump_product(w)
    if isinstance(w, tuple) and w and isinstance(w[0], tuple):
        return _mat_doc(w)
    if isinstance(w, tuple) and all(isinstance(x, Fraction) for x in w):
        return _frac_list(w)
    return kio.jsonable(w)


def _verdict_doc(v: invariants.ExistenceVerdict) -> dict:
    return {
        "exists": v.exists,
        "witness": _witness_doc(v.witness),
        "certificate": v.certificate,
        "notes": v.notes,
    }


def _load_lie(args, inputs: _Inputs):
    if getattr(args, "algebra", None):
        inputs.add_file("algebra", args.algebra)
        lie = kio.load_algebra(args.algebra)
    elif getattr(args, "catalog", None):
        inputs.add_value("catalog", args.catalog)
        lie = catalog.resolve("lie", args.catalog)
    else:
        raise ValidationError("provide --algebra FILE or --catalog NAME")
    inputs.dump["algebra"] = kio.dump_algebra(lie)
    return lie


def _load_product(args, inputs: _Inputs):
    if getattr(args, "product", None):
        inputs.add_file("product", args.product)
        p = kio.load_product(args.product)
    elif getattr(args, "catalog", None):
        inputs.add_value("catalog", args.catalog)
        p = catalog.resolve("product", args.catalog)
    else:
        raise ValidationError("provide --product FILE or --catalog NAME")
    inputs.dump["product"] = kio.dump_product(p)
    return p


def _load_connection(args, base, inputs: _Inputs, required=True):
    if getattr(args, "connection", None):
        inputs.add_file("connection", args.connection)
        conn = kio.load_connection(args.connection, base)
    elif getattr(args, "cartan", None):
        inputs.add_value("cartan", args.cartan)
        conn = connections.cartan_connection(base, args.cartan)
    elif required:
        raise ValidationError(
            "provide --connection FILE or --cartan minus|zero|plus")
    else:
        return None
    inputs.dump["connection"] = kio.dump_connection(conn)
    return conn


def _load_metric(args, dim: int, inputs: _Inputs, default_identity=True):
    path = getattr(args, "metric", None) or getattr(args, "form", None)
    if path:
        role = "metric" if getattr(args, "metric", None) else "form"
        inputs.add_file(role, path)
        form = kio.load_form(path)
        inputs.dump[role] = kio.dump_form(form)
        return form
    if default_identity:
        return identity_form(dim)
    return None


def _space_doc(space: LinearSolutionSpace, r_b=None) -> dict:
    return kio.dump_space(space, r_b=r_b)


# ---------------------------------------------------------------- commands


def _cmd_check_lie(args, inputs):
    lie = _load_lie(args, inputs)
    return {"valid": True, "dim": lie.dim}


def _cmd_algebra(args, inputs):
    if args.op == "killing":
        lie = _load_lie(args, inputs)
        return {"killing": kio.dump_form(algebra_mod.killing_form(lie))}
    p = _load_product(args, inputs)
    if args.op == "commutator":
        lie = algebra_mod.commutator_bracket(p)
        return {"algebra": kio.dump_algebra(lie)}
    if args.op == "anomaly":
        return {"kv_anomaly": _defect_doc(algebra_mod.kv_anomaly(p))}
    return {"associator": _defect_doc(algebra_mod.associator_defect(p))}


def _cmd_connection(args, inputs):
    lie = _load_lie(args, inputs)
    conn = _load_connection(args, lie, inputs)
    if args.op == "torsion":
        return {"torsion": _defect_doc(connections.torsion(conn))}
    if args.op == "curvature":
        return {"curvature": _defect_doc(connections.curvature(conn))}
    if args.op == "flat":
        flat, witness = connections.is_locally_flat(conn)
        return {"flat": flat, "witness": witness}
    metric = _load_metric(args, lie.dim, inputs)
    dual = connections.amari_dual(conn, metric)
    if args.op == "dual":
        return {"dual": kio.dump_connection(dual)}
    alpha = kio.parse_fraction(args.alpha)
    mixed = connections.alpha_connection(conn, dual, alpha)
    return {"alpha": kio.fraction_str(alpha),
            "connection": kio.dump_connection(mixed)}


def _cmd_gauge(args, inputs):
    lie = _load_lie(args, inputs)
    conn = _load_connection(args, lie, inputs)
    if args.op == "fe":
        if args.dual:
            inputs.add_file("dual", args.dual)
            dual = kio.load_connection(args.dual, lie)
            inputs.dump["dual"] = kio.dump_connection(dual)
        else:
            dual = connections.amari_dual(
                conn, _load_metric(args, lie.dim, inputs))
        space = gauge.solve_gauge_equation(conn, dual)
        return _space_doc(space)
    if args.op == "festar":
        sols = gauge.solve_fe_star(conn)
        doc = _space_doc(sols.space, r_b=sols.r_b)
        doc["shrink_steps"] = sols.shrink_steps
        return doc
    if args.op == "parallel":
        space = gauge.parallel_forms(conn, args.sym)
        return _space_doc(space)
    space, closed = gauge.g_nabla_subalgebra(conn)
    doc = _space_doc(space)
    doc["closed_under_product"] = closed
    return doc


def _bimetric_witness(lie, verdict):
    """Replace a witness proportional to the Killing form by its name."""
    w = verdict.witness
    if not isinstance(w, BilinearForm):
        return _witness_doc(w)
    k = algebra_mod.killing_form(lie)
    pivot = next(((i, j) for i in range(lie.dim) for j in range(lie.dim)
                  if k.entries[i][j]), None)
    if pivot is not None:
        lam = w.entries[pivot[0]][pivot[1]] / k.entries[pivot[0]][pivot[1]]
        if lam and all(
                w.entries[i][j] == lam * k.entries[i][j]
                for i in range(lie.dim) for j in range(lie.dim)):
            return "killing"
    return _witness_doc(w)


def _cmd_invariants(args, inputs):
    lie = _load_lie(args, inputs)
    seed = args.seed
    which = args.which
    if which == "rb":
        conn = _load_connection(args, lie, inputs)
        sols = gauge.solve_fe_star(conn)
        return {"r_b": sols.r_b, "defect": lie.dim - sols.r_b,
                "dim_solution": sols.space.dim}
    if which in ("sb", "sb+"):
        g = _load_metric(args, lie.dim, inputs)
        value, verdict = invariants.s_b(
            lie, g, positive=(which == "sb+"), seed=seed)
        doc = _verdict_doc(verdict)
        doc["s_b"] = value
        return doc
    if which == "s*b":
        conn = _load_connection(args, lie, inputs)
        g = _load_metric(args, lie.dim, inputs)
        value, verdict = invariants.s_star_b(conn, g, seed=seed)
        doc = _verdict_doc(verdict)
        doc["s_star_b"] = value
        return doc
    if which == "hessian":
        conn = _load_connection(args, lie, inputs)
        value, verdict = invariants.hessian_defect(conn, seed=seed)
        doc = _verdict_doc(verdict)
        doc["defect"] = value
        return doc
    if which == "flat":
        conn = _load_connection(args, lie, inputs, required=False)
        cands = [conn] if conn is not None else \
            [connections.cartan_connection(lie, "zero")]
        verdict = invariants.flat_existence(
            lie, cands, budget=args.budget or 64, seed=seed)
        return _verdict_doc(verdict)
    if which == "bimetric":
        verdict = invariants.bi_invariant_metric(lie, seed=seed)
        doc = _verdict_doc(verdict)
        doc["witness"] = _bimetric_witness(lie, verdict)
        return doc
    verdict = invariants.left_symplectic_oracle(lie, seed=seed)
    return _verdict_doc(verdict)


def _cmd_kv_cohomology(args, inputs):
    if args.complex == "ce":
        lie = _load_lie(args, inputs)
        report = cohomology.ce_cohomology_dims(
            lie, args.coeffs, max_degree=args.max_degree)
    elif args.complex == "hochschild":
        p = _load_product(args, inputs)
        report = cohomology.hochschild_dims(
            p, max_degree=min(args.max_degree, 2))
    else:
        p = _load_product(args, inputs)
        if getattr(args, "algebra", None):
            inputs.add_file("algebra", args.algebra)
            declared = kio.load_algebra(args.algebra)
            derived = algebra_mod.commutator_bracket(p)
            if declared.c != derived.c:
                raise ValidationError(
                    "the supplied algebra is not the commutator of the "
                    "supplied product")
        report = cohomology.kv_cohomology_dims(
            p, args.coeffs, max_degree=args.max_degree)
    return {
        "complex": report.complex,
        "coefficients": report.coefficients,
        "dim": report.algebra_dim,
        "betti": list(report.betti()),
        "degrees": [kio.jsonable(d) for d in report.degrees],
        "notes": report.notes,
    }


def _cmd_spencer(args, inputs):
    inputs.add_file("symbol", args.symbol)
    a = kio.load_symbol(args.symbol)
    inputs.dump["symbol"] = kio.dump_symbol(a)
    if args.op == "prolong":
        up = spencer.prolong(a)
        return {"order": up.order, "dim": up.dim,
                "basis": [_frac_list(b) for b in up.basis]}
    if args.op == "cartan":
        p1, total, ok = spencer.cartan_test(a)
        return {"prolongation_dim": p1, "flag_sum": total,
                "quasi_regular": ok}
    if args.op == "cohomology":
        rep = spencer.spencer_cohomology(a)
        return {"h": [list(r) for r in rep.h_dims],
                "c": [list(r) for r in rep.c_dims],
                "prolong_dims": list(rep.prolong_dims),
                "d_squared_zero": rep.d_squared_zero}
    verdict = spencer.is_involutive(a, trials=args.trials, seed=args.seed)
    return {
        "verdict": verdict.verdict,
        "basis": None if verdict.basis is None else _mat_doc(verdict.basis),
        "cohomology_witness": verdict.cohomology_witness,
        "h": [list(r) for r in verdict.report.h_dims],
    }


def _cmd_flat_models(args, inputs):
    if args.fm_op == "tower":
        report = flatmodels.tower_dims(args.m, args.steps)
        return {"dims": list(report.dims),
                "levels_materialized": [lvl is not None
                                        for lvl in report.levels]}
    p = _load_product(args, inputs)
    if args.fm_op == "completeness":
        rep = flatmodels.geometric_completeness(
            p, budget=args.budget or 256, seed=args.seed)
        return {"verdict": rep.verdict,
                "witness": None if rep.witness is None
                else _frac_list(rep.witness),
                "method": rep.method, "note": rep.note}
    inputs.add_file("ideal", args.ideal)
    doc = kio.read_document(args.ideal)
    dim = doc.get("dim")
    if dim != p.dim:
        raise ValidationError(
            f"ideal dim {dim} does not match product dim {p.dim}")
    rows = doc.get("basis", [])
    basis = [[kio.parse_fraction(x) for x in row] for row in rows]
    inputs.dump["ideal"] = {"dim": dim,
                            "basis": [_frac_list(r) for r in basis]}
    rep = flatmodels.simple_right_ideal_check(p, basis)
    return {"right_ideal": True, "simple": rep.simple,
            "ideal_dim": rep.ideal_dim, "core_dim": rep.core_dim,
            "core_basis": [_frac_list(b) for b in rep.core_basis]}


def _cmd_statmodel(args, inputs):
    from koszul import statmodel

    inputs.add_value("family", args.family)
    model = statmodel.get_family(args.family)
    if args.theta is None:
        theta = statmodel.default_theta(model)
    else:
        try:
            theta = [float(x) for x in args.theta.split(",")]
        except ValueError as exc:
            raise ValidationError(f"bad --theta value: {exc}") from exc
    inputs.add_value("theta", list(map(float, theta)))
    if args.op == "fisher":
        g = statmodel.fisher_information(model, theta)
        return {"family": model.name, "theta": kio.jsonable(theta),
                "fisher": kio.jsonable(g)}
    if args.op == "alpha":
        low = statmodel.alpha_christoffels(model, theta, args.alpha)
        return {"family": model.name, "alpha": args.alpha,
                "lowered": kio.jsonable(low)}
    if args.op == "curvature":
        tensor, mx = statmodel.alpha_curvature(model, theta, args.alpha)
        return {"family": model.name, "alpha": args.alpha,
                "max_abs": mx, "tensor": kio.jsonable(tensor)}
    grid = _probe_grid(model, theta)
    rep = statmodel.exponential_defect_probe(model, grid, tol=args.tol)
    return kio.jsonable(rep)


def _probe_grid(model, center):
    import itertools

    offsets = (-0.3, 0.0, 0.3)
    pts = []
    for combo in itertools.product(offsets, repeat=model.n_params):
        pts.append([c + o for c, o in zip(center, combo)])
    return pts


# ------------------------------------------------------------- dispatcher


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: KOSZUL_SEED env or 7)")
    common.add_argument("--budget", type=int, default=None,
                        help="search budget for randomized existence checks")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--dump", action="store_true",
                        help="echo parsed inputs back as JSON documents")
    common.add_argument("--timing", action="store_true",
                        help="attach wall-clock timing to the report")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--algebra", help="algebra JSON file")
    src.add_argument("--catalog", help="named catalog entry")

    conn_flags = argparse.ArgumentParser(add_help=False)
    conn_flags.add_argument("--connection", help="connection JSON file")
    conn_flags.add_argument("--cartan", choices=("minus", "zero", "plus"),
                            help="use a canonical connection of the algebra")
    conn_flags.add_argument("--metric", help="metric form JSON file")
    conn_flags.add_argument("--form", help="bilinear form JSON file")

    parser = argparse.ArgumentParser(
        prog="koszul",
        description="gauge-theoretic invariants of invariant Koszul "
                    "connections on finite-dimensional algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-lie", parents=[common, src],
                       help="validate a Lie algebra file")
    p.set_defaults(handler=_cmd_check_lie)

    p = sub.add_parser("algebra", parents=[common, src],
                       help="killing form, commutator bracket, defects")
    p.add_argument("--product", help="product JSON file")
    p.add_argument("--op", required=True,
                   choices=("killing", "commutator", "anomaly", "associator"))
    p.set_defaults(handler=_cmd_algebra)

    p = sub.add_parser("connection", parents=[common, src, conn_flags],
                       help="torsion, curvature, flatness, duals")
    p.add_argument("--op", required=True,
                   choices=("torsion", "curvature", "flat", "dual", "alpha"))
    p.add_argument("--alpha", default="0", help="rational alpha, e.g. 1/2")
    p.set_defaults(handler=_cmd_connection)

    p = sub.add_parser("gauge", parents=[common, src, conn_flags],
                       help="solution spaces of the fundamental equations")
    p.add_argument("--op", required=True,
                   choices=("fe", "festar", "parallel", "subalgebra"))
    p.add_argument("--dual", help="explicit dual connection JSON file")
    p.add_argument("--sym", choices=("symmetric", "skew"),
                   default="symmetric", help="parity for parallel forms")
    p.set_defaults(handler=_cmd_gauge)

    p = sub.add_parser("invariants", parents=[common, src, conn_flags],
                       help="numerical invariants and existence verdicts")
    p.add_argument("--which", required=True,
                   choices=("rb", "sb", "sb+", "s*b", "hessian", "flat",
                            "bimetric", "symplectic"))
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser("kv-cohomology", parents=[common, src],
                       help="cohomology dimensions")
    p.add_argument("--product", help="product JSON file")
    p.add_argument("--coeffs", default="adjoint",
                   choices=("adjoint", "scalar", "trivial"))
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--complex", default="kv",
                   choices=("kv", "ce", "hochschild"))
    p.set_defaults(handler=_cmd_kv_cohomology)

    p = sub.add_parser("spencer", parents=[common],
                       help="symbol prolongation and involutivity")
    p.add_argument("--symbol", required=True, help="symbol JSON file")
    p.add_argument("--op", required=True,
                   choices=("prolong", "cartan", "cohomology", "involutive"))
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(handler=_cmd_spencer)

    p = sub.add_parser("flat-models", parents=[common],
                       help="affine tower, completeness, right ideals")
    fm = p.add_subparsers(dest="fm_op", required=True)
    t = fm.add_parser("tower", parents=[common])
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--steps", type=int, required=True)
    c = fm.add_parser("completeness", parents=[common])
    c.add_argument("--product", help="product JSON file")
    c.add_argument("--catalog", help="named catalog product")
    i = fm.add_parser("ideal", parents=[common])
    i.add_argument("--product", help="product JSON file")
    i.add_argument("--catalog", help="named catalog product")
    i.add_argument("--ideal", required=True,
                   help="subspace JSON file {dim, basis}")
    p.set_defaults(handler=_cmd_flat_models)
    t.set_defaults(handler=_cmd_flat_models)
    c.set_defaults(handler=_cmd_flat_models)
    i.set_defaults(handler=_cmd_flat_models)

    p = sub.add_parser("statmodel", parents=[common],
                       help="information geometry of finite models")
    p.add_argument("--family", required=True,
                   help="bernoulli, categorical:N, categorical-natural:N, "
                        "curved4, constant")
    p.add_argument("--op", required=True,
                   choices=("fisher", "alpha", "curvature", "defect"))
    p.add_argument("--theta", help="comma-separated parameter values")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=1e-4)
    p.set_defaults(handler=_cmd_statmodel)

    return parser


def _render_text(value, indent: str = "") -> list[str]:
    lines = []
    if isinstance(value, dict):
        for key in value:
            v = value[key]
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                lines.append(f"{indent}{key}:")
                lines.extend(_render_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{key}: {_inline(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)) and item and \
                    not _is_flat_list(item):
                lines.append(f"{indent}-")
                lines.extend(_render_text(item, indent + "  "))
            else:
                lines.append(f"{indent}- {_inline(item)}")
    else:
        lines.append(f"{indent}{_inline(value)}")
    return lines


def _is_flat_list(v) -> bool:
    return isinstance(v, list) and all(
        not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def run(argv) -> dict:
    """Parse argv, dispatch, and return the report object (no printing)."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    inputs = _Inputs()
    start = time.monotonic()
    payload = args.handler(args, inputs)
    elapsed_ms = (time.monotonic() - start) * 1000.0
    report = {
        "schema": SCHEMA,
        "command": list(argv),
        "seed": invariants.resolve_seed(args.seed),
        "inputs": {"sha256": inputs.digest()},
        "result": payload,
    }
    if args.dump:
        report["dump"] = inputs.dump
    if args.timing:
        report["timing_ms"] = elapsed_ms
    return report


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--format", choices=("json", "text"), default="json")
    fmt = probe.parse_known_args(argv)[0].format
    try:
        report = run(argv)
    except ConformanceMismatch as exc:
        _emit_error(argv, exc)
        return 3
    except KoszulError as exc:
        _emit_error(argv, exc)
        return 2
    if fmt == "text":
        print("\n".join(_render_text(report["result"])))
    else:
        print(json.dumps(report, sort_keys=True, indent=2))
    return 0


def _emit_error(argv, exc: KoszulError):
    doc = {
        "schema": SCHEMA,
        "command": list(argv),
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }
    print(json.dumps(doc, sort_keys=True, indent=2))


if __name__ == "__main__":
    sys.exit(main())
