"""Command-line interface: ``torcells cone|fan|monoid|selftest``.

Exit codes: 0 success, 2 bad input or unmet precondition, 3 internal
consistency failure. Reports go to stdout, errors to stderr.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Callable, Sequence, TextIO

from .bb import (
    bb_decomposition, build_filtration, chow_ranks, fundamental_class, h_from_f_vector,
    h_polynomial, integrate, localized_basis_matrix, point_class,
)
from .bundle import CorpusEntry, corpus_path, load_corpus, read_golden
from .charfrac import CharFraction, variable_names
from .eqmult import (
    eq_mult, is_algebraic_rational_cell, orbifold_tangent_weights, product_formula_check,
)
from .errors import InputError, PropertyViolation, TorcellsError
from .lattice import Vector
from .monoid import (
    MonoidDatum, cross_section_lattice, embedding_chow_rank, face_orbit_count,
    monoid_cell_check, orbit_polytope, quasismooth_check, rook_rank1_count,
)
from .polyhedral import Cone, Fan, cone_multiplicity, dual_cone, fan_validate, is_simplicial
from .randgen import random_cone, random_generic_lambda, random_simplicial_cone


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="torcells", description="Rational cells, equivariant multiplicities "
                "and BB filtrations for toric varieties and monoid models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, need_input=True):
        if need_input:
            sp.add_argument("--input", required=True, help="input JSON file")
        sp.add_argument("--format", choices=("json", "table"), default="table")

    c = sub.add_parser("cone", help="cone report: simplicity, multiplicity, e0, rational cell")
    common(c)
    c.add_argument("--lambda", dest="lam", help="evaluate e0 at this one-parameter subgroup")

    f = sub.add_parser("fan", help="fan validation, BB cells, filtration, Chow ranks")
    common(f)
    f.add_argument("--lambda", dest="lam", help="generic one-parameter subgroup, e.g. \"1,2\"")
    g = f.add_mutually_exclusive_group()
    for flag in ("hpoly", "cells", "basis", "ranks"):
        g.add_argument(f"--{flag}", action="store_true")

    m = sub.add_parser("monoid", help="monoid model report")
    common(m)
    g = m.add_mutually_exclusive_group()
    for flag in ("report", "lattice", "quasismooth"):
        g.add_argument(f"--{flag}", action="store_true")

    s = sub.add_parser("selftest", help="run the bundled corpus against its goldens")
    common(s, need_input=False)
    s.add_argument("--seed", type=int, default=0, help="seed for --sweep")
    s.add_argument("--sweep", type=int, default=0, help="number of random property checks")
    return p


# -- helpers ------------------------------------------------------------------


def parse_lambda(text: str, rank: int) -> Vector:
    try:
        lam = tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError:
        raise InputError(f"--lambda must be comma-separated integers, got {text!r}") from None
    if len(lam) != rank:
        raise InputError(f"--lambda has {len(lam)} entries but the input has rank {rank}")
    return lam


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def _load(kind: str, data: dict):
    try:
        if kind == "cone":
            return Cone.from_json(data)
        if kind == "fan":
            return Fan.from_json(data)
        return MonoidDatum.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed {kind} JSON: missing or bad field {exc}") from None


def _vec(v) -> str:
    return "(" + ",".join(str(c) for c in v) + ")"


def _frac(q: Fraction) -> str:
    return str(q)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _table(rows: Sequence[tuple[str, str]]) -> str:
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" if k else f"{v}\n" for k, v in rows)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# -- cone ---------------------------------------------------------------------


def cone_report(sigma: Cone, lam: Vector | None = None) -> dict:
    out: dict = {
        "cone": sigma.to_json(),
        "dim": sigma.dim,
        "strongly_convex": sigma.is_strongly_convex,
        "full_dimensional": sigma.is_full_dimensional(),
        "simplicial": is_simplicial(sigma),
    }
    attractive = sigma.is_strongly_convex and sigma.is_full_dimensional()
    out["multiplicity"] = cone_multiplicity(sigma) if out["simplicial"] else None
    cert = is_algebraic_rational_cell(sigma)
    out["rational_cell"] = cert.to_json()
    if attractive:
        e = eq_mult(sigma)
        out["tangent_weights"] = [list(u) for u in orbifold_tangent_weights(sigma)]
        out["eq_mult"] = {"rendered": e.value.render(), "fraction": e.value.to_json(),
                          "homogeneity_degree": e.homogeneity_degree}
        if lam is not None:
            out["lambda"] = list(lam)
            out["eq_mult_at_lambda"] = _frac(e.evaluate(lam))
    else:
        out["tangent_weights"] = None
        out["eq_mult"] = None
    return out


def cone_table(r: dict) -> str:
    rows = [
        ("cone", "cone(" + ",".join(_vec(v) for v in r["cone"]["rays"]) + ")"),
        ("dimension", f"{r['dim']} (rank {r['cone']['rank']})"),
        ("simplicial", _yes(r["simplicial"])),
        ("multiplicity", "n/a (not simplicial)" if r["multiplicity"] is None else str(r["multiplicity"])),
    ]
    if r["eq_mult"] is not None:
        rows.append(("tangent weights", " ".join(_vec(u) for u in r["tangent_weights"])))
        rows.append(("e0", r["eq_mult"]["rendered"]))
        if "eq_mult_at_lambda" in r:
            rows.append((f"e0 at {_vec(r['lambda'])}", r["eq_mult_at_lambda"]))
    rc = r["rational_cell"]
    if rc["verdict"]:
        rows.append(("rational cell", f"yes (d={rc['cover_degree']})"))
    else:
        rows.append(("rational cell", f"no: {rc['failure_reason']}"))
    return _table(rows)


# -- fan ----------------------------------------------------------------------


def fan_report(fan: Fan, lam: Vector | None, what: str) -> dict:
    val = fan_validate(fan)
    out: dict = {"fan": fan.to_json(), "validation": val.to_json(),
                 "simplicial": fan.is_simplicial()}
    if lam is None:
        return out
    out["lambda"] = list(lam)
    cells = bb_decomposition(fan, lam)
    if what in ("all", "cells"):
        out["cells"] = [c.to_json() for c in cells]
        out["filtration"] = build_filtration(cells).to_json()
    if what in ("all", "hpoly"):
        h = h_polynomial(fan, lam)
        out["h_polynomial"] = h
        out["h_from_f_vector"] = h_from_f_vector(fan)
        out["palindromic"] = h == h[::-1]
    if what in ("all", "ranks"):
        out["chow_ranks"] = chow_ranks(fan, lam)
    if what == "basis":
        basis = localized_basis_matrix(fan, lam)
        out["basis"] = basis.to_json()
        out["basis"]["class_sums"] = [s.to_json() for s in basis.class_sums()]
        out["integral_fundamental_class"] = integrate(fundamental_class(fan), fan).to_json()
    return out


def fan_table(fan: Fan, r: dict, what: str) -> str:
    lines = [("fan", f"rank {fan.rank}, {len(fan.rays)} rays, {len(fan.max_cones)} maximal cones"),
             ("validation", r["validation"]["label"])]
    for d in r["validation"]["defects"]:
        lines.append(("", f"  defect: {d}"))
    lines.append(("simplicial", _yes(r["simplicial"])))
    if "lambda" not in r:
        return _table(lines)
    lines.append(("lambda", _vec(r["lambda"])))
    if "cells" in r:
        for c in r["cells"]:
            lines.append((f"x{c['fixed_point']}", f"cone {_vec(c['max_cone'])}  dim {c['cell_dim']}"
                          f"  closure {c['closure']}"))
        order = r["filtration"]["order"]
        lines.append(("filtration", " < ".join(f"x{i}" for i in order)))
    if "h_polynomial" in r:
        lines.append(("h-polynomial", _vec(r["h_polynomial"])))
        lines.append(("f-to-h oracle", _vec(r["h_from_f_vector"])))
        lines.append(("palindromic", _yes(r["palindromic"])))
    if "chow_ranks" in r:
        cr = r["chow_ranks"]
        lines.append(("Chow ranks", f"{_vec(cr['ranks'])}, total {cr['total']}, "
                      f"{'free' if cr['free'] else 'not free'}"))
        lines.append(("filtration ranks", " ".join(str(k) for k in cr["step_ranks"])))
    if "basis" in r:
        names = variable_names(fan.rank)
        order = r["basis"]["order"]
        for a, cell in enumerate(order):
            for b, fp in enumerate(order):
                e = CharFraction.from_json(r["basis"]["entries"][a][b], fan.rank)
                lines.append(("", f"e[x{fp}][Y{cell}] = {e.render(names)}"))
        total = CharFraction.from_json(r["integral_fundamental_class"], fan.rank)
        lines.append(("integral of [X]", total.render(names)))
    return _table(lines)


# -- monoid -------------------------------------------------------------------


def monoid_report(datum: MonoidDatum, what: str) -> dict:
    out: dict = {"datum": datum.to_json()}
    P = orbit_polytope(datum)
    out["polytope"] = P.to_json()
    if what == "report":
        rep = monoid_cell_check(datum)
        out["report"] = rep.to_json()
        try:
            out["embedding_chow_rank"] = embedding_chow_rank(datum)
            out["embedding_chow_rank_refused"] = None
        except InputError as exc:
            out["embedding_chow_rank"] = None
            out["embedding_chow_rank_refused"] = str(exc)
    elif what == "lattice":
        lam = cross_section_lattice(datum)
        out["cross_section_lattice"] = [
            {"rank": rk, "vertices": [] if f is None else sorted(list(P.vertices[i]) for i in f.vertices)}
            for f, rk in lam]
        out["face_orbits"] = face_orbit_count(datum)
    else:
        out["quasismooth"] = quasismooth_check(datum)
    return out


def monoid_table(datum: MonoidDatum, r: dict) -> str:
    w = datum.weyl
    lines = [("monoid", f"{datum.name or 'datum'}: type {w.family}{w.rank}, |W| = {w.order}, "
              f"points {' '.join(_vec(p) for p in datum.dominant_points)}"),
             ("polytope", f"dim {r['polytope']['dim']}, {len(r['polytope']['vertices'])} vertices")]
    if "report" in r:
        rep = r["report"]
        lines += [
            ("dim T", str(rep["dim_T"])),
            ("|E1|", str(rep["E1_count"])),
            ("|R1|", str(rep["R1_count"])),
            ("dim M", str(rep["dim_M"]) + ("  (differs from root table "
                                          f"{rep['dim_M_table']})" if rep["dim_M_mismatch"] else "")),
            ("cell via dim T = |E1|", _yes(rep["rational_cell_b"])),
            ("cell via dim M = |R1|", _yes(rep["rational_cell_f"])),
            ("criteria agree", _yes(rep["equivalence_ok"])),
            ("quasismooth", _yes(rep["quasismooth"])),
            ("Lambda ranks", _vec(rep["Lambda_ranks"])),
        ]
        for o in rep["orbits"]:
            lines.append(("vertex orbit", f"{_vec(o['representative'])}: size {o['orbit_size']}, "
                          f"stabilizer C_W(e) order {o['stabilizer_order']}"))
        if r["embedding_chow_rank"] is not None:
            lines.append(("embedding Chow rank", str(r["embedding_chow_rank"])))
        else:
            lines.append(("embedding Chow rank", "refused: " + r["embedding_chow_rank_refused"]))
    elif "cross_section_lattice" in r:
        for item in r["cross_section_lattice"]:
            face = "apex" if not item["vertices"] else " ".join(_vec(v) for v in item["vertices"])
            lines.append((f"rank {item['rank']}", face))
        lines.append(("face orbits", str(r["face_orbits"])))
    else:
        q = r["quasismooth"]
        lines.append(("dim P", str(q["dim_P"])))
        for o in q["per_orbit"]:
            lines.append(("vertex orbit", f"{_vec(o['representative'])}: {o['edges']} edges "
                          f"{'ok' if o['ok'] else 'FAILS'}"))
        lines.append(("quasismooth", _yes(q["quasismooth"])))
    return _table(lines)


# -- dispatch -----------------------------------------------------------------


def _fan_what(args) -> str:
    for flag in ("hpoly", "cells", "basis", "ranks"):
        if getattr(args, flag):
            return flag
    return "all"


def _monoid_what(args) -> str:
    for flag in ("lattice", "quasismooth"):
        if getattr(args, flag):
            return flag
    return "report"


def render(args) -> str:
    if args.command == "cone":
        sigma = _load("cone", _read_json(args.input))
        lam = None if args.lam is None else parse_lambda(args.lam, sigma.rank)
        r = cone_report(sigma, lam)
        return dumps(r) if args.format == "json" else cone_table(r)
    if args.command == "fan":
        fan = _load("fan", _read_json(args.input))
        lam = None if args.lam is None else parse_lambda(args.lam, fan.rank)
        what = _fan_what(args)
        if lam is None and what != "all":
            raise InputError(f"--{what} needs --lambda")
        r = fan_report(fan, lam, what)
        return dumps(r) if args.format == "json" else fan_table(fan, r, what)
    if args.command == "monoid":
        datum = _load("monoid", _read_json(args.input))
        r = monoid_report(datum, _monoid_what(args))
        return dumps(r) if args.format == "json" else monoid_table(datum, r)
    raise InputError(f"unknown command {args.command}")


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
        stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "selftest":
            text, ok = selftest(args.seed, args.sweep, args.format)
            stdout.write(text)
            return 0 if ok else 3
        text = render(args)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except PropertyViolation as exc:
        print(f"internal consistency failure: {exc}", file=stderr)
        return 3
    except TorcellsError as exc:  # pragma: no cover - every subclass is handled above
        print(f"error: {exc}", file=stderr)
        return 2
    except Exception as exc:  # bug trap: never report success on an unexpected failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return 3
    stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


# -- selftest -----------------------------------------------------------------


def entry_argv(entry: CorpusEntry, k: int) -> list[str]:
    return [entry.kind, "--input", str(corpus_path(entry.file)), *entry.runs[k], "--format", "json"]


def entry_output(entry: CorpusEntry, k: int) -> str:
    """The JSON text a golden run produces, computed in-process."""
    args = build_parser().parse_args(entry_argv(entry, k))
    return render(args)


def _fan_invariants(fan: Fan, lam: Vector) -> list[str]:
    problems = []
    if not fan_validate(fan).complete:
        problems.append("fan not complete")
    if not integrate(fundamental_class(fan), fan).is_zero():
        problems.append("integral of [X] is not 0")
    if integrate(point_class(fan, 0), fan) != CharFraction.constant(fan.rank, 1):
        problems.append("integral of a point is not 1")
    basis = localized_basis_matrix(fan, lam)
    if not basis.is_lower_triangular() or any(e.is_zero() for e in basis.diagonal()):
        problems.append("basis matrix not triangular with nonzero diagonal")
    for dim, s in zip(basis.cell_dims, basis.class_sums()):
        want = CharFraction.constant(fan.rank, 1 if dim == 0 else 0)
        if s != want:
            problems.append(f"class sum {s} for a {dim}-cell")
    h = h_polynomial(fan, lam)
    if h != h_from_f_vector(fan) or h != h[::-1]:
        problems.append(f"h-polynomial {h} fails the f-to-h or palindrome check")
    cr = chow_ranks(fan, lam)
    if not (cr["free"] and cr["rank_additive"]):
        problems.append("Chow rank verdict failed")
    return problems


def _cone_invariants(sigma: Cone) -> list[str]:
    problems = []
    cert = is_algebraic_rational_cell(sigma)
    if cert.verdict != is_simplicial(sigma):
        problems.append("rational-cell verdict differs from simpliciality")
    if cert.verdict and product_formula_check(sigma) != cert.cover_degree:
        problems.append("product formula disagrees with the cover degree")
    n = len(dual_cone(sigma).rays)
    e = eq_mult(sigma).value
    if eq_mult(sigma, dual_order=list(range(n))[::-1]).value != e:
        problems.append("eq_mult depends on the ray order")
    return problems


def _monoid_invariants(datum: MonoidDatum) -> list[str]:
    problems = []
    rep = monoid_cell_check(datum)
    if not rep.equivalence_ok:
        problems.append("criteria (dim T = |E1|) and (dim M = |R1|) disagree")
    if face_orbit_count(datum) != len(cross_section_lattice(datum)):
        problems.append("cross-section lattice misses a face orbit")
    w = datum.weyl
    if w.family == "A" and datum.dominant_points == (tuple([1] + [0] * w.rank),):
        n = w.rank + 1
        if not rep.R1_count == rep.dim_M == rook_rank1_count(n) == n * n:
            problems.append("rook oracle mismatch")
    return problems


def selftest(seed: int = 0, sweep: int = 0, fmt: str = "table") -> tuple[str, bool]:
    checks: list[dict] = []

    def check(name: str, fn: Callable[[], list[str]]):
        try:
            problems = fn()
        except TorcellsError as exc:
            problems = [f"{type(exc).__name__}: {exc}"]
        checks.append({"name": name, "ok": not problems, "problems": problems})

    entries = load_corpus()
    for entry in entries:
        obj = _load(entry.kind, entry.data)
        if entry.kind == "fan":
            check(f"{entry.name} invariants", lambda: _fan_invariants(obj, entry.lam))
        elif entry.kind == "cone":
            if obj.is_full_dimensional() and obj.is_strongly_convex:
                check(f"{entry.name} invariants", lambda: _cone_invariants(obj))
        else:
            check(f"{entry.name} invariants", lambda: _monoid_invariants(obj))
        for k in range(len(entry.runs)):
            def golden(entry=entry, k=k):
                want = read_golden(entry, k)
                if want is None:
                    return [f"golden {entry.golden_name(k)} missing"]
                got = entry_output(entry, k)
                return [] if got == want else [f"output differs from {entry.golden_name(k)}"]
            check(f"{entry.name} golden {k}", golden)

    if sweep > 0:
        rng = random.Random(seed)
        fans = [(e.name, _load("fan", e.data)) for e in entries if e.kind == "fan"]

        def sweep_cones():
            problems = []
            for _ in range(sweep):
                d = rng.randint(1, 4)
                problems += _cone_invariants(random_cone(rng, d))
                problems += _cone_invariants(random_simplicial_cone(rng, d))
            return problems

        def sweep_lambdas():
            problems = []
            for name, fan in fans:
                ref = h_from_f_vector(fan)
                for _ in range(sweep):
                    lam = random_generic_lambda(rng, fan)
                    if h_polynomial(fan, lam) != ref:
                        problems.append(f"{name}: h-polynomial changes at {list(lam)}")
            return problems

        check(f"sweep cones (seed {seed}, n {sweep})", sweep_cones)
        check(f"sweep lambdas (seed {seed}, n {sweep})", sweep_lambdas)

    ok = all(c["ok"] for c in checks)
    if fmt == "json":
        return dumps({"checks": checks, "passed": ok}), ok
    lines = []
    for c in checks:
        lines.append(f"{'ok  ' if c['ok'] else 'FAIL'} {c['name']}")
        lines += [f"     {p}" for p in c["problems"]]
    lines.append(f"{sum(c['ok'] for c in checks)}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n", ok


if __name__ == "__main__":  # pragma: no cover
    main()
