"""Command-line front end: ``delsarte-k3 <subcommand> [flags]``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Sequence

from . import field_characters as fc
from . import l_series as ls
from . import pencil_counts as pc
from . import picard_fuchs as pf

SCHEMA = "delsarte-k3/1"
METHODS = ("brute", "koblitz", "closed")


class UsageError(Exception):
    pass


def rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _complex(z) -> list[float]:
    z = complex(z)
    return [round(z.real, 10) + 0.0, round(z.imag, 10) + 0.0]


def _psi(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse psi {text!r}") from exc


def _field(args) -> fc.FieldContext:
    if args.p is None:
        raise UsageError("--p is required")
    try:
        return fc.make_field(args.p, args.u)
    except (fc.InvalidPrime, fc.InvalidDegree) as exc:
        raise UsageError(str(exc)) from exc


def _spec(label: str | None) -> pc.PencilSpec:
    if not label:
        raise UsageError("--family is required")
    try:
        return pc.get_pencil(label)
    except pc.UnknownPencil as exc:
        raise UsageError(f"unknown family {label!r}") from exc


def _psi_in(ctx: fc.FieldContext, psi: Fraction) -> int:
    if psi.denominator % ctx.p == 0:
        raise UsageError(f"psi={psi} has a pole mod {ctx.p}")
    return ctx.from_rational(psi.numerator, psi.denominator)


def _table(ctx: fc.FieldContext, args) -> fc.GaussTable:
    return fc.gauss_table(ctx, args.precision)


def count_one(spec: pc.PencilSpec, ctx: fc.FieldContext, psi: int, method: str, table=None) -> int:
    if method == "brute":
        return pc.brute_force_count(spec, psi, ctx)
    if method == "koblitz":
        return pc.koblitz_count(spec, psi, ctx, table)
    return pc.closed_count(spec, psi, ctx, table)


# -- subcommands ----------------------------------------------------------------


def cmd_count(args) -> tuple[dict, int]:
    spec, ctx, psi = _spec(args.family), _field(args), _psi(args.psi)
    x = _psi_in(ctx, psi)
    methods = METHODS if args.method == "all" else (args.method,)
    table = _table(ctx, args)
    counts = {m: count_one(spec, ctx, x, m, table) for m in methods}
    agree = len(set(counts.values())) == 1
    out = {"family": spec.label, "p": ctx.p, "u": ctx.u, "q": ctx.q, "psi": rational(psi),
           "counts": counts, "agree": agree}
    return out, 0 if agree else 1


def cmd_gauss(args) -> tuple[dict, int]:
    ctx = _field(args)
    table = _table(ctx, args)
    q, qx = ctx.q, ctx.qx
    norm = max(abs(abs(complex(table[m])) ** 2 - q) for m in range(1, qx)) if qx > 1 else 0.0
    hd = max(
        (fc.hasse_davenport_residual(table, N, m) for N in range(1, min(qx, 6) + 1) if qx % N == 0
         for m in range(qx)),
        default=0.0,
    )
    out = {"p": ctx.p, "u": ctx.u, "q": q, "modulus": list(ctx.modulus), "generator": ctx.generator,
           "precision_bits": table.precision_bits, "values": [_complex(table[m]) for m in range(qx)],
           "max_norm_defect": float(norm), "max_hasse_davenport_residual": float(hd)}
    return out, 0


def cmd_hypsum(args) -> tuple[dict, int]:
    spec, ctx, psi = _spec(args.family), _field(args), _psi(args.psi)
    x = _psi_in(ctx, psi)
    table = _table(ctx, args)
    terms = pc.closed_form_terms(spec, x, ctx, table)
    out = {"family": spec.label, "p": ctx.p, "u": ctx.u, "q": ctx.q, "psi": rational(psi),
           "t": pc.t_value(spec.label, x, ctx),
           "terms": {k: (v if k == "algebraic" else _complex(v)) for k, v in terms.items()},
           "count": pc.closed_count(spec, x, ctx, table)}
    return out, 0


def _row(params: pf.PFParams) -> dict:
    return {"alpha": [rational(a) for a in params.alpha], "beta": [rational(b) for b in params.beta],
            "t_exponent": params.t_exponent, "t_constant": rational(params.t_constant),
            "leading_power": rational(params.leading_power)}


def cmd_pf_params(args) -> tuple[dict, int]:
    spec = _spec(args.family)
    if spec.label not in pc.CLOSED_FORM_FAMILIES:
        raise UsageError(f"no Picard-Fuchs data for {spec.label}")
    data = pf.lattice_points(spec)
    rows = [{"name": name, "point": list(b), **_row(params)}
            for name, (b, params) in pf.representative_rows(spec.label).items()]
    gahrs = pf.gahrs_parameters(spec)
    out = {"family": spec.label, "points": [list(b) for b in data.points],
           "orbits": [[list(b) for b in o] for o in data.orbits], "rows": rows, "holomorphic": _row(gahrs)}
    return out, 0


def cmd_lfactor(args) -> tuple[dict, int]:
    spec, psi = _spec(args.family), _psi(args.psi)
    if args.p is None:
        raise UsageError("--p is required")
    factors = ls.family_factors(spec.label, psi)
    chi = ls.TwistCharacter("sqrt_minus_one")
    out_factors = {}
    for f in factors:
        series = f.build(args.p, args.terms, chi)
        out_factors[f.name] = [_complex(c) for c in series.coeffs]
    return {"family": spec.label, "p": args.p, "psi": rational(psi), "terms": args.terms,
            "factors": out_factors}, 0


def cmd_verify(args) -> tuple[dict, int]:
    spec, psi = _spec(args.family), _psi(args.psi)
    if args.p is None:
        raise UsageError("--p is required")
    report = ls.verify_main_theorem(spec.label, args.p, psi, args.terms)
    out = report.as_dict()
    out["psi"] = rational(psi)
    return out, 0 if report.ok else 1


def cmd_fixtures(args) -> tuple[list[dict], int]:
    spec, ctx = _spec(args.family), _field(args)
    method = "brute" if args.method == "all" else args.method
    psis = [_psi_in(ctx, _psi(args.psi))] if args.psi is not None else list(range(ctx.q))
    table = _table(ctx, args) if method != "brute" else None

    def one(x: int) -> dict:
        return {"family": spec.label, "p": ctx.p, "u": ctx.u, "psi": x, "count": count_one(spec, ctx, x, method, table)}

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        records = list(pool.map(one, psis))
    return records, 0


COMMANDS = {
    "count": cmd_count,
    "gauss": cmd_gauss,
    "hypsum": cmd_hypsum,
    "pf-params": cmd_pf_params,
    "lfactor": cmd_lfactor,
    "verify": cmd_verify,
    "fixtures": cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="delsarte-k3", description=__doc__.splitlines()[0])
    parser.add_argument("subcommand", choices=sorted(COMMANDS))
    parser.add_argument("--family")
    parser.add_argument("--p", type=int)
    parser.add_argument("--u", type=int, default=1)
    parser.add_argument("--psi", default=None)
    parser.add_argument("--method", choices=(*METHODS, "all"), default="all")
    parser.add_argument("--terms", type=int, default=2)
    parser.add_argument("--precision", type=int, choices=(53, 128, 256), default=None)
    parser.add_argument("--out")
    parser.add_argument("--format", choices=("json", "csv", "human"), default="json")
    parser.add_argument("--threads", type=int, default=1)
    return parser


def _flatten(record: dict, prefix: str = "") -> dict:
    flat: dict[str, Any] = {}
    for k, v in record.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            flat.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            flat[key] = json.dumps(v, separators=(",", ":"))
        else:
            flat[key] = v
    return flat


def render(payload, fmt: str, subcommand: str) -> str:
    records = payload if isinstance(payload, list) else [payload]
    if fmt == "json":
        if subcommand == "fixtures":
            return "".join(json.dumps({"schema": SCHEMA, **r}, sort_keys=True) + "\n" for r in records)
        return json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n"
    flat = [_flatten(r) for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        fields = sorted({k for r in flat for k in r})
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
        return buf.getvalue()
    return "".join("".join(f"{k}: {v}\n" for k, v in sorted(r.items())) + "\n" for r in flat)


DOMAIN_ERRORS = (
    UsageError, ValueError, ZeroDivisionError,
)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.subcommand in ("count", "hypsum") and args.psi is None:
        args.psi = "1"
    if args.subcommand in ("lfactor", "verify") and args.psi is None:
        args.psi = "1"
    try:
        payload, status = COMMANDS[args.subcommand](args)
    except DOMAIN_ERRORS as exc:
        print(f"delsarte-k3: error: {exc}", file=sys.stderr)
        return 2
    text = render(payload, args.format, args.subcommand)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
