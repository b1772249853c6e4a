"""Command line front end.

Every run is fully specified by its flags: a subcommand, a comma-separated
weight vector, and an output format (text, json, or latex).  Results go to
stdout, errors to stderr.  Exit status is 0 on success, 1 when `verify`
finds a failure, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .laurent import LaurentPoly, parse_laurent
from .ring import (
    build_sector_rings,
    element_from_residues,
    generator_table,
    presentation,
    reduce,
    star_multiply,
    torsion_report,
    total_rank,
    verify,
)
from .sectors import (
    WpsData,
    build_wps,
    check_sector,
    fixed_set,
    obstruction_set,
)


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p.strip()) for p in text.split(","))
    except ValueError:
        raise ValueError(
            f"weights must be comma-separated integers, got {text!r}"
        ) from None


def _weights_str(d: WpsData) -> str:
    return ",".join(str(w) for w in d.b)


def _zeta_text(s: int, ell: int) -> str:
    f = Fraction(s, ell)
    if f == 0:
        return "1"
    p, q = f.numerator, f.denominator
    if (p, q) == (1, 2):
        return "-1"
    if (p, q) == (1, 4):
        return "i"
    if (p, q) == (3, 4):
        return "-i"
    return f"e^(2*pi*i*{p}/{q})"


def _zeta_latex(s: int, ell: int) -> str:
    f = Fraction(s, ell)
    if f == 0:
        return "1"
    p, q = f.numerator, f.denominator
    if (p, q) == (1, 2):
        return "-1"
    if (p, q) == (1, 4):
        return "i"
    if (p, q) == (3, 4):
        return "-i"
    return f"e^{{2\\pi i\\,{p}/{q}}}"


def _fixed_text(d: WpsData, ks: tuple[int, ...]) -> str:
    if len(ks) == len(d.b):
        return f"C^{len(d.b)}"
    if not ks:
        return "0"
    return " + ".join(f"C_({d.b[k]})" for k in ks)


def _fixed_latex(d: WpsData, ks: tuple[int, ...]) -> str:
    if len(ks) == len(d.b):
        return f"\\mathbb{{C}}^{{{len(d.b)}}}"
    if not ks:
        return "0"
    return " \\oplus ".join(f"\\mathbb{{C}}_{{({d.b[k]})}}" for k in ks)


def _logw_text(d: WpsData, k: int, s: int) -> str:
    return str(Fraction(d.logw[k][s], d.ell))


def _logw_latex(d: WpsData, k: int, s: int) -> str:
    f = Fraction(d.logw[k][s], d.ell)
    if f.denominator == 1:
        return str(f.numerator)
    return f"\\frac{{{f.numerator}}}{{{f.denominator}}}"


def _factors_text(weights: tuple[int, ...]) -> str:
    return "".join(f"(1-u^-{w})" for w in weights) or "1"


def _factors_latex(weights: tuple[int, ...]) -> str:
    return "".join(f"(1-u^{{-{w}}})" for w in weights) or "1"


def _sub(base: str, idx: int) -> str:
    # TeX only needs subscript braces past one character
    return f"{base}_{idx}" if 0 <= idx <= 9 else f"{base}_{{{idx}}}"


def _poly_latex(p: LaurentPoly) -> str:
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for e, c in p:
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            upart = "u" if e == 1 else f"u^{{{e}}}"
            body = upart if mag == 1 else f"{mag}{upart}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


def _obstruction_weights(d: WpsData, s: int, t: int) -> tuple[int, ...]:
    return tuple(d.b[k] for k in obstruction_set(d, s, t))


def _fixed_weights(d: WpsData, s: int) -> tuple[int, ...]:
    return tuple(d.b[k] for k in fixed_set(d, s))


def _header_lines(d: WpsData) -> list[str]:
    return [f"weights: {_weights_str(d)}", f"ell: {d.ell}"]


def _json_doc(kind: str, d: WpsData, **extra) -> str:
    doc = {"kind": kind, "weights": list(d.b), "ell": d.ell}
    doc.update(extra)
    return json.dumps(doc, indent=2)


def cmd_chart(d: WpsData, fmt: str) -> str:
    if fmt == "json":
        sectors = [
            {
                "s": s,
                "zeta": _zeta_text(s, d.ell),
                "fixed": list(fixed_set(d, s)),
                "logweights": [_logw_text(d, k, s) for k in range(len(d.b))],
                "generator": f"alpha_{s}",
            }
            for s in range(d.ell)
        ]
        return _json_doc("chart", d, sectors=sectors)
    if fmt == "latex":
        cols = "c||" + "|".join("c" * d.ell) + "|"
        rows = [
            "s & " + " & ".join(str(s) for s in range(d.ell)) + " \\\\ \\hline \\hline",
            "\\zeta_s & "
            + " & ".join(_zeta_latex(s, d.ell) for s in range(d.ell))
            + " \\\\ \\hline",
            "\\text{fixed locus} & "
            + " & ".join(_fixed_latex(d, fixed_set(d, s)) for s in range(d.ell))
            + " \\\\ \\hline",
        ]
        for k in range(len(d.b)):
            rows.append(
                _sub("a", k) + "(\\zeta_s) & "
                + " & ".join(_logw_latex(d, k, s) for s in range(d.ell))
                + " \\\\ \\hline"
            )
        rows.append(
            "\\text{generator} & "
            + " & ".join(_sub("\\alpha", s) for s in range(d.ell))
            + " \\\\ \\hline"
        )
        body = "\n".join(rows)
        return f"\\begin{{array}}{{{cols}}}\n{body}\n\\end{{array}}"
    lines = _header_lines(d)
    for s in range(d.ell):
        ks = fixed_set(d, s)
        logw = ", ".join(_logw_text(d, k, s) for k in range(len(d.b)))
        lines.append(
            f"sector {s}: zeta = {_zeta_text(s, d.ell)}, "
            f"fixed = {_fixed_text(d, ks)}, "
            f"logweights = ({logw}), generator = alpha_{s}"
        )
    return "\n".join(lines)


def _table_display_range(ell: int) -> range:
    # alpha_0 is the unit, so the displayed table starts at sector 1
    # unless there is nothing else to show
    return range(1, ell) if ell > 1 else range(ell)


def cmd_table(d: WpsData, fmt: str) -> str:
    rings = build_sector_rings(d)
    if fmt == "json":
        rows = [
            {"s": s, "t": t, "target": tgt, "coeff": str(c)}
            for s, t, tgt, c in generator_table(rings, d)
        ]
        return _json_doc("table", d, tableI=rows)
    if fmt == "latex":
        show = _table_display_range(d.ell)
        header = (
            " & "
            + " & ".join(_sub("\\alpha", t) for t in show)
            + " \\\\ \\hline \\hline"
        )
        lines = [header]
        for s in show:
            cells = []
            for t in show:
                if t < s:
                    cells.append("")
                else:
                    tgt = (s + t) % d.ell
                    ws = _obstruction_weights(d, s, t)
                    coeff = _factors_latex(ws) if ws else ""
                    cells.append(coeff + _sub("\\alpha", tgt))
            lines.append(_sub("\\alpha", s) + " & " + " & ".join(cells) + " \\\\ \\hline")
        cols = "c||" + "|".join("c" for _ in show) + "|"
        body = "\n".join(lines)
        return f"\\begin{{array}}{{{cols}}}\n{body}\n\\end{{array}}"
    lines = _header_lines(d)
    show = _table_display_range(d.ell)
    for s in show:
        for t in show:
            if t < s:
                continue
            tgt = (s + t) % d.ell
            ws = _obstruction_weights(d, s, t)
            cell = f"alpha_{tgt}" if not ws else f"{_factors_text(ws)} alpha_{tgt}"
            lines.append(f"alpha_{s} * alpha_{t} = {cell}")
    return "\n".join(lines)


def cmd_kernels(d: WpsData, fmt: str) -> str:
    rings = build_sector_rings(d)
    if fmt == "json":
        sectors = [
            {
                "s": r.sector,
                "fixed": list(fixed_set(d, r.sector)),
                "kernel": str(r.gen),
                "rank": r.rank,
            }
            for r in rings
        ]
        return _json_doc("kernels", d, sectors=sectors)
    if fmt == "latex":
        lines = ["\\begin{align*}"]
        for r in rings:
            ws = _fixed_weights(d, r.sector)
            prod = _factors_latex(ws) if ws else "1"
            sep = " \\\\" if r.sector < d.ell - 1 else ""
            lines.append(
                "\\ker(" + _sub("\\kappa", r.sector) + ") &= \\langle "
                + _sub("\\alpha", r.sector) + f" {prod} \\rangle{sep}"
            )
        lines.append("\\end{align*}")
        return "\n".join(lines)
    lines = _header_lines(d)
    for r in rings:
        ws = _fixed_weights(d, r.sector)
        lines.append(f"s={r.sector}: {_factors_text(ws)}  [rank {r.rank}]")
    return "\n".join(lines)


def cmd_present(d: WpsData, fmt: str) -> str:
    pres = presentation(d)
    if fmt == "json":
        rows_i = [
            {"s": s, "t": t, "target": tgt, "coeff": str(c)}
            for s, t, tgt, c in pres.relations_i
        ]
        rows_j = [{"s": s, "gen": str(g)} for s, g in pres.relations_j]
        return _json_doc(
            "presentation", d, tableI=rows_i, tableJ=rows_j, unit=pres.unit_relation
        )
    show = set(_table_display_range(d.ell))
    if fmt == "latex":
        lines = ["\\begin{align*}"]
        for s, t, tgt, _ in pres.relations_i:
            if s not in show or t not in show:
                continue
            ws = _obstruction_weights(d, s, t)
            coeff = _factors_latex(ws) if ws else ""
            lines.append(
                _sub("\\alpha", s) + " " + _sub("\\alpha", t) + " &= " + coeff + _sub("\\alpha", tgt) + " \\\\"
            )
        for s, _ in pres.relations_j:
            ws = _fixed_weights(d, s)
            prod = _factors_latex(ws) if ws else "1"
            lines.append(prod + "\\," + _sub("\\alpha", s) + " &= 0 \\\\")
        lines.append("\\alpha_0 &= 1")
        lines.append("\\end{align*}")
        return "\n".join(lines)
    lines = _header_lines(d)
    lines.append(
        "generators: " + ", ".join(f"alpha_{s}" for s in range(d.ell))
    )
    lines.append("I relations:")
    for s, t, tgt, _ in pres.relations_i:
        if s not in show or t not in show:
            continue
        ws = _obstruction_weights(d, s, t)
        cell = f"alpha_{tgt}" if not ws else f"{_factors_text(ws)} alpha_{tgt}"
        lines.append(f"  alpha_{s} alpha_{t} - {cell}")
    lines.append("J relations:")
    for s, _ in pres.relations_j:
        ws = _fixed_weights(d, s)
        if ws:
            lines.append(f"  {_factors_text(ws)} alpha_{s}")
        else:
            lines.append(f"  alpha_{s}")
    lines.append("unit relation: alpha_0 - 1")
    return "\n".join(lines)


def cmd_rank(d: WpsData, fmt: str) -> str:
    rings = build_sector_rings(d)
    total = total_rank(rings)
    if fmt == "json":
        return _json_doc("rank", d, ranks=[r.rank for r in rings], total=total)
    if fmt == "latex":
        return f"\\operatorname{{rank}} = {total}"
    return str(total)


def cmd_torsion(d: WpsData, fmt: str) -> str:
    rings = build_sector_rings(d)
    rep = torsion_report(rings)
    status = "PASS" if rep.passed else "FAIL"
    if fmt == "json":
        sectors = [
            {
                "s": e.sector,
                "rank": e.rank,
                "monic": e.monic,
                "constant": e.constant,
                "free": e.free,
            }
            for e in rep.entries
        ]
        return _json_doc("torsion", d, sectors=sectors, status=status)
    if fmt == "latex":
        ranks = ", ".join(str(e.rank) for e in rep.entries)
        return f"\\text{{torsion-free: {status} (ranks {ranks})}}"
    lines = _header_lines(d)
    for e in rep.entries:
        kind = "monic" if e.monic else "not monic"
        verdict = "free" if e.free else "torsion risk"
        lines.append(
            f"s={e.sector}: rank {e.rank}, {kind}, "
            f"constant term {e.constant}: {verdict}"
        )
    lines.append(f"torsion-free: {status}")
    return "\n".join(lines)


def cmd_verify(d: WpsData, trials: int, seed: int, fmt: str) -> tuple[str, int]:
    rep = verify(d, trials=trials, seed=seed)
    if rep.passed:
        summary = f"PASS (cocycle exhaustive; {rep.trials} random associativity trials)"
    else:
        summary = f"FAIL ({len(rep.failures)} failures)"
    if fmt == "json":
        body = _json_doc(
            "verify",
            d,
            trials=rep.trials,
            seed=rep.seed,
            exponent_checks=rep.exponent_checks,
            status="PASS" if rep.passed else "FAIL",
            failures=list(rep.failures),
        )
    elif fmt == "latex":
        body = f"\\text{{{summary}}}"
    else:
        body = summary
        if not rep.passed:
            body += "".join(f"\n  - {f}" for f in rep.failures)
    return body, 0 if rep.passed else 1


def cmd_reduce(d: WpsData, sector: int, poly_text: str, fmt: str) -> str:
    check_sector(d, sector)
    p = parse_laurent(poly_text)
    rings = build_sector_rings(d)
    r = reduce(rings[sector], p)
    if fmt == "json":
        return _json_doc(
            "reduce", d, sector=sector, input=str(p), residue=str(r)
        )
    if fmt == "latex":
        return _poly_latex(r)
    return str(r)


def _parse_element_spec(text: str, rings, d: WpsData):
    residues: dict[int, LaurentPoly] = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty component in element spec")
        if ":" not in chunk:
            raise ValueError(
                f"component {chunk!r} must look like 'sector:polynomial'"
            )
        stxt, ptxt = chunk.split(":", 1)
        try:
            s = int(stxt.strip())
        except ValueError:
            raise ValueError(f"bad sector index {stxt.strip()!r}") from None
        check_sector(d, s)
        if s in residues:
            raise ValueError(f"sector {s} assigned twice in element spec")
        residues[s] = parse_laurent(ptxt)
    return element_from_residues(rings, d, residues)


def cmd_mul(d: WpsData, lhs: str, rhs: str, fmt: str) -> str:
    rings = build_sector_rings(d)
    x = _parse_element_spec(lhs, rings, d)
    y = _parse_element_spec(rhs, rings, d)
    prod = star_multiply(rings, d, x, y)
    nonzero = [(s, c) for s, c in enumerate(prod.comps) if not c.is_zero]
    if fmt == "json":
        comps = [{"s": s, "residue": str(c)} for s, c in nonzero]
        return _json_doc("mul", d, lhs=lhs, rhs=rhs, components=comps)
    if fmt == "latex":
        if not nonzero:
            return "0"
        parts = []
        for s, c in nonzero:
            if c == 1:
                parts.append(_sub("\\alpha", s))
            else:
                parts.append(f"({_poly_latex(c)})\\," + _sub("\\alpha", s))
        return " + ".join(parts)
    if not nonzero:
        return "0"
    return "; ".join(f"{s}:{c}" for s, c in nonzero)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="korb",
        description=(
            "Exact orbifold K-theory of weighted projective spaces: "
            "charts, multiplication tables, kernels, presentations, and "
            "ring arithmetic over Z[u,u^-1]."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "chart": "sector chart: roots of unity, fixed loci, logweights",
        "table": "multiplication table of the sector generators",
        "kernels": "kernel generator and rank of every sector",
        "present": "generators-and-relations presentation of the ring",
        "rank": "total free rank over Z",
        "torsion": "per-sector torsion-freeness certificate",
        "verify": "exhaustive exponent checks plus randomized ring laws",
        "reduce": "canonical residue of a polynomial in one sector",
        "mul": "star-product of two ring elements",
    }
    for name, help_text in helps.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument(
            "weights", help="comma-separated positive integers, e.g. 1,2,4"
        )
        sp.add_argument(
            "--format", choices=("text", "json", "latex"), default="text"
        )
        if name == "verify":
            sp.add_argument("--trials", type=int, default=500)
            sp.add_argument("--seed", type=int, default=0)
        if name == "reduce":
            sp.add_argument("--sector", type=int, required=True)
            sp.add_argument("--poly", required=True)
        if name == "mul":
            sp.add_argument("--lhs", required=True)
            sp.add_argument("--rhs", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        d = build_wps(_parse_weights(args.weights))
        code = 0
        if args.command == "chart":
            body = cmd_chart(d, args.format)
        elif args.command == "table":
            body = cmd_table(d, args.format)
        elif args.command == "kernels":
            body = cmd_kernels(d, args.format)
        elif args.command == "present":
            body = cmd_present(d, args.format)
        elif args.command == "rank":
            body = cmd_rank(d, args.format)
        elif args.command == "torsion":
            body = cmd_torsion(d, args.format)
        elif args.command == "verify":
            if args.trials < 1:
                raise ValueError("--trials must be >= 1")
            body, code = cmd_verify(d, args.trials, args.seed, args.format)
        elif args.command == "reduce":
            body = cmd_reduce(d, args.sector, args.poly, args.format)
        else:
            body = cmd_mul(d, args.lhs, args.rhs, args.format)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
