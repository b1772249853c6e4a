import io
import json
import re
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from korb.cli import main
from korb.laurent import parse_laurent
from korb.ring import build_sector_rings, star_multiply, element_from_residues
from korb.sectors import build_wps, kernel_generator, structure_coefficient


def run(*args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(args))
    return code, out.getvalue(), err.getvalue()


CHART_124 = """\
weights: 1,2,4
ell: 4
sector 0: zeta = 1, fixed = C^3, logweights = (0, 0, 0), generator = alpha_0
sector 1: zeta = i, fixed = C_(4), logweights = (1/4, 1/2, 0), generator = alpha_1
sector 2: zeta = -1, fixed = C_(2) + C_(4), logweights = (1/2, 0, 0), generator = alpha_2
sector 3: zeta = -i, fixed = C_(4), logweights = (3/4, 1/2, 0), generator = alpha_3
"""

TABLE_124 = """\
weights: 1,2,4
ell: 4
alpha_1 * alpha_1 = (1-u^-2) alpha_2
alpha_1 * alpha_2 = alpha_3
alpha_1 * alpha_3 = (1-u^-1)(1-u^-2) alpha_0
alpha_2 * alpha_2 = (1-u^-1) alpha_0
alpha_2 * alpha_3 = (1-u^-1) alpha_1
alpha_3 * alpha_3 = (1-u^-1)(1-u^-2) alpha_2
"""

KERNELS_124 = """\
weights: 1,2,4
ell: 4
s=0: (1-u^-1)(1-u^-2)(1-u^-4)  [rank 7]
s=1: (1-u^-4)  [rank 4]
s=2: (1-u^-2)(1-u^-4)  [rank 6]
s=3: (1-u^-4)  [rank 4]
"""

PRESENT_124 = """\
weights: 1,2,4
ell: 4
generators: alpha_0, alpha_1, alpha_2, alpha_3
I relations:
  alpha_1 alpha_1 - (1-u^-2) alpha_2
  alpha_1 alpha_2 - alpha_3
  alpha_1 alpha_3 - (1-u^-1)(1-u^-2) alpha_0
  alpha_2 alpha_2 - (1-u^-1) alpha_0
  alpha_2 alpha_3 - (1-u^-1) alpha_1
  alpha_3 alpha_3 - (1-u^-1)(1-u^-2) alpha_2
J relations:
  (1-u^-1)(1-u^-2)(1-u^-4) alpha_0
  (1-u^-4) alpha_1
  (1-u^-2)(1-u^-4) alpha_2
  (1-u^-4) alpha_3
unit relation: alpha_0 - 1
"""

TORSION_124 = """\
weights: 1,2,4
ell: 4
s=0: rank 7, monic, constant term -1: free
s=1: rank 4, monic, constant term -1: free
s=2: rank 6, monic, constant term 1: free
s=3: rank 4, monic, constant term -1: free
torsion-free: PASS
"""

LATEX_TABLE_124 = """\
\\begin{array}{c||c|c|c|}
 & \\alpha_1 & \\alpha_2 & \\alpha_3 \\\\ \\hline \\hline
\\alpha_1 & (1-u^{-2})\\alpha_2 & \\alpha_3 & (1-u^{-1})(1-u^{-2})\\alpha_0 \\\\ \\hline
\\alpha_2 &  & (1-u^{-1})\\alpha_0 & (1-u^{-1})\\alpha_1 \\\\ \\hline
\\alpha_3 &  &  & (1-u^{-1})(1-u^{-2})\\alpha_2 \\\\ \\hline
\\end{array}
"""


class TestTextGoldens:
    def test_chart(self):
        code, out, err = run("chart", "1,2,4")
        assert (code, err) == (0, "")
        assert out == CHART_124

    def test_table(self):
        code, out, _ = run("table", "1,2,4")
        assert code == 0
        assert out == TABLE_124

    def test_kernels(self):
        code, out, _ = run("kernels", "1,2,4")
        assert code == 0
        assert out == KERNELS_124

    def test_present(self):
        code, out, _ = run("present", "1,2,4")
        assert code == 0
        assert out == PRESENT_124

    def test_torsion(self):
        code, out, _ = run("torsion", "1,2,4")
        assert code == 0
        assert out == TORSION_124

    def test_rank_is_bare_total(self):
        code, out, _ = run("rank", "1,2,4")
        assert code == 0
        assert out == "21\n"

    def test_verify_default(self):
        code, out, _ = run("verify", "1,2,4")
        assert code == 0
        assert out == "PASS (cocycle exhaustive; 500 random associativity trials)\n"

    def test_reduce(self):
        code, out, _ = run("reduce", "1,2,4", "--sector", "1", "--poly", "u^-1")
        assert code == 0
        assert out == "u^3\n"

    def test_mul_plain(self):
        code, out, _ = run("mul", "1,2,4", "--lhs", "1:1", "--rhs", "2:1")
        assert code == 0
        assert out == "3:1\n"

    def test_mul_reduced_sector0(self):
        code, out, _ = run("mul", "1,2,4", "--lhs", "2:1", "--rhs", "2:1")
        assert code == 0
        assert out == "0:-u^6 + u^5 + u^4 - u^3 + u^2 - u\n"

    def test_mul_reduced_sector2(self):
        code, out, _ = run("mul", "1,2,4", "--lhs", "3:1", "--rhs", "3:1")
        assert code == 0
        assert out == "2:u^4 - u^3 - u^2 + u\n"

    def test_mul_collapsed_target_prints_zero(self):
        # in 2,3 the product lands in sector 5 which is collapsed
        code, out, _ = run("mul", "2,3", "--lhs", "2:1", "--rhs", "3:1")
        assert code == 0
        assert out == "0\n"

    def test_generic_zeta_and_empty_fixed_locus(self):
        _, out, _ = run("chart", "2,3")
        assert "sector 1: zeta = e^(2*pi*i*1/6), fixed = 0" in out
        _, out, _ = run("kernels", "2,3")
        assert "s=1: 1  [rank 0]" in out


class TestJsonFormat:
    def test_chart_schema(self):
        code, out, _ = run("chart", "1,2,4", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "chart"
        assert doc["weights"] == [1, 2, 4]
        assert doc["ell"] == 4
        sec1 = doc["sectors"][1]
        assert sec1 == {
            "s": 1,
            "zeta": "i",
            "fixed": [2],
            "logweights": ["1/4", "1/2", "0"],
            "generator": "alpha_1",
        }

    def test_table_coeffs_roundtrip(self):
        _, out, _ = run("table", "1,2,4", "--format", "json")
        doc = json.loads(out)
        d = build_wps((1, 2, 4))
        assert len(doc["tableI"]) == 10
        for row in doc["tableI"]:
            want = structure_coefficient(d, row["s"], row["t"])
            assert parse_laurent(row["coeff"]) == want
            assert row["target"] == (row["s"] + row["t"]) % 4

    def test_kernels_roundtrip(self):
        _, out, _ = run("kernels", "2,3", "--format", "json")
        doc = json.loads(out)
        d = build_wps((2, 3))
        for sec in doc["sectors"]:
            assert parse_laurent(sec["kernel"]) == kernel_generator(d, sec["s"])

    def test_present_schema(self):
        _, out, _ = run("present", "1,2,4", "--format", "json")
        doc = json.loads(out)
        assert doc["kind"] == "presentation"
        assert len(doc["tableI"]) == 10
        assert [r["s"] for r in doc["tableJ"]] == [0, 1, 2, 3]
        assert doc["tableJ"][1]["gen"] == "1 - u^-4"
        assert doc["unit"] == "alpha_0 - 1"

    def test_rank_and_torsion(self):
        _, out, _ = run("rank", "1,2,4", "--format", "json")
        doc = json.loads(out)
        assert doc["ranks"] == [7, 4, 6, 4]
        assert doc["total"] == 21
        _, out, _ = run("torsion", "1,2,4", "--format", "json")
        doc = json.loads(out)
        assert doc["status"] == "PASS"
        assert all(sec["free"] for sec in doc["sectors"])

    def test_verify_schema(self):
        code, out, _ = run(
            "verify", "1,2,4", "--format", "json", "--trials", "5", "--seed", "1"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["status"] == "PASS"
        assert doc["trials"] == 5
        assert doc["seed"] == 1
        assert doc["exponent_checks"] == 115
        assert doc["failures"] == []

    def test_reduce_and_mul(self):
        _, out, _ = run(
            "reduce", "1,2,4", "--format", "json", "--sector", "1", "--poly", "u^-1"
        )
        doc = json.loads(out)
        assert doc["input"] == "u^-1"
        assert doc["residue"] == "u^3"
        _, out, _ = run(
            "mul", "1,2,4", "--format", "json", "--lhs", "2:1", "--rhs", "2:1"
        )
        doc = json.loads(out)
        assert doc["components"] == [
            {"s": 0, "residue": "-u^6 + u^5 + u^4 - u^3 + u^2 - u"}
        ]

    def test_mul_multicomponent_matches_library(self):
        _, out, _ = run(
            "mul", "1,2,4", "--format", "json",
            "--lhs", "1:1;2:u", "--rhs", "1:1+u",
        )
        doc = json.loads(out)
        d = build_wps((1, 2, 4))
        rings = build_sector_rings(d)
        x = element_from_residues(
            rings, d, {1: parse_laurent("1"), 2: parse_laurent("u")}
        )
        y = element_from_residues(rings, d, {1: parse_laurent("1+u")})
        prod = star_multiply(rings, d, x, y)
        got = {c["s"]: parse_laurent(c["residue"]) for c in doc["components"]}
        for s, comp in enumerate(prod.comps):
            assert got.get(s, parse_laurent("0")) == comp


class TestLatexFormat:
    def test_table_golden(self):
        code, out, _ = run("table", "1,2,4", "--format", "latex")
        assert code == 0
        assert out == LATEX_TABLE_124
        assert "(1-u^{-1})\\alpha_1" in out

    def test_chart_pieces(self):
        _, out, _ = run("chart", "1,2,4", "--format", "latex")
        assert out.startswith("\\begin{array}{c||c|c|c|c|}")
        assert "\\zeta_s & 1 & i & -1 & -i \\\\ \\hline" in out
        assert "a_0(\\zeta_s) & 0 & \\frac{1}{4} & \\frac{1}{2} & \\frac{3}{4}" in out
        assert "\\mathbb{C}^{3}" in out
        assert "\\mathbb{C}_{(2)} \\oplus \\mathbb{C}_{(4)}" in out

    def test_kernels_pieces(self):
        _, out, _ = run("kernels", "1,2,4", "--format", "latex")
        assert out.startswith("\\begin{align*}")
        assert (
            "\\ker(\\kappa_0) &= \\langle \\alpha_0 "
            "(1-u^{-1})(1-u^{-2})(1-u^{-4}) \\rangle" in out
        )
        assert out.rstrip().endswith("\\end{align*}")

    def test_present_pieces(self):
        _, out, _ = run("present", "1,2,4", "--format", "latex")
        assert "\\alpha_1 \\alpha_1 &= (1-u^{-2})\\alpha_2 \\\\" in out
        assert "(1-u^{-4})\\,\\alpha_1 &= 0 \\\\" in out
        assert "\\alpha_0 &= 1" in out

    def test_scalar_commands(self):
        _, out, _ = run("rank", "1,2,4", "--format", "latex")
        assert out == "\\operatorname{rank} = 21\n"
        _, out, _ = run(
            "reduce", "1,2,4", "--format", "latex", "--sector", "1", "--poly", "u^-1"
        )
        assert out == "u^{3}\n"
        _, out, _ = run(
            "mul", "1,2,4", "--format", "latex", "--lhs", "1:1", "--rhs", "2:1"
        )
        assert out == "\\alpha_3\n"


class TestCrossFormatConsistency:
    def test_text_table_cells_multiply_to_json_coeffs(self):
        _, text_out, _ = run("table", "1,2,4")
        _, json_out, _ = run("table", "1,2,4", "--format", "json")
        doc = json.loads(json_out)
        coeffs = {(r["s"], r["t"]): parse_laurent(r["coeff"]) for r in doc["tableI"]}
        cell_re = re.compile(
            r"^alpha_(\d+) \* alpha_(\d+) = (.*?)\s*alpha_(\d+)$"
        )
        seen = 0
        for line in text_out.splitlines()[2:]:
            m = cell_re.match(line)
            assert m, line
            s, t = int(m.group(1)), int(m.group(2))
            prod = parse_laurent("1")
            for factor in re.findall(r"\(([^)]*)\)", m.group(3)):
                prod = prod * parse_laurent(factor)
            assert prod == coeffs[(s, t)]
            seen += 1
        assert seen == 6


class TestErrorPaths:
    def test_bad_weight_named_by_index(self):
        code, out, err = run("chart", "1,0,4")
        assert code == 2
        assert out == ""
        assert err == "error: weight b_1 must be a positive integer, got 0\n"

    def test_non_integer_weights(self):
        code, _, err = run("chart", "a,b")
        assert code == 2
        assert err == "error: weights must be comma-separated integers, got 'a,b'\n"

    def test_sector_out_of_range(self):
        code, _, err = run("reduce", "1,2,4", "--sector", "9", "--poly", "1")
        assert code == 2
        assert err == "error: sector index 9 out of range [0, 4)\n"

    def test_malformed_poly_reports_position(self):
        code, _, err = run("reduce", "1,2,4", "--sector", "1", "--poly", "u^")
        assert code == 2
        assert err == "error: expected an integer (at position 2)\n"

    def test_duplicate_sector_in_spec(self):
        code, _, err = run("mul", "1,2,4", "--lhs", "1:1;1:u", "--rhs", "0:1")
        assert code == 2
        assert err == "error: sector 1 assigned twice in element spec\n"

    def test_trials_floor(self):
        code, _, err = run("verify", "1,2,4", "--trials", "0")
        assert code == 2
        assert err == "error: --trials must be >= 1\n"


class TestSubprocess:
    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "korb.cli", "rank", "1,2,4"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout == "21\n"

    def test_missing_required_flag_is_usage_error(self):
        proc = subprocess.run(
            [sys.executable, "-m", "korb.cli", "reduce", "1,2,4"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
        assert "--sector" in proc.stderr
