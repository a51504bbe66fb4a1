"""Report builders shared by the CLI and the acceptance suite.

Every builder returns ``(report, ok)`` where ``report`` is JSON-serializable and
contains no timings, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

import sympy as sp

from . import decomposition as dec
from . import fourier, spectrum
from .equivariant import EquivariantTriple, NovikovSeries
from .geometry import COMPONENTS, MINUS, ZERO, ThreeComponentGeometry, validate_simple_wall


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_locus(text: str) -> complex:
    """``"t=2.5"``, ``"t=1+2j"`` or ``"t=exp(i*pi/7)"``."""
    name, sep, value = text.partition("=")
    if not sep or name.strip() != "t":
        raise ValueError(f"locus must look like t=VALUE, got {text!r}")
    try:
        expr = sp.sympify(value.strip().replace("j", "*I"), locals={"i": sp.I})
        return complex(sp.N(expr, 30))
    except (sp.SympifyError, TypeError) as exc:
        raise ValueError(f"cannot parse locus value {value!r}") from exc


def geometry_report(g: ThreeComponentGeometry) -> tuple[dict, bool]:
    val = validate_simple_wall(g)
    rep = {
        "geometry": g.to_json(),
        "validation": val,
        "dimension_identity": g.dimension_identity(),
        "graded_dimension_identity": g.graded_dimension_identity(),
    }
    if not g.is_flop:
        rep["curve_lattice"] = g.lattice.to_json()
    ok = bool(val.get("ok")) and rep["dimension_identity"] and rep["graded_dimension_identity"]
    return rep, ok


def _triple_json(t: EquivariantTriple) -> dict:
    return {k: repr(t[k]) for k in COMPONENTS}


def decompose_report(g: ThreeComponentGeometry) -> tuple[dict, bool]:
    D = dec.decomposition_map(g)
    P = dec.pairing_identities_check(g)
    E = dec.exceptional_restriction_check(g)
    K = dec.kernel_report(g)
    refs = dec.reference_basis(g)
    compat = {r.name: dec.gkm_check(g, r.triple) for r in refs}
    rep = {
        "dimension_identity": g.dimension_identity(),
        "decomposition": D.to_json(),
        "pairing_identities": P,
        "exceptional_restriction": E,
        "kernel": K,
        "reference_basis": [
            {"name": r.name, "degree": r.degree, "restrictions": _triple_json(r.triple),
             "compatible": compat[r.name]}
            for r in refs
        ],
    }
    ok = (D.invertible and D.grading_ok and P["ok"] and E["ok"] and K["ok"] and g.dimension_identity()
          and all(all(v.values()) for v in compat.values()))
    return rep, ok


def q_exponent_ok(F) -> bool:
    A = fourier.continuous_ft_constants(F, 0)
    return A.q.s_exp == Fraction(-(F.r - 1), 2 * F.c)


def fourier_report(g: ThreeComponentGeometry, order: int = 3) -> tuple[dict, bool]:
    rep: dict = {"order": order, "constants": {}, "leading": {}, "discrete": {}}
    ok = True
    for name, F in g.components.items():
        if F.c == 0:
            rep["constants"][name] = {"skipped": "c_F = 0"}
            continue
        rows = []
        for j in range(abs(F.c)):
            A = fourier.continuous_ft_constants(F, j)
            ident = fourier.lambda_identity(F, j)
            ok &= ident
            rows.append({**A.to_json(), "lambda_identity": ident})
        qok = q_exponent_ok(F)
        ok &= qok
        rep["constants"][name] = {"per_j": rows, "q_exponent_ok": qok}
    F0 = g.components[ZERO]
    refs = dec.reference_basis(g)
    if F0.c != 0:
        for r in refs:
            recs = [fourier.continuous_ft_leading(F0, r.triple, j) for j in range(abs(F0.c))]
            rep["leading"][r.name] = [x.to_json() if x is not None else None for x in recs]
    one = NovikovSeries.constant(EquivariantTriple.one(g), order)
    for side in ("-", "+"):
        D = fourier.discrete_ft(g, one, side, order)
        vanish = all(not D.per_k[k] for k in range(1, order + 1)) if side == "-" else \
            all(not D.per_k[k] for k in range(-order, 0))
        ok &= vanish
        rep["discrete"][f"1 -> X{side}"] = {**D.to_json(), "positive_k_vanish": vanish}
    special = {}
    for r in refs:
        if r.kind != "s_li":
            continue
        D = fourier.discrete_ft(g, NovikovSeries.constant(r.triple, order), "-", order)
        val = D.value_at_qw0()
        expected = dec.kirwan_map(g, r.triple, "-")
        got = val.get(Fraction(0), {})
        match = set(val) <= {Fraction(0)} and set(got) <= {0} and got.get(0, g.Xm.alg.zero()) == expected
        ok &= match
        special[r.name] = {"value_at_QW0": {str(k): {str(z): repr(x) for z, x in v.items()} for k, v in val.items()},
                           "kappa_minus": repr(expected), "match": match}
    rep["special_leading_terms"] = special
    return rep, bool(ok)


def spectrum_report(g: ThreeComponentGeometry, loci: Sequence[complex], tol: float = 1e-9) -> tuple[dict, bool, list]:
    g.require_nonflop()
    oracle = spectrum.oracle_for_geometry(g)
    rows = []
    csv_rows = []
    ok = True
    for t in loci:
        pred = spectrum.predicted_spectrum(g, t)
        ev = oracle.eigenvalues(t)
        cmp = spectrum.spectrum_compare(pred.values, ev, tol)
        comm = oracle.commuting_check(t)
        ok &= cmp["pass"] and comm
        rows.append({
            "t": [round(complex(t).real, 12) + 0.0, round(complex(t).imag, 12) + 0.0],
            "predicted": pred.to_json(),
            "oracle": [list(map(lambda x: round(x, 12) + 0.0, (z.real, z.imag))) for z in spectrum.sort_multiset(ev)],
            "pass": cmp["pass"],
            "max_distance": f"{cmp['max_distance']:.3e}",
            "threshold": f"{cmp['threshold']:.3e}",
            "multiplication_matrices_commute": comm,
        })
        for r in spectrum.spectrum_csv_rows(pred.values, ev):
            csv_rows.append((f"{complex(t).real:.12g}", f"{complex(t).imag:.12g}") + r)
    rep = {"oracle": oracle.to_json(), "tolerance": tol, "loci": rows}
    return rep, bool(ok), csv_rows
