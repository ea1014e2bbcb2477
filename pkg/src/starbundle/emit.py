"""Byte-stable JSON documents for functions and operators.

Rationals serialize as strings ("num/den" or plain integers) so no
precision is lost; term order follows the canonical monomial order, so
a given value always emits the same bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import EquivariantFunction, variable_key


def _fraction_str(value: Fraction) -> str:
    return str(value)


def chart_id(chart) -> str:
    return "bargmann" if chart.kind == "bargmann" else f"real{chart.n}"


def function_to_document(f: EquivariantFunction) -> dict:
    terms = []
    for mono, coeff in f.sorted_terms():
        monomial = {
            v: e for v, e in sorted(mono.vars, key=lambda item: variable_key(item[0]))
        }
        jet = {"psi": [[list(alpha), e] for alpha, e in mono.jets]} if mono.jets else {}
        for k, c in coeff.items():
            terms.append({
                "re": _fraction_str(c.re),
                "im": _fraction_str(c.im),
                "hbar": k,
                "monomial": monomial,
                "jet": jet,
                "theta_weight": f.theta_weight,
                "weight_factor": f.weight_factor.name if f.weight_factor else None,
            })
    return {"chart": chart_id(f.chart), "terms": terms}


def operator_to_document(op) -> dict:
    terms = []
    for alpha, poly in op.sorted_terms():
        for mono, coeff in poly.sorted_terms():
            monomial = {
                v: e for v, e in sorted(mono.vars, key=lambda item: variable_key(item[0]))
            }
            for k, c in coeff.items():
                terms.append({
                    "re": _fraction_str(c.re),
                    "im": _fraction_str(c.im),
                    "hbar": k,
                    "monomial": monomial,
                    "derivative": list(alpha),
                })
    return {"chart": chart_id(op.rep.chart), "rep": op.rep.name, "terms": terms}


def to_json(document: dict) -> str:
    return json.dumps(document, separators=(",", ":"))


def emit_json(value) -> str:
    """Serialize a function or operator to its canonical JSON text."""
    if isinstance(value, EquivariantFunction):
        return to_json(function_to_document(value))
    return to_json(operator_to_document(value))
