"""Canonical, re-parseable text rendering of functions and operators.

The output grammar matches the expression parser: rationals print as
``(a/b)``, the scalar hbar/i prints as ``(hbar/i)``, jet symbols as
``psi(orders)``, the angular weight m as a trailing ``e(m)``.  Terms
appear in descending graded-lexicographic order and, within one
monomial, ascending hbar exponent, so equal functions always render to
identical bytes.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import EquivariantFunction, Monomial, variable_key
from .scalars import GaussianRational


def _rational(value: Fraction, parenthesize: bool = True) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    text = f"{value.numerator}/{value.denominator}"
    return f"({text})" if parenthesize else text


def _scalar_factors(c: GaussianRational, k: int) -> tuple[int, list[str]]:
    """Sign and factor strings for the scalar c * hbar^k."""
    factors: list[str] = []
    if c.im and not c.re and k == 1:
        # c*hbar = r*(hbar/i) with rational r = -im(c)
        r = -c.im
        sign = 1 if r > 0 else -1
        if abs(r) != 1:
            factors.append(_rational(abs(r)))
        factors.append("(hbar/i)")
        return sign, factors
    if c.re and not c.im:
        sign = 1 if c.re > 0 else -1
        if abs(c.re) != 1:
            factors.append(_rational(abs(c.re)))
    elif c.im and not c.re:
        sign = 1 if c.im > 0 else -1
        if abs(c.im) != 1:
            factors.append(_rational(abs(c.im)))
        factors.append("i")
    else:
        sign = 1
        im_sign = "+" if c.im > 0 else "-"
        factors.append(
            f"({_rational(c.re, parenthesize=False)} {im_sign} "
            f"{_rational(abs(c.im), parenthesize=False)}*i)"
        )
    if k == 1:
        factors.append("hbar")
    elif k:
        factors.append(f"hbar^{k}")
    return sign, factors


def _monomial_factors(mono: Monomial) -> list[str]:
    factors = []
    for v, e in sorted(mono.vars, key=lambda item: variable_key(item[0])):
        factors.append(v if e == 1 else f"{v}^{e}")
    for alpha, e in mono.jets:
        body = "psi(" + ",".join(str(a) for a in alpha) + ")"
        factors.append(body if e == 1 else f"{body}^{e}")
    return factors


def format_function(f: EquivariantFunction) -> str:
    if f.is_zero():
        return "0"
    rendered = []
    for mono, coeff in f.sorted_terms():
        for k, c in coeff.items():
            sign, factors = _scalar_factors(c, k)
            factors.extend(_monomial_factors(mono))
            if f.theta_weight:
                factors.append(f"e({f.theta_weight})")
            if f.weight_factor is not None:
                factors.append(f.weight_factor.name)
            if not factors:
                factors = ["1"]
            rendered.append((sign, "*".join(factors)))
    parts = []
    for index, (sign, text) in enumerate(rendered):
        if index == 0:
            parts.append(("-" if sign < 0 else "") + text)
        else:
            parts.append((" - " if sign < 0 else " + ") + text)
    return "".join(parts)


def _derivative_factors(config_vars, alpha) -> list[str]:
    factors = []
    for var, order in zip(config_vars, alpha):
        if order == 1:
            factors.append(f"d/d{var}")
        elif order:
            factors.append(f"d^{order}/d{var}^{order}")
    return factors


def format_operator(op) -> str:
    if op.is_zero():
        return "0"
    rendered = []
    for alpha, poly in op.sorted_terms():
        derivative = _derivative_factors(op.rep.config_vars, alpha)
        for mono, coeff in poly.sorted_terms():
            for k, c in coeff.items():
                sign, factors = _scalar_factors(c, k)
                factors.extend(_monomial_factors(mono))
                factors.extend(derivative)
                if not factors:
                    factors = ["1"]
                rendered.append((sign, "*".join(factors)))
    parts = []
    for index, (sign, text) in enumerate(rendered):
        if index == 0:
            parts.append(("-" if sign < 0 else "") + text)
        else:
            parts.append((" - " if sign < 0 else " + ") + text)
    return "".join(parts)
