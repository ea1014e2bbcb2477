"""Driver tensors and the star and bullet products they generate.

A driver is an ordered decomposition of a contravariant 2-tensor into
pairs of mutually commuting vector fields.  Exponentiating it with the
coefficient hbar/i gives a star product of exponential type on base
observables; replacing every field by its horizontal lift gives the
bullet product on bundle functions, and the quantum operator of an
observable F on a polarized wave function Psi is F bullet Psi.

Convention note on the Poisson-driver ("moyal") case: the bullet
product always uses the hbar/i exponent, while the base star product
uses hbar/(2i) -- the standard Moyal normalization, and the unique
choice compatible with the module identity (F star G) bullet Psi =
F bullet (G bullet Psi) on polarized waves.  The test suite carries
the explicit counterexample showing the hbar/i base star fails it.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .algebra import EquivariantFunction, Monomial
from .errors import ChartError, ObservableError, PolarizationError
from .geometry import Chart, Polarization, horizontal_lift, polarization_witness
from .scalars import (
    C_ONE,
    Coefficient,
    GaussianRational,
    HBAR_OVER_I,
    I_OVER_HBAR,
    inverse_factorial,
)


class StarKind(str, Enum):
    NORMAL = "normal"
    ANTINORMAL = "antinormal"
    MOYAL = "moyal"
    WICK = "wick"

    @staticmethod
    def coerce(value) -> "StarKind":
        if isinstance(value, StarKind):
            return value
        try:
            return StarKind(value)
        except ValueError:
            raise ChartError(f"unknown product kind {value!r}") from None


# hbar/(2i)
HALF_HBAR_OVER_I = Coefficient({1: GaussianRational(0, Fraction(-1, 2))})


class DriverTensor:
    """An ordered list of (s, t) vector-field pairs decomposing a 2-tensor.

    Applying the tensor to a simple tensor f (x) g yields the list of
    pairs (s[f], t[g]); powers compose in the fixed pair order, so no
    factor-ordering ambiguity arises even for the lifted form whose
    fields need not commute.
    """

    def __init__(self, chart: Chart, pairs, lifted: bool = False, name: str = ""):
        self.chart = chart
        self.pairs = tuple(pairs)
        self.lifted = lifted
        self.name = name
        if not lifted:
            self._check_base_fields_commute()

    def _check_base_fields_commute(self):
        fields = [f for pair in self.pairs for f in pair]
        for field in fields:
            if not field.theta_coeff.is_zero():
                raise ChartError("driver base fields live on the base (no theta part)")
        for i, f1 in enumerate(fields):
            for f2 in fields[i + 1:]:
                if not f1.commutator(f2).is_zero():
                    raise ChartError("driver decomposition fields must mutually commute")

    def lift(self) -> "DriverTensor":
        if self.lifted:
            return self
        pairs = [
            (horizontal_lift(self.chart, s), horizontal_lift(self.chart, t))
            for s, t in self.pairs
        ]
        return DriverTensor(self.chart, pairs, lifted=True, name=self.name)

    def apply_once(self, tensor_terms):
        """One application to a list of (left, right) pairs, zero pairs dropped."""
        out = []
        for left, right in tensor_terms:
            for s, t in self.pairs:
                new_left = s(left)
                if new_left.is_zero():
                    continue
                new_right = t(right)
                if new_right.is_zero():
                    continue
                out.append((new_left, new_right))
        return out

    def power_terms(self, f: EquivariantFunction, g: EquivariantFunction, k: int):
        """(Lambda)^k (f (x) g) as a list of (left, right) pairs."""
        if k < 0:
            raise ChartError("repetition count must be non-negative")
        terms = [(f, g)]
        for _ in range(k):
            terms = self.apply_once(terms)
            if not terms:
                break
        return terms

    def components(self) -> dict:
        """The assembled 2-tensor: (u, v) variable pairs to coefficient polynomials.

        Two drivers decompose the same tensor iff these agree; used for
        comparisons across affine chart changes.
        """
        comps: dict[tuple[str, str], EquivariantFunction] = {}
        zero = self.chart.zero()
        for s, t in self.pairs:
            s_entries = dict(s.coeffs)
            if not s.theta_coeff.is_zero():
                s_entries["theta"] = s.theta_coeff
            t_entries = dict(t.coeffs)
            if not t.theta_coeff.is_zero():
                t_entries["theta"] = t.theta_coeff
            for u, cu in s_entries.items():
                for v, cv in t_entries.items():
                    acc = comps.get((u, v), zero) + cu * cv
                    if acc.is_zero():
                        comps.pop((u, v), None)
                    else:
                        comps[(u, v)] = acc
        return comps

    def transformed(self, affine_map) -> "DriverTensor":
        if self.lifted:
            raise ChartError("affine changes act on base driver tensors")
        pairs = [
            (affine_map.transform_derivation(s), affine_map.transform_derivation(t))
            for s, t in self.pairs
        ]
        return DriverTensor(self.chart, pairs, lifted=False, name=self.name)

    def __eq__(self, other):
        if not isinstance(other, DriverTensor):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.lifted == other.lifted
            and self.components() == other.components()
        )

    def __repr__(self):
        tag = "#" if self.lifted else ""
        return f"<DriverTensor {self.name or '?'}{tag} on {self.chart!r}>"


def driver_tensor(kind, chart: Chart) -> DriverTensor:
    """The decomposed tensor for a product kind on a chart.

    normal:     [(d/dp_k, d/dq^k)]_k
    antinormal: [(-d/dq^k, d/dp_k)]_k
    moyal:      normal pairs followed by antinormal pairs
    wick:       [(2i d/dzb, d/dz)]       (bargmann chart only)
    """
    kind = StarKind.coerce(kind)
    if kind == StarKind.WICK:
        if chart.kind != "bargmann":
            raise ChartError("the wick driver requires the bargmann chart")
        pairs = [(chart.coordinate_field("zb", GaussianRational(0, 2)), chart.coordinate_field("z"))]
        return DriverTensor(chart, pairs, name="wick")
    if chart.kind == "bargmann":
        if kind != StarKind.MOYAL:
            raise ChartError(f"{kind.value} driver requires a real chart (use wick)")
        pairs = [
            (chart.coordinate_field("zb", GaussianRational(0, 2)), chart.coordinate_field("z")),
            (chart.coordinate_field("z", GaussianRational(0, -2)), chart.coordinate_field("zb")),
        ]
        return DriverTensor(chart, pairs, name="moyal")
    normal_pairs = [
        (chart.coordinate_field(pv), chart.coordinate_field(qv))
        for pv, qv in zip(chart.momentum_vars, chart.position_vars)
    ]
    anti_pairs = [
        (chart.coordinate_field(qv, -1), chart.coordinate_field(pv))
        for pv, qv in zip(chart.momentum_vars, chart.position_vars)
    ]
    if kind == StarKind.NORMAL:
        return DriverTensor(chart, normal_pairs, name="normal")
    if kind == StarKind.ANTINORMAL:
        return DriverTensor(chart, anti_pairs, name="antinormal")
    return DriverTensor(chart, normal_pairs + anti_pairs, name="moyal")


def _require_observable(f: EquivariantFunction, what: str):
    if not f.is_observable():
        raise ObservableError(f"{what} must be a classical observable (no theta, jets or factor)")


def _function_key(f: EquivariantFunction):
    return (
        f.theta_weight,
        f.jet_vars,
        f.weight_factor.name if f.weight_factor is not None else None,
        frozenset(f.terms.items()),
    )


def exponential_product(
    driver: DriverTensor,
    f: EquivariantFunction,
    g: EquivariantFunction,
    coefficient: Coefficient,
) -> EquivariantFunction:
    """m . exp(coefficient * Lambda) (f (x) g), summed until the terms vanish.

    Terminates for polynomial inputs: every application of the driver
    differentiates the left slot.  Tensor terms with equal left slots
    are merged by summing their right slots (the tensor is unchanged,
    by bilinearity), which keeps the term count polynomial even for the
    full Poisson driver.
    """
    total = f * g
    terms = [(f, g)]
    k = 0
    coeff_power = C_ONE
    budget = f.chart_degree() + g.chart_degree() + 2 * len(driver.pairs) + 4
    while terms:
        k += 1
        if k > budget:
            raise ChartError("driver series failed to terminate (non-polynomial input?)")
        merged: dict = {}
        for left, right in terms:
            for s, t in driver.pairs:
                new_left = s(left)
                if new_left.is_zero():
                    continue
                new_right = t(right)
                if new_right.is_zero():
                    continue
                key = _function_key(new_left)
                entry = merged.get(key)
                if entry is None:
                    merged[key] = [new_left, new_right]
                else:
                    entry[1] = entry[1] + new_right
        terms = [(left, right) for left, right in merged.values() if not right.is_zero()]
        if not terms:
            break
        coeff_power = coeff_power * coefficient
        scale = coeff_power.scale_by_fraction(inverse_factorial(k))
        partial = EquivariantFunction.zero(driver.chart)
        for left, right in terms:
            partial = partial + left * right
        total = total + partial * scale
    return total


def star_coefficient(kind) -> Coefficient:
    kind = StarKind.coerce(kind)
    return HALF_HBAR_OVER_I if kind == StarKind.MOYAL else HBAR_OVER_I


def star_product(kind, f: EquivariantFunction, g: EquivariantFunction) -> EquivariantFunction:
    """The exponential-type star product of two observables on the base."""
    _require_observable(f, "left star factor")
    _require_observable(g, "right star factor")
    if f.chart != g.chart:
        raise ChartError("star factors must share a chart")
    driver = driver_tensor(kind, f.chart)
    return exponential_product(driver, f, g, star_coefficient(kind))


def bullet_product(kind, f: EquivariantFunction, g: EquivariantFunction) -> EquivariantFunction:
    """The lifted (quantum) product of an observable with any bundle function."""
    _require_observable(f, "left bullet factor")
    if f.chart != g.chart:
        raise ChartError("bullet factors must share a chart")
    driver = driver_tensor(kind, f.chart).lift()
    return exponential_product(driver, f, g, HBAR_OVER_I)


def prequantize(chart: Chart, observable: EquivariantFunction, psi: EquivariantFunction) -> EquivariantFunction:
    """F Psi + (hbar/i) [[F, Psi]] -- the prequantum operator of F on Psi."""
    from .geometry import souriau_bracket

    _require_observable(observable, "prequantized observable")
    if psi.is_zero():
        return psi
    if psi.theta_weight != 1:
        raise ChartError("prequantum wave functions have angular weight 1")
    return observable * psi + souriau_bracket(chart, observable, psi) * HBAR_OVER_I


def default_polarization(chart: Chart, kind) -> Polarization:
    kind = StarKind.coerce(kind)
    if chart.kind == "bargmann":
        return chart.antiholomorphic_polarization()
    if kind == StarKind.ANTINORMAL:
        return chart.horizontal_polarization()
    return chart.vertical_polarization()


def quantize(
    kind,
    observable: EquivariantFunction,
    psi: EquivariantFunction,
    polarization: Polarization | None = None,
) -> EquivariantFunction:
    """The quantum operator of an observable acting on a polarized wave.

    Checks the polarization of both the input and the output; a
    violated output (possible for the anti-normal driver against the
    vertical polarization) raises :class:`PolarizationError` carrying
    the offending direction and remainder.
    """
    _require_observable(observable, "quantized observable")
    chart = observable.chart
    if polarization is None:
        polarization = default_polarization(chart, kind)
    if psi.is_zero():
        return psi
    if psi.theta_weight != 1:
        raise ChartError("wave functions have angular weight 1")
    witness = polarization_witness(chart, polarization, psi)
    if witness is not None:
        raise PolarizationError(
            f"input wave function is not {polarization.label}-polarized "
            f"(d/d{witness[0]} remainder is nonzero)",
            direction=witness[0],
            remainder=witness[1],
        )
    out = bullet_product(kind, observable, psi)
    witness = polarization_witness(chart, polarization, out)
    if witness is not None:
        raise PolarizationError(
            f"quantization output lost {polarization.label}-polarization along d/d{witness[0]}; "
            f"remainder {witness[1]}",
            direction=witness[0],
            remainder=witness[1],
        )
    return out


def yano_laplacian(chart: Chart, f: EquivariantFunction) -> EquivariantFunction:
    """-sum_k d2/dq^k dp_k on real charts; -2i d2/dzb dz on the bargmann chart."""
    _require_observable(f, "Laplacian argument")
    out = EquivariantFunction.zero(chart)
    if chart.kind == "real":
        for pv, qv in zip(chart.momentum_vars, chart.position_vars):
            out = out - f.differentiate(qv).differentiate(pv)
        return out
    return f.differentiate("zb").differentiate("z") * GaussianRational(0, -2)


def agarwal_transform(chart: Chart, f: EquivariantFunction) -> EquivariantFunction:
    """exp((i hbar / 2) Laplacian) applied to a polynomial observable.

    Interchanges the Poisson-driver and normal-driver quantizations:
    quantize(moyal, F) = quantize(normal, transform(F)) as operators.
    """
    _require_observable(f, "transform argument")
    half_i_hbar = Coefficient.hbar(1, GaussianRational(0, Fraction(1, 2)))
    total = f
    term = f
    k = 0
    while True:
        term = yano_laplacian(chart, term)
        if term.is_zero():
            return total
        k += 1
        scale = (half_i_hbar ** k).scale_by_fraction(inverse_factorial(k))
        total = total + term * scale


def quantize_inverse_p(psi: EquivariantFunction) -> EquivariantFunction:
    """The functional-calculus quantization of 1/p on a one-dimensional
    position wave with polynomial component: (i/hbar) * (antiderivative
    of psi vanishing at 0) * e^{i theta}.

    Left-inverse to quantizing p: applying the momentum operator
    afterwards returns the original wave exactly.
    """
    chart = psi.chart
    if chart.kind != "real" or chart.n != 1:
        raise ChartError("1/p quantization is defined on the one-dimensional real chart")
    if psi.is_zero():
        return psi
    if psi.theta_weight != 1 or psi.weight_factor is not None:
        raise ChartError("expected a position wave function psi(q) e^{i theta}")
    if psi.jet_vars:
        raise ChartError("1/p quantization needs a concrete polynomial component, not jets")
    terms = {}
    for mono, coeff in psi.terms.items():
        vm = mono.var_map()
        if set(vm) - {"q1"}:
            raise ChartError("component may only involve the position variable")
        e = vm.get("q1", 0)
        terms[Monomial([("q1", e + 1)])] = coeff.scale_by_fraction(Fraction(1, e + 1))
    integral = EquivariantFunction(chart, terms, theta_weight=1)
    return integral * I_OVER_HBAR
