"""Exact term algebra on a chart of the prequantum bundle.

The central object is :class:`EquivariantFunction`: a polynomial in the
chart variables and in formal jet variables, carried by an integer
angular weight m (the factor e^{i*m*theta}) and an optional
:class:`WeightFactor` (a non-polynomial factor such as a Gaussian,
represented only through its logarithmic derivatives).

The angular coordinate itself may appear polynomially in test
functions; it is addressed by the reserved variable name ``"theta"``.
A monomial theta^k combined with angular weight m differentiates as
d/dtheta (theta^k e^{i m theta}) = (k theta^(k-1) + i m theta^k) e^{i m theta}.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ChartError, WeightFactorError
from .scalars import C_ONE, Coefficient, GaussianRational

_C_ZERO = Coefficient.zero()

THETA = "theta"

JetIndex = tuple[int, ...]


def variable_key(name: str) -> tuple[int, int]:
    """Global sort key: momentum-like first, then position-like, theta last."""
    if name == "z":
        return (0, 0)
    if name == "zb":
        return (1, 0)
    if name == THETA:
        return (2, 0)
    kind, idx = name[0], name[1:]
    if kind in ("p", "q") and idx.isdigit():
        return (0 if kind == "p" else 1, int(idx))
    raise ChartError(f"unknown variable name {name!r}")


class Monomial:
    """A product of chart-variable powers and jet-variable powers.

    ``vars`` is a sorted tuple of (name, exponent) with positive
    exponents; ``jets`` is a sorted tuple of (multi-index, exponent).
    The jet multi-index refers to the jet family declared on the
    enclosing function.
    """

    __slots__ = ("vars", "jets", "_hash")

    def __init__(self, vars=(), jets=()):
        object.__setattr__(self, "vars", tuple(sorted(
            ((v, int(e)) for v, e in vars if e),
            key=lambda item: variable_key(item[0]),
        )))
        object.__setattr__(self, "jets", tuple(sorted(
            ((tuple(a), int(e)) for a, e in jets if e),
        )))
        for _, e in self.vars:
            if e < 0:
                raise ChartError("negative exponent in monomial")
        for _, e in self.jets:
            if e < 0:
                raise ChartError("negative jet exponent in monomial")
        object.__setattr__(self, "_hash", hash((self.vars, self.jets)))

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    @staticmethod
    def unit() -> "Monomial":
        return _MONOMIAL_UNIT

    def var_map(self) -> dict[str, int]:
        return dict(self.vars)

    def jet_map(self) -> dict[JetIndex, int]:
        return dict(self.jets)

    def mul(self, other: "Monomial") -> "Monomial":
        vs = self.var_map()
        for v, e in other.vars:
            vs[v] = vs.get(v, 0) + e
        js = self.jet_map()
        for a, e in other.jets:
            js[a] = js.get(a, 0) + e
        return Monomial(vs.items(), js.items())

    def degree(self) -> int:
        return sum(e for _, e in self.vars) + sum(e for _, e in self.jets)

    def chart_degree(self) -> int:
        return sum(e for _, e in self.vars)

    def sort_key(self):
        # graded, then lexicographic in the global variable order, then jets
        return (
            -self.degree(),
            tuple((variable_key(v), -e) for v, e in self.vars),
            tuple((a, -e) for a, e in self.jets),
        )

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.vars == other.vars and self.jets == other.jets

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Monomial({self.vars!r}, {self.jets!r})"


_MONOMIAL_UNIT = Monomial()


class WeightFactor:
    """A non-polynomial multiplicative factor known through d(log W).

    The factor itself (for instance a Gaussian) is never expanded; all
    operations only consume the table of logarithmic derivatives, one
    polynomial per chart variable.  The table must be total over the
    chart variables and closed (mixed second log-derivatives agree),
    which :meth:`check_closed` verifies symbolically.
    """

    def __init__(self, name: str, log_derivatives: dict[str, "EquivariantFunction"]):
        self.name = name
        self.log_derivatives = dict(log_derivatives)
        for poly in self.log_derivatives.values():
            if poly.jet_vars or poly.theta_weight or poly.weight_factor is not None:
                raise WeightFactorError("log-derivative entries must be plain polynomials")

    def log_derivative(self, var: str) -> "EquivariantFunction":
        try:
            return self.log_derivatives[var]
        except KeyError:
            raise WeightFactorError(
                f"weight factor {self.name!r} has no log-derivative entry for {var!r}"
            ) from None

    def check_closed(self) -> bool:
        """d(log W) is a closed 1-form: mixed partials of the table agree."""
        names = sorted(self.log_derivatives, key=variable_key)
        for i, v in enumerate(names):
            for w in names[i + 1:]:
                left = self.log_derivatives[v].differentiate(w)
                right = self.log_derivatives[w].differentiate(v)
                if left != right:
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, WeightFactor):
            return NotImplemented
        return self.name == other.name and self.log_derivatives == other.log_derivatives

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"WeightFactor({self.name!r})"


def _merge_jet_vars(a: tuple, b: tuple) -> tuple:
    if a and b and a != b:
        raise ChartError(f"incompatible jet families {a!r} and {b!r}")
    return a or b


def _merge_weight_factors(a, b, product: bool):
    if product:
        # at most one factor may carry a weight (observable x wave function)
        if a is None:
            return b
        if b is None:
            return a
        raise WeightFactorError(
            f"cannot multiply two weight-factor-carrying functions ({a.name!r} * {b.name!r})"
        )
    if a == b:
        return a
    left = a.name if a is not None else None
    right = b.name if b is not None else None
    raise WeightFactorError(f"cannot add functions with weight factors {left!r} and {right!r}")


class EquivariantFunction:
    """A function on the bundle: polynomial x e^{i*m*theta} x optional factor W.

    Immutable by convention.  ``terms`` maps :class:`Monomial` to a
    nonzero :class:`Coefficient`; the zero function has no terms and
    normalized attributes (weight 0, no jets, no factor).
    """

    __slots__ = ("chart", "terms", "theta_weight", "jet_vars", "weight_factor")

    def __init__(self, chart, terms, theta_weight: int = 0, jet_vars=(), weight_factor=None):
        clean = {}
        for mono, coeff in terms.items():
            coeff = Coefficient.coerce(coeff)
            if coeff:
                clean[mono] = coeff
        jet_vars = tuple(jet_vars)
        if not clean:
            theta_weight, jet_vars, weight_factor = 0, (), None
        elif not any(mono.jets for mono in clean):
            jet_vars = ()
        for mono in clean:
            for alpha, _ in mono.jets:
                if len(alpha) != len(jet_vars):
                    raise ChartError(
                        f"jet index {alpha!r} does not match jet family {jet_vars!r}"
                    )
            for v, _ in mono.vars:
                if v != THETA and v not in chart.variables:
                    raise ChartError(f"variable {v!r} does not belong to chart {chart}")
        self.chart = chart
        self.terms = clean
        self.theta_weight = int(theta_weight)
        self.jet_vars = jet_vars
        self.weight_factor = weight_factor

    # -- constructors ------------------------------------------------

    @classmethod
    def _make(cls, chart, terms, theta_weight, jet_vars, weight_factor):
        # trusted fast constructor: terms already canonical (no zero values)
        out = object.__new__(cls)
        if not terms:
            theta_weight, jet_vars, weight_factor = 0, (), None
        elif jet_vars and not any(mono.jets for mono in terms):
            jet_vars = ()
        out.chart = chart
        out.terms = terms
        out.theta_weight = theta_weight
        out.jet_vars = jet_vars
        out.weight_factor = weight_factor
        return out

    @staticmethod
    def zero(chart) -> "EquivariantFunction":
        return EquivariantFunction(chart, {})

    @staticmethod
    def constant(chart, value) -> "EquivariantFunction":
        return EquivariantFunction(chart, {Monomial.unit(): Coefficient.coerce(value)})

    @staticmethod
    def one(chart) -> "EquivariantFunction":
        return EquivariantFunction.constant(chart, C_ONE)

    @staticmethod
    def variable(chart, name: str) -> "EquivariantFunction":
        if name != THETA and name not in chart.variables:
            raise ChartError(f"variable {name!r} does not belong to chart {chart}")
        return EquivariantFunction(chart, {Monomial([(name, 1)]): C_ONE})

    @staticmethod
    def jet(chart, jet_vars, alpha=None, theta_weight=0, weight_factor=None) -> "EquivariantFunction":
        """The single jet symbol psi_alpha over the given jet family."""
        jet_vars = tuple(jet_vars)
        if alpha is None:
            alpha = (0,) * len(jet_vars)
        mono = Monomial((), [(tuple(alpha), 1)])
        return EquivariantFunction(
            chart, {mono: C_ONE}, theta_weight=theta_weight,
            jet_vars=jet_vars, weight_factor=weight_factor,
        )

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_observable(self) -> bool:
        """theta-independent, jet-free, factor-free function of the base."""
        if self.theta_weight or self.jet_vars or self.weight_factor is not None:
            return False
        return all(THETA not in dict(m.vars) for m in self.terms)

    def constant_value(self) -> Coefficient:
        """The scalar value, if the function is a constant; raises otherwise."""
        if self.is_zero():
            return Coefficient.zero()
        if list(self.terms) == [Monomial.unit()] and not self.theta_weight \
                and self.weight_factor is None:
            return self.terms[Monomial.unit()]
        raise ChartError("function is not a constant")

    def chart_degree(self) -> int:
        return max((m.chart_degree() for m in self.terms), default=0)

    # -- ring operations ---------------------------------------------

    def _compatible_chart(self, other: "EquivariantFunction"):
        if self.chart != other.chart:
            raise ChartError(f"chart mismatch: {self.chart} vs {other.chart}")

    def __add__(self, other):
        if not isinstance(other, EquivariantFunction):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        self._compatible_chart(other)
        if self.theta_weight != other.theta_weight:
            raise ChartError(
                f"cannot add functions of angular weight {self.theta_weight} and {other.theta_weight}"
            )
        jet_vars = _merge_jet_vars(self.jet_vars, other.jet_vars)
        factor = _merge_weight_factors(self.weight_factor, other.weight_factor, product=False)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = terms.get(mono, _C_ZERO) + coeff
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return EquivariantFunction._make(self.chart, terms, self.theta_weight, jet_vars, factor)

    def __neg__(self):
        return EquivariantFunction._make(
            self.chart, {m: -c for m, c in self.terms.items()},
            self.theta_weight, self.jet_vars, self.weight_factor,
        )

    def __sub__(self, other):
        if not isinstance(other, EquivariantFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Coefficient, GaussianRational, int, Fraction)):
            scale = Coefficient.coerce(other)
            if not scale:
                return EquivariantFunction.zero(self.chart)
            return EquivariantFunction._make(
                self.chart, {m: c * scale for m, c in self.terms.items()},
                self.theta_weight, self.jet_vars, self.weight_factor,
            )
        if not isinstance(other, EquivariantFunction):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return EquivariantFunction.zero(self.chart)
        self._compatible_chart(other)
        jet_vars = _merge_jet_vars(self.jet_vars, other.jet_vars)
        factor = _merge_weight_factors(self.weight_factor, other.weight_factor, product=True)
        terms: dict[Monomial, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1.mul(m2)
                s = terms.get(mono, _C_ZERO) + c1 * c2
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)
        return EquivariantFunction._make(
            self.chart, terms, self.theta_weight + other.theta_weight, jet_vars, factor,
        )

    def __rmul__(self, other):
        if isinstance(other, (Coefficient, GaussianRational, int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ChartError("function powers must be non-negative integers")
        out = EquivariantFunction.one(self.chart)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- calculus ----------------------------------------------------

    def _poly_partial(self, var: str) -> "EquivariantFunction":
        """Partial derivative of the polynomial part (chart variables and jets)."""
        jet_pos = self.jet_vars.index(var) if var in self.jet_vars else None
        terms: dict[Monomial, Coefficient] = {}

        def put(mono, coeff):
            s = terms.get(mono, _C_ZERO) + coeff
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)

        for mono, coeff in self.terms.items():
            vs = mono.var_map()
            e = vs.get(var, 0)
            if e:
                new_vs = dict(vs)
                new_vs[var] = e - 1
                put(Monomial(new_vs.items(), mono.jets), coeff * e)
            if jet_pos is not None:
                js = mono.jet_map()
                for alpha, je in mono.jets:
                    shifted = list(alpha)
                    shifted[jet_pos] += 1
                    new_js = dict(js)
                    new_js[alpha] = je - 1
                    new_js[tuple(shifted)] = new_js.get(tuple(shifted), 0) + 1
                    put(Monomial(vs.items(), new_js.items()), coeff * je)
        return EquivariantFunction._make(
            self.chart, terms, self.theta_weight, self.jet_vars, self.weight_factor,
        )

    def differentiate(self, var: str) -> "EquivariantFunction":
        """Exact partial derivative, including chain rule on jets, the
        angular weight, and the weight-factor logarithmic derivative."""
        if var == THETA:
            out = self._poly_partial(THETA)
            if self.theta_weight:
                out = out + self * GaussianRational(0, self.theta_weight)
            return out
        if var not in self.chart.variables:
            raise ChartError(f"cannot differentiate along unknown variable {var!r}")
        out = self._poly_partial(var)
        if self.weight_factor is not None:
            out = out + self * self.weight_factor.log_derivative(var)
        return out

    def substitute(self, mapping: dict[str, "EquivariantFunction"]) -> "EquivariantFunction":
        """Replace chart variables by polynomials.  Jet variables and
        weight factors do not transform and are rejected."""
        if self.jet_vars or self.weight_factor is not None:
            raise ChartError("substitution is only defined for jet-free, factor-free functions")
        out = EquivariantFunction.zero(self.chart)
        for mono, coeff in self.terms.items():
            piece = EquivariantFunction.constant(self.chart, coeff)
            for v, e in mono.vars:
                repl = mapping.get(v)
                if repl is None:
                    repl = EquivariantFunction.variable(self.chart, v)
                piece = piece * repl ** e
            out = out + piece
        if self.theta_weight:
            out = EquivariantFunction(
                out.chart, out.terms, self.theta_weight, out.jet_vars, out.weight_factor,
            )
        return out

    # -- comparison / display ----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, EquivariantFunction):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.theta_weight == other.theta_weight
            and self.jet_vars == other.jet_vars
            and self.weight_factor == other.weight_factor
            and self.terms == other.terms
        )

    __hash__ = None

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def __repr__(self):
        return f"<EquivariantFunction {self}>"

    def __str__(self):
        from .render import format_function

        return format_function(self)


def equal(a: EquivariantFunction, b: EquivariantFunction) -> bool:
    """Exact equality on canonical forms."""
    return a == b


def substitute_jets(f: EquivariantFunction, component: EquivariantFunction) -> EquivariantFunction:
    """Replace each jet symbol psi_alpha by the alpha-th derivative of a
    concrete jet-free polynomial ``component``."""
    if component.jet_vars or component.theta_weight or component.weight_factor is not None:
        raise ChartError("jet substitution requires a plain polynomial component")
    cache: dict[JetIndex, EquivariantFunction] = {}

    def derivative(alpha: JetIndex) -> EquivariantFunction:
        if alpha in cache:
            return cache[alpha]
        out = component
        for var, order in zip(f.jet_vars, alpha):
            for _ in range(order):
                out = out.differentiate(var)
        cache[alpha] = out
        return out

    total = EquivariantFunction.zero(f.chart)
    for mono, coeff in f.terms.items():
        piece = EquivariantFunction(
            f.chart, {Monomial(mono.vars): coeff},
            theta_weight=f.theta_weight, weight_factor=f.weight_factor,
        )
        for alpha, e in mono.jets:
            piece = piece * derivative(alpha) ** e
        total = total + piece
    return total


class Derivation:
    """A first-order differential operator sum_v c_v d/dv + c_theta d/dtheta.

    The coefficients are plain polynomials on the chart; the theta
    coefficient may carry negative hbar powers (horizontal lifts do).
    Acts on :class:`EquivariantFunction` via :meth:`__call__` and
    satisfies the Leibniz rule by construction.
    """

    __slots__ = ("chart", "coeffs", "theta_coeff")

    def __init__(self, chart, coeffs=None, theta_coeff=None):
        self.chart = chart
        clean = {}
        for v, poly in (coeffs or {}).items():
            if v != THETA and v not in chart.variables:
                raise ChartError(f"derivation coefficient on unknown variable {v!r}")
            if not poly.is_zero():
                clean[v] = poly
        self.coeffs = clean
        if theta_coeff is None:
            theta_coeff = EquivariantFunction.zero(chart)
        self.theta_coeff = theta_coeff

    @staticmethod
    def coordinate(chart, var: str, scale=1) -> "Derivation":
        if var == THETA:
            return Derivation(chart, {}, EquivariantFunction.constant(chart, scale))
        return Derivation(chart, {var: EquivariantFunction.constant(chart, scale)})

    def coefficient(self, var: str) -> EquivariantFunction:
        if var == THETA:
            return self.theta_coeff
        return self.coeffs.get(var, EquivariantFunction.zero(self.chart))

    def __call__(self, f: EquivariantFunction) -> EquivariantFunction:
        if f.chart != self.chart:
            raise ChartError("derivation and function live on different charts")
        out = EquivariantFunction.zero(self.chart)
        for v, poly in self.coeffs.items():
            out = out + poly * f.differentiate(v)
        if not self.theta_coeff.is_zero():
            out = out + self.theta_coeff * f.differentiate(THETA)
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.chart != other.chart:
            raise ChartError("cannot add derivations on different charts")
        coeffs = dict(self.coeffs)
        for v, poly in other.coeffs.items():
            coeffs[v] = coeffs.get(v, EquivariantFunction.zero(self.chart)) + poly
        return Derivation(self.chart, coeffs, self.theta_coeff + other.theta_coeff)

    def __neg__(self):
        return self * Coefficient.coerce(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scale) -> "Derivation":
        """Multiply by a scalar or by a polynomial function."""
        if isinstance(scale, (Coefficient, GaussianRational, int, Fraction)):
            scale = EquivariantFunction.constant(self.chart, Coefficient.coerce(scale))
        return Derivation(
            self.chart,
            {v: scale * poly for v, poly in self.coeffs.items()},
            scale * self.theta_coeff,
        )

    __rmul__ = __mul__

    def commutator(self, other: "Derivation") -> "Derivation":
        """[self, other] as a derivation (first-order; the chart fields
        appearing here always have polynomial coefficients)."""
        names = set(self.coeffs) | set(other.coeffs)
        coeffs = {v: self(other.coefficient(v)) - other(self.coefficient(v)) for v in names}
        theta = self(other.theta_coeff) - other(self.theta_coeff)
        return Derivation(self.chart, coeffs, theta)

    def is_zero(self) -> bool:
        return not self.coeffs and self.theta_coeff.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.chart != other.chart:
            return False
        names = set(self.coeffs) | set(other.coeffs)
        return self.theta_coeff == other.theta_coeff and all(
            self.coefficient(v) == other.coefficient(v) for v in names
        )

    __hash__ = None

    def __repr__(self):
        parts = [f"({poly})*d/d{v}" for v, poly in sorted(self.coeffs.items())]
        if not self.theta_coeff.is_zero():
            parts.append(f"({self.theta_coeff})*d/dtheta")
        return " + ".join(parts) if parts else "0"
