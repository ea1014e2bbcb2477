"""Charts on the prequantized phase space and the geometry built on them.

A chart fixes coordinates on the base (canonical p_i, q^i, or the
complex pair z, zb), the connection 1-form on the circle bundle above
it, and hence horizontal lifts, the Souriau bracket, Hamiltonian
vector fields and polarizations.  Only flat charts appear; global
statements reduce to agreement under the affine overlap maps
implemented by :class:`AffineMap`.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import THETA, Derivation, EquivariantFunction, WeightFactor
from .errors import ChartError, ObservableError
from .scalars import Coefficient, GaussianRational


class Chart:
    """A canonical chart, either real bi-polarized or the complex plane.

    real kind:     variables p_1..p_n, q_1..q_n; connection
                   alpha = (1/hbar) p_i dq^i + dtheta.
    bargmann kind: variables z, zb (n = 1); connection
                   alpha = (1/(4 i hbar)) (zb dz - z dzb) + dtheta.
    """

    def __init__(self, kind: str, n: int):
        if kind == "real":
            if n < 1:
                raise ChartError("real chart needs dimension n >= 1")
            self.momentum_vars = tuple(f"p{i}" for i in range(1, n + 1))
            self.position_vars = tuple(f"q{i}" for i in range(1, n + 1))
            self.variables = self.momentum_vars + self.position_vars
        elif kind == "bargmann":
            if n != 1:
                raise ChartError("the bargmann chart is one-dimensional")
            self.momentum_vars = ("z",)
            self.position_vars = ("zb",)
            self.variables = ("z", "zb")
        else:
            raise ChartError(f"unknown chart kind {kind!r}")
        self.kind = kind
        self.n = n

    @staticmethod
    def real(n: int = 1) -> "Chart":
        return Chart("real", n)

    @staticmethod
    def bargmann() -> "Chart":
        return Chart("bargmann", 1)

    def __eq__(self, other):
        return isinstance(other, Chart) and self.kind == other.kind and self.n == other.n

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"Chart({self.kind!r}, n={self.n})"

    # -- element constructors ------------------------------------------

    def var(self, name: str) -> EquivariantFunction:
        return EquivariantFunction.variable(self, name)

    def constant(self, value) -> EquivariantFunction:
        return EquivariantFunction.constant(self, value)

    def zero(self) -> EquivariantFunction:
        return EquivariantFunction.zero(self)

    def one(self) -> EquivariantFunction:
        return EquivariantFunction.one(self)

    # -- connection and symplectic form in coordinates ------------------

    def alpha_of(self, var: str) -> EquivariantFunction:
        """The connection evaluated on the coordinate field d/d<var>."""
        if var == THETA:
            return self.one()
        if var not in self.variables:
            raise ChartError(f"unknown variable {var!r}")
        if self.kind == "real":
            if var in self.position_vars:
                i = self.position_vars.index(var)
                # alpha(d/dq^i) = p_i / hbar
                return self.var(self.momentum_vars[i]) * Coefficient.hbar(-1)
            return self.zero()
        if var == "z":
            # zb / (4 i hbar) = (-i/4) zb hbar^{-1}
            return self.var("zb") * Coefficient.hbar(-1, GaussianRational(0, Fraction(-1, 4)))
        # alpha(d/dzb) = -z / (4 i hbar) = (i/4) z hbar^{-1}
        return self.var("z") * Coefficient.hbar(-1, GaussianRational(0, Fraction(1, 4)))

    def omega_of(self, u: str, v: str) -> Coefficient:
        """The symplectic form on a pair of coordinate fields."""
        if self.kind == "real":
            value = Coefficient.zero()
            if u in self.momentum_vars and v in self.position_vars:
                if self.momentum_vars.index(u) == self.position_vars.index(v):
                    value = Coefficient.one()
            elif u in self.position_vars and v in self.momentum_vars:
                if self.position_vars.index(u) == self.momentum_vars.index(v):
                    value = -Coefficient.one()
            return value
        # omega = (1/(2i)) dzb ^ dz
        if (u, v) == ("zb", "z"):
            return Coefficient({0: GaussianRational(0, Fraction(-1, 2))})
        if (u, v) == ("z", "zb"):
            return Coefficient({0: GaussianRational(0, Fraction(1, 2))})
        return Coefficient.zero()

    # -- vector fields ---------------------------------------------------

    def coordinate_field(self, var: str, scale=1) -> Derivation:
        return Derivation.coordinate(self, var, scale)

    def reeb_field(self) -> Derivation:
        """The fundamental vertical field d/dtheta."""
        return Derivation.coordinate(self, THETA)

    # -- polarizations -----------------------------------------------------

    def vertical_polarization(self) -> "Polarization":
        if self.kind != "real":
            raise ChartError("vertical polarization is defined on real charts")
        return Polarization("J", self, self.momentum_vars)

    def horizontal_polarization(self) -> "Polarization":
        if self.kind != "real":
            raise ChartError("horizontal polarization is defined on real charts")
        return Polarization("K", self, self.position_vars)

    def antiholomorphic_polarization(self) -> "Polarization":
        if self.kind != "bargmann":
            raise ChartError("antiholomorphic polarization needs the bargmann chart")
        return Polarization("J", self, ("zb",))

    def holomorphic_polarization(self) -> "Polarization":
        if self.kind != "bargmann":
            raise ChartError("holomorphic polarization needs the bargmann chart")
        return Polarization("K", self, ("z",))


def horizontal_lift(chart: Chart, field) -> Derivation:
    """Horizontal lift v - alpha(v) d/dtheta of a base vector field.

    ``field`` is a coordinate name or a :class:`Derivation` with no
    theta component.
    """
    if isinstance(field, str):
        field = chart.coordinate_field(field)
    if field.chart != chart:
        raise ChartError("field lives on a different chart")
    if not field.theta_coeff.is_zero():
        raise ChartError("can only lift base vector fields (no theta component)")
    alpha_value = EquivariantFunction.zero(chart)
    for v, poly in field.coeffs.items():
        alpha_value = alpha_value + poly * chart.alpha_of(v)
    return Derivation(chart, dict(field.coeffs), -alpha_value)


class Polarization:
    """A Lagrangian span of coordinate directions selecting wave functions."""

    def __init__(self, label: str, chart: Chart, directions):
        directions = tuple(directions)
        if len(directions) != chart.n:
            raise ChartError("a polarization spans n directions")
        for u in directions:
            if u not in chart.variables:
                raise ChartError(f"unknown polarization direction {u!r}")
            for v in directions:
                if chart.omega_of(u, v):
                    raise ChartError(f"directions {u!r}, {v!r} are not omega-orthogonal")
        self.label = label
        self.chart = chart
        self.directions = directions

    def lifted_fields(self) -> list[Derivation]:
        return [horizontal_lift(self.chart, v) for v in self.directions]

    def __eq__(self, other):
        if not isinstance(other, Polarization):
            return NotImplemented
        return (self.label, self.chart, self.directions) == (other.label, other.chart, other.directions)

    def __repr__(self):
        return f"Polarization({self.label!r}, {self.directions!r})"


def is_polarized(chart: Chart, polarization: Polarization, psi: EquivariantFunction) -> bool:
    """True iff every lifted spanning field annihilates psi."""
    if polarization.chart != chart:
        raise ChartError("polarization belongs to a different chart")
    return all(lift(psi).is_zero() for lift in polarization.lifted_fields())


def polarization_witness(chart, polarization, psi):
    """First (direction, remainder) with nonzero remainder, or None."""
    for v in polarization.directions:
        remainder = horizontal_lift(chart, v)(psi)
        if not remainder.is_zero():
            return v, remainder
    return None


# -- Souriau bracket ---------------------------------------------------


def _bracket_pairs(chart: Chart):
    """The bivector as ordered (scale, u, v) with pi = sum scale * u^# ^ v^#."""
    if chart.kind == "real":
        return [
            (Coefficient.one(), pv, qv)
            for pv, qv in zip(chart.momentum_vars, chart.position_vars)
        ]
    # pi = 2i d/dzb ^ d/dz
    return [(Coefficient({0: GaussianRational(0, 2)}), "zb", "z")]


def souriau_bracket(
    chart: Chart, f: EquivariantFunction, g: EquivariantFunction
) -> EquivariantFunction:
    """The lifted-bivector bracket of two functions on the bundle.

    Bilinear and antisymmetric, satisfies the Leibniz rule in each
    slot, reduces to the Poisson bracket on theta-independent
    functions, but fails the Jacobi identity (see the jacobiator).
    """
    if f.chart != chart or g.chart != chart:
        raise ChartError("bracket arguments must live on the given chart")
    out = EquivariantFunction.zero(chart)
    for scale, u, v in _bracket_pairs(chart):
        lu = horizontal_lift(chart, u)
        lv = horizontal_lift(chart, v)
        out = out + (lu(f) * lv(g) - lv(f) * lu(g)) * scale
    return out


def jacobiator(chart, f, g, h) -> EquivariantFunction:
    """Cyclic sum [[f,[[g,h]]]] + [[g,[[h,f]]]] + [[h,[[f,g]]]]."""
    return (
        souriau_bracket(chart, f, souriau_bracket(chart, g, h))
        + souriau_bracket(chart, g, souriau_bracket(chart, h, f))
        + souriau_bracket(chart, h, souriau_bracket(chart, f, g))
    )


def hamiltonian_vector_field(chart: Chart, observable: EquivariantFunction) -> Derivation:
    """xi_F, signed so that xi_{p_i} = d/dq^i and xi_{q^i} = -d/dp_i."""
    if not observable.is_observable():
        raise ObservableError("Hamiltonian vector fields are defined for observables only")
    coeffs: dict[str, EquivariantFunction] = {}
    for scale, u, v in _bracket_pairs(chart):
        du = observable.differentiate(u) * scale
        dv = observable.differentiate(v) * scale
        if not du.is_zero():
            coeffs[v] = coeffs.get(v, chart.zero()) + du
        if not dv.is_zero():
            coeffs[u] = coeffs.get(u, chart.zero()) - dv
    return Derivation(chart, coeffs)


# -- standard weight factors and wave functions --------------------------


def momentum_phase(chart: Chart) -> WeightFactor:
    """The phase exp(i p.q / hbar) carried by momentum-representation waves."""
    if chart.kind != "real":
        raise ChartError("the momentum phase lives on real charts")
    i_over_hbar = Coefficient.hbar(-1, GaussianRational(0, 1))
    table = {}
    for pv, qv in zip(chart.momentum_vars, chart.position_vars):
        table[pv] = chart.var(qv) * i_over_hbar
        table[qv] = chart.var(pv) * i_over_hbar
    return WeightFactor("exp(i*p.q/hbar)", table)


def bargmann_gaussian(chart: Chart) -> WeightFactor:
    """The Gaussian exp(-z*zb/(4*hbar)) of the holomorphic representation."""
    if chart.kind != "bargmann":
        raise ChartError("the Gaussian factor lives on the bargmann chart")
    minus_quarter = Coefficient.hbar(-1, GaussianRational(Fraction(-1, 4)))
    table = {
        "z": chart.var("zb") * minus_quarter,
        "zb": chart.var("z") * minus_quarter,
    }
    return WeightFactor("exp(-z*zb/(4*hbar))", table)


def _as_component(chart, jet_vars, component):
    if component is None:
        return EquivariantFunction.jet(chart, jet_vars)
    if component.theta_weight or component.weight_factor is not None:
        raise ChartError("wave components carry no angular weight or factor")
    if component.jet_vars and component.jet_vars != tuple(jet_vars):
        raise ChartError("wave component uses a different jet family")
    return component


def position_wave(chart: Chart, component=None) -> EquivariantFunction:
    """psi(q) e^{i theta}; by default psi is a generic jet."""
    if chart.kind != "real":
        raise ChartError("position waves live on real charts")
    body = _as_component(chart, chart.position_vars, component)
    return EquivariantFunction(
        chart, body.terms, theta_weight=1,
        jet_vars=body.jet_vars or chart.position_vars,
    )


def momentum_wave(chart: Chart, component=None) -> EquivariantFunction:
    """phi(p) e^{i(p.q/hbar + theta)}; by default phi is a generic jet."""
    if chart.kind != "real":
        raise ChartError("momentum waves live on real charts")
    body = _as_component(chart, chart.momentum_vars, component)
    return EquivariantFunction(
        chart, body.terms, theta_weight=1,
        jet_vars=body.jet_vars or chart.momentum_vars,
        weight_factor=momentum_phase(chart),
    )


def bargmann_wave(chart: Chart, component=None) -> EquivariantFunction:
    """psi(z) exp(-z*zb/(4 hbar)) e^{i theta}; by default psi is a generic jet."""
    if chart.kind != "bargmann":
        raise ChartError("holomorphic waves live on the bargmann chart")
    body = _as_component(chart, ("z",), component)
    return EquivariantFunction(
        chart, body.terms, theta_weight=1,
        jet_vars=body.jet_vars or ("z",),
        weight_factor=bargmann_gaussian(chart),
    )


def prequantum_wave(chart: Chart, component=None) -> EquivariantFunction:
    """psi(p,q) e^{i theta} with a generic (unpolarized) jet component."""
    if chart.kind != "real":
        raise ChartError("prequantum generic waves are built on real charts")
    body = _as_component(chart, chart.variables, component)
    return EquivariantFunction(
        chart, body.terms, theta_weight=1,
        jet_vars=body.jet_vars or chart.variables,
    )


# -- affine chart changes -------------------------------------------------


def _invert_matrix(m):
    """Exact inverse of a small square matrix of GaussianRationals."""
    n = len(m)
    aug = [
        [GaussianRational.coerce(m[r][c]) for c in range(n)]
        + [GaussianRational(1 if c == r else 0) for c in range(n)]
        for r in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ChartError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = GaussianRational(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class AffineMap:
    """An overlap map p'_j = a_j^i p_i + b_j, q'^j = c^j_i q^i + d^j.

    The matrices must be contragredient (sum_j a_j^i c^j_k = delta^i_k)
    so that the canonical tensors keep their normal form; this is
    exactly the stated a = c^{-1} condition read with the index
    placement.  Non-contragredient input is rejected.
    """

    def __init__(self, chart: Chart, a, c, b=None, d=None):
        if chart.kind != "real":
            raise ChartError("affine chart changes are defined on real charts")
        n = chart.n
        self.chart = chart
        self.a = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in a)
        self.c = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in c)
        self.b = tuple(GaussianRational.coerce(x) for x in (b or [0] * n))
        self.d = tuple(GaussianRational.coerce(x) for x in (d or [0] * n))
        if len(self.a) != n or len(self.c) != n:
            raise ChartError("matrix size does not match the chart dimension")
        for i in range(n):
            for k in range(n):
                s = sum((self.a[j][i] * self.c[j][k] for j in range(n)), GaussianRational(0))
                if s != GaussianRational(1 if i == k else 0):
                    raise ChartError("a and c are not contragredient (a != c^{-1})")

    @staticmethod
    def from_position_part(chart: Chart, c, b=None, d=None) -> "AffineMap":
        """Build the unique contragredient map over a given position matrix."""
        c = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in c)
        c_inv = _invert_matrix(c)
        n = chart.n
        a = tuple(tuple(c_inv[i][j] for i in range(n)) for j in range(n))
        return AffineMap(chart, a, c, b, d)

    @staticmethod
    def scaling(chart: Chart, factor) -> "AffineMap":
        """p' = factor*p, q' = q/factor in every slot."""
        factor = GaussianRational.coerce(factor)
        n = chart.n
        one_over = GaussianRational(1) / factor
        a = [[factor if i == j else 0 for j in range(n)] for i in range(n)]
        c = [[one_over if i == j else 0 for j in range(n)] for i in range(n)]
        return AffineMap(chart, a, c)

    @staticmethod
    def translation(chart: Chart, b=None, d=None) -> "AffineMap":
        n = chart.n
        eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return AffineMap(chart, eye, eye, b, d)

    # old coordinates expressed in the new ones: p = C^T (p' - b), q = A^T (q' - d)
    def _replacements(self) -> dict[str, EquivariantFunction]:
        chart, n = self.chart, self.chart.n
        repl = {}
        for i in range(n):
            acc = chart.zero()
            for j in range(n):
                if self.c[j][i]:
                    shifted = chart.var(chart.momentum_vars[j]) - chart.constant(self.b[j])
                    acc = acc + shifted * Coefficient.coerce(self.c[j][i])
            repl[chart.momentum_vars[i]] = acc
        for i in range(n):
            acc = chart.zero()
            for j in range(n):
                if self.a[j][i]:
                    shifted = chart.var(chart.position_vars[j]) - chart.constant(self.d[j])
                    acc = acc + shifted * Coefficient.coerce(self.a[j][i])
            repl[chart.position_vars[i]] = acc
        return repl

    def transform_function(self, f: EquivariantFunction) -> EquivariantFunction:
        if f.jet_vars or f.weight_factor is not None:
            raise ChartError("affine changes act on jet-free, factor-free functions")
        return f.substitute(self._replacements())

    def transform_derivation(self, field: Derivation) -> Derivation:
        chart, n = self.chart, self.chart.n
        coeffs: dict[str, EquivariantFunction] = {}

        def add(var, poly):
            if not poly.is_zero():
                coeffs[var] = coeffs.get(var, chart.zero()) + poly

        for k in range(n):
            cp = field.coeffs.get(chart.momentum_vars[k])
            if cp is not None:
                sub = self.transform_function(cp)
                for j in range(n):
                    if self.a[j][k]:
                        add(chart.momentum_vars[j], sub * Coefficient.coerce(self.a[j][k]))
            cq = field.coeffs.get(chart.position_vars[k])
            if cq is not None:
                sub = self.transform_function(cq)
                for j in range(n):
                    if self.c[j][k]:
                        add(chart.position_vars[j], sub * Coefficient.coerce(self.c[j][k]))
        theta = field.theta_coeff
        if not theta.is_zero():
            theta = self.transform_function(theta)
        return Derivation(chart, coeffs, theta)

    def transform(self, obj):
        """Dispatch on functions, derivations and driver tensors."""
        if isinstance(obj, EquivariantFunction):
            return self.transform_function(obj)
        if isinstance(obj, Derivation):
            return self.transform_derivation(obj)
        if hasattr(obj, "transformed"):  # DriverTensor
            return obj.transformed(self)
        raise ChartError(f"cannot transform object of type {type(obj).__name__}")

    def __repr__(self):
        return f"AffineMap(a={self.a}, c={self.c}, b={self.b}, d={self.d})"
