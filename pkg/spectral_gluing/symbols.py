"""
Symbol recursion
================
Exact full symbol of the Dirichlet-to-Neumann operator on a collar over a
circle with potential ``V(y)``: the square-root operator ``Q`` solves
``Q^2 = -d^2/dy^2 + V + t`` formally, and its symbol
``q_1 + q_0 + q_(-1) + ...`` follows from the composition rule order by
order. Symbols are built in :mod:`sympy` over ``xi``, ``w = sqrt(xi^2 + t)``
and formal derivatives ``V, V', V'', ...`` of the potential.
"""
from .decorators import typechecked
from .dtn import QCylinder
from .spectra import WORKING_DPS, CrossSection, Explicit, as_mp
from .zeta import RayShift

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Optional, Sequence

import logging

import mpmath
import sympy as sy

logger = logging.getLogger(__name__)

XI = sy.Symbol("xi", real=True)
W = sy.Symbol("w", positive=True)
Y = sy.Symbol("y", real=True)


@lru_cache(maxsize=None)
def potential_derivative(order: int) -> sy.Symbol:
    """The formal symbol ``V`` followed by ``order`` primes."""
    return sy.Symbol("V" + "'" * order, real=True)


def _derivative_order(symbol: sy.Symbol) -> Optional[int]:
    name = symbol.name
    if name.startswith("V") and set(name[1:]) <= {"'"}:
        return len(name) - 1

    return None


def _potential_symbols(expr: Any) -> list[sy.Symbol]:
    return [s for s in expr.free_symbols if _derivative_order(s) is not None]


@dataclass(frozen=True)
class TrigPotential:
    """A trigonometric polynomial ``constant + sum a_n cos(n y) + sum b_n sin(n y)`` on the circle.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    constant : float
        The mean value.
    cosines : tuple[tuple[int, float], ...]
        Pairs ``(n, a_n)``.
    sines : tuple[tuple[int, float], ...]
        Pairs ``(n, b_n)``.
    """

    constant: float = 0.0
    cosines: tuple = ()
    sines: tuple = ()

    @property
    def is_constant(self) -> bool:
        return all(a == 0 for _, a in self.cosines) and all(b == 0 for _, b in self.sines)

    def expression(self) -> Any:
        """The potential as a :mod:`sympy` expression in :data:`Y`."""
        expr = sy.nsimplify(self.constant)
        expr += sum(sy.nsimplify(a) * sy.cos(n * Y) for n, a in self.cosines)
        expr += sum(sy.nsimplify(b) * sy.sin(n * Y) for n, b in self.sines)
        return expr

    def derivative_at(self, order: int, y: float) -> Any:
        return sy.diff(self.expression(), Y, order).subs(Y, y)

    def describe(self) -> dict[str, Any]:
        return {
            "constant": self.constant,
            "cosines": [list(pair) for pair in self.cosines],
            "sines": [list(pair) for pair in self.sines],
        }

    @classmethod
    def from_config(cls, data: Any) -> "TrigPotential":
        if isinstance(data, (int, float)):
            return cls(constant=float(data))

        return cls(
            constant=float(data.get("constant", 0.0)),
            cosines=tuple((int(n), float(a)) for n, a in data.get("cosines", [])),
            sines=tuple((int(n), float(b)) for n, b in data.get("sines", [])),
        )


@dataclass(frozen=True)
class SymbolTerm:
    """One monomial ``coeff * xi^xi_power * w^(-root_power) * prod V^(d)``.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    coeff : sympy.Expr
        An exact Gaussian rational.
    xi_power : int
        The power of ``xi``.
    root_power : int
        The power of ``w`` in the denominator; negative for ``w`` in the numerator.
    v_factors : tuple[int, ...]
        The derivative orders of the potential factors, sorted, with repetition.
    """

    coeff: Any
    xi_power: int
    root_power: int
    v_factors: tuple

    @property
    def order(self) -> int:
        """The homogeneity degree in ``xi``."""
        return self.xi_power - self.root_power

    @property
    def sort_key(self) -> tuple:
        return (sum(self.v_factors), self.xi_power, self.root_power, self.v_factors)

    def render(self) -> str:
        factors = [f"({sy.sstr(self.coeff)})"]
        if self.xi_power:
            factors.append("xi" if self.xi_power == 1 else f"xi^{self.xi_power}")
        factors.extend("V" + "'" * d for d in self.v_factors)
        text = "*".join(factors)
        if self.root_power > 0:
            text += f"/w^{self.root_power}" if self.root_power != 1 else "/w"
        elif self.root_power < 0:
            text += "*w" if self.root_power == -1 else f"*w^{-self.root_power}"

        return text


def _term_from_expr(term: Any) -> SymbolTerm:
    variables = [XI, W, *_potential_symbols(term)]
    coeff, rest = term.as_independent(*variables, as_Add=False)
    powers = rest.as_powers_dict() if rest != 1 else {}
    v_factors = []
    for symbol, power in powers.items():
        order = _derivative_order(symbol) if isinstance(symbol, sy.Symbol) else None
        if order is not None:
            v_factors.extend([order] * int(power))

    return SymbolTerm(
        coeff=coeff,
        xi_power=int(powers.get(XI, 0)),
        root_power=-int(powers.get(W, 0)),
        v_factors=tuple(sorted(v_factors)),
    )


def symbol_terms(expr: Any) -> list[SymbolTerm]:
    """Split an expanded symbol into canonically ordered monomials.

    .. versionadded:: 1.0.0
    """

    expr = sy.expand(expr)
    if expr == 0:
        return []

    return sorted(
        (_term_from_expr(term) for term in sy.Add.make_args(expr)),
        key=lambda term: term.sort_key,
    )


def d_xi(expr: Any) -> Any:
    """``d/dxi`` with ``w = sqrt(xi^2 + t)``."""
    return sy.diff(expr, XI) + (XI / W) * sy.diff(expr, W)


def d_y(expr: Any) -> Any:
    """``D_y = -i d/dy`` acting on the formal potential derivatives."""
    return -sy.I * sum(
        (
            potential_derivative(_derivative_order(s) + 1) * sy.diff(expr, s)
            for s in _potential_symbols(expr)
        ),
        sy.Integer(0),
    )


@dataclass(frozen=True)
class SymbolExpansion:
    """The symbols ``q_1, q_0, ..., q_(1-depth)`` of the square-root operator.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    potential : TrigPotential
        The potential the expansion was computed for.
    orders : tuple[sympy.Expr, ...]
        ``orders[k]`` is ``q_(1-k)``, expanded.
    """

    potential: TrigPotential
    orders: tuple

    @property
    def depth(self) -> int:
        return len(self.orders) - 1

    def q(self, k: int) -> Any:
        """``q_(1-k)``."""
        return self.orders[k]

    def terms(self, k: int) -> list[SymbolTerm]:
        return symbol_terms(self.orders[k])

    @property
    def is_u_free(self) -> bool:
        allowed = {XI, W}
        return all(
            s in allowed or _derivative_order(s) is not None
            for expr in self.orders
            for s in expr.free_symbols
        )

    def is_homogeneous(self) -> bool:
        return all(
            term.order == 1 - k for k in range(len(self.orders)) for term in self.terms(k)
        )

    def has_parity(self) -> bool:
        """Whether every term of ``q_(1-k)`` has ``xi`` parity ``(-1)^k``."""
        return all(
            (term.xi_power - k) % 2 == 0
            for k in range(len(self.orders))
            for term in self.terms(k)
        )

    def is_real_symmetric(self) -> bool:
        """Whether odd powers of ``xi`` carry imaginary coefficients and even powers real ones."""
        for k in range(len(self.orders)):
            for term in self.terms(k):
                re, im = term.coeff.as_real_imag()
                if term.xi_power % 2 and re != 0:
                    return False
                if not term.xi_power % 2 and im != 0:
                    return False

        return True


@typechecked
def ricatti_expansion(potential: TrigPotential, depth: int) -> SymbolExpansion:
    """Solve the composition equation for the symbol of ``sqrt(-d^2/dy^2 + V + t)`` through ``q_(1-depth)``.

    With ``q_1 = w`` every further order is::

        q_(1-k) = ([k = 2] V - sum (1/omega!) d_xi^omega q_(1-i) D_y^omega q_(1-j)) / (2 w)

    summed over ``0 <= i, j <= k - 1`` with ``omega = k - i - j >= 0``. A
    constant potential has ``D_y = 0``.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    potential : TrigPotential
        The potential.
    depth : int
        The number of orders beyond ``q_1``, at least ``1``.

    Raises
    ------
    ValueError
        Raised when ``depth`` is below ``1``.

    Returns
    -------
    SymbolExpansion
        The exact expansion.
    """

    if depth < 1:
        raise ValueError(f"Invalid depth: {depth}. Must be at least 1.")

    v = potential_derivative(0)
    dy = (lambda expr: sy.Integer(0)) if potential.is_constant else d_y

    orders = [W]
    xi_derivatives = [[W]]
    y_derivatives = [[W]]
    for k in range(1, depth + 1):
        for i in range(k):
            while len(xi_derivatives[i]) <= k:
                xi_derivatives[i].append(sy.expand(d_xi(xi_derivatives[i][-1])))
            while len(y_derivatives[i]) <= k:
                y_derivatives[i].append(sy.expand(dy(y_derivatives[i][-1])))

        composition = sy.Integer(0)
        for i in range(k):
            for j in range(k):
                omega = k - i - j
                if omega < 0:
                    continue
                composition += (
                    xi_derivatives[i][omega] * y_derivatives[j][omega] / sy.factorial(omega)
                )

        source = v if k == 2 else sy.Integer(0)
        q = sy.expand((source - composition) / (2 * W))
        orders.append(q)
        xi_derivatives.append([q])
        y_derivatives.append([q])

    logger.debug(
        "symbol expansion through depth %d: %s terms",
        depth,
        [len(sy.Add.make_args(q)) if q != 0 else 0 for q in orders],
    )
    return SymbolExpansion(potential=potential, orders=tuple(orders))


def constant_potential_orders(depth: int) -> tuple:
    """``q_(1-k)`` of ``sqrt(w^2 + V)`` for constant ``V``: ``binom(1/2, j) V^j w^(1-2j)`` at ``k = 2j``, zero at odd ``k``.

    .. versionadded:: 1.0.0
    """

    v = potential_derivative(0)
    return tuple(
        sy.binomial(sy.Rational(1, 2), k // 2) * v ** (k // 2) * W ** (1 - k)
        if k % 2 == 0
        else sy.Integer(0)
        for k in range(depth + 1)
    )


def matches_constant_expansion(expansion: SymbolExpansion) -> bool:
    """Whether every order equals the Taylor coefficient of ``sqrt(w^2 + V)`` exactly."""
    expected = constant_potential_orders(expansion.depth)
    return all(sy.expand(q - e) == 0 for q, e in zip(expansion.orders, expected))


@typechecked
def evaluate_symbol(
    expansion: SymbolExpansion,
    y: float,
    xi: float,
    t: float,
    orders: Optional[Sequence[int]] = None,
) -> complex:
    """Evaluate a truncated symbol sum numerically.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    expansion : SymbolExpansion
        The expansion.
    y : float
        The point on the circle.
    xi : float
        The covariable.
    t : float
        The shift, positive.
    orders : Sequence[int] or None
        The indices ``k`` of the orders ``q_(1-k)`` to sum. Defaults to all of them.

    Raises
    ------
    ValueError
        Raised when ``t`` is not positive.

    Returns
    -------
    complex
        The value.
    """

    if not t > 0:
        raise ValueError(f"Invalid shift: {t}. Must be positive.")

    selected = range(len(expansion.orders)) if orders is None else orders
    total = sum((expansion.orders[k] for k in selected), sy.Integer(0))
    substitutions = {
        s: expansion.potential.derivative_at(_derivative_order(s), y)
        for s in _potential_symbols(total)
    }
    substitutions[W] = sy.sqrt(sy.nsimplify(xi) ** 2 + sy.nsimplify(t))
    substitutions[XI] = sy.nsimplify(xi)
    return complex(sy.N(total.subs(substitutions), WORKING_DPS))


def format_expansion(expansion: SymbolExpansion) -> str:
    """Plain-text rendering of an expansion, one order per line in canonical term order.

    .. versionadded:: 1.0.0
    """

    lines = []
    for k in range(len(expansion.orders)):
        terms = expansion.terms(k)
        body = " + ".join(term.render() for term in terms) if terms else "0"
        lines.append(f"q_{1 - k} = {body}")

    return "\n".join(lines)


@dataclass(frozen=True)
class SmoothingReport:
    """Weighted Dirichlet-to-Neumann remainders ``|Q(lambda) - sqrt(lambda + t)| (1 + lambda)^(order/2)``.

    .. versionadded:: 1.0.0

    Attributes
    ----------
    samples : tuple[tuple[float, float, float], ...]
        Triples of fiber eigenvalue, remainder and weighted remainder.
    argmax : float
        The eigenvalue where the weighted remainder peaks.
    maximum : float
        The peak value.
    monotone_after : bool
        Whether the weighted remainder strictly decreases after the peak.
    """

    samples: tuple
    argmax: float
    maximum: float
    monotone_after: bool

    @property
    def zero_remainder(self) -> Optional[float]:
        return next((rem for lam, rem, _ in self.samples if lam == 0), None)


@typechecked
def smoothing_decay_check(
    length: float,
    t: float,
    cutoff: float,
    order: int,
    model: Optional[CrossSection] = None,
) -> SmoothingReport:
    """Check that the one-sided map of a cylinder differs from ``sqrt(Delta_Y + t)`` by a smoothing remainder.

    .. versionadded:: 1.0.0

    Parameters
    ----------
    length : float
        The cylinder length.
    t : float
        The shift, positive.
    cutoff : float
        The largest fiber eigenvalue sampled.
    order : int
        The polynomial weight order; the weight is ``(1 + lambda)^(order/2)``.
    model : CrossSection or None
        The fibers sampled. Defaults to the eigenvalues ``0, 1, 2, ...``.

    Raises
    ------
    ValueError
        Raised when ``length`` or ``t`` is not positive.

    Returns
    -------
    SmoothingReport
        The weighted remainders and where they peak.
    """

    if not length > 0 or not t > 0:
        raise ValueError(f"Invalid length or shift: ({length}, {t}). Both must be positive.")

    model = model or Explicit.shifted_integers(0)
    spectral_map = QCylinder(length).spectral_map(RayShift(t=float(t)))
    samples = []
    with mpmath.workdps(WORKING_DPS):
        for lam, _ in model.eigenvalues(cutoff):
            remainder = abs(spectral_map(lam) - mpmath.sqrt(as_mp(lam) + t))
            weighted = remainder * (1 + as_mp(lam)) ** (mpmath.mpf(order) / 2)
            samples.append((float(lam), float(remainder), float(weighted)))

    peak = max(range(len(samples)), key=lambda i: samples[i][2])
    tail = [w for _, _, w in samples[peak:]]
    monotone = all(b < a for a, b in zip(tail, tail[1:]))
    logger.debug("smoothing check: peak %s at %s over %d fibers", samples[peak][2], samples[peak][0], len(samples))
    return SmoothingReport(
        samples=tuple(samples),
        argmax=samples[peak][0],
        maximum=samples[peak][2],
        monotone_after=monotone,
    )
