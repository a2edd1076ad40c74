"""Hypergeometric Picard-Fuchs data for Delsarte pencils.

Two routes lead to the parameters of a period:

* Gaehrs' formula for the holomorphic form, alpha = {j/d^T}, beta = {j/q_i}
  with the common part removed;
* the Adolphson-Sperber diagonal series attached to a lattice point b of the
  half-open parallelepiped spanned by the rows of A, followed by the change of
  variables that moves solutions from the origin to infinity.

Everything here is exact rational arithmetic.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Sequence

from .hyp_sums import angle
from .pencil_counts import PencilSpec, get_pencil

__all__ = [
    "LatticeData",
    "NotABasisPoint",
    "PFParams",
    "PolePosition",
    "REPRESENTATIVES",
    "SingularMatrix",
    "as_parameters",
    "gahrs_parameters",
    "lambda_scaling",
    "lattice_points",
    "ode_residual",
    "raw_as_parameters",
    "representative_rows",
    "series_coefficients",
]


# lattice point used for each named parameter row
REPRESENTATIVES: dict[str, tuple[str, tuple[int, ...]]] = {
    "heart0": ("C4", (1, 1, 1, 1)),
    "spade0": ("C3F1", (1, 1, 1, 1)),
    "club0": ("C2F2", (1, 1, 1, 1)),
    "club1": ("C2F2", (1, 3, 1, 3)),
    "club2": ("C2F2", (1, 4, 1, 2)),
    "club3": ("C2F2", (2, 3, 2, 1)),
    "club4": ("C2L2", (2, 3, 1, 2)),
    "king0": ("C2C2", (1, 1, 1, 1)),
    "king1": ("C2C2", (2, 1, 2, 3)),
    "king2": ("C2C2", (2, 2, 1, 3)),
    "king3": ("C2C2", (1, 1, 2, 4)),
    "king4": ("C2C2", (1, 2, 2, 3)),
    "king5": ("C2C2", (2, 1, 1, 4)),
}


class SingularMatrix(ValueError):
    pass


class NotABasisPoint(ValueError):
    pass


class PolePosition(ZeroDivisionError):
    def __init__(self, n: int):
        super().__init__(f"zero Pochhammer denominator at n={n}")
        self.n = n


@dataclass(frozen=True)
class LatticeData:
    A: tuple[tuple[int, ...], ...]
    ell: tuple[int, ...]
    ell0: int
    points: tuple[tuple[int, ...], ...]
    orbits: tuple[tuple[tuple[int, ...], ...], ...]
    spec: PencilSpec


@dataclass(frozen=True)
class PFParams:
    """A hypergeometric pair with its argument t = t_constant * psi^t_exponent.

    The period is c^leading_power * psi^leading_power * F(alpha, beta | t) where
    lambda = c psi is the normalising substitution; ``scale`` stores c as a map
    prime -> rational exponent.
    """

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    t_constant: Fraction
    t_exponent: int
    leading_power: Fraction
    scale: tuple[tuple[int, Fraction], ...]

    @property
    def t_scale(self) -> tuple[dict[int, Fraction], int]:
        """(c, -d^T) with t = (c psi)^{-d^T}."""
        return dict(self.scale), self.t_exponent


def _sorted(xs) -> tuple[Fraction, ...]:
    return tuple(sorted(xs))


def _solve(M: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over Q."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("exponent matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _coefficients(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """v with b = sum_j v_j a_j, a_j the rows of A."""
    n = len(A)
    AT = [[Fraction(A[j][k]) for j in range(n)] for k in range(n)]
    return _solve(AT, [Fraction(x) for x in b])


def lattice_points(spec: PencilSpec) -> LatticeData:
    """Enumerate B and C: integer points of P(A) with positive entries summing to 0 mod 4."""
    A = spec.A
    n = len(A)
    degree = sum(A[0])
    col_sums = [sum(A[j][k] for j in range(n)) for k in range(n)]
    points = []
    for b in itertools.product(*[range(1, s) for s in col_sums]):
        if sum(b) % degree:
            continue
        v = _coefficients(A, b)
        if all(0 <= x < 1 for x in v):
            points.append(tuple(b))
    ell = _dual_weights(A)
    orbits: dict[int, list] = {}
    for b in points:
        key = sum(w * x for w, x in zip(spec.symmetry_weights, b)) % spec.symmetry_order
        orbits.setdefault(key, []).append(b)
    return LatticeData(
        tuple(map(tuple, A)), ell, sum(ell), tuple(points),
        tuple(tuple(v) for _, v in sorted(orbits.items())), spec,
    )


def _dual_weights(A: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Smallest positive integers l_j with sum_j l_j a_j = (sum l_j) * (1,...,1)."""
    n = len(A)
    v = _coefficients(A, [1] * n)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ell = [int(x * den) for x in v]
    g = 0
    for x in ell:
        g = gcd(g, x)
    return tuple(x // g for x in ell)


def lambda_scaling(ell: Sequence[int]) -> dict[int, Fraction]:
    """c with lambda = c psi, as prime -> exponent; c^{l0} = prod l_j^{l_j}."""
    ell0 = sum(ell)
    out: Counter = Counter()
    for l in ell:
        for pr, e in _factor(l).items():
            out[pr] += Fraction(e * l, ell0)
    return {pr: e for pr, e in sorted(out.items()) if e}


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _cancel(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a, b = Counter(num), Counter(den)
    common = a & b
    return sorted((a - common).elements()), sorted((b - common).elements())


def raw_as_parameters(data: LatticeData, b: Sequence[int]) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """Pochhammer parameters of the diagonal series at b, before the change of variables."""
    b = tuple(int(x) for x in b)
    if b not in data.points:
        raise NotABasisPoint(f"{b} is not in B and C")
    v = _coefficients(data.A, b)
    num = [(vj + k) / lj for vj, lj in zip(v, data.ell) for k in range(lj)]
    den = [Fraction(k, data.ell0) for k in range(1, data.ell0 + 1)]
    alpha, beta = _cancel(num, den)
    return _sorted(alpha), _sorted(beta)


def _to_infinity(alpha: Sequence[Fraction], beta: Sequence[Fraction]) -> tuple[Fraction, list, list]:
    a1 = min(alpha)
    new_alpha = [angle(1 - bi + a1) for bi in beta]
    new_beta = [angle(a1 - ai + 1) for ai in alpha]
    return a1, new_alpha, new_beta


def _t_constant(scale: dict[int, Fraction], ell0: int) -> Fraction:
    c = Fraction(1)
    for pr, e in scale.items():
        power = e * ell0
        if power.denominator != 1:
            raise ValueError("scaling does not become rational at the l0-th power")  # pragma: no cover
        c *= Fraction(pr) ** int(power)
    return 1 / c


def as_parameters(data: LatticeData, b: Sequence[int]) -> PFParams:
    alpha, beta = raw_as_parameters(data, b)
    a1, alpha, beta = _to_infinity(alpha, beta)
    alpha, beta = _cancel(alpha, beta)
    scale = lambda_scaling(data.ell)
    return PFParams(
        _sorted(alpha), _sorted(beta), _t_constant(scale, data.ell0), -data.ell0,
        -data.ell0 * a1, tuple(scale.items()),
    )


def gahrs_parameters(spec: PencilSpec) -> PFParams:
    """Parameters of the holomorphic period: {j/d^T} against the union of {j/q_i}."""
    dT = spec.dT
    alpha = [Fraction(j, dT) for j in range(1, dT + 1)]
    beta = [Fraction(j, qi) for qi in spec.dual_weights for j in range(1, qi + 1)]
    alpha, beta = _cancel(alpha, beta)
    scale = lambda_scaling(spec.dual_weights)
    return PFParams(
        _sorted(alpha), _sorted(beta), _t_constant(scale, dT), -dT,
        -dT * min(alpha), tuple(scale.items()),
    )


def _pochhammer_ratio_step(params_a, params_b, n: int) -> Fraction:
    num = prod((a + n for a in params_a), start=Fraction(1))
    den = prod((b + n for b in params_b), start=Fraction(1))
    if den == 0:
        raise PolePosition(n + 1)
    return num / den


def series_coefficients(params: PFParams | tuple, T: int) -> list[Fraction]:
    """c_0..c_T of sum_n prod (alpha)_n / prod (beta)_n x^n."""
    alpha, beta = _pair(params)
    coeffs = [Fraction(1)]
    for n in range(T):
        coeffs.append(coeffs[-1] * _pochhammer_ratio_step(alpha, beta, n))
    return coeffs


def _pair(params) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if isinstance(params, PFParams):
        return params.alpha, params.beta
    alpha, beta = params
    return tuple(map(Fraction, alpha)), tuple(map(Fraction, beta))


def ode_residual(params: PFParams | tuple, coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of x^0..x^{T} in D(alpha, beta | x) applied to sum c_n x^n.

    D = prod(Theta + beta_i - 1) - x prod(Theta + alpha_i) with Theta = x d/dx,
    so the x^n coefficient is c_n prod(n + beta_i - 1) - c_{n-1} prod(n - 1 + alpha_i).
    """
    alpha, beta = _pair(params)
    out = []
    for n in range(len(coeffs)):
        term = coeffs[n] * prod((n + b - 1 for b in beta), start=Fraction(1))
        if n:
            term -= coeffs[n - 1] * prod((n - 1 + a for a in alpha), start=Fraction(1))
        out.append(term)
    return out


def representative_rows(label: str) -> dict[str, tuple[tuple[int, ...], PFParams]]:
    """Named parameter rows of one family, keyed by row name."""
    data = lattice_points(get_pencil(label))
    return {
        name: (b, as_parameters(data, b))
        for name, (fam, b) in REPRESENTATIVES.items()
        if fam == label
    }
