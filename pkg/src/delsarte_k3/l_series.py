"""Truncated local L-factors and the Euler-product check of the factorisation.

Every local factor is stored on the Dirichlet-coefficient layer: a factor
P(T) = exp(-sum_r a_r T^r / r) is represented by a_1..a_R.  Multiplying
factors adds coefficients, so the factorised zeta function of X_psi predicts

    #X(F_{p^r}) = 1 + p^r + p^{2r} + sum over factors of a_r.

A weight shift s -> s-1 multiplies a_r by p^r and a twist by a character chi
multiplies it by chi(p)^r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Callable, Sequence

from .field_characters import FieldContext, gauss_table, make_field
from .hyp_sums import GammaTriple, HypParams, gamma_sum, hyp_sum
from .pencil_counts import (
    CLUB0, CLUB1, CLUB2_TRIPLE, CLUB4, HEART0, KING0, KING1, KING2_TRIPLE, KING4_TRIPLE,
    SPADE0, T_CONSTANTS, BadPrimeForFamily, brute_force_count,
    get_pencil, koblitz_count,
)

__all__ = [
    "FIELD_TAGS",
    "Factor",
    "LocalFactorSeries",
    "RamifiedPrime",
    "TwistCharacter",
    "dedekind_local_factor",
    "family_factors",
    "gamma_local_factor",
    "hyp_local_factor",
    "point_count",
    "verify_main_theorem",
]

BRUTE_FORCE_LIMIT = 200


class RamifiedPrime(ValueError):
    pass


# -- power series on the coefficient layer ------------------------------------


@dataclass(frozen=True)
class LocalFactorSeries:
    """a_1..a_R of P(T) = exp(-sum a_r T^r / r); ``poly`` is an exact P when known."""

    p: int
    R: int
    coeffs: tuple
    poly: tuple[int, ...] | None = None

    def polynomial(self) -> list:
        """Coefficients P_0..P_R of the truncated factor."""
        P = [1]
        for n in range(1, self.R + 1):
            P.append(-sum(self.coeffs[k - 1] * P[n - k] for k in range(1, n + 1)) / n)
        return P

    @classmethod
    def from_polynomial(cls, p: int, P: Sequence, R: int) -> "LocalFactorSeries":
        P = list(P) + [0] * max(0, R + 1 - len(P))
        if P[0] != 1:
            raise ValueError("local factor must have constant term 1")
        a: list = []
        for n in range(1, R + 1):
            a.append(-n * P[n] - sum(a[k - 1] * P[n - k] for k in range(1, n)))
        exact = tuple(int(x) for x in P[: R + 1]) if all(float(x).is_integer() for x in P[: R + 1]) else None
        return cls(p, R, tuple(a), exact)

    def __mul__(self, other: "LocalFactorSeries") -> "LocalFactorSeries":
        if (self.p, self.R) != (other.p, other.R):
            raise ValueError("factors must share p and R")
        return LocalFactorSeries(self.p, self.R, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))


# -- twists -------------------------------------------------------------------


@dataclass(frozen=True)
class TwistCharacter:
    """A character evaluated at the Frobenius of degree r.

    ``quadratic``: phi_d, the quadratic character of d in F_{p^r}.
    ``sqrt_minus_one``: quadratic character of a square root of -1 in F_{p^r};
    ``root`` picks the smaller (0) or larger (1) root.
    ``quartic_literal``: omega(x)^{qx/4} with x the chosen root of -1.
    """

    kind: str = "trivial"
    d: Fraction = Fraction(1)
    root: int = 0

    def __call__(self, ctx: FieldContext):
        if self.kind == "trivial":
            return 1
        if self.kind == "quadratic":
            return ctx.quadratic_character(ctx.from_rational(self.d.numerator, self.d.denominator))
        roots = ctx.sqrt_minus_one()
        if not roots:
            return 0
        x = roots[self.root]
        if self.kind == "sqrt_minus_one":
            return ctx.quadratic_character(x)
        if self.kind == "quartic_literal":
            return ctx.omega(x, ctx.qx // 4)
        raise ValueError(f"unknown twist kind {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "quadratic":
            return f"phi_{self.d}"
        if self.kind == "trivial":
            return "trivial"
        return f"{self.kind}[root {self.root}]"


def _t_in(ctx: FieldContext, t: Fraction | int) -> int:
    t = Fraction(t)
    return ctx.from_rational(t.numerator, t.denominator)


def hyp_local_factor(params: HypParams, t: Fraction | int, p: int, R: int,
                     shift: int = 0, twist: TwistCharacter = TwistCharacter()) -> LocalFactorSeries:
    """a_r = chi(p)^r p^{shift r} H_{p^r}(alpha, beta | t)."""
    coeffs = []
    for r in range(1, R + 1):
        ctx = make_field(p, r)
        h = hyp_sum(params, _t_in(ctx, t), ctx, gauss_table(ctx))
        coeffs.append(complex(h) * twist(ctx) * ctx.q**shift)
    return LocalFactorSeries(p, R, tuple(coeffs))


def _order_mod(p: int, N: int) -> int:
    f, x = 1, p % N
    while x != 1 % N:
        x = x * p % N
        f += 1
    return f


def coset_representatives(p: int, N: int) -> list[int]:
    """Smallest representatives of (Z/NZ)^x / <p>."""
    seen: set[int] = set()
    reps = []
    for k in range(1, N + 1):
        k %= N
        if gcd(k, N) != 1 or k in seen:
            continue
        reps.append(k)
        x = k
        while x not in seen:
            seen.add(x)
            x = x * p % N
    return sorted(reps) if N > 1 else [0]


def gamma_local_factor(tri: GammaTriple, t: Fraction | int, p: int, R: int,
                       shift: int = 0, twist: TwistCharacter = TwistCharacter()) -> LocalFactorSeries:
    """prod over k in (Z/N)^x/<p> of L_{p^f}(F(gamma, k delta, N | t), T^f).

    The T^f substitution puts f * F_{p^r} at degree r when f | r and zero elsewhere.
    """
    N = tri.N
    if p % N == 0 and N > 1:
        raise RamifiedPrime(f"p={p} divides N={N}")
    f = _order_mod(p, N) if N > 1 else 1
    triples = [tri.scaled(k) if N > 1 else tri for k in coset_representatives(p, N)]
    coeffs = []
    for r in range(1, R + 1):
        if r % f:
            coeffs.append(0j)
            continue
        ctx = make_field(p, r)
        table = gauss_table(ctx)
        tt = _t_in(ctx, t)
        total = sum(complex(gamma_sum(tr, tt, ctx, table)) for tr in triples)
        coeffs.append(f * total * twist(ctx) * ctx.q**shift)
    return LocalFactorSeries(p, R, tuple(coeffs))


# -- Dedekind zeta pieces -----------------------------------------------------

# conductor N with K = Q(zeta_N)
FIELD_TAGS = {"Q": 1, "Q(i)": 4, "Q(sqrt-3)": 3, "Q(zeta6)": 3, "Q(zeta8)": 8, "Q(zeta8)|Q": 8}


def _euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def dedekind_local_factor(field_tag: str, p: int, shift: int, R: int) -> LocalFactorSeries:
    """Local factor of zeta_K(s - shift) for cyclotomic K, or of zeta_K/zeta for ``Q(zeta8)|Q``.

    For K = Q(zeta_N) with residue degree f and g = phi(N)/f primes above p the
    factor is (1 - (p^shift T)^f)^g.
    """
    if field_tag not in FIELD_TAGS:
        raise ValueError(f"unknown field {field_tag!r}")
    N = FIELD_TAGS[field_tag]
    if N % p == 0:
        raise RamifiedPrime(f"p={p} ramifies in {field_tag}")
    f = _order_mod(p, N) if N > 1 else 1
    g = _euler_phi(N) // f
    relative = field_tag.endswith("|Q")
    coeffs = []
    for r in range(1, R + 1):
        a = _euler_phi(N) * (r % f == 0) - relative
        coeffs.append(a * p ** (shift * r))
    # exact P(T) = (1 - (p^shift T)^f)^g / (1 - p^shift T)^relative, truncated
    poly = [0] * (R + 1)
    for j in range(g + 1):
        deg = j * f
        if deg <= R:
            poly[deg] += comb(g, j) * (-1) ** j * p ** (shift * deg)
    if relative:
        inv = [p ** (shift * k) for k in range(R + 1)]
        poly = [sum(poly[i] * inv[n - i] for i in range(n + 1)) for n in range(R + 1)]
    return LocalFactorSeries(p, R, tuple(coeffs), tuple(poly))


# -- factor lists --------------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    name: str
    build: Callable[[int, int, TwistCharacter], LocalFactorSeries]
    uses_sqrt_minus_one: bool = False


def family_t(label: str, psi: Fraction) -> Fraction:
    c, e = T_CONSTANTS[label]
    return c * Fraction(psi) ** e


def family_factors(label: str, psi: Fraction | int) -> list[Factor]:
    """The factorisation of L(X_psi, s) for one family, as local-factor builders."""
    psi = Fraction(psi)
    t = family_t(label, psi)
    phi = lambda d: TwistCharacter("quadratic", Fraction(d))  # noqa: E731

    def zeta(tag):
        return Factor(f"zeta_{tag}(s-1)", lambda p, R, _: dedekind_local_factor(tag, p, 1, R))

    def hyp(name, params, shift=0, twist=TwistCharacter()):
        return Factor(name, lambda p, R, _: hyp_local_factor(params, t, p, R, shift, twist))

    def gam(name, tri, shift=1, twist=None):
        if twist is None:
            return Factor(name, lambda p, R, chi: gamma_local_factor(tri, t, p, R, shift, chi), True)
        return Factor(name, lambda p, R, _: gamma_local_factor(tri, t, p, R, shift, twist))

    if label == "C4":
        return [zeta("Q"), zeta("Q(sqrt-3)"), hyp("L(H heart0, s)", HEART0)]
    if label == "C3F1":
        return [zeta("Q(zeta8)|Q"), hyp("L(H spade0, s)", SPADE0)]
    if label == "C2F2":
        return [
            zeta("Q(zeta8)|Q"),
            hyp("L(H club0, s)", CLUB0),
            hyp("L(H club1, s-1, phi_-1)", CLUB1, 1, phi(-1)),
            gam("L(F club2, Q(i), s-1, phi_sqrt-1)", CLUB2_TRIPLE),
        ]
    if label == "C2L2":
        return [
            zeta("Q(sqrt-3)"), zeta("Q(sqrt-3)"), zeta("Q(i)"), zeta("Q"),
            hyp("L(H club0, s)", CLUB0),
            hyp("L(H club4, s-1, phi_-12 phi_psi)", CLUB4, 1, phi(-12 * psi)),
        ]
    if label == "C2C2":
        return [
            zeta("Q"), zeta("Q(sqrt-3)"), zeta("Q(sqrt-3)"),
            hyp("L(H king0, s)", KING0),
            hyp("L(H king1, s-1, phi_-6psi)", KING1, 1, phi(-6 * psi)),
            gam("L(F king2, Q(sqrt-3), s-1)", KING2_TRIPLE, 1, TwistCharacter()),
            gam("L(F king4, Q(zeta6), s-1, phi_-6psi)", KING4_TRIPLE, 1, phi(-6 * psi)),
        ]
    raise BadPrimeForFamily(f"no factorisation recorded for {label}")


def in_bad_set(label: str, psi: Fraction | int, p: int) -> bool:
    """Whether p is a prime of bad reduction or divides the numerator or denominator of psi, t or t - 1."""
    spec = get_pencil(label)
    psi = Fraction(psi)
    t = family_t(label, psi)
    if p in spec.bad_primes:
        return True
    return any(x % p == 0 for x in (t.numerator, t.denominator, (t - 1).numerator, psi.numerator, psi.denominator))


def point_count(label: str, psi: Fraction | int, p: int, r: int) -> tuple[int, str]:
    """#X_psi(F_{p^r}) by enumeration when small, otherwise by the Koblitz character sum."""
    ctx = make_field(p, r)
    psi = Fraction(psi)
    x = ctx.from_rational(psi.numerator, psi.denominator)
    spec = get_pencil(label)
    if ctx.q <= BRUTE_FORCE_LIMIT:
        return brute_force_count(spec, x, ctx), "brute"
    return koblitz_count(spec, x, ctx), "koblitz"


@dataclass
class VerifyReport:
    family: str
    p: int
    psi: str
    r: list[int]
    lhs: list[int]
    rhs: list[float]
    residual: float
    twist_choice: str | None
    lhs_method: list[str]
    factors: dict = field(default_factory=dict)
    candidates: dict = field(default_factory=dict)
    tolerance: float = 1e-4

    @property
    def ok(self) -> bool:
        return self.residual < self.tolerance

    def as_dict(self) -> dict:
        return {
            "family": self.family, "p": self.p, "psi": self.psi, "r": self.r, "lhs": self.lhs,
            "rhs": self.rhs, "residual": self.residual, "twist_choice": self.twist_choice,
            "lhs_method": self.lhs_method, "ok": self.ok, "candidates": self.candidates,
        }


TWIST_CANDIDATES = (
    TwistCharacter("sqrt_minus_one", root=0),
    TwistCharacter("sqrt_minus_one", root=1),
    TwistCharacter("quartic_literal", root=0),
    TwistCharacter("quartic_literal", root=1),
)


def verify_main_theorem(label: str, p: int, psi: Fraction | int, R: int, tol: float = 1e-4) -> VerifyReport:
    """Compare point counts with the factorised local expansion for r = 1..R."""
    psi = Fraction(psi)
    if in_bad_set(label, psi, p):
        raise BadPrimeForFamily(f"p={p} is in the bad set for {label} at psi={psi}")
    lhs, methods = [], []
    for r in range(1, R + 1):
        n, how = point_count(label, psi, p, r)
        lhs.append(n)
        methods.append(how)
    factors = family_factors(label, psi)
    needs_choice = any(f.uses_sqrt_minus_one for f in factors)
    choices = TWIST_CANDIDATES if needs_choice else (TwistCharacter(),)
    fixed = [f.build(p, R, TwistCharacter()) for f in factors if not f.uses_sqrt_minus_one]
    best = None
    candidates: dict[str, float] = {}
    for chi in choices:
        series = fixed + [f.build(p, R, chi) for f in factors if f.uses_sqrt_minus_one]
        rhs = []
        for r in range(1, R + 1):
            q = p**r
            rhs.append(1 + q + q * q + sum(s.coeffs[r - 1] for s in series))
        residual = max(abs(a - b) for a, b in zip(lhs, rhs))
        candidates[chi.describe()] = residual
        # first candidate that closes wins; otherwise keep the smallest residual
        if best is None or (best[0] >= tol and residual < best[0]):
            best = (residual, chi, rhs, series)
    residual, chi, rhs, series = best
    return VerifyReport(
        label, p, str(psi), list(range(1, R + 1)), lhs, [complex(x).real for x in rhs], float(residual),
        chi.describe() if needs_choice else None, methods,
        {f.name: [complex(c) for c in s.coeffs] for f, s in zip(
            [f for f in factors if not f.uses_sqrt_minus_one] + [f for f in factors if f.uses_sqrt_minus_one],
            series)},
        candidates if needs_choice else {}, tol,
    )


__all__ += ["VerifyReport", "in_bad_set", "coset_representatives", "family_t", "TWIST_CANDIDATES"]
