"""Truncated power series in q over the zeta-Laurent coefficient ring.

Everything here is exact.  A series is a fixed-length list of
LaurentPolyZeta coefficients for q^0 .. q^N.  Infinite products of
binomial factors (1 + s * zeta^a * q^(c*n))^e are expanded by sweeping
one sparse factor at a time over the coefficient array, which keeps the
work per factor linear in N; denominator factors (e < 0) use the
geometric recurrence for the per-factor inverse rather than one global
series inverse.

Two expansion backends share the factor sweep:

  * expand_product keeps full Laurent coefficients in zeta;
  * expand_product_mod_phi works directly in Z[zeta]/Phi_ell, which is
    still exact and is what makes deep divisibility verification cheap,
    since the quotient map is a ring morphism (property-tested against
    the full expansion).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .cyclotomic import (
    CyclotomicElement,
    LaurentPolyZeta,
    eval_at_one,
    mul_zeta_power_coords,
    reduce_mod_phi,
    require_odd_prime,
)


@dataclass(frozen=True)
class FactorSpec:
    """One factor family (1 + sign * zeta^zeta_exp * q^(q_stride * n))^power over n >= 1.

    sign is +1 or -1, q_stride >= 1, power is a nonzero integer; negative
    power puts the factor in the denominator.  A factor pair written
    zeta^(+-a) elsewhere is two FactorSpec entries, one with zeta_exp a
    and one with -a.
    """

    sign: int
    zeta_exp: int
    q_stride: int
    power: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        for name in ("zeta_exp", "q_stride", "power"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"{name} must be an integer, got {v!r}")
        if self.q_stride < 1:
            raise ValueError(f"q_stride must be >= 1, got {self.q_stride}")
        if self.power == 0:
            raise ValueError("power must be nonzero")


@dataclass(frozen=True)
class ProductSpec:
    """A finite list of factor families multiplied together.

    Every factor has constant term 1, so any product expands to a series
    with constant term 1 and admits per-factor inversion.
    """

    factors: tuple[FactorSpec, ...]
    metadata: Mapping[str, int] | None = None

    def __post_init__(self):
        factors = tuple(self.factors)
        for f in factors:
            if not isinstance(f, FactorSpec):
                raise TypeError(f"not a FactorSpec: {f!r}")
        object.__setattr__(self, "factors", factors)


class QSeries:
    """A truncated series sum_{d=0}^{N} c_d q^d with LaurentPolyZeta coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[LaurentPolyZeta | int]):
        if len(coeffs) == 0:
            raise ValueError("a series needs at least the q^0 coefficient")
        out = []
        for c in coeffs:
            if isinstance(c, LaurentPolyZeta):
                out.append(c)
            elif isinstance(c, int) and not isinstance(c, bool):
                out.append(LaurentPolyZeta({0: c}))
            else:
                raise TypeError(f"coefficient {c!r} is neither LaurentPolyZeta nor int")
        self._coeffs = tuple(out)

    @classmethod
    def _raw(cls, coeffs: tuple[LaurentPolyZeta, ...]) -> "QSeries":
        self = object.__new__(cls)
        self._coeffs = coeffs
        return self

    @classmethod
    def constant(cls, truncation: int, value: int = 1) -> "QSeries":
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        zero = LaurentPolyZeta.zero()
        head = LaurentPolyZeta({0: value})
        return cls._raw((head,) + (zero,) * truncation)

    @property
    def truncation(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coefficients(self) -> tuple[LaurentPolyZeta, ...]:
        return self._coeffs

    def __getitem__(self, d: int) -> LaurentPolyZeta:
        if not 0 <= d <= self.truncation:
            raise IndexError(f"exponent {d} outside truncation {self.truncation}")
        return self._coeffs[d]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    __hash__ = None

    def truncate(self, truncation: int) -> "QSeries":
        """Drop coefficients above a smaller truncation."""
        if not 0 <= truncation <= self.truncation:
            raise ValueError(
                f"cannot truncate depth {self.truncation} series to {truncation}"
            )
        return QSeries._raw(self._coeffs[: truncation + 1])

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._coeffs[:4])
        tail = ", ..." if self.truncation > 3 else ""
        return f"QSeries(N={self.truncation}; {head}{tail})"


def _require_same_truncation(a: QSeries, b: QSeries) -> None:
    if a.truncation != b.truncation:
        raise ValueError(
            f"mismatched truncations {a.truncation} and {b.truncation}"
        )


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at the common depth."""
    _require_same_truncation(a, b)
    n = a.truncation
    ac, bc = a.coefficients, b.coefficients
    out = []
    for d in range(n + 1):
        acc = LaurentPolyZeta.zero()
        for i in range(d + 1):
            ai = ac[i]
            bj = bc[d - i]
            if ai and bj:
                acc = acc + ai * bj
        out.append(acc)
    return QSeries._raw(tuple(out))


def series_inverse(a: QSeries) -> QSeries:
    """Multiplicative inverse of a series whose constant term is 1."""
    if a[0] != LaurentPolyZeta.one():
        raise ValueError("series inverse requires constant term exactly 1")
    n = a.truncation
    ac = a.coefficients
    inv: list[LaurentPolyZeta] = [LaurentPolyZeta.one()]
    for d in range(1, n + 1):
        acc = LaurentPolyZeta.zero()
        for i in range(1, d + 1):
            ai = ac[i]
            bj = inv[d - i]
            if ai and bj:
                acc = acc + ai * bj
        inv.append(-acc)
    return QSeries._raw(tuple(inv))


# ---------------------------------------------------------------------------
# Product expansion.

def _addmul_shift(dst: dict[int, int], src: dict[int, int], negate: bool, shift: int) -> None:
    # dst += (+-1) * zeta^shift * src, keeping dst canonical (no zeros).
    if negate:
        for e, c in src.items():
            k = e + shift
            v = dst.get(k, 0) - c
            if v:
                dst[k] = v
            else:
                del dst[k]
    else:
        for e, c in src.items():
            k = e + shift
            v = dst.get(k, 0) + c
            if v:
                dst[k] = v
            else:
                del dst[k]


def _expand_dicts(spec: ProductSpec, truncation: int) -> list[dict[int, int]]:
    n = truncation
    coeffs: list[dict[int, int]] = [{} for _ in range(n + 1)]
    coeffs[0][0] = 1
    for f in spec.factors:
        a = f.zeta_exp
        numerator = f.power > 0
        # Binomial factors multiply in place sweeping down; inverse factors
        # use the geometric recurrence B[d] = A[d] - s*zeta^a*B[d-M] sweeping up.
        negate = (f.sign < 0) if numerator else (f.sign > 0)
        for _ in range(abs(f.power)):
            for step in range(1, n // f.q_stride + 1):
                m = f.q_stride * step
                if numerator:
                    for d in range(n, m - 1, -1):
                        src = coeffs[d - m]
                        if src:
                            _addmul_shift(coeffs[d], src, negate, a)
                else:
                    for d in range(m, n + 1):
                        src = coeffs[d - m]
                        if src:
                            _addmul_shift(coeffs[d], src, negate, a)
    return coeffs


def expand_product(spec: ProductSpec, truncation: int) -> QSeries:
    """Expand the product described by spec through q^truncation, exactly."""
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    dicts = _expand_dicts(spec, truncation)
    return QSeries._raw(tuple(LaurentPolyZeta._raw(d) for d in dicts))


def expand_product_mod_phi(
    spec: ProductSpec, truncation: int, ell: int
) -> list[CyclotomicElement]:
    """Expand spec through q^truncation with coefficients in Z[zeta]/Phi_ell.

    Exact, and equal to applying reduce_mod_phi to every coefficient of
    expand_product(spec, truncation); computing in the quotient keeps
    each coefficient at ell - 1 integers, which is what makes deep
    congruence verification affordable.
    """
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    require_odd_prime(ell)
    n = truncation
    w = ell - 1
    coeffs: list[list[int]] = [[0] * w for _ in range(n + 1)]
    coeffs[0][0] = 1
    for f in spec.factors:
        a = f.zeta_exp % ell
        numerator = f.power > 0
        negate = (f.sign < 0) if numerator else (f.sign > 0)
        for _ in range(abs(f.power)):
            for step in range(1, n // f.q_stride + 1):
                m = f.q_stride * step
                rng = range(n, m - 1, -1) if numerator else range(m, n + 1)
                for d in rng:
                    src = coeffs[d - m]
                    if any(src):
                        shifted = mul_zeta_power_coords(src, a, ell)
                        dst = coeffs[d]
                        if negate:
                            for i in range(w):
                                dst[i] -= shifted[i]
                        else:
                            for i in range(w):
                                dst[i] += shifted[i]
    return [CyclotomicElement(ell, tuple(c)) for c in coeffs]


# ---------------------------------------------------------------------------
# Named products.

def partition_generating_spec() -> ProductSpec:
    """prod 1/(1 - q^n): ordinary partition counting."""
    return ProductSpec((FactorSpec(-1, 0, 1, -1),))


def crank_generating_spec() -> ProductSpec:
    """prod (1 - q^n) / ((1 - zeta q^n)(1 - zeta^-1 q^n)): the crank series."""
    return ProductSpec(
        (
            FactorSpec(-1, 0, 1, 1),
            FactorSpec(-1, 1, 1, -1),
            FactorSpec(-1, -1, 1, -1),
        )
    )


def pkj_generating_spec(k: int, j: int) -> ProductSpec:
    """prod (1 + q^n)^j / (1 - q^n)^k: k unbounded colors, j distinct-part colors."""
    if k < 0 or j < 0 or k + j < 1:
        raise ValueError("need k >= 0, j >= 0, k + j >= 1")
    factors = []
    if j:
        factors.append(FactorSpec(1, 0, 1, j))
    if k:
        factors.append(FactorSpec(-1, 0, 1, -k))
    return ProductSpec(tuple(factors))


def theta_tilde_expansion(a: int, truncation: int) -> QSeries:
    """prod (1 - q^n)(1 - zeta^a q^n)(1 - zeta^-a q^n) through q^truncation.

    The integral part of the odd theta function with zeta specialized to
    zeta^a; its q-support lies in the triangular numbers.  The fractional
    prefactor q^(1/8)(zeta^(1/2) - zeta^(-1/2)) is deliberately dropped:
    only integral powers are represented.
    """
    spec = ProductSpec(
        (
            FactorSpec(-1, 0, 1, 1),
            FactorSpec(-1, a, 1, 1),
            FactorSpec(-1, -a, 1, 1),
        )
    )
    return expand_product(spec, truncation)


def theta01_tilde_expansion(a: int, truncation: int) -> QSeries:
    """prod (1 - q^n)(1 + zeta^a q^n)(1 + zeta^-a q^n) through q^truncation.

    The half-period shift of theta_tilde_expansion (zeta^a -> -zeta^a);
    the q^(1/24)-style prefactor is dropped as above.  Same triangular
    q-support.
    """
    spec = ProductSpec(
        (
            FactorSpec(-1, 0, 1, 1),
            FactorSpec(1, a, 1, 1),
            FactorSpec(1, -a, 1, 1),
        )
    )
    return expand_product(spec, truncation)


def jacobi_triple_product_check(truncation: int) -> bool:
    """Exact two-sided check of the triple product identity through q^truncation.

    Product side: prod (1 - q^n)(1 - zeta q^n)(1 - zeta^-1 q^(n-1)), whose
    n = 1 third factor is the constant (1 - zeta^-1).  Sum side:
    sum over all integers kk of (-1)^kk zeta^kk q^(kk(kk+1)/2).  Both sides
    are built independently and compared coefficient by coefficient.
    """
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    n = truncation
    product = _expand_dicts(
        ProductSpec(
            (
                FactorSpec(-1, 0, 1, 1),
                FactorSpec(-1, 1, 1, 1),
                FactorSpec(-1, -1, 1, 1),
            )
        ),
        n,
    )
    lhs: list[dict[int, int]] = []
    for c in product:
        scaled = dict(c)
        _addmul_shift(scaled, c, True, -1)  # multiply by (1 - zeta^-1)
        lhs.append(scaled)

    rhs: list[dict[int, int]] = [{} for _ in range(n + 1)]
    kk = 0
    while True:
        placed = False
        for cand in (kk, -kk - 1):
            t = cand * (cand + 1) // 2
            if t <= n:
                placed = True
                sign = -1 if cand % 2 else 1
                v = rhs[t].get(cand, 0) + sign
                if v:
                    rhs[t][cand] = v
                else:
                    del rhs[t][cand]
        if not placed:
            break
        kk += 1
    return lhs == rhs


# ---------------------------------------------------------------------------
# Specialization and support.

def specialize_zeta(s: QSeries, ell: int) -> list[CyclotomicElement]:
    """Reduce every coefficient modulo Phi_ell (evaluation at a primitive root)."""
    return [reduce_mod_phi(c, ell) for c in s.coefficients]


def specialize_one(s: QSeries) -> list[int]:
    """Evaluate every coefficient at zeta = 1."""
    return [eval_at_one(c) for c in s.coefficients]


def support_exponents(s: QSeries) -> set[int]:
    """Indices d with a nonzero q^d coefficient."""
    return {d for d, c in enumerate(s.coefficients) if c}


# ---------------------------------------------------------------------------
# Plain-text dump format.

def format_coefficient(p: LaurentPolyZeta) -> str:
    """Monomials as coeff*z^exp, space-separated, ascending exponent; zero is 0."""
    if p.is_zero:
        return "0"
    return " ".join(f"{c}*z^{e}" for e, c in p.sorted_terms())


def dump_series(s: QSeries) -> str:
    """One line per coefficient: the q-exponent, a tab, then the coefficient."""
    return "".join(
        f"{d}\t{format_coefficient(c)}\n" for d, c in enumerate(s.coefficients)
    )
