"""Exact arithmetic in Z[zeta, 1/zeta] and its quotient modulo Phi_l.

Laurent polynomials in a formal root of unity zeta are the coefficient
ring for every q-series in this package.  Reducing a coefficient modulo
the l-th cyclotomic polynomial Phi_l (l prime) realizes evaluation at a
primitive l-th root of unity without leaving integer arithmetic; a
coefficient is divisible by Phi_l exactly when its image in the quotient
is zero.  No floating point is used anywhere on this path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for the moduli used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(ell: int) -> None:
    if not isinstance(ell, int) or isinstance(ell, bool) or not is_prime(ell):
        raise ValueError(f"modulus {ell!r} is not prime")


def require_odd_prime(ell: int) -> None:
    require_prime(ell)
    if ell == 2:
        raise ValueError("modulus must be an odd prime")


class LaurentPolyZeta:
    """An integer Laurent polynomial in zeta.

    Terms are stored as a map from integer exponents (negative allowed)
    to nonzero integer coefficients.  The canonical form never stores a
    zero coefficient, so equality is plain map equality.  Instances are
    immutable and safe to share across threads.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if not isinstance(exp, int) or isinstance(exp, bool):
                    raise TypeError(f"zeta exponent {exp!r} is not an integer")
                if not isinstance(coeff, int) or isinstance(coeff, bool):
                    raise TypeError(f"coefficient {coeff!r} is not an integer")
                if coeff:
                    clean[exp] = coeff
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPolyZeta":
        # Trusted constructor: terms must already be canonical and owned.
        self = object.__new__(cls)
        self._terms = terms
        return self

    @classmethod
    def zero(cls) -> "LaurentPolyZeta":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPolyZeta":
        return cls._raw({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int) -> "LaurentPolyZeta":
        """The monomial coeff * zeta**exp."""
        return cls({exp: coeff})

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def support(self) -> set[int]:
        return set(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPolyZeta):
            return self._terms == other._terms
        if isinstance(other, int) and not isinstance(other, bool):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    __hash__ = None  # mutable-dict-backed; equality only

    def __add__(self, other: "LaurentPolyZeta") -> "LaurentPolyZeta":
        if not isinstance(other, LaurentPolyZeta):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPolyZeta._raw(out)

    def __sub__(self, other: "LaurentPolyZeta") -> "LaurentPolyZeta":
        if not isinstance(other, LaurentPolyZeta):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPolyZeta._raw(out)

    def __neg__(self) -> "LaurentPolyZeta":
        return LaurentPolyZeta._raw({e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPolyZeta):
            out: dict[int, int] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    k = e1 + e2
                    v = out.get(k, 0) + c1 * c2
                    if v:
                        out[k] = v
                    else:
                        del out[k]
            return LaurentPolyZeta._raw(out)
        if isinstance(other, int) and not isinstance(other, bool):
            if not other:
                return LaurentPolyZeta._raw({})
            return LaurentPolyZeta._raw({e: c * other for e, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, offset: int) -> "LaurentPolyZeta":
        """Multiply by zeta**offset."""
        if not offset:
            return self
        return LaurentPolyZeta._raw({e + offset: c for e, c in self._terms.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks = []
        for e, c in self.sorted_terms():
            head = "- " if c < 0 else ("+ " if chunks else "")
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "z" if e == 1 else f"z^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            chunks.append(head + body if chunks or c < 0 else body)
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"LaurentPolyZeta({dict(self.sorted_terms())!r})"


def lp_add(a: LaurentPolyZeta, b: LaurentPolyZeta) -> LaurentPolyZeta:
    """Sum of two Laurent polynomials."""
    return a + b


def lp_mul(a: LaurentPolyZeta, b: LaurentPolyZeta) -> LaurentPolyZeta:
    """Product of two Laurent polynomials."""
    return a * b


def eval_at_one(p: LaurentPolyZeta) -> int:
    """Evaluate at zeta = 1, i.e. the sum of all coefficients."""
    return sum(c for _, c in p.items())


def phi_poly(ell: int) -> LaurentPolyZeta:
    """The cyclotomic polynomial 1 + zeta + ... + zeta**(ell-1) for prime ell."""
    require_prime(ell)
    return LaurentPolyZeta._raw({i: 1 for i in range(ell)})


@dataclass(frozen=True)
class CyclotomicElement:
    """An element of Z[zeta] / Phi_ell in the basis 1, zeta, ..., zeta**(ell-2).

    ell must be an odd prime; coords has exactly ell - 1 entries.  The
    element is zero exactly when every coordinate is zero, which is the
    divisibility-by-Phi_ell criterion used throughout.
    """

    prime: int
    coords: tuple[int, ...]

    def __post_init__(self):
        require_odd_prime(self.prime)
        if len(self.coords) != self.prime - 1:
            raise ValueError(
                f"need {self.prime - 1} coordinates for modulus {self.prime}, "
                f"got {len(self.coords)}"
            )

    @classmethod
    def zero(cls, ell: int) -> "CyclotomicElement":
        return cls(ell, (0,) * (ell - 1))

    @classmethod
    def one(cls, ell: int) -> "CyclotomicElement":
        return cls(ell, (1,) + (0,) * (ell - 2))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check_compatible(self, other: "CyclotomicElement") -> None:
        if self.prime != other.prime:
            raise ValueError(f"mixed moduli {self.prime} and {other.prime}")

    def __add__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        self._check_compatible(other)
        return CyclotomicElement(
            self.prime, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        self._check_compatible(other)
        return CyclotomicElement(
            self.prime, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "CyclotomicElement":
        return CyclotomicElement(self.prime, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return CyclotomicElement(self.prime, tuple(a * other for a in self.coords))
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        self._check_compatible(other)
        ell = self.prime
        w = ell - 1
        # Schoolbook product, then fold exponents with zeta**ell = 1 and
        # rewrite the zeta**(ell-1) slot as -(1 + zeta + ... + zeta**(ell-2)).
        conv = [0] * (2 * w - 1)
        for i, a in enumerate(self.coords):
            if a:
                for k, b in enumerate(other.coords):
                    if b:
                        conv[i + k] += a * b
        out = [0] * w
        top = 0
        for e, v in enumerate(conv):
            if not v:
                continue
            e %= ell
            if e < w:
                out[e] += v
            else:
                top += v
        if top:
            for i in range(w):
                out[i] -= top
        return CyclotomicElement(ell, tuple(out))

    __rmul__ = __mul__


def reduce_mod_phi(p: LaurentPolyZeta, ell: int) -> CyclotomicElement:
    """Image of p in Z[zeta] / Phi_ell for an odd prime ell.

    Exponents fold with zeta**ell = 1, then the zeta**(ell-1) slot is
    rewritten via Phi_ell = 0.  This is a ring morphism, so it commutes
    with series expansion; the fused expansion path relies on that.
    """
    require_odd_prime(ell)
    folded = [0] * ell
    for e, c in p.items():
        folded[e % ell] += c
    top = folded[ell - 1]
    return CyclotomicElement(ell, tuple(folded[i] - top for i in range(ell - 1)))


def is_divisible_by_phi(p: LaurentPolyZeta, ell: int) -> bool:
    """Whether Phi_ell divides p in Z[zeta, 1/zeta] (ell an odd prime)."""
    return reduce_mod_phi(p, ell).is_zero


def mul_zeta_power_coords(coords: Sequence[int], a: int, ell: int) -> list[int]:
    """Multiply a quotient-ring coordinate vector by zeta**a.

    Used by the fused product-expansion path, where this is the hot
    operation; a is taken mod ell.
    """
    w = ell - 1
    out = [0] * w
    a %= ell
    for i, v in enumerate(coords):
        if not v:
            continue
        k = i + a
        if k >= ell:
            k -= ell
        if k < w:
            out[k] += v
        else:
            for t in range(w):
                out[t] -= v
    return out
