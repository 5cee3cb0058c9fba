"""Crank generating functions for colored partitions and their congruences.

A crank series for parameters (k, j) is a product over n >= 1 of
binomial factors in zeta and q^n that specializes at zeta = 1 to
prod (1 + q^n)^j / (1 - q^n)^k, the counting series for partitions with
k unbounded colors and j distinct-part colors.  Divisibility of the
q^(ell*n + delta) coefficients by Phi_ell then forces the counts
p_{k,j}(ell*n + delta) to vanish mod ell, because setting zeta = 1 in a
Phi_ell multiple leaves a multiple of ell.

Three builder families produce such series for every odd prime modulus,
one per value of j (two, three, or ell distinct-part colors), plus a
conjectural family for arbitrary (k, j).  Verification runs both ways:
exact cyclotomic divisibility on the expanded series, and residue
checks on brute-force counts that never touch the series engine.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Sequence

from .cyclotomic import is_prime, require_odd_prime, require_prime
from .partitions import count_pkj_sequence
from .qseries import (
    FactorSpec,
    ProductSpec,
    QSeries,
    expand_product,
    expand_product_mod_phi,
    specialize_one,
    support_exponents,
    theta01_tilde_expansion,
    theta_tilde_expansion,
)

# ---------------------------------------------------------------------------
# Quadratic residue classes and progression predicates.

QrClass = Literal["zero", "residue", "nonresidue"]


def qr_class(a: int, ell: int) -> QrClass:
    """Classify a mod ell as zero, a nonzero square, or a nonsquare.

    Squares are found by exhaustive squaring; zero is its own class and
    in particular is never a nonresidue.
    """
    require_prime(ell)
    r = a % ell
    if r == 0:
        return "zero"
    squares = {x * x % ell for x in range(1, ell)}
    return "residue" if r in squares else "nonresidue"


def admissible_deltas(ell: int, multiplier: int) -> set[int]:
    """Residues delta with multiplier*delta + 1 a nonresidue mod ell.

    multiplier 8 corresponds to triangular-number support of a series
    numerator, multiplier 4 to doubled-triangular support.
    """
    if multiplier not in (4, 8):
        raise ValueError(f"multiplier must be 4 or 8, got {multiplier!r}")
    require_prime(ell)
    return {
        d for d in range(ell) if qr_class(multiplier * d + 1, ell) == "nonresidue"
    }


def is_triangular(x: int) -> bool:
    """Whether x = t(t+1)/2 for some t >= 0."""
    if x < 0:
        return False
    t = int((2 * x) ** 0.5)
    for c in (t - 1, t, t + 1):
        if c >= 0 and c * (c + 1) // 2 == x:
            return True
    return False


def is_doubled_triangular(x: int) -> bool:
    """Whether x = t(t+1) for some t >= 0."""
    return x % 2 == 0 and is_triangular(x // 2)


def triangle_free_bruteforce(ell: int, delta: int, n_max: int) -> bool:
    """Whether no ell*n + delta with 0 <= n <= n_max is triangular.

    Pure scanning against an explicit triangular-number table; used to
    corroborate the quadratic-residue predicate.
    """
    require_prime(ell)
    if not 0 <= delta < ell:
        raise ValueError(f"delta {delta} out of range for modulus {ell}")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    top = ell * n_max + delta
    tri = set()
    t = 0
    while t * (t + 1) // 2 <= top:
        tri.add(t * (t + 1) // 2)
        t += 1
    return all(ell * n + delta not in tri for n in range(n_max + 1))


def validate_complete_residues(exponents: Iterable[int], ell: int) -> bool:
    """Whether the exponent multiset covers every residue mod ell exactly once."""
    require_prime(ell)
    seen = [0] * ell
    total = 0
    for e in exponents:
        seen[e % ell] += 1
        total += 1
    return total == ell and all(c == 1 for c in seen)


def primes_up_to(limit: int) -> list[int]:
    return [p for p in range(2, limit + 1) if is_prime(p)]


# ---------------------------------------------------------------------------
# Crank series specifications.

Source = Literal["j2", "j3", "jl", "conjecture"]


@dataclass(frozen=True)
class CrankSpec:
    """A crank series together with its counting parameters.

    ell and m are None for the conjectural family, which is stated for
    (k, j) directly rather than for a modulus.
    """

    product: ProductSpec
    k: int
    j: int
    ell: int | None
    m: int | None
    source: str


@dataclass(frozen=True)
class CongruenceClaim:
    """p_{k,j}(ell*n + delta) = 0 mod ell for all n with ell*n + delta <= depth."""

    k: int
    j: int
    ell: int
    delta: int
    depth: int

    def __post_init__(self):
        require_prime(self.ell)
        if not 0 <= self.delta < self.ell:
            raise ValueError(
                f"delta {self.delta} out of range for modulus {self.ell}"
            )
        if self.depth < self.delta:
            raise ValueError("depth must reach the first index delta")


@dataclass(frozen=True)
class CongruenceReport:
    """Outcome of checking one claim by one method."""

    claim: CongruenceClaim
    method: str
    checked_indices: tuple[int, ...]
    failures: tuple[int, ...]
    m: int | None = None

    @property
    def verdict(self) -> str:
        return "refuted" if self.failures else "verified-to-depth"


def report_json_line(report: CongruenceReport, wall_time_ms: int = 0) -> str:
    """One self-contained JSON record per line, fixed key order."""
    rec = {
        "k": report.claim.k,
        "j": report.claim.j,
        "ell": report.claim.ell,
        "delta": report.claim.delta,
        "m": report.m,
        "method": report.method,
        "depth": report.claim.depth,
        "verdict": report.verdict,
        "failure_indices": list(report.failures),
        "wall_time_ms": wall_time_ms,
    }
    return json.dumps(rec, separators=(", ", ": "))


# ---------------------------------------------------------------------------
# Builders.

def _pair(a: int, sign: int, power: int, stride: int = 1) -> tuple[FactorSpec, FactorSpec]:
    return (
        FactorSpec(sign, a, stride, power),
        FactorSpec(sign, -a, stride, power),
    )


def build_crank_spec_j2(
    ell: int, m: int, denominator_exponents: Sequence[int] | None = None
) -> CrankSpec:
    """Crank series for k = ell*m + ell - 1 unbounded colors and j = 2.

    Numerator: (1 + zeta^(+-2) q^n).  Denominator: (1 - q^n)^m times the
    pairs (1 - zeta^(+-a) q^n)^(m+1) with a running over the odd numbers
    1, 3, ..., ell - 2, so that {0} together with the +-a values covers
    every residue mod ell exactly once.  An alternative exponent list may
    be supplied; it must pass the same complete-residue validation.
    """
    require_odd_prime(ell)
    if ell < 5:
        raise ValueError("modulus must be at least 5")
    if m < 0:
        raise ValueError("m must be >= 0")
    if denominator_exponents is None:
        exps = tuple(range(1, ell - 1, 2))
    else:
        exps = tuple(denominator_exponents)
        if len(set(exps)) != len(exps) or any(e < 1 for e in exps):
            raise ValueError("denominator exponents must be distinct positive")
    plus_minus = [e for a in exps for e in (a, -a)]
    if not validate_complete_residues([0, *plus_minus], ell):
        raise ValueError(
            f"{{0}} with +-{set(exps)} is not a complete residue system mod {ell}"
        )
    factors: list[FactorSpec] = [*_pair(2, 1, 1)]
    if m:
        factors.append(FactorSpec(-1, 0, 1, -m))
    for a in exps:
        factors.extend(_pair(a, -1, -(m + 1)))
    k = ell * m + ell - 1
    _assert_specialization_shape(factors, k, 2)
    return CrankSpec(ProductSpec(tuple(factors)), k, 2, ell, m, "j2")


def build_crank_spec_j3(ell: int, m: int) -> CrankSpec:
    """Crank series for k = ell*m + ell - 3 unbounded colors and j = 3.

    Numerator: (1 + q^n)(1 + zeta^(+-(ell-2)) q^n).  Denominator:
    [(1 - q^n)(1 - zeta^(+-(ell-2)) q^n)]^m times the odd-exponent pairs
    (1 - zeta^(+-a) q^n)^(m+1), a = 1, 3, ..., ell - 4.  Requires
    ell >= 7; the ell = 5 instance is excluded here (the scanner can
    still probe (k, j) = (2, 3) empirically).
    """
    require_odd_prime(ell)
    if ell < 7:
        raise ValueError("modulus must be at least 7")
    if m < 0:
        raise ValueError("m must be >= 0")
    odd = tuple(range(1, ell - 3, 2))
    assert validate_complete_residues(
        [0, ell - 2, -(ell - 2), *(e for a in odd for e in (a, -a))], ell
    )
    factors: list[FactorSpec] = [FactorSpec(1, 0, 1, 1), *_pair(ell - 2, 1, 1)]
    if m:
        factors.append(FactorSpec(-1, 0, 1, -m))
        factors.extend(_pair(ell - 2, -1, -m))
    for a in odd:
        factors.extend(_pair(a, -1, -(m + 1)))
    k = ell * m + ell - 3
    _assert_specialization_shape(factors, k, 3)
    return CrankSpec(ProductSpec(tuple(factors)), k, 3, ell, m, "j3")


def build_crank_spec_jl(ell: int, m: int) -> CrankSpec:
    """Crank series for k = ell*m + ell - 3 unbounded colors and j = ell.

    Numerator: (1 + q^n) times the pairs (1 + zeta^(+-a) q^n) with a over
    the even numbers 2, 4, ..., ell - 1.  Denominator:
    [(1 - q^n)(1 - zeta^(+-(ell-2)) q^n)]^m times the odd-exponent pairs
    (1 - zeta^(+-a) q^n)^(m+1), a = 1, 3, ..., ell - 4.  The exponent
    lists are pinned by the requirement that the zeta = 1 specialization
    count exactly k denominator and j numerator factors per n.
    """
    require_odd_prime(ell)
    if ell < 5:
        raise ValueError("modulus must be at least 5")
    if m < 0:
        raise ValueError("m must be >= 0")
    even = tuple(range(2, ell, 2))
    odd = tuple(range(1, ell - 3, 2))
    assert validate_complete_residues(
        [0, *(e for a in even for e in (a, -a))], ell
    )
    factors: list[FactorSpec] = [FactorSpec(1, 0, 1, 1)]
    for a in even:
        factors.extend(_pair(a, 1, 1))
    if m:
        factors.append(FactorSpec(-1, 0, 1, -m))
        factors.extend(_pair(ell - 2, -1, -m))
    for a in odd:
        factors.extend(_pair(a, -1, -(m + 1)))
    k = ell * m + ell - 3
    _assert_specialization_shape(factors, k, ell)
    return CrankSpec(ProductSpec(tuple(factors)), k, ell, ell, m, "jl")


def build_conjecture_spec(k: int, j: int) -> CrankSpec:
    """Conjectural crank series for arbitrary k >= 1, j >= 1.

    Numerator: (1 - q^n) when k is odd, (1 + q^n) when j is odd, and the
    pairs (1 + zeta^(+-2i) q^n) for i = 1 .. floor(j/2) (for odd j the
    last pair index is (j-1)/2).  Denominator: the pairs
    (1 - zeta^(+-(2i-1)) q^n) for i = 1 .. floor((k+1)/2).  The odd-k
    numerator factor (1 - q^n) cancels one denominator factor at
    zeta = 1, so the counts come out to p_{k,j} for every parity.
    """
    if k < 1 or j < 1:
        raise ValueError("need k >= 1 and j >= 1")
    factors: list[FactorSpec] = []
    if k % 2:
        factors.append(FactorSpec(-1, 0, 1, 1))
    if j % 2:
        factors.append(FactorSpec(1, 0, 1, 1))
    for i in range(1, j // 2 + 1):  # (j-1)/2 pairs for odd j, j/2 for even
        factors.extend(_pair(2 * i, 1, 1))
    for i in range(1, (k + 1) // 2 + 1):
        factors.extend(_pair(2 * i - 1, -1, -1))
    _assert_specialization_shape(factors, k, j)
    return CrankSpec(ProductSpec(tuple(factors)), k, j, None, None, "conjecture")


def _assert_specialization_shape(factors: Sequence[FactorSpec], k: int, j: int) -> None:
    # At zeta = 1 each factor family becomes (1 +- q^(c*n))^e; the net
    # per-n count of (1 - .) factors must be -k and of (1 + .) must be j.
    minus = plus = 0
    for f in factors:
        if f.sign < 0:
            minus += f.power
        else:
            plus += f.power
    if minus != -k or plus != j:
        raise ValueError(
            f"factor shape mismatch: zeta=1 gives (1+q)^{plus}/(1-q)^{-minus}, "
            f"expected j={j}, k={k}"
        )


# ---------------------------------------------------------------------------
# Verification.

def validate_counts(spec: CrankSpec, truncation: int) -> bool:
    """Whether the series at zeta = 1 matches brute-force colored counts.

    Expands the full Laurent series, evaluates every coefficient at
    zeta = 1 and compares with the knapsack oracle through q^truncation.
    """
    got = specialize_one(expand_product(spec.product, truncation))
    want = count_pkj_sequence(spec.k, spec.j, truncation)
    return got == want


def verify_congruence(
    spec: CrankSpec, delta: int, truncation: int, ell: int | None = None
) -> CongruenceReport:
    """Exact cyclotomic check of one congruence class of one crank series.

    Expands spec.product in Z[zeta]/Phi_ell and requires the coefficient
    of q^(ell*n + delta) to vanish there for every index up to the
    truncation.  A conjectural spec carries no modulus of its own, so
    ell must then be supplied.
    """
    modulus = spec.ell if ell is None else ell
    if modulus is None:
        raise ValueError("spec carries no modulus; pass ell explicitly")
    require_odd_prime(modulus)
    if not 0 <= delta < modulus:
        raise ValueError(f"delta {delta} out of range for modulus {modulus}")
    if truncation < delta:
        raise ValueError("truncation must reach the first index delta")
    coeffs = expand_product_mod_phi(spec.product, truncation, modulus)
    checked = tuple(range(delta, truncation + 1, modulus))
    failures = tuple(d for d in checked if not coeffs[d].is_zero)
    claim = CongruenceClaim(spec.k, spec.j, modulus, delta, truncation)
    return CongruenceReport(
        claim=claim,
        method="cyclotomic",
        checked_indices=checked,
        failures=failures,
        m=spec.m,
    )


def verify_congruence_bruteforce(claim: CongruenceClaim) -> CongruenceReport:
    """Residue check of one claim on brute-force counts, no series involved."""
    counts = count_pkj_sequence(claim.k, claim.j, claim.depth)
    checked = tuple(range(claim.delta, claim.depth + 1, claim.ell))
    failures = tuple(d for d in checked if counts[d] % claim.ell)
    return CongruenceReport(
        claim=claim, method="brute-force", checked_indices=checked, failures=failures
    )


def proof_numerator(spec: CrankSpec, truncation: int) -> QSeries:
    """The sparse-support numerator behind a builder family's congruences.

    After multiplying each family by a suitable form of 1, the series
    splits into a factor supported on a q^ell progression and one of the
    following thin numerators, expanded here:

      j2: prod (1 - q^n)(1 + zeta^2 q^n)(1 + zeta^-2 q^n),
          supported on triangular numbers;
      jl: prod (1 - q^n)(1 - zeta^(ell-2) q^n)(1 - zeta^-(ell-2) q^n),
          supported on triangular numbers;
      j3: prod (1 - q^2n)(1 - zeta^(2(ell-2)) q^2n)(1 - zeta^-2(ell-2) q^2n),
          supported on doubled triangular numbers t(t+1).

    Conjectural specs have no such decomposition recorded and are
    rejected.
    """
    if spec.source == "j2":
        return theta01_tilde_expansion(2, truncation)
    if spec.source == "jl":
        assert spec.ell is not None
        return theta_tilde_expansion(spec.ell - 2, truncation)
    if spec.source == "j3":
        assert spec.ell is not None
        b = 2 * (spec.ell - 2)
        stride2 = ProductSpec(
            (
                FactorSpec(-1, 0, 2, 1),
                FactorSpec(-1, b, 2, 1),
                FactorSpec(-1, -b, 2, 1),
            )
        )
        return expand_product(stride2, truncation)
    raise ValueError(f"no proof-stage numerator recorded for source {spec.source!r}")


def check_numerator_support(
    spec: CrankSpec, allowed: Callable[[int], bool], truncation: int
) -> bool:
    """Whether the family's proof-stage numerator is supported inside allowed."""
    support = support_exponents(proof_numerator(spec, truncation))
    return all(allowed(d) for d in sorted(support))


# ---------------------------------------------------------------------------
# Congruence-transport check (multiplication by q^ell-progression series).

_KNOWN_PARTITION_CONGRUENCES = ((5, 4), (7, 5), (11, 6))


def lemma_congprod_check(
    ell: int,
    delta: int,
    truncation: int,
    trials: int,
    rng: random.Random | None = None,
    base_counts: Sequence[int] | None = None,
) -> bool:
    """Multiplying by a random series in q^ell preserves a known congruence.

    The base series is the ordinary partition counting series, whose
    (ell, delta) must be one of the classical pairs (5,4), (7,5), (11,6)
    unless explicit base_counts are supplied (the negative-control path).
    Each trial draws B = 1 + sum b_i q^(ell*i) with small random b_i and
    checks that both base*B and base*B^(-1) still have every coefficient
    at ell*n + delta divisible by ell.  Integer-only computation.
    """
    require_odd_prime(ell)
    if not 0 <= delta < ell:
        raise ValueError(f"delta {delta} out of range for modulus {ell}")
    if trials < 1:
        raise ValueError("need at least one trial")
    if base_counts is None:
        if (ell, delta) not in _KNOWN_PARTITION_CONGRUENCES:
            raise ValueError(
                f"no known base congruence for (ell, delta) = ({ell}, {delta})"
            )
        base = count_pkj_sequence(1, 0, truncation)
    else:
        base = list(base_counts)
        if len(base) < truncation + 1:
            raise ValueError("base_counts shorter than the requested truncation")
        base = base[: truncation + 1]
    rng = rng if rng is not None else random.Random(20260819)
    indices = range(delta, truncation + 1, ell)

    def conv(a: Sequence[int], b: Sequence[int]) -> list[int]:
        out = [0] * (truncation + 1)
        for i, ai in enumerate(a):
            if ai:
                for d in range(i, truncation + 1):
                    out[d] += ai * b[d - i]
        return out

    for _ in range(trials):
        b = [0] * (truncation + 1)
        b[0] = 1
        for pos in range(ell, truncation + 1, ell):
            b[pos] = rng.randint(-9, 9)
        # inverse of b by the standard recurrence; constant term is 1
        binv = [1] + [0] * truncation
        for d in range(1, truncation + 1):
            binv[d] = -sum(b[i] * binv[d - i] for i in range(1, d + 1))
        for mixed in (conv(base, b), conv(base, binv)):
            if any(mixed[d] % ell for d in indices):
                return False
    return True


# ---------------------------------------------------------------------------
# Empirical scanning.

def scan_congruences(k: int, j: int, ell_max: int, depth: int) -> list[CongruenceClaim]:
    """All (prime ell <= ell_max, delta) with p_{k,j} = 0 mod ell on the
    whole progression ell*n + delta up to depth.

    Purely empirical: every claim is evidence-to-depth, not a theorem.
    Requires depth >= 3*ell_max so each candidate has at least three
    witnesses.
    """
    if ell_max < 2:
        raise ValueError("ell_max must be >= 2")
    if depth < 3 * ell_max:
        raise ValueError("depth must be at least 3 * ell_max")
    counts = count_pkj_sequence(k, j, depth)
    claims: list[CongruenceClaim] = []
    for ell in primes_up_to(ell_max):
        residues = [c % ell for c in counts]
        for delta in range(ell):
            if all(residues[d] == 0 for d in range(delta, depth + 1, ell)):
                claims.append(CongruenceClaim(k, j, ell, delta, depth))
    return claims
