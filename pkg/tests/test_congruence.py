"""Crank-series builders, congruence verification, and the scanner.

The positive cases mirror small theorem instances; every family also
gets a negative control (a delta outside the admissible set, or a
corrupted input) so that "verified" is distinguishable from "vacuous".
"""

import random

import pytest

from crankforge import (
    CrankSpec,
    admissible_deltas,
    build_conjecture_spec,
    build_crank_spec_j2,
    build_crank_spec_j3,
    build_crank_spec_jl,
    check_numerator_support,
    count_pkj_sequence,
    crank_generating_spec,
    is_doubled_triangular,
    is_triangular,
    lemma_congprod_check,
    pkj_generating_spec,
    primes_up_to,
    proof_numerator,
    qr_class,
    report_json_line,
    scan_congruences,
    support_exponents,
    triangle_free_bruteforce,
    validate_complete_residues,
    validate_counts,
    verify_congruence,
    verify_congruence_bruteforce,
)
from crankforge.congruence import CongruenceClaim, CongruenceReport
from crankforge.qseries import FactorSpec


# ---------------------------------------------------------------------------
# Residue classes and progression predicates.

def test_qr_class_tables():
    assert {a: qr_class(a, 5) for a in range(5)} == {
        0: "zero", 1: "residue", 2: "nonresidue", 3: "nonresidue", 4: "residue",
    }
    assert {a for a in range(1, 7) if qr_class(a, 7) == "residue"} == {1, 2, 4}
    assert qr_class(0, 2) == "zero"
    assert qr_class(9, 2) == "residue"
    assert qr_class(-3, 5) == qr_class(2, 5)
    with pytest.raises(ValueError):
        qr_class(1, 6)


def test_admissible_delta_sets():
    assert admissible_deltas(5, 8) == {2, 4}
    assert admissible_deltas(7, 8) == {2, 4, 5}
    assert admissible_deltas(11, 8) == {2, 5, 7, 8, 9}
    assert admissible_deltas(7, 4) == {1, 3, 4}
    with pytest.raises(ValueError):
        admissible_deltas(5, 3)
    with pytest.raises(ValueError):
        admissible_deltas(9, 8)


def test_triangular_predicates():
    tri = {t * (t + 1) // 2 for t in range(40)}
    for x in range(400):
        assert is_triangular(x) == (x in tri), x
        assert is_doubled_triangular(x) == (x % 2 == 0 and x // 2 in tri), x
    assert not is_triangular(-1)


def test_triangle_free_bruteforce_matches_residue_predicate():
    # desk-scale version of the full equivalence run in the acceptance suite
    for ell in primes_up_to(13):
        for delta in range(ell):
            predicted = qr_class(8 * delta + 1, ell) == "nonresidue"
            assert triangle_free_bruteforce(ell, delta, 500) == predicted, (ell, delta)


def test_doubled_triangle_free_matches_4d_plus_1_predicate():
    # odd primes only: mod 2 every odd value is a square, yet odd
    # progressions trivially avoid the even numbers t(t+1)
    doubled = {t * (t + 1) for t in range(200)}
    for ell in primes_up_to(13)[1:]:
        for delta in range(ell):
            predicted = qr_class(4 * delta + 1, ell) == "nonresidue"
            hit = any(ell * n + delta in doubled for n in range(2000))
            assert (not hit) == predicted, (ell, delta)


def test_validate_complete_residues():
    assert validate_complete_residues([0, 1, -1, 3, -3], 5)
    assert validate_complete_residues([0, 1, -1, 2, -2], 5)
    assert validate_complete_residues([0, 2, -2, 4, -4], 5)
    assert not validate_complete_residues([0, 1, -1, 4, -4], 5)  # 4 = -1 collides
    assert not validate_complete_residues([0, 1, -1], 5)
    assert not validate_complete_residues([0, 1, 2, 3, 5], 5)


# ---------------------------------------------------------------------------
# Builders.

def test_j2_builder_structure():
    spec = build_crank_spec_j2(5, 0)
    assert (spec.k, spec.j, spec.ell, spec.m) == (4, 2, 5, 0)
    assert spec.product.factors == (
        FactorSpec(1, 2, 1, 1), FactorSpec(1, -2, 1, 1),
        FactorSpec(-1, 1, 1, -1), FactorSpec(-1, -1, 1, -1),
        FactorSpec(-1, 3, 1, -1), FactorSpec(-1, -3, 1, -1),
    )
    deeper = build_crank_spec_j2(5, 1)
    assert deeper.k == 9
    assert FactorSpec(-1, 0, 1, -1) in deeper.product.factors
    assert FactorSpec(-1, 1, 1, -2) in deeper.product.factors


def test_j2_builder_validation():
    with pytest.raises(ValueError):
        build_crank_spec_j2(3, 0)
    with pytest.raises(ValueError):
        build_crank_spec_j2(6, 0)
    with pytest.raises(ValueError):
        build_crank_spec_j2(5, -1)
    with pytest.raises(ValueError):
        build_crank_spec_j2(5, 0, denominator_exponents=(1, 4))  # 4 = -1 mod 5
    with pytest.raises(ValueError):
        build_crank_spec_j2(5, 0, denominator_exponents=(1, 1))
    # a valid substitution is accepted
    alt = build_crank_spec_j2(5, 0, denominator_exponents=(1, 2))
    assert FactorSpec(-1, 2, 1, -1) in alt.product.factors


def test_j3_builder_structure():
    spec = build_crank_spec_j3(7, 0)
    assert (spec.k, spec.j, spec.ell, spec.m) == (4, 3, 7, 0)
    assert spec.product.factors == (
        FactorSpec(1, 0, 1, 1),
        FactorSpec(1, 5, 1, 1), FactorSpec(1, -5, 1, 1),
        FactorSpec(-1, 1, 1, -1), FactorSpec(-1, -1, 1, -1),
        FactorSpec(-1, 3, 1, -1), FactorSpec(-1, -3, 1, -1),
    )
    with pytest.raises(ValueError):
        build_crank_spec_j3(5, 0)


def test_jl_builder_structure():
    spec = build_crank_spec_jl(5, 0)
    assert (spec.k, spec.j, spec.ell, spec.m) == (2, 5, 5, 0)
    assert spec.product.factors == (
        FactorSpec(1, 0, 1, 1),
        FactorSpec(1, 2, 1, 1), FactorSpec(1, -2, 1, 1),
        FactorSpec(1, 4, 1, 1), FactorSpec(1, -4, 1, 1),
        FactorSpec(-1, 1, 1, -1), FactorSpec(-1, -1, 1, -1),
    )
    with pytest.raises(ValueError):
        build_crank_spec_jl(3, 0)


def test_conjecture_builder_structure():
    spec = build_conjecture_spec(1, 1)
    assert spec.product.factors == (
        FactorSpec(-1, 0, 1, 1), FactorSpec(1, 0, 1, 1),
        FactorSpec(-1, 1, 1, -1), FactorSpec(-1, -1, 1, -1),
    )
    assert (spec.ell, spec.m, spec.source) == (None, None, "conjecture")
    # even/even drops both parity factors
    even = build_conjecture_spec(2, 2)
    assert even.product.factors == (
        FactorSpec(1, 2, 1, 1), FactorSpec(1, -2, 1, 1),
        FactorSpec(-1, 1, 1, -1), FactorSpec(-1, -1, 1, -1),
    )
    with pytest.raises(ValueError):
        build_conjecture_spec(0, 1)


def test_conjecture_at_4_2_reproduces_the_j2_product():
    assert build_conjecture_spec(4, 2).product == build_crank_spec_j2(5, 0).product


def test_every_builder_instance_counts_correctly():
    specs = [
        build_crank_spec_j2(5, 0), build_crank_spec_j2(5, 1),
        build_crank_spec_j2(7, 0), build_crank_spec_j2(11, 0),
        build_crank_spec_j3(7, 0), build_crank_spec_j3(7, 1),
        build_crank_spec_j3(11, 0),
        build_crank_spec_jl(5, 0), build_crank_spec_jl(5, 1),
        build_crank_spec_jl(7, 0),
        build_conjecture_spec(1, 1), build_conjecture_spec(3, 4),
    ]
    for spec in specs:
        assert validate_counts(spec, 40), (spec.source, spec.k, spec.j)


def test_validate_counts_rejects_a_wrong_series():
    broken = CrankSpec(pkj_generating_spec(3, 2), 4, 2, 5, 0, "j2")
    assert not validate_counts(broken, 20)


# ---------------------------------------------------------------------------
# Verification.

def test_verify_j2_instance():
    spec = build_crank_spec_j2(5, 0)
    for delta in (2, 4):
        report = verify_congruence(spec, delta, 100)
        assert report.verdict == "verified-to-depth"
        assert report.failures == ()
        assert report.checked_indices == tuple(range(delta, 101, 5))
        assert report.method == "cyclotomic"


def test_verify_flags_inadmissible_deltas():
    spec = build_crank_spec_j2(5, 0)
    for delta in (0, 1, 3):
        report = verify_congruence(spec, delta, 60)
        assert report.verdict == "refuted"
        assert report.failures


def test_verify_conjecture_needs_a_modulus():
    spec = build_conjecture_spec(4, 2)
    with pytest.raises(ValueError):
        verify_congruence(spec, 2, 60)
    report = verify_congruence(spec, 2, 60, ell=5)
    assert report.failures == ()


def test_verify_input_validation():
    spec = build_crank_spec_j2(5, 0)
    with pytest.raises(ValueError):
        verify_congruence(spec, 5, 60)
    with pytest.raises(ValueError):
        verify_congruence(spec, -1, 60)
    with pytest.raises(ValueError):
        verify_congruence(spec, 4, 2)


def test_classical_crank_series_explains_ramanujan_congruences():
    spec = CrankSpec(crank_generating_spec(), 1, 0, None, None, "classical")
    for ell, delta in ((5, 4), (7, 5), (11, 6)):
        report = verify_congruence(spec, delta, 150, ell=ell)
        assert report.failures == (), (ell, delta)
    assert verify_congruence(spec, 3, 150, ell=5).failures


def test_bruteforce_verification():
    ok = verify_congruence_bruteforce(CongruenceClaim(1, 0, 5, 4, 200))
    assert ok.verdict == "verified-to-depth"
    assert ok.method == "brute-force"
    bad = verify_congruence_bruteforce(CongruenceClaim(1, 0, 5, 3, 200))
    assert bad.verdict == "refuted"
    assert bad.failures[0] == 3  # p(3) = 3 is not divisible by 5


def test_cyclotomic_and_bruteforce_agree_on_theorem_instances():
    cases = [
        (build_crank_spec_j2(5, 0), 5), (build_crank_spec_j3(7, 0), 7),
        (build_crank_spec_jl(5, 0), 5),
    ]
    for spec, ell in cases:
        mult = 4 if spec.source == "j3" else 8
        for delta in sorted(admissible_deltas(ell, mult)):
            cyc = verify_congruence(spec, delta, 80)
            brute = verify_congruence_bruteforce(
                CongruenceClaim(spec.k, spec.j, ell, delta, 80)
            )
            assert cyc.failures == () and brute.failures == (), (spec.source, delta)


def test_claim_validation():
    with pytest.raises(ValueError):
        CongruenceClaim(1, 0, 6, 1, 50)
    with pytest.raises(ValueError):
        CongruenceClaim(1, 0, 5, 5, 50)
    with pytest.raises(ValueError):
        CongruenceClaim(1, 0, 5, 4, 3)


def test_report_json_line_is_stable():
    report = CongruenceReport(
        claim=CongruenceClaim(4, 2, 5, 2, 30),
        method="cyclotomic",
        checked_indices=(2, 7, 12, 17, 22, 27),
        failures=(),
        m=0,
    )
    assert report_json_line(report, 7) == (
        '{"k": 4, "j": 2, "ell": 5, "delta": 2, "m": 0, '
        '"method": "cyclotomic", "depth": 30, "verdict": "verified-to-depth", '
        '"failure_indices": [], "wall_time_ms": 7}'
    )
    refuted = CongruenceReport(
        claim=CongruenceClaim(1, 0, 5, 3, 20),
        method="brute-force",
        checked_indices=(3, 8, 13, 18),
        failures=(3, 8),
    )
    assert '"verdict": "refuted"' in report_json_line(refuted)
    assert '"failure_indices": [3, 8]' in report_json_line(refuted)


# ---------------------------------------------------------------------------
# Proof-stage numerators.

def test_j2_numerator_support_is_triangular():
    spec = build_crank_spec_j2(5, 0)
    assert check_numerator_support(spec, is_triangular, 50)


def test_jl_numerator_support_is_triangular():
    for ell in (5, 7):
        spec = build_crank_spec_jl(ell, 0)
        assert check_numerator_support(spec, is_triangular, 50), ell


def test_j3_numerator_support_is_doubled_triangular():
    # determined empirically: support through q^50 is exactly t(t+1),
    # matching the 4*delta + 1 = (2t+1)^2 square predicate for this family
    spec = build_crank_spec_j3(7, 0)
    support = sorted(support_exponents(proof_numerator(spec, 50)))
    assert support == [0, 2, 6, 12, 20, 30, 42]
    assert check_numerator_support(spec, is_doubled_triangular, 50)
    assert not check_numerator_support(spec, is_triangular, 50)


def test_conjecture_has_no_recorded_numerator():
    with pytest.raises(ValueError):
        proof_numerator(build_conjecture_spec(2, 2), 20)


# ---------------------------------------------------------------------------
# Multiplication by q^ell-progression series preserves congruences.

def test_congruence_transport_positive():
    assert lemma_congprod_check(5, 4, 120, 5)
    assert lemma_congprod_check(7, 5, 140, 3)
    assert lemma_congprod_check(11, 6, 150, 3)


def test_congruence_transport_negative_control():
    base = count_pkj_sequence(1, 0, 120)
    base[4] += 1  # now p(4) is no longer divisible by 5
    assert not lemma_congprod_check(5, 4, 120, 5, base_counts=base)


def test_congruence_transport_validation():
    with pytest.raises(ValueError):
        lemma_congprod_check(5, 3, 100, 5)  # not a known congruence
    with pytest.raises(ValueError):
        lemma_congprod_check(5, 4, 100, 0)
    with pytest.raises(ValueError):
        lemma_congprod_check(5, 4, 100, 5, base_counts=[1, 2, 3])


def test_congruence_transport_is_deterministic_per_seed():
    a = lemma_congprod_check(5, 4, 100, 4, rng=random.Random(11))
    b = lemma_congprod_check(5, 4, 100, 4, rng=random.Random(11))
    assert a is True and b is True


# ---------------------------------------------------------------------------
# Scanner.

def test_scan_finds_the_classical_congruences():
    claims = scan_congruences(1, 0, 11, 500)
    assert [(c.ell, c.delta) for c in claims] == [(5, 4), (7, 5), (11, 6)]
    for c in claims:
        assert (c.k, c.j, c.depth) == (1, 0, 500)


def test_scan_results_for_colored_families():
    got = {(c.ell, c.delta) for c in scan_congruences(4, 2, 5, 200)}
    assert got >= {(5, 2), (5, 4)}
    got = {(c.ell, c.delta) for c in scan_congruences(2, 5, 5, 200)}
    assert got >= {(5, 2), (5, 4)}


def test_scanner_claims_reverify_bruteforce():
    for claim in scan_congruences(2, 3, 7, 150):
        report = verify_congruence_bruteforce(claim)
        assert report.failures == (), claim


def test_scan_requires_enough_witnesses():
    with pytest.raises(ValueError):
        scan_congruences(1, 0, 11, 30)
    with pytest.raises(ValueError):
        scan_congruences(1, 0, 1, 100)
