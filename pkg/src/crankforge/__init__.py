"""crankforge: exact q-series arithmetic for colored-partition crank
generating functions, cyclotomic congruence verification, and empirical
congruence scanning, all cross-checked against brute-force enumeration."""

from .congruence import (
    CongruenceClaim,
    CongruenceReport,
    CrankSpec,
    admissible_deltas,
    build_conjecture_spec,
    build_crank_spec_j2,
    build_crank_spec_j3,
    build_crank_spec_jl,
    check_numerator_support,
    is_doubled_triangular,
    is_triangular,
    lemma_congprod_check,
    primes_up_to,
    proof_numerator,
    qr_class,
    report_json_line,
    scan_congruences,
    triangle_free_bruteforce,
    validate_complete_residues,
    validate_counts,
    verify_congruence,
    verify_congruence_bruteforce,
)
from .cyclotomic import (
    CyclotomicElement,
    LaurentPolyZeta,
    eval_at_one,
    is_divisible_by_phi,
    is_prime,
    lp_add,
    lp_mul,
    phi_poly,
    reduce_mod_phi,
)
from .partitions import (
    CrankData,
    DistributionTable,
    Partition,
    count_pkj,
    count_pkj_sequence,
    crank,
    crank_counts,
    crank_counts_poly,
    crank_data,
    distribution_to_csv,
    enumerate_partitions,
    rank,
    residue_distribution,
)
from .qseries import (
    FactorSpec,
    ProductSpec,
    QSeries,
    crank_generating_spec,
    dump_series,
    expand_product,
    expand_product_mod_phi,
    format_coefficient,
    jacobi_triple_product_check,
    partition_generating_spec,
    pkj_generating_spec,
    series_inverse,
    series_mul,
    specialize_one,
    specialize_zeta,
    support_exponents,
    theta01_tilde_expansion,
    theta_tilde_expansion,
)

__version__ = "0.1.0"
