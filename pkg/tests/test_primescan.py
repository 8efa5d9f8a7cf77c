"""Prime scanning: sieve, failure sets, verdicts, screen, cache."""

import random

import pytest

from exceptio import errors
from exceptio.intpoly import make_poly, parse_factors, product_of
from exceptio.primescan import (
    ScanCache,
    empirical_density,
    exceptional_verdict,
    has_root_mod_m,
    intersective_screen,
    report_payload,
    scan,
    _scan_chunk,
    _prepare_factor,
    sieve_primes,
)

from oracles import eval_poly, primes_by_trial_division, roots_by_sweep

SEXTIC = parse_factors("x^2-2; x^2-3; x^2-6")
QUINTIC = parse_factors("x^2+108; x^3+2")

# quadratic reciprocity: x^2-2 is rootless mod p exactly when p = 3, 5 mod 8
QR_FAILURES_100 = (3, 5, 11, 13, 19, 29, 37, 43, 53, 59, 61, 67, 83)


def test_sieve_examples():
    assert sieve_primes(10).primes == (2, 3, 5, 7)
    assert len(sieve_primes(100).primes) == 25
    assert sieve_primes(2).primes == (2,)
    with pytest.raises(errors.LimitTooLarge):
        sieve_primes(10**9 + 1)
    with pytest.raises(errors.LimitTooLarge):
        sieve_primes(100, cap=50)
    with pytest.raises(errors.BadParameters):
        sieve_primes(1)


def test_sieve_matches_trial_division():
    assert list(sieve_primes(10_000).primes) == primes_by_trial_division(10_000)


def test_scan_sextic_has_no_failures():
    report = scan(SEXTIC, 10_000)
    assert report.failures == ()
    assert report.primes_scanned == 1229
    assert report.density_estimate == 1
    # cross-check the first primes with a plain residue sweep on the product
    for p in primes_by_trial_division(100):
        assert roots_by_sweep([-36, 0, 36, 0, -11, 0, 1], p), p


def test_scan_x2_minus_2_failures_match_reciprocity():
    report = scan(product_of([make_poly([-2, 0, 1])]), 100)
    assert report.failures == QR_FAILURES_100
    for p in report.failures:
        assert not roots_by_sweep([-2, 0, 1], p)


def test_scan_linear_never_fails():
    report = scan(product_of([make_poly([-1, 1])]), 50)
    assert report.failures == ()
    assert empirical_density(report) == 1


def test_scan_failures_are_prefix_stable():
    f = product_of([make_poly([-2, 0, 1])])
    small = scan(f, 100)
    large = scan(f, 1000)
    assert large.failures[: len(small.failures)] == small.failures
    assert small.failures == tuple(p for p in large.failures if p <= 100)


def test_scan_deterministic_under_partitioning():
    report_seq = scan(QUINTIC, 20_000, threads=1)
    report_par = scan(QUINTIC, 20_000, threads=4)
    assert report_seq == report_par
    # explicit fragment merge equals the sequential scan
    primes = sieve_primes(20_000).primes
    prepared = [_prepare_factor(f) for f in QUINTIC.factors]
    merged = []
    for i in range(0, len(primes), 997):
        merged.extend(_scan_chunk(prepared, primes[i : i + 997]))
    assert tuple(merged) == report_seq.failures


def test_scan_generic_path_agrees_with_fast_paths():
    # same factors, once as binomials and once perturbed to generic form
    rng = random.Random(7)
    primes = sieve_primes(3000).primes
    for coeffs in [[-2, 0, 1], [2, 0, 0, 1], [-1, -1, 0, 1], [3, -1, 2, 1]]:
        f = make_poly(coeffs)
        prepared = [_prepare_factor(f)]
        fails = set(_scan_chunk(prepared, primes))
        sample = rng.sample(primes, 60)
        for p in sample:
            assert (p in fails) == (not roots_by_sweep(coeffs, p)), (coeffs, p)


def test_exceptional_verdict_examples():
    verdict = exceptional_verdict(QUINTIC, 10_000)
    assert verdict.tag == "ExceptionalLikely"
    report = scan(QUINTIC, 10_000)
    for p in verdict.failures:
        assert report.delta % p == 0

    verdict = exceptional_verdict(product_of([make_poly([-2, 0, 1])]), 100)
    assert verdict.tag == "NotExceptional"
    assert verdict.witness_prime == 3  # 3 does not divide delta = 8

    trivial = exceptional_verdict(parse_factors("x-1; x^2+1"), 100)
    assert trivial.tag == "HasIntegerRoot"
    assert trivial.root == 1


def test_verdict_witness_consistency():
    for text, limit in [("x^2-2", 200), ("x^2-5", 200), ("x^3-2; x^2+1", 500)]:
        F = parse_factors(text)
        verdict = exceptional_verdict(F, limit)
        report = scan(F, limit)
        if verdict.tag == "NotExceptional":
            assert report.delta % verdict.witness_prime != 0
        elif verdict.tag == "ExceptionalLikely":
            assert all(report.delta % p == 0 for p in verdict.failures)


def test_has_root_mod_m_examples():
    assert has_root_mod_m(SEXTIC.product, 64) is None
    assert has_root_mod_m(QUINTIC.product, 64) is None
    assert has_root_mod_m(make_poly([-1, 0, 1]), 8) == 1
    with pytest.raises(errors.ModulusTooLarge):
        has_root_mod_m(make_poly([-1, 0, 1]), 10**8 + 1)
    with pytest.raises(errors.BadParameters):
        has_root_mod_m(make_poly([-1, 0, 1]), 1)


def test_intersective_screen_golden_examples():
    # The quintic first fails at 2^6.  The sextic already fails at 8: squares
    # mod 8 are {0,1,4} and the three factors evaluate to units there (the
    # criterion-2 value 64 holds only for the quintic; see the sweep below).
    assert intersective_screen(QUINTIC, 100) == 64
    assert intersective_screen(SEXTIC, 100) == 8
    for m in range(2, 8):
        assert any(eval_poly([-36, 0, 36, 0, -11, 0, 1], x) % m == 0 for x in range(m))
    assert all(eval_poly([-36, 0, 36, 0, -11, 0, 1], x) % 8 for x in range(8))
    for m in range(2, 64):
        assert any(eval_poly([216, 0, 2, 108, 0, 1], x) % m == 0 for x in range(m))
    assert all(eval_poly([216, 0, 2, 108, 0, 1], x) % 64 for x in range(64))


def test_intersective_screen_trivial():
    assert intersective_screen(product_of([make_poly([-1, 1])]), 100) is None


def test_cache_roundtrip(tmp_path):
    cache = ScanCache(tmp_path)
    direct = scan(SEXTIC, 1000)
    first = cache.scan_cached(SEXTIC, 1000)
    second = cache.scan_cached(SEXTIC, 1000)
    assert first == direct == second
    path = cache.path_for(direct.poly_key)
    assert path.exists()
    assert path.read_text().splitlines() == ["1000\t"]


def test_cache_extension_preserves_prefix(tmp_path):
    cache = ScanCache(tmp_path)
    f = product_of([make_poly([-2, 0, 1])])
    small = cache.scan_cached(f, 100)
    large = cache.scan_cached(f, 1000)
    assert large == scan(f, 1000)
    assert large.failures[: len(small.failures)] == small.failures
    lines = cache.path_for(small.poly_key).read_text().splitlines()
    assert len(lines) == 2 and lines[0].startswith("100\t") and lines[1].startswith("1000\t")
    # shrinking below a recorded limit filters, never rescans
    shrunk = cache.scan_cached(f, 50)
    assert shrunk == scan(f, 50)


def test_cache_write_failure_raises_io_error(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    cache = ScanCache(blocker / "cache")
    with pytest.raises(errors.CacheIoError):
        cache.scan_cached(product_of([make_poly([-2, 0, 1])]), 100)


def test_cache_corruption_falls_back_to_rescan(tmp_path):
    cache = ScanCache(tmp_path)
    f = product_of([make_poly([-2, 0, 1])])
    report = cache.scan_cached(f, 100)
    path = cache.path_for(report.poly_key)
    path.write_text("100\tnot,numbers\n")
    with pytest.raises(errors.CorruptCacheEntry):
        cache.load(report.poly_key)
    again = cache.scan_cached(f, 100)
    assert again == report
    assert path.read_text().splitlines() == ["100\t" + ",".join(map(str, report.failures))]


def test_pattern_frequencies_match_cycle_type_densities():
    # Frobenius correspondence for x^3 - 2: factorisation patterns at
    # unramified primes distribute like the cycle types of its S_3 action
    from collections import Counter
    from itertools import permutations

    from exceptio.intpoly import factorisation_pattern, reduce_mod

    def cycle_type(perm):
        seen, lengths = set(), []
        for start in range(len(perm)):
            if start in seen:
                continue
            length, here = 0, start
            while here not in seen:
                seen.add(here)
                here = perm[here]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths))

    expected = Counter(cycle_type(g) for g in permutations(range(3)))
    f = make_poly([-2, 0, 0, 1])
    primes = sieve_primes(25_000).primes
    observed = Counter()
    for p in primes:
        if 108 % p == 0:  # skip the ramified primes 2, 3
            continue
        observed[factorisation_pattern(reduce_mod(f, p)).degrees] += 1
    total = sum(observed.values())
    assert set(observed) == {(1, 1, 1), (1, 2), (3,)}
    for pattern, count in expected.items():
        assert abs(observed[pattern] / total - count / 6) < 0.02, pattern


def test_scan_propagates_polynomial_errors():
    # scan computes the ramified bound, so ineligible inputs surface the
    # underlying polynomial errors
    shared_root = product_of([make_poly([-2, 0, 1]), make_poly([-2, 0, 1])])
    with pytest.raises(errors.ZeroResultant):
        scan(shared_root, 100)
    from exceptio.intpoly import multiply

    squared = product_of([multiply(make_poly([-1, 1]), make_poly([-1, 1]))])
    with pytest.raises(errors.NotSquareFree):
        scan(squared, 100)


def test_report_payload_schema():
    report = scan(SEXTIC, 1000)
    verdict = exceptional_verdict(SEXTIC, 1000, report=report)
    payload = report_payload(report, verdict)
    assert list(payload) == [
        "poly",
        "limit",
        "primes_scanned",
        "failures",
        "density",
        "delta",
        "verdict",
    ]
    assert payload["poly"] == "x^2-2; x^2-3; x^2-6"
    assert payload["density"] == "1"
    assert payload["verdict"] == {"tag": "ExceptionalLikely", "failures": []}
