"""Prime sieving, root scanning over prime ranges, and exceptionality verdicts.

A scan records, for every prime p up to a limit, whether some factor of a
product has a root mod p.  Factors are tested individually with a
short-circuit, so reports are deterministic and independent of how the
prime range is partitioned across workers.
"""

from __future__ import annotations

import hashlib
import re
from bisect import bisect_right
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from pathlib import Path

from .errors import (
    BadParameters,
    CacheIoError,
    CorruptCacheEntry,
    LimitTooLarge,
    ModulusTooLarge,
)
from .intpoly import (
    FactoredPolynomial,
    IntPolynomial,
    _mp_eval,
    _mp_gcd,
    _mp_pow_mod,
    _mp_sub,
    _mp_trim,
    factored_text,
    has_integer_root,
    ramified_prime_bound,
)

SIEVE_CAP = 10**9
MODULUS_CAP = 10**8
SCREEN_CAP = 10**6

# Residue sweeps beat the Frobenius power only for quite small p here.
_EXISTENCE_SWEEP_LIMIT = 256

_SEGMENT = 1 << 17


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: tuple[int, ...]


@dataclass(frozen=True)
class ScanReport:
    poly_key: str
    limit: int
    primes_scanned: int
    failures: tuple[int, ...]
    density_estimate: Fraction
    delta: int


@dataclass(frozen=True)
class Verdict:
    """Exceptionality verdict.

    HasIntegerRoot carries the root, NotExceptional a failure prime outside
    the ramified bound (a rigorous negative certificate), ExceptionalLikely
    the full failure set, all of which divides the bound.
    """

    tag: str
    root: int | None = None
    witness_prime: int | None = None
    failures: tuple[int, ...] | None = None


def sieve_primes(limit: int, cap: int = SIEVE_CAP) -> PrimeTable:
    """All primes up to limit by a segmented sieve."""
    if limit < 2:
        raise BadParameters("sieve limit must be at least 2")
    if limit > cap:
        raise LimitTooLarge(f"sieve limit {limit} exceeds cap {cap}")
    return PrimeTable(limit, _sieve_cached(limit))


@lru_cache(maxsize=8)
def _sieve_cached(limit: int) -> tuple[int, ...]:
    root = isqrt(limit)
    base_flags = bytearray([1]) * (root + 1)
    base_flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(root) + 1):
        if base_flags[p]:
            base_flags[p * p :: p] = b"\x00" * len(range(p * p, root + 1, p))
    base_primes = [p for p in range(2, root + 1) if base_flags[p]]
    primes: list[int] = []
    lo = 2
    while lo <= limit:
        hi = min(lo + _SEGMENT - 1, limit)
        marks = bytearray(hi - lo + 1)
        for p in base_primes:
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            marks[start - lo :: p] = b"\x01" * len(range(start, hi + 1, p))
        primes.extend(lo + i for i, m in enumerate(marks) if not m)
        lo = hi + 1
    return tuple(primes)


# ---------------------------------------------------------------------------
# per-prime root existence
# ---------------------------------------------------------------------------


def _prepare_factor(f: IntPolynomial):
    if f.degree == 1:
        return ("linear", None)
    coeffs = f.coeffs
    if all(c == 0 for c in coeffs[1:-1]):
        # x^n - c: root existence is an n-th power residue test
        return ("binomial", (len(coeffs) - 1, -coeffs[0]))
    return ("generic", coeffs)


def _binomial_has_root(n: int, c: int, p: int) -> bool:
    c %= p
    if c == 0:
        return True
    d = gcd(n, p - 1)
    return pow(c, (p - 1) // d, p) == 1


def _generic_has_root(coeffs, p: int) -> bool:
    a = _mp_trim([c % p for c in coeffs])
    if not a:
        return True
    if len(a) == 1:
        return False
    if len(a) == 2:
        return True
    if p <= _EXISTENCE_SWEEP_LIMIT:
        return any(_mp_eval(a, x, p) == 0 for x in range(p))
    xp = _mp_pow_mod((0, 1), p, a, p)
    return len(_mp_gcd(a, _mp_sub(xp, (0, 1), p), p)) > 1


def _scan_chunk(prepared, primes) -> list[int]:
    failures = []
    for p in primes:
        for kind, data in prepared:
            if kind == "linear":
                break
            if kind == "binomial":
                if _binomial_has_root(data[0], data[1], p):
                    break
            elif _generic_has_root(data, p):
                break
        else:
            failures.append(p)
    return failures


def _scan_primes(F: FactoredPolynomial, primes, threads: int = 1) -> tuple[int, ...]:
    prepared = [_prepare_factor(f) for f in F.factors]
    if threads <= 1 or len(primes) < 4096:
        return tuple(_scan_chunk(prepared, primes))
    bounds = [len(primes) * i // threads for i in range(threads + 1)]
    chunks = [primes[bounds[i] : bounds[i + 1]] for i in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda c: _scan_chunk(prepared, c), chunks))
    merged: list[int] = []
    for part in parts:
        merged.extend(part)
    return tuple(merged)


def _build_report(F: FactoredPolynomial, limit: int, failures) -> ScanReport:
    scanned = len(sieve_primes(limit).primes)
    return ScanReport(
        poly_key=factored_text(F),
        limit=limit,
        primes_scanned=scanned,
        failures=tuple(failures),
        density_estimate=Fraction(scanned - len(failures), scanned),
        delta=ramified_prime_bound(F),
    )


def scan(F: FactoredPolynomial, limit: int, threads: int = 1) -> ScanReport:
    """Scan all primes up to limit for roots of the factors of F."""
    if limit < 2:
        raise BadParameters("scan limit must be at least 2")
    primes = sieve_primes(limit).primes
    return _build_report(F, limit, _scan_primes(F, primes, threads))


def empirical_density(report: ScanReport) -> Fraction:
    """Fraction of scanned primes at which some factor had a root."""
    return report.density_estimate


def exceptional_verdict(
    F: FactoredPolynomial,
    limit: int,
    report: ScanReport | None = None,
    threads: int = 1,
) -> Verdict:
    """Classify F as having an integer root, provably not exceptional, or
    exceptional as far as the scan can tell.

    A failure prime outside the ramified bound is a rigorous negative
    certificate: at such a prime the factorisation pattern forces a
    positive density of rootless primes.  Positive verdicts stay 'Likely'
    because no scan limit can certify exceptionality.
    """
    for f in F.factors:
        root = has_integer_root(f)
        if root is not None:
            return Verdict("HasIntegerRoot", root=root)
    if report is None or report.limit != limit:
        report = scan(F, limit, threads)
    for p in report.failures:
        if report.delta % p != 0:
            return Verdict("NotExceptional", witness_prime=p)
    return Verdict("ExceptionalLikely", failures=report.failures)


def has_root_mod_m(f: IntPolynomial, m: int):
    """Smallest residue x in [0, m) with f(x) = 0 mod m, or None (brute force)."""
    if m < 2:
        raise BadParameters("modulus must be at least 2")
    if m > MODULUS_CAP:
        raise ModulusTooLarge(f"modulus {m} exceeds brute-force cap {MODULUS_CAP}")
    coeffs = [c % m for c in f.coeffs]
    for x in range(m):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % m
        if acc == 0:
            return x
    return None


def intersective_screen(F: FactoredPolynomial, modulus_bound: int):
    """Smallest modulus m <= bound with no root of the expanded product, or None.

    A screening tool only: absence of a failing modulus up to the bound
    proves nothing.
    """
    if not 2 <= modulus_bound <= SCREEN_CAP:
        raise BadParameters(f"modulus bound must be in [2, {SCREEN_CAP}]")
    product = F.product
    for m in range(2, modulus_bound + 1):
        if has_root_mod_m(product, m) is None:
            return m
    return None


# ---------------------------------------------------------------------------
# scan cache: one file per polynomial key, lines of "limit<TAB>failures"
# ---------------------------------------------------------------------------

_CACHE_LINE = re.compile(r"^(\d+)\t([0-9,]*)$")


class ScanCache:
    """File-backed failure cache.  Entries are only trusted up to their
    recorded limit; larger requests rescan the missing tail and extend."""

    def __init__(self, root):
        self.root = Path(root)

    def path_for(self, poly_key: str) -> Path:
        slug = re.sub(r"[^0-9a-zA-Z._+-]+", "_", poly_key)[:80]
        digest = hashlib.sha256(poly_key.encode()).hexdigest()[:12]
        return self.root / f"{slug}__{digest}.scan"

    def load(self, poly_key: str) -> list[tuple[int, tuple[int, ...]]]:
        path = self.path_for(poly_key)
        if not path.exists():
            return []
        try:
            text = path.read_text()
        except OSError as exc:
            raise CacheIoError(f"cannot read {path}: {exc}")
        entries = []
        for line in text.splitlines():
            if not line.strip():
                continue
            m = _CACHE_LINE.match(line)
            if m is None:
                raise CorruptCacheEntry(f"unreadable cache line {line!r}")
            limit = int(m.group(1))
            failures = tuple(int(tok) for tok in m.group(2).split(",") if tok)
            if list(failures) != sorted(set(failures)) or (failures and failures[-1] > limit):
                raise CorruptCacheEntry(f"inconsistent cache line {line!r}")
            entries.append((limit, failures))
        entries.sort()
        return entries

    def append(self, poly_key: str, limit: int, failures) -> None:
        path = self.path_for(poly_key)
        try:
            self.root.mkdir(parents=True, exist_ok=True)
            with open(path, "a", encoding="ascii") as handle:
                handle.write(f"{limit}\t{','.join(str(p) for p in failures)}\n")
        except OSError as exc:
            raise CacheIoError(f"cannot write {path}: {exc}")

    def scan_cached(self, F: FactoredPolynomial, limit: int, threads: int = 1) -> ScanReport:
        if limit < 2:
            raise BadParameters("scan limit must be at least 2")
        key = factored_text(F)
        try:
            entries = self.load(key)
        except CorruptCacheEntry:
            try:
                self.path_for(key).unlink()
            except OSError:
                pass
            entries = []
        covering = [e for e in entries if e[0] >= limit]
        if covering:
            failures = tuple(p for p in covering[0][1] if p <= limit)
            return _build_report(F, limit, failures)
        base_limit, base_failures = entries[-1] if entries else (0, ())
        primes = sieve_primes(limit).primes
        tail = primes[bisect_right(primes, base_limit) :]
        failures = base_failures + _scan_primes(F, tail, threads)
        self.append(key, limit, failures)
        return _build_report(F, limit, failures)


# ---------------------------------------------------------------------------
# JSON payloads (field names are part of the wire format)
# ---------------------------------------------------------------------------


def verdict_payload(verdict: Verdict) -> dict:
    out: dict = {"tag": verdict.tag}
    if verdict.tag == "HasIntegerRoot":
        out["root"] = verdict.root
    elif verdict.tag == "NotExceptional":
        out["witness_prime"] = verdict.witness_prime
    else:
        out["failures"] = list(verdict.failures or ())
    return out


def report_payload(report: ScanReport, verdict: Verdict) -> dict:
    return {
        "poly": report.poly_key,
        "limit": report.limit,
        "primes_scanned": report.primes_scanned,
        "failures": list(report.failures),
        "density": str(report.density_estimate),
        "delta": report.delta,
        "verdict": verdict_payload(verdict),
    }
