"""Finite permutation groups given by generators.

Groups are fully enumerated (desk scale; every criterion below quantifies
over all elements) with a deterministic lexicographic element order, so
witnesses and reports are reproducible.  Permutations are image tuples:
g maps i to g[i].
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import (
    BadParameters,
    DegreeMismatch,
    DegreeTooLarge,
    DegreeTooSmall,
    GroupTooLarge,
    NotIndexTwo,
    NotTransitive,
    ParseError,
    PointOutOfRange,
)
from .nt import is_prime, primitive_root

Perm = tuple[int, ...]

DEFAULT_CAP = 200_000


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    """a after b: the map i -> a[b[i]]."""
    return tuple(a[x] for x in b)


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def fixed_point_count(a: Perm) -> int:
    return sum(1 for i, x in enumerate(a) if i == x)


def is_permutation(a) -> bool:
    return sorted(a) == list(range(len(a)))


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    cap: int = DEFAULT_CAP

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class CosetCheck:
    """Result of the unique-fixed-point test on the nontrivial coset."""

    group: PermutationGroup
    subgroup: tuple[Perm, ...]
    verdict: bool
    violations: tuple[Perm, ...]


def _closure(gens, cap: int) -> set[Perm]:
    n = len(gens[0])
    elems = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        fresh = []
        for g in frontier:
            for s in gens:
                h = tuple(g[x] for x in s)
                if h not in elems:
                    elems.add(h)
                    if len(elems) > cap:
                        raise GroupTooLarge(f"closure exceeded cap {cap}")
                    fresh.append(h)
        frontier = fresh
    return elems


def generate_group(gens, cap: int = DEFAULT_CAP) -> PermutationGroup:
    """Breadth-first closure of the generators under composition."""
    gens = tuple(tuple(g) for g in gens)
    if not gens:
        raise BadParameters("need at least one generator (use the identity)")
    if cap < 1:
        raise BadParameters("cap must be positive")
    degree = len(gens[0])
    for g in gens:
        if len(g) != degree:
            raise DegreeMismatch("generators act on different point counts")
        if not is_permutation(g):
            raise BadParameters(f"{g} is not a permutation")
    elements = tuple(sorted(_closure(gens, cap)))
    return PermutationGroup(degree, gens, elements, cap)


def point_stabilizer(G: PermutationGroup, i: int) -> tuple[Perm, ...]:
    if not 0 <= i < G.degree:
        raise PointOutOfRange(f"point {i} outside degree {G.degree}")
    return tuple(g for g in G.elements if g[i] == i)


def has_fixed_point_coverage(G: PermutationGroup):
    """(True, None) if every element fixes a point, else (False, witness)."""
    for g in G.elements:
        if fixed_point_count(g) == 0:
            return False, g
    return True, None


def chebotarev_root_density(G: PermutationGroup) -> Fraction:
    """Fraction of elements with a fixed point; equals the natural density of
    primes at which a polynomial with this Galois action has a root."""
    with_fp = sum(1 for g in G.elements if fixed_point_count(g) > 0)
    return Fraction(with_fp, G.order)


def orbit_count(G: PermutationGroup) -> int:
    """Number of orbits, by the fixed-point average, cross-checked against a
    union-find orbit partition of the generators."""
    total = sum(fixed_point_count(g) for g in G.elements)
    if total % G.order:
        raise RuntimeError("fixed-point sum not divisible by group order")
    by_average = total // G.order

    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.generators:
        for i, x in enumerate(g):
            ri, rx = find(i), find(x)
            if ri != rx:
                parent[ri] = rx
    by_partition = len({find(i) for i in range(G.degree)})
    if by_average != by_partition:
        raise RuntimeError("orbit count mismatch between average and partition")
    return by_average


def is_transitive(G: PermutationGroup) -> bool:
    return orbit_count(G) == 1


def index2_subgroups(G: PermutationGroup) -> list[tuple[Perm, ...]]:
    """All index-two subgroups, via sign characters on the generators.

    Each candidate assignment of signs to generators is propagated along
    every Cayley edge; assignments that label consistently are exactly the
    homomorphisms onto {1, -1}, and their kernels are the subgroups sought.
    """
    if G.order % 2:
        return []
    kernels = set()
    e = identity(G.degree)
    for signs in itertools.product((1, -1), repeat=len(G.generators)):
        if all(s == 1 for s in signs):
            continue
        label = {e: 1}
        frontier = [e]
        consistent = True
        while frontier and consistent:
            fresh = []
            for g in frontier:
                lg = label[g]
                for s, sign in zip(G.generators, signs):
                    h = tuple(g[x] for x in s)
                    expected = lg * sign
                    known = label.get(h)
                    if known is None:
                        label[h] = expected
                        fresh.append(h)
                    elif known != expected:
                        consistent = False
                        break
                if not consistent:
                    break
            frontier = fresh
        if consistent:
            kernels.add(tuple(sorted(g for g in G.elements if label[g] == 1)))
    return sorted(kernels)


def _is_subgroup(G: PermutationGroup, H) -> bool:
    members = set(H)
    if identity(G.degree) not in members or not members <= set(G.elements):
        return False
    return all(compose(a, b) in members for a in members for b in members)


def unique_fp_coset_condition(G: PermutationGroup, H) -> CosetCheck:
    """Check that every element outside the index-two subgroup H fixes
    exactly one point."""
    H = tuple(sorted(tuple(h) for h in H))
    if 2 * len(H) != G.order or not _is_subgroup(G, H):
        raise NotIndexTwo("H is not an index-two subgroup of G")
    members = set(H)
    violations = tuple(
        g for g in G.elements if g not in members and fixed_point_count(g) != 1
    )
    return CosetCheck(G, H, not violations, violations)


def admits_quadratic_completion(G: PermutationGroup):
    """First index-two subgroup whose outside coset has unique fixed points,
    or None.  Only meaningful for transitive groups."""
    if not is_transitive(G):
        raise NotTransitive("quadratic completion criterion needs a transitive group")
    for H in index2_subgroups(G):
        if unique_fp_coset_condition(G, H).verdict:
            return H
    return None


def dihedral_group(n: int) -> PermutationGroup:
    """Symmetries of the n-gon on its n vertices, order 2n."""
    if n < 3:
        raise DegreeTooSmall("dihedral group needs n >= 3")
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((n - i) % n for i in range(n))
    G = generate_group([rotation, reflection], cap=max(DEFAULT_CAP, 2 * n))
    assert G.order == 2 * n
    return G


def frobenius_group(p: int, q: int) -> PermutationGroup:
    """Affine maps x -> ax + b on Z/p with a of order dividing q; order pq."""
    if not (is_prime(p) and is_prime(q)):
        raise BadParameters("both parameters must be prime")
    if (p - 1) % q:
        raise BadParameters(f"{q} does not divide {p} - 1")
    a = pow(primitive_root(p), (p - 1) // q, p)
    translation = tuple((i + 1) % p for i in range(p))
    scaling = tuple(a * i % p for i in range(p))
    G = generate_group([translation, scaling], cap=max(DEFAULT_CAP, p * q))
    assert G.order == p * q
    return G


def all_transitive_subgroups(n: int) -> list[PermutationGroup]:
    """Every transitive subgroup of S_n (as an explicit subgroup, not up to
    conjugacy) for 3 <= n <= 5, from closures of generator sets of size <= 3."""
    if n < 3:
        raise DegreeTooSmall("need degree at least 3")
    if n > 5:
        raise DegreeTooLarge("exhaustive subgroup enumeration capped at degree 5")
    cap = factorial(n)
    elements = sorted(itertools.permutations(range(n)))
    closures: dict[frozenset, tuple[Perm, ...]] = {}
    frontier: list[tuple[frozenset, tuple[Perm, ...]]] = []
    for g in elements:
        elems = frozenset(_closure([g], cap))
        if elems not in closures:
            closures[elems] = (g,)
            frontier.append((elems, (g,)))
    for _ in range(2):
        fresh: list[tuple[frozenset, tuple[Perm, ...]]] = []
        for elems, gens in frontier:
            for h in elements:
                if h in elems:
                    continue
                extended = frozenset(_closure(list(gens) + [h], cap))
                if extended not in closures:
                    new_gens = gens + (h,)
                    closures[extended] = new_gens
                    fresh.append((extended, new_gens))
        frontier = fresh
    groups = []
    for elems, gens in closures.items():
        G = PermutationGroup(n, gens, tuple(sorted(elems)), cap)
        if is_transitive(G):
            groups.append(G)
    groups.sort(key=lambda G: (G.order, G.elements))
    return groups


# ---------------------------------------------------------------------------
# group file format: first line "degree n", then one generator per line in
# cycle notation, e.g. "(0 1 2)(3 4)"; the identity is written "()"
# ---------------------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    if not text.strip():
        raise ParseError("empty permutation")
    images = list(range(degree))
    seen: set[int] = set()
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(text, pos)
        if m is None:
            raise ParseError(f"malformed cycle notation: {text!r}")
        pos = m.end()
        body = m.group(1).split()
        if not body:
            continue
        try:
            points = [int(tok) for tok in body]
        except ValueError:
            raise ParseError(f"malformed cycle notation: {text!r}") from None
        for pt in points:
            if not 0 <= pt < degree:
                raise ParseError(f"point {pt} outside degree {degree}")
            if pt in seen:
                raise ParseError(f"point {pt} repeated in {text!r}")
            seen.add(pt)
        for i, pt in enumerate(points):
            images[pt] = points[(i + 1) % len(points)]
    return tuple(images)


def format_cycles(g: Perm) -> str:
    seen = [False] * len(g)
    cycles = []
    for start in range(len(g)):
        if seen[start] or g[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        nxt = g[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = g[nxt]
        cycles.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(cycles) if cycles else "()"


def parse_group_file(text: str, cap: int = DEFAULT_CAP) -> PermutationGroup:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ParseError("empty group file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "degree" or not header[1].isdigit():
        raise ParseError(f"first line must be 'degree n', got {lines[0]!r}")
    degree = int(header[1])
    if degree < 1:
        raise ParseError("degree must be positive")
    gens = [parse_cycles(line, degree) for line in lines[1:]]
    if not gens:
        gens = [identity(degree)]
    return generate_group(gens, cap)


def format_group_file(G: PermutationGroup) -> str:
    lines = [f"degree {G.degree}"]
    lines.extend(format_cycles(g) for g in G.generators)
    return "\n".join(lines) + "\n"


def group_payload(G: PermutationGroup) -> dict:
    covered, _ = has_fixed_point_coverage(G)
    transitive = is_transitive(G)
    if transitive:
        H = admits_quadratic_completion(G)
        completion = [format_cycles(h) for h in H] if H is not None else None
    else:
        completion = None
    return {
        "order": G.order,
        "transitive": transitive,
        "coverage": covered,
        "density": str(chebotarev_root_density(G)),
        "quad_completion": completion,
    }
