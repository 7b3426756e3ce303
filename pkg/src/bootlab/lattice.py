"""Update families, the shifted lattice, bootstrap closure, and strong
connectivity.

Sites are integer tuples z; the lattice point they stand for is y + z where
y is the rational offset of the ambient lattice.  The offset only ever
enters through half-space membership tests, so all site arithmetic stays in
the integers.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .rationals import dot, norm2, parse_fraction, format_fraction


class EmptyRule(ValueError):
    pass


class OriginInRule(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class CapExceeded(RuntimeError):
    """The closure did not reach a fixed point within the supplied cap."""


@dataclass(frozen=True)
class UpdateFamily:
    dimension: int
    rules: tuple  # tuple of rules; each rule a sorted tuple of int tuples

    def __post_init__(self):
        for rule in self.rules:
            if not rule:
                raise EmptyRule("update rule with no elements")
            for v in rule:
                if len(v) != self.dimension:
                    raise DimensionMismatch(f"vector {v} in dimension {self.dimension}")
                if all(x == 0 for x in v):
                    raise OriginInRule("update rule contains the origin")

    @property
    def vectors(self):
        """All rule vectors, deduplicated, sorted."""
        return tuple(sorted({v for rule in self.rules for v in rule}))

    def to_json(self):
        return {"dimension": self.dimension,
                "rules": [[list(v) for v in rule] for rule in self.rules]}

    @classmethod
    def from_json(cls, obj):
        return canonicalize_family(obj["rules"], obj["dimension"])


def canonicalize_family(raw, d):
    """Validate, deduplicate and canonically order a raw rule list."""
    rules = set()
    for rule in raw:
        if not rule:
            raise EmptyRule("update rule with no elements")
        vecs = set()
        for v in rule:
            v = tuple(int(x) for x in v)
            if len(v) != d:
                raise DimensionMismatch(f"vector {v} in dimension {d}")
            if all(x == 0 for x in v):
                raise OriginInRule("update rule contains the origin")
            vecs.add(v)
        rules.add(tuple(sorted(vecs)))
    return UpdateFamily(d, tuple(sorted(rules)))


def neighbourhood_family(r, d):
    """The r-neighbour family: all size-r subsets of the 2d unit vectors."""
    units = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        units.append(tuple(e))
        units.append(tuple(-x for x in e))
    units.sort()
    from itertools import combinations
    return canonicalize_family(list(combinations(units, r)), d)


def range_squared(U):
    """R^2 for the range R = 2 * max rule-vector norm (exact integer)."""
    return 4 * max(norm2(v) for rule in U.rules for v in rule)


@dataclass(frozen=True)
class HalfSpaceUnion:
    """Union of discrete half-spaces {x in Lambda : <x,u> < a}."""
    entries: tuple = ()  # tuple of (direction int tuple, Fraction bound)

    def shifted_thresholds(self, offset):
        """Per entry, the threshold t with membership <z,u> < t for sites z."""
        return tuple((u, Fraction(a) - dot(offset, u)) for u, a in self.entries)

    def contains(self, z, offset):
        for u, a in self.entries:
            if dot(z, u) + dot(offset, u) < a:
                return True
        return False

    def to_json(self):
        return [{"direction": list(u), "bound": format_fraction(a)}
                for u, a in self.entries]

    @classmethod
    def from_json(cls, obj):
        return cls(tuple((tuple(int(x) for x in e["direction"]),
                          parse_fraction(e["bound"])) for e in obj))


EMPTY_ASSIST = HalfSpaceUnion(())


@dataclass(frozen=True)
class LatticeConfig:
    """Lattice Lambda = offset + Z^d restricted to a finite working domain."""
    offset: tuple            # rational vector y
    kind: str                # "torus" | "box" | "region"
    torus_n: int = 0
    box: tuple = ()          # ((lo, hi), ...) inclusive integer bounds
    region: tuple = ()       # ((direction, Fraction bound), ...) meaning <y+z,u> <= b

    @classmethod
    def torus(cls, n, d):
        if n < 1:
            raise ValueError("torus side must be >= 1")
        return cls(offset=tuple(Fraction(0) for _ in range(d)), kind="torus", torus_n=n)

    @classmethod
    def box_domain(cls, bounds, offset=None):
        d = len(bounds)
        if offset is None:
            offset = tuple(Fraction(0) for _ in range(d))
        return cls(offset=tuple(Fraction(x) for x in offset), kind="box",
                   box=tuple((int(lo), int(hi)) for lo, hi in bounds))

    @classmethod
    def region_domain(cls, halfspaces, offset):
        return cls(offset=tuple(Fraction(x) for x in offset), kind="region",
                   region=tuple((tuple(map(int, u)), Fraction(b)) for u, b in halfspaces))

    def in_domain(self, z):
        if self.kind == "box":
            return all(lo <= x <= hi for x, (lo, hi) in zip(z, self.box))
        if self.kind == "region":
            return all(dot(z, u) + dot(self.offset, u) <= b for u, b in self.region)
        return True


def _candidate_offsets(U):
    offs = {tuple(-x for x in v) for rule in U.rules for v in rule}
    return tuple(sorted(offs))


def closure(U, K, assist, cfg, cap):
    """Least fixed point of the update rule on the configured domain.

    Sites of `assist` count as infected for rule evaluation but are never
    emitted.  `assist` is expected to be closure-invariant (a union of
    half-spaces with stable normals); under that precondition every new
    infection is triggered by a site reachable from K, which is what the
    frontier scan below exploits.  `cap` bounds the number of new infections.
    """
    if cfg.kind == "torus":
        raise ValueError("use torus_closure for torus domains")
    if cap <= 0:
        raise ValueError("cap must be positive")
    thresholds = assist.shifted_thresholds(cfg.offset)

    def in_assist(z):
        return any(dot(z, u) < t for u, t in thresholds)

    infected = set()
    for z in K:
        z = tuple(z)
        if cfg.in_domain(z) and not in_assist(z):
            infected.add(z)
    frontier = list(infected)
    cand = _candidate_offsets(U)
    grown = 0
    while frontier:
        x = frontier.pop()
        for off in cand:
            z = tuple(a + b for a, b in zip(x, off))
            if z in infected or not cfg.in_domain(z) or in_assist(z):
                continue
            for rule in U.rules:
                ok = True
                for v in rule:
                    w = tuple(a + b for a, b in zip(z, v))
                    if w not in infected and not in_assist(w):
                        ok = False
                        break
                if ok:
                    infected.add(z)
                    frontier.append(z)
                    grown += 1
                    if grown > cap:
                        raise CapExceeded(f"closure exceeded cap of {cap} new sites")
                    break
    return frozenset(infected)


def torus_closure(U, A, n):
    """Closure on the torus (coordinates mod n)."""
    d = U.dimension
    infected = {tuple(x % n for x in z) for z in A}
    frontier = list(infected)
    cand = _candidate_offsets(U)
    full = n ** d
    while frontier and len(infected) < full:
        x = frontier.pop()
        for off in cand:
            z = tuple((a + b) % n for a, b in zip(x, off))
            if z in infected:
                continue
            for rule in U.rules:
                if all(tuple((a + b) % n for a, b in zip(z, v)) in infected for v in rule):
                    infected.add(z)
                    frontier.append(z)
                    break
    return frozenset(infected)


def torus_percolates(U, A, n):
    return len(torus_closure(U, A, n)) == n ** U.dimension


def _ball_offsets(d, R2):
    """All nonzero integer vectors with squared norm <= R2."""
    from math import isqrt
    r = isqrt(int(R2)) + 1
    out = []
    for v in product(range(-r, r + 1), repeat=d):
        if any(v) and norm2(v) <= R2:
            out.append(v)
    return out


def strong_components(K, R2):
    """Partition K into maximal components under ||x - y||^2 <= R2.

    Deterministic: components sorted by their lexicographically least site.
    """
    sites = sorted(set(map(tuple, K)))
    if not sites:
        return []
    d = len(sites[0])
    offsets = _ball_offsets(d, R2)
    index = {z: i for i, z in enumerate(sites)}
    parent = list(range(len(sites)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for z in sites:
        i = index[z]
        for off in offsets:
            w = tuple(a + b for a, b in zip(z, off))
            j = index.get(w)
            if j is not None:
                union(i, j)

    groups = {}
    for z in sites:
        groups.setdefault(find(index[z]), []).append(z)
    comps = [frozenset(g) for g in groups.values()]
    comps.sort(key=lambda c: min(c))
    return comps


def strongly_connected(K1, K2, R2):
    """True iff some pair x in K1, y in K2 has ||x-y||^2 <= R2."""
    if len(K2) < len(K1):
        K1, K2 = K2, K1
    K2 = set(map(tuple, K2))
    first = next(iter(K2), None)
    if first is None or not K1:
        return False
    d = len(first)
    offsets = _ball_offsets(d, R2)
    for z in K1:
        z = tuple(z)
        if z in K2:
            return True
        for off in offsets:
            if tuple(a + b for a, b in zip(z, off)) in K2:
                return True
    return False


def strongly_connected_to_halfspace(K, u, a, R2, offset=None):
    """True iff K is within range R of the continuous half-space <x,u> < a.

    Exact: either some site lies inside, or its distance to the boundary
    satisfies (<x,u> - a)^2 <= R2 * ||u||^2.
    """
    if all(x == 0 for x in u):
        raise ValueError("half-space normal must be non-zero")
    a = Fraction(a)
    nu = norm2(u)
    for z in K:
        s = dot(z, u) + (dot(offset, u) if offset is not None else 0)
        if s < a:
            return True
        if (s - a) ** 2 <= R2 * nu:
            return True
    return False


def family_to_file(U, path):
    with open(path, "w") as fh:
        json.dump(U.to_json(), fh, indent=1)


def family_from_file(path):
    with open(path) as fh:
        return UpdateFamily.from_json(json.load(fh))


def offset_from_json(arr):
    return tuple(parse_fraction(s) for s in arr)


def offset_to_json(offset):
    return [format_fraction(x) for x in offset]
