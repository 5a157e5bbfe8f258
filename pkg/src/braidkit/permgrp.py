"""Permutations and permutation-group analytics: composition, cycle
types, orbits, minimal blocks and primitivity, subgroup closure,
centraliser orders, and lower central series of finite groups.

Composition is left-to-right throughout: (p * q)(x) = q(p(x)).  Points
are 0-based internally; cycle notation and all reported point sets are
1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .errors import BoundExceededError, InvalidInputError
from .zlinalg import FgAbelianGroup

__all__ = [
    "Permutation",
    "identity_perm",
    "compose",
    "parse_cycles",
    "CycleType",
    "cycle_type",
    "centralizer_order",
    "orbits",
    "is_primitive",
    "closure",
    "DEFAULT_CLOSURE_BOUND",
    "GroupInvariants",
    "lower_central_series",
    "finite_group_invariants",
]

DEFAULT_CLOSURE_BOUND = 10**6


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., m-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.images)
        if sorted(self.images) != list(range(m)):
            raise InvalidInputError("image array is not a bijection")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            out.append(tuple(p + 1 for p in cyc))
        return out

    def order(self) -> int:
        out = 1
        for cyc in self.cycles():
            out = out * len(cyc) // gcd(out, len(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + ",".join(str(p) for p in cyc) + ")" for cyc in cycs)

    def to_json(self) -> list[int]:
        """1-based image array [img(1), ..., img(m)]."""
        return [i + 1 for i in self.images]

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(tuple(int(x) - 1 for x in data))


def identity_perm(m: int) -> Permutation:
    return Permutation(tuple(range(m)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Left-to-right product: apply p first, then q."""
    if p.degree != q.degree:
        raise InvalidInputError("cannot compose permutations of different degrees")
    qi = q.images
    return Permutation(tuple(qi[i] for i in p.images))


_CYCLE_RE = re.compile(r"\(([0-9,\s]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-based cycle notation, e.g. "(1,2)(3,4,5)"; "()" is the identity."""
    stripped = text.replace(" ", "")
    if not stripped:
        raise InvalidInputError("empty permutation string")
    cycles = []
    consumed = 0
    for match in _CYCLE_RE.finditer(stripped):
        if match.start() != consumed:
            raise InvalidInputError(f"cannot parse permutation {text!r}")
        consumed = match.end()
        body = match.group(1)
        if body:
            points = [int(tok) for tok in body.split(",")]
            if any(p < 1 for p in points) or len(set(points)) != len(points):
                raise InvalidInputError(f"bad cycle in {text!r}")
            cycles.append(points)
    if consumed != len(stripped):
        raise InvalidInputError(f"cannot parse permutation {text!r}")
    maxpoint = max((p for cyc in cycles for p in cyc), default=0)
    m = degree if degree is not None else maxpoint
    if maxpoint > m:
        raise InvalidInputError(f"cycle point {maxpoint} exceeds degree {m}")
    images = list(range(m))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a - 1] = b - 1
    perm = Permutation(tuple(images))
    if sorted(x for cyc in cycles for x in cyc) != sorted(
        set(x for cyc in cycles for x in cyc)
    ):
        raise InvalidInputError(f"cycles overlap in {text!r}")
    return perm


@dataclass(frozen=True)
class CycleType:
    """Multiplicities l_k of k-cycles, k = 1..m (fixed points included)."""

    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        if sum(k * l for k, l in enumerate(self.multiplicities, start=1)) != self.degree:
            raise InvalidInputError("cycle lengths do not sum to the degree")

    @property
    def degree(self) -> int:
        return len(self.multiplicities)

    @classmethod
    def from_lengths(cls, lengths: Iterable[int], degree: int | None = None) -> "CycleType":
        lengths = list(lengths)
        m = degree if degree is not None else sum(lengths)
        mult = [0] * m
        for k in lengths:
            if not 1 <= k <= m:
                raise InvalidInputError(f"cycle length {k} outside 1..{m}")
            mult[k - 1] += 1
        return cls(tuple(mult))

    def lengths(self) -> list[int]:
        out = []
        for k, l in enumerate(self.multiplicities, start=1):
            out.extend([k] * l)
        return out

    def __str__(self) -> str:
        return "".join(
            f"({k})^{l}" for k, l in enumerate(self.multiplicities, start=1) if l
        )


def cycle_type(p: Permutation) -> CycleType:
    seen = [False] * p.degree
    lengths = []
    for start in range(p.degree):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            length += 1
            x = p.images[x]
        lengths.append(length)
    return CycleType.from_lengths(lengths, p.degree)


def centralizer_order(t: CycleType) -> int:
    """Order of the centraliser in S_m of any permutation of this type:
    the product over cycle lengths k of k^(l_k) * (l_k)!.
    """
    out = 1
    for k, l in enumerate(t.multiplicities, start=1):
        out *= k**l
        for i in range(2, l + 1):
            out *= i
    return out


def orbits(gens: Sequence[Permutation], m: int) -> tuple[tuple[int, ...], ...]:
    """Orbit partition of {1..m}, each orbit sorted, ordered by least point."""
    for g in gens:
        if g.degree != m:
            raise InvalidInputError("generator degree mismatch")
    seen = [False] * m
    out = []
    for start in range(m):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        queue = [start]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g.images[x]
                if not seen[y]:
                    seen[y] = True
                    orbit.append(y)
                    queue.append(y)
        out.append(tuple(sorted(p + 1 for p in orbit)))
    return tuple(out)


def _minimal_block(gens: Sequence[Permutation], m: int, beta: int) -> list[int]:
    """Smallest block containing {0, beta} (0-based), by orbit merging."""
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[find(beta)] = find(0)
    pairs = [(0, beta)]
    while pairs:
        x, y = pairs.pop()
        for g in gens:
            gx, gy = g.images[x], g.images[y]
            rx, ry = find(gx), find(gy)
            if rx != ry:
                parent[ry] = rx
                pairs.append((gx, gy))
    root = find(0)
    return [p for p in range(m) if find(p) == root]


def is_primitive(
    gens: Sequence[Permutation], m: int
) -> tuple[bool, tuple[int, ...] | None]:
    """Primitivity of the group generated by gens acting on {1..m}.

    Returns (True, None) or (False, witness), where the witness is a
    nontrivial block (or an orbit when the action is intransitive).
    For m <= 2 no nontrivial partition exists, so every group counts
    as primitive, the trivial group included.
    """
    if m <= 2:
        return True, None
    parts = orbits(gens, m)
    if len(parts) > 1:
        return False, parts[0]
    for beta in range(1, m):
        block = _minimal_block(gens, m, beta)
        if 1 < len(block) < m:
            return False, tuple(p + 1 for p in block)
    return True, None


def closure(
    gens: Sequence[Permutation], bound: int = DEFAULT_CLOSURE_BOUND
) -> list[Permutation]:
    """All elements of the group generated by gens, sorted by image array.

    Raises BoundExceededError if the group has more than ``bound``
    elements; never truncates silently.
    """
    if bound < 1:
        raise InvalidInputError("closure bound must be >= 1")
    if not gens:
        raise InvalidInputError("closure needs at least one generator")
    m = gens[0].degree
    for g in gens:
        if g.degree != m:
            raise InvalidInputError("generator degree mismatch")
    ident = tuple(range(m))
    seen = {ident}
    frontier = [ident]
    gen_images = [g.images for g in gens]
    while frontier:
        new = []
        for x in frontier:
            for g in gen_images:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    if len(seen) >= bound:
                        raise BoundExceededError(
                            f"group closure exceeds bound {bound}"
                        )
                    seen.add(y)
                    new.append(y)
        frontier = new
    return [Permutation(t) for t in sorted(seen)]


def _commutator_perm(g: Permutation, h: Permutation) -> Permutation:
    return g.inverse() * h.inverse() * g * h


def lower_central_series(elements: Sequence[Permutation]) -> list[list[Permutation]]:
    """Successive terms of the lower central series of a finite group,
    given as a closed element list.  Stops at the first repeat or at the
    trivial subgroup; the final term is included.
    """
    group = _check_closed(elements)
    terms = [group]
    while True:
        current = terms[-1]
        comms = {(_commutator_perm(g, h)).images for g in group for h in current}
        nontrivial = [Permutation(t) for t in comms if any(i != j for i, j in enumerate(t))]
        if nontrivial:
            nxt = closure(nontrivial, bound=len(group))
        else:
            nxt = [identity_perm(group[0].degree)]
        terms.append(nxt)
        if len(nxt) == 1 or len(nxt) == len(current):
            return terms


def _check_closed(elements: Sequence[Permutation]) -> list[Permutation]:
    if not elements:
        raise InvalidInputError("empty element list")
    elems = set(e.images for e in elements)
    sample = list(elems)
    m = elements[0].degree
    if tuple(range(m)) not in elems:
        raise InvalidInputError("element list lacks the identity")
    for e in sample:
        inv = [0] * m
        for i, j in enumerate(e):
            inv[j] = i
        if tuple(inv) not in elems:
            raise InvalidInputError("element list is not closed under inversion")
    # spot products exhaustively; the inputs here are small
    for a in sample:
        for b in sample:
            if tuple(b[i] for i in a) not in elems:
                raise InvalidInputError("element list is not closed under products")
    return [Permutation(t) for t in sorted(elems)]


@dataclass(frozen=True)
class GroupInvariants:
    order: int
    abelianization: FgAbelianGroup
    lcs_orders: tuple[int, ...]


def _abelian_invariants_from_cosets(
    group: list[Permutation], normal: list[Permutation]
) -> FgAbelianGroup:
    """Invariant factors of the (abelian) quotient group / normal subgroup,
    recovered from order statistics of the cosets.

    For an abelian group, counting solutions of x^(p^j) = 1 for each
    prime power determines the multiset of elementary divisors.
    """
    normal_set = {p.images for p in normal}
    reps: list[Permutation] = []
    covered: set = set()
    for el in group:
        if el.images in covered:
            continue
        reps.append(el)
        for h in normal:
            covered.add((el * h).images)
    q = len(reps)

    def power_in_normal(rep: Permutation, e: int) -> bool:
        acc = identity_perm(rep.degree)
        base = rep
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc.images in normal_set

    moduli: list[int] = []
    for p in _prime_factors(q):
        # ks[j-1] = number of cyclic p-summands with exponent >= j
        ks: list[int] = []
        prev_count = 1
        j = 1
        while True:
            count = sum(1 for rep in reps if power_in_normal(rep, p**j))
            ratio = count // prev_count
            k = 0
            while ratio > 1:
                ratio //= p
                k += 1
            if k == 0:
                break
            ks.append(k)
            prev_count = count
            j += 1
        for exp in range(1, len(ks) + 1):
            nxt = ks[exp] if exp < len(ks) else 0
            moduli.extend([p**exp] * (ks[exp - 1] - nxt))
    return FgAbelianGroup.from_moduli(moduli)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def finite_group_invariants(elements: Sequence[Permutation]) -> GroupInvariants:
    """Order, abelianisation, and lower-central-series orders of a finite
    group given as a closed element list."""
    series = lower_central_series(elements)
    group = series[0]
    derived = series[1]
    ab = _abelian_invariants_from_cosets(group, derived)
    return GroupInvariants(len(group), ab, tuple(len(t) for t in series))
