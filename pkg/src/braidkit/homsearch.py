"""Verify, classify, enumerate, and combine homomorphisms from a finitely
presented group into a symmetric group S_m.

Words are evaluated left-to-right, matching the composition convention of
the permutation module.  The census search assigns generator images in
order of decreasing relator usage (so the heavily constrained sigma
generators go first) and prunes on every relator whose generators are all
assigned.
"""

from __future__ import annotations

import itertools
from bisect import insort
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial

from .errors import BoundExceededError, InvalidInputError
from .fpgroup import Presentation, class2_quotient_presentation, closed_orientable
from .permgrp import (
    Permutation,
    closure,
    identity_perm,
    is_primitive,
    orbits,
    parse_cycles,
)

__all__ = [
    "GeneratorAssignment",
    "HomClassification",
    "verify_hom",
    "classify_hom",
    "CensusResult",
    "enumerate_homs",
    "direct_sum",
    "PREDICATES",
    "imprimitive_s8_assignment",
    "imprimitive_s16_assignment",
    "imprimitive_s32_assignment",
    "wreath_cycle_assignment",
    "composite_s408_assignment",
    "builtin_assignment",
]

DEFAULT_SEARCH_BOUND = 10**10


@dataclass(frozen=True)
class GeneratorAssignment:
    """One permutation image per generator of a presentation."""

    presentation: Presentation
    degree: int
    images: tuple[Permutation, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.presentation.generator_count:
            raise InvalidInputError("one image per generator required")
        for p in self.images:
            if p.degree != self.degree:
                raise InvalidInputError("image degree mismatch")

    def image_of(self, name: str) -> Permutation:
        return self.images[self.presentation.generator_index(name) - 1]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "images": {
                name: perm.cycle_string()
                for name, perm in zip(self.presentation.generator_names, self.images)
            },
        }

    @classmethod
    def from_json(cls, presentation: Presentation, data: dict) -> "GeneratorAssignment":
        degree = int(data["degree"])
        images = []
        for name in presentation.generator_names:
            if name not in data["images"]:
                raise InvalidInputError(f"missing image for generator {name!r}")
            images.append(parse_cycles(data["images"][name], degree))
        return cls(presentation, degree, tuple(images))


def _evaluate(letters, images: tuple[Permutation, ...], degree: int) -> tuple[int, ...]:
    point_map = list(range(degree))
    for let in letters:
        img = images[abs(let) - 1]
        table = img.images if let > 0 else img.inverse().images
        point_map = [table[x] for x in point_map]
    return tuple(point_map)


def verify_hom(presentation: Presentation, assignment: GeneratorAssignment) -> int | None:
    """Check every relator; returns None if all hold, else the 1-based
    index of the first failing relator."""
    if assignment.presentation.generator_count != presentation.generator_count:
        raise InvalidInputError("assignment arity does not match the presentation")
    ident = tuple(range(assignment.degree))
    for idx, rel in enumerate(presentation.relators, start=1):
        if _evaluate(rel.letters, assignment.images, assignment.degree) != ident:
            return idx
    return None


@dataclass(frozen=True)
class HomClassification:
    valid: bool
    image_order: int
    abelian: bool
    cyclic: bool
    transitive: bool
    primitive: bool
    surjective_onto_sym: bool

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "image_order": self.image_order,
            "abelian": self.abelian,
            "cyclic": self.cyclic,
            "transitive": self.transitive,
            "primitive": self.primitive,
            "surjective": self.surjective_onto_sym,
        }


def classify_hom(
    presentation: Presentation,
    assignment: GeneratorAssignment,
    closure_bound: int = 10**6,
) -> HomClassification:
    """Image-group classification of a valid homomorphism."""
    failing = verify_hom(presentation, assignment)
    if failing is not None:
        err = InvalidInputError(f"assignment fails relator {failing}")
        err.failing_relator = failing
        raise err
    m = assignment.degree
    gens = list(assignment.images) or [identity_perm(m)]
    image = closure(gens, closure_bound)
    order = len(image)
    abelian = all(
        (a * b).images == (b * a).images
        for i, a in enumerate(gens)
        for b in gens[i + 1 :]
    )
    cyclic = any(p.order() == order for p in image)
    parts = orbits(gens, m)
    transitive = len(parts) == 1
    primitive, _ = is_primitive(gens, m)
    return HomClassification(
        valid=True,
        image_order=order,
        abelian=abelian,
        cyclic=cyclic,
        transitive=transitive,
        primitive=primitive,
        surjective_onto_sym=order == factorial(m),
    )


def _predicate_transitive(images, m):
    return len(orbits(images, m)) == 1


def _predicate_primitive(images, m):
    return is_primitive(images, m)[0]


def _predicate_surjective(images, m):
    gens = list(images) or [identity_perm(m)]
    try:
        return len(closure(gens, factorial(m))) == factorial(m)
    except BoundExceededError:  # cannot happen inside S_m, defensive
        return False


def _predicate_cyclic(images, m):
    gens = list(images) or [identity_perm(m)]
    group = closure(gens, factorial(m))
    return any(p.order() == len(group) for p in group)


def _predicate_abelian(images, m):
    return all(
        (a * b).images == (b * a).images
        for i, a in enumerate(images)
        for b in images[i + 1 :]
    )


PREDICATES = {
    "all": lambda images, m: True,
    "transitive": _predicate_transitive,
    "primitive": _predicate_primitive,
    "surjective": _predicate_surjective,
    "cyclic": _predicate_cyclic,
    "abelian": _predicate_abelian,
}


@dataclass(frozen=True)
class CensusResult:
    count: int
    representatives: tuple[GeneratorAssignment, ...]

    def to_json(self, include_representatives: bool = True) -> dict:
        out = {"count": self.count}
        if include_representatives:
            out["representatives"] = [a.to_json() for a in self.representatives]
        return out


def _search_plan(presentation: Presentation):
    """Assignment order (most-used generators first) and, per depth, the
    relators that become fully assigned at that depth."""
    n = presentation.generator_count
    usage = [0] * n
    rel_gens = []
    for rel in presentation.relators:
        gens = sorted({abs(let) - 1 for let in rel.letters})
        rel_gens.append(gens)
        for g in gens:
            usage[g] += 1
    order = sorted(range(n), key=lambda g: (-usage[g], g))
    depth_of = {g: d for d, g in enumerate(order)}
    by_depth = [[] for _ in range(n + 1)]
    for rel, gens in zip(presentation.relators, rel_gens):
        depth = max(depth_of[g] for g in gens) + 1
        by_depth[depth].append(rel.letters)
    return order, by_depth


def _search(
    presentation: Presentation,
    m: int,
    predicate,
    max_representatives: int,
    first_image_indices=None,
):
    n = presentation.generator_count
    order, by_depth = _search_plan(presentation)
    perms = [Permutation(t) for t in itertools.permutations(range(m))]
    ident = tuple(range(m))
    images: list = [None] * n
    count = 0
    reps: list = []  # sorted (key, images tuple) pairs, capped

    def relators_hold(depth: int) -> bool:
        for letters in by_depth[depth]:
            point_map = list(range(m))
            for let in letters:
                img = images[abs(let) - 1]
                table = img.images if let > 0 else img.inverse().images
                point_map = [table[x] for x in point_map]
            if tuple(point_map) != ident:
                return False
        return True

    def leaf():
        nonlocal count
        if not predicate(tuple(images), m):
            return
        count += 1
        if max_representatives > 0:
            key = tuple(p.images for p in images)
            if len(reps) < max_representatives:
                insort(reps, key)
            elif key < reps[-1]:
                insort(reps, key)
                reps.pop()

    def descend(depth: int):
        if depth == n:
            leaf()
            return
        gen = order[depth]
        choices = perms
        if depth == 0 and first_image_indices is not None:
            choices = [perms[i] for i in first_image_indices]
        for p in choices:
            images[gen] = p
            if relators_hold(depth + 1):
                descend(depth + 1)
        images[gen] = None

    if n == 0:
        # the trivial group has exactly one homomorphism anywhere
        if predicate((), m):
            count = 1
        return count, []
    descend(0)
    return count, reps


def _search_shard(args):
    pres_json, m, predicate_name, max_reps, shard = args
    presentation = Presentation.from_json(pres_json)
    return _search(presentation, m, PREDICATES[predicate_name], max_reps, shard)


def enumerate_homs(
    presentation: Presentation,
    m: int,
    predicate: str = "all",
    max_representatives: int = 10,
    search_bound: int = DEFAULT_SEARCH_BOUND,
    workers: int = 1,
) -> CensusResult:
    """Exact census of homomorphisms into S_m whose image satisfies the
    predicate; counts are raw (no conjugacy deduplication), and
    representatives are the lexicographically smallest image tuples.
    """
    if m < 1:
        raise InvalidInputError("target degree must be >= 1")
    if predicate not in PREDICATES:
        raise InvalidInputError(
            f"unknown predicate {predicate!r}; choose from {sorted(PREDICATES)}"
        )
    n = presentation.generator_count
    if n and factorial(m) ** n > search_bound:
        raise BoundExceededError(
            f"unpruned search space {factorial(m)}^{n} exceeds bound {search_bound}"
        )
    pred = PREDICATES[predicate]
    if workers <= 1 or n == 0:
        count, reps = _search(presentation, m, pred, max_representatives)
    else:
        nperms = factorial(m)
        shards = [list(range(i, nperms, workers)) for i in range(workers)]
        args = [
            (presentation.to_json(), m, predicate, max_representatives, shard)
            for shard in shards
        ]
        count = 0
        merged = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for shard_count, shard_reps in pool.map(_search_shard, args):
                count += shard_count
                merged.extend(shard_reps)
        merged.sort()
        reps = merged[:max_representatives]
    representatives = tuple(
        GeneratorAssignment(
            presentation, m, tuple(Permutation(t) for t in key)
        )
        for key in reps
    )
    return CensusResult(count, representatives)


def direct_sum(assignments) -> GeneratorAssignment:
    """Block-diagonal sum of assignments over one shared presentation."""
    assignments = list(assignments)
    if not assignments:
        raise InvalidInputError("direct_sum needs at least one assignment")
    base = assignments[0].presentation
    for a in assignments[1:]:
        if a.presentation != base:
            raise InvalidInputError("assignments must share one presentation")
    total = sum(a.degree for a in assignments)
    images = []
    for gi in range(base.generator_count):
        block = []
        offset = 0
        for a in assignments:
            block.extend(x + offset for x in a.images[gi].images)
            offset += a.degree
        images.append(Permutation(tuple(block)))
    return GeneratorAssignment(base, total, tuple(images))


# ---------------------------------------------------------------------------
# canned representations with transitive, imprimitive, non-abelian images


def _genus1_assignment(
    presentation: Presentation, degree: int, a_img: str, b_img: str, s_img: str
) -> GeneratorAssignment:
    a = parse_cycles(a_img, degree)
    b = parse_cycles(b_img, degree)
    s = parse_cycles(s_img, degree)
    images = []
    for name in presentation.generator_names:
        if name == "a1":
            images.append(a)
        elif name == "b1":
            images.append(b)
        elif name.startswith("sigma"):
            images.append(s)
        else:
            raise InvalidInputError(
                f"presentation has unexpected generator {name!r} for a genus-1 assignment"
            )
    return GeneratorAssignment(presentation, degree, tuple(images))


def imprimitive_s8_assignment(
    strands: int = 4, presentation: Presentation | None = None
) -> GeneratorAssignment:
    """The degree-8 representation of the genus-1 surface braid group: two
    blocks of four rotated by sigma, swapped by b1; transitive with a
    non-abelian image."""
    if presentation is None:
        if strands < 3 or strands % 2:
            raise InvalidInputError("the degree-8 assignment needs an even strand count >= 4")
        presentation = closed_orientable(1, strands)
    return _genus1_assignment(
        presentation,
        8,
        "(1,3)(2,4)",
        "(1,5)(2,6)(3,7)(4,8)",
        "(1,2,3,4)(5,6,7,8)",
    )


_S16_IMAGES = {
    "a1": "(1,3)(2,4)(9,11)(10,12)",
    "a2": "(1,3)(2,4)(5,7)(6,8)",
    "b1": "(1,5)(2,6)(3,7)(4,8)(9,13)(10,14)(11,15)(12,16)",
    "b2": "(1,9)(2,10)(3,11)(4,12)(5,13)(6,14)(7,15)(8,16)",
    "sigma": "(1,2,3,4)(5,6,7,8)(9,10,11,12)(13,14,15,16)",
}

_S32_IMAGES = {
    "a1": "(1,3)(2,4)(9,11)(10,12)(17,19)(18,20)(25,27)(26,28)",
    "a2": "(1,3)(2,4)(5,7)(6,8)(17,19)(18,20)(21,23)(22,24)",
    "a3": "(1,3)(2,4)(5,7)(6,8)(9,11)(10,12)(13,15)(14,16)",
    "b1": "(1,5)(2,6)(3,7)(4,8)(9,13)(10,14)(11,15)(12,16)"
    "(17,21)(18,22)(19,23)(20,24)(25,29)(26,30)(27,31)(28,32)",
    "b2": "(1,9)(2,10)(3,11)(4,12)(5,13)(6,14)(7,15)(8,16)"
    "(17,25)(18,26)(19,27)(20,28)(21,29)(22,30)(23,31)(24,32)",
    "b3": "(1,17)(2,18)(3,19)(4,20)(5,21)(6,22)(7,23)(8,24)"
    "(9,25)(10,26)(11,27)(12,28)(13,29)(14,30)(15,31)(16,32)",
    "sigma": "(1,2,3,4)(5,6,7,8)(9,10,11,12)(13,14,15,16)"
    "(17,18,19,20)(21,22,23,24)(25,26,27,28)(29,30,31,32)",
}


def imprimitive_s16_assignment() -> GeneratorAssignment:
    """Degree-16 genus-2 analogue of the block representation (four blocks
    of four, block-swapping b generators)."""
    presentation = class2_quotient_presentation(2, 3)
    return GeneratorAssignment.from_json(presentation, {"degree": 16, "images": _S16_IMAGES})


def imprimitive_s32_assignment() -> GeneratorAssignment:
    """Degree-32 genus-3 analogue of the block representation."""
    presentation = class2_quotient_presentation(3, 4)
    return GeneratorAssignment.from_json(presentation, {"degree": 32, "images": _S32_IMAGES})


def wreath_cycle_assignment(
    block_count: int, presentation: Presentation | None = None
) -> GeneratorAssignment:
    """Representation of the genus-1 class-2 quotient inside the wreath-type
    subgroup of S_(2*l*l): l blocks of size 2l, with

    * a1 rotating block i by 2i,
    * b1 cycling the blocks,
    * sigma rotating every block by one step.

    Valid on the class-2 quotient presentation for any strand count that
    block_count divides; the sigma image has order 2*l.
    """
    l = block_count
    if l < 3:
        raise InvalidInputError("need at least 3 blocks")
    if presentation is None:
        presentation = class2_quotient_presentation(1, l)
    size = 2 * l
    degree = l * size

    def point(i: int, c: int) -> int:
        return (i % l) * size + (c % size)

    a_img = [0] * degree
    b_img = [0] * degree
    s_img = [0] * degree
    for i in range(l):
        for c in range(size):
            src = point(i, c)
            a_img[src] = point(i, c + 2 * i)
            # block shift direction chosen so that [a1, b1] evaluates to
            # sigma^2 under left-to-right composition
            b_img[src] = point(i - 1, c)
            s_img[src] = point(i, c + 1)
    a = Permutation(tuple(a_img))
    b = Permutation(tuple(b_img))
    s = Permutation(tuple(s_img))
    images = []
    for name in presentation.generator_names:
        if name == "a1":
            images.append(a)
        elif name == "b1":
            images.append(b)
        elif name.startswith("sigma"):
            images.append(s)
        else:
            raise InvalidInputError(
                f"presentation has unexpected generator {name!r} for a genus-1 assignment"
            )
    return GeneratorAssignment(presentation, degree, tuple(images))


def composite_s408_assignment() -> GeneratorAssignment:
    """Block-diagonal sum of the wreath-type representations for block
    counts 3, 5, 7, 11 on the 1155-strand class-2 quotient; the sigma
    image has order lcm(6, 10, 14, 22) = 2310 inside S_408."""
    presentation = class2_quotient_presentation(1, 3 * 5 * 7 * 11)
    parts = [wreath_cycle_assignment(l, presentation) for l in (3, 5, 7, 11)]
    return direct_sum(parts)


_BUILTIN_ASSIGNMENTS = {
    "imprimitive-s8": imprimitive_s8_assignment,
    "imprimitive-s16": imprimitive_s16_assignment,
    "imprimitive-s32": imprimitive_s32_assignment,
    "wreath-cycle": wreath_cycle_assignment,
    "composite-s408": composite_s408_assignment,
}


def builtin_assignment(name: str, **kwargs) -> GeneratorAssignment:
    """Look up one of the canned representations by name."""
    if name not in _BUILTIN_ASSIGNMENTS:
        raise InvalidInputError(
            f"unknown assignment {name!r}; choose from {sorted(_BUILTIN_ASSIGNMENTS)}"
        )
    return _BUILTIN_ASSIGNMENTS[name](**kwargs)
