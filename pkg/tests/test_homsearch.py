import itertools
import random
from math import factorial

import pytest

from braidkit.errors import BoundExceededError, InvalidInputError
from braidkit.fpgroup import artin_presentation, class2_quotient_presentation, closed_orientable, nonorientable
from braidkit.homsearch import (
    GeneratorAssignment,
    classify_hom,
    composite_s408_assignment,
    direct_sum,
    enumerate_homs,
    imprimitive_s8_assignment,
    imprimitive_s16_assignment,
    imprimitive_s32_assignment,
    verify_hom,
    wreath_cycle_assignment,
)
from braidkit.permgrp import Permutation, closure, identity_perm, parse_cycles
from braidkit.permgrp import finite_group_invariants


def assignment(p, degree, images):
    perms = tuple(parse_cycles(s, degree) for s in images)
    return GeneratorAssignment(p, degree, perms)


# --- verification -----------------------------------------------------------


def test_all_identity_assignment_is_valid():
    p = closed_orientable(1, 3)
    a = GeneratorAssignment(p, 3, tuple(identity_perm(3) for _ in range(4)))
    assert verify_hom(p, a) is None


def test_braid_to_s3_classic_surjection():
    p = artin_presentation(4)
    a = assignment(p, 3, ["(1,2)", "(2,3)", "(1,2)"])
    assert verify_hom(p, a) is None


def test_surface_block_representation_is_valid():
    a = imprimitive_s8_assignment(4)
    assert a.presentation.family.surface == "closed-orientable"
    assert verify_hom(a.presentation, a) is None


def test_braid_relator_failure_is_reported_first():
    p = artin_presentation(3)
    a = assignment(p, 3, ["(1,2)", "(1,2,3)"])
    assert verify_hom(p, a) == 1


def test_verify_arity_mismatch():
    p = artin_presentation(4)
    with pytest.raises(InvalidInputError):
        GeneratorAssignment(p, 3, (identity_perm(3),))


# --- classification -----------------------------------------------------------


def test_block_representation_classification():
    a = imprimitive_s8_assignment(4)
    c = classify_hom(a.presentation, a)
    assert c.valid
    assert c.transitive
    assert not c.primitive
    assert not c.abelian
    # index-2 subgroup of the degree-8 centralizer of the sigma image
    assert c.image_order == 16


def test_trivial_assignment_classification():
    p = closed_orientable(1, 5)
    a = GeneratorAssignment(p, 3, tuple(identity_perm(3) for _ in range(6)))
    c = classify_hom(p, a)
    assert not c.transitive
    assert c.image_order == 1
    assert c.cyclic


def test_surjective_assignment_classification():
    p = artin_presentation(4)
    a = assignment(p, 3, ["(1,2)", "(2,3)", "(1,2)"])
    c = classify_hom(p, a)
    assert c.surjective_onto_sym
    assert c.primitive
    assert c.transitive


def test_classify_rejects_invalid_hom():
    p = artin_presentation(3)
    a = assignment(p, 3, ["(1,2)", "(1,2,3)"])
    with pytest.raises(InvalidInputError) as err:
        classify_hom(p, a)
    assert err.value.failing_relator == 1


# --- censuses -------------------------------------------------------------------


def brute_transitive_count_artin4_to_s3():
    perms = [Permutation(t) for t in itertools.permutations(range(3))]
    ident = identity_perm(3)
    count = 0
    for s1 in perms:
        for s2 in perms:
            for s3 in perms:
                if (s1 * s2 * s1) != (s2 * s1 * s2):
                    continue
                if (s2 * s3 * s2) != (s3 * s2 * s3):
                    continue
                if (s1 * s3) != (s3 * s1):
                    continue
                moved = set()
                for g in (s1, s2, s3):
                    moved.update(i for i in range(3) if g.images[i] != i)
                reached = {0}
                frontier = [0]
                while frontier:
                    x = frontier.pop()
                    for g in (s1, s2, s3):
                        y = g.images[x]
                        if y not in reached:
                            reached.add(y)
                            frontier.append(y)
                if len(reached) == 3:
                    count += 1
    return count


def test_transitive_census_artin4_s3():
    result = enumerate_homs(artin_presentation(4), 3, predicate="transitive")
    assert result.count == 8
    assert result.count == brute_transitive_count_artin4_to_s3()


def brute_total_hom_count(p, m):
    perms = [Permutation(t) for t in itertools.permutations(range(m))]
    ident = tuple(range(m))
    count = 0
    for combo in itertools.product(perms, repeat=p.generator_count):
        ok = True
        for rel in p.relators:
            point = list(range(m))
            for let in rel.letters:
                img = combo[abs(let) - 1]
                table = img.images if let > 0 else img.inverse().images
                point = [table[x] for x in point]
            if tuple(point) != ident:
                ok = False
                break
        count += ok
    return count


def test_total_census_matches_naive_enumeration():
    cases = [
        (nonorientable(1, 3), 3),
        (closed_orientable(0, 3), 3),
        (closed_orientable(1, 2), 2),
        (artin_presentation(3), 3),
    ]
    for p, m in cases:
        assert enumerate_homs(p, m, predicate="all").count == brute_total_hom_count(p, m)


def test_surjective_census_closed_genus1_five_strands_is_empty():
    assert enumerate_homs(closed_orientable(1, 5), 3, predicate="surjective").count == 0


def test_surjective_census_nonorientable_five_strands_is_empty():
    assert enumerate_homs(nonorientable(1, 5), 3, predicate="surjective").count == 0


def test_surjective_census_four_strands_is_nonempty():
    result = enumerate_homs(closed_orientable(1, 4), 3, predicate="surjective")
    assert result.count == 6
    witness = assignment(
        closed_orientable(1, 4), 3, ["()", "()", "(1,2)", "(2,3)", "(1,2)"]
    )
    assert verify_hom(witness.presentation, witness) is None


def test_primitive_census_composite_degree_is_empty():
    assert enumerate_homs(closed_orientable(1, 5), 4, predicate="primitive").count == 0


def test_surjective_representatives_have_full_image():
    result = enumerate_homs(
        closed_orientable(1, 4), 3, predicate="surjective", max_representatives=6
    )
    for rep in result.representatives:
        c = classify_hom(rep.presentation, rep)
        assert c.surjective_onto_sym and c.image_order == factorial(3)
        assert not c.primitive or c.transitive


def test_representatives_pass_verification_and_are_sorted():
    result = enumerate_homs(artin_presentation(4), 3, predicate="transitive", max_representatives=8)
    assert len(result.representatives) == 8
    keys = [tuple(p.images for p in rep.images) for rep in result.representatives]
    assert keys == sorted(keys)
    for rep in result.representatives:
        assert verify_hom(rep.presentation, rep) is None


def test_census_count_is_conjugation_invariant():
    rng = random.Random(14)
    base = enumerate_homs(artin_presentation(4), 3, predicate="transitive").count
    # conjugating every image by a fixed permutation permutes the census,
    # so filtering through a relabeled predicate gives the same count
    for _ in range(5):
        images = list(range(3))
        rng.shuffle(images)
        h = Permutation(tuple(images))

        def relabeled(images_tuple, m, h=h):
            conj = tuple(h.inverse() * p * h for p in images_tuple)
            from braidkit.permgrp import orbits

            return len(orbits(list(conj), m)) == 1

        from braidkit.homsearch import _search

        count, _ = _search(artin_presentation(4), 3, relabeled, 0)
        assert count == base


def test_search_bound_guard():
    with pytest.raises(BoundExceededError):
        enumerate_homs(closed_orientable(2, 5), 6, search_bound=10**6)


def test_worker_sharding_matches_serial_search():
    serial = enumerate_homs(artin_presentation(4), 3, predicate="transitive", max_representatives=5)
    parallel = enumerate_homs(
        artin_presentation(4), 3, predicate="transitive", max_representatives=5, workers=2
    )
    assert parallel.count == serial.count
    assert [a.to_json() for a in parallel.representatives] == [
        a.to_json() for a in serial.representatives
    ]


# --- image constraints over the full census ----------------------------------------


@pytest.mark.parametrize("g,n,m", [(1, 5, 3), (2, 5, 3), (1, 5, 4)])
def test_all_homs_have_equal_sigma_images_and_nilpotent_image(g, n, m):
    p = closed_orientable(g, n)
    result = enumerate_homs(p, m, predicate="all", max_representatives=10**6)
    assert result.count == len(result.representatives)
    sigma_indices = [
        i for i, name in enumerate(p.generator_names) if name.startswith("sigma")
    ]
    for rep in result.representatives:
        sigmas = {rep.images[i].images for i in sigma_indices}
        assert len(sigmas) == 1
        image = closure(list(rep.images), factorial(m))
        inv = finite_group_invariants(image)
        # nilpotency class at most 2: the third term of the series is trivial
        assert 1 in inv.lcs_orders[:3]


# --- direct sums -----------------------------------------------------------------------


def test_direct_sum_of_single_assignment_is_identity():
    a = imprimitive_s8_assignment(4)
    s = direct_sum([a])
    assert s.degree == 8
    assert s.images == a.images


def test_direct_sum_of_two_s2_blocks():
    p = artin_presentation(2)
    a = assignment(p, 2, ["(1,2)"])
    s = direct_sum([a, a])
    assert s.degree == 4
    assert s.images[0].cycle_string() == "(1,2)(3,4)"
    assert verify_hom(p, s) is None


def test_direct_sum_requires_matching_presentations():
    a = imprimitive_s8_assignment(4)
    b = imprimitive_s8_assignment(6)
    with pytest.raises(InvalidInputError):
        direct_sum([a, b])


def test_direct_sum_sigma_order_is_lcm_of_blocks():
    p = class2_quotient_presentation(1, 15)
    parts = [wreath_cycle_assignment(l, p) for l in (3, 5)]
    total = direct_sum(parts)
    assert total.image_of("sigma").order() == 30  # lcm(6, 10)
    assert verify_hom(p, total) is None


# --- canned representations ----------------------------------------------------------------


def test_wreath_assignment_at_three_blocks():
    a = wreath_cycle_assignment(3)
    assert a.degree == 18
    assert verify_hom(a.presentation, a) is None
    assert a.image_of("sigma").order() == 6
    c = classify_hom(a.presentation, a)
    assert not c.abelian


def test_degree16_and_degree32_assignments_are_valid():
    for a in (imprimitive_s16_assignment(), imprimitive_s32_assignment()):
        assert verify_hom(a.presentation, a) is None
        c = classify_hom(a.presentation, a)
        assert c.transitive and not c.primitive and not c.abelian


def test_composite_representation_degree_408():
    a = composite_s408_assignment()
    assert a.degree == 408
    assert verify_hom(a.presentation, a) is None
    assert a.image_of("sigma").order() == 2310


# --- serialization ---------------------------------------------------------------------------


def test_assignment_json_round_trip():
    a = imprimitive_s8_assignment(4)
    data = a.to_json()
    assert data["images"]["a1"] == "(1,3)(2,4)"
    back = GeneratorAssignment.from_json(a.presentation, data)
    assert back == a
