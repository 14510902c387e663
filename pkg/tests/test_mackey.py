import random

import numpy as np
import pytest

from heisweil.linalg import CycMatrix
from heisweil.mackey import (
    InvolutionRecord,
    TableGroup,
    all_involutive_automorphisms,
    conjugate_involution,
    cyclic_group,
    dihedral_group,
    direct_product,
    double_cosets,
    fixed_subgroup,
    induced_hom_dim_oracle,
    inner_involution,
    inner_involutions,
    involution_orbits,
    m_K,
    mackey_hom_dim,
    orbmult_check,
    quaternion_group,
    s_theta,
    symmetric_group,
    twisted_classes,
)
from heisweil.reps import MatrixRep
from heisweil.scalar import CycNumber, root_of_unity
from heisweil.suites import (
    _abelian_characters,
    _trivial_rep,
    heisenberg_mackey_configurations,
    standard_mackey_configurations,
)


@pytest.fixture(scope="module")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="module")
def a3(s3):
    return sorted(
        next(s for a in range(6) if len(s := s3.subgroup_generated([a])) == 3)
    )


def test_table_group_rejects_bad_tables():
    with pytest.raises(ValueError):
        TableGroup([[0, 1], [1, 1]])  # not a group
    with pytest.raises(ValueError):
        TableGroup([[1, 0], [0, 1]])  # identity not at 0


def test_table_group_json_roundtrip(s3):
    again = TableGroup.from_json(s3.to_json())
    assert np.array_equal(again.table, s3.table)


def test_double_coset_examples(s3, a3):
    c2 = sorted(
        next(s for a in range(1, 6) if len(s := s3.subgroup_generated([a])) == 2)
    )
    assert len(double_cosets(s3, list(range(6)), list(range(6)))) == 1
    assert len(double_cosets(s3, a3, c2)) == 1
    assert len(double_cosets(s3, [0], [0])) == 6


def test_double_cosets_partition(s3, a3):
    c2 = sorted(
        next(s for a in range(1, 6) if len(s := s3.subgroup_generated([a])) == 2)
    )
    reps = double_cosets(s3, a3, c2)
    covered = set()
    for x in reps:
        covered |= {s3.mul(s3.mul(a, x), b) for a in a3 for b in c2}
    assert covered == set(range(6))


def test_mackey_hom_dim_s3_examples(s3, a3):
    c2 = sorted(
        next(s for a in range(1, 6) if len(s := s3.subgroup_generated([a])) == 2)
    )
    for chi in _abelian_characters(s3, a3, 3):
        assert mackey_hom_dim(s3, a3, chi, c2) == 1
        assert induced_hom_dim_oracle(s3, a3, chi, c2) == 1
    triv = _trivial_rep(s3, a3)
    assert mackey_hom_dim(s3, a3, triv, list(range(6))) == 1  # Frobenius


def test_oracle_equals_mackey_on_full_zoo():
    for label, tg, k_members, kappa, theta in standard_mackey_configurations():
        h_members = sorted(fixed_subgroup(tg, theta))
        assert mackey_hom_dim(tg, k_members, kappa, h_members) == (
            induced_hom_dim_oracle(tg, k_members, kappa, h_members)
        ), label


def test_oracle_equals_mackey_on_heisenberg_configs():
    for label, tg, k_members, kappa, theta in heisenberg_mackey_configurations():
        h_members = sorted(fixed_subgroup(tg, theta))
        assert mackey_hom_dim(tg, k_members, kappa, h_members) == (
            induced_hom_dim_oracle(tg, k_members, kappa, h_members)
        ), label


def test_involution_orbits_trivial_actor(s3):
    invs = [t for t in all_involutive_automorphisms(s3) if not t.is_identity()]
    orbits = involution_orbits(s3, invs, [0])
    assert all(len(o) == 1 for o in orbits)


def test_inner_involutions_by_transpositions_form_one_orbit(s3):
    transpositions = [
        a for a in range(1, 6) if s3.element_order(a) == 2
    ]
    invs = [inner_involution(s3, a) for a in transpositions]
    orbits = involution_orbits(s3, invs, range(6))
    assert len(orbits) == 1 and len(orbits[0]) == 3


def test_invstab_on_zoo_groups():
    for tg in (symmetric_group(3), dihedral_group(4), quaternion_group()):
        center = tg.center()
        theta = next(
            t for t in all_involutive_automorphisms(tg) if not t.is_identity()
        )
        for a in range(tg.order):
            stab = conjugate_involution(tg, a, theta).perm == theta.perm
            assert stab == (tg.mul(a, tg.inv(theta.apply(a))) in center)


def test_s_theta_central_twist_characterization(s3, a3):
    theta = next(
        t for t in all_involutive_automorphisms(s3) if not t.is_identity()
    )
    orbit = involution_orbits(s3, [theta], range(6))[0]
    k_orbit = next(
        o
        for o in involution_orbits(s3, orbit, a3)
        if any(t.perm == theta.perm for t in o)
    )
    members = s_theta(s3, a3, theta, k_orbit)
    center = s3.center()
    h = sorted(fixed_subgroup(s3, theta))
    for x in double_cosets(s3, a3, h):
        coset = {s3.mul(s3.mul(a, x), b) for a in a3 for b in h}
        has = any(s3.mul(gq, s3.inv(theta.apply(gq))) in center for gq in coset)
        assert (x in members) == has


def test_m_K_centerless_is_one(s3, a3):
    theta = next(
        t for t in all_involutive_automorphisms(s3) if not t.is_identity()
    )
    m, bound = m_K(s3, a3, theta)
    assert m == 1 and bound == 1  # trivial center: Z^1 = B^1 = {e}


def test_m_K_bound_two_on_quaternions():
    q8 = quaternion_group()
    theta = inner_involution(q8, 2)  # Int(i): order two modulo the center
    k = sorted(q8.subgroup_generated([2]))  # <i> contains the center
    m, bound = m_K(q8, k, theta)
    assert bound == 2 and m <= 2


def test_h1_bound_two_for_theta_trivial_on_center():
    # theta trivial on a C2 center: Z^1 = Z, B^1 = {e}, bound = 2
    q8 = quaternion_group()
    ident = InvolutionRecord(tuple(range(8)))
    center = q8.center()
    z1 = [z for z in center if ident.apply(z) == q8.inv(z)]
    b1 = {q8.mul(z, q8.inv(ident.apply(z))) for z in center}
    assert len(z1) == 2 and len(b1) == 1


def test_triangle_bijection_on_zoo():
    for label, tg, k_members, kappa, theta in standard_mackey_configurations()[:8]:
        h = sorted(fixed_subgroup(tg, theta))
        dcs = double_cosets(tg, k_members, h)
        classes = twisted_classes(tg, k_members, theta)
        assert len(dcs) == len(classes), label
        images = set()
        for x in dcs:
            tw = tg.mul(x, tg.inv(theta.apply(x)))
            images.add(next(i for i, c in enumerate(classes) if tw in c))
        assert images == set(range(len(classes))), label


def test_orbmult_formula_s3(s3, a3):
    theta = next(
        t for t in all_involutive_automorphisms(s3) if not t.is_identity()
    )
    for chi in _abelian_characters(s3, a3, 3):
        lhs, rhs, _ = orbmult_check(s3, a3, chi, theta)
        assert lhs == rhs


def test_orbmult_reduces_to_hom_dim_when_K_is_G(s3):
    from heisweil.reps import hom_dim

    theta = next(
        t for t in all_involutive_automorphisms(s3) if not t.is_identity()
    )
    triv = _trivial_rep(s3, range(6))
    lhs, rhs, details = orbmult_check(s3, list(range(6)), triv, theta)
    assert lhs == rhs == hom_dim(triv, sorted(fixed_subgroup(s3, theta)))


def test_contragredient_multiplicities_match(s3, a3):
    theta = next(
        t for t in all_involutive_automorphisms(s3) if not t.is_identity()
    )
    h = sorted(fixed_subgroup(s3, theta))
    for chi in _abelian_characters(s3, a3, 3):
        tilde_images = {k: chi.images[s3.inv(k)].transpose() for k in a3}
        chi_tilde = MatrixRep(group=s3, dim=1, images=tilde_images, conductor=3)
        assert induced_hom_dim_oracle(s3, a3, chi, h) == (
            induced_hom_dim_oracle(s3, a3, chi_tilde, h)
        )


def test_two_dimensional_kappa():
    # the standard 2-dimensional representation of S3 as kappa, K = G
    s3 = symmetric_group(3)
    from heisweil.weil import extend_from_generators

    rot = next(a for a in range(6) if s3.element_order(a) == 3)
    flip = next(a for a in range(6) if s3.element_order(a) == 2)
    w = root_of_unity(3, 1)
    n = 3
    gen_images = {
        rot: CycMatrix(n, [[w, CycNumber.zero(n)], [CycNumber.zero(n), w**2]]),
        flip: CycMatrix(
            n, [[CycNumber.zero(n), CycNumber.one(n)], [CycNumber.one(n), CycNumber.zero(n)]]
        ),
    }
    els = list(range(6))
    images = extend_from_generators(
        els, {e: e for e in els}, s3.table, gen_images, 0, CycMatrix.identity(n, 2)
    )
    assert images is not None
    kappa = MatrixRep(group=s3, dim=2, images=images, conductor=n)
    theta = next(
        t for t in all_involutive_automorphisms(s3) if not t.is_identity()
    )
    lhs, rhs, _ = orbmult_check(s3, els, kappa, theta)
    assert lhs == rhs
    h = sorted(fixed_subgroup(s3, theta))
    assert mackey_hom_dim(s3, els, kappa, h) == induced_hom_dim_oracle(
        s3, els, kappa, h
    )


def test_direct_product_and_cyclic():
    c6 = direct_product(cyclic_group(2), cyclic_group(3))
    assert c6.order == 6
    orders = sorted(c6.element_order(a) for a in range(6))
    assert orders == [1, 2, 3, 3, 6, 6]
