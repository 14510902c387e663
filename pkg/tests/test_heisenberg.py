import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heisweil.heisenberg import (
    HElem,
    HeisenbergAutomorphism,
    HeisenbergGroup,
    SpecialIso,
    all_special_isos,
    graph_subgroup_offset,
    involution_from_polarization,
    order_two_automorphisms_inverting_center,
    order_two_automorphisms_trivial_on_center,
    polarization_from_involution,
    special_iso_equal_tests,
    special_iso_from_split_polarization,
    split_polarization_from_iso,
)
from heisweil.symplectic import SpElement, SymplecticSpace


@pytest.fixture(scope="module")
def h3():
    return HeisenbergGroup(SymplecticSpace(3, 1))


@pytest.fixture(scope="module")
def h5():
    return HeisenbergGroup(SymplecticSpace(5, 1))


def test_multiplication_example(h3):
    e1, e2 = h3.from_w((1, 0)), h3.from_w((0, 1))
    prod = h3.mul(e1, e2)
    assert prod == HElem((1, 1), 2)  # (1/2)<e1,e2> = 2*1 in F_3


def test_identity_and_inverse(h3):
    for h in h3.elements():
        assert h3.mul(h, h3.identity()) == h
        assert h3.mul(h, h3.inv(h)) == h3.identity()


def test_group_axioms_exhaustive_p3(h3):
    els = h3.elements()
    assert len(els) == 27
    for a, b, c in itertools.product(els, repeat=3):
        assert h3.mul(h3.mul(a, b), c) == h3.mul(a, h3.mul(b, c))


_H5 = HeisenbergGroup(SymplecticSpace(5, 1))


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_group_axioms_random_p5(data):
    els = _H5.elements()
    a = data.draw(st.sampled_from(els))
    b = data.draw(st.sampled_from(els))
    c = data.draw(st.sampled_from(els))
    assert _H5.mul(_H5.mul(a, b), c) == _H5.mul(a, _H5.mul(b, c))


def test_center_equals_commutator_subgroup(h3):
    comms = {
        h3.mul(h3.mul(a, b), h3.mul(h3.inv(a), h3.inv(b)))
        for a in h3.elements()
        for b in h3.elements()
    }
    assert h3.subgroup_generated(comms) == h3.center()


def test_commutator_examples(h3):
    e1, e2 = h3.from_w((1, 0)), h3.from_w((0, 1))
    assert h3.commutator(e1, e2) == 1
    assert h3.commutator(h3.element((1, 0), 2), h3.element((1, 0), 1)) == 0
    assert h3.commutator(h3.central(2), e1) == 0


def test_commutator_equals_form(h3):
    for a, b in itertools.product(h3.elements(), repeat=2):
        assert h3.commutator(a, b) == h3.space.pair(a.w, b.w)


# -- special isomorphisms ------------------------------------------------------


def test_special_iso_count_and_torsor(h3):
    # |W| = p^(2l) = 9 of them; W acts simply transitively via the offset
    isos = all_special_isos(h3)
    assert len(isos) == 3 ** 2
    assert len({nu.offset for nu in isos}) == 9
    # distinct offsets give distinct maps (simply transitive W-action)
    mu_tables = {tuple(nu.mu(h) for h in h3.elements()) for nu in isos}
    assert len(mu_tables) == 9


def test_special_iso_axioms(h3):
    for nu in all_special_isos(h3)[:9]:
        assert nu.check_axioms()


def test_base_iso_from_standard_split_polarization(h3):
    nu = special_iso_from_split_polarization(
        h3, h3.plus_subgroup(), h3.minus_subgroup()
    )
    assert nu.offset == (0, 0)


def test_conjugated_split_polarization_shifts_offset(h3):
    g0 = h3.element((1, 2), 0)
    hplus = frozenset(h3.conjugate(g0, h) for h in h3.plus_subgroup())
    hminus = frozenset(h3.conjugate(g0, h) for h in h3.minus_subgroup())
    nu = special_iso_from_split_polarization(h3, hplus, hminus)
    assert nu.offset != (0, 0)
    # uniqueness: exactly one special iso maps both sides into W x 1
    matching = [
        candidate
        for candidate in all_special_isos(h3)
        if all(candidate.mu(h) == 0 for h in hplus)
        and all(candidate.mu(h) == 0 for h in hminus)
    ]
    assert matching == [nu]


def test_split_polarization_from_iso_base(h3):
    hminus = split_polarization_from_iso(
        SpecialIso(h3, (0, 0)), h3.plus_subgroup(), h3.minus_z_subgroup()
    )
    assert hminus == h3.minus_subgroup()


def test_split_from_iso_sizes_and_roundtrip(h3):
    for nu in all_special_isos(h3):
        hminus = split_polarization_from_iso(
            nu, h3.plus_subgroup(), h3.minus_z_subgroup()
        )
        assert len(hminus) == 3  # p^l
        if all(nu.mu(h) == 0 for h in h3.plus_subgroup()):
            back = special_iso_from_split_polarization(
                h3, h3.plus_subgroup(), hminus
            )
            assert back.offset == nu.offset


def test_special_iso_equal_tests_trichotomy(h3):
    isos = all_special_isos(h3)
    nu0 = isos[0]
    t = special_iso_equal_tests(nu0, nu0)
    assert t == (True, True, True)
    t = special_iso_equal_tests(isos[1], isos[2])
    assert t == (False, False, False)


# -- automorphisms --------------------------------------------------------------


def test_involution_from_polarization_formula(h3):
    alpha = involution_from_polarization(h3)
    # e1 in W+: w-part fixed, center negated
    assert alpha.apply(h3.element((1, 0), 1)) == h3.element((1, 0), -1)
    assert alpha.is_order_two()
    assert alpha.is_automorphism()


def test_polarization_from_involution_roundtrip(h3):
    alpha = involution_from_polarization(h3)
    hplus, hhat = polarization_from_involution(alpha)
    assert hplus == h3.plus_subgroup()
    assert hhat == frozenset(
        h3.element((0, y), z) for y in range(3) for z in range(3)
    )
    assert len(hplus) == 3 and len(hhat) == 9  # p^l and p^(l+1)
    # Hhat^- = {h : h * alpha(h) central}
    assert hhat == frozenset(
        h for h in h3.elements() if not any(h3.mul(h, alpha.apply(h)).w)
    )


def test_central_sign_must_match_matrix_sign(h3):
    s = SpElement(h3.space, [[1, 0], [0, -1]], -1)
    with pytest.raises(ValueError):
        HeisenbergAutomorphism(h3, s, (0, 0), 1)


@pytest.mark.parametrize("p", [3, 5])
def test_order_two_trivial_on_center_crosscheck(p):
    g = HeisenbergGroup(SymplecticSpace(p, 1))
    listed = order_two_automorphisms_trivial_on_center(g)
    for alpha in listed[:10]:
        assert alpha.is_order_two() and alpha.is_automorphism()
        assert all(alpha.apply(z) == z for z in g.center())
    # brute-force cross-check over all (s, w0) candidates
    from heisweil.symplectic import enumerate_sp

    brute = 0
    for s in enumerate_sp(g.space):
        for w0 in itertools.product(range(p), repeat=2):
            cand = HeisenbergAutomorphism(g, s, w0, 1)
            if cand.is_order_two():
                brute += 1
    assert brute == len(listed)
    # no inner automorphism has order two for odd p
    assert not any(a.s.is_identity() for a in listed)


@pytest.mark.parametrize("p", [3, 5])
def test_order_two_inverting_center_all_give_polarizations(p):
    g = HeisenbergGroup(SymplecticSpace(p, 1))
    alphas = order_two_automorphisms_inverting_center(g)
    assert alphas, "there must be involutions inverting the center"
    for alpha in alphas:
        hplus, hhat = polarization_from_involution(alpha)
        # images are the +-1 eigenspaces of the reduced map
        from heisweil.symplectic import eigen_polarization

        plus, minus = eigen_polarization(alpha.s)
        from heisweil.symplectic import span_mod

        assert g.image_in_w(hplus) == span_mod(plus, p, 2)
        assert g.image_in_w(hhat) == span_mod(minus, p, 2)


def test_subgroup_count_p3(h3):
    subs = h3.all_subgroups()
    # extraspecial group of order 27, exponent 3: 1 + 13 + 4 + 1 subgroups
    assert len(subs) == 19
    by_size = {}
    for s in subs:
        by_size.setdefault(len(s), 0)
        by_size[len(s)] += 1
    assert by_size == {1: 1, 3: 13, 9: 4, 27: 1}


def test_special_iso_restriction_to_nondegenerate_subspace():
    # an ell=2 space, restricted to the span of (e1, e3): restriction of any
    # special isomorphism is again one (checked through the mu axioms)
    big = HeisenbergGroup(SymplecticSpace(3, 2))
    small_space = SymplecticSpace(3, 1)
    small = HeisenbergGroup(small_space)
    embed = lambda h: big.element(
        (h.w[0], 0, h.w[1], 0), h.z
    )  # e1 -> e1, e2 -> e3
    # the embedding preserves the form, hence multiplication
    for a in small.elements():
        for b in small.elements():
            assert embed(small.mul(a, b)) == big.mul(embed(a), embed(b))
    rng = random.Random(1)
    for _ in range(5):
        w0 = tuple(rng.randrange(3) for _ in range(4))
        nu_big = SpecialIso(big, w0)
        mu_small = {h: nu_big.mu(embed(h)) for h in small.elements()}
        # restriction satisfies both special-isomorphism axioms
        for z in range(3):
            assert mu_small[small.central(z)] == z
        for a in small.elements():
            for b in small.elements():
                lhs = mu_small[small.mul(a, b)]
                rhs = (
                    mu_small[a]
                    + mu_small[b]
                    + small.half * small.commutator(a, b)
                ) % 3
                assert lhs == rhs


def test_graph_subgroup_offset_identity(h3):
    # conjugating W+ x 0 by (w0, 0) gives the graph of w -> <w, w0>
    w0 = (1, 2)
    g0 = h3.from_w(w0)
    conj = frozenset(
        h3.mul(h3.mul(h3.inv(g0), h), g0) for h in h3.plus_subgroup()
    )
    off = graph_subgroup_offset(h3, conj)
    for h in h3.plus_subgroup():
        moved = h3.mul(h3.mul(h3.inv(g0), h), g0)
        assert moved == HElem(h.w, h3.space.pair(h.w, off))
