"""Induced representations and twisted involution bookkeeping on finite groups.

Groups are multiplication tables (:class:`TableGroup`), so everything here
is generic: the same code runs on symmetric / dihedral / quaternion test
groups and on the Heisenberg group W x| F_p or Sp(W) x| H exported from the
other modules.

The two Hom-dimension computations are deliberately independent:

- :func:`mackey_hom_dim` sums dim Hom_{K ^ gHg^-1}(kappa, 1) over double
  cosets KgH, the double-coset decomposition of Hom_H(Ind kappa, 1);
- :func:`induced_hom_dim_oracle` materializes Ind_K^G(kappa) as explicit
  block matrices and takes the exact trace of the averaging projector
  over H, never mentioning double cosets.

Their agreement on every configuration is the module-level theorem check.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from heisweil.linalg import CycMatrix
from heisweil.reps import MatrixRep, hom_dim

__all__ = [
    "InvolutionRecord",
    "TableGroup",
    "all_involutive_automorphisms",
    "conjugate_involution",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
    "double_cosets",
    "fixed_subgroup",
    "induced_hom_dim_oracle",
    "inner_involution",
    "inner_involutions",
    "involution_orbits",
    "m_K",
    "mackey_hom_dim",
    "orbmult_check",
    "quaternion_group",
    "s_theta",
    "symmetric_group",
    "table_group_from_mul",
    "twisted_classes",
]


class TableGroup:
    """A finite group given by its multiplication table on indices 0..n-1,
    with the identity at index 0."""

    def __init__(self, table, names=None):
        self.table = np.array(table, dtype=np.int64)
        n = self.table.shape[0]
        assert self.table.shape == (n, n)
        self.order = n
        self.names = names if names is not None else list(range(n))
        if not all(self.table[0, j] == j and self.table[j, 0] == j for j in range(n)):
            raise ValueError("index 0 must be the identity")
        self.inverse_of = np.zeros(n, dtype=np.int64)
        for i in range(n):
            js = np.nonzero(self.table[i] == 0)[0]
            if len(js) != 1 or self.table[js[0], i] != 0:
                raise ValueError("table lacks two-sided inverses")
            self.inverse_of[i] = js[0]
        # associativity spot check is O(n^3); keep it for n <= 64
        if n <= 64:
            t = self.table
            for a in range(n):
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise ValueError("table is not associative")

    # group protocol shared with HeisenbergGroup
    def elements(self):
        return list(range(self.order))

    def identity(self):
        return 0

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverse_of[a])

    def conjugate(self, g, h):
        return self.mul(self.mul(g, h), self.inv(g))

    def center(self) -> frozenset:
        return frozenset(
            z
            for z in range(self.order)
            if all(self.mul(z, g) == self.mul(g, z) for g in range(self.order))
        )

    def subgroup_generated(self, gens) -> frozenset:
        seen = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    ag = self.mul(a, g)
                    if ag not in seen:
                        seen.add(ag)
                        nxt.append(ag)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, subset) -> bool:
        subset = frozenset(subset)
        return 0 in subset and all(
            self.mul(a, b) in subset for a in subset for b in subset
        )

    def element_order(self, a) -> int:
        x, k = a, 1
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def to_json(self) -> str:
        return json.dumps(
            {"order": self.order, "table": self.table.tolist()}, sort_keys=True
        )

    @staticmethod
    def from_json(text: str) -> "TableGroup":
        data = json.loads(text)
        return TableGroup(data["table"])

    def __repr__(self):
        return f"TableGroup(order={self.order})"


def table_group_from_mul(elements, mul, identity) -> TableGroup:
    """Build a TableGroup from abstract elements and a multiplication map."""
    elements = list(elements)
    elements.remove(identity)
    elements = [identity] + elements
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    return TableGroup(table, names=elements)


# -- the test-group zoo ----------------------------------------------------------


def cyclic_group(n: int) -> TableGroup:
    return TableGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def dihedral_group(n: int) -> TableGroup:
    """Order 2n: elements (r, f) = rotation r, flip f in {0, 1}."""
    els = [(r, f) for f in (0, 1) for r in range(n)]

    def mul(a, b):
        (r1, f1), (r2, f2) = a, b
        # (r1, f1)(r2, f2): flips conjugate rotations
        r = (r1 + (r2 if f1 == 0 else -r2)) % n
        return (r, (f1 + f2) % 2)

    return table_group_from_mul(els, mul, (0, 0))


def symmetric_group(n: int) -> TableGroup:
    els = list(itertools.permutations(range(n)))

    def mul(a, b):  # (a b)(x) = a(b(x))
        return tuple(a[b[x]] for x in range(n))

    return table_group_from_mul(els, mul, tuple(range(n)))


def quaternion_group() -> TableGroup:
    """Q8 = {+-1, +-i, +-j, +-k} with the usual relations."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def split(x):
        sign = -1 if x.startswith("-") else 1
        return sign, x.lstrip("-")

    basic = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"),
        ("1", "k"): (1, "k"), ("i", "1"): (1, "i"), ("j", "1"): (1, "j"),
        ("k", "1"): (1, "k"), ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"),
        ("k", "k"): (-1, "1"), ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"), ("k", "i"): (1, "j"),
        ("i", "k"): (-1, "j"),
    }

    def mul(a, b):
        sa, ua = split(a)
        sb, ub = split(b)
        s, u = basic[(ua, ub)]
        sign = sa * sb * s
        return u if sign == 1 else "-" + u

    return table_group_from_mul(names, mul, "1")


def direct_product(g1: TableGroup, g2: TableGroup) -> TableGroup:
    els = [(a, b) for a in range(g1.order) for b in range(g2.order)]

    def mul(x, y):
        return (g1.mul(x[0], y[0]), g2.mul(x[1], y[1]))

    return table_group_from_mul(els, mul, (0, 0))


# -- involutions -----------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionRecord:
    """An automorphism of order <= 2 stored as a permutation of indices."""

    perm: tuple[int, ...]

    def apply(self, x: int) -> int:
        return self.perm[x]

    def is_valid(self, g: TableGroup) -> bool:
        p = self.perm
        if sorted(p) != list(range(g.order)):
            return False
        if any(p[p[x]] != x for x in range(g.order)):
            return False
        return all(
            p[g.mul(a, b)] == g.mul(p[a], p[b])
            for a in range(g.order)
            for b in range(g.order)
        )

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.perm))


def inner_involution(g: TableGroup, a: int) -> InvolutionRecord:
    return InvolutionRecord(tuple(g.conjugate(a, x) for x in range(g.order)))


def inner_involutions(g: TableGroup) -> list[InvolutionRecord]:
    """Int(a) of order <= 2, i.e. a^2 central; deduplicated."""
    out = {}
    center = g.center()
    for a in range(g.order):
        if g.mul(a, a) in center:
            rec = inner_involution(g, a)
            out[rec.perm] = rec
    return list(out.values())


def _minimal_generators(g: TableGroup) -> list[int]:
    gens: list[int] = []
    closure = frozenset([0])
    while len(closure) < g.order:
        best = None
        for a in range(g.order):
            if a in closure:
                continue
            new = g.subgroup_generated(gens + [a])
            if best is None or len(new) > best[0]:
                best = (len(new), a, new)
        gens.append(best[1])
        closure = best[2]
    return gens


def all_involutive_automorphisms(g: TableGroup) -> list[InvolutionRecord]:
    """Every automorphism of order <= 2, by generator-image search.

    Guarded to order <= 24 with at most 3 minimal generators.
    """
    if g.order > 24:
        raise ValueError("automorphism enumeration guarded to order <= 24")
    gens = _minimal_generators(g)
    if len(gens) > 3:
        raise ValueError("too many generators for the search")
    orders = {a: g.element_order(a) for a in range(g.order)}
    candidates = [
        [b for b in range(g.order) if orders[b] == orders[a]] for a in gens
    ]
    found = {}
    for images in itertools.product(*candidates):
        perm = _extend_hom(g, gens, images)
        if perm is None:
            continue
        rec = InvolutionRecord(perm)
        if all(perm[perm[x]] == x for x in range(g.order)):
            found[perm] = rec
    return list(found.values())


def _extend_hom(g: TableGroup, gens, images):
    """Extend gens -> images to a total endomorphism; None if inconsistent
    or not bijective."""
    phi = {0: 0}
    frontier = [0]
    gen_image = dict(zip(gens, images))
    while frontier:
        nxt = []
        for x in frontier:
            for a, ia in gen_image.items():
                xa = g.mul(x, a)
                val = g.mul(phi[x], ia)
                if xa in phi:
                    if phi[xa] != val:
                        return None
                else:
                    phi[xa] = val
                    nxt.append(xa)
        frontier = nxt
    if len(phi) != g.order or len(set(phi.values())) != g.order:
        return None
    perm = tuple(phi[x] for x in range(g.order))
    for a in range(g.order):
        for b in range(g.order):
            if perm[g.mul(a, b)] != g.mul(perm[a], perm[b]):
                return None
    return perm


def fixed_subgroup(g: TableGroup, theta: InvolutionRecord) -> frozenset:
    return frozenset(x for x in range(g.order) if theta.apply(x) == x)


def conjugate_involution(
    g: TableGroup, a: int, theta: InvolutionRecord
) -> InvolutionRecord:
    """a . theta = Int(a) o theta o Int(a^-1)."""
    ainv = g.inv(a)
    return InvolutionRecord(
        tuple(
            g.conjugate(a, theta.apply(g.conjugate(ainv, x)))
            for x in range(g.order)
        )
    )


def _generators_within(g: TableGroup, members) -> list[int]:
    """A small generating set of the subgroup given by ``members``."""
    members = sorted(frozenset(members))
    target = frozenset(members)
    gens: list[int] = []
    closure = frozenset([0])
    for a in members:
        if a in closure:
            continue
        gens.append(a)
        closure = g.subgroup_generated(gens)
        if closure == target:
            break
    assert closure == target, "actor is not a subgroup"
    return gens


def involution_orbits(g: TableGroup, thetas, actor) -> list[list[InvolutionRecord]]:
    """Partition of the given involutions under conjugation by the actor
    subgroup (orbits are computed with a generating set of the actor)."""
    thetas = list(thetas)
    if thetas and not thetas[0].is_valid(g):
        raise ValueError("input is not an involutive automorphism")
    gens = _generators_within(g, actor)
    remaining = {t.perm: t for t in thetas}
    orbits = []
    while remaining:
        _, seed = remaining.popitem()
        orbit = {seed.perm: seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for t in frontier:
                for a in gens:
                    moved = conjugate_involution(g, a, t)
                    if moved.perm not in orbit:
                        orbit[moved.perm] = moved
                        nxt.append(moved)
            frontier = nxt
        for key in orbit:
            remaining.pop(key, None)
        orbits.append(list(orbit.values()))
    return orbits


# -- double cosets and Mackey sums -------------------------------------------------


def double_cosets(g: TableGroup, k_sub, h_sub) -> list[int]:
    """One representative per double coset K g H; the cosets partition G."""
    k_sub, h_sub = sorted(k_sub), sorted(h_sub)
    if not (g.is_subgroup(k_sub) and g.is_subgroup(h_sub)):
        raise ValueError("double_cosets needs subgroups")
    remaining = set(range(g.order))
    reps = []
    while remaining:
        x = min(remaining)
        reps.append(x)
        coset = {g.mul(g.mul(a, x), b) for a in k_sub for b in h_sub}
        assert coset <= remaining
        remaining -= coset
    return reps


def mackey_hom_dim(g: TableGroup, k_sub, kappa: MatrixRep, h_sub) -> int:
    """Sum over double cosets KgH of dim Hom_{K ^ gHg^-1}(kappa, 1)."""
    k_set = frozenset(k_sub)
    total = 0
    for x in double_cosets(g, sorted(k_set), sorted(h_sub)):
        conj = k_set & frozenset(g.conjugate(x, h) for h in h_sub)
        total += hom_dim(kappa, sorted(conj))
    return total


def induced_hom_dim_oracle(
    g: TableGroup, k_sub, kappa: MatrixRep, h_sub, guard: int = 200_000
) -> int:
    """dim Hom_H(Ind_K^G kappa, 1) without Mackey theory.

    Builds the block-permutation matrices of the induced representation on
    the elements of H, averages them, and returns the exact trace of the
    idempotent averaging projector.
    """
    k_set = frozenset(k_sub)
    n = kappa.conductor
    d = kappa.dim
    # right-coset transversal of K\G
    remaining = set(range(g.order))
    transversal = []
    coset_of = {}
    while remaining:
        x = min(remaining)
        idx = len(transversal)
        transversal.append(x)
        for a in k_set:
            y = g.mul(a, x)
            coset_of[y] = idx
            remaining.discard(y)
    m = len(transversal)
    dim = m * d
    if dim * dim * len(list(h_sub)) > guard:
        raise ValueError("induced-representation oracle guard exceeded")

    acc = CycMatrix.zeros(n, dim, dim)
    members = sorted(h_sub)
    for h in members:
        rows = acc.rows
        for i, xi in enumerate(transversal):
            y = g.mul(xi, h)
            j = coset_of[y]
            kk = g.mul(y, g.inv(transversal[j]))  # x_i h = kk x_j
            assert kk in k_set
            block = kappa.images[kk]
            for a in range(d):
                for b in range(d):
                    rows[i * d + a][j * d + b] = (
                        rows[i * d + a][j * d + b] + block[a, b]
                    )
    tr = acc.trace() / len(members)
    if not tr.is_integer():
        raise AssertionError("projector trace must be a rational integer")
    val = int(tr.rational_value())
    assert val >= 0
    return val


# -- twisted classes and multiplicity bookkeeping ----------------------------------


def s_theta(
    g: TableGroup,
    k_sub,
    theta: InvolutionRecord,
    theta_orbit_prime: list[InvolutionRecord],
) -> list[int]:
    """S(theta, Theta') = double cosets K g G^theta with g.theta in Theta'."""
    h_sub = sorted(fixed_subgroup(g, theta))
    prime_keys = {t.perm for t in theta_orbit_prime}
    out = []
    for x in double_cosets(g, sorted(k_sub), h_sub):
        if conjugate_involution(g, x, theta).perm in prime_keys:
            out.append(x)
    return out


def twisted_classes(g: TableGroup, k_sub, theta: InvolutionRecord):
    """K-orbits on {g theta(g)^-1} under k . x = k x theta(k)^-1."""
    s_set = {g.mul(x, g.inv(theta.apply(x))) for x in range(g.order)}
    k_list = sorted(k_sub)
    remaining = set(s_set)
    classes = []
    while remaining:
        x = min(remaining)
        orbit = set()
        frontier = [x]
        orbit.add(x)
        while frontier:
            y = frontier.pop()
            for k in k_list:
                moved = g.mul(g.mul(k, y), g.inv(theta.apply(k)))
                if moved not in orbit:
                    orbit.add(moved)
                    frontier.append(moved)
        remaining -= orbit
        classes.append(sorted(orbit))
    return classes


def m_K(g: TableGroup, k_sub, theta: InvolutionRecord, orbit=None, k_orbits=None):
    """(m_K(Theta), |H^1_Theta| or None) for the G-orbit of theta.

    The bound |H^1| uses the center and is only meaningful when Z <= K;
    m_K <= |H^1| is asserted in that case.  ``orbit`` / ``k_orbits`` may be
    passed in when already computed.
    """
    k_set = frozenset(k_sub)
    if orbit is None:
        orbit = involution_orbits(g, [theta], range(g.order))[0]
    if k_orbits is None:
        k_orbits = involution_orbits(g, orbit, sorted(k_set))
    k_orbit = next(
        o for o in k_orbits if any(t.perm == theta.perm for t in o)
    )
    m = len(s_theta(g, sorted(k_set), theta, k_orbit))

    center = g.center()
    z1 = [z for z in center if theta.apply(z) == g.inv(z)]
    b1 = {g.mul(z, g.inv(theta.apply(z))) for z in center}
    bound = len(z1) // len(b1)
    if center <= k_set:
        assert m <= bound, f"m_K = {m} exceeds |H^1| = {bound}"
        return m, bound
    return m, None


# -- exports from the Heisenberg side ----------------------------------------------


def heisenberg_table_group(hgroup):
    """(TableGroup, names) for W x| F_p; names[i] is the HElem at index i."""
    els = hgroup.elements()
    tg = table_group_from_mul(els, hgroup.mul, hgroup.identity())
    return tg


def heisenberg_rep_on_table(tg: TableGroup, rep: MatrixRep) -> MatrixRep:
    images = {i: rep.images[name] for i, name in enumerate(tg.names)}
    return MatrixRep(
        group=tg, dim=rep.dim, images=images, conductor=rep.conductor
    )


def heisenberg_involution_record(tg: TableGroup, alpha) -> InvolutionRecord:
    index = {name: i for i, name in enumerate(tg.names)}
    return InvolutionRecord(
        tuple(index[alpha.apply(name)] for name in tg.names)
    )


def semidirect_table_group(space):
    """Sp(W) x| H as a TableGroup; names are (SpElement, HElem) pairs."""
    from heisweil.heisenberg import HeisenbergGroup
    from heisweil.weil import sp_table

    g = HeisenbergGroup(space)
    sels, sp_index, sp_tab = sp_table(space)
    hels = g.elements()
    h_index = {h: i for i, h in enumerate(hels)}
    hmul = [[h_index[g.mul(a, b)] for b in hels] for a in hels]
    act = [
        [h_index[g.element(s.apply(h.w), h.z)] for h in hels] for s in sels
    ]
    sp_inv = [sp_index[s.inverse()] for s in sels]
    names = [(si, hi) for si in range(len(sels)) for hi in range(len(hels))]

    def mul(x, y):
        (s1, h1), (s2, h2) = x, y
        return (int(sp_tab[s1, s2]), hmul[act[sp_inv[s2]][h1]][h2])

    ident = next(i for i, s in enumerate(sels) if s.is_identity())
    tg = table_group_from_mul(names, mul, (ident, 0))
    tg.names = [(sels[si], hels[hi]) for si, hi in tg.names]
    return tg, g


def semidirect_lift_rep(tg: TableGroup, lift) -> MatrixRep:
    """The Weil lift as a representation of the semidirect TableGroup."""
    images = {
        i: lift.sp_images[s] @ lift.base.images[h]
        for i, (s, h) in enumerate(tg.names)
    }
    return MatrixRep(
        group=tg,
        dim=lift.base.dim,
        images=images,
        conductor=lift.base.conductor,
    )


def semidirect_involution_record(tg: TableGroup, alpha) -> InvolutionRecord:
    """theta(s, h) = (abar s abar^-1, alpha(h)) for a central-inverting alpha."""
    abar = alpha.s
    abar_inv = abar.inverse()
    index = {}
    for i, (s, h) in enumerate(tg.names):
        index[(s._key, h)] = i
    perm = []
    for s, h in tg.names:
        moved_s = abar * s * abar_inv
        perm.append(index[(moved_s._key, alpha.apply(h))])
    return InvolutionRecord(tuple(perm))


def orbmult_check(
    g: TableGroup,
    k_sub,
    kappa: MatrixRep,
    theta: InvolutionRecord,
    orbit=None,
    k_orbits=None,
):
    """Compare both sides of the orbit multiplicity formula:

    dim Hom_{G^theta}(Ind kappa, 1)
        = m_K * sum over K-orbits Theta' in Theta of dim Hom_{K ^ G^theta'}(kappa, 1).

    Returns (lhs, rhs, details).
    """
    lhs = induced_hom_dim_oracle(
        g, k_sub, kappa, sorted(fixed_subgroup(g, theta))
    )
    if orbit is None:
        orbit = involution_orbits(g, [theta], range(g.order))[0]
    if k_orbits is None:
        k_orbits = involution_orbits(g, orbit, sorted(k_sub))
    m, bound = m_K(g, k_sub, theta, orbit=orbit, k_orbits=k_orbits)
    total = 0
    for k_orbit in k_orbits:
        rep_theta = k_orbit[0]
        members = sorted(frozenset(k_sub) & fixed_subgroup(g, rep_theta))
        total += hom_dim(kappa, members)
    rhs = m * total
    return lhs, rhs, {"m_K": m, "h1_bound": bound, "k_orbits": len(k_orbits)}
