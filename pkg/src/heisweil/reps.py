"""Matrix models of Heisenberg representations and Hom-space machinery.

The two induced models of the Heisenberg representation with central
character zeta(z) = zeta_p^(k z) are realized on C[F_p^l]:

- minus model: functions on the W+ transversal, coordinates t.
  tau(u, v; z) phi (t) = zeta(z + t.v + (1/2) v.u) phi(t + u),
  where u is the W+ block and v the W- block of the group element.
- plus model: functions on the W- transversal, coordinates y.
  tau(u, v; z) phi (y) = zeta(z - u.y - (1/2) u.v) phi(y + v).

Hom-space dimensions are exact: the averaging operator over a subgroup is
idempotent, so its rank equals its trace, a rational integer computed in
the cyclotomic field with no tolerance anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from heisweil.heisenberg import HElem, HeisenbergGroup
from heisweil.linalg import CycMatrix, nullspace, row_space_rank, same_row_space
from heisweil.scalar import CycNumber, run_conductor, zeta_p
from heisweil.symplectic import GuardError

__all__ = [
    "FixedForms",
    "MatrixRep",
    "character_inner_product",
    "contragredient",
    "fixed_forms",
    "heisenberg_rep",
    "hom_dim",
    "invariant_pairing",
    "irreducibles_of_H",
    "rep_equivalent",
]


@dataclass
class MatrixRep:
    """A finite group mapped to exact invertible matrices.

    ``group`` provides elements()/mul/inv/identity; ``images`` maps each
    element to a CycMatrix over Q(zeta_N).
    """

    group: object
    dim: int
    images: dict
    conductor: int
    basis_labels: tuple = ()
    model: str | None = None
    zeta_exponent: int | None = None

    def image(self, g) -> CycMatrix:
        return self.images[g]

    def character(self, g) -> CycNumber:
        return self.images[g].trace()

    def character_table(self) -> dict:
        return {g: self.images[g].trace() for g in self.group.elements()}

    def verify_homomorphism(self, pairs=None) -> bool:
        g = self.group
        els = g.elements()
        if self.images[g.identity()] != CycMatrix.identity(self.conductor, self.dim):
            return False
        pairs = pairs if pairs is not None else itertools.product(els, els)
        return all(
            self.images[a] @ self.images[b] == self.images[g.mul(a, b)]
            for a, b in pairs
        )


def heisenberg_rep(
    group: HeisenbergGroup, zeta_exponent: int, model: str = "minus"
) -> MatrixRep:
    """The p^l-dimensional Heisenberg representation in either induced model."""
    p, ell = group.p, group.space.ell
    k = zeta_exponent % p
    if k == 0:
        raise ValueError("central character must be nontrivial")
    if model not in ("minus", "plus"):
        raise ValueError("model must be 'minus' or 'plus'")
    n = run_conductor(p)
    points = list(itertools.product(range(p), repeat=ell))
    index = {t: i for i, t in enumerate(points)}
    dim = len(points)
    zero = CycNumber.zero(n)
    half = group.half

    images = {}
    for h in group.elements():
        u, v = h.w[:ell], h.w[ell:]
        rows = [[zero] * dim for _ in range(dim)]
        for t in points:
            if model == "minus":
                exp = (
                    h.z
                    + sum(a * b for a, b in zip(t, v))
                    + half * sum(a * b for a, b in zip(v, u))
                ) % p
                src = tuple((a + b) % p for a, b in zip(t, u))
            else:
                exp = (
                    h.z
                    - sum(a * b for a, b in zip(u, t))
                    - half * sum(a * b for a, b in zip(u, v))
                ) % p
                src = tuple((a + b) % p for a, b in zip(t, v))
            rows[index[t]][index[src]] = zeta_p(p, k * exp, conductor=n)
        images[h] = CycMatrix(n, rows)
    return MatrixRep(
        group=group,
        dim=dim,
        images=images,
        conductor=n,
        basis_labels=tuple(points),
        model=model,
        zeta_exponent=k,
    )


def contragredient(rep: MatrixRep) -> MatrixRep:
    """g -> transpose(rep(g^-1))."""
    g = rep.group
    images = {h: rep.images[g.inv(h)].transpose() for h in g.elements()}
    return MatrixRep(
        group=g,
        dim=rep.dim,
        images=images,
        conductor=rep.conductor,
        basis_labels=rep.basis_labels,
        model=rep.model,
        zeta_exponent=(-rep.zeta_exponent) % g.p
        if rep.zeta_exponent is not None
        else None,
    )


def invariant_pairing(f1, f2, rep: MatrixRep, corep: MatrixRep) -> CycNumber:
    """<f1, f2> = sum over the transversal of f1(t) f2(t)."""
    if len(f1) != rep.dim or len(f2) != corep.dim or rep.dim != corep.dim:
        raise ValueError("dimension mismatch")
    acc = CycNumber.zero(rep.conductor)
    for a, b in zip(f1, f2):
        acc = acc + a * b
    return acc


def hom_dim(rep: MatrixRep, subgroup, chi=None) -> int:
    """dim Hom_K(rep, chi) = dim { lambda : lambda o rep(k) = chi(k) lambda }.

    Computed as the rank of the averaging projector over K, which being
    idempotent equals its exact trace: (1/|K|) sum_k chi(k)^-1 tr rep(k).
    For the quadratic (+-1)-valued characters this matches the chi(k)-
    weighted form verbatim.
    """
    members = list(subgroup)
    n = rep.conductor
    acc = CycNumber.zero(n)
    for k in members:
        tr = rep.images[k].trace()
        if chi is not None:
            c = chi(k)
            if not isinstance(c, CycNumber):
                c = CycNumber.from_rational(n, c)
            tr = tr * c.inverse()
        acc = acc + tr
    val = acc / len(members)
    if not val.is_integer():
        raise AssertionError(f"projector trace {val!r} is not an integer")
    out = int(val.rational_value())
    assert out >= 0
    return out


def rep_equivalent(rep1: MatrixRep, rep2: MatrixRep) -> bool:
    """Character equality on every element (groups must coincide)."""
    if rep1.group is not rep2.group and set(rep1.images) != set(rep2.images):
        raise ValueError("representations live on different groups")
    return all(
        rep1.images[g].trace() == rep2.images[g].trace() for g in rep1.images
    )


def character_inner_product(rep1: MatrixRep, rep2: MatrixRep) -> CycNumber:
    els = list(rep1.images)
    n = rep1.conductor
    acc = CycNumber.zero(n)
    for g in els:
        acc = acc + rep1.images[g].trace() * rep2.images[g].trace().conj()
    return acc / len(els)


# -- fixed linear forms ----------------------------------------------------------


@dataclass
class FixedForms:
    """Hom_K(tau, 1) computed two independent ways."""

    dim: int
    coset_basis: list  # rows from the double-coset construction
    nullspace_basis: list  # rows from brute-force linear algebra
    spans_agree: bool
    representatives: list = field(default_factory=list)


def _induced_value_coeff(rep: MatrixRep, h: HElem):
    """Write the minus-model induced function value at h as (t-index, phase):
    f(h) = phase * phi(t)."""
    g = rep.group
    p, ell = g.p, g.space.ell
    u, v = h.w[:ell], h.w[ell:]
    z = (h.z + g.half * sum(a * b for a, b in zip(v, u))) % p
    phase = zeta_p(p, rep.zeta_exponent * z, conductor=rep.conductor)
    return u, phase


def fixed_forms(rep: MatrixRep, subgroup) -> FixedForms:
    """Basis of Hom_K(tau, 1) for the minus model, built twice.

    Once through the double-coset sum forms lambda_x(phi) = sum_k phi(x k)
    over qualifying cosets, once as the nullspace of the K-invariance
    conditions; the two spans must agree.
    """
    if rep.model != "minus":
        raise ValueError("fixed_forms expects a minus-model Heisenberg rep")
    g: HeisenbergGroup = rep.group
    n = rep.conductor
    K = sorted(frozenset(subgroup))
    if not g.is_subgroup(K):
        raise ValueError("K must be a subgroup of H")
    q = sorted(g.minus_z_subgroup())
    center = g.center()
    identity = g.identity()

    # double cosets Q\H/K
    remaining = set(g.elements())
    reps_found, rows, qualifying = [], [], []
    index = {t: i for i, t in enumerate(rep.basis_labels)}
    while remaining:
        x = min(remaining)
        coset = {g.mul(g.mul(a, x), b) for a in q for b in K}
        remaining -= coset
        reps_found.append(x)
        prod_set = {
            g.mul(w_minus, g.conjugate(x, k))
            for w_minus in g.minus_subgroup()
            for k in K
        }
        if prod_set & center != {identity}:
            continue  # W^- x K x^-1 meets Z nontrivially: no invariant form here
        qualifying.append(x)
        row = [CycNumber.zero(n) for _ in range(rep.dim)]
        for k in K:
            t, phase = _induced_value_coeff(rep, g.mul(x, k))
            row[index[t]] = row[index[t]] + phase
        rows.append(row)

    # brute-force: lambda with lambda . rep(k) = lambda for all k in K
    stacked = []
    eye = CycMatrix.identity(n, rep.dim)
    for k in K:
        diff = rep.images[k].transpose() - eye
        stacked.extend(diff.rows)
    null = nullspace(stacked, n, rep.dim)
    null_rows = [list(v) for v in null]

    if not rows and not null_rows:
        agree = True
    else:
        every_row_nonzero = all(any(not c.is_zero() for c in r) for r in rows)
        agree = (
            every_row_nonzero
            and row_space_rank(rows) == len(rows) == len(null_rows)
            and same_row_space(rows, null_rows)
        )
    return FixedForms(
        dim=len(null_rows),
        coset_basis=rows,
        nullspace_basis=null_rows,
        spans_agree=bool(agree),
        representatives=qualifying,
    )


# -- irreducibles of H -----------------------------------------------------------


def irreducibles_of_H(group: HeisenbergGroup) -> list[MatrixRep]:
    """All irreducible representations: p^(2l) characters inflated from W
    plus p-1 Heisenberg representations, one per nontrivial central character."""
    g = group
    p = g.p
    if g.order() > 3200:
        raise GuardError("irreducible sweep guarded to |H| <= 3200")
    n = run_conductor(p)
    out = []
    for w0 in itertools.product(range(p), repeat=g.dim):
        images = {
            h: CycMatrix(
                n, [[zeta_p(p, g.space.pair(w0, h.w), conductor=n)]]
            )
            for h in g.elements()
        }
        out.append(
            MatrixRep(group=g, dim=1, images=images, conductor=n, model="char")
        )
    for k in range(1, p):
        out.append(heisenberg_rep(g, k, model="minus"))
    total = sum(r.dim**2 for r in out)
    assert total == g.order(), "sum of squared dimensions must be |H|"
    return out
