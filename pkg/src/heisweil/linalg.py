"""Exact linear algebra over cyclotomic fields.

Two layers:

- :class:`CycMatrix`, a small dense matrix of :class:`CycNumber` entries
  with exact inverse, REF-based rank/nullspace, trace and conjugation.
  Fine for dimensions up to a few dozen.

- a batched integer kernel (:func:`batch_from_matrices`,
  :func:`verify_multiplication_table`, ...) that stores a family of
  matrices as one int64 numpy array of power-basis numerators over a
  common denominator.  Products reduce modulo the cyclotomic polynomial
  through a precomputed integer tensor, so sweeps over 10^5 matrix pairs
  stay exact while running at numpy speed.
"""

from __future__ import annotations

import numpy as np

from heisweil.scalar import CycNumber, context

__all__ = [
    "CycMatrix",
    "batch_from_matrices",
    "batch_products_against",
    "nullspace",
    "row_space_rank",
    "same_row_space",
    "verify_multiplication_table",
]


class CycMatrix:
    """Dense matrix over Q(zeta_N) with exact arithmetic."""

    __slots__ = ("N", "rows")

    def __init__(self, n: int, rows):
        self.N = n
        self.rows = [list(r) for r in rows]

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_entries(n: int, rows) -> "CycMatrix":
        conv = [
            [
                e if isinstance(e, CycNumber) else CycNumber.from_rational(n, e)
                for e in row
            ]
            for row in rows
        ]
        return CycMatrix(n, conv)

    @staticmethod
    def identity(n: int, dim: int) -> "CycMatrix":
        one, zero = CycNumber.one(n), CycNumber.zero(n)
        return CycMatrix(
            n, [[one if i == j else zero for j in range(dim)] for i in range(dim)]
        )

    @staticmethod
    def zeros(n: int, nrows: int, ncols: int) -> "CycMatrix":
        zero = CycNumber.zero(n)
        return CycMatrix(n, [[zero] * ncols for _ in range(nrows)])

    # -- shape ---------------------------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix(
            self.N,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix(
            self.N,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.N, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "CycMatrix":
        if not isinstance(c, CycNumber):
            c = CycNumber.from_rational(self.N, c)
        return CycMatrix(self.N, [[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        assert self.ncols == other.nrows, "shape mismatch"
        zero = CycNumber.zero(self.N)
        bt = list(zip(*other.rows))
        out = []
        for ra in self.rows:
            row = []
            for cb in bt:
                acc = zero
                for a, b in zip(ra, cb):
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CycMatrix(self.N, out)

    def __pow__(self, k: int) -> "CycMatrix":
        assert self.nrows == self.ncols
        if k < 0:
            return self.inverse() ** (-k)
        out = CycMatrix.identity(self.N, self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def transpose(self) -> "CycMatrix":
        return CycMatrix(self.N, [list(r) for r in zip(*self.rows)])

    def conj(self) -> "CycMatrix":
        return CycMatrix(self.N, [[a.conj() for a in r] for r in self.rows])

    def trace(self) -> CycNumber:
        acc = CycNumber.zero(self.N)
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def inverse(self) -> "CycMatrix":
        assert self.nrows == self.ncols
        d = self.nrows
        aug = [
            list(r)
            + [
                CycNumber.one(self.N) if i == j else CycNumber.zero(self.N)
                for j in range(d)
            ]
            for i, r in enumerate(self.rows)
        ]
        for col in range(d):
            piv = next(
                (r for r in range(col, d) if not aug[r][col].is_zero()), None
            )
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = aug[col][col].inverse()
            aug[col] = [inv * x for x in aug[col]]
            for r in range(d):
                if r != col and not aug[r][col].is_zero():
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return CycMatrix(self.N, [row[d:] for row in aug])

    def det(self) -> CycNumber:
        assert self.nrows == self.ncols
        d = self.nrows
        a = [list(r) for r in self.rows]
        out = CycNumber.one(self.N)
        for col in range(d):
            piv = next(
                (r for r in range(col, d) if not a[r][col].is_zero()), None
            )
            if piv is None:
                return CycNumber.zero(self.N)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                out = -out
            out = out * a[col][col]
            inv = a[col][col].inverse()
            for r in range(col + 1, d):
                if not a[r][col].is_zero():
                    f = a[r][col] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return out

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.N == other.N and self.rows == other.rows

    def __hash__(self):
        return hash((self.N, tuple(tuple(r) for r in self.rows)))

    def __repr__(self) -> str:
        return f"CycMatrix({self.N}, {self.nrows}x{self.ncols})"

    def to_json(self):
        return [[a.to_json() for a in r] for r in self.rows]


# -- exact row reduction ------------------------------------------------------


def _rref(rows: list[list[CycNumber]]) -> list[list[CycNumber]]:
    """Reduced row echelon form over the field; returns nonzero rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        piv = next(
            (r for r in range(pivot_row, len(rows)) if not rows[r][col].is_zero()),
            None,
        )
        if piv is None:
            continue
        rows[pivot_row], rows[piv] = rows[piv], rows[pivot_row]
        inv = rows[pivot_row][col].inverse()
        rows[pivot_row] = [inv * x for x in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return [r for r in rows if any(not x.is_zero() for x in r)]


def row_space_rank(rows: list[list[CycNumber]]) -> int:
    return len(_rref(rows))


def same_row_space(rows_a, rows_b) -> bool:
    ra = row_space_rank(rows_a)
    rb = row_space_rank(rows_b)
    return ra == rb == row_space_rank(list(rows_a) + list(rows_b))


def nullspace(rows: list[list[CycNumber]], n: int, ncols: int):
    """Basis of {v : rows @ v = 0}, as column vectors (lists)."""
    red = _rref(rows)
    pivots = []
    for r in red:
        pivots.append(next(j for j, x in enumerate(r) if not x.is_zero()))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        vec = [CycNumber.zero(n) for _ in range(ncols)]
        vec[j] = CycNumber.one(n)
        for r, pcol in zip(red, pivots):
            vec[pcol] = -r[j]
        basis.append(vec)
    return basis


# -- batched integer kernel ---------------------------------------------------


def batch_from_matrices(mats: list[CycMatrix], n: int):
    """Pack matrices into (num, den): num int64 of shape (m, r, c, phi)."""
    ctx = context(n)
    phi = ctx.phi
    den = 1
    for m in mats:
        for row in m.rows:
            for e in row:
                den = den * e.den // np.gcd(den, e.den)
    den = int(den)
    count = len(mats)
    r, c = mats[0].nrows, mats[0].ncols
    num = np.zeros((count, r, c, phi), dtype=np.int64)
    for idx, m in enumerate(mats):
        for i, row in enumerate(m.rows):
            for j, e in enumerate(row):
                scale = den // e.den
                num[idx, i, j, :] = np.array(e.nums, dtype=np.int64) * scale
    return num, den


def _product_tensor(n: int) -> np.ndarray:
    return context(n).product_table  # (phi, phi, phi) int64


def batch_products_against(left_num: np.ndarray, batch_num: np.ndarray, n: int):
    """All products left @ batch[t] in one einsum; numerators only.

    left_num: (r, k, phi); batch_num: (m, k, c, phi); result (m, r, c, phi).
    The caller tracks denominators (they multiply).
    """
    t = _product_tensor(n)
    oper = np.einsum("iku,uvw->ikwv", left_num, t)
    return np.einsum("ikwv,tkjv->tijw", oper, batch_num)


def verify_multiplication_table(
    num: np.ndarray, den: int, table: np.ndarray, n: int, max_failures: int = 5
):
    """Check num[s] @ num[t] == num[table[s, t]] exactly, for all pairs.

    ``num`` holds numerators over the common denominator ``den``; a product
    of two entries carries den^2, so the expected side is scaled by den
    before comparing.  Returns a list of failing (s, t) pairs, empty when
    the family realizes the multiplication table exactly.
    """
    count = num.shape[0]
    failures = []
    for s in range(count):
        prods = batch_products_against(num[s], num, n)
        expected = num[table[s]] * den
        if not np.array_equal(prods, expected):
            bad = np.nonzero(np.any(prods != expected, axis=(1, 2, 3)))[0]
            failures.extend((s, int(t)) for t in bad[:max_failures])
            if len(failures) >= max_failures:
                return failures
    return failures

