"""Exact integer linear algebra: Smith normal form, abelianisations,
finitely generated abelian groups, and surjection tests between them.

Everything is arbitrary-precision; intermediate entries of a Smith
reduction can grow far beyond machine integers even for small matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInputError
from .fpgroup import Presentation
from .word import exponent_vector

__all__ = [
    "IntMatrix",
    "SmithNormalForm",
    "smith_normal_form",
    "smith_normal_form_with_transforms",
    "FgAbelianGroup",
    "abelianization",
    "admits_epimorphism",
    "min_generators_lower_bound",
]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, entries in row-major order."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InvalidInputError("matrix dimensions must be non-negative")
        if self.rows * self.cols != len(self.entries):
            raise InvalidInputError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise InvalidInputError("ragged rows")
        elif cols is None:
            cols = 0
        flat = tuple(x for r in rows for x in r)
        return cls(len(rows), cols, flat)

    def row_list(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c : (i + 1) * c]) for i in range(self.rows)]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i * self.cols + j]

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]


@dataclass(frozen=True)
class SmithNormalForm:
    """Result of a Smith reduction: diagonal matrix, rank, nontrivial factors."""

    diagonal_matrix: IntMatrix
    rank: int
    factors: tuple[int, ...]


def _smith(a: list[list[int]], track: bool):
    """In-place Smith reduction; returns (U, V) row/column transforms if track."""
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def row_op(i, k, q):  # row_i -= q * row_k
        ai, ak = a[i], a[k]
        for j in range(n):
            ai[j] -= q * ak[j]
        if track:
            ui, uk = u[i], u[k]
            for j in range(m):
                ui[j] -= q * uk[j]

    def col_op(j, k, q):  # col_j -= q * col_k
        for r in a:
            r[j] -= q * r[k]
        if track:
            for r in v:
                r[j] -= q * r[k]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        if track:
            for r in v:
                r[j], r[k] = r[k], r[j]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        if track:
            u[i] = [-x for x in u[i]]

    exhausted = False
    for t in range(min(m, n)):
        if exhausted:
            break
        while True:
            # smallest nonzero |entry| in the trailing block, row-major scan
            pi = pj = -1
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best):
                        best, pi, pj = abs(x), i, j
            if best is None:
                exhausted = True
                break
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            if a[t][t] < 0:
                negate_row(t)
            # one reduction pass against this fixed pivot; remainders are
            # strictly smaller than the pivot, so re-selecting afterwards
            # makes the pivot shrink geometrically (and keeps intermediate
            # entries polynomial in the input, unlike swapping mid-pass)
            for i in range(t + 1, m):
                if a[i][t]:
                    row_op(i, t, a[i][t] // a[t][t])
            for j in range(t + 1, n):
                if a[t][j]:
                    col_op(j, t, a[t][j] // a[t][t])
            if any(a[i][t] for i in range(t + 1, m)) or any(
                a[t][j] for j in range(t + 1, n)
            ):
                continue
            # enforce divisibility of the trailing block by the pivot: fold
            # an offending row into row t and keep reducing
            d = a[t][t]
            offender = None
            for i in range(t + 1, m):
                if any(a[i][j] % d for j in range(t + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            row_op(t, offender, -1)
    return u, v


def smith_normal_form(matrix: IntMatrix) -> SmithNormalForm:
    """Smith normal form of an integer matrix.

    The diagonal satisfies d_1 | d_2 | ... with non-negative entries;
    ``factors`` lists the diagonal entries greater than 1.

    >>> smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]])).factors
    (6,)
    """
    a = matrix.row_list()
    _smith(a, track=False)
    d = IntMatrix.from_rows(a, cols=matrix.cols)
    diag = [x for x in d.diagonal() if x]
    return SmithNormalForm(d, len(diag), tuple(x for x in diag if x > 1))


def smith_normal_form_with_transforms(
    matrix: IntMatrix,
) -> tuple[SmithNormalForm, IntMatrix, IntMatrix]:
    """Smith normal form together with unimodular U, V with U*M*V diagonal."""
    a = matrix.row_list()
    u, v = _smith(a, track=True)
    d = IntMatrix.from_rows(a, cols=matrix.cols)
    diag = [x for x in d.diagonal() if x]
    snf = SmithNormalForm(d, len(diag), tuple(x for x in diag if x > 1))
    return snf, IntMatrix.from_rows(u, cols=matrix.rows), IntMatrix.from_rows(v, cols=matrix.cols)


def _row_echelon(rows: Iterable[Sequence[int]], ncols: int) -> list[list[int]]:
    """Integer staircase form of the row lattice (row operations only).

    The returned rows span the same lattice as the input and have strictly
    increasing pivot columns.
    """
    work = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    col = 0
    while work and col < ncols:
        active = [r for r in work if r[col]]
        if not active:
            col += 1
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            p = active[0]
            for r in active[1:]:
                q = r[col] // p[col]
                if q:
                    for j in range(col, ncols):
                        r[j] -= q * p[j]
            active = [r for r in active if r[col]]
        p = active[0]
        if p[col] < 0:
            for j in range(ncols):
                p[j] = -p[j]
        out.append(p)
        work = [r for r in work if r is not p and any(r)]
        col += 1
    return out


def _kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the left kernel {x : x * M = 0} of the matrix with the given rows."""
    m = len(rows)
    aug = [list(rows[i]) + [int(j == i) for j in range(m)] for i in range(m)]
    ech = _row_echelon(aug, ncols + m)
    return [r[ncols:] for r in ech if not any(r[:ncols])]


def _solve_in_lattice(basis: list[list[int]], vector: Sequence[int]) -> list[int]:
    """Coordinates of ``vector`` in an echelonised lattice basis.

    The basis must come from ``_row_echelon`` and the vector must lie in the
    lattice it spans; both are internal invariants here.
    """
    ncols = len(vector)
    pivots = []
    for r in basis:
        for j, x in enumerate(r):
            if x:
                pivots.append(j)
                break
    v = list(vector)
    coords = [0] * len(basis)
    for idx, r in enumerate(basis):
        pj = pivots[idx]
        if v[pj]:
            if v[pj] % r[pj]:
                raise ArithmeticError("vector is not in the lattice")
            q = v[pj] // r[pj]
            coords[idx] = q
            for j in range(ncols):
                v[j] -= q * r[j]
    if any(v):
        raise ArithmeticError("vector is not in the lattice")
    return coords


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group Z^r + Z/d_1 + ... + Z/d_k in
    invariant-factor form: every d_i >= 2 and d_1 | d_2 | ... | d_k.
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise InvalidInputError("negative free rank")
        for d in self.invariant_factors:
            if d < 2:
                raise InvalidInputError("invariant factors must be >= 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise InvalidInputError("invariant factors must form a divisibility chain")

    @classmethod
    def from_moduli(cls, moduli: Iterable[int], free_rank: int = 0) -> "FgAbelianGroup":
        """Canonicalise an arbitrary direct sum of cyclic groups.

        ``0`` moduli count as Z summands.

        >>> FgAbelianGroup.from_moduli([2, 3])
        FgAbelianGroup(free_rank=0, invariant_factors=(6,))
        """
        mods = [abs(m) for m in moduli]
        free = free_rank + sum(1 for m in mods if m == 0)
        tors = [m for m in mods if m > 1]
        if not tors:
            return cls(free, ())
        diag = [[tors[i] if i == j else 0 for j in range(len(tors))] for i in range(len(tors))]
        snf = smith_normal_form(IntMatrix.from_rows(diag))
        return cls(free, snf.factors)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def order(self) -> int | None:
        """Group order, or None if infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, data: dict) -> "FgAbelianGroup":
        return cls(int(data["free_rank"]), tuple(int(d) for d in data.get("torsion", ())))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "trivial"


def _cokernel(rows: Sequence[Sequence[int]], ncols: int) -> FgAbelianGroup:
    """Isomorphism type of Z^ncols / (lattice spanned by rows)."""
    mat = IntMatrix.from_rows([list(r) for r in rows], cols=ncols) if rows else IntMatrix(0, ncols, ())
    snf = smith_normal_form(mat)
    return FgAbelianGroup(ncols - snf.rank, snf.factors)


def relator_matrix(presentation: Presentation) -> IntMatrix:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    n = len(presentation.generator_names)
    rows = [list(exponent_vector(r, n)) for r in presentation.relators]
    return IntMatrix.from_rows(rows, cols=n)


def abelianization(presentation: Presentation) -> FgAbelianGroup:
    """Abelianisation of a finitely presented group.

    >>> from .fpgroup import artin_presentation
    >>> str(abelianization(artin_presentation(5)))
    'Z'
    """
    n = len(presentation.generator_names)
    return _cokernel(relator_matrix(presentation).row_list(), n)


def _padded_factor_list(g: FgAbelianGroup) -> list[int]:
    # largest-first, with 0 (= Z) entries for the free part
    return [0] * g.free_rank + list(reversed(g.invariant_factors))


def admits_epimorphism(a: FgAbelianGroup, b: FgAbelianGroup) -> bool:
    """Whether a surjective homomorphism a -> b exists.

    Criterion: align both factor lists largest-first (free summands first,
    as 0); b's list must be no longer than a's and divide it position by
    position, where every x divides 0 and 0 divides only 0.
    """
    fa = _padded_factor_list(a)
    fb = _padded_factor_list(b)
    if len(fb) > len(fa):
        return False
    for x, y in zip(fa, fb):
        # need y | x in the cyclic-group sense: Z_x surjects onto Z_y
        if x == 0:
            continue
        if y == 0 or x % y:
            return False
    return True


def min_generators_lower_bound(presentation: Presentation) -> int:
    """Lower bound for the minimal number of generators, via the abelianisation."""
    ab = abelianization(presentation)
    return ab.free_rank + len(ab.invariant_factors)
