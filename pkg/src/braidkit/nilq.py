"""Lower central series layers of finitely presented groups, through
nilpotency class 3.

The engine works in the free nilpotent group of class c, coordinatised by
truncated power-series expansions (each generator maps to 1 + X_i in the
tensor algebra over Z, cut above degree c).  A word's degree-w component
is its image in the weight-w layer of the free group once all lower
components vanish, so the relation lattice of each layer can be assembled
from explicit group elements:

* commutators of relators with generators (and iterated once more for
  weight 3),
* commutators of relators with weight-2 basic commutators,
* products of relator powers whose lower-weight parts cancel.

The weight-w layer of the presented group is then the quotient of the
free weight-w layer (basic commutators as a basis) by that lattice,
reported in Smith normal form.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInputError
from .fpgroup import Presentation
from .zlinalg import (
    FgAbelianGroup,
    IntMatrix,
    _kernel_basis,
    _row_echelon,
    _solve_in_lattice,
    smith_normal_form,
)

__all__ = [
    "HallBasis",
    "hall_basis",
    "NilpotentQuotient",
    "nilpotent_quotient",
    "lcs_layer",
    "free_layer_rank",
]

MAX_CLASS = 3

# ---------------------------------------------------------------------------
# truncated tensor-series arithmetic (exact, over Z)

Series = dict  # {tuple of 0-based generator indices: int coefficient}


def _series_mul(s: Series, t: Series, c: int) -> Series:
    out: Series = {}
    for k1, v1 in s.items():
        for k2, v2 in t.items():
            if len(k1) + len(k2) <= c:
                key = k1 + k2
                val = out.get(key, 0) + v1 * v2
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
    return out


def _series_inv(s: Series, c: int) -> Series:
    # s = 1 + e with e of positive degree; inverse is 1 - e + e^2 - ...
    eps = {k: v for k, v in s.items() if k}
    out: Series = {(): 1}
    term: Series = {(): 1}
    sign = 1
    for _ in range(c):
        term = _series_mul(term, eps, c)
        if not term:
            break
        sign = -sign
        for k, v in term.items():
            val = out.get(k, 0) + sign * v
            if val:
                out[k] = val
            elif k in out:
                del out[k]
    return out


def _series_pow(s: Series, k: int, c: int) -> Series:
    if k < 0:
        return _series_pow(_series_inv(s, c), -k, c)
    out: Series = {(): 1}
    base = s
    while k:
        if k & 1:
            out = _series_mul(out, base, c)
        k >>= 1
        if k:
            base = _series_mul(base, base, c)
    return out


def _series_commutator(s: Series, t: Series, c: int) -> Series:
    return _series_mul(
        _series_mul(_series_inv(s, c), _series_inv(t, c), c), _series_mul(s, t, c), c
    )


def _word_series(letters: Sequence[int], n: int, c: int) -> Series:
    gens = {}
    out: Series = {(): 1}
    for let in letters:
        i = abs(let) - 1
        if let not in gens:
            g = {(): 1, (i,): 1}
            gens[let] = g if let > 0 else _series_inv(g, c)
        out = _series_mul(out, gens[let], c)
    return out


def _deg_part(s: Series, d: int, n: int) -> list[int]:
    out = [0] * (n**d)
    for key, v in s.items():
        if len(key) == d:
            idx = 0
            for i in key:
                idx = idx * n + i
            out[idx] = v
    return out


def _tensor_bracket(s: Series, t: Series) -> Series:
    """Lie bracket s*t - t*s of homogeneous tensor elements (untruncated)."""
    out: Series = {}
    for k1, v1 in s.items():
        for k2, v2 in t.items():
            for key, val in ((k1 + k2, v1 * v2), (k2 + k1, -v1 * v2)):
                new = out.get(key, 0) + val
                if new:
                    out[key] = new
                elif key in out:
                    del out[key]
    return out


# ---------------------------------------------------------------------------
# Hall basis of basic commutators, weights 1..3


@dataclass(frozen=True)
class HallBasis:
    """Basic commutators over n generators (1-based indices).

    weight2 holds the pairs (j, i) standing for [x_j, x_i] with j > i;
    weight3 holds the triples (j, i, k) standing for [[x_j, x_i], x_k]
    with j > i and k >= i.
    """

    n: int
    weight2: tuple[tuple[int, int], ...]
    weight3: tuple[tuple[int, int, int], ...]


def hall_basis(n: int) -> HallBasis:
    if n < 0:
        raise InvalidInputError("generator count must be >= 0")
    w2 = tuple((j, i) for j in range(2, n + 1) for i in range(1, j))
    w3 = tuple((j, i, k) for (j, i) in w2 for k in range(i, n + 1))
    return HallBasis(n, w2, w3)


def _hall_tensor_rows(basis: HallBasis, weight: int) -> list[list[int]]:
    n = basis.n
    if weight == 1:
        return [[int(j == i) for j in range(n)] for i in range(n)]
    if weight == 2:
        rows = []
        for j, i in basis.weight2:
            t = _tensor_bracket({(j - 1,): 1}, {(i - 1,): 1})
            rows.append(_deg_part(t, 2, n))
        return rows
    rows = []
    for j, i, k in basis.weight3:
        inner = _tensor_bracket({(j - 1,): 1}, {(i - 1,): 1})
        t = _tensor_bracket(inner, {(k - 1,): 1})
        rows.append(_deg_part(t, 3, n))
    return rows


def free_layer_rank(n: int, w: int) -> int:
    """Rank of the weight-w lower central layer of a free group of rank n,
    by the necklace formula (1/w) * sum over d | w of mu(d) * n^(w/d).
    """
    if n < 1:
        raise InvalidInputError("generator count must be >= 1")
    if w not in (1, 2, 3):
        raise InvalidInputError(f"weight {w} unsupported (1..{MAX_CLASS})")
    mu = {1: 1, 2: -1, 3: -1}
    total = sum(mu[d] * n ** (w // d) for d in (1, 2, 3) if w % d == 0)
    return total // w


# ---------------------------------------------------------------------------
# relation lattices per weight


def _relator_series(p: Presentation, c: int) -> list[Series]:
    n = p.generator_count
    return [_word_series(r.letters, n, c) for r in p.relators]


def _kernel_combinations(series: list[Series], n: int, c: int) -> list[Series]:
    """Products of relator powers whose exponent vectors cancel.

    One product per basis element of the lattice of multiplicity vectors
    with vanishing weight-1 part.
    """
    vs = [_deg_part(s, 1, n) for s in series]
    out = []
    for lam in _kernel_basis(vs, n):
        prod: Series = {(): 1}
        for idx, k in enumerate(lam):
            if k:
                prod = _series_mul(prod, _series_pow(series[idx], k, c), c)
        out.append(prod)
    return out


def _weight_rows(p: Presentation, c: int) -> list[list[int]]:
    """Rows spanning the relation lattice, in concatenated tensor
    coordinates (degree 2 block first, then degree 3 for c = 3)."""
    n = p.generator_count
    series = _relator_series(p, c)
    n2 = n * n
    gens = [{(): 1, (i,): 1} for i in range(n)]
    rows: list[list[int]] = []
    if c == 2:
        for s in series:
            for x in gens:
                cs = _series_commutator(s, x, c)
                rows.append(_deg_part(cs, 2, n))
        for prod in _kernel_combinations(series, n, c):
            rows.append(_deg_part(prod, 2, n))
        return rows
    # c == 3: track (degree-2 | degree-3) pairs
    for s in series:
        for x in gens:
            cs = _series_commutator(s, x, c)
            rows.append(_deg_part(cs, 2, n) + _deg_part(cs, 3, n))
            for y in gens:
                cs2 = _series_commutator(cs, y, c)
                rows.append([0] * n2 + _deg_part(cs2, 3, n))
        for kk in range(n):
            for ll in range(kk):
                basic = _series_commutator(gens[kk], gens[ll], c)
                cs3 = _series_commutator(s, basic, c)
                rows.append([0] * n2 + _deg_part(cs3, 3, n))
    for prod in _kernel_combinations(series, n, c):
        rows.append(_deg_part(prod, 2, n) + _deg_part(prod, 3, n))
    return rows


def _layer_from_lattice(
    hall_rows: list[list[int]], lattice_rows: list[list[int]]
) -> tuple[FgAbelianGroup, IntMatrix]:
    """Quotient of the free weight layer by a lattice of tensor rows."""
    d = len(hall_rows)
    if d == 0:
        return FgAbelianGroup(0), IntMatrix(0, 0, ())
    ncols = len(hall_rows[0])
    basis = _row_echelon(hall_rows, ncols)
    if len(basis) != d:
        raise ArithmeticError("basic commutators failed to be independent")
    coords = [_solve_in_lattice(basis, row) for row in lattice_rows if any(row)]
    reduced = _row_echelon(coords, d)
    lattice = IntMatrix.from_rows(reduced, cols=d)
    snf = smith_normal_form(lattice)
    return FgAbelianGroup(d - snf.rank, snf.factors), lattice


@dataclass(frozen=True)
class NilpotentQuotient:
    """Per-weight relation lattices and layer isomorphism types of the
    class-c nilpotent quotient of a presented group."""

    nilpotency_class: int
    relation_lattices: tuple[IntMatrix, ...]
    layers: tuple[FgAbelianGroup, ...]


def nilpotent_quotient(p: Presentation, nilpotency_class: int) -> NilpotentQuotient:
    """Compute all lower central layers of weight <= nilpotency_class."""
    c = nilpotency_class
    if c not in (1, 2, 3):
        raise InvalidInputError(f"class-{c} quotients are unsupported (max {MAX_CLASS})")
    n = p.generator_count
    if n == 0:
        trivial = FgAbelianGroup(0)
        return NilpotentQuotient(
            c, tuple(IntMatrix(0, 0, ()) for _ in range(c)), tuple(trivial for _ in range(c))
        )
    basis = hall_basis(n)

    # weight 1 from the degree-1 expansion coefficients
    series1 = _relator_series(p, 1)
    v_rows = [_deg_part(s, 1, n) for s in series1]
    layer1, lattice1 = _layer_from_lattice(_hall_tensor_rows(basis, 1), v_rows)
    lattices = [lattice1]
    layers = [layer1]

    if c >= 2:
        n2 = n * n
        rows = _weight_rows(p, c)
        if c == 2:
            w2_rows = rows
        else:
            w2_rows = [r[:n2] for r in rows]
        layer2, lattice2 = _layer_from_lattice(_hall_tensor_rows(basis, 2), w2_rows)
        lattices.append(lattice2)
        layers.append(layer2)
        if c == 3:
            ech = _row_echelon(rows, len(rows[0]) if rows else 0)
            w3_rows = [r[n2:] for r in ech if not any(r[:n2])]
            layer3, lattice3 = _layer_from_lattice(_hall_tensor_rows(basis, 3), w3_rows)
            lattices.append(lattice3)
            layers.append(layer3)

    return NilpotentQuotient(c, tuple(lattices), tuple(layers))


def lcs_layer(p: Presentation, i: int) -> FgAbelianGroup:
    """Isomorphism type of the i-th lower central layer of the group
    presented by p, for i in {1, 2, 3}.

    >>> from .fpgroup import closed_orientable
    >>> str(lcs_layer(closed_orientable(1, 3), 2))
    'Z/3'
    """
    if i not in (1, 2, 3):
        raise InvalidInputError(f"layer {i} unsupported (1..{MAX_CLASS})")
    return nilpotent_quotient(p, i).layers[i - 1]
