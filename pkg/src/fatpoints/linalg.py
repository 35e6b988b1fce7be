"""Exact dense linear algebra over the rationals and over prime fields.

Public surface: :class:`Matrix` plus ``rank``, ``nullspace_dim``, ``rref`` and
``nullspace_basis``.  Everything is a pure function of immutable values.

Rational ranks are exact.  Three exact strategies cooperate on integer
matrices (rational matrices are cleared to integers row by row first):

* a mod-p certificate: rank over F_p never exceeds the rank over Q, so a
  full min-dimension rank mod p proves the rational rank outright;
* fraction-free Bareiss elimination for near-square matrices (intermediate
  entries are minors of the input, so growth stays polynomial);
* Gram compression for wide matrices: rank(M) = rank(M M^T) over Q, and the
  small Gram matrix goes through Bareiss.  M M^T is computed exactly, via
  per-prime int64 matmuls recombined by integer CRT when it is large.

Pivoting is deterministic everywhere: first nonzero entry in column order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import gmpy2
import numpy as np

from .errors import InvalidInputError
from .fields import DEFAULT_PRIME, Field, ensure_same_field

_mpz = gmpy2.mpz
_divexact = gmpy2.divexact

_GRAM_DIRECT_LIMIT = 4_000_000  # multiply-accumulates done in pure Python
_CRT_PRIME_BITS = 24


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over one field; entries stored row-major."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvalidInputError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise InvalidInputError(
                f"entry count {len(self.entries)} != rows*cols = {self.rows * self.cols}"
            )

    @classmethod
    def from_rows(cls, field: Field, rows, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise InvalidInputError("ragged rows")
        else:
            ncols = 0 if cols is None else cols
        flat = tuple(field.coerce(x) for r in rows for x in r)
        return cls(field, len(rows), ncols, flat)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        flat = tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        return Matrix(self.field, self.cols, self.rows, flat)


def _rref_rows(field: Field, rows: list[list]) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form; returns (nonzero rows, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not field.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> Matrix:
    """Canonical reduced row echelon form; pivots are 1, zero rows removed."""
    reduced, _ = _rref_rows(m.field, m.to_rows())
    return Matrix.from_rows(m.field, reduced, cols=m.cols)


def nullspace_basis(m: Matrix) -> list[tuple]:
    """Basis of the right nullspace, one vector per free column."""
    reduced, pivots = _rref_rows(m.field, m.to_rows())
    field = m.field
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        vec = [field.zero] * m.cols
        vec[free] = field.one
        for prow, pcol in zip(reduced, pivots):
            vec[pcol] = field.neg(prow[free])
        basis.append(tuple(vec))
    return basis


def rank(m: Matrix) -> int:
    """Rank of m over its field; exact in both field modes."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.kind == "rational":
        return rank_int(_integer_rows(m))
    return rank_mod_p([list(m.row(i)) for i in range(m.rows)], m.field.p)


def nullspace_dim(m: Matrix) -> int:
    return m.cols - rank(m)


def _integer_rows(m: Matrix) -> list[list[int]]:
    """Clear denominators row by row; row scaling does not change the rank."""
    out = []
    for i in range(m.rows):
        row = list(m.row(i))
        denom = 1
        for x in row:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // gcd(denom, x.denominator)
        out.append([int(x * denom) for x in row])
    return out


# ---------------------------------------------------------------------------
# integer kernels


def _strip(rows: list[list[int]]) -> list[list[int]]:
    """Drop zero rows/columns and divide rows by their content."""
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    keep = [j for j in range(len(rows[0])) if any(r[j] for r in rows)]
    out = []
    for r in rows:
        vals = [r[j] for j in keep]
        g = 0
        for v in vals:
            g = gcd(g, v)
            if g == 1:
                break
        if g > 1:
            vals = [v // g for v in vals]
        out.append(vals)
    return out


def rank_int(rows: list[list[int]]) -> int:
    """Exact rank over Q of an integer matrix."""
    rows = _strip(rows)
    if not rows:
        return 0
    if len(rows) > len(rows[0]):
        rows = [list(col) for col in zip(*rows)]
    nr, nc = len(rows), len(rows[0])
    if rank_mod_p(rows, DEFAULT_PRIME) == nr:
        return nr
    if nr <= 16 or nc <= (3 * nr) // 2:
        return rank_bareiss(rows)
    return rank_bareiss(gram(rows))


def rank_bareiss(rows: list[list[int]]) -> int:
    """Fraction-free elimination; every division is exact."""
    m = [[_mpz(x) for x in r] for r in rows if any(r)]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = _mpz(1)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv_i = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv_i is None:
            continue
        m[r], m[piv_i] = m[piv_i], m[r]
        piv = m[r][c]
        row_r = m[r]
        zeros = [_mpz(0)] * (c + 1)
        for i in range(r + 1, nrows):
            row_i = m[i]
            f = row_i[c]
            if f:
                m[i] = zeros + [
                    _divexact(a * piv - f * b, prev)
                    for a, b in zip(row_i[c + 1 :], row_r[c + 1 :])
                ]
            else:
                m[i] = zeros + [_divexact(a * piv, prev) for a in row_i[c + 1 :]]
        prev = piv
        r += 1
    return r


def gram(rows: list[list[int]]) -> list[list[int]]:
    """Exact M M^T of an integer matrix."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    if nr == 0 or nc == 0:
        return [[0] * nr for _ in range(nr)]
    maxabs = max((abs(x) for r in rows for x in r), default=0)
    if maxabs == 0:
        return [[0] * nr for _ in range(nr)]
    if maxabs < (1 << 20) and nc * maxabs * maxabs < (1 << 62):
        a = np.array(rows, dtype=np.int64)
        return (a @ a.T).tolist()
    if nr * nr * nc // 2 <= _GRAM_DIRECT_LIMIT:
        g = [[0] * nr for _ in range(nr)]
        for i in range(nr):
            ri = rows[i]
            for j in range(i, nr):
                v = sum(a * b for a, b in zip(ri, rows[j]))
                g[i][j] = v
                g[j][i] = v
        return g
    return _gram_crt(rows, nc, maxabs)


def _crt_primes(product_above: int, limit: int) -> list[int]:
    """Deterministic primes below ``limit`` whose product exceeds the bound."""
    primes = []
    prod = 1
    cand = limit - 1
    while prod <= product_above:
        while not gmpy2.is_prime(cand):
            cand -= 1
        primes.append(cand)
        prod *= cand
        cand -= 1
    return primes


def _gram_crt(rows: list[list[int]], nc: int, maxabs: int) -> list[list[int]]:
    nr = len(rows)
    bound = nc * maxabs * maxabs  # |(M M^T)_ij| <= nc * maxabs^2
    limit = 1 << _CRT_PRIME_BITS
    # per-prime accumulation must stay inside int64
    while nc * (limit - 1) ** 2 >= (1 << 63):
        limit >>= 1
    primes = _crt_primes(2 * bound, limit)
    residues = []
    for p in primes:
        a = np.array([[x % p for x in r] for r in rows], dtype=np.int64)
        residues.append((a @ a.T) % p)
    prod = 1
    for p in primes:
        prod *= p
    weights = []
    for p in primes:
        w = prod // p
        weights.append(w * pow(w % p, -1, p))
    half = prod // 2
    g = [[0] * nr for _ in range(nr)]
    for i in range(nr):
        for j in range(i, nr):
            x = sum(int(res[i, j]) * w for res, w in zip(residues, weights)) % prod
            if x > half:
                x -= prod
            g[i][j] = x
            g[j][i] = x
    return g


def rank_mod_p(rows, p: int) -> int:
    """Rank over F_p; numpy elimination when products fit in int64."""
    if not rows or not len(rows[0]):
        return 0
    if p < (1 << 31):
        a = np.array([[x % p for x in r] for r in rows], dtype=np.int64)
        return rank_mod_p_array(a, p)
    return _rank_mod_p_python([[x % p for x in r] for r in rows], p)


def rank_mod_p_array(a: np.ndarray, p: int) -> int:
    """Rank over F_p of an int64 residue array (consumed destructively)."""
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = a[r + 1 :, c]
        mask = below != 0
        if mask.any():
            factors = below[mask]
            a[r + 1 :, c:][mask] = (a[r + 1 :, c:][mask] - factors[:, None] * a[r, c:]) % p
        r += 1
    return r


def _rank_mod_p_python(rows: list[list[int]], p: int) -> int:
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv_i = next((i for i in range(r, nrows) if rows[i][c] % p), None)
        if piv_i is None:
            continue
        rows[r], rows[piv_i] = rows[piv_i], rows[r]
        inv = pow(rows[r][c] % p, -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(r + 1, nrows):
            f = rows[i][c] % p
            if f:
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def invert(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix over its field."""
    if m.rows != m.cols:
        raise InvalidInputError("only square matrices can be inverted")
    n = m.rows
    field = m.field
    aug = [list(m.row(i)) + [field.one if j == i else field.zero for j in range(n)] for i in range(n)]
    reduced, pivots = _rref_rows(field, aug)
    if pivots != list(range(n)):
        raise InvalidInputError("matrix is singular")
    return Matrix.from_rows(field, [row[n:] for row in reduced])


def mat_vec(m: Matrix, vec) -> list:
    if len(vec) != m.cols:
        raise InvalidInputError("vector length does not match matrix columns")
    field = m.field
    out = []
    for i in range(m.rows):
        acc = field.zero
        for a, b in zip(m.row(i), vec):
            acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def stack(a: Matrix, b: Matrix) -> Matrix:
    ensure_same_field(a.field, b.field, "stacked matrices")
    if a.cols != b.cols:
        raise InvalidInputError("column counts differ")
    return Matrix(a.field, a.rows + b.rows, a.cols, a.entries + b.entries)


def identity(field: Field, n: int) -> Matrix:
    return Matrix.from_rows(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])
