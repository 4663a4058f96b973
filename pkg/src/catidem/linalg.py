"""Exact dense linear algebra over prime fields F_p.

Matrices are immutable (tuple-of-tuples, row major) so they can be hashed
and used as cache keys.  Row reduction always returns the transformation
that produced the echelon form, because most callers downstream need to
rewrite solutions in terms of the original basis.

For p = 2 the hot paths (rref, solve, matmul) run on rows packed into
Python ints, which keeps Gaussian elimination usable at a few thousand
columns.  For other primes the sizes that show up in practice are small,
so plain list arithmetic (with numpy for larger products) is enough.
"""

from __future__ import annotations

import numpy as np

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class NonPrimeModulus(ValueError):
    pass


class PrimeField:
    """The field F_p for a prime p."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise NonPrimeModulus(f"modulus {p} is not prime")
        self.p = p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class Mat:
    """Immutable matrix over F_p, row-major entries reduced mod p."""

    __slots__ = ("p", "nrows", "ncols", "rows")

    def __init__(self, p: int, rows, nrows: int | None = None, ncols: int | None = None):
        self.p = p
        rows = tuple(tuple(int(x) % p for x in r) for r in rows)
        if rows:
            width = len(rows[0])
            for r in rows:
                if len(r) != width:
                    raise ValueError("ragged rows")
            self.nrows = len(rows)
            self.ncols = width if ncols is None else ncols
            if ncols is not None and ncols != width:
                raise ValueError("ncols disagrees with row width")
        else:
            self.nrows = 0
            self.ncols = 0 if ncols is None else ncols
        if nrows is not None and nrows != self.nrows:
            raise ValueError("nrows disagrees with rows")
        self.rows = rows

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(p: int, nrows: int, ncols: int) -> "Mat":
        row = (0,) * ncols
        m = Mat.__new__(Mat)
        m.p = p
        m.nrows = nrows
        m.ncols = ncols
        m.rows = tuple(row for _ in range(nrows))
        return m

    @staticmethod
    def identity(p: int, n: int) -> "Mat":
        return Mat(p, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), ncols=n)

    @staticmethod
    def from_cols(p: int, cols) -> "Mat":
        cols = [list(c) for c in cols]
        if not cols:
            return Mat.zero(p, 0, 0)
        n = len(cols[0])
        return Mat(p, [[cols[j][i] for j in range(len(cols))] for i in range(n)], ncols=len(cols))

    @staticmethod
    def col_vector(p: int, entries) -> "Mat":
        return Mat(p, [[int(e)] for e in entries], ncols=1)

    # -- basics ------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and other.p == self.p
            and other.nrows == self.nrows
            and other.ncols == self.ncols
            and other.rows == self.rows
        )

    def __hash__(self):
        return hash((self.p, self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return f"Mat(p={self.p}, {self.nrows}x{self.ncols})"

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.rows)

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Mat":
        if not self.rows:
            return Mat(self.p, tuple(() for _ in range(self.ncols)), ncols=0)
        return Mat(self.p, tuple(zip(*self.rows)), ncols=self.nrows)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        p = self.p
        return Mat(p, [tuple((a + b) % p for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        p = self.p
        return Mat(p, [tuple((a - b) % p for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)], ncols=self.ncols)

    def __neg__(self) -> "Mat":
        p = self.p
        return Mat(p, [tuple((-a) % p for a in r) for r in self.rows], ncols=self.ncols)

    def scale(self, c: int) -> "Mat":
        p = self.p
        c %= p
        return Mat(p, [tuple((c * a) % p for a in r) for r in self.rows], ncols=self.ncols)

    def _check_same_shape(self, other: "Mat"):
        if self.p != other.p or self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape or field mismatch")

    # -- products ----------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.p != other.p:
            raise ValueError("field mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"inner dimension mismatch {self.ncols} vs {other.nrows}")
        p = self.p
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return Mat.zero(p, self.nrows, other.ncols)
        if p == 2:
            bits = _pack_rows(other)
            out = []
            for r in self.rows:
                acc = 0
                for j, a in enumerate(r):
                    if a:
                        acc ^= bits[j]
                out.append(acc)
            return _unpack_rows(out, self.nrows, other.ncols)
        if self.nrows * self.ncols * other.ncols > 8000:
            a = np.array(self.rows, dtype=np.int64)
            b = np.array(other.rows, dtype=np.int64)
            c = (a @ b) % p
            return Mat(p, c.tolist(), ncols=other.ncols)
        bt = other.transpose().rows
        return Mat(
            p,
            [tuple(sum(x * y for x, y in zip(r, c)) % p for c in bt) for r in self.rows],
            ncols=other.ncols,
        )

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product, blocks of self scaled into other."""
        if self.p != other.p:
            raise ValueError("field mismatch")
        p = self.p
        rows = []
        for r1 in self.rows:
            for r2 in other.rows:
                row = []
                for a in r1:
                    if a == 0:
                        row.extend([0] * len(r2))
                    elif a == 1:
                        row.extend(r2)
                    else:
                        row.extend((a * b) % p for b in r2)
                rows.append(tuple(row))
        return Mat(p, rows, ncols=self.ncols * other.ncols)

    # -- stacking ----------------------------------------------------

    def hstack(self, other: "Mat") -> "Mat":
        if self.p != other.p or self.nrows != other.nrows:
            raise ValueError("hstack mismatch")
        return Mat(self.p, [r1 + r2 for r1, r2 in zip(self.rows, other.rows)], ncols=self.ncols + other.ncols)

    def vstack(self, other: "Mat") -> "Mat":
        if self.p != other.p or self.ncols != other.ncols:
            raise ValueError("vstack mismatch")
        return Mat(self.p, self.rows + other.rows, ncols=self.ncols)

    @staticmethod
    def block(p: int, grid) -> "Mat":
        """Assemble a block matrix from a 2d grid of Mats (all shapes must fit)."""
        out_rows = []
        ncols = None
        for brow in grid:
            if not brow:
                continue
            h = brow[0].nrows
            for b in brow:
                if b.nrows != h:
                    raise ValueError("block row height mismatch")
            width = sum(b.ncols for b in brow)
            if ncols is None:
                ncols = width
            elif ncols != width:
                raise ValueError("block row width mismatch")
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.rows[i])
                out_rows.append(tuple(row))
        return Mat(p, out_rows, ncols=0 if ncols is None else ncols)

    def submatrix(self, row_lo: int, row_hi: int, col_lo: int, col_hi: int) -> "Mat":
        return Mat(self.p, [r[col_lo:col_hi] for r in self.rows[row_lo:row_hi]], ncols=col_hi - col_lo)


# ---------------------------------------------------------------------------
# packed-bit helpers (p = 2 only)

def _pack_rows(m: Mat) -> list:
    out = []
    for r in m.rows:
        acc = 0
        for j, a in enumerate(r):
            if a:
                acc |= 1 << j
        out.append(acc)
    return out


def _unpack_rows(bits, nrows: int, ncols: int) -> Mat:
    m = Mat.__new__(Mat)
    m.p = 2
    m.nrows = nrows
    m.ncols = ncols
    m.rows = tuple(tuple((b >> j) & 1 for j in range(ncols)) for b in bits)
    return m


def _rref_bits(rows, ncols):
    """In-place rref of packed F_2 rows; returns pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        mask = 1 << c
        sel = -1
        for i in range(r, nrows):
            if rows[i] & mask:
                sel = i
                break
        if sel < 0:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv = rows[r]
        for i in range(nrows):
            if i != r and (rows[i] & mask):
                rows[i] ^= piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _rref_modp(rows, ncols, p):
    """In-place rref of list-of-list rows mod p; returns pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        sel = -1
        for i in range(r, nrows):
            if rows[i][c] % p:
                sel = i
                break
        if sel < 0:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        if inv != 1:
            rows[r] = [(x * inv) % p for x in rows[r]]
        piv = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c] % p
                if f:
                    rows[i] = [(x - f * y) % p for x, y in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m: Mat):
    """Reduced row echelon form.

    Returns (R, pivots, T) with R = T @ m, T square invertible, and R in
    reduced echelon form (unit pivots, zeros above and below).
    """
    p = m.p
    n = m.nrows
    if p == 2:
        packed = _pack_rows(m)
        # carry the transform in the high bits: [row | identity]
        aug = [packed[i] | (1 << (m.ncols + i)) for i in range(n)]
        pivots = _rref_bits(aug, m.ncols)
        lowmask = (1 << m.ncols) - 1
        r_bits = [a & lowmask for a in aug]
        t_bits = [a >> m.ncols for a in aug]
        return (
            _unpack_rows(r_bits, n, m.ncols),
            tuple(pivots),
            _unpack_rows(t_bits, n, n),
        )
    rows = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)]
    pivots = _rref_modp(rows, m.ncols, p)
    rmat = Mat(p, [r[: m.ncols] for r in rows], ncols=m.ncols)
    tmat = Mat(p, [r[m.ncols :] for r in rows], ncols=n)
    return rmat, tuple(pivots), tmat


def rank(m: Mat) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.p == 2:
        rows = _pack_rows(m)
        return len(_rref_bits(rows, m.ncols))
    rows = [list(r) for r in m.rows]
    return len(_rref_modp(rows, m.ncols, m.p))


def solve(m: Mat, b: Mat):
    """Solve m @ x = b for a column (or multi-column) b.

    Returns (x0, kernel_basis) where x0 has the same column count as b and
    kernel_basis is a Mat whose columns span ker(m).  Returns None if the
    system is inconsistent.
    """
    if b.nrows != m.nrows or b.p != m.p:
        raise ValueError("rhs shape/field mismatch")
    r, pivots, t = rref(m)
    c = t @ b
    nr = len(pivots)
    # consistency: zero rows of r must meet zero rows of c
    for i in range(nr, m.nrows):
        if any(x != 0 for x in c.rows[i]):
            return None
    p = m.p
    piv_set = set(pivots)
    x0_rows = [[0] * b.ncols for _ in range(m.ncols)]
    for i, pc in enumerate(pivots):
        x0_rows[pc] = list(c.rows[i])
    free_cols = [j for j in range(m.ncols) if j not in piv_set]
    kb_cols = []
    for f in free_cols:
        v = [0] * m.ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-r.rows[i][f]) % p
        kb_cols.append(v)
    x0 = Mat(p, x0_rows, ncols=b.ncols)
    kb = Mat.from_cols(p, kb_cols) if kb_cols else Mat.zero(p, m.ncols, 0)
    return x0, kb


def nullspace(m: Mat) -> Mat:
    """Columns span ker(m)."""
    res = solve(m, Mat.zero(m.p, m.nrows, 1))
    assert res is not None
    return res[1]


def inverse(m: Mat) -> Mat:
    if m.nrows != m.ncols:
        raise ValueError("not square")
    r, pivots, t = rref(m)
    if len(pivots) != m.nrows:
        raise ValueError("singular matrix")
    return t


def row_space_coords(basis_rows: Mat):
    """Prepare a coordinate solver for the row space of basis_rows.

    Returns a function v -> coords (list) expressing the row vector v in the
    given basis rows, or None if v is outside the span.  Used to rewrite
    vectors in a chosen basis without re-running elimination each time.
    """
    bt = basis_rows.transpose()

    def coords(v):
        vm = Mat.col_vector(basis_rows.p, v)
        res = solve(bt, vm)
        if res is None:
            return None
        return [res[0].rows[i][0] for i in range(basis_rows.nrows)]

    return coords
