"""Exact integer matrix algebra.

Everything here works on Python ints, so there is no overflow no matter how
much the intermediate entries of an elimination grow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class ContainmentViolation(ValueError):
    """A lattice that should sit inside another one does not."""


class IntegerMatrix:
    """Dense immutable matrix of arbitrary-precision integers.

    Entries are stored row-major. Zero-row and zero-column matrices are
    legal; they show up as the boundary maps at the ends of a complex.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape {rows}x{cols}")
        data = tuple(int(x) for x in entries) if entries is not None else (0,) * (rows * cols)
        if len(data) != rows * cols:
            raise ValueError(f"{len(data)} entries for a {rows}x{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntegerMatrix is immutable")

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple) -> IntegerMatrix:
        # trusted internal constructor: entries already a tuple of ints of the right length
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "cols", cols)
        object.__setattr__(obj, "entries", entries)
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntegerMatrix:
        if not rows:
            return cls(0, cols or 0)
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls._raw(len(rows), width, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntegerMatrix:
        """Build a ``rows x len(columns)`` matrix whose columns are the given vectors."""
        out = [[0] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length does not match row count")
            for i, x in enumerate(col):
                out[i][j] = x
        return cls._raw(rows, len(columns), tuple(int(x) for r in out for x in r))

    @classmethod
    def identity(cls, n: int) -> IntegerMatrix:
        return cls._raw(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntegerMatrix:
        return cls(rows, cols)

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag: Sequence[int]) -> IntegerMatrix:
        out = [0] * (rows * cols)
        for i, d in enumerate(diag):
            out[i * cols + i] = d
        return cls._raw(rows, cols, tuple(out))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[int]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> IntegerMatrix:
        c = self.cols
        return IntegerMatrix._raw(self.cols, self.rows,
                                  tuple(self.entries[i * c + j] for j in range(c) for i in range(self.rows)))

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __matmul__(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        b = other.tolist()
        n = other.cols
        out = []
        for i in range(self.rows):
            acc = [0] * n
            for k, a in enumerate(self.entries[i * self.cols:(i + 1) * self.cols]):
                if a:
                    bk = b[k]
                    for j in range(n):
                        if bk[j]:
                            acc[j] += a * bk[j]
            out.extend(acc)
        return IntegerMatrix._raw(self.rows, n, tuple(out))

    def apply(self, v: Sequence[int]) -> list[int]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        c = self.cols
        e = self.entries
        return [sum(e[i * c + j] * v[j] for j in range(c) if v[j]) for i in range(self.rows)]

    def scale(self, s: int) -> IntegerMatrix:
        return IntegerMatrix._raw(self.rows, self.cols, tuple(s * x for x in self.entries))

    def hstack(self, other: IntegerMatrix) -> IntegerMatrix:
        if self.rows != other.rows:
            raise ValueError("row counts differ")
        return IntegerMatrix.from_rows([self.row(i) + other.row(i) for i in range(self.rows)],
                                       cols=self.cols + other.cols)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntegerMatrix({self.rows}, {self.cols}, {self.tolist()})"


def determinant(a: IntegerMatrix) -> int:
    """Fraction-free (Bareiss) determinant of a square matrix."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: IntegerMatrix
    S: IntegerMatrix
    V: IntegerMatrix
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _argmin_abs(a, r0, c0, nrows, ncols):
    best = None
    bi = bj = -1
    for i in range(r0, nrows):
        row = a[i]
        for j in range(c0, ncols):
            x = row[j]
            if x:
                ax = -x if x < 0 else x
                if best is None or ax < best:
                    best, bi, bj = ax, i, j
                    if ax == 1:
                        return bi, bj
    return bi, bj


def smith_normal_form(a: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form with both transformation matrices.

    Pivots on the nonzero entry of least absolute value in the remaining
    block. The result is canonical: the diagonal is non-negative and each
    nonzero entry divides the next.
    """
    m, n = a.rows, a.cols
    if m == 0 or n == 0:
        return SmithDecomposition(IntegerMatrix.identity(m), a, IntegerMatrix.identity(n), ())
    if m == 1 and n == 1:
        x = a.entries[0]
        one = IntegerMatrix._raw(1, 1, (1,))
        if x >= 0:
            return SmithDecomposition(one, a, one, (x,) if x else ())
        return SmithDecomposition(IntegerMatrix._raw(1, 1, (-1,)), IntegerMatrix._raw(1, 1, (-x,)), one, (-x,))
    A = a.tolist()
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    # V is kept transposed so column operations become row operations.
    Vt = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    factors = []

    t = 0
    while t < min(m, n):
        pi, pj = _argmin_abs(A, t, t, m, n)
        if pi < 0:
            break
        while True:
            if pi != t:
                A[t], A[pi] = A[pi], A[t]
                U[t], U[pi] = U[pi], U[t]
            if pj != t:
                for row in A:
                    row[t], row[pj] = row[pj], row[t]
                Vt[t], Vt[pj] = Vt[pj], Vt[t]
            p = A[t][t]
            clean = True
            # clear column t below the pivot
            At, Ut = A[t], U[t]
            for i in range(t + 1, m):
                x = A[i][t]
                if x:
                    q = x // p
                    Ai, Ui = A[i], U[i]
                    for j in range(t, n):
                        if At[j]:
                            Ai[j] -= q * At[j]
                    for j in range(m):
                        if Ut[j]:
                            Ui[j] -= q * Ut[j]
                    if Ai[t]:
                        clean = False
            # clear row t right of the pivot
            Vtt = Vt[t]
            for j in range(t + 1, n):
                x = At[j]
                if x:
                    q = x // p
                    for i in range(t, m):
                        if A[i][t]:
                            A[i][j] -= q * A[i][t]
                    Vj = Vt[j]
                    for k in range(n):
                        if Vtt[k]:
                            Vj[k] -= q * Vtt[k]
                    if At[j]:
                        clean = False
            if not clean:
                # a remainder smaller than the pivot survived; it becomes the new pivot
                pi, pj = t, t
                best = abs(p)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < best:
                        best, pi, pj = abs(A[i][t]), i, t
                for j in range(t + 1, n):
                    if At[j] and abs(At[j]) < best:
                        best, pi, pj = abs(At[j]), t, j
                continue
            # enforce divisibility on the remaining block
            bad = -1
            for i in range(t + 1, m):
                Ai = A[i]
                for j in range(t + 1, n):
                    if Ai[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            Ab, Ub = A[bad], U[bad]
            for j in range(t, n):
                At[j] += Ab[j]
            for j in range(m):
                Ut[j] += Ub[j]
            pi, pj = t, t
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        factors.append(A[t][t])
        t += 1

    S = IntegerMatrix.diagonal(m, n, factors)
    V = IntegerMatrix.from_rows(Vt, cols=n).transpose() if n else IntegerMatrix(0, 0)
    return SmithDecomposition(
        U=IntegerMatrix.from_rows(U, cols=m) if m else IntegerMatrix(0, 0),
        S=S,
        V=V,
        invariant_factors=tuple(factors),
    )


def invariant_factors(a: IntegerMatrix) -> tuple[int, ...]:
    """Nonzero Smith diagonal of ``a`` without building transforms.

    Fast path for the 0x0/1x1 matrices that dominate cellular complexes of
    projective spaces.
    """
    if a.rows == 0 or a.cols == 0:
        return ()
    if a.rows == 1 and a.cols == 1:
        x = a.entries[0]
        return (abs(x),) if x else ()
    return smith_normal_form(a).invariant_factors


def rank(a: IntegerMatrix) -> int:
    return len(invariant_factors(a))


def solve(a: IntegerMatrix, v: Sequence[int]) -> list[int] | None:
    """An integer ``x`` with ``a @ x == v``, or ``None`` if there is none."""
    if len(v) != a.rows:
        raise ValueError("right-hand side has the wrong length")
    snf = smith_normal_form(a)
    w = snf.U.apply(v)
    y = [0] * a.cols
    for i, w_i in enumerate(w):
        if i < snf.rank:
            d = snf.invariant_factors[i]
            if w_i % d:
                return None
            y[i] = w_i // d
        elif w_i:
            return None
    return snf.V.apply(y)


def kernel_basis(a: IntegerMatrix) -> IntegerMatrix:
    """Columns form a basis of the integer kernel of ``a`` (a saturated lattice)."""
    snf = smith_normal_form(a)
    cols = [snf.V.column(j) for j in range(snf.rank, a.cols)]
    return IntegerMatrix.from_columns(cols, a.cols)


def in_lattice(gens: IntegerMatrix, v: Sequence[int]) -> bool:
    return solve(gens, v) is not None


@dataclass(frozen=True, order=True)
class FinAbGroup:
    """Finitely generated abelian group ``Z^free_rank + Z/t_1 + ... + Z/t_r``.

    ``torsion`` is the invariant factor list, each entry dividing the next.
    Build from arbitrary cyclic orders with :meth:`from_orders`.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        t = tuple(self.torsion)
        if any(x < 2 for x in t):
            raise ValueError(f"torsion entries must be >= 2, got {t}")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a divisibility chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> FinAbGroup:
        """Normalise a direct sum of cyclic groups ``Z/o`` (``o == 0`` means ``Z``)."""
        free = free_rank
        finite = []
        for o in orders:
            o = abs(o)
            if o == 0:
                free += 1
            elif o > 1:
                finite.append(o)
        # pairwise gcd/lcm sweep turns any list into a divisibility chain
        finite.sort()
        changed = True
        while changed:
            changed = False
            for i in range(len(finite)):
                for j in range(i + 1, len(finite)):
                    a, b = finite[i], finite[j]
                    if b % a:
                        g = gcd(a, b)
                        finite[i], finite[j] = g, a // g * b
                        changed = True
            finite.sort()
        return cls(free, tuple(x for x in finite if x > 1))

    @classmethod
    def Z(cls, r: int = 1) -> FinAbGroup:
        return cls(r, ())

    @classmethod
    def cyclic(cls, order: int) -> FinAbGroup:
        return cls.from_orders(0, [order])

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Cardinality, or ``None`` for an infinite group."""
        if self.free_rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    def __add__(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup.from_orders(self.free_rank + other.free_rank,
                                      self.torsion + other.torsion)

    # Universal coefficient ingredients; ``q == 0`` stands for Z.
    def hom(self, q: int = 0) -> FinAbGroup:
        if q == 0:
            return FinAbGroup.Z(self.free_rank)
        return FinAbGroup.from_orders(0, [q] * self.free_rank + [gcd(t, q) for t in self.torsion])

    def ext(self, q: int = 0) -> FinAbGroup:
        if q == 0:
            return FinAbGroup(0, self.torsion)
        return FinAbGroup.from_orders(0, [gcd(t, q) for t in self.torsion])

    def tensor(self, q: int = 0) -> FinAbGroup:
        if q == 0:
            return self
        return self.hom(q)

    def tor(self, q: int = 0) -> FinAbGroup:
        if q == 0:
            return FinAbGroup()
        return self.ext(q)

    def __str__(self):
        return render_group(self)


def render_group(g: FinAbGroup) -> str:
    """``Z^2+Z2^3+Z4``-style text; ``0`` for the trivial group."""
    parts = []
    if g.free_rank == 1:
        parts.append("Z")
    elif g.free_rank > 1:
        parts.append(f"Z^{g.free_rank}")
    runs: list[list[int]] = []
    for t in g.torsion:
        if runs and runs[-1][0] == t:
            runs[-1][1] += 1
        else:
            runs.append([t, 1])
    for t, count in runs:
        parts.append(f"Z{t}" if count == 1 else f"Z{t}^{count}")
    return "+".join(parts) if parts else "0"


def cokernel_group(a: IntegerMatrix) -> FinAbGroup:
    """``Z^rows / im(a)``."""
    factors = invariant_factors(a)
    return FinAbGroup.from_orders(a.rows - len(factors), factors)


@dataclass(frozen=True)
class Subquotient:
    """Presentation of ``span(cycles) / span(boundaries)``.

    ``generators`` are ambient vectors (representative cycles); generator
    ``i`` has order ``orders[i]`` (``0`` for infinite order). Torsion
    generators come first, in invariant-factor order, followed by the free
    ones, so ``orders`` matches ``group``.
    """

    group: FinAbGroup
    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]
    _cycle_snf: SmithDecomposition = field(repr=False)
    _to_gens: IntegerMatrix = field(repr=False)  # rows of U^{-1}-basis coordinates kept
    ambient: int = 0

    def coordinates(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the class of ``v`` in ``generators``, reduced mod orders.

        Raises ContainmentViolation when ``v`` is not in the cycle lattice.
        """
        a = _solve_with(self._cycle_snf, v)
        if a is None:
            raise ContainmentViolation(f"vector {list(v)} is not a cycle")
        y = self._to_gens.apply(a)
        return tuple(c % o if o else c for c, o in zip(y, self.orders))

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(c % o if o else c for c, o in zip(coords, self.orders))

    def vector(self, coords: Sequence[int]) -> list[int]:
        """Ambient representative of the class with the given coordinates."""
        out = [0] * self.ambient
        for c, g in zip(coords, self.generators):
            if c:
                for i, x in enumerate(g):
                    out[i] += c * x
        return out


def _solve_with(snf: SmithDecomposition, v: Sequence[int]) -> list[int] | None:
    w = snf.U.apply(v)
    r = snf.rank
    y = [0] * snf.V.rows
    for i, w_i in enumerate(w):
        if i < r:
            d = snf.invariant_factors[i]
            if w_i % d:
                return None
            y[i] = w_i // d
        elif w_i:
            return None
    return snf.V.apply(y)


def inverse_unimodular(u: IntegerMatrix) -> IntegerMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    n = u.rows
    if n != u.cols:
        raise ValueError("not square")
    if n == 1:
        if abs(u.entries[0]) != 1:
            raise ValueError("matrix is not unimodular")
        return u
    aug = [u.row(i) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for c in range(n):
        # Euclid down the column until a unit pivot sits at (c, c)
        while True:
            nz = [i for i in range(c, n) if aug[i][c]]
            if not nz:
                raise ValueError("matrix is singular")
            p = min(nz, key=lambda i: abs(aug[i][c]))
            aug[c], aug[p] = aug[p], aug[c]
            done = True
            for i in range(c + 1, n):
                if aug[i][c]:
                    q = aug[i][c] // aug[c][c]
                    aug[i] = [x - q * y for x, y in zip(aug[i], aug[c])]
                    if aug[i][c]:
                        done = False
            if done:
                break
        if abs(aug[c][c]) != 1:
            raise ValueError("matrix is not unimodular")
        if aug[c][c] == -1:
            aug[c] = [-x for x in aug[c]]
    for c in range(n - 1, -1, -1):
        for i in range(c):
            q = aug[i][c]
            if q:
                aug[i] = [x - q * y for x, y in zip(aug[i], aug[c])]
    return IntegerMatrix.from_rows([r[n:] for r in aug], cols=n)


def subquotient_presentation(cycles: IntegerMatrix, boundaries: IntegerMatrix) -> Subquotient:
    """Present ``span(cycles) / span(boundaries)`` with explicit generators.

    ``cycles`` must have linearly independent columns (for example the output
    of :func:`kernel_basis`). Every column of ``boundaries`` must lie in the
    span of ``cycles``; otherwise ContainmentViolation is raised.
    """
    if cycles.rows != boundaries.rows:
        raise ValueError("cycles and boundaries live in different ambient groups")
    n, p = cycles.rows, cycles.cols
    csnf = smith_normal_form(cycles)
    if csnf.rank != p:
        raise ValueError("cycle generators are not linearly independent")
    # boundaries expressed in the cycle basis: cycles @ X == boundaries
    xcols = []
    for b in boundaries.columns():
        x = _solve_with(csnf, b)
        if x is None:
            raise ContainmentViolation(f"boundary {b} is not in the span of the cycles")
        xcols.append(x)
    X = IntegerMatrix.from_columns(xcols, p)
    xsnf = smith_normal_form(X)
    # cycle coordinates a -> U a; generator i is cycles @ U^{-1} e_i
    uinv = inverse_unimodular(xsnf.U) if p else IntegerMatrix(0, 0)
    diag = list(xsnf.invariant_factors) + [0] * (p - xsnf.rank)
    keep = [i for i in range(p) if diag[i] != 1]
    gens = []
    for i in keep:
        gens.append(tuple(cycles.apply(uinv.column(i))))
    orders = tuple(diag[i] for i in keep)
    to_gens = IntegerMatrix.from_rows([xsnf.U.row(i) for i in keep], cols=p)
    group = FinAbGroup.from_orders(0, orders)
    return Subquotient(group=group, generators=tuple(gens), orders=orders,
                       _cycle_snf=csnf, _to_gens=to_gens, ambient=n)


def lattice_contains(big: IntegerMatrix, small: IntegerMatrix) -> bool:
    """Whether ``span(small)`` is inside ``span(big)``."""
    if small.cols == 0:
        return True
    snf = smith_normal_form(big)
    return all(_solve_with(snf, c) is not None for c in small.columns())
