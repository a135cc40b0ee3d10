"""Chain complexes of finitely generated free abelian groups.

A complex stores ``ranks[j]`` (rank of ``C_j``) and ``boundaries[j]``, the
matrix of ``d_j : C_j -> C_{j-1}`` of shape ``ranks[j-1] x ranks[j]``.
Degrees of rank zero are simply absent.

Cohomology uses the coboundary ``delta_j = d_{j+1}^T : C^j -> C^{j+1}``.
Tensor products use the Koszul sign ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Mapping

from .exact_linalg import (
    FinAbGroup,
    IntegerMatrix,
    Subquotient,
    invariant_factors,
    kernel_basis,
    lattice_contains,
    render_group,
    smith_normal_form,
    subquotient_presentation,
)


class NotAComplex(ValueError):
    def __init__(self, degree: int, reason: str = "d o d != 0"):
        super().__init__(f"not a chain complex at degree {degree}: {reason}")
        self.degree = degree


class NotBased(ValueError):
    """The complex has no 0-cell to serve as a basepoint."""


class LiftFailure(RuntimeError):
    """A mod-q cocycle did not lift; only possible for a corrupted complex."""


@dataclass(frozen=True)
class Coefficients:
    """``q == 0`` is the integers, ``q >= 2`` is ``Z/q``."""

    q: int = 0

    def __post_init__(self):
        if self.q != 0 and self.q < 2:
            raise ValueError(f"modulus must be >= 2, got {self.q}")

    @classmethod
    def parse(cls, text: str) -> Coefficients:
        t = text.strip().upper()
        if t == "Z":
            return cls(0)
        if t.startswith("Z") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown coefficients {text!r}")

    @property
    def is_integral(self) -> bool:
        return self.q == 0

    def __str__(self):
        return "Z" if self.q == 0 else f"Z{self.q}"


Z = Coefficients(0)


class GradedGroup(Mapping[int, FinAbGroup]):
    """Degree -> group, storing only nontrivial groups.

    Lookups of absent degrees return the trivial group.
    """

    def __init__(self, groups: Mapping[int, FinAbGroup] | None = None):
        self._groups = {j: g for j, g in sorted((groups or {}).items()) if not g.is_trivial}

    def __getitem__(self, j: int) -> FinAbGroup:
        return self._groups.get(j, FinAbGroup())

    def __iter__(self) -> Iterator[int]:
        return iter(self._groups)

    def __len__(self) -> int:
        return len(self._groups)

    def __contains__(self, j) -> bool:
        return j in self._groups

    def __eq__(self, other):
        if isinstance(other, GradedGroup):
            return self._groups == other._groups
        if isinstance(other, Mapping):
            return self == GradedGroup(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._groups.items()))

    def reduced(self, coeff: Coefficients | None = None) -> GradedGroup:
        """Drop one copy of the coefficient group from degree 0."""
        q = coeff.q if coeff is not None else 0
        g = dict(self._groups)
        if 0 in g:
            h0 = g[0]
            if q == 0:
                g[0] = FinAbGroup(max(h0.free_rank - 1, 0), h0.torsion)
            elif q in h0.torsion:
                t = list(h0.torsion)
                t.remove(q)
                g[0] = FinAbGroup.from_orders(h0.free_rank, t)
            else:
                raise ValueError(f"degree 0 has no Z{q} summand to remove")
        return GradedGroup(g)

    def shift(self, k: int) -> GradedGroup:
        return GradedGroup({j + k: g for j, g in self._groups.items()})

    def __repr__(self):
        inner = ", ".join(f"{j}: {render_group(g)}" for j, g in self._groups.items())
        return f"GradedGroup({{{inner}}})"


@dataclass(frozen=True, eq=False)
class ChainComplex:
    ranks: Mapping[int, int]
    boundaries: Mapping[int, IntegerMatrix] = field(default_factory=dict)

    def __post_init__(self):
        ranks = {j: r for j, r in self.ranks.items() if r}
        if any(j < 0 for j in ranks):
            raise ValueError("negative degree")
        bds = {}
        for j, m in self.boundaries.items():
            if m.rows and m.cols:
                bds[j] = m
            elif (m.rows, m.cols) != (ranks.get(j - 1, 0), ranks.get(j, 0)):
                raise NotAComplex(j, f"boundary shape {m.shape} does not match ranks")
        object.__setattr__(self, "ranks", dict(sorted(ranks.items())))
        object.__setattr__(self, "boundaries", dict(sorted(bds.items())))
        object.__setattr__(self, "_cache", {})

    @property
    def top_degree(self) -> int:
        return max(self.ranks, default=0)

    def rank(self, j: int) -> int:
        return self.ranks.get(j, 0)

    def d(self, j: int) -> IntegerMatrix:
        m = self.boundaries.get(j)
        if m is not None:
            return m
        return IntegerMatrix(self.rank(j - 1), self.rank(j))

    def coboundary(self, j: int) -> IntegerMatrix:
        """``delta_j : C^j -> C^{j+1}``."""
        key = ("delta", j)
        if key not in self._cache:
            self._cache[key] = self.d(j + 1).transpose()
        return self._cache[key]

    def factors(self, j: int) -> tuple[int, ...]:
        key = ("d", j)
        if key not in self._cache:
            self._cache[key] = invariant_factors(self.d(j))
        return self._cache[key]

    def cofactors(self, j: int) -> tuple[int, ...]:
        key = ("delta_f", j)
        if key not in self._cache:
            self._cache[key] = invariant_factors(self.coboundary(j))
        return self._cache[key]

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * r for j, r in self.ranks.items())

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.ranks == other.ranks and self.boundaries == other.boundaries

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks}, boundaries={self.boundaries})"


def point() -> ChainComplex:
    return ChainComplex({0: 1})


def sphere(n: int) -> ChainComplex:
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    return ChainComplex({0: 1, n: 1})


def validate(c: ChainComplex) -> None:
    """Raise NotAComplex at the first degree where shapes or ``d o d`` fail."""
    if c._cache.get("valid"):
        return
    for j, m in c.boundaries.items():
        if m.shape != (c.rank(j - 1), c.rank(j)):
            raise NotAComplex(j, f"boundary shape {m.shape} does not match ranks")
    for j in sorted(c.boundaries):
        if j - 1 in c.boundaries and not (c.boundaries[j - 1] @ c.boundaries[j]).is_zero():
            raise NotAComplex(j)
    c._cache["valid"] = True


def homology(c: ChainComplex, coeff: Coefficients = Z) -> GradedGroup:
    validate(c)
    key = ("H", coeff.q)
    if key in c._cache:
        return c._cache[key]
    top = c.top_degree
    integral = {}
    for j in range(top + 1):
        free = c.rank(j) - len(c.factors(j)) - len(c.factors(j + 1))
        integral[j] = FinAbGroup.from_orders(free, c.factors(j + 1))
    if coeff.is_integral:
        out = GradedGroup(integral)
    else:
        q = coeff.q
        zero = FinAbGroup()
        out = GradedGroup({
            j: integral.get(j, zero).tensor(q) + integral.get(j - 1, zero).tor(q)
            for j in range(top + 2)
        })
    c._cache[key] = out
    return out


def cohomology(c: ChainComplex, coeff: Coefficients = Z) -> GradedGroup:
    """Integral cohomology from the dual complex; ``Z/q`` via universal coefficients."""
    validate(c)
    key = ("Hc", coeff.q)
    if key in c._cache:
        return c._cache[key]
    top = c.top_degree
    if coeff.is_integral:
        groups = {}
        for j in range(top + 1):
            free = c.rank(j) - len(c.cofactors(j)) - len(c.cofactors(j - 1))
            groups[j] = FinAbGroup.from_orders(free, c.cofactors(j - 1))
        out = GradedGroup(groups)
    else:
        q = coeff.q
        h = homology(c)
        out = GradedGroup({j: h[j].hom(q) + h[j - 1].ext(q) for j in range(top + 1)})
    c._cache[key] = out
    return out


def uct_cohomology(h: Mapping[int, FinAbGroup], coeff: Coefficients = Z) -> GradedGroup:
    """Cohomology predicted from integral homology by universal coefficients."""
    h = GradedGroup(h)
    top = max(h, default=0)
    return GradedGroup({j: h[j].hom(coeff.q) + h[j - 1].ext(coeff.q) for j in range(top + 2)})


def suspend(c: ChainComplex, k: int = 1) -> ChainComplex:
    """Reduced ``k``-fold suspension by shifting cells.

    The first 0-cell is the basepoint and stays in degree 0. Any other 0-cells
    move to degree ``k`` together with ``d_1`` minus its basepoint row; this
    is the reduced complex whenever ``d_1`` respects the augmentation.
    """
    if k < 1:
        raise ValueError("suspension order must be >= 1")
    r0 = c.rank(0)
    if r0 == 0:
        raise NotBased("complex has no 0-cell")
    ranks = {0: 1}
    bds = {}
    if r0 > 1:
        ranks[k] = r0 - 1
    for j, r in c.ranks.items():
        if j > 0:
            ranks[j + k] = r
    for j, m in c.boundaries.items():
        if j == 1:
            if r0 > 1:
                bds[1 + k] = IntegerMatrix.from_rows(m.tolist()[1:], cols=m.cols)
        else:
            bds[j + k] = m
    return ChainComplex(ranks, bds)


def _block(rows: list[int], cols: list[int], blocks: dict[tuple[int, int], IntegerMatrix]) -> IntegerMatrix:
    """Assemble a block matrix; missing blocks are zero."""
    R, C = sum(rows), sum(cols)
    out = [[0] * C for _ in range(R)]
    roff = [sum(rows[:i]) for i in range(len(rows))]
    coff = [sum(cols[:i]) for i in range(len(cols))]
    for (bi, bj), m in blocks.items():
        for i in range(m.rows):
            row = out[roff[bi] + i]
            for j in range(m.cols):
                row[coff[bj] + j] = m[i, j]
    return IntegerMatrix(R, C, [x for r in out for x in r])


def wedge(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """One-point union: the first 0-cells of ``a`` and ``b`` are identified."""
    if a.rank(0) == 0 or b.rank(0) == 0:
        raise NotBased("wedge needs based complexes")
    ra0, rb0 = a.rank(0), b.rank(0)
    ranks = {0: ra0 + rb0 - 1}
    for j in set(a.ranks) | set(b.ranks):
        if j > 0:
            ranks[j] = a.rank(j) + b.rank(j)
    bds = {}
    for j in set(a.boundaries) | set(b.boundaries):
        da, db = a.d(j), b.d(j)
        if j == 1:
            # b's basepoint row folds into a's basepoint row
            rows = [[0] * (da.cols + db.cols) for _ in range(ranks[0])]
            for i in range(da.rows):
                for col in range(da.cols):
                    rows[i][col] = da[i, col]
            for i in range(db.rows):
                target = 0 if i == 0 else ra0 + i - 1
                for col in range(db.cols):
                    rows[target][da.cols + col] += db[i, col]
            bds[1] = IntegerMatrix.from_rows(rows, cols=da.cols + db.cols)
        else:
            bds[j] = _block([da.rows, db.rows], [da.cols, db.cols], {(0, 0): da, (1, 1): db})
    return ChainComplex(ranks, bds)


def _kron(x: IntegerMatrix, y: IntegerMatrix) -> IntegerMatrix:
    rows, cols = x.rows * y.rows, x.cols * y.cols
    out = [0] * (rows * cols)
    for i in range(x.rows):
        for j in range(x.cols):
            a = x[i, j]
            if a:
                for k in range(y.rows):
                    base = (i * y.rows + k) * cols + j * y.cols
                    for l in range(y.cols):
                        out[base + l] = a * y[k, l]
    return IntegerMatrix(rows, cols, out)


def tensor(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """Tensor product; the basis of degree ``n`` lists ``a_i (x) b_{n-i}`` by increasing ``i``."""
    validate(a)
    validate(b)
    ranks = {}
    parts: dict[int, list[tuple[int, int]]] = {}
    for i, ri in a.ranks.items():
        for j, rj in b.ranks.items():
            ranks[i + j] = ranks.get(i + j, 0) + ri * rj
            parts.setdefault(i + j, []).append((i, j))
    for n in parts:
        parts[n].sort()
    bds = {}
    for n, src in parts.items():
        tgt = parts.get(n - 1, [])
        if not tgt:
            continue
        tindex = {p: idx for idx, p in enumerate(tgt)}
        blocks = {}
        for sidx, (i, j) in enumerate(src):
            if (i - 1, j) in tindex and a.rank(i - 1):
                blocks[(tindex[(i - 1, j)], sidx)] = _kron(a.d(i), IntegerMatrix.identity(b.rank(j)))
            if (i, j - 1) in tindex and b.rank(j - 1):
                sign = -1 if i % 2 else 1
                blocks[(tindex[(i, j - 1)], sidx)] = _kron(IntegerMatrix.identity(a.rank(i)), b.d(j)).scale(sign)
        rows = [a.rank(i) * b.rank(j) for i, j in tgt]
        cols = [a.rank(i) * b.rank(j) for i, j in src]
        m = _block(rows, cols, blocks)
        if not m.is_zero():
            bds[n] = m
    return ChainComplex(ranks, bds)


# ---------------------------------------------------------------------------
# cochain-level presentations and induced maps


@dataclass(frozen=True)
class PresentedMap:
    """A homomorphism between presented groups.

    ``matrix`` acts on generator coordinates (column ``i`` is the image of
    source generator ``i``); ``*_orders`` give each generator's order with
    ``0`` meaning infinite.
    """

    source: FinAbGroup
    target: FinAbGroup
    matrix: IntegerMatrix
    source_orders: tuple[int, ...]
    target_orders: tuple[int, ...]

    def image_lattice(self) -> IntegerMatrix:
        b = len(self.target_orders)
        cols = self.matrix.columns() + _relation_columns(self.target_orders)
        return IntegerMatrix.from_columns(cols, b)

    def kernel_lattice(self) -> IntegerMatrix:
        """Generators of ``{x : M x == 0 in target}`` inside ``Z^a``."""
        a, b = len(self.source_orders), len(self.target_orders)
        if a == 0:
            return IntegerMatrix(0, 0)
        rel = IntegerMatrix.from_columns(_relation_columns(self.target_orders), b)
        big = self.matrix.hstack(rel) if rel.cols else self.matrix
        if b == 0:
            return IntegerMatrix.identity(a)
        kb = kernel_basis(big)
        return IntegerMatrix.from_columns([col[:a] for col in kb.columns()], a)

    @property
    def injective(self) -> bool:
        for col in self.kernel_lattice().columns():
            for x, o in zip(col, self.source_orders):
                if (o == 0 and x) or (o and x % o):
                    return False
        return True

    @property
    def surjective(self) -> bool:
        b = len(self.target_orders)
        return lattice_contains(self.image_lattice(), IntegerMatrix.identity(b))

    @property
    def is_zero(self) -> bool:
        return all(x % o == 0 if o else x == 0
                   for col in self.matrix.columns() for x, o in zip(col, self.target_orders))

    @property
    def is_isomorphism(self) -> bool:
        return self.injective and self.surjective

    def flags(self) -> dict[str, bool]:
        return {"injective": self.injective, "surjective": self.surjective}


def _relation_columns(orders) -> list[list[int]]:
    n = len(orders)
    return [[o if i == k else 0 for i in range(n)] for k, o in enumerate(orders) if o]


def is_exact_at(f: PresentedMap, g: PresentedMap) -> bool:
    """``im f == ker g`` as subgroups of the middle group."""
    if f.target_orders != g.source_orders:
        raise ValueError("maps are not composable")
    b = len(f.target_orders)
    if b == 0:
        return True
    im = f.image_lattice()
    ker = g.kernel_lattice()
    rel = IntegerMatrix.from_columns(_relation_columns(f.target_orders), b)
    ker_full = ker.hstack(rel) if rel.cols else ker
    return lattice_contains(ker_full, im) and lattice_contains(im, ker_full)


class CochainPresenter:
    """Memoised cocycle presentations of one complex.

    Shared by the induced-map operations so sweeps over many degrees build
    each presentation once.
    """

    def __init__(self, c: ChainComplex):
        validate(c)
        self.c = c
        self._int: dict[int, Subquotient] = {}
        self._mod: dict[tuple[int, int], Subquotient] = {}

    def integral(self, j: int) -> Subquotient:
        if j not in self._int:
            c = self.c
            cycles = kernel_basis(c.coboundary(j)) if c.rank(j) else IntegerMatrix(0, 0)
            self._int[j] = subquotient_presentation(cycles, c.coboundary(j - 1))
        return self._int[j]

    def mod(self, j: int, q: int) -> Subquotient:
        key = (j, q)
        if key not in self._mod:
            c = self.c
            r = c.rank(j)
            delta = c.coboundary(j)
            # {x : delta x == 0 mod q} = V diag(q / gcd(q, s_i), ..., 1, ...) Z^r
            snf = smith_normal_form(delta)
            scale = [q // gcd(q, s) for s in snf.invariant_factors] + [1] * (r - snf.rank)
            cycles = IntegerMatrix.from_columns(
                [[x * scale[i] for x in snf.V.column(i)] for i in range(r)], r)
            prev = c.coboundary(j - 1)
            qI = IntegerMatrix.identity(r).scale(q)
            bounds = prev.hstack(qI) if prev.cols else qI
            self._mod[key] = subquotient_presentation(cycles, bounds)
        return self._mod[key]

    def reduction(self, j: int, q: int) -> PresentedMap:
        src, tgt = self.integral(j), self.mod(j, q)
        cols = [list(tgt.coordinates(g)) for g in src.generators]
        return _map(src, tgt, cols)

    def bockstein(self, j: int, q: int = 2) -> PresentedMap:
        src, tgt = self.mod(j, q), self.integral(j + 1)
        delta = self.c.coboundary(j)
        cols = []
        for g in src.generators:
            w = delta.apply(g)
            if any(x % q for x in w):
                raise LiftFailure(f"coboundary {w} of a mod-{q} cocycle is not divisible by {q}")
            cols.append(list(tgt.coordinates([x // q for x in w])))
        return _map(src, tgt, cols)

    def multiplication(self, j: int, n: int) -> PresentedMap:
        p = self.integral(j)
        cols = [list(p.reduce([n if i == k else 0 for i in range(len(p.orders))]))
                for k in range(len(p.orders))]
        return _map(p, p, cols)


def _map(src: Subquotient, tgt: Subquotient, cols: list[list[int]]) -> PresentedMap:
    return PresentedMap(
        source=src.group,
        target=tgt.group,
        matrix=IntegerMatrix.from_columns(cols, len(tgt.orders)),
        source_orders=src.orders,
        target_orders=tgt.orders,
    )


def coefficient_reduction(c: ChainComplex, j: int, q: int = 2) -> PresentedMap:
    """``rho_q : H^j(C; Z) -> H^j(C; Z/q)`` on explicit cocycles."""
    if q not in (2, 4):
        raise ValueError("coefficient reduction is supported for q in {2, 4}")
    return CochainPresenter(c).reduction(j, q)


def bockstein_integral(c: ChainComplex, j: int, q: int = 2) -> PresentedMap:
    """Connecting map ``H^j(C; Z/q) -> H^{j+1}(C; Z)`` of ``0 -> Z -> Z -> Z/q -> 0``."""
    return CochainPresenter(c).bockstein(j, q)


def bockstein_exactness(c: ChainComplex, degrees=None, q: int = 2) -> dict[tuple[int, str], bool]:
    """Exactness of ``H^j(Z) -q-> H^j(Z) -rho-> H^j(Z/q) -beta-> H^{j+1}(Z) -q-> H^{j+1}(Z)``.

    Returns ``{(j, node): ok}`` for the nodes ``"Z"`` (at the second
    ``H^j(Z)``), ``"Zq"`` and ``"Z+1"`` (at the first ``H^{j+1}(Z)``).
    """
    p = CochainPresenter(c)
    if degrees is None:
        degrees = range(c.top_degree + 1)
    out = {}
    for j in degrees:
        times = p.multiplication(j, q)
        rho = p.reduction(j, q)
        beta = p.bockstein(j, q)
        times_next = p.multiplication(j + 1, q)
        out[(j, "Z")] = is_exact_at(times, rho)
        out[(j, "Zq")] = is_exact_at(rho, beta)
        out[(j, "Z+1")] = is_exact_at(beta, times_next)
    return out
