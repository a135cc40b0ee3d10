"""Symbolic spaces, their cellular chain complexes and closed-form cohomology.

Text grammar (used by the CLI)::

    X(m,n)^k     stunted real projective space RP^m/RP^n, suspended k times
    Y(m,n)^k     stunted complex projective space CP^m/CP^n, suspended k times
    S(n)         sphere
    SxS(n,k)     product of spheres
    Surf(g)^k    closed orientable surface of genus g, suspended k times
    W[a,b,...]   wedge
    (a)^k        k-fold suspension of any space; the parentheses may be
                 dropped after S(...), SxS(...) and W[...]

``^0`` may always be omitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .chain_complex import (
    ChainComplex,
    Coefficients,
    GradedGroup,
    Z,
    sphere,
    suspend,
    tensor,
    wedge,
)
from .exact_linalg import FinAbGroup, IntegerMatrix


class InvalidSpec(ValueError):
    pass


class UnsupportedSpec(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _need(cond: bool, what: str):
    if not cond:
        raise InvalidSpec(what)


@dataclass(frozen=True)
class StuntedReal:
    m: int
    n: int = 0
    k: int = 0

    def __post_init__(self):
        _need(0 <= self.n < self.m, f"need 0 <= n < m, got m={self.m}, n={self.n}")
        _need(self.k >= 0, f"need k >= 0, got {self.k}")

    def __str__(self):
        return f"X({self.m},{self.n})" + (f"^{self.k}" if self.k else "")


@dataclass(frozen=True)
class StuntedComplex:
    m: int
    n: int = 0
    k: int = 0

    def __post_init__(self):
        _need(0 <= self.n < self.m, f"need 0 <= n < m, got m={self.m}, n={self.n}")
        _need(self.k >= 0, f"need k >= 0, got {self.k}")

    def __str__(self):
        return f"Y({self.m},{self.n})" + (f"^{self.k}" if self.k else "")


@dataclass(frozen=True)
class Sphere:
    n: int

    def __post_init__(self):
        _need(self.n >= 1, f"need n >= 1, got {self.n}")

    def __str__(self):
        return f"S({self.n})"


@dataclass(frozen=True)
class SphereProduct:
    n: int
    k: int

    def __post_init__(self):
        _need(self.n >= 1 and self.k >= 1, f"need n, k >= 1, got {self.n}, {self.k}")

    def __str__(self):
        return f"SxS({self.n},{self.k})"


@dataclass(frozen=True)
class SurfaceSuspension:
    g: int
    k: int = 0

    def __post_init__(self):
        _need(self.g >= 1, f"need genus >= 1, got {self.g}")
        _need(self.k >= 0, f"need k >= 0, got {self.k}")

    def __str__(self):
        return f"Surf({self.g})" + (f"^{self.k}" if self.k else "")


@dataclass(frozen=True)
class Wedge:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        _need(len(self.parts) >= 1, "wedge needs at least one summand")

    def __str__(self):
        return "W[" + ",".join(str(p) for p in self.parts) + "]"


@dataclass(frozen=True)
class Suspension:
    base: "SpaceSpec"
    k: int = 1

    def __post_init__(self):
        _need(self.k >= 1, f"need k >= 1, got {self.k}")

    def __str__(self):
        if isinstance(self.base, (Sphere, SphereProduct, Wedge)):
            return f"{self.base}^{self.k}"
        return f"({self.base})^{self.k}"


SpaceSpec = Union[StuntedReal, StuntedComplex, Sphere, SphereProduct,
                  SurfaceSuspension, Wedge, Suspension]


def is_suspension(s: SpaceSpec) -> bool:
    if isinstance(s, Suspension):
        return True
    if isinstance(s, (StuntedReal, StuntedComplex, SurfaceSuspension)):
        return s.k >= 1
    return False


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise ParseError(self.text, self.pos, msg)

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            self.fail(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected a non-negative integer")
        return int(self.text[start:self.pos])

    def exponent(self) -> int | None:
        if self.peek("^"):
            self.pos += 1
            return self.integer()
        return None

    def build(self, ctor, *args):
        try:
            return ctor(*args)
        except InvalidSpec as e:
            self.fail(str(e))

    def spec(self) -> SpaceSpec:
        start = self.pos
        if self.peek("SxS("):
            self.pos += 4
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect(")")
            return self.suspended(self.build(SphereProduct, a, b), start)
        if self.peek("Surf("):
            self.pos += 5
            g = self.integer()
            self.expect(")")
            return self.build(SurfaceSuspension, g, self.exponent() or 0)
        if self.peek("S("):
            self.pos += 2
            n = self.integer()
            self.expect(")")
            return self.suspended(self.build(Sphere, n), start)
        for prefix, ctor in (("X(", StuntedReal), ("Y(", StuntedComplex)):
            if self.peek(prefix):
                self.pos += 2
                m = self.integer()
                self.expect(",")
                n = self.integer()
                self.expect(")")
                return self.build(ctor, m, n, self.exponent() or 0)
        if self.peek("W["):
            self.pos += 2
            parts = [self.spec()]
            while self.peek(","):
                self.pos += 1
                parts.append(self.spec())
            self.expect("]")
            return self.suspended(self.build(Wedge, tuple(parts)), start)
        if self.peek("("):
            self.pos += 1
            inner = self.spec()
            self.expect(")")
            return self.suspended(inner, start)
        self.fail("expected a space")

    def suspended(self, s: SpaceSpec, start: int) -> SpaceSpec:
        k = self.exponent()
        return self.build(Suspension, s, k) if k else s


def parse_spec(text: str) -> SpaceSpec:
    """Parse the textual grammar; whitespace is ignored."""
    compact = "".join(text.split())
    p = _Parser(compact)
    s = p.spec()
    if p.pos != len(compact):
        p.fail("trailing input")
    return s


def format_spec(s: SpaceSpec) -> str:
    return str(s)


# ---------------------------------------------------------------------------
# chain complexes


def stunted_real_complex(m: int, n: int) -> ChainComplex:
    """Cells in degree 0 and n+1..m; ``d_j`` is multiplication by ``1 + (-1)^j`` above n+1."""
    ranks = {0: 1}
    bds = {}
    for j in range(n + 1, m + 1):
        ranks[j] = 1
        if j >= n + 2 and j % 2 == 0:
            bds[j] = IntegerMatrix(1, 1, [2])
    return ChainComplex(ranks, bds)


def stunted_complex_complex(m: int, n: int) -> ChainComplex:
    ranks = {0: 1}
    for i in range(n + 1, m + 1):
        ranks[2 * i] = 1
    return ChainComplex(ranks)


def surface_complex(g: int) -> ChainComplex:
    return ChainComplex({0: 1, 1: 2 * g, 2: 1})


@lru_cache(maxsize=None)
def build_complex(s: SpaceSpec) -> ChainComplex:
    """Cellular chain complex of ``s``; results are cached per spec."""
    if isinstance(s, StuntedReal):
        c = stunted_real_complex(s.m, s.n)
        return suspend(c, s.k) if s.k else c
    if isinstance(s, StuntedComplex):
        c = stunted_complex_complex(s.m, s.n)
        return suspend(c, s.k) if s.k else c
    if isinstance(s, Sphere):
        return sphere(s.n)
    if isinstance(s, SphereProduct):
        return tensor(sphere(s.n), sphere(s.k))
    if isinstance(s, SurfaceSuspension):
        c = surface_complex(s.g)
        return suspend(c, s.k) if s.k else c
    if isinstance(s, Wedge):
        c = build_complex(s.parts[0])
        for p in s.parts[1:]:
            c = wedge(c, build_complex(p))
        return c
    if isinstance(s, Suspension):
        return suspend(build_complex(s.base), s.k)
    raise InvalidSpec(f"not a space spec: {s!r}")


def dimension(s: SpaceSpec) -> int:
    return build_complex(s).top_degree


# ---------------------------------------------------------------------------
# closed-form tables


def _real_homology(m: int, n: int, k: int) -> GradedGroup:
    out = {}
    for j in range(m + k + 1):
        i = j - k
        if j == 0 or (i == n + 1 and i % 2 == 0) or (i == m and i % 2 == 1):
            out[j] = FinAbGroup.Z()
        elif i % 2 == 1 and n + k < j < m + k:
            out[j] = FinAbGroup.cyclic(2)
    return GradedGroup(out)


def _real_cohomology(m: int, n: int, k: int) -> GradedGroup:
    out = {}
    for j in range(m + k + 1):
        i = j - k
        if j == 0 or (i == n + 1 and i % 2 == 0) or (i == m and i % 2 == 1):
            out[j] = FinAbGroup.Z()
        elif i % 2 == 0 and n + k + 1 < j <= m + k:
            out[j] = FinAbGroup.cyclic(2)
    return GradedGroup(out)


def _complex_cohomology(m: int, n: int, k: int) -> GradedGroup:
    out = {}
    for j in range(2 * m + k + 1):
        if j == 0 or (2 * n + k + 2 <= j <= 2 * m + k and (j - k) % 2 == 0):
            out[j] = FinAbGroup.Z()
    return GradedGroup(out)


def closed_form_homology(s: SpaceSpec, coeff: Coefficients = Z) -> GradedGroup:
    """Tabulated homology of a stunted projective space.

    The complex family is torsion free, so its homology table is the
    cohomology table. Finite coefficients go through universal coefficients.
    """
    if isinstance(s, StuntedReal):
        h = _real_homology(s.m, s.n, s.k)
    elif isinstance(s, StuntedComplex):
        h = _complex_cohomology(s.m, s.n, s.k)
    else:
        raise UnsupportedSpec(f"no closed form for {s}")
    if coeff.is_integral:
        return h
    q = coeff.q
    top = max(h, default=0)
    return GradedGroup({j: h[j].tensor(q) + h[j - 1].tor(q) for j in range(top + 2)})


def closed_form_cohomology(s: SpaceSpec, coeff: Coefficients = Z) -> GradedGroup:
    """Tabulated integral cohomology of ``X(m,n)^k`` or ``Y(m,n)^k``."""
    if isinstance(s, StuntedReal):
        if coeff.is_integral:
            return _real_cohomology(s.m, s.n, s.k)
    elif isinstance(s, StuntedComplex):
        if coeff.is_integral:
            return _complex_cohomology(s.m, s.n, s.k)
    else:
        raise UnsupportedSpec(f"no closed form for {s}")
    h = closed_form_homology(s)
    q = coeff.q
    top = max(h, default=0)
    return GradedGroup({j: h[j].hom(q) + h[j - 1].ext(q) for j in range(top + 2)})


def recognize_splitting(s: SpaceSpec) -> SpaceSpec | None:
    """Simpler homotopy-equivalent spec for the two top-cell quotients.

    ``X(m,m-1)`` is ``S(m)``; ``X(m,m-2)`` is ``S(m) v S(m-1)`` for odd m and
    ``(m-2)``-fold suspended ``RP^2`` for even m. The complex family doubles
    dimensions. Returns ``None`` when no splitting applies or when the space
    already is the split form (``X(2,0)``, ``Y(2,0)``).
    """
    if isinstance(s, StuntedReal):
        m, n, k = s.m, s.n, s.k
        if n == m - 1:
            return Sphere(m + k)
        if n == m - 2:
            if m % 2:
                return Wedge((Sphere(m + k), Sphere(m - 1 + k)))
            shift = m - 2 + k
            return Suspension(StuntedReal(2, 0, 0), shift) if shift else None
        return None
    if isinstance(s, StuntedComplex):
        m, n, k = s.m, s.n, s.k
        if n == m - 1:
            return Sphere(2 * m + k)
        if n == m - 2:
            if m % 2:
                return Wedge((Sphere(2 * m + k), Sphere(2 * m - 2 + k)))
            shift = 2 * m - 4 + k
            return Suspension(StuntedComplex(2, 0, 0), shift) if shift else None
        return None
    return None
