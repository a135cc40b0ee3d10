"""P-triviality decisions for stunted projective spaces and friends.

A space is P-trivial when every real vector bundle over it has total
Pontrjagin class 1. Verdicts carry a rule identifier and a short citation
naming the result they rest on, so CLI output can be traced back.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .chain_complex import CochainPresenter, cohomology
from .exact_linalg import FinAbGroup
from .spaces import (
    Sphere,
    SphereProduct,
    SpaceSpec,
    StuntedComplex,
    StuntedReal,
    SurfaceSuspension,
    Suspension,
    Wedge,
    build_complex,
    is_suspension,
)


class BadRange(ValueError):
    pass


class Status(str, enum.Enum):
    P_TRIVIAL = "PTrivial"
    NOT_P_TRIVIAL = "NotPTrivial"
    NOT_COVERED = "NotCovered"

    def __str__(self):
        return self.value


P, NOT, UNKNOWN = Status.P_TRIVIAL, Status.NOT_P_TRIVIAL, Status.NOT_COVERED


@dataclass(frozen=True)
class Verdict:
    status: Status
    rule_id: str
    citation: str

    @property
    def p_trivial(self) -> bool:
        return self.status is P


# Citation strings name results by their content.
CITE = {
    "sphere": "sphere rule: S^n is not P-trivial iff n = 0 mod 4",
    "rp": "RP^m for m >= 4 is not P-trivial: w_2(tautological)^2 = w_4 != 0; RP^1..RP^3 have no H^4",
    "susp-rp": "suspended RP^m lemma: X(m,0)^k (k > 0) is not P-trivial iff m odd and m+k = 0 mod 4",
    "n3mod4": "X(m,n) is not P-trivial for n = 3 mod 4 (K-theory surjection onto X(n+2,n))",
    "phi-bound": "X(m,n), n != 3 mod 4, g = phi(n,0): P-trivial iff m < 2^(g+1)",
    "susp-stunted": ("suspended stunted lemma: X(m,n)^k (0<n, k>0) is not P-trivial iff "
                     "k, m odd with k+m = 0 mod 4, or k even, n odd with k+n+1 = 0 mod 4"),
    "y-k-odd": "Y(m,n)^k with k odd has cohomology only in odd degrees",
    "y-sphere": "Y(m,m-1)^k is the sphere S^(2m+k); sphere rule",
    "y-low": "Y(m,n)^k with k even and n <= m-2 is never P-trivial",
    "sxs": "S^n x S^k is not P-trivial iff n+k = 0 mod 4 or one of n, k is 0 mod 4",
    "surf": ("suspended surfaces: Sigma X and X are P-trivial (no H^4), "
             "Sigma^2 X maps by degree one onto S^4, Sigma^3 X is not P-trivial"),
    "manifold": "Sigma^k M is not P-trivial for a closed orientable n-manifold M with n, k = 0 mod 4",
    "wedge-retract": "a wedge retracts onto each summand, so one non-P-trivial summand suffices",
    "wedge-all": "reduced cohomology of a wedge is the sum over the summands, so P-trivial summands give a P-trivial wedge",
    "cert-vanishing": "Pontrjagin classes live in H^(4j); all of these groups vanish",
    "cert-rho2": "suspension with rho_2 injective on every nonzero H^(4j)",
    "thm-real": "stunted real classification, literal reading of clauses (a)-(d)",
    "thm-complex": "stunted complex classification, literal reading of clauses (a)-(b)",
}


def _v(status: Status, rule: str, detail: str = "") -> Verdict:
    cite = CITE[rule.split(":")[0]]
    return Verdict(status, rule, f"{cite} [{detail}]" if detail else cite)


def phi(m: int, n: int = 0) -> int:
    """Number of integers ``n < s <= m`` with ``s = 0, 1, 2, 4 (mod 8)``."""
    if n < 0 or m < 0 or n > m:
        raise BadRange(f"phi needs 0 <= n <= m, got m={m}, n={n}")
    return _phi_upto(m) - _phi_upto(n)


def _phi_upto(m: int) -> int:
    r = m % 8
    return 4 * (m // 8) + (r >= 1) + (r >= 2) + (r >= 4)


def _check_mnk(m, n, k):
    if not (0 <= n < m) or k < 0:
        raise BadRange(f"need 0 <= n < m and k >= 0, got m={m}, n={n}, k={k}")


def classify_sphere(n: int) -> Verdict:
    if n < 1:
        raise BadRange(f"sphere dimension must be >= 1, got {n}")
    return _v(NOT if n % 4 == 0 else P, "sphere", f"n={n}")


def classify_stunted_real(m: int, n: int, k: int = 0) -> Verdict:
    _check_mnk(m, n, k)
    if n == 0 and k == 0:
        return _v(NOT if m >= 4 else P, "rp", f"m={m}")
    if n == 0:
        hit = m % 2 == 1 and (m + k) % 4 == 0
        return _v(NOT if hit else P, "susp-rp", f"m={m}, k={k}")
    if k == 0:
        verdict = _classify_xmn(m, n)
        # the top-cell quotients are spheres or known splittings and must agree
        if n == m - 1:
            expect = classify_sphere(m).status
        elif n == m - 2:
            expect = NOT if m % 4 == 1 else P
        else:
            expect = verdict.status
        if expect is not verdict.status:
            raise AssertionError(f"splitting cross-check failed for X({m},{n})")
        return verdict
    hit = (k % 2 == 1 and m % 2 == 1 and (k + m) % 4 == 0) or \
          (k % 2 == 0 and n % 2 == 1 and (k + n + 1) % 4 == 0)
    return _v(NOT if hit else P, "susp-stunted", f"m={m}, n={n}, k={k}")


def _classify_xmn(m: int, n: int) -> Verdict:
    if n % 4 == 3:
        return _v(NOT, "n3mod4", f"n={n}")
    g = phi(n, 0)
    bound = 2 ** (g + 1)
    if n % 2 == 0:
        family = "n even"
    elif n % 8 == 1:
        family = "n = 1 mod 8"
    else:
        family = "n = 5 mod 8"
    return _v(P if m < bound else NOT, "phi-bound", f"{family}, g={g}, m={m}, 2^(g+1)={bound}")


def classify_stunted_complex(m: int, n: int, k: int = 0) -> Verdict:
    _check_mnk(m, n, k)
    if k % 2 == 1:
        return _v(P, "y-k-odd", f"k={k}")
    if n == m - 1:
        s = classify_sphere(2 * m + k)
        return Verdict(s.status, "y-sphere", f"{CITE['y-sphere']} [2m+k={2 * m + k}]")
    return _v(NOT, "y-low", f"m={m}, n={n}, k={k}")


def classify_sphere_product(n: int, k: int) -> Verdict:
    if n < 1 or k < 1:
        raise BadRange(f"sphere dimensions must be >= 1, got {n}, {k}")
    hit = (n + k) % 4 == 0 or n % 4 == 0 or k % 4 == 0
    return _v(NOT if hit else P, "sxs", f"n={n}, k={k}")


def classify_surface_suspension(g: int, k: int = 0) -> Verdict:
    if g < 1 or k < 0:
        raise BadRange(f"need genus >= 1 and k >= 0, got g={g}, k={k}")
    if k <= 1:
        return _v(P, "surf", f"k={k}")
    if k <= 3:
        return _v(NOT, "surf", f"k={k}")
    return _v(UNKNOWN, "surf", f"k={k} is outside the decided range k <= 3")


# ---------------------------------------------------------------------------
# certificates


class CertificateKind(str, enum.Enum):
    VANISHING_H4J = "VanishingH4j"
    RHO2_INJECTIVE_SUSPENSION = "Rho2InjectiveSuspension"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Certificate:
    """Machine-checkable proof of P-triviality.

    ``witness`` holds ``(degree, group, flags)`` for each degree ``4j``;
    ``flags`` is ``None`` for vanishing certificates and the injectivity /
    surjectivity of ``rho_2`` otherwise.
    """

    kind: CertificateKind
    witness: tuple[tuple[int, FinAbGroup, dict | None], ...] = field(default=())

    def verify(self, s: SpaceSpec) -> bool:
        """Recompute the witness from the chain complex and check the defining condition."""
        again = certify(s)
        if again is None or again.kind is not self.kind or again.witness != self.witness:
            return False
        if self.kind is CertificateKind.VANISHING_H4J:
            return all(g.is_trivial for _, g, _ in self.witness)
        return is_suspension(s) and all(
            g.is_trivial or flags["injective"] for _, g, flags in self.witness)


def certify(s: SpaceSpec) -> Certificate | None:
    """Certificate of P-triviality computed from the cellular cochains, if one exists."""
    c = build_complex(s)
    h = cohomology(c)
    degrees = [4 * j for j in range(1, c.top_degree // 4 + 1)]
    nonzero = [d for d in degrees if not h[d].is_trivial]
    if not nonzero:
        return Certificate(CertificateKind.VANISHING_H4J,
                           tuple((d, h[d], None) for d in degrees))
    if not is_suspension(s):
        return None
    p = CochainPresenter(c)
    witness = []
    for d in nonzero:
        rho = p.reduction(d, 2)
        flags = rho.flags()
        if not flags["injective"]:
            return None
        witness.append((d, h[d], flags))
    return Certificate(CertificateKind.RHO2_INJECTIVE_SUSPENSION, tuple(witness))


# ---------------------------------------------------------------------------
# generic dispatch


def _classify_rules(s: SpaceSpec) -> Verdict:
    if isinstance(s, StuntedReal):
        return classify_stunted_real(s.m, s.n, s.k)
    if isinstance(s, StuntedComplex):
        return classify_stunted_complex(s.m, s.n, s.k)
    if isinstance(s, Sphere):
        return classify_sphere(s.n)
    if isinstance(s, SphereProduct):
        return classify_sphere_product(s.n, s.k)
    if isinstance(s, SurfaceSuspension):
        return classify_surface_suspension(s.g, s.k)
    if isinstance(s, Wedge):
        verdicts = [classify(p) for p in s.parts]
        if any(v.status is NOT for v in verdicts):
            return _v(NOT, "wedge-retract")
        if all(v.status is P for v in verdicts):
            return _v(P, "wedge-all")
        return _v(UNKNOWN, "wedge-all", "some summand is undecided")
    if isinstance(s, Suspension):
        b, k = s.base, s.k
        if isinstance(b, Sphere):
            return classify_sphere(b.n + k)
        if isinstance(b, StuntedReal):
            return classify_stunted_real(b.m, b.n, b.k + k)
        if isinstance(b, StuntedComplex):
            return classify_stunted_complex(b.m, b.n, b.k + k)
        if isinstance(b, SurfaceSuspension):
            return classify_surface_suspension(b.g, b.k + k)
        if isinstance(b, Suspension):
            return _classify_rules(Suspension(b.base, b.k + k))
        if isinstance(b, Wedge):
            return _classify_rules(Wedge(tuple(Suspension(p, k) for p in b.parts)))
        if isinstance(b, SphereProduct) and (b.n + b.k) % 4 == 0 and k % 4 == 0:
            return _v(NOT, "manifold", f"dim={b.n + b.k}, k={k}")
        return _v(UNKNOWN, "manifold", "no rule applies")
    raise BadRange(f"not a space spec: {s!r}")


def classify(s: SpaceSpec) -> Verdict:
    """Rule-level verdict; undecided cases fall back to a cochain certificate."""
    v = _classify_rules(s)
    if v.status is UNKNOWN:
        cert = certify(s)
        if cert is not None:
            rule = "cert-vanishing" if cert.kind is CertificateKind.VANISHING_H4J else "cert-rho2"
            return _v(P, rule)
    return v


# ---------------------------------------------------------------------------
# literal theorem statements


def theorem_statement_eval(m: int, n: int, k: int = 0) -> Verdict:
    """Stunted real classification evaluated clause by clause, without refinement."""
    _check_mnk(m, n, k)
    clauses = []
    if k == 0 and n == 0 and m >= 4:
        clauses.append("a")
    if n == 0 and (k + m) % 4 == 0:
        clauses.append("b")
    if k == 0 and (n % 4 == 3 or m >= 2 ** (phi(n, 0) + 1)):
        clauses.append("c")
    if k > 0 and ((k % 2 == 1 and (k + m) % 4 == 0) or (k % 2 == 0 and (k + n + 1) % 4 == 0)):
        clauses.append("d")
    if clauses:
        return Verdict(NOT, "thm-real(" + ",".join(clauses) + ")", CITE["thm-real"])
    return Verdict(P, "thm-real", CITE["thm-real"])


def theorem_complex_eval(m: int, n: int, k: int = 0) -> Verdict:
    """Stunted complex classification read literally, including the ``n != 0`` proviso."""
    _check_mnk(m, n, k)
    if k % 2 == 1:
        return Verdict(P, "thm-complex(a)", CITE["thm-complex"])
    if n == m - 1 and n != 0 and (2 * m + k) % 4 != 0:
        return Verdict(P, "thm-complex(b)", CITE["thm-complex"])
    return Verdict(NOT, "thm-complex", CITE["thm-complex"])


@dataclass(frozen=True)
class Discrepancy:
    family: str
    m: int
    n: int
    k: int
    lemma: Verdict
    theorem: Verdict


def grid(m_max: int, k_max: int, n_max: int | None = None, m_min: int = 1):
    """``(m, n, k)`` with ``0 <= n < m``, lexicographic."""
    for m in range(m_min, m_max + 1):
        top = m - 1 if n_max is None else min(m - 1, n_max)
        for n in range(top + 1):
            for k in range(k_max + 1):
                yield m, n, k


def discrepancy_report(m_max: int, k_max: int, n_max: int | None = None,
                       family: str = "X") -> list[Discrepancy]:
    """Grid points where the literal theorem and the lemma-level classifier disagree."""
    families = ["X", "Y"] if family == "all" else [family]
    out = []
    for fam in families:
        lemma, literal = ((classify_stunted_real, theorem_statement_eval) if fam == "X"
                          else (classify_stunted_complex, theorem_complex_eval))
        for m, n, k in grid(m_max, k_max, n_max):
            a, b = lemma(m, n, k), literal(m, n, k)
            if a.status is not b.status:
                out.append(Discrepancy(fam, m, n, k, a, b))
    return out
