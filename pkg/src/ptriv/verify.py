"""Grid sweeps that cross-check the SNF engine, the closed forms and the classifier."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .chain_complex import (
    Coefficients,
    Z,
    bockstein_exactness,
    cohomology,
    homology,
    uct_cohomology,
    validate,
)
from .classifier import (
    NOT,
    P,
    Discrepancy,
    certify,
    classify_sphere,
    classify_stunted_complex,
    classify_stunted_real,
    discrepancy_report,
    grid,
    phi,
)
from .spaces import (
    StuntedComplex,
    StuntedReal,
    build_complex,
    closed_form_cohomology,
    closed_form_homology,
    recognize_splitting,
)

Z2 = Coefficients(2)


@dataclass
class SweepReport:
    checks: Counter = field(default_factory=Counter)
    failures: list[tuple[str, str]] = field(default_factory=list)
    discrepancies: list[Discrepancy] = field(default_factory=list)

    def record(self, name: str, ok: bool, where: str):
        self.checks[name] += 1
        if not ok:
            self.failures.append((name, where))

    def merge(self, other: SweepReport):
        self.checks.update(other.checks)
        self.failures.extend(other.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failures_of(self, name: str) -> list[str]:
        return [w for n, w in self.failures if n == name]


def has_nonzero_h4j(groups) -> bool:
    return any(j >= 4 and j % 4 == 0 and not g.is_trivial for j, g in groups.items())


def check_point(family: str, m: int, n: int, k: int, deep: bool = False) -> SweepReport:
    """All per-space invariants at one grid point."""
    r = SweepReport()
    s = StuntedReal(m, n, k) if family == "X" else StuntedComplex(m, n, k)
    where = str(s)
    c = build_complex(s)
    try:
        validate(c)
        r.record("validate", True, where)
    except ValueError:
        r.record("validate", False, where)
        return r
    coh = cohomology(c)
    closed = closed_form_cohomology(s)
    r.record("cohomology-oracle", coh == closed, where)
    if family == "X":
        r.record("homology-oracle", homology(c) == closed_form_homology(s), where)
    v = classify_stunted_real(m, n, k) if family == "X" else classify_stunted_complex(m, n, k)
    r.record("soundness-vs-vanishing", has_nonzero_h4j(closed) or v.status is P, where)
    cert = certify(s)
    r.record("certificate-soundness", cert is None or v.status is P, where)
    if cert is not None:
        r.record("certificate-recheck", cert.verify(s), where)
    t = recognize_splitting(s)
    if t is not None:
        ct = build_complex(t)
        same = all(cohomology(c, q) == cohomology(ct, q) and homology(c, q) == homology(ct, q)
                   for q in (Z, Z2))
        r.record("splitting-soundness", same, where)
    if n == m - 1:
        dim = m + k if family == "X" else 2 * m + k
        r.record("splitting-consistency", v.status is classify_sphere(dim).status, where)
    if family == "X" and k == 0 and n % 4 == 3:
        r.record("n3mod4", v.status is NOT, where)
    if family == "Y" and k % 2 == 1:
        r.record("y-k-odd", v.status is P, where)
    if deep:
        r.record("uct", coh == uct_cohomology(homology(c)), where)
        for (j, node), ok in bockstein_exactness(c).items():
            r.record("bockstein-exactness", ok, f"{where} H^{j} node {node}")
    return r


def _check_chunk(args):
    family, points, deep = args
    out = SweepReport()
    for m, n, k in points:
        out.merge(check_point(family, m, n, k, deep))
    return out


def thread_count() -> int:
    cap = os.environ.get("PTRIV_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def run_sweep(family: str, m_max: int, k_max: int, n_max: int | None = None,
              deep: bool = False, threads: int | None = None) -> SweepReport:
    """Run every invariant over the grid; ``family`` is ``X``, ``Y`` or ``all``."""
    threads = threads or thread_count()
    report = SweepReport()
    families = ["X", "Y"] if family == "all" else [family]
    for fam in families:
        points = list(grid(m_max, k_max, n_max))
        if threads > 1 and len(points) > 200:
            size = -(-len(points) // (threads * 4))
            chunks = [(fam, points[i:i + size], deep) for i in range(0, len(points), size)]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for part in pool.map(_check_chunk, chunks):
                    report.merge(part)
        else:
            report.merge(_check_chunk((fam, points, deep)))
        report.discrepancies.extend(discrepancy_report(m_max, k_max, n_max, fam))
    for m in range(m_max + 1):
        brute = sum(1 for s in range(1, m + 1) if s % 8 in (0, 1, 2, 4))
        report.record("phi", phi(m, 0) == brute, f"phi({m},0)")
        for n in range(m + 1):
            report.record("phi", phi(m, n) == phi(m, 0) - phi(n, 0), f"phi({m},{n})")
        if m:
            report.record("phi", phi(m, 0) >= phi(m - 1, 0), f"phi({m},0) monotone")
    return report
