import random

import pytest
from hypothesis import strategies as st

from ptriv.chain_complex import ChainComplex
from ptriv.exact_linalg import FinAbGroup, IntegerMatrix

# acceptance lines collected by test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_unimodular(n, rng, steps=None):
    """Random unimodular matrix and its inverse, built from elementary moves."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        if n < 2:
            break
        i, k = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        # P <- (I + c e_ik) P ; Q <- Q (I - c e_ik)
        P[i] = [a + c * b for a, b in zip(P[i], P[k])]
        for row in Q:
            row[k] -= c * row[i]
    if n and rng.random() < 0.5:
        P[0] = [-x for x in P[0]]
        for row in Q:
            row[0] = -row[0]
    return IntegerMatrix.from_rows(P, cols=n), IntegerMatrix.from_rows(Q, cols=n)


def scrambled_complex(pieces, rng):
    """Direct sum of elementary complexes in a random basis.

    ``pieces`` holds ``("free", j)`` for a lone generator in degree ``j`` and
    ``("tors", j, a)`` for ``Z --a--> Z`` from degree ``j+1`` to ``j``.
    Returns the complex and its known integral homology.
    """
    gens = {}
    edges = []
    known = {}

    def new(j):
        gens.setdefault(j, 0)
        gens[j] += 1
        return gens[j] - 1

    new(0)  # basepoint
    known.setdefault(0, [0, []])[0] += 1
    for p in pieces:
        if p[0] == "free":
            new(p[1])
            known.setdefault(p[1], [0, []])[0] += 1
        else:
            _, j, a = p
            lo, hi = new(j), new(j + 1)
            edges.append((j + 1, lo, hi, a))
            known.setdefault(j, [0, []])[1].append(a)
    mats = {}
    for j, lo, hi, a in edges:
        m = mats.setdefault(j, [[0] * gens[j] for _ in range(gens[j - 1])])
        m[lo][hi] = a
    # change of basis C_j -> P_j C_j keeps the degree-0 basepoint fixed
    P, Q = {}, {}
    for j, r in gens.items():
        if j == 0:
            P[j] = Q[j] = IntegerMatrix.identity(r)
        else:
            P[j], Q[j] = random_unimodular(r, rng)
    bds = {}
    for j, m in mats.items():
        d = IntegerMatrix.from_rows(m, cols=gens[j])
        bds[j] = P[j - 1] @ d @ Q[j]
    homology = {j: FinAbGroup.from_orders(f, t) for j, (f, t) in known.items()}
    return ChainComplex(dict(gens), bds), {j: g for j, g in homology.items() if not g.is_trivial}


@st.composite
def elementary_complexes(draw, max_degree=6, max_pieces=6):
    pieces = draw(st.lists(
        st.one_of(
            st.tuples(st.just("free"), st.integers(1, max_degree)),
            st.tuples(st.just("tors"), st.integers(1, max_degree - 1), st.integers(1, 6)),
        ),
        max_size=max_pieces,
    ))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return scrambled_complex(pieces, random.Random(seed))


@pytest.fixture
def rng():
    return random.Random(20261016)
