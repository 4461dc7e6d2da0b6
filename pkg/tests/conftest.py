"""Shared fixtures: corpus access, oracle polynomials, random representations."""

import numpy as np
import pytest

from torsionlab import LaurentPoly, UnitaryRep, parse_presentation
from torsionlab.cli import corpus_dir

KNOT_NAMES = ["unknot", "trefoil", "figure_eight", "knot_5_2"]

# Seifert matrices, independent of the Fox-calculus pipeline
SEIFERT = {
    "unknot": np.zeros((0, 0)),
    "trefoil": np.array([[-1, 1], [0, -1]], dtype=float),
    "figure_eight": np.array([[1, 1], [0, -1]], dtype=float),
    "knot_5_2": np.array([[-1, 1], [0, -2]], dtype=float),
}


def seifert_alexander(V):
    """Alexander polynomial det(V - t V^T) by direct expansion.

    Independent oracle: expands the determinant over permutations with
    numpy polynomial coefficient arithmetic, no Laurent machinery.
    """
    m = V.shape[0]
    if m == 0:
        return LaurentPoly.one()
    import itertools

    # each entry is the degree-1 polynomial V[i][j] - t * V[j][i]
    acc = np.zeros(m + 1, dtype=complex)
    for perm in itertools.permutations(range(m)):
        sign = 1.0
        seen = [False] * m
        for start in range(m):
            if seen[start]:
                continue
            length = 0
            k = start
            while not seen[k]:
                seen[k] = True
                k = perm[k]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = np.array([1.0 + 0j])
        for i in range(m):
            j = perm[i]
            term = np.convolve(term, np.array([V[i][j], -V[j][i]], dtype=complex))
        padded = np.zeros(m + 1, dtype=complex)
        padded[: len(term)] = term
        acc += sign * padded
    return LaurentPoly(0, acc)


def load_corpus_presentation(name):
    return parse_presentation((corpus_dir() / f"{name}.pres").read_text())


def load_sidecar_alexander(name):
    """The pinned Alexander polynomial shipped next to a corpus presentation."""
    lines = [
        ln.strip()
        for ln in (corpus_dir() / f"{name}.alex").read_text().splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    low = int(lines[0])
    coeffs = [float(x) for x in lines[1].split()]
    return LaurentPoly(low, coeffs)


def random_unitary(rng, r):
    """Haar-ish random unitary via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((r, r)) + 1j * rng.standard_normal((r, r))
    q, rmat = np.linalg.qr(z)
    return q * (np.diagonal(rmat) / np.abs(np.diagonal(rmat)))


def random_abelian_rep(rng, n_generators, r, avoid_eigenvalue_one=False):
    """A representation sending every generator to one random unitary.

    Wirtinger relators have zero exponent sum, so any shared image defines
    a genuine representation of the knot group.
    """
    while True:
        u = random_unitary(rng, r)
        if not avoid_eigenvalue_one:
            break
        if np.min(np.abs(np.linalg.eigvals(u) - 1.0)) > 0.1:
            break
    return UnitaryRep([u] * n_generators)


def up_to_unit_monomial(p, q, tol=1e-9):
    """True if p == unit * t**k * q with |unit| = 1, coefficientwise to tol."""
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    if len(p.coeffs) != len(q.coeffs):
        return False
    unit = p.coeffs[0] / q.coeffs[0]
    if abs(abs(unit) - 1.0) > tol:
        return False
    shifted = LaurentPoly(p.low - q.low, q.coeffs).scale(unit)
    return p.close_to(shifted, rtol=tol)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
