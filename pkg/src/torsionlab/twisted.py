"""Twisted Alexander functions of knot groups and their special values.

Given a Wirtinger presentation and a unitary representation rho, the map
Phi sends a word with abelianization degree d to rho(word) * t**d.  The
Fox Jacobian of the relators under Phi gives the boundary matrices; the
ratio of determinants delta1/delta0 is the twisted Alexander function,
whose modulus at t=1 is the torsion, and its square the Ruelle value at
the origin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .freegroup import GroupRingElement, fox_derivative
from .laurent import LaurentMatrix, LaurentPoly

H1_TOL = 1e-9
CUSPIDAL_TOL = 1e-9


class NoPivotError(RuntimeError):
    """Every candidate pivot determinant vanishes identically."""


class MissingPeripheralError(RuntimeError):
    """The presentation carries no meridian/longitude words."""


def phi_apply(elem, pres, rep):
    """Apply Phi = (abelianization) tensor rho to a group-ring element.

    Returns an r x r LaurentMatrix: each word w contributes
    coeff * rho(w) * t**degree(w).
    """
    r = rep.rank
    entries = [[LaurentPoly.zero() for _ in range(r)] for _ in range(r)]
    for w, c in elem.terms.items():
        mat = rep.of_word(w)
        d = pres.word_degree(w)
        for i in range(r):
            for j in range(r):
                v = c * mat[i, j]
                if v != 0:
                    entries[i][j] = entries[i][j] + LaurentPoly.t(d, v)
    return LaurentMatrix.from_rows(entries)


def _generator_block(pres, rep, i):
    """Phi(x_i - 1) = rho(x_i) * t**d_i - I, as an r x r LaurentMatrix."""
    r = rep.rank
    mat = rep.images[i - 1]
    d = pres.abelianization_degrees[i - 1]
    rows = []
    for a in range(r):
        row = []
        for b in range(r):
            p = LaurentPoly.t(d, mat[a, b])
            if a == b:
                p = p - LaurentPoly.one()
            row.append(p)
        rows.append(row)
    return LaurentMatrix.from_rows(rows)


def boundary1(pres, rep):
    """The nr x r block column with i-th block Phi(x_i - 1)."""
    n, r = pres.n_generators, rep.rank
    blocks = [_generator_block(pres, rep, i) for i in range(1, n + 1)]
    rows = []
    for blk in blocks:
        for a in range(r):
            rows.append([blk[a, b] for b in range(r)])
    return LaurentMatrix.from_rows(rows)


def boundary2(pres, rep, skip_generator=None):
    """The (n-1)r x nr Fox Jacobian under Phi.

    Block (j, i) is Phi(d r_j / d x_i); with ``skip_generator`` the
    corresponding block column is deleted (pivot removal).
    """
    n, r = pres.n_generators, rep.rank
    cols = [i for i in range(1, n + 1) if i != skip_generator]
    rows = []
    for rel in pres.relators:
        blocks = [phi_apply(fox_derivative(rel, i), pres, rep) for i in cols]
        for a in range(r):
            row = []
            for blk in blocks:
                row.extend(blk[a, b] for b in range(r))
            rows.append(row)
    if not rows:
        return LaurentMatrix(0, len(cols) * r, [])
    return LaurentMatrix.from_rows(rows)


def pivot_candidates(pres, rep):
    """Generator indices whose Phi(x_i - 1) block has nonvanishing determinant.

    Each candidate determinant is tested by evaluation at 8 fixed points on
    the circle |t| = 2.
    """
    out = []
    zs = 2.0 * np.exp(2j * np.pi * (np.arange(8) + 0.37) / 8)
    for i in range(1, pres.n_generators + 1):
        det = _generator_block(pres, rep, i).det()
        if any(abs(det(z)) > 1e-9 for z in zs):
            out.append(i)
    return out


def choose_pivot(pres, rep):
    """Smallest generator index usable as the Wada pivot."""
    cands = pivot_candidates(pres, rep)
    if not cands:
        raise NoPivotError("all candidate pivot determinants vanish identically")
    return cands[0]


def cuspidality_check(rep, pres):
    """True iff only the zero vector is fixed by both peripheral images.

    Computed as a full-rank test on the stacked matrix
    [rho(meridian) - I; rho(longitude) - I].
    """
    if not pres.has_peripheral:
        raise MissingPeripheralError("presentation has no meridian/longitude words")
    r = rep.rank
    stacked = np.vstack(
        [rep.of_word(pres.meridian) - np.eye(r), rep.of_word(pres.longitude) - np.eye(r)]
    )
    sv = np.linalg.svd(stacked, compute_uv=False)
    return int(np.sum(sv > CUSPIDAL_TOL)) == r


@dataclass(frozen=True)
class TwistedAlexanderResult:
    delta0: LaurentPoly
    delta1: LaurentPoly
    pivot_column: int
    h1_vanishes: bool
    cuspidal: bool | None  # None when no peripheral words are available
    torsion_at_1: float | None
    ruelle_at_0: float | None


def twisted_alexander(pres, rep, pivot=None):
    """Full pipeline: pivot choice, delta0/delta1, and special values.

    When h1 vanishes (|delta1(1)| above threshold) the torsion at t=1 is
    |delta1(1)/delta0(1)| and the Ruelle value at the origin its square;
    otherwise the polynomials are returned with the special values withheld.
    """
    if not pres.wirtinger:
        raise ValueError("twisted_alexander requires a Wirtinger presentation")
    rep.validate_against(pres)
    if pivot is None:
        pivot = choose_pivot(pres, rep)
    elif pivot not in pivot_candidates(pres, rep):
        raise NoPivotError(f"generator {pivot} is not a valid pivot")

    delta0 = _generator_block(pres, rep, pivot).det()
    delta1 = boundary2(pres, rep, skip_generator=pivot).det()

    h1_vanishes = (
        not delta1.is_zero
        and abs(delta1(1.0)) > H1_TOL * delta1.max_abs_coeff()
    )
    cuspidal = cuspidality_check(rep, pres) if pres.has_peripheral else None

    torsion = ruelle = None
    # delta0(1) = 0 happens exactly when rho fixes a vector of the pivot
    # meridian image (e.g. the trivial rep); the special values are then
    # outside the theorem's hypotheses and stay withheld.
    if h1_vanishes and abs(delta0(1.0)) > H1_TOL * delta0.max_abs_coeff():
        torsion = abs(delta1(1.0) / delta0(1.0))
        ruelle = torsion**2
    return TwistedAlexanderResult(
        delta0=delta0,
        delta1=delta1,
        pivot_column=pivot,
        h1_vanishes=h1_vanishes,
        cuspidal=cuspidal,
        torsion_at_1=torsion,
        ruelle_at_0=ruelle,
    )
