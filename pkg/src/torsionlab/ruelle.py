"""Length spectra and truncated Euler products for the Ruelle L-function.

The product over prime geodesics det(I - rho(gamma) exp(-z l))^{-1} is
evaluated by summing per-factor log-determinants in increasing length
order; the product converges absolutely for Re z > 2, and the evaluator
reports a crude bound on the entries beyond the cutoff.  No extrapolation
toward z = 0 is performed: the special value at the origin comes from the
torsion routes, not from truncation.
"""

from __future__ import annotations

import cmath
import re
import warnings
from dataclasses import dataclass

import numpy as np

from .presentations import ParseError

HOLONOMY_UNITARITY_TOL = 1e-10


class NotLoxodromicError(ValueError):
    """Trace of a non-loxodromic (elliptic or parabolic) element."""


class SpectrumWarning(UserWarning):
    pass


@dataclass(frozen=True)
class GeodesicEntry:
    """One prime closed geodesic: its length and unitary holonomy image."""

    length: float
    holonomy: np.ndarray

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError(f"geodesic length must be positive, got {self.length}")
        h = np.asarray(self.holonomy, dtype=complex)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError("holonomy must be a square matrix")
        defect = np.linalg.norm(h.conj().T @ h - np.eye(h.shape[0]))
        if defect > HOLONOMY_UNITARITY_TOL:
            raise ValueError(f"holonomy is not unitary (defect {defect:.2e})")
        object.__setattr__(self, "holonomy", h)


@dataclass(frozen=True)
class LengthSpectrum:
    rank: int
    entries: tuple

    def __post_init__(self):
        for e in self.entries:
            if e.holonomy.shape != (self.rank, self.rank):
                raise ValueError("all holonomies must share the declared rank")
        object.__setattr__(
            self, "entries", tuple(sorted(self.entries, key=lambda e: e.length))
        )

    @property
    def max_length(self):
        return self.entries[-1].length if self.entries else 0.0


def complex_length_from_trace(tr):
    """Complex length (l, theta) of a loxodromic element from its trace.

    Solves 2 cosh((l + i theta)/2) = +-tr with l > 0 (the sign ambiguity of
    PSL(2, C) is resolved by folding theta into (-pi, pi]).  Real traces in
    [-2, 2] are elliptic or parabolic and rejected.
    """
    tr = complex(tr)
    if abs(tr.imag) < 1e-14 and abs(tr.real) <= 2.0:
        raise NotLoxodromicError(f"trace {tr} lies in [-2, 2]: not loxodromic")
    w = cmath.acosh(tr / 2.0)  # principal branch: Re w >= 0
    length = 2.0 * w.real
    theta = 2.0 * w.imag
    # fold into (-pi, pi]: theta -> theta - 2 pi k, the +-tr ambiguity shifts by 2 pi
    theta = (theta + np.pi) % (2.0 * np.pi) - np.pi
    if theta <= -np.pi + 1e-15:
        theta = np.pi
    if length <= 1e-14:
        raise NotLoxodromicError(f"trace {tr} gives zero translation length")
    return length, theta


def _log_factor(entry, z):
    """-log det(I - rho(gamma) e^{-z l}) for one geodesic, branch-safe.

    The eigenvalues mu of rho(gamma) e^{-z l} satisfy |mu| = e^{-Re(z) l};
    the principal log of each 1 - mu is taken factor by factor.
    """
    scale = np.exp(-z * entry.length)
    mus = np.linalg.eigvals(entry.holonomy) * scale
    if np.max(np.abs(mus)) >= 1.0:
        warnings.warn(
            f"factor at length {entry.length} has spectral radius >= 1; "
            "the Euler product diverges here",
            SpectrumWarning,
            stacklevel=3,
        )
    return -np.sum(np.log(1.0 - mus))


def truncated_ruelle(spec, z, cutoff=None):
    """Truncated Euler product and a bound on the file's remaining entries.

    Returns (value, tail_bound).  The value multiplies the factors with
    length <= cutoff (all entries when cutoff is None); the tail bound sums
    r e^{-x l} / (1 - e^{-x l}) with x = Re z over the skipped entries, a
    report on the data beyond the cutoff, not a mathematical tail bound
    beyond the file's horizon.
    """
    z = complex(z)
    if z.real <= 2.0:
        warnings.warn(
            f"Re z = {z.real} is outside the certified convergence region Re z > 2",
            SpectrumWarning,
            stacklevel=2,
        )
    if not spec.entries:
        warnings.warn("empty length spectrum: the product is 1", SpectrumWarning, stacklevel=2)
        return 1.0 + 0j, 0.0
    if cutoff is None:
        cutoff = spec.max_length
    log_value = 0j
    tail = 0.0
    x = z.real
    for entry in spec.entries:  # ascending length
        if entry.length <= cutoff:
            log_value += _log_factor(entry, z)
        else:
            q = np.exp(-x * entry.length)
            tail += spec.rank * q / (1.0 - q) if q < 1.0 else np.inf
    return complex(np.exp(log_value)), float(tail)


def convergence_report(spec, z, cutoffs):
    """Partial log-products at increasing cutoffs, for stabilization checks.

    Returns a list of rows (cutoff, log_value, entries_used, delta_from_prev).
    """
    z = complex(z)
    rows = []
    prev = None
    for L in sorted(cutoffs):
        log_value = 0j
        used = 0
        for entry in spec.entries:
            if entry.length > L:
                break
            log_value += _log_factor(entry, z)
            used += 1
        delta = abs(log_value - prev) if prev is not None else None
        rows.append((L, log_value, used, delta))
        prev = log_value
    return rows


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"


def parse_spectrum(text):
    """Parse the spectrum file format.

    ``rank r;`` then one ``geo <length> ; <re,im re,im ...> ;`` line per
    prime geodesic, the matrix row major with r*r comma-separated pairs.
    """
    rank = None
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := re.fullmatch(r"rank\s+(\d+)\s*;", line):
            if rank is not None:
                raise ParseError("duplicate 'rank' header", lineno)
            rank = int(m.group(1))
            if rank < 1:
                raise ParseError("rank must be positive", lineno)
            continue
        m = re.fullmatch(rf"geo\s+({_NUM})\s*;(.*);", line)
        if not m:
            raise ParseError(f"malformed spectrum line: {line!r}", lineno)
        if rank is None:
            raise ParseError("'geo' before 'rank r;'", lineno)
        length = float(m.group(1))
        nums = re.findall(_NUM, m.group(2))
        if len(nums) != 2 * rank * rank:
            raise ParseError(
                f"expected {2 * rank * rank} numbers for a rank-{rank} holonomy, "
                f"got {len(nums)}",
                lineno,
            )
        vals = [complex(float(nums[2 * k]), float(nums[2 * k + 1])) for k in range(rank * rank)]
        mat = np.array(vals, dtype=complex).reshape(rank, rank)
        try:
            entries.append(GeodesicEntry(length=length, holonomy=mat))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    if rank is None:
        raise ParseError("missing 'rank r;' header")
    return LengthSpectrum(rank=rank, entries=tuple(entries))


def format_spectrum(spec):
    """Serialize a LengthSpectrum in the file format, 15 significant digits."""
    lines = [f"rank {spec.rank};"]
    for e in spec.entries:
        nums = []
        for v in e.holonomy.flatten():
            nums.append(f"{v.real:.15g},{v.imag:.15g}")
        lines.append(f"geo {e.length:.15g} ; {' '.join(nums)} ;")
    return "\n".join(lines) + "\n"
