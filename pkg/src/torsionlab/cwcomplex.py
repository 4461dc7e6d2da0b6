"""Twisted chain complexes of finite CW complexes and zeta-regularized torsion.

Cells carry incidence records (target cell, sign, deck-group word); tensoring
with a unitary representation of the deck group gives finite-dimensional
boundary matrices.  The combinatorial Laplacian in each degree is
B_p^* B_p + B_{p+1} B_{p+1}^*; its positive spectrum, weighted by
(-1)^p * p, defines the zeta-regularized torsion
exp( (1/2) * sum_p (-1)^p p sum_{lambda>0} log lambda ).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .freegroup import GroupRingElement, Word, fox_derivative
from .presentations import ParseError, parse_word, _TokenStream, _tokenize

# eigenvalues below 1e-8 * (1 + spectral max) count as kernel
ZERO_EIG_REL_TOL = 1e-8


class EigensolverError(RuntimeError):
    """The dense Hermitian eigensolver failed to converge."""


@dataclass(frozen=True)
class Incidence:
    target: int
    sign: int
    word: Word


@dataclass(frozen=True)
class TwistedCWComplex:
    """A finite CW complex with group-word-labeled incidence data.

    ``incidences[p][i]`` lists the records of the boundary of the i-th
    p-cell, for p >= 1.  ``relations`` (optional) are deck-group relators
    used when validating the untwisted boundary condition.
    """

    cells_per_degree: tuple
    incidences: tuple  # indexed by degree p >= 1: tuple (per cell) of Incidence tuples
    n_generators: int
    relations: tuple = field(default=())
    generator_names: tuple = field(default=())

    def names(self):
        if self.generator_names:
            return self.generator_names
        return tuple(f"x{k + 1}" for k in range(self.n_generators))

    def __post_init__(self):
        dims = self.cells_per_degree
        if not dims or any(c < 0 for c in dims):
            raise ValueError("cell counts must be nonnegative, degree 0 present")
        if len(self.incidences) != max(len(dims) - 1, 0):
            raise ValueError("need one incidence table per degree >= 1")
        for p, table in enumerate(self.incidences, start=1):
            if len(table) != dims[p]:
                raise ValueError(f"degree {p}: expected {dims[p]} cells, got {len(table)}")
            for recs in table:
                for rec in recs:
                    if not (0 <= rec.target < dims[p - 1]):
                        raise ValueError(f"degree {p}: target {rec.target} out of range")
                    if rec.sign not in (1, -1):
                        raise ValueError("incidence signs must be +1 or -1")
        self.validate_boundary()

    @property
    def top_degree(self):
        return len(self.cells_per_degree) - 1

    def boundary_element(self, p, i):
        """The boundary of the i-th p-cell as a row of group-ring coefficients."""
        out = [GroupRingElement.zero() for _ in range(self.cells_per_degree[p - 1])]
        for rec in self.incidences[p - 1][i]:
            out[rec.target] = out[rec.target] + GroupRingElement.of_word(rec.word, rec.sign)
        return out

    def validate_boundary(self):
        """Check that the composite boundary vanishes over the deck-group ring.

        Words are compared after free reduction; when relators are declared,
        occurrences of relators (any cyclic rotation, either orientation) are
        deleted iteratively first.  This is a sound but incomplete word
        problem check; it covers complexes built from group presentations.
        """
        for p in range(2, self.top_degree + 1):
            for i in range(self.cells_per_degree[p]):
                residual = [GroupRingElement.zero() for _ in range(self.cells_per_degree[p - 2])]
                for rec in self.incidences[p - 1][i]:
                    for rec2 in self.incidences[p - 2][rec.target]:
                        w = rec.word * rec2.word
                        residual[rec2.target] = residual[rec2.target] + GroupRingElement.of_word(
                            w, rec.sign * rec2.sign
                        )
                for elem in residual:
                    collapsed = {}
                    for w, c in elem.terms.items():
                        nw = _delete_relators(w, self.relations)
                        collapsed[nw] = collapsed.get(nw, 0j) + c
                    if not GroupRingElement(collapsed).is_zero:
                        raise ValueError(
                            f"untwisted boundary composition is nonzero on {p}-cell {i}"
                        )


def _delete_relators(w, relations):
    """Normalize a word by deleting relator occurrences until stable."""
    if not relations:
        return w
    patterns = []
    for r in relations:
        for base in (r, r.inverse()):
            ls = base.letters
            for k in range(len(ls)):
                patterns.append(ls[k:] + ls[:k])
    changed = True
    while changed:
        changed = False
        ls = w.letters
        for pat in patterns:
            m = len(pat)
            if m == 0 or m > len(ls):
                continue
            for start in range(len(ls) - m + 1):
                if ls[start : start + m] == pat:
                    w = Word(ls[:start] + ls[start + m :])
                    changed = True
                    break
            if changed:
                break
    return w


def twisted_boundary(cx, rep, p):
    """Boundary matrix of degree p under rep, shape (c_{p-1} r, c_p r).

    Chains form a right module over the deck-group ring (row-vector
    convention), so the operator on column vectors carries rho(word)
    transposed in each block; composites then multiply in word order and
    the chain condition holds for non-abelian representations too.
    """
    if not (1 <= p <= cx.top_degree):
        raise ValueError(f"degree {p} out of range for this complex")
    r = rep.rank
    rows = cx.cells_per_degree[p - 1] * r
    cols = cx.cells_per_degree[p] * r
    out = np.zeros((rows, cols), dtype=complex)
    for i in range(cx.cells_per_degree[p]):
        for rec in cx.incidences[p - 1][i]:
            block = rec.sign * rep.of_word(rec.word).T
            out[rec.target * r : (rec.target + 1) * r, i * r : (i + 1) * r] += block
    return out


def comb_laplacian(cx, rep, p):
    """The combinatorial Laplacian B_p^* B_p + B_{p+1} B_{p+1}^* in degree p."""
    r = rep.rank
    dim = cx.cells_per_degree[p] * r if p <= cx.top_degree else 0
    lap = np.zeros((dim, dim), dtype=complex)
    if p >= 1:
        B = twisted_boundary(cx, rep, p)
        lap += B.conj().T @ B
    if p + 1 <= cx.top_degree:
        B = twisted_boundary(cx, rep, p + 1)
        lap += B @ B.conj().T
    return lap


@dataclass(frozen=True)
class TorsionReport:
    betti: tuple
    log_torsion: float
    torsion: float
    spectra: tuple  # per degree, sorted eigenvalue tuples


def torsion_report(cx, rep):
    """Twisted Betti numbers and the zeta-regularized torsion of a complex."""
    betti = []
    spectra = []
    log_torsion = 0.0
    for p in range(cx.top_degree + 1):
        lap = comb_laplacian(cx, rep, p)
        if lap.shape[0] == 0:
            betti.append(0)
            spectra.append(())
            continue
        try:
            eigs = np.linalg.eigvalsh(lap)
        except np.linalg.LinAlgError as exc:
            raise EigensolverError(f"eigensolver failed in degree {p}: {exc}") from exc
        eigs = np.sort(eigs.real)
        cutoff = ZERO_EIG_REL_TOL * (1.0 + float(eigs[-1]))
        kernel = int(np.sum(eigs < cutoff))
        positive = eigs[eigs >= cutoff]
        betti.append(kernel)
        spectra.append(tuple(float(x) for x in eigs))
        # closed-form zeta'(0): d/ds lambda^-s at 0 is -log(lambda)
        log_torsion += 0.5 * ((-1) ** p) * p * float(np.sum(np.log(positive)))
    return TorsionReport(
        betti=tuple(betti),
        log_torsion=log_torsion,
        torsion=float(np.exp(log_torsion)),
        spectra=tuple(spectra),
    )


def knot_complex(pres):
    """The 2-complex of a Wirtinger presentation: one 0-cell, n 1-cells,
    n-1 2-cells attached along the relators via Fox derivatives."""
    if not pres.wirtinger:
        raise ValueError("knot_complex requires a Wirtinger presentation")
    n = pres.n_generators
    one_cells = []
    for i in range(1, n + 1):
        one_cells.append(
            (
                Incidence(0, 1, Word.generator(i)),
                Incidence(0, -1, Word()),
            )
        )
    two_cells = []
    for rel in pres.relators:
        recs = []
        for i in range(1, n + 1):
            for w, c in fox_derivative(rel, i).terms.items():
                count = int(round(c.real))
                sign = 1 if count > 0 else -1
                recs.extend([Incidence(i - 1, sign, w)] * abs(count))
        two_cells.append(tuple(recs))
    if pres.relators:
        return TwistedCWComplex(
            cells_per_degree=(1, n, len(pres.relators)),
            incidences=(tuple(one_cells), tuple(two_cells)),
            n_generators=n,
            relations=tuple(pres.relators),
            generator_names=pres.generator_names,
        )
    return TwistedCWComplex(
        cells_per_degree=(1, n),
        incidences=(tuple(one_cells),),
        n_generators=n,
        generator_names=pres.generator_names,
    )


def circle_complex():
    """One 0-cell and one 1-cell glued along (x1 - 1)."""
    return TwistedCWComplex(
        cells_per_degree=(1, 1),
        incidences=(
            ((Incidence(0, 1, Word.generator(1)), Incidence(0, -1, Word())),),
        ),
        n_generators=1,
    )


def parse_complex(text):
    """Parse the complex file format.

    Grammar (``#`` comments, statements end with ``;``)::

        gens name+ ;
        rels? ( "rel" word ";" )*          # optional deck-group relators
        cells p count ;                    # one per degree, contiguous from 0
        bd p cell_index -> (sign, word, target_index)* ;

    Signs are ``+`` or ``-``; words use the presentation word syntax with
    ``1`` for the identity.
    """
    stream = _TokenStream(_tokenize(text))
    tok, line, col = stream.next(expect="'gens'")
    if tok != "gens":
        raise ParseError(f"complex file must start with 'gens', got {tok!r}", line, col)
    names = []
    while True:
        tok, line, col = stream.next(expect="a generator name or ';'")
        if tok == ";":
            break
        names.append(tok)
    name_to_index = {nm: k + 1 for k, nm in enumerate(names)}

    relations = []
    cells = {}
    bd = {}
    while stream.peek() is not None:
        tok, line, col = stream.next()
        if tok == "rel":
            relations.append(parse_word(stream, name_to_index))
            stream.expect(";")
        elif tok == "cells":
            ptok, pl, pc = stream.next(expect="a degree")
            ctok, cl, cc = stream.next(expect="a cell count")
            try:
                p, count = int(ptok), int(ctok)
            except ValueError:
                raise ParseError("cells takes two integers", pl, pc) from None
            if p in cells:
                raise ParseError(f"duplicate 'cells {p}'", pl, pc)
            cells[p] = count
            stream.expect(";")
        elif tok == "bd":
            ptok, pl, pc = stream.next(expect="a degree")
            itok, il, ic = stream.next(expect="a cell index")
            try:
                p, i = int(ptok), int(itok)
            except ValueError:
                raise ParseError("bd takes two integers", pl, pc) from None
            stream.expect("-")
            stream.expect(">")
            recs = []
            while stream.peek() and stream.peek()[0] == "(":
                stream.next()
                stok, sl, sc = stream.next(expect="a sign")
                if stok not in ("+", "-"):
                    raise ParseError(f"expected '+' or '-', got {stok!r}", sl, sc)
                stream.expect(",")
                word = _parse_word_until(stream, name_to_index, ",")
                ttok, tl, tc = stream.next(expect="a target index")
                try:
                    target = int(ttok)
                except ValueError:
                    raise ParseError(f"bad target index {ttok!r}", tl, tc) from None
                stream.expect(")")
                recs.append(Incidence(target, 1 if stok == "+" else -1, word))
            stream.expect(";")
            bd.setdefault(p, {}).setdefault(i, []).extend(recs)
        else:
            raise ParseError(f"expected 'rel', 'cells' or 'bd', got {tok!r}", line, col)

    if not cells:
        raise ParseError("no 'cells' statements")
    top = max(cells)
    dims = []
    for p in range(top + 1):
        if p not in cells:
            raise ParseError(f"missing 'cells {p}' (degrees must be contiguous from 0)")
        dims.append(cells[p])
    incidences = []
    for p in range(1, top + 1):
        table = []
        for i in range(dims[p]):
            table.append(tuple(bd.get(p, {}).get(i, [])))
        incidences.append(tuple(table))
    return TwistedCWComplex(
        cells_per_degree=tuple(dims),
        incidences=tuple(incidences),
        n_generators=len(names),
        relations=tuple(relations),
        generator_names=tuple(names),
    )


def _parse_word_until(stream, name_to_index, stop):
    """Parse a word whose end is marked by the given token (consumed)."""
    toks = []
    while True:
        tok = stream.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input inside a word, expected {stop!r}")
        if tok[0] == stop:
            stream.next()
            break
        toks.append(stream.next())
    sub = _TokenStream(toks + [(";", 0, 0)])
    word = parse_word(sub, name_to_index)
    return word
