"""Multigraded complexes of twisted free / cyclic quotient / ideal summands.

A ``GradedComplex`` stores, per homological index, an ordered list of
summands, and per adjacent index pair a sparse list of scalar coefficients.
The monomial factor of every differential entry is implicit: homogeneity
forces it to x^(shift_src - shift_tgt), so fibers are pure scalar matrices.

Complexes are immutable after construction.  Construction validates each
entry's well-definedness and checks d∘d = 0 symbolically over the integers,
which (by the survival monotonicity along valid entries) implies d∘d = 0 on
every multidegree fiber.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BoxTooSmall, LengthMismatch, MixedKinds, UnitIdeal
from .exactlin import GF, FiberComplex, PrimeField, ScalarMatrix, rank
from .monomial import MonomialIdeal, Multidegree, combine, iter_box, lcm_deg

FREE = "free"
CYCLIC = "cyclic"
IDEAL = "ideal"


@dataclass(frozen=True)
class Summand:
    """One summand R(-shift), R/J(-shift) or J(-shift) with an opaque label."""

    kind: str
    shift: Multidegree
    ideal: MonomialIdeal | None = None
    label: object = None

    def __post_init__(self):
        if self.kind not in (FREE, CYCLIC, IDEAL):
            raise ValueError(f"unknown summand kind {self.kind!r}")
        if self.kind == FREE and self.ideal is not None:
            raise ValueError("free summands carry no ideal")
        if self.kind != FREE and self.ideal is None:
            raise ValueError(f"{self.kind} summand needs an ideal")

    def alive(self, gamma) -> bool:
        """Whether this summand contributes one basis vector at degree gamma."""
        if not self.shift.leq(gamma):
            return False
        if self.kind == FREE:
            return True
        inner = Multidegree(g - s for g, s in zip(gamma, self.shift))
        member = self.ideal.contains(inner)
        return member if self.kind == IDEAL else not member

    def box_bound(self) -> Multidegree:
        """Componentwise threshold beyond which survival no longer changes."""
        bound = self.shift
        if self.kind != FREE:
            for g in self.ideal.gens:
                bound = lcm_deg(bound, self.shift.add(g))
        return bound


def free_summand(shift, label=None) -> Summand:
    return Summand(FREE, Multidegree(shift), None, label)


def cyclic_summand(ideal, shift=None, label=None) -> Summand:
    shift = Multidegree.zero(ideal.n) if shift is None else Multidegree(shift)
    return Summand(CYCLIC, shift, ideal, label)


def ideal_summand(ideal, shift=None, label=None) -> Summand:
    shift = Multidegree.zero(ideal.n) if shift is None else Multidegree(shift)
    return Summand(IDEAL, shift, ideal, label)


def _entry_valid(src: Summand, tgt: Summand) -> bool:
    """Homogeneity / well-definedness of a single differential entry."""
    if src.kind != tgt.kind:
        return False
    if not tgt.shift.leq(src.shift):
        return False
    if src.kind == FREE:
        return True
    delta = src.shift.sub(tgt.shift)
    # multiplication by x^delta must send the source (quotient or ideal)
    # structure into the target one: x^delta * I_src ⊆ I_tgt
    return all(tgt.ideal.contains(g.add(delta)) for g in src.ideal.gens)


class GradedComplex:
    """A finite complex with terms indexed by integers; d lowers index by 1.

    ``orientation`` is a reporting tag: cochain complexes are stored with
    negated indices (term S^p sits at index -p) so a single chain convention
    drives all homology computations.
    """

    def __init__(self, n: int, terms: dict, entries: dict, orientation: str = "chain"):
        if orientation not in ("chain", "cochain"):
            raise ValueError(f"bad orientation {orientation!r}")
        self.n = int(n)
        self.orientation = orientation
        self.terms = {
            int(i): tuple(summands) for i, summands in terms.items() if summands
        }
        kinds = {s.kind for ss in self.terms.values() for s in ss}
        if len(kinds) > 1:
            raise MixedKinds(f"complex mixes summand kinds {sorted(kinds)}")
        self.kind = kinds.pop() if kinds else FREE
        for ss in self.terms.values():
            for s in ss:
                if s.shift.n != self.n:
                    raise LengthMismatch("summand shift length != variable count")
        cleaned: dict = {}
        for i, es in entries.items():
            i = int(i)
            src_terms = self.terms.get(i, ())
            tgt_terms = self.terms.get(i - 1, ())
            merged: dict = {}
            for src, tgt, coeff in es:
                if coeff == 0:
                    continue
                merged[(src, tgt)] = merged.get((src, tgt), 0) + coeff
            out = []
            for (src, tgt), coeff in sorted(merged.items()):
                if coeff == 0:
                    continue
                if not (0 <= src < len(src_terms) and 0 <= tgt < len(tgt_terms)):
                    raise IndexError(f"entry ({src},{tgt}) out of range at degree {i}")
                if not _entry_valid(src_terms[src], tgt_terms[tgt]):
                    raise ValueError(
                        f"inhomogeneous or ill-defined entry at degree {i}: "
                        f"{src_terms[src]} -> {tgt_terms[tgt]}"
                    )
                out.append((src, tgt, coeff))
            if out:
                cleaned[i] = tuple(out)
        self.entries = cleaned
        self._check_dd_zero()
        self._rank_cache: dict = {}

    # -- structure ------------------------------------------------------------

    def window(self):
        if not self.terms:
            return range(0, 0)
        return range(min(self.terms), max(self.terms) + 1)

    def summands(self, i: int):
        return self.terms.get(i, ())

    def _check_dd_zero(self):
        for i in self.entries:
            lower = self.entries.get(i - 1)
            if not lower:
                continue
            into: dict = {}
            for src, tgt, coeff in lower:
                into.setdefault(src, []).append((tgt, coeff))
            acc: dict = {}
            for src, mid, c1 in self.entries[i]:
                for tgt, c2 in into.get(mid, ()):
                    key = (src, tgt)
                    acc[key] = acc.get(key, 0) + c1 * c2
            bad = {k: v for k, v in acc.items() if v}
            if bad:
                from .errors import CompositionNonzero

                raise CompositionNonzero(f"d∘d != 0 from degree {i}: {bad}")

    # -- degreewise evaluation --------------------------------------------------

    def stable_box(self) -> Multidegree:
        """Componentwise bound D: fibers at gamma depend only on min(gamma, D)."""
        box = Multidegree.zero(self.n)
        for ss in self.terms.values():
            for s in ss:
                box = lcm_deg(box, s.box_bound())
        return box

    def alive_masks(self, gamma) -> dict:
        if len(gamma) != self.n:
            raise LengthMismatch(f"degree length {len(gamma)} != {self.n}")
        gamma = Multidegree(gamma)
        masks = {}
        for i, ss in self.terms.items():
            m = 0
            for k, s in enumerate(ss):
                if s.alive(gamma):
                    m |= 1 << k
            masks[i] = m
        return masks

    def fiber(self, gamma) -> FiberComplex:
        """The degree-gamma piece as a complex of GF(p) vector spaces."""
        masks = self.alive_masks(gamma)
        positions = {}
        dims = {}
        for i, mask in masks.items():
            pos = {}
            for k in range(len(self.terms[i])):
                if mask >> k & 1:
                    pos[k] = len(pos)
            positions[i] = pos
            dims[i] = len(pos)
        diffs = {}
        for i, es in self.entries.items():
            src_pos = positions.get(i, {})
            tgt_pos = positions.get(i - 1, {})
            triples = [
                (tgt_pos[t], src_pos[s], c)
                for s, t, c in es
                if s in src_pos and t in tgt_pos
            ]
            diffs[i] = ScalarMatrix(len(tgt_pos), len(src_pos), triples)
        return FiberComplex(dims, diffs)

    def _masked_rank(self, i: int, src_mask: int, tgt_mask: int, field: PrimeField) -> int:
        key = (field.p, i, src_mask, tgt_mask)
        cached = self._rank_cache.get(key)
        if cached is not None:
            return cached
        es = self.entries.get(i, ())
        src_pos: dict = {}
        tgt_pos: dict = {}
        triples = []
        for s, t, c in es:
            if src_mask >> s & 1 and tgt_mask >> t & 1:
                si = src_pos.setdefault(s, len(src_pos))
                ti = tgt_pos.setdefault(t, len(tgt_pos))
                triples.append((ti, si, c % field.p))
        r = rank(ScalarMatrix(len(tgt_pos), len(src_pos), triples), field)
        self._rank_cache[key] = r
        return r

    def homology_at(self, gamma, field: PrimeField = GF()) -> dict:
        """{i: dim H_i at degree gamma} using the mask/rank cache."""
        masks = self.alive_masks(gamma)
        out = {}
        for i in self.window():
            dim = (masks.get(i, 0)).bit_count()
            r_out = self._masked_rank(i, masks.get(i, 0), masks.get(i - 1, 0), field)
            r_in = self._masked_rank(i + 1, masks.get(i + 1, 0), masks.get(i, 0), field)
            out[i] = dim - r_out - r_in
        return out

    def shifted(self, k: int) -> "GradedComplex":
        """Degree shift: index i of the result holds what sat at index i - k."""
        return GradedComplex(
            self.n,
            {i + k: ss for i, ss in self.terms.items()},
            {i + k: es for i, es in self.entries.items()},
            self.orientation,
        )

    def __repr__(self):
        shape = {i: len(ss) for i, ss in sorted(self.terms.items())}
        return f"GradedComplex(n={self.n}, {self.orientation}, ranks={shape})"


class TorTable:
    """Homology dimensions indexed by (homological index, multidegree <= box).

    Only nonzero dimensions are stored.  By the stability property the slice
    of index i is identically zero iff the module H_i is zero.
    """

    def __init__(self, entries: dict, box, degrees, orientation="chain",
                 ideals=None, coefficient=None):
        self.box = Multidegree(box)
        self.entries = {
            (int(i), tuple(g)): int(d) for (i, g), d in entries.items() if d
        }
        self.degrees = sorted(set(int(i) for i in degrees))
        self.orientation = orientation
        self.ideals = tuple(ideals) if ideals else None
        self.coefficient = coefficient

    def dim(self, i: int, gamma) -> int:
        return self.entries.get((i, tuple(gamma)), 0)

    def dim_stable(self, i: int, gamma) -> int:
        """Dimension at any gamma in N^n, via the min(gamma, box) pullback."""
        clamped = tuple(min(g, b) for g, b in zip(gamma, self.box))
        return self.entries.get((i, clamped), 0)

    def slice(self, i: int) -> dict:
        return {g: d for (j, g), d in self.entries.items() if j == i}

    def is_zero(self, i: int) -> bool:
        return not self.slice(i)

    def nonzero_indices(self):
        return sorted({i for (i, _) in self.entries})

    def max_nonzero_index(self):
        nz = self.nonzero_indices()
        return nz[-1] if nz else None

    def records(self) -> list:
        recs = [
            {"i": i, "degree": list(g), "dim": d}
            for (i, g), d in self.entries.items()
        ]
        recs.sort(key=lambda r: (r["i"], r["degree"]))
        return recs

    def __eq__(self, other):
        return (
            isinstance(other, TorTable)
            and self.box == other.box
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"TorTable(box={tuple(self.box)}, nonzero={len(self.entries)})"


def module_homology_table(c: GradedComplex, field: PrimeField = GF(),
                          box=None, ideals=None, coefficient=None) -> TorTable:
    """Dimensions of H_i(c)_gamma for every i in the window and gamma <= box.

    The box defaults to the stability box; a user box must dominate it so
    that module-level vanishing remains decidable from the table.
    """
    sb = c.stable_box()
    if box is None:
        box = sb
    else:
        box = Multidegree(box)
        if not sb.leq(box):
            raise BoxTooSmall(f"box {tuple(box)} does not dominate {tuple(sb)}")
    entries = {}
    for gamma in iter_box(box):
        for i, h in c.homology_at(gamma, field).items():
            if h:
                entries[(i, tuple(gamma))] = h
    return TorTable(entries, box, c.window(), c.orientation,
                    ideals=ideals, coefficient=coefficient)


# ---------------------------------------------------------------------------
# Builders


def _subsets(items, size):
    return itertools.combinations(range(len(items)), size)


def koszul_units(n: int, orientation: str = "chain") -> GradedComplex:
    """K(1,...,1;R) on n exterior generators (or its cochain dual); exact."""
    if n < 1:
        raise ValueError("koszul_units needs n >= 1")
    zero = Multidegree.zero(n)
    terms = {}
    entries = {}
    index = {}
    if orientation == "chain":
        for p in range(n + 1):
            subs = list(itertools.combinations(range(n), p))
            terms[p] = tuple(free_summand(zero, label=s) for s in subs)
            index[p] = {s: k for k, s in enumerate(subs)}
        for p in range(1, n + 1):
            es = []
            for s, si in index[p].items():
                for l, j in enumerate(s):
                    t = tuple(x for x in s if x != j)
                    es.append((si, index[p - 1][t], (-1) ** l))
            entries[p] = es
        return GradedComplex(n, terms, entries, "chain")
    if orientation == "cochain":
        for p in range(n + 1):
            subs = list(itertools.combinations(range(n), p))
            terms[-p] = tuple(free_summand(zero, label=s) for s in subs)
            index[p] = {s: k for k, s in enumerate(subs)}
        for p in range(n):
            es = []
            for s, si in index[p].items():
                for j in range(n):
                    if j in s:
                        continue
                    t = tuple(sorted(s + (j,)))
                    sign = (-1) ** sum(1 for x in s if x < j)
                    es.append((si, index[p + 1][t], sign))
            entries[-p] = es
        return GradedComplex(n, terms, entries, "cochain")
    raise ValueError(f"bad orientation {orientation!r}")


def koszul_variables(gens) -> GradedComplex:
    """The Koszul complex on the listed (distinct) monomial degrees."""
    gens = [Multidegree(g) for g in gens]
    if not gens:
        raise ValueError("koszul_variables needs at least one monomial")
    if len(set(gens)) != len(gens):
        raise ValueError("koszul generators must be pairwise distinct")
    n = gens[0].n
    if any(g.n != n for g in gens):
        raise LengthMismatch("generators of mixed lengths")
    m = len(gens)
    terms = {}
    entries = {}
    index = {}
    for p in range(m + 1):
        subs = list(itertools.combinations(range(m), p))
        summands = []
        for s in subs:
            shift = Multidegree.zero(n)
            for i in s:
                shift = shift.add(gens[i])
            summands.append(free_summand(shift, label=s))
        terms[p] = tuple(summands)
        index[p] = {s: k for k, s in enumerate(subs)}
    for p in range(1, m + 1):
        es = []
        for s, si in index[p].items():
            for l, j in enumerate(s):
                t = tuple(x for x in s if x != j)
                es.append((si, index[p - 1][t], (-1) ** l))
        entries[p] = es
    return GradedComplex(n, terms, entries, "chain")


def taylor_resolution(ideal: MonomialIdeal) -> GradedComplex:
    """The Taylor resolution of R/I: basis = subsets of the generators,
    shift = their lcm.  Non-minimal in general but always a resolution."""
    if ideal.is_unit():
        raise UnitIdeal("no Taylor resolution for the unit ideal")
    gens = list(ideal.gens)
    n = ideal.n
    m = len(gens)
    terms = {}
    entries = {}
    index = {}
    for p in range(m + 1):
        subs = list(itertools.combinations(range(m), p))
        summands = []
        for s in subs:
            shift = Multidegree.zero(n)
            for i in s:
                shift = lcm_deg(shift, gens[i])
            summands.append(free_summand(shift, label=s))
        terms[p] = tuple(summands)
        index[p] = {s: k for k, s in enumerate(subs)}
    for p in range(1, m + 1):
        es = []
        for s, si in index[p].items():
            for l, j in enumerate(s):
                t = tuple(x for x in s if x != j)
                es.append((si, index[p - 1][t], (-1) ** l))
        entries[p] = es
    return GradedComplex(n, terms, entries, "chain")


def fiber(c: GradedComplex, gamma) -> FiberComplex:
    return c.fiber(gamma)


def stable_box(c) -> Multidegree:
    return c.stable_box()


def with_coefficient(c: GradedComplex, coefficient: MonomialIdeal) -> GradedComplex:
    """Tensor a free or cyclic complex with the quotient module R/coefficient.

    Free R(-a) becomes R/coefficient(-a); cyclic R/J(-a) becomes R/(J+coeff)(-a).
    The scalar entries are unchanged.
    """
    if coefficient.is_unit():
        raise UnitIdeal("coefficient module R/I is zero")
    if c.kind == IDEAL:
        raise MixedKinds("cannot tensor an ideal-summand complex with a quotient")

    def convert(s: Summand) -> Summand:
        if s.kind == FREE:
            return cyclic_summand(coefficient, s.shift, s.label)
        return cyclic_summand(combine([s.ideal, coefficient], "sum"), s.shift, s.label)

    terms = {i: tuple(convert(s) for s in ss) for i, ss in c.terms.items()}
    return GradedComplex(c.n, terms, dict(c.entries), c.orientation)


def tensor_complexes(a: GradedComplex, b: GradedComplex) -> GradedComplex:
    """Tensor product over R of two complexes (no ideal-kind summands).

    Term (i, j) sits in degree i + j; the b-direction differential carries
    the Koszul sign (-1)^i.
    """
    if a.kind == IDEAL or b.kind == IDEAL:
        raise MixedKinds("tensor_complexes does not support ideal summands")
    if a.n != b.n:
        raise LengthMismatch("factors live in different variable counts")
    n = a.n

    def combine_summands(x: Summand, y: Summand, label) -> Summand:
        shift = x.shift.add(y.shift)
        if x.kind == FREE and y.kind == FREE:
            return free_summand(shift, label)
        ideals = [s.ideal for s in (x, y) if s.kind == CYCLIC]
        return cyclic_summand(combine(ideals, "sum") if len(ideals) > 1 else ideals[0],
                              shift, label)

    terms: dict = {}
    index: dict = {}
    for i, sa in sorted(a.terms.items()):
        for j, sb in sorted(b.terms.items()):
            deg = i + j
            lst = terms.setdefault(deg, [])
            for ka, x in enumerate(sa):
                for kb, y in enumerate(sb):
                    index[(i, ka, j, kb)] = (deg, len(lst))
                    lst.append(combine_summands(x, y, ((i, x.label), (j, y.label))))
    entries: dict = {}
    for i, es in a.entries.items():
        for j, sb in b.terms.items():
            for src, tgt, coeff in es:
                for kb in range(len(sb)):
                    deg, spos = index[(i, src, j, kb)]
                    _, tpos = index[(i - 1, tgt, j, kb)]
                    entries.setdefault(deg, []).append((spos, tpos, coeff))
    for j, es in b.entries.items():
        for i, sa in a.terms.items():
            sign = (-1) ** i
            for src, tgt, coeff in es:
                for ka in range(len(sa)):
                    deg, spos = index[(i, ka, j, src)]
                    _, tpos = index[(i, ka, j - 1, tgt)]
                    entries.setdefault(deg, []).append((spos, tpos, sign * coeff))
    terms = {d: tuple(ss) for d, ss in terms.items()}
    return GradedComplex(n, terms, entries, a.orientation)
