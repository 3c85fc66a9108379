"""N^n-indexed commuting multicomplexes of free summands.

A multicomplex has one differential per axis, each lowering that coordinate
by one; all axis squares commute and each axis differential squares to zero
(both checked symbolically over the integers at construction, which implies
the same on every multidegree fiber).  Koszul signs enter only at
totalization: axis k carries (-1)^(q_1+...+q_{k-1}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import EmptySelection, InvalidKind, LengthMismatch, MixedKinds
from .gcomplex import FREE, GradedComplex, Summand, free_summand
from .monomial import Multidegree, lcm_deg


@dataclass(frozen=True)
class RegionSelector:
    """A face / interior / complement region of the cone N^n.

    ``starred`` switches to the complementary-index convention: the selector
    then names the axes that are *zero* on the face.
    """

    kind: str
    indices: tuple
    starred: bool = False

    def __post_init__(self):
        if self.kind not in ("face", "interior", "complement"):
            raise InvalidKind(f"unknown region kind {self.kind!r}")
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        object.__setattr__(self, "indices", idx)

    def resolve(self, n_axes: int) -> frozenset:
        idx = set(self.indices)
        if any(i < 0 or i >= n_axes for i in idx):
            raise IndexError(f"axis indices {sorted(idx)} outside 0..{n_axes - 1}")
        if self.starred:
            idx = set(range(n_axes)) - idx
        return frozenset(idx)

    def member(self, q, n_axes: int) -> bool:
        axes = self.resolve(n_axes)
        supp = {i for i, v in enumerate(q) if v}
        if self.kind == "face":
            return supp <= axes
        if self.kind == "interior":
            return supp == axes
        return not supp <= axes  # complement


def face(*indices, starred=False) -> RegionSelector:
    return RegionSelector("face", indices, starred)


def interior(*indices, starred=False) -> RegionSelector:
    return RegionSelector("interior", indices, starred)


def complement(*indices, starred=False) -> RegionSelector:
    return RegionSelector("complement", indices, starred)


class Multicomplex:
    """Finite family of free-summand terms indexed by N^n with n commuting
    differentials; ``diffs[(q, k)]`` maps term q to term q - e_k."""

    def __init__(self, n_axes: int, n_vars: int, terms: dict, diffs: dict,
                 validate: bool = True):
        self.n_axes = int(n_axes)
        self.n_vars = int(n_vars)
        self.terms = {}
        for q, summands in terms.items():
            q = tuple(int(v) for v in q)
            if len(q) != self.n_axes:
                raise LengthMismatch(f"position {q} has wrong arity")
            if any(v < 0 for v in q):
                raise ValueError(f"position {q} outside N^n")
            summands = tuple(summands)
            if any(s.kind != FREE for s in summands):
                raise MixedKinds("multicomplex terms must be free summands")
            if summands:
                self.terms[q] = summands
        self.diffs = {}
        for (q, k), es in diffs.items():
            q = tuple(int(v) for v in q)
            k = int(k)
            if q not in self.terms or q[k] == 0:
                continue
            tgt = self._step(q, k)
            if tgt not in self.terms:
                continue
            merged: dict = {}
            for src, dst, coeff in es:
                if coeff:
                    merged[(src, dst)] = merged.get((src, dst), 0) + coeff
            out = tuple(
                (s, t, c) for (s, t), c in sorted(merged.items()) if c
            )
            if out:
                self.diffs[(q, k)] = out
        if validate:
            self._check_axes()

    @staticmethod
    def _step(q, k):
        return q[:k] + (q[k] - 1,) + q[k + 1 :]

    def entry_map(self, q, k) -> dict:
        return {(s, t): c for s, t, c in self.diffs.get((tuple(q), k), ())}

    def _check_axes(self):
        for q in self.terms:
            for k in range(self.n_axes):
                if q[k] < 2:
                    continue
                first = self.entry_map(q, k)
                second = self.entry_map(self._step(q, k), k)
                if not _compose_is(second, first, {}):
                    raise ValueError(f"axis {k} differential does not square to zero at {q}")
            for j, k in itertools.combinations(range(self.n_axes), 2):
                if q[j] == 0 or q[k] == 0:
                    continue
                path1 = _compose(self.entry_map(self._step(q, j), k), self.entry_map(q, j))
                path2 = _compose(self.entry_map(self._step(q, k), j), self.entry_map(q, k))
                if path1 != path2:
                    raise ValueError(f"axes {j},{k} do not commute at {q}")

    def stable_box(self) -> Multidegree:
        box = Multidegree.zero(self.n_vars)
        for ss in self.terms.values():
            for s in ss:
                box = lcm_deg(box, s.box_bound())
        return box

    def __repr__(self):
        return (
            f"Multicomplex(axes={self.n_axes}, vars={self.n_vars}, "
            f"positions={len(self.terms)})"
        )


def _compose(second: dict, first: dict) -> dict:
    acc: dict = {}
    for (s, m), c1 in first.items():
        for (m2, t), c2 in second.items():
            if m2 == m:
                acc[(s, t)] = acc.get((s, t), 0) + c1 * c2
    return {k: v for k, v in acc.items() if v}


def _compose_is(second: dict, first: dict, expected: dict) -> bool:
    return _compose(second, first) == expected


def tensor(factors) -> Multicomplex:
    """The tensor product multicomplex of chain complexes of free summands.

    Axis k applies factor k's differential with no extra sign; labels are
    tuples of the factor labels.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("tensor needs at least one factor")
    for f in factors:
        if f.kind != FREE:
            raise MixedKinds("tensor factors must consist of free summands")
        if f.orientation != "chain":
            raise ValueError("tensor factors must be chain complexes")
        if min(f.window(), default=0) < 0:
            raise ValueError("tensor factors must live in non-negative degrees")
    n_vars = factors[0].n
    if any(f.n != n_vars for f in factors):
        raise LengthMismatch("factors live in different variable counts")
    n_axes = len(factors)
    windows = [sorted(f.terms) for f in factors]
    terms = {}
    for q in itertools.product(*windows):
        summands = []
        for combo in itertools.product(*(enumerate(f.terms[qi]) for f, qi in zip(factors, q))):
            shift = Multidegree.zero(n_vars)
            for _, s in combo:
                shift = shift.add(s.shift)
            summands.append(free_summand(shift, label=tuple(s.label for _, s in combo)))
        terms[q] = tuple(summands)
    # position of a combo inside terms[q] follows the same product order
    sizes = {q: [len(f.terms[qi]) for f, qi in zip(factors, q)] for q in terms}

    def pos(q, combo_idx):
        p = 0
        for sz, ci in zip(sizes[q], combo_idx):
            p = p * sz + ci
        return p

    diffs = {}
    for q in terms:
        for k, f in enumerate(factors):
            if q[k] - 1 not in f.terms:
                continue
            tgt_q = Multicomplex._step(q, k)
            if tgt_q not in terms:
                continue
            es = []
            ranges = [range(len(fac.terms[qi])) for fac, qi in zip(factors, q)]
            axis_entries = [e for e in f.entries.get(q[k], ())]
            for combo in itertools.product(*ranges):
                for src, tgt, coeff in axis_entries:
                    if combo[k] != src:
                        continue
                    tgt_combo = combo[:k] + (tgt,) + combo[k + 1 :]
                    es.append((pos(q, combo), pos(tgt_q, tgt_combo), coeff))
            if es:
                diffs[(q, k)] = es
    return Multicomplex(n_axes, n_vars, terms, diffs)


def select(m: Multicomplex, selector: RegionSelector) -> Multicomplex:
    """Restrict to a face (subcomplex), complement or interior (quotients).

    For free-summand multicomplexes all three amount to keeping the terms
    inside the region and the entries with both endpoints inside it.
    """
    keep = {q: ss for q, ss in m.terms.items() if selector.member(q, m.n_axes)}
    diffs = {
        (q, k): es
        for (q, k), es in m.diffs.items()
        if q in keep and Multicomplex._step(q, k) in keep
    }
    return Multicomplex(m.n_axes, m.n_vars, keep, diffs, validate=False)


def totalize(m: Multicomplex, shift: int = 0) -> GradedComplex:
    """Total complex: degree i gathers positions with |q| = i (+ shift).

    Axis k contributes with sign (-1)^(q_1+...+q_{k-1}); summand labels are
    (q, original label).
    """
    positions = sorted(m.terms)
    terms: dict = {}
    where: dict = {}
    for q in positions:
        deg = sum(q) + shift
        lst = terms.setdefault(deg, [])
        for idx, s in enumerate(m.terms[q]):
            where[(q, idx)] = (deg, len(lst))
            lst.append(Summand(s.kind, s.shift, s.ideal, (q, s.label)))
    entries: dict = {}
    for (q, k), es in m.diffs.items():
        sign = (-1) ** (sum(q[:k]) % 2)
        tgt_q = Multicomplex._step(q, k)
        for src, tgt, coeff in es:
            deg, spos = where[(q, src)]
            _, tpos = where[(tgt_q, tgt)]
            entries.setdefault(deg, []).append((spos, tpos, sign * coeff))
    return GradedComplex(m.n_vars, {d: tuple(ss) for d, ss in terms.items()}, entries)


def _compose_chain(m: Multicomplex, q, axes_desc) -> dict:
    """Entries of d_{.,a1} ∘ ... ∘ d_{q,ap} starting at position q, applying
    the axes in the order given (each step lowers that coordinate)."""
    acc = None
    cur = tuple(q)
    for k in axes_desc:
        step = m.entry_map(cur, k)
        acc = step if acc is None else _compose(step, acc)
        cur = Multicomplex._step(cur, k)
    if acc is None:
        acc = {}
    return acc


def hypercube_augment(m: Multicomplex, selector: RegionSelector, shift: int = 0) -> GradedComplex:
    """Totalization of the interior region with the corner module added one
    degree below its start, attached along the composed axis differentials."""
    if selector.kind != "interior":
        raise InvalidKind("hypercube_augment needs an interior selector")
    axes = sorted(selector.resolve(m.n_axes))
    if not axes:
        raise EmptySelection("hypercube augmentation needs at least one axis")
    p = len(axes)
    inner = select(m, selector)
    total = totalize(inner, shift=shift)
    corner_src = tuple(1 if i in axes else 0 for i in range(m.n_axes))
    origin = (0,) * m.n_axes
    corner_summands = m.terms.get(origin, ())
    if not corner_summands:
        return total
    terms = {d: list(ss) for d, ss in total.terms.items()}
    entries = {d: list(es) for d, es in total.entries.items()}
    corner_deg = p - 1 + shift
    lst = terms.setdefault(corner_deg, [])
    corner_pos = {}
    for idx, s in enumerate(corner_summands):
        corner_pos[idx] = len(lst)
        lst.append(Summand(s.kind, s.shift, s.ideal, ("corner", s.label)))
    if corner_src in m.terms:
        # locate the corner-source summands inside the totalization; totalize
        # keeps each position's summands contiguous and in original order
        src_deg = p + shift
        src_pos = {}
        for pos, s in enumerate(total.terms.get(src_deg, ())):
            if s.label[0] == corner_src:
                src_pos[len(src_pos)] = pos
        psi = _compose_chain(m, corner_src, list(reversed(axes)))
        es = entries.setdefault(src_deg, [])
        for (src, tgt), coeff in sorted(psi.items()):
            es.append((src_pos[src], corner_pos[tgt], coeff))
    return GradedComplex(
        m.n_vars,
        {d: tuple(ss) for d, ss in terms.items()},
        entries,
    )


def hypercube_extend(m: Multicomplex) -> Multicomplex:
    """The mapping-cylinder multicomplex with one extra (last) axis: level 1
    carries m, level 0 the trivial hypercube on the corner term, and the
    level differential is the composed-axis map into the corner."""
    n = m.n_axes
    origin = (0,) * n
    corner = m.terms.get(origin, ())
    terms = {}
    diffs = {}
    for q, ss in m.terms.items():
        terms[q + (1,)] = tuple(
            Summand(s.kind, s.shift, s.ideal, ("C", s.label)) for s in ss
        )
    for (q, k), es in m.diffs.items():
        diffs[(q + (1,), k)] = es
    if corner:
        cube = [c for c in itertools.product((0, 1), repeat=n)]
        for c in cube:
            terms[c + (0,)] = tuple(
                Summand(s.kind, s.shift, s.ideal, ("T", c, s.label)) for s in corner
            )
        ident = [(i, i, 1) for i in range(len(corner))]
        for c in cube:
            for k in range(n):
                if c[k] == 1:
                    diffs[(c + (0,), k)] = list(ident)
        # level-axis map psi: C_q -> T_q = C_0 for q in the unit cube
        for c in cube:
            if c + (1,) not in terms:
                continue
            axes = [i for i in range(n) if c[i]]
            psi = _compose_chain(m, c, list(reversed(axes))) if axes else {
                (i, i): 1 for i in range(len(corner))
            }
            es = [(s, t, v) for (s, t), v in sorted(psi.items())]
            if es:
                diffs[(c + (1,), n)] = es
    return Multicomplex(n + 1, m.n_vars, terms, diffs)


def koszul_cone(m: Multicomplex, face_axes: int | None = None) -> Multicomplex:
    """The Koszul-cone multicomplex: one extra (last) axis p collects, per
    size-p subset S of the leading ``face_axes`` axes, the sub-multicomplex
    supported away from S; the new differential is the unit Koszul map."""
    n = m.n_axes
    fa = n if face_axes is None else int(face_axes)
    subsets = {p: list(itertools.combinations(range(fa), p)) for p in range(fa + 1)}
    terms = {}
    where = {}
    for q, ss in m.terms.items():
        supp = {i for i in range(fa) if q[i]}
        for p in range(fa + 1):
            compatible = [S for S in subsets[p] if not supp & set(S)]
            if not compatible:
                continue
            lst = []
            for S in compatible:
                for idx, s in enumerate(ss):
                    where[(q, S, idx)] = (q + (p,), len(lst))
                    lst.append(Summand(s.kind, s.shift, s.ideal, (S, s.label)))
            if lst:
                terms[q + (p,)] = tuple(lst)
    diffs = {}
    for (q, k), es in m.diffs.items():
        tgt_q = Multicomplex._step(q, k)
        supp = {i for i in range(fa) if q[i]}
        for p in range(fa + 1):
            out = []
            for S in subsets[p]:
                if supp & set(S):
                    continue
                for src, tgt, coeff in es:
                    _, spos = where[(q, S, src)]
                    _, tpos = where[(tgt_q, S, tgt)]
                    out.append((spos, tpos, coeff))
            if out:
                diffs[(q + (p,), k)] = out
    for q, ss in m.terms.items():
        supp = {i for i in range(fa) if q[i]}
        for p in range(1, fa + 1):
            out = []
            for S in subsets[p]:
                if supp & set(S):
                    continue
                for l, j in enumerate(S):
                    T = tuple(x for x in S if x != j)
                    for idx in range(len(ss)):
                        _, spos = where[(q, S, idx)]
                        _, tpos = where[(q, T, idx)]
                        out.append((spos, tpos, (-1) ** l))
            if out:
                diffs[(q + (p,), n)] = out
    return Multicomplex(n + 1, m.n_vars, terms, diffs)
