"""Exact linear algebra over a prime field GF(p).

Everything downstream (homology tables, spectral sequence pages) reduces to
ranks and subspace arithmetic of small matrices over GF(p).  Matrices are
kept sparse as (row, col, value) triples and eliminated with a deterministic
pivot rule; dense numpy elimination takes over past a density threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CompositionNonzero

DEFAULT_CHARACTERISTIC = 32003

#: nnz / (rows * cols) above which elimination goes dense.
DENSE_THRESHOLD = 0.25


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime p; all arithmetic is exact modulo p."""

    characteristic: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        if not _is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")

    @property
    def p(self) -> int:
        return self.characteristic

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)


GF = PrimeField  # short alias used throughout the package


class ScalarMatrix:
    """A sparse matrix with integer entries, reduced mod p on demand.

    Invariants: no duplicate (row, col) pairs, no stored zeros.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=()):
        self.rows = rows
        self.cols = cols
        merged: dict = {}
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
            if v:
                key = (r, c)
                if key in merged:
                    raise ValueError(f"duplicate entry at {key}")
                merged[key] = v
        self.entries = merged

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def density(self) -> float:
        if self.rows == 0 or self.cols == 0:
            return 0.0
        return self.nnz / (self.rows * self.cols)

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(
            self.cols, self.rows, [(c, r, v) for (r, c), v in self.entries.items()]
        )

    def to_dense(self, p: int | None = None) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (r, c), v in self.entries.items():
            a[r, c] = v
        if p is not None:
            a %= p
        return a

    def compose(self, other: "ScalarMatrix") -> "ScalarMatrix":
        """self @ other, over the integers (sparse)."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch in composition")
        by_row: dict = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc: dict = {}
        for (r, mid), v in self.entries.items():
            for c, w in by_row.get(mid, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return ScalarMatrix(
            self.rows, other.cols, [(r, c, v) for (r, c), v in acc.items() if v]
        )

    def __repr__(self):
        return f"ScalarMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


def _rank_sparse(m: ScalarMatrix, p: int) -> int:
    # rows as {col: val} dicts; pivot = lowest column, then lowest row index
    rows = {}
    for (r, c), v in m.entries.items():
        v %= p
        if v:
            rows.setdefault(r, {})[c] = v
    work = [rows[r] for r in sorted(rows)]
    rank = 0
    while work:
        piv_col = min(min(row) for row in work)
        piv_idx = next(i for i, row in enumerate(work) if piv_col in row)
        piv_row = work.pop(piv_idx)
        inv = pow(piv_row[piv_col], p - 2, p)
        rank += 1
        nxt = []
        for row in work:
            coeff = row.get(piv_col)
            if coeff is not None:
                factor = (coeff * inv) % p
                for c, v in piv_row.items():
                    nv = (row.get(c, 0) - factor * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            if row:
                nxt.append(row)
        work = nxt
    return rank


def _rank_dense(a: np.ndarray, p: int) -> int:
    a = a % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[r + 1 :, c]
        mask = col != 0
        if mask.any():
            a[r + 1 :][mask] = (a[r + 1 :][mask] - np.outer(col[mask], a[r])) % p
        r += 1
    return r


def rank(m: ScalarMatrix, f: PrimeField = GF()) -> int:
    """Rank of m over GF(p); deterministic pivot order."""
    if m.nnz == 0:
        return 0
    if m.density() > DENSE_THRESHOLD:
        return _rank_dense(m.to_dense(), f.p)
    return _rank_sparse(m, f.p)


class FiberComplex:
    """A finite complex of GF(p)-vector spaces.

    ``terms[i]`` is the dimension at homological degree i for i in a finite
    integer window; ``diffs[i]`` maps term i to term i-1.  Cochain complexes
    are stored with negated indices by their builders, so a single chain
    convention suffices here.
    """

    def __init__(self, terms: dict, diffs: dict):
        self.terms = {i: d for i, d in terms.items() if d}
        self.diffs = {}
        for i, m in diffs.items():
            src = terms.get(i, 0)
            tgt = terms.get(i - 1, 0)
            if m.cols != src or m.rows != tgt:
                raise ValueError(
                    f"differential at {i} has shape {m.rows}x{m.cols}, "
                    f"expected {tgt}x{src}"
                )
            if m.nnz:
                self.diffs[i] = m

    def window(self):
        if not self.terms:
            return range(0, 0)
        lo = min(self.terms)
        hi = max(self.terms)
        return range(lo, hi + 1)

    def dim(self, i: int) -> int:
        return self.terms.get(i, 0)

    def differential(self, i: int) -> ScalarMatrix:
        m = self.diffs.get(i)
        if m is None:
            return ScalarMatrix(self.dim(i - 1), self.dim(i))
        return m

    def check_composition(self, f: PrimeField = GF()):
        for i in list(self.diffs):
            if i - 1 in self.diffs:
                comp = self.diffs[i - 1].compose(self.diffs[i])
                if any(v % f.p for v in comp.entries.values()):
                    raise CompositionNonzero(f"d∘d != 0 between degrees {i} and {i-2}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in self.terms.items())


def homology_dims(c: FiberComplex, f: PrimeField = GF()) -> list:
    """[(i, dim H_i)] over the window of c; raises if d∘d != 0."""
    c.check_composition(f)
    ranks = {i: rank(m, f) for i, m in c.diffs.items()}
    out = []
    for i in c.window():
        h = c.dim(i) - ranks.get(i, 0) - ranks.get(i + 1, 0)
        out.append((i, h))
    return out


# ---------------------------------------------------------------------------
# Dense echelon-form subspace arithmetic (used by the spectral engine).
# Subspaces are row spaces of RREF matrices, which makes every derived basis
# deterministic.

def rref(mat: np.ndarray, p: int):
    """Reduced row echelon form mod p; returns (R, pivots), zero rows dropped."""
    a = np.array(mat, dtype=np.int64) % p
    if a.ndim != 2:
        raise ValueError("rref needs a 2d array")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def nullspace(mat: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : mat @ x = 0 mod p}."""
    mat = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    rows, cols = mat.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    red, pivots = rref(mat, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-int(red[r, c])) % p
    return basis


@dataclass
class Subspace:
    """Row space of ``basis`` inside GF(p)^ambient; basis kept in RREF."""

    ambient: int
    p: int
    basis: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.basis is None:
            self.basis = np.zeros((0, self.ambient), dtype=np.int64)
        else:
            b = np.atleast_2d(np.asarray(self.basis, dtype=np.int64))
            if b.size == 0:
                b = b.reshape(0, self.ambient)
            if b.shape[1] != self.ambient:
                raise ValueError("basis width != ambient dimension")
            self.basis, _ = rref(b, self.p)

    @classmethod
    def zero(cls, ambient: int, p: int) -> "Subspace":
        return cls(ambient, p)

    @classmethod
    def full(cls, ambient: int, p: int) -> "Subspace":
        return cls(ambient, p, np.eye(ambient, dtype=np.int64))

    @classmethod
    def coordinate(cls, ambient: int, p: int, coords) -> "Subspace":
        b = np.zeros((len(coords), ambient), dtype=np.int64)
        for k, c in enumerate(coords):
            b[k, c] = 1
        return cls(ambient, p, b)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, self.p, np.vstack([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        # Zassenhaus: rref of [[A A],[B 0]]; rows with zero left half carry
        # the intersection in their right half.
        a, b = self.basis, other.basis
        if a.shape[0] == 0 or b.shape[0] == 0:
            return Subspace.zero(self.ambient, self.p)
        m = self.ambient
        block = np.zeros((a.shape[0] + b.shape[0], 2 * m), dtype=np.int64)
        block[: a.shape[0], :m] = a
        block[: a.shape[0], m:] = a
        block[a.shape[0] :, :m] = b
        red, _ = rref(block, self.p)
        zero_left = ~red[:, :m].any(axis=1)
        return Subspace(self.ambient, self.p, red[zero_left, m:])

    def image_under(self, d: np.ndarray, target_ambient: int) -> "Subspace":
        """Image of this subspace under the map with matrix d (columns act)."""
        if self.dim == 0 or target_ambient == 0:
            return Subspace.zero(target_ambient, self.p)
        img = (self.basis @ d.T) % self.p
        return Subspace(target_ambient, self.p, img)

    def preimage_under(self, d: np.ndarray, source_ambient: int) -> "Subspace":
        """{x : d @ x in self}; d maps GF(p)^source_ambient to GF(p)^ambient."""
        if source_ambient == 0:
            return Subspace.zero(0, self.p)
        if self.dim == self.ambient or self.ambient == 0:
            return Subspace.full(source_ambient, self.p)
        # residual-after-elimination matrix: q @ x == 0 iff x in self
        w, pivots = rref(self.basis, self.p)
        q = np.eye(self.ambient, dtype=np.int64)
        if pivots:
            sel = np.zeros((len(pivots), self.ambient), dtype=np.int64)
            for k, c in enumerate(pivots):
                sel[k, c] = 1
            q = (q - w.T @ sel) % self.p
        return Subspace(source_ambient, self.p, nullspace((q @ d) % self.p, self.p))

    def contains(self, other: "Subspace") -> bool:
        return self.sum(other).dim == self.dim
