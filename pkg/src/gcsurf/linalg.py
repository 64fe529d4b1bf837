"""Exact rational linear algebra on sparse and dense matrices.

Everything here computes over Q, exactly.  The sparse elimination is
fraction-free (integer cross-multiplication, Bareiss division for the
standalone rank), with Markowitz-count pivot selection and a
deterministic lowest-(row, col) tie-break so that repeated runs are
bit-for-bit reproducible.  A deliberately naive dense pipeline is kept
alongside as an independent oracle; it shares no code with the sparse
path.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd


class CompositionNonzero(Exception):
    """Raised when a claimed two-step differential does not square to zero."""


class SparseMatrix:
    """Immutable sparse matrix over Q.

    entries maps (row, col) -> nonzero Fraction.  Zero values are dropped
    at construction; indices are range-checked.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) out of range for {rows}x{cols}")
            v = Fraction(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SparseMatrix is immutable")

    @classmethod
    def from_rows(cls, rows_data, cols=None):
        """Build from an iterable of {col: value} dicts."""
        rows_data = list(rows_data)
        if cols is None:
            cols = 1 + max((c for row in rows_data for c in row), default=-1)
        entries = {}
        for r, row in enumerate(rows_data):
            for c, v in row.items():
                if v:
                    entries[(r, c)] = Fraction(v)
        return cls(len(rows_data), cols, entries)

    @classmethod
    def from_dense(cls, lists):
        rows = len(lists)
        cols = len(lists[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(lists)
                                for c, v in enumerate(row) if v})

    def to_dense(self):
        m = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            m[r][c] = v
        return m

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self):
        return SparseMatrix(self.cols, self.rows,
                            {(c, r): v for (r, c), v in self.entries.items()})

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row = other.row_dicts()
        out = {}
        for (r, c), v in self.entries.items():
            for c2, w in by_row[c].items():
                key = (r, c2)
                s = out.get(key, Fraction(0)) + v * w
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return SparseMatrix(self.rows, other.cols, out)

    def apply(self, vec):
        """Matrix times a column vector given as {index: Fraction}."""
        out = {}
        for (r, c), v in self.entries.items():
            w = vec.get(c)
            if w:
                s = out.get(r, Fraction(0)) + v * w
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out

    def is_zero(self):
        return not self.entries

    def to_json_obj(self):
        ents = sorted(self.entries.items())
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[r, c, str(v)] for (r, c), v in ents]}

    def to_json(self):
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["rows"], obj["cols"],
                   {(r, c): Fraction(v) for r, c, v in obj["entries"]})

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def _int_rows(matrix):
    """Rows as {col: int} dicts with cleared denominators."""
    rows = []
    for row in matrix.row_dicts():
        if not row:
            rows.append({})
            continue
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        ints = {c: int(v * den) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        rows.append(ints)
    return rows


def rank(matrix):
    """Rank over Q by fraction-free (Bareiss) elimination.

    Pivots are chosen by minimal Markowitz count (fill-in bound); ties go
    to the lexicographically smallest (row, col).
    """
    rows = [r for r in _int_rows(matrix) if r]
    col_count = {}
    for row in rows:
        for c in row:
            col_count[c] = col_count.get(c, 0) + 1
    active = list(range(len(rows)))
    prev_pivot = 1
    rk = 0
    while True:
        best = None
        for ri in active:
            row = rows[ri]
            if not row:
                continue
            rnnz = len(row) - 1
            for c in row:
                score = rnnz * (col_count[c] - 1)
                key = (score, ri, c)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, pr, pc = best
        rk += 1
        prow = rows[pr]
        pval = prow[pc]
        active = [ri for ri in active if ri != pr]
        for c in prow:
            col_count[c] -= 1
        for ri in active:
            row = rows[ri]
            f = row.get(pc)
            if f is None:
                # Bareiss still rescales untouched rows; keeps divisions exact.
                rows[ri] = {c: (pval * v) // prev_pivot for c, v in row.items()}
                continue
            for c in row:
                col_count[c] -= 1
            new = {}
            for c, v in row.items():
                if c == pc:
                    continue
                w = pval * v - f * prow.get(c, 0)
                if w:
                    new[c] = w // prev_pivot
            for c, pv in prow.items():
                if c != pc and c not in row:
                    w = -f * pv
                    if w:
                        new[c] = w // prev_pivot
            rows[ri] = new
            for c in new:
                col_count[c] = col_count.get(c, 0) + 1
        prev_pivot = pval
    return rk


class IncrementalEchelon:
    """Row space accumulator over Q with integer fraction-free rows.

    Stored rows are gcd-normalized, each with its leading (smallest)
    column as pivot, and rows are fully forward-reduced, so membership
    and projection are deterministic.  Used as the workhorse for ideal
    saturation and kernel extraction.
    """

    def __init__(self):
        self.pivot_rows = {}  # pivot col -> {col: int}

    @property
    def rank(self):
        return len(self.pivot_rows)

    def pivot_cols(self):
        return sorted(self.pivot_rows)

    def _reduce_int(self, row):
        """Fully reduce an integer row dict in place-ish; returns new dict."""
        pivots = self.pivot_rows
        while True:
            hit = None
            for c in row:
                if c in pivots and (hit is None or c < hit):
                    hit = c
            if hit is None:
                return row
            prow = pivots[hit]
            a = prow[hit]
            b = row[hit]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {}
            for c, v in row.items():
                w = a * v - b * prow.get(c, 0)
                if w:
                    new[c] = w
            for c, pv in prow.items():
                if c not in row and c != hit:
                    w = -b * pv
                    if w:
                        new[c] = w
            row = new

    @staticmethod
    def _normalize(row):
        g = 0
        for v in row.values():
            g = gcd(g, v)
        lead = min(row)
        if row[lead] < 0:
            g = -g
        if g not in (0, 1):
            row = {c: v // g for c, v in row.items()}
        return row

    def to_int_row(self, vec):
        """Clear denominators of a {col: Fraction|int} vector."""
        den = 1
        for v in vec.values():
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        if den == 1:
            return {c: int(v) for c, v in vec.items() if v}
        return {c: int(v * den) for c, v in vec.items() if v}

    def add(self, vec):
        """Add a vector to the span.  Returns True if the rank grew."""
        row = self._reduce_int(self.to_int_row(vec))
        if not row:
            return False
        row = self._normalize(row)
        self.pivot_rows[min(row)] = row
        return True

    def contains(self, vec):
        return not self._reduce_int(self.to_int_row(vec))

    def reduce(self, vec):
        """Residual of a rational vector modulo the span, over Q.

        The residual is the unique representative supported on non-pivot
        columns... up to overall scaling by the eliminations; callers that
        need a canonical representative should use ``project``.
        """
        row = self._reduce_int(self.to_int_row(vec))
        return {c: Fraction(v) for c, v in row.items()}

    def project(self, vec):
        """Canonical projection onto non-pivot coordinates.

        Solves vec = combination(pivot rows) + residual with the residual
        supported away from pivot columns, returned with exact rational
        coefficients matching vec's scale.
        """
        residual = dict(vec)
        pivots = self.pivot_rows
        while True:
            hit = None
            for c in residual:
                if c in pivots and (hit is None or c < hit):
                    hit = c
            if hit is None:
                return {c: Fraction(v) for c, v in residual.items() if v}
            prow = pivots[hit]
            coef = Fraction(residual[hit], prow[hit])
            for c, pv in prow.items():
                s = Fraction(residual.get(c, 0)) - coef * pv
                if s:
                    residual[c] = s
                else:
                    residual.pop(c, None)

    def kernel_basis(self, cols):
        """Basis of the kernel of the matrix whose rows span this space.

        One vector per non-pivot column, with a 1 in that column; exact.
        """
        pivots = sorted(self.pivot_rows)
        free = [c for c in range(cols) if c not in self.pivot_rows]
        basis = []
        for f in free:
            v = {f: Fraction(1)}
            for p in reversed(pivots):
                row = self.pivot_rows[p]
                s = Fraction(0)
                for c, coef in row.items():
                    if c != p and c in v:
                        s += coef * v[c]
                if s:
                    v[p] = -s / row[p]
            basis.append(v)
        return basis


def nullspace_basis(matrix):
    """Exact basis of ker(matrix); cols - rank vectors, each with m.v = 0."""
    ech = IncrementalEchelon()
    for row in matrix.row_dicts():
        if row:
            ech.add(row)
    basis = ech.kernel_basis(matrix.cols)
    return basis


def cohomology_dim(d_in, d_out):
    """dim ker(d_out) - rank(d_in) for a three-term complex.

    d_in maps into the middle space (rows of d_in = its dimension), d_out
    maps out of it (cols of d_out = the same dimension).  Raises
    CompositionNonzero unless d_out . d_in = 0 exactly.
    """
    if d_in.rows != d_out.cols:
        raise ValueError("middle-space dimensions disagree")
    if not d_out.matmul(d_in).is_zero():
        raise CompositionNonzero("d_out . d_in has a nonzero entry")
    dim_ker = d_out.cols - rank(d_out)
    return dim_ker - rank(d_in)


# ---------------------------------------------------------------------------
# Independent dense oracle.  Plain Gaussian elimination over Fraction with
# first-nonzero pivoting; shares nothing with the sparse engine above.
# ---------------------------------------------------------------------------

def dense_rank(dense):
    m = [list(map(Fraction, row)) for row in dense]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank_ = 0
    prow = 0
    for pc in range(ncols):
        search = prow
        while search < nrows and m[search][pc] == 0:
            search += 1
        if search == nrows:
            continue
        m[prow], m[search] = m[search], m[prow]
        pv = m[prow][pc]
        for r in range(prow + 1, nrows):
            if m[r][pc]:
                f = m[r][pc] / pv
                mr = m[r]
                mp = m[prow]
                for c in range(pc, ncols):
                    mr[c] -= f * mp[c]
        rank_ += 1
        prow += 1
        if prow == nrows:
            break
    return rank_


def dense_nullspace(dense, ncols=None):
    m = [list(map(Fraction, row)) for row in dense]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    nrows = len(m)
    pivots = []
    prow = 0
    for pc in range(ncols):
        search = prow
        while search < nrows and m[search][pc] == 0:
            search += 1
        if search == nrows:
            continue
        m[prow], m[search] = m[search], m[prow]
        pv = m[prow][pc]
        m[prow] = [x / pv for x in m[prow]]
        for r in range(nrows):
            if r != prow and m[r][pc]:
                f = m[r][pc]
                m[r] = [a - f * b for a, b in zip(m[r], m[prow])]
        pivots.append(pc)
        prow += 1
        if prow == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis
