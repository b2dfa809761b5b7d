"""Exact simplicial homology with rational coefficients.

Boundary matrices carry their usual +-1 entries; ranks are computed by
fraction-free integer elimination (cross-multiplication plus a gcd sweep per
updated column), so every Betti number is exact.  A free-face collapse pass
shrinks the complex first; collapses preserve the homotopy type, so they
change nothing but the matrix sizes.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from math import gcd

from .complexes import simplex_key


class BettiVector:
    """Betti numbers by dimension, trailing zeros trimmed."""

    __slots__ = ("numbers",)

    def __init__(self, numbers):
        numbers = tuple(int(b) for b in numbers)
        while numbers and numbers[-1] == 0:
            numbers = numbers[:-1]
        self.numbers = numbers

    @property
    def total(self):
        return sum(self.numbers)

    @property
    def euler(self):
        return sum((-1) ** d * b for d, b in enumerate(self.numbers))

    def __getitem__(self, d):
        if 0 <= d < len(self.numbers):
            return self.numbers[d]
        return 0

    def __len__(self):
        return len(self.numbers)

    def __iter__(self):
        return iter(self.numbers)

    def as_list(self, min_len=0):
        out = list(self.numbers)
        while len(out) < min_len:
            out.append(0)
        return out

    def __eq__(self, other):
        if isinstance(other, BettiVector):
            return self.numbers == other.numbers
        try:
            return self.numbers == BettiVector(other).numbers
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.numbers)

    def __repr__(self):
        return f"BettiVector{self.numbers}"


@dataclass(frozen=True)
class ChainComplexQ:
    """Explicit boundary matrices over the rationals.

    ``bases[d]`` is the canonical list of d-simplices; ``boundaries[d]`` holds
    one sparse column per d-simplex, mapping (d-1)-basis indices to +-1.
    """

    bases: dict
    boundaries: dict

    def matrix_shape(self, d):
        rows = len(self.bases.get(d - 1, ()))
        cols = len(self.bases.get(d, ()))
        return rows, cols


def chain_complex(complex_):
    """Boundary matrices of a complex, with the d(d) = 0 identity verified."""
    bases = {d: list(simps) for d, simps in complex_.by_dim().items()}
    index = {d: {s: i for i, s in enumerate(simps)} for d, simps in bases.items()}
    boundaries = {}
    for d, simps in bases.items():
        cols = []
        lower = index.get(d - 1, {})
        for s in simps:
            col = {}
            if d > 0:
                for i in range(len(s)):
                    face = s[:i] + s[i + 1 :]
                    col[lower[face]] = -1 if i % 2 else 1
            cols.append(col)
        boundaries[d] = cols
    for d in bases:
        if d - 1 in bases and d in bases:
            _verify_squares_to_zero(boundaries[d - 1], boundaries[d])
    return ChainComplexQ(bases, boundaries)


def _verify_squares_to_zero(lower_cols, upper_cols):
    for col in upper_cols:
        acc = {}
        for row, coeff in col.items():
            for r2, c2 in lower_cols[row].items():
                acc[r2] = acc.get(r2, 0) + coeff * c2
        if any(v != 0 for v in acc.values()):
            raise AssertionError("boundary composed with boundary is nonzero")


def free_face_collapse(simplices):
    """Greedy elementary collapse; returns the surviving simplex set.

    A simplex with exactly one proper coface is removed together with that
    coface.  Each removal is an elementary collapse, so the homotopy type of
    the complex is untouched.  Processing order is canonical, hence the result
    is deterministic.
    """
    alive = set(simplices)
    cofaces = {}
    for s in alive:
        if len(s) > 1:
            for facet in itertools.combinations(s, len(s) - 1):
                cofaces.setdefault(facet, set()).add(s)
    # A facet with a unique coface anywhere has a unique proper coface:
    # a deeper coface would force a second codimension-one coface.
    heap = [simplex_key(s) + (s,) for s in alive if len(cofaces.get(s, ())) == 1]
    heapq.heapify(heap)
    while heap:
        entry = heapq.heappop(heap)
        s = entry[-1]
        if s not in alive:
            continue
        owners = cofaces.get(s)
        if not owners or len(owners) != 1:
            continue
        (t,) = owners
        if t not in alive:
            continue
        alive.discard(s)
        alive.discard(t)
        for gone in (s, t):
            if len(gone) > 1:
                for facet in itertools.combinations(gone, len(gone) - 1):
                    group = cofaces.get(facet)
                    if group is not None:
                        group.discard(gone)
                        if len(group) == 1 and facet in alive:
                            heapq.heappush(heap, simplex_key(facet) + (facet,))
    return alive


def rank_fraction_free(columns, normalize=True):
    """Exact rank of a sparse integer matrix given as row->value column dicts.

    Columns are consumed left to right; each is reduced against previously
    found pivot columns (pivot row = largest remaining row index) by integer
    cross-multiplication, with a gcd division keeping entries small.  The
    pivot order is deterministic, so reduced columns are reproducible.
    """
    pivots = {}
    rank = 0
    for col in columns:
        col = {r: v for r, v in col.items() if v}
        while col:
            low = max(col)
            seen = pivots.get(low)
            if seen is None:
                pivots[low] = col
                rank += 1
                break
            a, b = col[low], seen[low]
            g = gcd(a, b)
            ma, mb = b // g, a // g
            merged = {r: v * ma for r, v in col.items()}
            for r, v in seen.items():
                merged[r] = merged.get(r, 0) - v * mb
            col = {r: v for r, v in merged.items() if v}
            if normalize and col:
                g = 0
                for v in col.values():
                    g = gcd(g, v)
                if g > 1:
                    col = {r: v // g for r, v in col.items()}
    return rank


def betti(complex_, collapse=True):
    """Betti vector over the rationals.

    ``collapse`` turns the free-face preprocessing on (default); results are
    identical either way.
    """
    simplices = complex_.simplex_set
    if not simplices:
        return BettiVector(())
    if collapse:
        simplices = free_face_collapse(simplices)
    by_dim = {}
    for s in sorted(simplices, key=simplex_key):
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim)
    ranks = {0: 0}
    for d in range(1, top + 1):
        lower = {s: i for i, s in enumerate(by_dim.get(d - 1, ()))}
        cols = []
        for s in by_dim.get(d, ()):
            col = {}
            for i in range(len(s)):
                col[lower[s[:i] + s[i + 1 :]]] = -1 if i % 2 else 1
            cols.append(col)
        ranks[d] = rank_fraction_free(cols)
    numbers = []
    for d in range(top + 1):
        n_d = len(by_dim.get(d, ()))
        numbers.append(n_d - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return BettiVector(numbers)


def euler_characteristic(complex_):
    """Alternating simplex count."""
    return sum((-1) ** d * n for d, n in enumerate(complex_.simplex_counts()))


def regular_cw_betti(dims, facets):
    """Betti vector of a regular cell complex given by its facet relation.

    ``dims[c]`` is the dimension of cell c and ``facets[c]`` its codimension-
    one faces.  Incidence signs exist for any regular complex whose closed
    cells are polytopes: every ridge of a cell lies in exactly two of its
    facets, so signs propagate along the facet graph from an arbitrary seed,
    and the two-facet condition is exactly the boundary-of-boundary identity.
    Both facts are asserted cell by cell.
    """
    if not dims:
        return BettiVector(())
    cells_by_dim = {}
    for c, d in enumerate(dims):
        cells_by_dim.setdefault(d, []).append(c)
    top = max(cells_by_dim)
    for d in range(top + 1):
        cells_by_dim.setdefault(d, [])

    incidence = {}
    for d in range(1, top + 1):
        for c in cells_by_dim[d]:
            fs = sorted(facets[c])
            if d == 1:
                if len(fs) != 2 or fs[0] == fs[1]:
                    raise AssertionError(f"1-cell {c} lacks two distinct endpoints")
                incidence[(c, fs[0])] = 1
                incidence[(c, fs[1])] = -1
                continue
            ridges = {}
            for fa in fs:
                for g in facets[fa]:
                    ridges.setdefault(g, []).append(fa)
            for g, pair in ridges.items():
                if len(pair) != 2:
                    raise AssertionError(
                        f"ridge {g} of cell {c} lies in {len(pair)} facets, not 2"
                    )
            neighbors = {fa: [] for fa in fs}
            for g, (fa, fb) in ridges.items():
                neighbors[fa].append((g, fb))
                neighbors[fb].append((g, fa))
            sign = {fs[0]: 1}
            queue = [fs[0]]
            while queue:
                fa = queue.pop()
                for g, fb in neighbors[fa]:
                    wanted = -sign[fa] * incidence[(fa, g)] * incidence[(fb, g)]
                    known = sign.get(fb)
                    if known is None:
                        sign[fb] = wanted
                        queue.append(fb)
                    elif known != wanted:
                        raise AssertionError(f"inconsistent orientation around cell {c}")
            if len(sign) != len(fs):
                raise AssertionError(f"facet graph of cell {c} is disconnected")
            for fa in fs:
                incidence[(c, fa)] = sign[fa]

    numbers = []
    ranks = {0: 0}
    for d in range(1, top + 1):
        local = {c: i for i, c in enumerate(cells_by_dim[d - 1])}
        cols = []
        for c in cells_by_dim[d]:
            cols.append({local[fa]: incidence[(c, fa)] for fa in facets[c]})
        ranks[d] = rank_fraction_free(cols)
    for d in range(top + 1):
        n_d = len(cells_by_dim[d])
        numbers.append(n_d - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return BettiVector(numbers)


def betti_report(complex_, collapse=True):
    """Report document for a Betti computation."""
    bv = betti(complex_, collapse=collapse)
    return {
        "betti": bv.as_list(),
        "total": bv.total,
        "euler": euler_characteristic(complex_),
    }


def convolve(a, b):
    """Coefficient-wise convolution of two Betti vectors (Kunneth over Q)."""
    a = list(a)
    b = list(b)
    if not a or not b:
        return BettiVector(())
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return BettiVector(out)
