"""Independent verification machinery for the test suite.

Everything in here is deliberately written from scratch against the math,
not against the package internals: naive dense linear algebra over exact
fractions, an integer Smith-form rank, geometric level-set component counts
from edge crossings, and a coordinate-level triangulation of fiber powers.
"""

from fractions import Fraction
from itertools import combinations, product


def gauss_rank_fractions(rows):
    """Rank by plain Gaussian elimination over Fraction."""
    rows = [[Fraction(x) for x in row] for row in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    pivot_row = 0
    for col in range(ncols):
        pivot = None
        for r in range(pivot_row, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        pv = rows[pivot_row][col]
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[pivot_row])]
        pivot_row += 1
        rank += 1
    return rank


def smith_rank(rows):
    """Rank via integer Smith-style diagonalization."""
    m = [[int(x) for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    top = 0
    while top < min(nrows, ncols):
        pivot = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] != 0:
                    if pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for row in m:
            row[top], row[pj] = row[pj], row[top]
        while True:
            p = m[top][top]
            dirty = False
            for i in range(top + 1, nrows):
                q = m[i][top] // p
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                if m[i][top]:
                    m[top], m[i] = m[i], m[top]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(top + 1, ncols):
                q = m[top][j] // p
                if q:
                    for row in m:
                        row[j] -= q * row[top]
                if m[top][j]:
                    for row in m:
                        row[top], row[j] = row[j], row[top]
                    dirty = True
                    break
            if not dirty:
                break
        rank += 1
        top += 1
    return rank


def boundary_matrix_dense(simplices_by_dim, d):
    """Dense boundary matrix from dimension d to d-1, standard signs."""
    lower = {s: i for i, s in enumerate(simplices_by_dim.get(d - 1, ()))}
    upper = simplices_by_dim.get(d, ())
    rows = [[0] * len(upper) for _ in lower]
    for j, s in enumerate(upper):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            rows[lower[face]][j] = -1 if i % 2 else 1
    return rows


def naive_betti(simplices):
    """Betti numbers from scratch: dense matrices, fraction Gaussian ranks."""
    by_dim = {}
    for s in sorted(simplices, key=lambda s: (len(s), s)):
        by_dim.setdefault(len(s) - 1, []).append(tuple(s))
    if not by_dim:
        return []
    top = max(by_dim)
    ranks = {}
    for d in range(1, top + 1):
        ranks[d] = gauss_rank_fractions(boundary_matrix_dense(by_dim, d))
    out = []
    for d in range(top + 1):
        out.append(len(by_dim.get(d, ())) - ranks.get(d, 0) - ranks.get(d + 1, 0))
    while out and out[-1] == 0:
        out.pop()
    return out


def level_component_count(complex_, values, t):
    """Components of the level set {g = t}, from geometric crossings.

    Atoms are vertices sitting at the level and interior crossing points of
    edges spanning it; atoms inside a common simplex are joined because the
    simplex's level slice is convex.
    """
    t = Fraction(t)
    atoms = set()
    for s in complex_.simplices:
        if len(s) == 1 and values[s[0]] == t:
            atoms.add(("v", s[0]))
        elif len(s) == 2:
            a, b = sorted(s, key=lambda v: values[v])
            if values[a] < t < values[b]:
                atoms.add(("e", s))
    parent = {a: a for a in atoms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for s in complex_.simplices:
        local = [("v", v) for v in s if values[v] == t]
        for e in combinations(s, 2):
            if ("e", e) in atoms:
                local.append(("e", e))
        for a, b in zip(local, local[1:]):
            union(a, b)
    return len({find(a) for a in atoms})


def _centroid(points):
    n = len(points)
    dim = len(points[0])
    return tuple(sum(p[i] for p in points) / n for i in range(dim))


def fiber_power_cells_geometric(f, p):
    """Cells of the fiber power, certified by explicit rational points.

    Domain vertex v sits at e_v, codomain vertex w at e_w.  For every tuple
    of simplices with one common exact image a point of the open cell is
    constructed and checked: all barycentric coordinates positive exactly on
    the tuple's support, and all coordinates map to the same codomain point
    under the affine extension of f.

    Returns (cells, points): cells are (tau, tuple) pairs, points their
    witness coordinates in the (p+1)-fold product space.
    """
    n = f.domain.num_vertices
    m = f.codomain.num_vertices

    def evaluate(x):
        y = [Fraction(0)] * m
        for v, coeff in enumerate(x):
            y[f.vertex_images[v]] += coeff
        return tuple(y)

    groups = {}
    for s in f.domain.simplices:
        groups.setdefault(f.image_simplex(s), []).append(s)

    cells = []
    points = []
    for tau in sorted(groups, key=lambda s: (len(s), s)):
        for tup in product(groups[tau], repeat=p + 1):
            witness = []
            target = None
            for rho in tup:
                coords = [Fraction(0)] * n
                for t in tau:
                    over_t = [v for v in rho if f.vertex_images[v] == t]
                    assert over_t, "component does not cover its image"
                    for v in over_t:
                        coords[v] += Fraction(1, len(tau) * len(over_t))
                assert all((coords[v] > 0) == (v in rho) for v in range(n))
                y = evaluate(coords)
                if target is None:
                    target = y
                assert y == target, "components map to different points"
                witness.append(tuple(coords))
            cells.append((tau, tup))
            points.append(tuple(witness))
    return cells, points


def fiber_power_triangulation_betti(f, p):
    """Betti numbers of an explicit triangulation of the fiber power.

    The cells from the geometric enumeration are ordered by componentwise
    inclusion; chains of that order, with the witness points as vertex
    coordinates, triangulate the fiber power.  Affine independence of every
    chain is verified over the rationals before the simplicial homology of
    the triangulation is computed with the naive dense machinery above.
    """
    cells, points = fiber_power_cells_geometric(f, p)
    flat = [tuple(c for x in pt for c in x) for pt in points]

    def below(a, b):
        return a != b and all(set(x).issubset(y) for x, y in zip(cells[a][1], cells[b][1]))

    n = len(cells)
    ups = [[j for j in range(n) if below(i, j)] for i in range(n)]

    # Chains of the inclusion order; extending past the top element is enough
    # because the order is transitive.
    chains = []
    stack = [(i,) for i in range(n)]
    while stack:
        chain = stack.pop()
        chains.append(tuple(sorted(chain)))
        for j in ups[chain[-1]]:
            stack.append(chain + (j,))
    chains = sorted(set(chains))

    for chain in chains:
        vectors = [
            [a - b for a, b in zip(flat[c], flat[chain[0]])] for c in chain[1:]
        ]
        if vectors:
            assert gauss_rank_fractions(vectors) == len(vectors), "degenerate chain"
    return naive_betti(chains)
