"""Finite abstract simplicial complexes, simplicial maps, and constructions.

Simplices are stored as sorted tuples of dense integer vertex ids.  The
canonical order on simplices is (dimension, lexicographic), which makes every
derived object deterministic.  Optional vertex coordinates are exact rationals
(fractions.Fraction); nothing in the pipeline ever touches floating point.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExceededError,
    DuplicateSimplexError,
    InvalidSimplexError,
    MissingFaceError,
    NonMonotoneMapError,
    NotSimplicialError,
    UnknownSimplexError,
    ValueCountMismatchError,
    VertexOutOfRangeError,
)


def simplex_key(simplex):
    """Canonical sort key: dimension first, then lexicographic."""
    return (len(simplex), simplex)


def canonical_simplex(vertices):
    """Sorted tuple form of a simplex; rejects empty or repeated entries."""
    t = tuple(sorted(vertices))
    if not t:
        raise InvalidSimplexError("empty simplex")
    for a, b in zip(t, t[1:]):
        if a == b:
            raise InvalidSimplexError(f"repeated vertex id {a} in simplex {t}")
    return t


class UnionFind:
    """Union-find over 0..n-1 with path compression and union by size."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]

    def groups(self):
        out = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return out


class SimplicialComplex:
    """A finite abstract simplicial complex.

    Immutable after construction: treat all attributes as read-only.
    ``coordinates``, when present, is one rational point per vertex id, all
    with a common ambient dimension.
    """

    __slots__ = ("num_vertices", "simplex_set", "coordinates", "_sorted", "_by_dim", "_maximal")

    def __init__(self, num_vertices, simplices, coordinates=None, check=True):
        self.num_vertices = int(num_vertices)
        self.simplex_set = frozenset(canonical_simplex(s) for s in simplices)
        if coordinates is not None:
            coordinates = tuple(tuple(Fraction(c) for c in point) for point in coordinates)
        self.coordinates = coordinates
        self._sorted = None
        self._by_dim = None
        self._maximal = None
        if check:
            self._check()

    def _check(self):
        if self.num_vertices < 0:
            raise VertexOutOfRangeError("negative vertex count")
        for s in self.simplex_set:
            if s[0] < 0 or s[-1] >= self.num_vertices:
                raise VertexOutOfRangeError(f"simplex {s} outside 0..{self.num_vertices - 1}")
        # Facet closure implies full face closure by induction on dimension.
        for s in self.simplex_set:
            if len(s) > 1:
                for facet in itertools.combinations(s, len(s) - 1):
                    if facet not in self.simplex_set:
                        raise MissingFaceError(f"face {facet} of {s} is missing")
        if self.coordinates is not None:
            if len(self.coordinates) != self.num_vertices:
                raise ValueCountMismatchError("one coordinate point per vertex required")
            dims = {len(p) for p in self.coordinates}
            if len(dims) > 1:
                raise InvalidSimplexError("coordinate points have mixed ambient dimensions")

    @property
    def simplices(self):
        """All simplices in canonical order."""
        if self._sorted is None:
            self._sorted = tuple(sorted(self.simplex_set, key=simplex_key))
        return self._sorted

    def by_dim(self):
        """dict dimension -> canonical list of simplices of that dimension."""
        if self._by_dim is None:
            table = {}
            for s in self.simplices:
                table.setdefault(len(s) - 1, []).append(s)
            self._by_dim = table
        return self._by_dim

    @property
    def dim(self):
        return max((len(s) - 1 for s in self.simplex_set), default=-1)

    @property
    def maximal_simplices(self):
        """Simplices that are not proper faces of any other simplex."""
        if self._maximal is None:
            proper_faces = set()
            for s in self.simplex_set:
                if len(s) > 1:
                    proper_faces.update(itertools.combinations(s, len(s) - 1))
            self._maximal = tuple(s for s in self.simplices if s not in proper_faces)
        return self._maximal

    def simplex_counts(self):
        """Tuple of simplex counts per dimension 0..dim."""
        table = self.by_dim()
        return tuple(len(table.get(d, ())) for d in range(self.dim + 1))

    def skeleton(self, k):
        """Sub-complex of all simplices of dimension <= k."""
        return SimplicialComplex(
            self.num_vertices,
            [s for s in self.simplex_set if len(s) <= k + 1],
            coordinates=self.coordinates,
            check=False,
        )

    def restrict_to_vertices(self, keep):
        """Full subcomplex on ``keep`` with dense reindexing.

        Returns (subcomplex, old_to_new dict).
        """
        keep = sorted(set(keep))
        old_to_new = {v: i for i, v in enumerate(keep)}
        kept_set = set(keep)
        simplices = [
            tuple(old_to_new[v] for v in s)
            for s in self.simplex_set
            if kept_set.issuperset(s)
        ]
        coords = None
        if self.coordinates is not None:
            coords = tuple(self.coordinates[v] for v in keep)
        return SimplicialComplex(len(keep), simplices, coordinates=coords, check=False), old_to_new

    def __contains__(self, simplex):
        return tuple(sorted(simplex)) in self.simplex_set

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.num_vertices == other.num_vertices
            and self.simplex_set == other.simplex_set
            and self.coordinates == other.coordinates
        )

    def __hash__(self):
        return hash((self.num_vertices, self.simplex_set))

    def __repr__(self):
        return f"SimplicialComplex(v={self.num_vertices}, simplices={len(self.simplex_set)}, dim={self.dim})"


def validate_complex(num_vertices, simplices, close_faces=False, coordinates=None):
    """Build a SimplicialComplex from raw input, loudly.

    Raw simplices must not repeat; absent faces are an error unless
    ``close_faces`` asks for downward completion.
    """
    canon = [canonical_simplex(s) for s in simplices]
    seen = set()
    for s in canon:
        if s in seen:
            raise DuplicateSimplexError(f"simplex {s} listed twice")
        seen.add(s)
    for s in canon:
        if s and (s[0] < 0 or (num_vertices is not None and s[-1] >= num_vertices)):
            raise VertexOutOfRangeError(f"simplex {s} outside 0..{num_vertices - 1}")
    if close_faces:
        closed = set()
        for s in canon:
            for k in range(1, len(s) + 1):
                closed.update(itertools.combinations(s, k))
        canon = closed
    return SimplicialComplex(num_vertices, canon, coordinates=coordinates)


class SimplicialMap:
    """A vertex assignment carrying every simplex of K onto a simplex of L.

    Dimension-collapsing images are allowed; constant maps are legal.
    """

    __slots__ = ("domain", "codomain", "vertex_images", "_image_cache")

    def __init__(self, domain, codomain, vertex_images, check=True):
        self.domain = domain
        self.codomain = codomain
        self.vertex_images = tuple(int(v) for v in vertex_images)
        self._image_cache = {}
        if check:
            if len(self.vertex_images) != domain.num_vertices:
                raise ValueCountMismatchError(
                    f"{len(self.vertex_images)} images for {domain.num_vertices} vertices"
                )
            for w in self.vertex_images:
                if w < 0 or w >= codomain.num_vertices:
                    raise VertexOutOfRangeError(f"image vertex {w} outside codomain")
            for s in domain.simplices:
                if self.image_simplex(s) not in codomain.simplex_set:
                    raise NotSimplicialError(s)

    def image_simplex(self, simplex):
        """Image vertex set of a domain simplex, as a canonical simplex."""
        cached = self._image_cache.get(simplex)
        if cached is None:
            cached = tuple(sorted({self.vertex_images[v] for v in simplex}))
            self._image_cache[simplex] = cached
        return cached

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.vertex_images == other.vertex_images
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.vertex_images))

    def __repr__(self):
        return f"SimplicialMap({self.domain!r} -> {self.codomain!r})"


def check_simplicial(domain, codomain, vertex_images):
    """Validate a vertex assignment as a simplicial map K -> L."""
    return SimplicialMap(domain, codomain, vertex_images)


@dataclass(frozen=True)
class PLFunction:
    """A piecewise-linear function given by one rational value per vertex."""

    complex: SimplicialComplex
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(self.values) != self.complex.num_vertices:
            raise ValueCountMismatchError(
                f"{len(self.values)} values for {self.complex.num_vertices} vertices"
            )


def connected_components(complex_, subset, assume_up_closed=False):
    """Partition ``subset`` under the equivalence generated by the face relation.

    Two simplices are joined whenever one is a face of the other and both lie
    in the subset.  When the subset is known to be closed under taking cofaces
    (every coface of a member is a member), joining each simplex to its facets
    already generates the same classes, which ``assume_up_closed`` exploits.

    Returns the classes as lists in canonical order.
    """
    members = sorted({canonical_simplex(s) for s in subset}, key=simplex_key)
    for s in members:
        if s not in complex_.simplex_set:
            raise UnknownSimplexError(f"{s} is not a simplex of the complex")
    index = {s: i for i, s in enumerate(members)}
    uf = UnionFind(len(members))
    for s in members:
        n = len(s)
        if n == 1:
            continue
        if assume_up_closed:
            faces = itertools.combinations(s, n - 1)
        else:
            faces = itertools.chain.from_iterable(
                itertools.combinations(s, k) for k in range(1, n)
            )
        i = index[s]
        for face in faces:
            j = index.get(face)
            if j is not None:
                uf.union(i, j)
    classes = {}
    for i, s in enumerate(members):
        classes.setdefault(uf.find(i), []).append(s)
    return sorted(classes.values(), key=lambda cls: simplex_key(cls[0]))


def barycentric_subdivision(complex_):
    """Barycentric subdivision.

    Returns (sd, carrier) where sd has one vertex per simplex of the input and
    one simplex per chain of the face relation, and ``carrier[i]`` is the
    input simplex behind sd vertex i.
    """
    carrier = complex_.simplices
    index = {s: i for i, s in enumerate(carrier)}
    # ups[i]: sd vertices of the proper cofaces of carrier[i], ascending.
    ups = [[] for _ in carrier]
    for s in carrier:
        i = index[s]
        n = len(s)
        for k in range(1, n):
            for face in itertools.combinations(s, k):
                ups[index[face]].append(i)
    ups = [tuple(sorted(u)) for u in ups]
    chains = _enumerate_chains(len(carrier), ups)
    sd = SimplicialComplex(len(carrier), chains, check=False)
    return sd, carrier


def _enumerate_chains(n, ups, cap=None):
    """All nonempty chains of a poset on ids 0..n-1.

    ``ups[i]`` must list, in ascending order, every id strictly above i; id
    order must be a linear extension.  Chains come out as ascending tuples.
    """
    chains = []
    stack = []
    for start in range(n):
        stack.append((start,))
        while stack:
            chain = stack.pop()
            chains.append(chain)
            if cap is not None and len(chains) > cap:
                raise BudgetExceededError(
                    f"chain enumeration passed the cap of {cap}", cap=cap
                )
            top = chain[-1]
            for nxt in ups[top]:
                stack.append(chain + (nxt,))
    return chains


@dataclass(frozen=True)
class Poset:
    """A finite poset stored as elements plus covering pairs.

    Covers are (lower, higher) index pairs and are reduced to the transitive
    reduction at construction time.  Indices need not be a linear extension.
    """

    elements: tuple
    covers: tuple

    def __init__(self, elements, covers):
        elements = tuple(elements)
        covers = tuple(sorted(set((int(a), int(b)) for a, b in covers)))
        n = len(elements)
        for a, b in covers:
            if a == b:
                raise InvalidSimplexError(f"reflexive relation ({a}, {b})")
            if not (0 <= a < n and 0 <= b < n):
                raise VertexOutOfRangeError(f"relation ({a}, {b}) outside 0..{n - 1}")
        order = _topological_order(n, covers)  # raises on cycles
        covers = _transitive_reduction(n, covers, order)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "covers", covers)

    def up_sets(self):
        """For each element, the ascending ids of all strictly greater elements."""
        n = len(self.elements)
        above = [set() for _ in range(n)]
        succ = [[] for _ in range(n)]
        for a, b in self.covers:
            succ[a].append(b)
        for i in reversed(_topological_order(n, self.covers)):
            for j in succ[i]:
                above[i].add(j)
                above[i] |= above[j]
        return [tuple(sorted(s)) for s in above]

    def chains(self, cap=None):
        """All nonempty chains, each as a sorted tuple of element ids."""
        n = len(self.elements)
        order = _topological_order(n, self.covers)
        pos = {e: i for i, e in enumerate(order)}
        ups_raw = self.up_sets()
        # Relabel through the topological order so ids ascend along chains.
        ups = [tuple(sorted(pos[j] for j in ups_raw[order[i]])) for i in range(n)]
        chains = _enumerate_chains(n, ups, cap=cap)
        return [tuple(sorted(order[i] for i in chain)) for chain in chains]

    def order_complex(self, cap=None):
        """The simplicial complex of chains of this poset."""
        return SimplicialComplex(len(self.elements), self.chains(cap=cap), check=False)


def _topological_order(n, edges):
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    out = []
    heapq.heapify(ready)
    while ready:
        i = heapq.heappop(ready)
        out.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    if len(out) != n:
        raise InvalidSimplexError("relation has a cycle")
    return out


def _transitive_reduction(n, edges, order):
    """Drop covering pairs implied by longer paths."""
    succ = [set() for _ in range(n)]
    for a, b in edges:
        succ[a].add(b)
    above = [set() for _ in range(n)]
    for i in reversed(order):
        for j in succ[i]:
            above[i].add(j)
            above[i] |= above[j]
    reduced = []
    for a, b in edges:
        if not any(b in above[j] for j in succ[a] if j != b):
            reduced.append((a, b))
    return tuple(sorted(reduced))


@dataclass(frozen=True)
class StaircaseProduct:
    """Result of a staircase triangulation of a product.

    ``vertex_pairs[i]`` is the (vertex-of-K1, vertex-of-K2) pair behind
    product vertex i.  ``product_map`` is the product simplicial map when
    factor maps were supplied, with ``codomain_pairs`` describing its codomain
    vertices.
    """

    complex: SimplicialComplex
    vertex_pairs: tuple
    product_map: object = None
    codomain_pairs: tuple = None


def staircase_product(k1, k2, f1=None, f2=None, orders=None):
    """Staircase (order-complex-of-product-poset) triangulation of |K1| x |K2|.

    Simplices are chains of vertex pairs, monotone in both coordinates with
    respect to total vertex orders, whose coordinate projections are simplices
    of the factors.  When maps ``f1: K1 -> L1`` and ``f2: K2 -> L2`` are given,
    domain vertices are re-ordered by image so both maps become monotone, and
    the product map onto the staircase triangulation of L1 x L2 is returned.

    ``orders`` pins explicit domain vertex orders (two permutations) instead;
    pinned orders that leave a map non-monotone raise NonMonotoneMapError.
    """
    if (f1 is None) != (f2 is None):
        raise ValueError("supply both factor maps or neither")
    if f1 is not None and (f1.domain != k1 or f2.domain != k2):
        raise ValueError("factor maps must be defined on the factor complexes")

    def _order_for(k, f, pinned):
        verts = [s[0] for s in k.by_dim().get(0, ())]
        if pinned is not None:
            order = [v for v in pinned if (v,) in k.simplex_set]
            if sorted(order) != verts:
                raise ValueError("pinned order must be a permutation of the vertices")
            if f is not None:
                rank = {v: i for i, v in enumerate(order)}
                for u in order:
                    for w in order:
                        if rank[u] < rank[w] and f.vertex_images[u] > f.vertex_images[w]:
                            raise NonMonotoneMapError(
                                f"vertices {u} < {w} map to {f.vertex_images[u]} > {f.vertex_images[w]}"
                            )
            return order
        if f is None:
            return verts
        return sorted(verts, key=lambda v: (f.vertex_images[v], v))

    o1 = _order_for(k1, f1, orders[0] if orders else None)
    o2 = _order_for(k2, f2, orders[1] if orders else None)
    pos1 = {v: i for i, v in enumerate(o1)}
    pos2 = {v: i for i, v in enumerate(o2)}

    pairs = sorted(
        ((u, v) for u in o1 for v in o2),
        key=lambda p: (pos1[p[0]], pos2[p[1]]),
    )
    pair_id = {p: i for i, p in enumerate(pairs)}

    simplices = set()
    for sigma in k1.maximal_simplices:
        a = sorted(sigma, key=pos1.__getitem__)
        for tau in k2.maximal_simplices:
            b = sorted(tau, key=pos2.__getitem__)
            for path in _lattice_paths(len(a), len(b)):
                top = tuple(pair_id[(a[i], b[j])] for i, j in path)
                for k in range(1, len(top) + 1):
                    simplices.update(itertools.combinations(top, k))

    coords = None
    if k1.coordinates is not None and k2.coordinates is not None:
        coords = tuple(k1.coordinates[u] + k2.coordinates[v] for u, v in pairs)
    product = SimplicialComplex(len(pairs), simplices, coordinates=coords)

    if f1 is None:
        return StaircaseProduct(product, tuple(pairs))

    cod = staircase_product(f1.codomain, f2.codomain)
    cod_id = {p: i for i, p in enumerate(cod.vertex_pairs)}
    images = [
        cod_id[(f1.vertex_images[u], f2.vertex_images[v])] for u, v in pairs
    ]
    prod_map = SimplicialMap(product, cod.complex, images)
    return StaircaseProduct(product, tuple(pairs), prod_map, cod.vertex_pairs)


def _lattice_paths(rows, cols):
    """Monotone unit-step paths through a rows x cols grid of indices."""
    paths = []
    path = [(0, 0)]

    def walk(i, j):
        if i == rows - 1 and j == cols - 1:
            paths.append(tuple(path))
            return
        if i + 1 < rows:
            path.append((i + 1, j))
            walk(i + 1, j)
            path.pop()
        if j + 1 < cols:
            path.append((i, j + 1))
            walk(i, j + 1)
            path.pop()

    walk(0, 0)
    return paths
