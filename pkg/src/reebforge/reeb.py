"""Exact Reeb graphs and Reeb spaces of simplicial maps.

The Reeb space of a simplicial map f: K -> L is realized combinatorially.
Points of |L| are stratified by the open simplices of L; over a codomain
simplex tau the fiber components of f correspond to the connected components
of S_tau = {sigma in K : tau is contained in f(sigma)} under the face
relation.  The pairs (tau, component) form the stratum poset, whose order
complex is a triangulation of the Reeb space, and the quotient map becomes a
genuine simplicial map from the barycentric subdivision of K onto it.

For a real-valued function the classical sweep is implemented independently:
level and slab components are tracked with union-find over the 2-skeleton,
whose face relation determines level-set connectivity exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    Poset,
    SimplicialComplex,
    SimplicialMap,
    UnionFind,
    _enumerate_chains,
    barycentric_subdivision,
    canonical_simplex,
    connected_components,
    simplex_key,
)
from .errors import UnknownSimplexError
from .homology import BettiVector, betti


def _partition_up_closed(members):
    """Components of an up-closed simplex family under the face relation.

    ``members`` must be closed under taking cofaces inside the ambient
    complex, so joining each simplex to its facets generates the full
    equivalence.  Classes come back as canonically ordered lists.
    """
    members = sorted(members, key=simplex_key)
    index = {s: i for i, s in enumerate(members)}
    uf = UnionFind(len(members))
    for s in members:
        if len(s) > 1:
            i = index[s]
            for facet in itertools.combinations(s, len(s) - 1):
                j = index.get(facet)
                if j is not None:
                    uf.union(i, j)
    groups = {}
    for i, s in enumerate(members):
        groups.setdefault(uf.find(i), []).append(s)
    return sorted(groups.values(), key=lambda g: simplex_key(g[0]))


@dataclass(frozen=True)
class Stratum:
    """A codomain simplex together with one fiber component over it."""

    tau: tuple
    component: int


class ReebComplex:
    """The Reeb space of a simplicial map, with its quotient structure.

    ``strata[i]`` names stratum i; ``stratum_members[i]`` is its component of
    S_tau; ``poset`` orders strata by codomain-face inclusion and component
    containment; ``realization`` is the order complex of that poset; and
    ``codomain_projection[i]`` recovers the codomain simplex under stratum i.
    The quotient map from sd(domain) onto the realization is built on first
    access (large inputs rarely need it).
    """

    def __init__(self, source_map, strata, stratum_members, comp_of, poset, realization):
        self.map = source_map
        self.strata = strata
        self.stratum_members = stratum_members
        self.poset = poset
        self.realization = realization
        self.codomain_projection = tuple(s.tau for s in strata)
        self._comp_of = comp_of
        self._stratum_id = {(s.tau, s.component): i for i, s in enumerate(strata)}
        self._quotient = None
        self._sd_carrier = None

    def stratum_index(self, tau, component):
        return self._stratum_id[(canonical_simplex(tau), component)]

    @property
    def quotient_map(self):
        if self._quotient is None:
            sd, carrier = barycentric_subdivision(self.map.domain)
            images = []
            for s in carrier:
                tau = self.map.image_simplex(s)
                images.append(self._stratum_id[(tau, self._comp_of[tau][s])])
            self._sd_carrier = carrier
            self._quotient = SimplicialMap(sd, self.realization, images)
        return self._quotient

    @property
    def sd_carrier(self):
        self.quotient_map
        return self._sd_carrier

    def betti(self):
        return betti(self.realization)

    def __repr__(self):
        return f"ReebComplex(strata={len(self.strata)}, realization={self.realization!r})"


def reeb_space(f):
    """Construct the Reeb space of a simplicial map.

    Strata are computed over every codomain simplex with nonempty S_tau;
    their poset's order complex is the returned realization.
    """
    buckets = {}
    for s in f.domain.simplices:
        img = f.image_simplex(s)
        for k in range(1, len(img) + 1):
            for tau in itertools.combinations(img, k):
                buckets.setdefault(tau, []).append(s)

    strata = []
    stratum_members = []
    comp_of = {}
    for tau in sorted(buckets, key=simplex_key):
        classes = _partition_up_closed(buckets[tau])
        table = {}
        for ci, cls in enumerate(classes):
            strata.append(Stratum(tau, ci))
            stratum_members.append(tuple(cls))
            for s in cls:
                table[s] = ci
        comp_of[tau] = table

    # Every stratum must contain a simplex mapping exactly onto its tau,
    # otherwise the quotient map could not reach it.
    for stratum, members in zip(strata, stratum_members):
        if all(f.image_simplex(s) != stratum.tau for s in members):
            raise AssertionError(f"stratum {stratum} has no exact-image member")

    stratum_id = {(s.tau, s.component): i for i, s in enumerate(strata)}
    covers = []
    for sid, stratum in enumerate(strata):
        tau = stratum.tau
        if len(tau) > 1:
            rep = stratum_members[sid][0]
            for facet in itertools.combinations(tau, len(tau) - 1):
                lower = stratum_id[(facet, comp_of[facet][rep])]
                covers.append((lower, sid))
    poset = Poset(strata, covers)
    realization = poset.order_complex()
    return ReebComplex(f, tuple(strata), tuple(stratum_members), comp_of, poset, realization)


def fiber_components_at(f, tau):
    """Partition of S_tau = {sigma : tau inside f(sigma)} into components.

    Over any point in the open simplex tau these classes correspond one-to-one
    with the connected components of the fiber.
    """
    tau = canonical_simplex(tau)
    if tau not in f.codomain.simplex_set:
        raise UnknownSimplexError(f"{tau} is not a simplex of the codomain")
    tau_set = set(tau)
    members = [s for s in f.domain.simplices if tau_set.issubset(f.image_simplex(s))]
    return _partition_up_closed(members)


def verify_quotient(f):
    """Check the quotient structure of the Reeb space of f.

    Verifies that (a) projecting the quotient map to the codomain recovers the
    carrier image of f, (b) every point-fiber of the quotient map is connected
    and every realization simplex is hit, and (c) the quotient map covers all
    realization vertices.  Returns a report dict; nothing raises on failure.
    """
    space = reeb_space(f)
    q = space.quotient_map
    carrier = space.sd_carrier

    commutes = all(
        space.codomain_projection[q.vertex_images[i]] == f.image_simplex(carrier[i])
        for i in range(len(carrier))
    )

    second = reeb_space(q)
    per_tau = {}
    for stratum in second.strata:
        per_tau[stratum.tau] = per_tau.get(stratum.tau, 0) + 1
    fibers_connected = len(per_tau) == len(space.realization.simplex_set) and all(
        per_tau.get(s, 0) == 1 for s in space.realization.simplices
    )

    vertex_surjective = set(q.vertex_images) == set(range(space.realization.num_vertices))

    report = {
        "commutes": commutes,
        "fibers_connected": fibers_connected,
        "vertex_surjective": vertex_surjective,
    }
    report["ok"] = all(report.values())
    return report


def b1_inequality_check(f):
    """Check b1(Reeb realization) <= b1(domain), per connected component."""
    k = f.domain
    if not k.simplex_set:
        return {"components": [], "ok": True}
    rows = []
    for cls in connected_components(k, k.simplices):
        verts = sorted({v for s in cls for v in s})
        sub, _ = k.restrict_to_vertices(verts)
        restricted = SimplicialMap(
            sub, f.codomain, [f.vertex_images[v] for v in verts]
        )
        b1_domain = betti(sub)[1]
        b1_reeb = betti(reeb_space(restricted).realization)[1]
        rows.append(
            {
                "vertices": len(verts),
                "b1_domain": b1_domain,
                "b1_reeb": b1_reeb,
                "holds": b1_reeb <= b1_domain,
            }
        )
    return {"components": rows, "ok": all(r["holds"] for r in rows)}


@dataclass(frozen=True)
class ReebNode:
    """A Reeb graph node: one level-set component at one critical value."""

    id: int
    value: Fraction
    level: int
    component: int


@dataclass(frozen=True)
class ReebGraph:
    """The Reeb graph of a real-valued PL function, as a multigraph."""

    nodes: tuple
    edges: tuple
    vertex_to_node: dict

    def betti(self):
        uf = UnionFind(len(self.nodes))
        for a, b in self.edges:
            uf.union(a, b)
        b0 = len({uf.find(i) for i in range(len(self.nodes))})
        b1 = len(self.edges) - len(self.nodes) + b0
        return BettiVector((b0, b1))

    def node_values(self):
        return tuple(n.value for n in self.nodes)


def reeb_graph(g):
    """Exact Reeb graph of the PL extension of g, by a sweep over levels.

    Only the 2-skeleton matters: the level set of any simplex is convex and
    its edge graph lives in the simplex's 2-faces, so components of level and
    slab sets match those computed from simplices of dimension <= 2.  Each
    sorted vertex value contributes one node per level-set component; each gap
    between consecutive values contributes one edge per slab component, and a
    slab component lies inside a single level component at both ends, which
    fixes the attachments.
    """
    k2 = g.complex.skeleton(2)
    simps = k2.simplices
    lo = {}
    hi = {}
    for s in simps:
        vals = [g.values[v] for v in s]
        lo[s] = min(vals)
        hi[s] = max(vals)
    vertices = [s[0] for s in k2.by_dim().get(0, ())]
    levels = sorted({g.values[v] for v in vertices})

    nodes = []
    node_id = {}
    level_class = []
    for i, t in enumerate(levels):
        members = [s for s in simps if lo[s] <= t <= hi[s]]
        classes = _partition_up_closed(members)
        table = {}
        for ci, cls in enumerate(classes):
            node_id[(i, ci)] = len(nodes)
            nodes.append(ReebNode(len(nodes), t, i, ci))
            for s in cls:
                table[s] = ci
        level_class.append(table)

    edges = []
    for i in range(len(levels) - 1):
        lower_v, upper_v = levels[i], levels[i + 1]
        members = [s for s in simps if lo[s] <= lower_v and hi[s] >= upper_v]
        for cls in _partition_up_closed(members):
            rep = cls[0]
            a = node_id[(i, level_class[i][rep])]
            b = node_id[(i + 1, level_class[i + 1][rep])]
            edges.append((a, b) if a <= b else (b, a))
    edges.sort()

    level_of_value = {t: i for i, t in enumerate(levels)}
    vertex_to_node = {}
    for v in vertices:
        i = level_of_value[g.values[v]]
        vertex_to_node[v] = node_id[(i, level_class[i][(v,)])]
    return ReebGraph(tuple(nodes), tuple(edges), vertex_to_node)


@dataclass(frozen=True)
class LevelSliceModel:
    """A PL function re-expressed as a simplicial map onto a segment complex.

    The codomain path alternates value vertices and gap vertices for the open
    intervals between consecutive values; ``codomain_levels[i]`` describes
    vertex i as ("value", v) or ("gap", lo, hi).  The domain is the order
    complex of the level/slab cell decomposition of the original complex;
    ``cells[j]`` records the (original simplex, codomain vertex) pair behind
    domain vertex j.
    """

    map: SimplicialMap
    codomain_levels: tuple
    cells: tuple


def pl_as_simplicial_map(g):
    """Slice a PL function into an equivalent simplicial map (m=1 helper).

    The domain complex is subdivided along every level of a vertex value, so
    each new simplex maps into a single closed cell of the codomain path; the
    resulting map has the same Reeb space as g.
    """
    k = g.complex
    if not k.simplex_set:
        raise ValueError("cannot slice an empty complex")
    vertices = [s[0] for s in k.by_dim()[0]]
    levels = sorted({g.values[v] for v in vertices})
    n = len(levels)

    codomain_levels = []
    for i, t in enumerate(levels):
        codomain_levels.append(("value", t))
        if i + 1 < n:
            codomain_levels.append(("gap", t, levels[i + 1]))
    path_edges = [(j, j + 1) for j in range(2 * n - 2)]
    path = SimplicialComplex(
        2 * n - 1,
        [(j,) for j in range(2 * n - 1)] + path_edges,
    )

    # Cells (sigma, c): c = 2i is the slice of sigma at level i, c = 2i+1 the
    # slice over the open gap (levels[i], levels[i+1]).
    cells = []
    for s in k.simplices:
        vals = [g.values[v] for v in s]
        lo, hi = min(vals), max(vals)
        if lo == hi:
            cells.append((s, 2 * levels.index(lo)))
            continue
        for i, t in enumerate(levels):
            if lo < t < hi:
                cells.append((s, 2 * i))
        for i in range(n - 1):
            if levels[i] < hi and levels[i + 1] > lo:
                cells.append((s, 2 * i + 1))

    # Ids ascend along the face order: smaller simplex first, then value
    # cells before gap cells within the same simplex.
    cells.sort(key=lambda c: (simplex_key(c[0]), c[1] % 2, c[1]))
    cell_id = {c: i for i, c in enumerate(cells)}

    proper_cofaces = {}
    for s in k.simplices:
        for kk in range(1, len(s)):
            for face in itertools.combinations(s, kk):
                proper_cofaces.setdefault(face, []).append(s)

    ups = []
    for s, c in cells:
        bigger = []
        hosts = [s] + proper_cofaces.get(s, [])
        if c % 2 == 0:
            targets = (c, c - 1, c + 1)
        else:
            targets = (c,)
        for host in hosts:
            for c2 in targets:
                other = cell_id.get((host, c2))
                if other is not None and (host, c2) != (s, c):
                    bigger.append(other)
        ups.append(tuple(sorted(bigger)))

    chains = _enumerate_chains(len(cells), ups)
    sliced = SimplicialComplex(len(cells), chains, check=False)
    images = [c for (_, c) in cells]
    return LevelSliceModel(SimplicialMap(sliced, path, images), tuple(codomain_levels), tuple(cells))
