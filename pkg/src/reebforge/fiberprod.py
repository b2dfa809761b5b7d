"""Iterated fiber powers of simplicial maps and the descent-inequality check.

Two exact models of the (p+1)-fold fiber power W_p = X x_f ... x_f X are
implemented.

The nerve model covers W_p by the closed convex cells
P_(s0..sp) = {(x0..xp) in s0 x ... x sp : f(x0) = ... = f(xp)} over tuples of
maximal simplices; all intersections of cover cells are convex, so the nerve
is homotopy equivalent to W_p and its Betti numbers are exact.  The nerve is
enumerated face by face and therefore only fits small inputs: around any
domain vertex of maximal-simplex degree g the cover contains g**(p+1) cells
through the diagonal with a common point, giving the nerve a simplex on
g**(p+1) vertices and 2**(g**(p+1)) faces.

The cell model instead decomposes W_p itself: the tuples (r0..rp) of simplices
with one common exact image form a regular polytopal cell structure on W_p
(cell = fiber product of the closed simplices), its face poset is ordered
componentwise, and the order complex of that poset triangulates W_p.  The
poset is polynomial in the input, and free pairs are collapsed away before
the order complex is expanded.  Both engines agree wherever both run; the
small-instance test suite checks exactly that.
"""

from __future__ import annotations

import heapq
import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .complexes import SimplicialComplex, simplex_key
from .errors import BudgetExceededError
from .homology import BettiVector, betti, regular_cw_betti
from .reeb import reeb_space

DEFAULT_CELL_CAP = 200_000
CELL_CAP_ENV = "REEBFORGE_CELL_CAP"


def resolve_cell_cap(cell_cap=None):
    """Explicit cap, else the environment override, else the default."""
    if cell_cap is not None:
        return int(cell_cap)
    env = os.environ.get(CELL_CAP_ENV)
    if env:
        return int(env)
    return DEFAULT_CELL_CAP


@dataclass(frozen=True)
class NerveComplex:
    """Nerve of the closed convex cover of a fiber power.

    ``cover_index[i]`` is the (p+1)-tuple of maximal domain simplices behind
    nerve vertex i.
    """

    cover_index: tuple
    nerve: SimplicialComplex


def fiber_power_nerve(f, p, cell_cap=None):
    """Nerve of the maximal-simplex cover of the (p+1)-fold fiber power.

    A tuple of maximal simplices is a cover vertex iff the intersection of
    their images is nonempty; a set of tuples spans a nerve simplex iff all
    componentwise simplex intersections are nonempty and the images of those
    intersections share a codomain vertex.  Enumeration aborts with
    BudgetExceededError once the simplex count passes the cap.
    """
    if p < 0:
        raise ValueError("p must be >= 0")
    cap = resolve_cell_cap(cell_cap)
    maximal = f.domain.maximal_simplices
    by_cod_vertex = {}
    for s in maximal:
        for w in f.image_simplex(s):
            by_cod_vertex.setdefault(w, []).append(s)

    cover = set()
    for w in sorted(by_cod_vertex):
        group = by_cod_vertex[w]
        if len(group) ** (p + 1) + len(cover) > 4 * cap:
            raise BudgetExceededError(
                f"cover for codomain vertex {w} alone exceeds the cap of {cap}", cap=cap
            )
        cover.update(itertools.product(group, repeat=p + 1))
    cover = sorted(cover, key=lambda t: tuple(simplex_key(s) for s in t))
    if len(cover) > cap:
        raise BudgetExceededError(f"{len(cover)} cover cells exceed the cap of {cap}", cap=cap)

    images = {s: set(f.image_simplex(s)) for s in maximal}
    vertex_sets = [tuple(set(s) for s in tup) for tup in cover]

    simplices = []
    stack = []
    for i in reversed(range(len(cover))):
        stack.append(((i,), vertex_sets[i]))
    while stack:
        ids, rhos = stack.pop()
        simplices.append(ids)
        if len(simplices) > cap:
            raise BudgetExceededError(
                f"nerve enumeration passed the cap of {cap}", cap=cap
            )
        for j in range(ids[-1] + 1, len(cover)):
            other = vertex_sets[j]
            new_rhos = []
            for a, b in zip(rhos, other):
                c = a & b
                if not c:
                    break
                new_rhos.append(c)
            else:
                witness = None
                for rho in new_rhos:
                    img = {f.vertex_images[v] for v in rho}
                    witness = img if witness is None else witness & img
                    if not witness:
                        break
                if witness:
                    stack.append((ids + (j,), new_rhos))
    nerve = SimplicialComplex(len(cover), simplices, check=False)
    return NerveComplex(tuple(cover), nerve)


def _cell_poset(f, p, cap):
    """Cells of the fiber power with dimensions and facet (cover) relations.

    A cell is a tuple of simplices sharing one exact image tau; its polytope
    is the fiber product of the closed simplices, of dimension
    sum(dim rho_i) - p*dim(tau).  Its facets are (a) one component shrunk by
    a vertex whose image repeats inside it, and (b) for a codomain vertex t
    of tau covered exactly once in every component, all components shrunk by
    their vertex over t (the common image drops to tau minus t).  Returns
    (cells, dims, facets); ids are a linear extension of the face order.
    """
    groups = {}
    for s in f.domain.simplices:
        groups.setdefault(f.image_simplex(s), []).append(s)
    taus = sorted(groups, key=simplex_key)
    total = sum(len(groups[t]) ** (p + 1) for t in taus)
    if total > cap:
        raise BudgetExceededError(f"{total} fiber-power cells exceed the cap of {cap}", cap=cap)

    cells = []
    for tau in taus:
        for tup in itertools.product(groups[tau], repeat=p + 1):
            cells.append((tau, tup))
    cell_id = {c: i for i, c in enumerate(cells)}

    dims = []
    facets = []
    for tau, tup in cells:
        dims.append(sum(len(r) - 1 for r in tup) - p * (len(tau) - 1))
        found = []
        image_count = []
        for rho in tup:
            counts = {}
            for v in rho:
                w = f.vertex_images[v]
                counts[w] = counts.get(w, 0) + 1
            image_count.append(counts)
        for i, rho in enumerate(tup):
            if len(rho) == 1:
                continue
            counts = image_count[i]
            for j, v in enumerate(rho):
                if counts[f.vertex_images[v]] > 1:
                    shrunk = rho[:j] + rho[j + 1 :]
                    found.append(cell_id[(tau, tup[:i] + (shrunk,) + tup[i + 1 :])])
        if len(tau) > 1:
            for t in tau:
                if all(counts[t] == 1 for counts in image_count):
                    sub = tuple(x for x in tau if x != t)
                    trimmed = tuple(
                        tuple(v for v in rho if f.vertex_images[v] != t) for rho in tup
                    )
                    found.append(cell_id[(sub, trimmed)])
        facets.append(found)
    return cells, dims, facets


def _collapse_cell_poset(facets):
    """Greedy elementary collapse on a polytopal face poset.

    A cell is free exactly when it has a single covering cell and that cover
    is maximal; the pair is then removed.  The covering relation is all that
    is needed: any deeper coface would force a second cover by the diamond
    property.
    """
    n = len(facets)
    covers = [set() for _ in range(n)]
    for c, fs in enumerate(facets):
        for g in fs:
            covers[g].add(c)
    alive = [True] * n
    heap = [i for i in range(n) if len(covers[i]) == 1]
    heapq.heapify(heap)
    while heap:
        i = heapq.heappop(heap)
        if not alive[i] or len(covers[i]) != 1:
            continue
        (j,) = covers[i]
        if not alive[j] or covers[j]:
            continue
        alive[i] = alive[j] = False
        for gone in (i, j):
            for g in facets[gone]:
                if not alive[g]:
                    continue
                group = covers[g]
                group.discard(gone)
                if len(group) == 1:
                    heapq.heappush(heap, g)
                elif not group:
                    for h in facets[g]:
                        if alive[h] and len(covers[h]) == 1:
                            heapq.heappush(heap, h)
    return alive


def _fiber_power_cells_betti(f, p, cap):
    cells, dims, facets = _cell_poset(f, p, cap)
    if not cells:
        return BettiVector(())
    alive = _collapse_cell_poset(facets)
    ids = [i for i in range(len(cells)) if alive[i]]
    reindex = {i: k for k, i in enumerate(ids)}
    core_dims = [dims[i] for i in ids]
    core_facets = [[reindex[g] for g in facets[i]] for i in ids]
    return regular_cw_betti(core_dims, core_facets)


def fiber_power_betti(f, p, engine="auto", cell_cap=None):
    """Betti vector of the (p+1)-fold fiber power of f.

    ``engine`` is "nerve", "cells", or "auto".  Auto skips the nerve when the
    cover provably blows past the cap (any vertex of maximal-simplex degree g
    forces at least 2**(g**(p+1)) nerve faces) and falls back to the cell
    model whenever nerve enumeration overruns.
    """
    cap = resolve_cell_cap(cell_cap)
    if engine == "nerve":
        return betti(fiber_power_nerve(f, p, cap).nerve)
    if engine == "cells":
        return _fiber_power_cells_betti(f, p, cap)
    if engine != "auto":
        raise ValueError(f"unknown engine {engine!r}")

    degree = {}
    for s in f.domain.maximal_simplices:
        for v in s:
            degree[v] = degree.get(v, 0) + 1
    max_degree = max(degree.values(), default=0)
    if max_degree ** (p + 1) <= max(cap.bit_length(), 8):
        try:
            return betti(fiber_power_nerve(f, p, cap).nerve)
        except BudgetExceededError:
            pass
    return _fiber_power_cells_betti(f, p, cap)


def image_subcomplex(f):
    """The subcomplex of the codomain spanned by the image simplices."""
    return SimplicialComplex(
        f.codomain.num_vertices,
        {f.image_simplex(s) for s in f.domain.simplices},
    )


def descent_check(f, target="image", p_max=1, cell_cap=None, engine="auto", threads=1):
    """Verify b_p(target) <= sum_{i+j=p} b_i((j+1)-fold fiber power), p <= p_max.

    With target "image" the fiber powers are taken over f itself and the
    target is f's image subcomplex; with target "reeb" they are taken over
    the quotient map onto the Reeb realization.  The inequality is a theorem
    for these maps, so a failing row signals an implementation bug.
    """
    if p_max < 0:
        raise ValueError("p_max must be >= 0")
    cap = resolve_cell_cap(cell_cap)
    if target == "image":
        target_complex = image_subcomplex(f)
        power_map = f
    elif target == "reeb":
        space = reeb_space(f)
        target_complex = space.realization
        power_map = space.quotient_map
    else:
        raise ValueError(f"unknown target {target!r}")

    target_betti = betti(target_complex)

    def compute(j):
        return fiber_power_betti(power_map, j, engine=engine, cell_cap=cap)

    orders = list(range(p_max + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            powers = list(pool.map(compute, orders))
    else:
        powers = [compute(j) for j in orders]

    rows = []
    for p in range(p_max + 1):
        summands = [powers[j][p - j] for j in range(p + 1)]
        bound = sum(summands)
        rows.append(
            {
                "p": p,
                "betti_target": target_betti[p],
                "betti_powers": summands,
                "bound": bound,
                "inequality_holds": target_betti[p] <= bound,
            }
        )
    return {
        "target": target,
        "p_max": p_max,
        "betti_target": target_betti.as_list(),
        "power_betti": [bv.as_list() for bv in powers],
        "rows": rows,
        "ok": all(r["inequality_holds"] for r in rows),
    }
