"""Deterministic generators for test maps and seeded random instances."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .complexes import (
    PLFunction,
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    staircase_product,
    validate_complex,
)
from .errors import InvalidParamsError, UnsupportedDimensionError
from .reeb import pl_as_simplicial_map


def path_complex(n):
    """A path on n vertices."""
    simplices = [(i,) for i in range(n)] + [(i, i + 1) for i in range(n - 1)]
    return SimplicialComplex(n, simplices)


def circle(n=3):
    """An n-gon circle."""
    if n < 3:
        raise InvalidParamsError("a circle needs at least 3 vertices")
    simplices = [(i,) for i in range(n)] + [
        tuple(sorted((i, (i + 1) % n))) for i in range(n)
    ]
    return SimplicialComplex(n, simplices)


def full_simplex(dim):
    """The full simplex on dim+1 vertices, with all faces."""
    return validate_complex(dim + 1, [tuple(range(dim + 1))], close_faces=True)


def boundary_delta3():
    """The boundary of the tetrahedron: a triangulated 2-sphere."""
    faces = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    return validate_complex(4, faces, close_faces=True)


def minimal_torus():
    """The 7-vertex torus triangulation (every vertex pair is an edge)."""
    faces = []
    for i in range(7):
        faces.append(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        faces.append(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return validate_complex(7, faces, close_faces=True)


def grid_torus(m, n):
    """Torus as an m x n periodic grid with consistent diagonals."""
    if m < 3 or n < 3:
        raise InvalidParamsError("grid torus needs m, n >= 3")

    def v(i, j):
        return (i % m) * n + (j % n)

    faces = []
    for i in range(m):
        for j in range(n):
            faces.append(tuple(sorted((v(i, j), v(i + 1, j), v(i, j + 1)))))
            faces.append(tuple(sorted((v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)))))
    return validate_complex(m * n, faces, close_faces=True)


def disk_collapse(n):
    """The disk-to-sphere boundary collapse, as an explicit simplicial map.

    n=1: a 4-vertex path wrapped once around the triangle circle, both
    endpoints landing on the same vertex.  n=2: the domain is the barycentric
    subdivision of the tetrahedral sphere with the open star of one original
    vertex w removed (a triangulated disk bounded by the hexagonal link of
    w); each barycenter goes to w when its carrier simplex contains w and to
    the least carrier vertex otherwise, so the whole boundary hexagon lands
    on w and the map realizes the quotient collapsing the disk boundary.
    """
    if n == 1:
        path = path_complex(4)
        return SimplicialMap(path, circle(3), [0, 1, 2, 0])
    if n == 2:
        sphere = boundary_delta3()
        w = 3
        sd, carrier = barycentric_subdivision(sphere)
        keep = [i for i, s in enumerate(carrier) if s != (w,)]
        disk, _ = sd.restrict_to_vertices(keep)
        kept_carrier = [carrier[i] for i in keep]
        images = [w if w in s else s[0] for s in kept_carrier]
        return SimplicialMap(disk, sphere, images)
    raise UnsupportedDimensionError(f"disk_collapse supports n in {{1, 2}}, got {n}")


def product_power(f, k):
    """The k-fold staircase product map f x ... x f."""
    if k < 1:
        raise InvalidParamsError("k must be >= 1")
    result = f
    for _ in range(k - 1):
        result = staircase_product(result.domain, f.domain, result, f).product_map
    return result


def torus_height():
    """A vertically standing grid torus with an exact height function.

    Returns (height, sliced_map): the PL height and its simplicial-map form
    onto the subdivided segment of its sorted values.  The height traces
    z = (R + r cos phi) sin theta on an 8 x 3 grid with a tiny symmetry-
    breaking perturbation, so all vertex values are distinct and the sweep
    sees the classic one-loop Reeb graph.
    """
    m, n = 8, 3
    torus = grid_torus(m, n)
    swing = [0, 3, 4, 3, 0, -3, -4, -3]
    tube = [2, -1, -1]
    values = []
    for i in range(m):
        for j in range(n):
            values.append(Fraction((8 + tube[j]) * swing[i] * 1000 + (i * n + j)))
    assert len(set(values)) == m * n
    height = PLFunction(torus, values)
    return height, pl_as_simplicial_map(height).map


_CODOMAINS = {
    "point": lambda: SimplicialComplex(1, [(0,)]),
    "segment": lambda: path_complex(2),
    "circle": lambda: circle(3),
    "triangle": lambda: full_simplex(2),
    "sphere": lambda: boundary_delta3(),
}


def random_map(seed, size=12):
    """Reproducible random connected 2-complex with a simplicial map.

    The domain is grown as a walk on the codomain (so the vertex images make
    every backbone edge simplicial and the domain connected), then decorated
    with image-compatible chords and triangles.
    """
    if size < 6 or size > 64:
        raise InvalidParamsError("size must be between 6 and 64")
    rng = random.Random(int(seed))
    codomain = _CODOMAINS[rng.choice(sorted(_CODOMAINS))]()
    n = rng.randint(6, size)

    cod_vertices = [s[0] for s in codomain.by_dim()[0]]
    images = [rng.choice(cod_vertices)]
    for _ in range(1, n):
        here = images[-1]
        nbrs = [here] + [
            u for u in cod_vertices if u != here and tuple(sorted((here, u))) in codomain.simplex_set
        ]
        images.append(rng.choice(sorted(nbrs)))

    simplices = set((i,) for i in range(n))
    simplices.update((i - 1, i) for i in range(1, n))

    def image_of(ids):
        return tuple(sorted({images[i] for i in ids}))

    # Keep the total simplex count small enough that third fiber powers of a
    # constant map stay under the default cell cap (count**3 cells).
    budget = 40
    for _ in range(n):
        if len(simplices) >= budget:
            break
        i, j = sorted(rng.sample(range(n), 2))
        if image_of((i, j)) in codomain.simplex_set:
            simplices.add((i, j))
    for _ in range(2 * n):
        if len(simplices) + 4 > budget:
            break
        i, j, k = sorted(rng.sample(range(n), 3))
        if image_of((i, j, k)) in codomain.simplex_set:
            simplices.add((i, j, k))
            simplices.update(((i, j), (i, k), (j, k)))
    domain = validate_complex(n, simplices, close_faces=True)
    return SimplicialMap(domain, codomain, images)


def random_function(seed, size=12):
    """Reproducible random 2-complex with distinct integer vertex values."""
    rng = random.Random(int(seed) ^ 0x5EED)
    domain = random_map(seed, size=size).domain
    values = list(range(domain.num_vertices))
    rng.shuffle(values)
    return PLFunction(domain, [Fraction(v) for v in values])


@dataclass(frozen=True)
class FixtureSpec:
    """A named fixture with integer parameters."""

    name: str
    parameters: dict = field(default_factory=dict)


FIXTURE_PARAMS = {
    "disk_collapse": {"n": (1, 2)},
    "product_power": {"n": (1, 2), "k": (1, 4)},
    "torus_height": {},
    "random_map": {"seed": (0, 2**32), "size": (6, 64)},
}

# Staircase powers of the 2-disk collapse grow by a factor of ~300 per k;
# k >= 3 is only reasonable over the 1-dimensional base.
MAX_PRODUCT_K = {1: 4, 2: 2}


def build_fixture(spec):
    """Build the artifacts of a fixture spec.

    Returns a dict with a "map" entry and, for function-backed fixtures, a
    "function" entry as well.
    """
    if spec.name not in FIXTURE_PARAMS:
        raise InvalidParamsError(f"unknown fixture {spec.name!r}")
    allowed = FIXTURE_PARAMS[spec.name]
    for key, value in spec.parameters.items():
        if key not in allowed:
            raise InvalidParamsError(f"fixture {spec.name!r} has no parameter {key!r}")
        lo, hi = allowed[key]
        if not (lo <= value <= hi):
            raise InvalidParamsError(f"{key}={value} outside {lo}..{hi} for {spec.name!r}")
    params = dict(spec.parameters)
    if spec.name == "disk_collapse":
        return {"map": disk_collapse(params.get("n", 2))}
    if spec.name == "product_power":
        n = params.get("n", 2)
        k = params.get("k", 2)
        if k > MAX_PRODUCT_K[n]:
            raise InvalidParamsError(f"k={k} too large for the n={n} base (max {MAX_PRODUCT_K[n]})")
        return {"map": product_power(disk_collapse(n), k)}
    if spec.name == "torus_height":
        height, sliced = torus_height()
        return {"function": height, "map": sliced}
    if spec.name == "random_map":
        return {"map": random_map(params.get("seed", 0), size=params.get("size", 12))}
    raise AssertionError("unreachable")
