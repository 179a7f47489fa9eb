"""Triangulated unpunctured surfaces and their gentle quivers.

A surface file lists arcs (internal arcs first, then boundary arcs,
ids 1..m) and oriented triangles as counterclockwise triples of arc
ids.  From the triangulation we read off:

* the adjacency quiver (one arrow per pair of internal arcs sharing a
  triangle, pointing from a side to its counterclockwise neighbor),
* the forbidden length-2 compositions (two consecutive sides of one
  fully internal triangle),
* the extended exchange matrix, rows indexed by all arcs,
* an integer skew matrix completing it to a compatible pair.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidSurface, NoCompatibleLambda
from .torus import CompatiblePair, check_compatible

__all__ = [
    "Arc",
    "Arrow",
    "Triangulation",
    "QuiverWithRelations",
    "ArcNeighborhood",
    "load_surface",
    "bundled_surface_names",
    "build_quiver",
    "check_gentle",
    "b_matrix",
    "neighborhood",
    "find_lambda",
    "pair_from_surface",
]

_ARROW_NAMES = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Arc:
    id: int
    kind: str  # "internal" | "boundary"


@dataclass(frozen=True)
class Arrow:
    """Quiver arrow source -> target living in one triangle."""

    name: str
    source: int
    target: int
    triangle: int  # index into Triangulation.triangles
    position: int  # 0, 1, 2: which ccw step of the triangle


class Triangulation:
    def __init__(self, arcs: list[Arc], triangles: list[tuple[int, int, int]],
                 lam: list[list[int]] | None = None, name: str = "") -> None:
        self.arcs = arcs
        self.triangles = [tuple(t) for t in triangles]
        self.lam = lam
        self.name = name
        self._validate()

    # -- basic queries ------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def n(self) -> int:
        return sum(1 for a in self.arcs if a.kind == "internal")

    def is_internal(self, arc: int) -> bool:
        return arc <= self.n

    def triangles_at(self, arc: int) -> list[int]:
        """Indices of triangles having ``arc`` as a side, in file order."""
        return [i for i, t in enumerate(self.triangles) if arc in t]

    def other_triangle_at(self, arc: int, not_this: int) -> int:
        tris = self.triangles_at(arc)
        others = [i for i in tris if i != not_this]
        if len(others) != 1:
            raise InvalidSurface(f"arc {arc} does not flank exactly one triangle besides {not_this}")
        return others[0]

    def ccw_flank(self, tri: int, arc: int) -> int:
        """The side following ``arc`` counterclockwise in triangle ``tri``."""
        t = self.triangles[tri]
        return t[(t.index(arc) + 1) % 3]

    def cw_flank(self, tri: int, arc: int) -> int:
        """The side preceding ``arc`` counterclockwise in triangle ``tri``."""
        t = self.triangles[tri]
        return t[(t.index(arc) + 2) % 3]

    def third_side(self, tri: int, x: int, y: int) -> int:
        t = self.triangles[tri]
        rest = [s for s in t if s not in (x, y)]
        if len(rest) != 1:
            raise InvalidSurface(f"triangle {tri} does not have distinct sides {x}, {y} plus one more")
        return rest[0]

    def shared_triangle(self, x: int, y: int) -> list[int]:
        return [i for i, t in enumerate(self.triangles) if x in t and y in t]

    # -- validation ---------------------------------------------------

    def _validate(self) -> None:
        ids = [a.id for a in self.arcs]
        if ids != list(range(1, len(ids) + 1)):
            raise InvalidSurface("arc ids must be 1..m in order")
        kinds = [a.kind for a in self.arcs]
        if any(k not in ("internal", "boundary") for k in kinds):
            raise InvalidSurface("arc kind must be 'internal' or 'boundary'")
        if kinds != sorted(kinds, key=lambda k: 0 if k == "internal" else 1):
            raise InvalidSurface("internal arcs must precede boundary arcs")
        if self.n == 0:
            raise InvalidSurface("no internal arcs")
        for i, t in enumerate(self.triangles):
            if len(t) != 3 or len(set(t)) != 3:
                raise InvalidSurface(f"triangle {i} must have three distinct sides, got {t}")
            for s in t:
                if not 1 <= s <= self.m:
                    raise InvalidSurface(f"triangle {i} uses unknown arc {s}")
        for a in self.arcs:
            count = len(self.triangles_at(a.id))
            want = 2 if a.kind == "internal" else 1
            if count != want:
                raise InvalidSurface(
                    f"arc {a.id} ({a.kind}) lies in {count} triangles, expected {want}"
                )


@dataclass(frozen=True)
class QuiverWithRelations:
    vertices: tuple  # internal arc ids
    arrows: tuple  # Arrow, only internal->internal
    relations: frozenset  # pairs (first arrow name, second arrow name)
    triangulation: Triangulation

    def arrows_from(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def arrows_between(self, src: int, tgt: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == src and a.target == tgt]

    def arrow_named(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"no arrow named {name!r}")


@dataclass(frozen=True)
class ArcNeighborhood:
    """The two triangles flanking an internal arc, with their flanks.

    ``(a1, a2)`` are the clockwise and counterclockwise flanks of the
    arc in the first triangle (surface file order), ``(a3, a4)`` in the
    second.
    """

    arc: int
    triangle1: int
    triangle2: int
    a1: int
    a2: int
    a3: int
    a4: int


def bundled_surface_names() -> list[str]:
    from importlib import resources

    names = []
    for entry in resources.files(__package__).joinpath("surfaces").iterdir():
        if entry.name.endswith(".json"):
            names.append(entry.name[:-5])
    return sorted(names)


def load_surface(source: str | Path | dict) -> Triangulation:
    """Load a surface from a JSON file, a bundled name, or a dict."""
    if isinstance(source, dict):
        data = source
        name = data.get("name", "")
    else:
        path = Path(source)
        if path.suffix == ".json" and path.exists():
            data = json.loads(path.read_text())
            name = data.get("name", path.stem)
        else:
            from importlib import resources

            ref = resources.files(__package__).joinpath(f"surfaces/{source}.json")
            try:
                data = json.loads(ref.read_text())
            except FileNotFoundError:
                raise InvalidSurface(
                    f"no such surface file or bundled name: {source!r} "
                    f"(bundled: {', '.join(bundled_surface_names())})"
                ) from None
            name = data.get("name", str(source))
    try:
        arcs = [Arc(int(a["id"]), str(a["kind"])) for a in data["arcs"]]
        triangles = [tuple(int(x) for x in t) for t in data["triangles"]]
    except (KeyError, TypeError) as exc:
        raise InvalidSurface(f"malformed surface data: {exc}") from exc
    lam = data.get("lambda")
    if lam is not None:
        lam = [[int(x) for x in row] for row in lam]
    return Triangulation(arcs, triangles, lam, name)


def build_quiver(t: Triangulation) -> QuiverWithRelations:
    """Adjacency quiver: each triangle's ccw cycle contributes arrows.

    A triangle (s0, s1, s2) carries the cyclic arrows s0->s1->s2->s0;
    only those with both endpoints internal survive as quiver arrows.
    Two consecutive surviving arrows of one triangle compose to zero,
    which happens exactly for fully internal triangles.
    """
    arrows: list[Arrow] = []
    for ti, tri in enumerate(t.triangles):
        for pos in range(3):
            src, tgt = tri[pos], tri[(pos + 1) % 3]
            if t.is_internal(src) and t.is_internal(tgt):
                name_idx = len(arrows)
                if name_idx < len(_ARROW_NAMES):
                    name = _ARROW_NAMES[name_idx]
                else:
                    name = f"a{name_idx}"
                arrows.append(Arrow(name, src, tgt, ti, pos))
    relations = set()
    for first in arrows:
        for second in arrows:
            if (
                first.triangle == second.triangle
                and first.target == second.source
                and first is not second
            ):
                relations.add((first.name, second.name))
    return QuiverWithRelations(
        vertices=tuple(a.id for a in t.arcs if a.kind == "internal"),
        arrows=tuple(arrows),
        relations=frozenset(relations),
        triangulation=t,
    )


def check_gentle(q: QuiverWithRelations) -> None:
    """Raise InvalidSurface unless (Q, I) satisfies the gentle conditions."""
    for v in q.vertices:
        if len(q.arrows_from(v)) > 2 or len(q.arrows_to(v)) > 2:
            raise InvalidSurface(f"vertex {v} has more than two arrows on one side")
    rel = q.relations
    for a in q.arrows:
        followers = [b for b in q.arrows if b.source == a.target]
        in_rel = [b for b in followers if (a.name, b.name) in rel]
        out_rel = [b for b in followers if (a.name, b.name) not in rel]
        if len(in_rel) > 1 or len(out_rel) > 1:
            raise InvalidSurface(f"arrow {a.name} violates the gentle composition conditions")
        preceders = [b for b in q.arrows if b.target == a.source]
        in_rel = [b for b in preceders if (b.name, a.name) in rel]
        out_rel = [b for b in preceders if (b.name, a.name) not in rel]
        if len(in_rel) > 1 or len(out_rel) > 1:
            raise InvalidSurface(f"arrow {a.name} violates the gentle composition conditions")


def b_matrix(t: Triangulation) -> list[list[int]]:
    """Extended exchange matrix, m rows by n columns.

    Entry (i, j) counts triangle-induced arrows j -> i minus arrows
    i -> j, over all triangles and all sides (boundary included); only
    columns of internal arcs are kept.
    """
    m, n = t.m, t.n
    b = [[0] * n for _ in range(m)]
    for tri in t.triangles:
        for pos in range(3):
            src, tgt = tri[pos], tri[(pos + 1) % 3]
            # arrow src -> tgt contributes +1 to b[tgt-1][src-1] (column src)
            # and -1 to b[src-1][tgt-1] (column tgt), where columns exist.
            if t.is_internal(src):
                b[tgt - 1][src - 1] += 1
            if t.is_internal(tgt):
                b[src - 1][tgt - 1] -= 1
    return b


def neighborhood(t: Triangulation, k: int) -> ArcNeighborhood:
    if not t.is_internal(k):
        raise InvalidSurface(f"arc {k} is not internal")
    tri1, tri2 = t.triangles_at(k)
    return ArcNeighborhood(
        arc=k,
        triangle1=tri1,
        triangle2=tri2,
        a1=t.cw_flank(tri1, k),
        a2=t.ccw_flank(tri1, k),
        a3=t.cw_flank(tri2, k),
        a4=t.ccw_flank(tri2, k),
    )


# -- integer linear algebra for find_lambda ---------------------------


def _solve_integer_system(a_cols: list[list[int]], rhs: list[int]) -> tuple[list[int], list[list[int]]] | None:
    """Solve A x = rhs over the integers.

    ``a_cols`` holds the columns of A.  Returns (particular solution,
    nullspace basis) or None when no integer solution exists.  Works by
    column reduction to echelon form with a tracked unimodular
    transform.
    """
    ncols = len(a_cols)
    nrows = len(rhs)
    work = [list(col) for col in a_cols]
    transform = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_sub(dst: int, src: int, factor: int) -> None:
        if factor:
            work[dst] = [a - factor * b for a, b in zip(work[dst], work[src])]
            transform[dst] = [a - factor * b for a, b in zip(transform[dst], transform[src])]

    lead = 0
    pivots: list[tuple[int, int]] = []  # (row, column) pairs
    for row in range(nrows):
        live = [j for j in range(lead, ncols) if work[j][row] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda j: (abs(work[j][row]), j))
            piv = live[0]
            for j in live[1:]:
                col_sub(j, piv, work[j][row] // work[piv][row])
            live = [j for j in live if work[j][row] != 0]
        piv = live[0]
        if piv != lead:
            work[piv], work[lead] = work[lead], work[piv]
            transform[piv], transform[lead] = transform[lead], transform[piv]
        pivots.append((row, lead))
        lead += 1
        if lead == ncols:
            break

    y = [0] * ncols
    for row, col in pivots:
        residual = rhs[row] - sum(work[j][row] * y[j] for j in range(col))
        pivot_val = work[col][row]
        if residual % pivot_val != 0:
            return None
        y[col] = residual // pivot_val
    x = [sum(transform[j][i] * y[j] for j in range(ncols)) for i in range(ncols)]
    for row in range(nrows):
        if sum(a_cols[j][row] * x[j] for j in range(ncols)) != rhs[row]:
            return None
    # Columns past the pivots map to zero; their transform columns span the kernel.
    kernel = [list(transform[j]) for j in range(lead, ncols)]
    return x, kernel


def _size_reduce(x: list[int], kernel: list[list[int]]) -> list[int]:
    """Greedy lattice reduction of x modulo the kernel, minimizing norm."""
    x = list(x)
    for _ in range(200):
        changed = False
        for v in kernel:
            vv = sum(a * a for a in v)
            if vv == 0:
                continue
            num = sum(a * b for a, b in zip(x, v))
            t = (2 * num + vv) // (2 * vv)
            if t:
                x = [a - t * b for a, b in zip(x, v)]
                changed = True
        if not changed:
            break
    return x


def find_lambda(b_tilde: list[list[int]], *, bound: int = 8, d_max: int = 8) -> list[list[int]]:
    """Integer skew Lambda with Lambda . b_tilde = -[d I; 0], smallest uniform d.

    Searches d = 1, 2, ..., d_max; for each d solves the linear system
    exactly and size-reduces against its solution lattice.  Accepts the
    first d whose reduced solution stays within ``bound``; raises
    :class:`NoCompatibleLambda` otherwise.
    """
    m = len(b_tilde)
    n = len(b_tilde[0]) if m else 0
    if n == 0:
        raise NoCompatibleLambda("empty exchange matrix")
    positions = [(i, j) for i in range(m) for j in range(i + 1, m)]
    index = {p: k for k, p in enumerate(positions)}

    a_cols: list[list[int]] = [[0] * (m * n) for _ in positions]
    for i in range(m):
        for col_j in range(n):
            row = i * n + col_j
            for l in range(m):
                if l == i:
                    continue
                coeff = b_tilde[l][col_j]
                if coeff == 0:
                    continue
                if i < l:
                    a_cols[index[(i, l)]][row] += coeff
                else:
                    a_cols[index[(l, i)]][row] -= coeff

    for d in range(1, d_max + 1):
        rhs = [0] * (m * n)
        for j in range(n):
            rhs[j * n + j] = -d
        solved = _solve_integer_system(a_cols, rhs)
        if solved is None:
            continue
        x, kernel = solved
        x = _size_reduce(x, kernel)
        if max((abs(v) for v in x), default=0) > bound:
            continue
        lam = [[0] * m for _ in range(m)]
        for (i, j), k in index.items():
            lam[i][j] = x[k]
            lam[j][i] = -x[k]
        check_compatible(b_tilde, lam)
        return lam
    raise NoCompatibleLambda(
        f"no integer skew lambda with uniform d <= {d_max} and entries within {bound}"
    )


def pair_from_surface(t: Triangulation, *, bound: int = 8, d_max: int = 8) -> CompatiblePair:
    """Compatible pair for a surface: file-supplied lambda or a found one."""
    b = b_matrix(t)
    lam = t.lam if t.lam is not None else find_lambda(b, bound=bound, d_max=d_max)
    return CompatiblePair.create(b, lam)
