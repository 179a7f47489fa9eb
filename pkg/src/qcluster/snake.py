"""Snake graphs of strings: tiles, labels, matchings, twists.

Each position of a string word contributes one unit-square tile whose
diagonal is the crossed arc; the tile's four sides carry the flanking
arcs of the two triangles meeting that arc.  Consecutive tiles are
glued right or up along the edge labeled by the third side of the
triangle shared by the two crossings.

Conventions (fixed once, checked by the test suite):

* The step after tile j goes right when letter j is direct and the
  previous step went right, alternating whenever two consecutive
  letters point the same way.  Equivalently: the first step is right
  iff letter 1 is direct, and step j repeats step j-1 iff letters j-1
  and j have opposite directions.
* Odd tiles put counterclockwise flanks on the south and north sides,
  even tiles on east and west (even tiles are drawn mirrored).
* Within each side pair the exit triangle's flank takes the south/east
  slot and the entry triangle's flank the north/west slot, except where
  a gluing pins a flank to the shared side.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BijectionViolation, CannotTwist, InvalidSurface, NotCrossingSequence
from .strings import StringWord, enumerate_canonical_submodules, is_canonical_submodule
from .surface import Triangulation

__all__ = [
    "Tile",
    "SnakeGraph",
    "snake_shape",
    "label_snake",
    "enumerate_matchings",
    "minimal_matching",
    "maximal_matching",
    "can_twist",
    "twist",
    "enclosed_tiles",
    "matching_to_submodule",
    "submodule_to_matching",
]

_SIDES = ("S", "E", "N", "W")
_OPPOSITE_PAIRS = (frozenset(("S", "N")), frozenset(("E", "W")))


def snake_shape(w: StringWord) -> tuple:
    """Sequence of steps "R"/"U" between consecutive tiles."""
    steps = []
    for p, letter in enumerate(w.letters):
        if p == 0:
            steps.append("R" if letter.direct else "U")
        elif letter.direct == w.letters[p - 1].direct:
            steps.append("U" if steps[-1] == "R" else "R")
        else:
            steps.append(steps[-1])
    return tuple(steps)


@dataclass(frozen=True)
class Tile:
    index: int  # 1-based
    diagonal: int
    x: int
    y: int
    tri_in: int
    tri_out: int
    labels: dict  # side -> arc id
    flank_class: dict  # side -> "ccw" | "cw"
    in_glue_side: str | None
    out_glue_side: str | None


class SnakeGraph:
    def __init__(self, word: StringWord, t: Triangulation, shape: tuple, tiles: list) -> None:
        self.word = word
        self.triangulation = t
        self.shape = shape
        self.tiles = tiles
        self._matchings: list | None = None
        self._minimal: frozenset | None = None

    @property
    def d(self) -> int:
        return len(self.tiles)

    def tile(self, j: int) -> Tile:
        return self.tiles[j - 1]

    # -- edges ---------------------------------------------------------

    def edge_id(self, j: int, side: str):
        """Canonical id of tile j's edge on the given side.

        Glue edges are named after the lower-indexed tile.
        """
        if j > 1:
            prev = self.shape[j - 2]
            if (prev == "R" and side == "W") or (prev == "U" and side == "S"):
                return self.edge_id(j - 1, "E" if prev == "R" else "N")
        return (j, side)

    def tile_edges(self, j: int) -> list:
        return [(self.edge_id(j, s), s) for s in _SIDES]

    def all_edges(self) -> list:
        seen = set()
        for j in range(1, self.d + 1):
            for e, _ in self.tile_edges(j):
                seen.add(e)
        return sorted(seen)

    def edge_label(self, e) -> int:
        j, side = e
        return self.tile(j).labels[side]

    def glue_label(self, j: int) -> int:
        """Label of the edge shared by tiles j and j+1."""
        side = "E" if self.shape[j - 1] == "R" else "N"
        return self.tile(j).labels[side]

    def is_glue(self, e) -> bool:
        j, side = e
        if j >= self.d:
            return False
        return side == ("E" if self.shape[j - 1] == "R" else "N")

    def edge_endpoints(self, e) -> tuple:
        j, side = e
        t = self.tile(j)
        x, y = t.x, t.y
        if side == "S":
            return ((x, y), (x + 1, y))
        if side == "N":
            return ((x, y + 1), (x + 1, y + 1))
        if side == "W":
            return ((x, y), (x, y + 1))
        return ((x + 1, y), (x + 1, y + 1))

    def is_vertical(self, e) -> bool:
        return e[1] in ("E", "W")

    def vertices(self) -> list:
        pts = set()
        for e in self.all_edges():
            a, b = self.edge_endpoints(e)
            pts.add(a)
            pts.add(b)
        return sorted(pts)

    def side_in_tile(self, e, j: int) -> str:
        """The side that edge e occupies within tile j."""
        for eid, side in self.tile_edges(j):
            if eid == e:
                return side
        raise KeyError(f"edge {e} not on tile {j}")

    def tiles_of_edge(self, e) -> list:
        out = []
        for j in range(1, self.d + 1):
            if any(eid == e for eid, _ in self.tile_edges(j)):
                out.append(j)
        return out

    def ccw_pair(self, j: int) -> frozenset:
        t = self.tile(j)
        return frozenset(
            self.edge_id(j, s) for s in _SIDES if t.flank_class[s] == "ccw"
        )

    def cw_pair(self, j: int) -> frozenset:
        t = self.tile(j)
        return frozenset(
            self.edge_id(j, s) for s in _SIDES if t.flank_class[s] == "cw"
        )


def _entry_exit_triangles(w: StringWord, t: Triangulation, j: int) -> tuple:
    """(entry triangle, exit triangle) indices for tile j."""
    d = w.d
    if d == 1:
        tri1, tri2 = t.triangles_at(w.vertices[0])
        return tri1, tri2
    if j == 1:
        out = w.letters[0].arrow.triangle
        return t.other_triangle_at(w.vertices[0], out), out
    if j == d:
        inn = w.letters[d - 2].arrow.triangle
        return inn, t.other_triangle_at(w.vertices[d - 1], inn)
    return w.letters[j - 2].arrow.triangle, w.letters[j - 1].arrow.triangle


def label_snake(w: StringWord, t: Triangulation) -> SnakeGraph:
    """Build the labeled snake graph of a string's crossing sequence."""
    for p, letter in enumerate(w.letters, start=1):
        tri = t.triangles[letter.arrow.triangle]
        if w.vertices[p - 1] not in tri or w.vertices[p] not in tri:
            raise NotCrossingSequence(
                f"letter {p} lives in triangle {tri}, which misses "
                f"{w.vertices[p - 1]} or {w.vertices[p]}"
            )
    for p in range(len(w.letters) - 1):
        if w.letters[p].arrow.triangle == w.letters[p + 1].arrow.triangle:
            raise NotCrossingSequence(
                f"letters {p + 1} and {p + 2} cross inside one triangle"
            )
    for v in w.vertices:
        if not t.is_internal(v):
            raise NotCrossingSequence(f"crossed arc {v} is not internal")

    shape = snake_shape(w)
    tiles = []
    x = y = 0
    for j in range(1, w.d + 1):
        diag = w.vertices[j - 1]
        tri_in, tri_out = _entry_exit_triangles(w, t, j)
        alpha = t.ccw_flank(tri_in, diag)
        beta = t.cw_flank(tri_in, diag)
        gamma = t.ccw_flank(tri_out, diag)
        delta = t.cw_flank(tri_out, diag)

        odd = j % 2 == 1
        slot_pair = {
            "ccw": ("S", "N") if odd else ("E", "W"),
            "cw": ("E", "W") if odd else ("S", "N"),
        }
        # preferred slots: exit flanks toward S/E, entry flanks toward N/W
        preferred = {}
        for cls in ("ccw", "cw"):
            a_slot, b_slot = slot_pair[cls]
            south_east = a_slot if a_slot in ("S", "E") else b_slot
            north_west = b_slot if south_east == a_slot else a_slot
            preferred[cls] = (south_east, north_west)

        flanks = [
            ("in", "ccw", alpha),
            ("in", "cw", beta),
            ("out", "ccw", gamma),
            ("out", "cw", delta),
        ]
        placement: dict = {}
        placed: set = set()

        def place(which_flank, slot, j=j):
            origin, cls, label = which_flank
            if slot not in slot_pair[cls]:
                raise InvalidSurface(
                    f"tile {j}: {cls} flank {label} forced onto slot {slot}; "
                    "the triangulation is not coherently oriented"
                )
            if slot in placement:
                raise InvalidSurface(f"tile {j}: slot {slot} assigned twice")
            placement[slot] = (label, cls)
            placed.add(id(which_flank))

        in_glue_side = out_glue_side = None
        if j > 1:
            want = "W" if shape[j - 2] == "R" else "S"
            in_glue_side = want
            prev_diag = w.vertices[j - 2]
            flank = flanks[0] if alpha != prev_diag else flanks[1]
            if flank[2] == prev_diag:
                raise NotCrossingSequence(
                    f"tile {j}: both entry flanks equal the previous arc {prev_diag}"
                )
            place(flank, want)
        if j < w.d:
            want = "E" if shape[j - 1] == "R" else "N"
            out_glue_side = want
            next_diag = w.vertices[j]
            flank = flanks[2] if gamma != next_diag else flanks[3]
            place(flank, want)

        for which_flank in flanks:
            if id(which_flank) in placed:
                continue
            origin, cls, label = which_flank
            south_east, north_west = preferred[cls]
            slot = south_east if origin == "out" else north_west
            if slot in placement:
                slot = north_west if slot == south_east else south_east
            place(which_flank, slot)

        labels = {s: placement[s][0] for s in _SIDES}
        classes = {s: placement[s][1] for s in _SIDES}
        tiles.append(
            Tile(
                index=j,
                diagonal=diag,
                x=x,
                y=y,
                tri_in=tri_in,
                tri_out=tri_out,
                labels=labels,
                flank_class=classes,
                in_glue_side=in_glue_side,
                out_glue_side=out_glue_side,
            )
        )
        if j < w.d:
            if shape[j - 1] == "R":
                x += 1
            else:
                y += 1
    g = SnakeGraph(w, t, shape, tiles)
    _check_glue_coherence(g)
    return g


def _check_glue_coherence(g: SnakeGraph) -> None:
    for j in range(1, g.d):
        upper = "E" if g.shape[j - 1] == "R" else "N"
        lower = "W" if g.shape[j - 1] == "R" else "S"
        shared = g.triangulation.third_side(
            g.tile(j).tri_out, g.tile(j).diagonal, g.tile(j + 1).diagonal
        )
        if g.tile(j).labels[upper] != shared or g.tile(j + 1).labels[lower] != shared:
            raise InvalidSurface(
                f"glue edge between tiles {j} and {j + 1} mislabeled"
            )


# -- matchings ---------------------------------------------------------


def enumerate_matchings(g: SnakeGraph) -> list:
    """All perfect matchings, deterministically ordered.

    Backtracking along the snake: repeatedly match the smallest
    uncovered corner.  Sizes here are tiny (Fibonacci-bounded in the
    tile count).
    """
    if g._matchings is not None:
        return g._matchings
    edges = g.all_edges()
    incident: dict = {}
    for e in edges:
        for p in g.edge_endpoints(e):
            incident.setdefault(p, []).append(e)
    points = sorted(incident)
    results = []

    def grow(covered: set, chosen: tuple):
        uncovered = [p for p in points if p not in covered]
        if not uncovered:
            results.append(frozenset(chosen))
            return
        p = uncovered[0]
        for e in incident[p]:
            a, b = g.edge_endpoints(e)
            if a in covered or b in covered:
                continue
            grow(covered | {a, b}, chosen + (e,))

    grow(set(), ())
    g._matchings = sorted(results, key=lambda m: tuple(sorted(m)))
    return g._matchings


def _boundary_matchings(g: SnakeGraph) -> list:
    out = [m for m in enumerate_matchings(g) if not any(g.is_glue(e) for e in m)]
    if len(out) != 2:
        raise BijectionViolation(
            f"expected exactly two glue-free matchings, found {len(out)}"
        )
    return out


def _class_uniform(g: SnakeGraph, m: frozenset, cls: str) -> bool:
    return all(
        g.tile(j).flank_class[g.side_in_tile(e, j)] == cls
        for e in m
        for j in g.tiles_of_edge(e)
    )


def minimal_matching(g: SnakeGraph) -> frozenset:
    """The glue-free matching made of clockwise-flank edges only."""
    if g._minimal is not None:
        return g._minimal
    low = [m for m in _boundary_matchings(g) if _class_uniform(g, m, "cw")]
    if len(low) != 1:
        raise BijectionViolation("could not single out the minimal matching")
    g._minimal = low[0]
    return low[0]


def maximal_matching(g: SnakeGraph) -> frozenset:
    """The glue-free matching made of counterclockwise-flank edges only."""
    high = [m for m in _boundary_matchings(g) if _class_uniform(g, m, "ccw")]
    if len(high) != 1:
        raise BijectionViolation("could not single out the maximal matching")
    return high[0]


def _tile_sides_in(g: SnakeGraph, P: frozenset, j: int) -> frozenset:
    return frozenset(side for eid, side in g.tile_edges(j) if eid in P)


def can_twist(g: SnakeGraph, P: frozenset, j: int) -> bool:
    return _tile_sides_in(g, P, j) in _OPPOSITE_PAIRS


def twist(g: SnakeGraph, P: frozenset, j: int) -> frozenset:
    """Flip the matching on tile j between its two opposite side pairs."""
    sides = _tile_sides_in(g, P, j)
    if sides not in _OPPOSITE_PAIRS:
        raise CannotTwist(f"matching meets tile {j} in sides {sorted(sides)}")
    other = _OPPOSITE_PAIRS[1] if sides == _OPPOSITE_PAIRS[0] else _OPPOSITE_PAIRS[0]
    removed = {g.edge_id(j, s) for s in sides}
    added = {g.edge_id(j, s) for s in other}
    return frozenset((set(P) - removed) | added)


def enclosed_tiles(g: SnakeGraph, P: frozenset) -> frozenset:
    """Tiles inside the symmetric difference of P with the minimal matching.

    A tile is enclosed when a leftward ray from it crosses the
    difference cycle an odd number of times.
    """
    diff = P ^ minimal_matching(g)
    verticals = [
        (g.edge_endpoints(e)[0][0], g.edge_endpoints(e)[0][1])
        for e in diff
        if g.is_vertical(e)
    ]
    out = set()
    for tile in g.tiles:
        crossings = sum(
            1 for (xe, ye) in verticals if ye == tile.y and xe <= tile.x
        )
        if crossings % 2 == 1:
            out.add(tile.index)
    return frozenset(out)


def matching_to_submodule(g: SnakeGraph, P: frozenset) -> frozenset:
    indices = enclosed_tiles(g, P)
    if not is_canonical_submodule(g.word, indices):
        raise BijectionViolation(
            f"enclosed tiles {sorted(indices)} are not a submodule index set"
        )
    return indices


def submodule_to_matching(g: SnakeGraph, indices: frozenset) -> frozenset:
    """Inverse of matching_to_submodule, by exhaustion over matchings."""
    indices = frozenset(indices)
    hits = [
        P for P in enumerate_matchings(g) if enclosed_tiles(g, P) == indices
    ]
    if len(hits) != 1:
        raise BijectionViolation(
            f"index set {sorted(indices)} matched {len(hits)} matchings"
        )
    return hits[0]


def check_bijection(g: SnakeGraph) -> dict:
    """Verify matchings <-> canonical index sets; return the dictionary."""
    matchings = enumerate_matchings(g)
    submods = enumerate_canonical_submodules(g.word)
    if len(matchings) != len(set(matchings)):
        raise BijectionViolation("duplicate matchings")
    image = {}
    for P in matchings:
        image[P] = matching_to_submodule(g, P)
    if len(set(image.values())) != len(matchings):
        raise BijectionViolation("matching-to-submodule map is not injective")
    targets = {s.indices for s in submods}
    if set(image.values()) != targets:
        raise BijectionViolation(
            f"image has {len(set(image.values()))} sets, "
            f"submodule count is {len(targets)}"
        )
    return image
