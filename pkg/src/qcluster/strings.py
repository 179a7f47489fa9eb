"""Strings over a gentle quiver and their canonical submodules.

A string word is a sequence of vertices v_1 .. v_d joined by letters;
the letter at position p is a quiver arrow traversed forwards (a
"direct" letter, arrow v_p -> v_{p+1}) or backwards (an "inverse"
letter, arrow v_{p+1} -> v_p).  Words are valid when consecutive
letters compose, nothing cancels, and no forbidden composition appears
in the word or its reverse.

The string module M(w) has one basis vector per position; an index set
N is a submodule basis exactly when every maximal run [i, j] of N has a
direct letter entering it on the left (or i = 1) and an inverse letter
leaving it on the right (or j = d).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    AmbiguousConnector,
    InvalidString,
    NotComposable,
    NotReduced,
    RelationViolated,
)
from .surface import Arrow, QuiverWithRelations

__all__ = [
    "Letter",
    "StringWord",
    "CanonicalSubmodule",
    "SmoothingFactor",
    "Extension",
    "trivial_word",
    "validate_string",
    "interval_decomposition",
    "is_canonical_submodule",
    "enumerate_canonical_submodules",
    "dimension_vector",
    "truncations",
    "arrow_extensions",
    "overlap_extensions",
    "all_extensions",
    "enumerate_strings",
]


@dataclass(frozen=True)
class Letter:
    arrow: Arrow
    direct: bool

    def inverse(self) -> "Letter":
        return Letter(self.arrow, not self.direct)

    def endpoints(self) -> tuple:
        """(from, to) as traversed in the word."""
        if self.direct:
            return (self.arrow.source, self.arrow.target)
        return (self.arrow.target, self.arrow.source)

    def __str__(self) -> str:
        return f">{self.arrow.name}>" if self.direct else f"<{self.arrow.name}<"


@dataclass(frozen=True)
class StringWord:
    vertices: tuple
    letters: tuple = ()

    def __post_init__(self):
        if len(self.vertices) == 0:
            raise InvalidString("a string word needs at least one vertex")
        if len(self.letters) != len(self.vertices) - 1:
            raise InvalidString("letter count must be vertex count minus one")

    @property
    def d(self) -> int:
        return len(self.vertices)

    @property
    def is_trivial(self) -> bool:
        return len(self.letters) == 0

    def inverse(self) -> "StringWord":
        return StringWord(
            tuple(reversed(self.vertices)),
            tuple(l.inverse() for l in reversed(self.letters)),
        )

    def canonical(self) -> "StringWord":
        """Representative among {w, w^{-1}}: the lexicographically smaller."""
        other = self.inverse()
        return min(self, other, key=_word_sort_key)

    def sub(self, start: int, stop: int) -> "StringWord":
        """Subword on vertex positions start..stop inclusive, 1-based."""
        if not 1 <= start <= stop <= self.d:
            raise InvalidString(f"bad subword range {start}..{stop} of {self.d}")
        return StringWord(
            self.vertices[start - 1 : stop],
            self.letters[start - 1 : stop - 1],
        )

    def __str__(self) -> str:
        parts = [str(self.vertices[0])]
        for letter, v in zip(self.letters, self.vertices[1:]):
            parts.append(str(letter))
            parts.append(str(v))
        return " ".join(parts)


def _word_sort_key(w: StringWord):
    return (
        w.vertices,
        tuple((l.arrow.name, not l.direct) for l in w.letters),
    )


def trivial_word(vertex: int) -> StringWord:
    return StringWord((vertex,), ())


def concat(left: StringWord, letter: Letter, right: StringWord) -> StringWord:
    return StringWord(
        left.vertices + right.vertices,
        left.letters + (letter,) + right.letters,
    )


@dataclass(frozen=True)
class CanonicalSubmodule:
    word: StringWord
    indices: frozenset

    @property
    def sorted_indices(self) -> tuple:
        return tuple(sorted(self.indices))


def validate_string(w: StringWord, q: QuiverWithRelations) -> None:
    """Raise unless w is a valid string for (Q, I)."""
    for v in w.vertices:
        if v not in q.vertices:
            raise NotComposable(f"vertex {v} is not a quiver vertex")
    for p, letter in enumerate(w.letters, start=1):
        frm, to = letter.endpoints()
        if (frm, to) != (w.vertices[p - 1], w.vertices[p]):
            raise NotComposable(
                f"letter {p} ({letter}) joins {frm}->{to}, "
                f"word has {w.vertices[p - 1]}->{w.vertices[p]}"
            )
    for p in range(len(w.letters) - 1):
        a, b = w.letters[p], w.letters[p + 1]
        if a.arrow.name == b.arrow.name and a.direct != b.direct:
            raise NotReduced(f"letters {p + 1},{p + 2} cancel ({a} then {b})")
        if a.direct and b.direct and (a.arrow.name, b.arrow.name) in q.relations:
            raise RelationViolated(
                f"letters {p + 1},{p + 2} compose to a forbidden path {a.arrow.name}{b.arrow.name}"
            )
        if (not a.direct) and (not b.direct) and (b.arrow.name, a.arrow.name) in q.relations:
            raise RelationViolated(
                f"letters {p + 1},{p + 2} reverse to a forbidden path {b.arrow.name}{a.arrow.name}"
            )


def is_valid_string(w: StringWord, q: QuiverWithRelations) -> bool:
    try:
        validate_string(w, q)
    except InvalidString:
        return False
    return True


def interval_decomposition(indices, d: int) -> list:
    """Maximal runs of an index set as (start, stop) pairs, 1-based."""
    out = []
    run_start = None
    for i in range(1, d + 2):
        inside = i <= d and i in indices
        if inside and run_start is None:
            run_start = i
        elif not inside and run_start is not None:
            out.append((run_start, i - 1))
            run_start = None
    return out


def is_canonical_submodule(w: StringWord, indices) -> bool:
    indices = frozenset(indices)
    if not indices <= set(range(1, w.d + 1)):
        return False
    for start, stop in interval_decomposition(indices, w.d):
        if start > 1 and not w.letters[start - 2].direct:
            return False
        if stop < w.d and w.letters[stop - 1].direct:
            return False
    return True


def enumerate_canonical_submodules(w: StringWord) -> list:
    """All submodule index sets, smallest first, each sorted internally."""
    found = []
    for r in range(w.d + 1):
        for combo in itertools.combinations(range(1, w.d + 1), r):
            if is_canonical_submodule(w, combo):
                found.append(CanonicalSubmodule(w, frozenset(combo)))
    return found


def dimension_vector(w: StringWord, indices=None, n: int | None = None) -> tuple:
    """Counts of each quiver vertex among the selected positions.

    Entry k-1 counts positions p in the index set with v_p = k, for
    k = 1..n.  With indices=None the whole module is measured.
    """
    if indices is None:
        indices = range(1, w.d + 1)
    if n is None:
        n = max(w.vertices)
    dim = [0] * n
    for p in indices:
        dim[w.vertices[p - 1] - 1] += 1
    return tuple(dim)


# -- truncations ------------------------------------------------------


def _first_direct(w: StringWord) -> int | None:
    for p, letter in enumerate(w.letters, start=1):
        if letter.direct:
            return p
    return None


def _first_inverse(w: StringWord) -> int | None:
    for p, letter in enumerate(w.letters, start=1):
        if not letter.direct:
            return p
    return None


def _last_direct(w: StringWord) -> int | None:
    for p in range(len(w.letters), 0, -1):
        if w.letters[p - 1].direct:
            return p
    return None


def _last_inverse(w: StringWord) -> int | None:
    for p in range(len(w.letters), 0, -1):
        if not w.letters[p - 1].direct:
            return p
    return None


def drop_head_through_first_direct(w: StringWord) -> StringWord:
    """Remove the inverse prefix and the first direct letter.

    When the word has no direct letter at all the result collapses to
    the trivial word at the final vertex.
    """
    p = _first_direct(w)
    if p is None:
        return trivial_word(w.vertices[-1])
    return w.sub(p + 1, w.d)


def drop_head_through_first_inverse(w: StringWord) -> StringWord:
    p = _first_inverse(w)
    if p is None:
        return trivial_word(w.vertices[-1])
    return w.sub(p + 1, w.d)


def drop_tail_from_last_inverse(w: StringWord) -> StringWord:
    p = _last_inverse(w)
    if p is None:
        return trivial_word(w.vertices[0])
    return w.sub(1, p)


def drop_tail_from_last_direct(w: StringWord) -> StringWord:
    p = _last_direct(w)
    if p is None:
        return trivial_word(w.vertices[0])
    return w.sub(1, p)


def truncations(w: StringWord) -> dict:
    """The four end-truncations of a string, keyed by which end moves.

    ``head_after_direct``   drop through the first direct letter
    ``head_after_inverse``  drop through the first inverse letter
    ``tail_before_inverse`` keep up to the last inverse letter
    ``tail_before_direct``  keep up to the last direct letter
    """
    return {
        "head_after_direct": drop_head_through_first_direct(w),
        "head_after_inverse": drop_head_through_first_inverse(w),
        "tail_before_inverse": drop_tail_from_last_inverse(w),
        "tail_before_direct": drop_tail_from_last_direct(w),
    }


# -- extensions and smoothing factors ---------------------------------


@dataclass(frozen=True)
class SmoothingFactor:
    """One factor of a smoothing term.

    kind "string": the module X_{word};
    kind "arc":    the initial-arc generator with exponent vector e_arc;
    kind "unit":   the identity;
    kind "open":   not determined combinatorially, solved numerically.
    """

    kind: str
    word: StringWord | None = None
    arc: int | None = None

    @staticmethod
    def of_string(w: StringWord) -> "SmoothingFactor":
        return SmoothingFactor("string", word=w)

    @staticmethod
    def of_arc(arc: int) -> "SmoothingFactor":
        return SmoothingFactor("arc", arc=arc)

    @staticmethod
    def unit() -> "SmoothingFactor":
        return SmoothingFactor("unit")

    @staticmethod
    def open_slot() -> "SmoothingFactor":
        return SmoothingFactor("open")

    def __str__(self) -> str:
        if self.kind == "string":
            return f"[{self.word}]"
        if self.kind == "arc":
            return f"x({self.arc})"
        return self.kind


@dataclass(frozen=True)
class Extension:
    """One middle-term datum of a short exact sequence between strings.

    ``u1`` (a string) and ``u2_options`` describe the first smoothing
    product; ``u3``/``u4`` the second.  Arrow extensions leave several
    candidate partners for u1 (resolved against the quantum identity);
    overlap extensions pin u2 to a string.
    """

    kind: str  # "arrow" | "overlap"
    u1: StringWord
    u2_options: tuple
    u3: SmoothingFactor
    u4: SmoothingFactor
    detail: str = ""

    def dedup_key(self):
        k1 = _word_sort_key(self.u1.canonical())
        if self.kind == "overlap":
            w2 = self.u2_options[0].word
            k2 = _word_sort_key(w2.canonical())
            return (self.kind, frozenset((k1, k2)))
        return (self.kind, k1)


def _flank_factor_other_triangle(q: QuiverWithRelations, arc: int, avoid_triangle: int, ccw: bool) -> SmoothingFactor:
    t = q.triangulation
    other = t.other_triangle_at(arc, avoid_triangle)
    side = t.ccw_flank(other, arc) if ccw else t.cw_flank(other, arc)
    return SmoothingFactor.of_arc(side)


def arrow_extensions(v: StringWord, w: StringWord, q: QuiverWithRelations) -> list:
    """Extensions of M(v) by M(w) glued along one arrow.

    The arrow a runs from the first vertex of v to the last vertex of
    w; the middle term is the string w a^{-1} v.  The complementary
    product comes from end-truncations of v when v carries letters, and
    from the triangle geometry when both inputs are trivial; with a
    trivial v against a longer w the second factor is left open.
    """
    out = []
    t = q.triangulation
    for a in q.arrows_between(v.vertices[0], w.vertices[-1]):
        u1 = concat(w, Letter(a, False), v)
        if not is_valid_string(u1, q):
            continue
        third = t.third_side(a.triangle, a.source, a.target)
        u2_options = (
            SmoothingFactor.of_arc(third),
            SmoothingFactor.of_string(trivial_word(a.source)),
            SmoothingFactor.of_string(trivial_word(a.target)),
            SmoothingFactor.unit(),
        )
        if not v.is_trivial:
            u3 = _string_factor_or_open(drop_head_through_first_inverse(v))
            u4 = _string_factor_or_open(drop_tail_from_last_inverse(v))
        elif w.is_trivial:
            u3 = _flank_factor_other_triangle(q, a.source, a.triangle, ccw=True)
            u4 = _flank_factor_other_triangle(q, a.target, a.triangle, ccw=False)
        else:
            u3 = SmoothingFactor.open_slot()
            u4 = SmoothingFactor.open_slot()
        out.append(
            Extension(
                kind="arrow",
                u1=u1,
                u2_options=u2_options,
                u3=u3,
                u4=u4,
                detail=f"arrow {a.name}: {a.source}->{a.target}",
            )
        )
    return out


def _connector_factor(q: QuiverWithRelations, left: StringWord, right: StringWord) -> SmoothingFactor:
    """left f^{-1} right for the unique arrow f making a valid string."""
    candidates = []
    for f in q.arrows_between(right.vertices[0], left.vertices[-1]):
        joined = concat(left, Letter(f, False), right)
        if is_valid_string(joined, q):
            candidates.append(joined)
    if len(candidates) > 1:
        raise AmbiguousConnector(
            f"{len(candidates)} arrows join {left} to {right} as valid strings"
        )
    if not candidates:
        return SmoothingFactor.open_slot()
    return SmoothingFactor.of_string(candidates[0])


def _string_factor_or_open(w: StringWord) -> SmoothingFactor:
    """A string factor; trivial outputs are degenerate and left open.

    A truncation collapsing to a single vertex marks a boundary case
    where the combinatorial recipe no longer names the factor; the
    multiplication solver pins it down from the residual instead.
    """
    if w.is_trivial:
        return SmoothingFactor.open_slot()
    return SmoothingFactor.of_string(w)


def _truncation_factor(piece: StringWord | None, which: str) -> SmoothingFactor:
    """Truncation factor for a one-sided overlap; open when degenerate."""
    if piece is None or piece.is_trivial:
        return SmoothingFactor.open_slot()
    if which == "head_after_direct":
        return _string_factor_or_open(drop_head_through_first_direct(piece))
    if which == "head_after_inverse":
        return _string_factor_or_open(drop_head_through_first_inverse(piece))
    if which == "tail_before_inverse":
        return _string_factor_or_open(drop_tail_from_last_inverse(piece))
    if which == "tail_before_direct":
        return _string_factor_or_open(drop_tail_from_last_direct(piece))
    raise ValueError(which)


def overlap_extensions(v: StringWord, w: StringWord, q: QuiverWithRelations) -> list:
    """Extensions from a shared subword crossed in opposite fashion.

    Writing v = v_L b m a^{-1} v_R and w = w_L d^{-1} m c w_R (with b
    direct, a/d traversed inversely, c direct; any of the four outer
    parts may be absent), the diagonal terms are u1 = v_L b m c w_R and
    u2 = w_L d^{-1} m a^{-1} v_R, and the off-diagonal product joins the
    leftover ends with uniquely determined inverse connectors.
    """
    out = []
    dv, dw = v.d, w.d
    for length in range(1, min(dv, dw) + 1):
        for sv in range(1, dv - length + 2):
            for sw in range(1, dw - length + 2):
                mid_v = v.sub(sv, sv + length - 1)
                mid_w = w.sub(sw, sw + length - 1)
                if mid_v != mid_w:
                    continue
                b = v.letters[sv - 2] if sv > 1 else None
                a = v.letters[sv + length - 2] if sv + length - 1 < dv else None
                d = w.letters[sw - 2] if sw > 1 else None
                c = w.letters[sw + length - 2] if sw + length - 1 < dw else None
                if b is not None and not b.direct:
                    continue
                if a is not None and a.direct:
                    continue
                if d is not None and d.direct:
                    continue
                if c is not None and not c.direct:
                    continue
                if a is None and c is None:
                    continue
                if b is None and d is None:
                    continue
                if length == 1:
                    if a is not None and c is not None and (a.arrow.name, c.arrow.name) not in q.relations:
                        continue
                    if b is not None and d is not None and (b.arrow.name, d.arrow.name) not in q.relations:
                        continue
                v_left = v.sub(1, sv - 1) if sv > 1 else None
                v_right = v.sub(sv + length, dv) if sv + length - 1 < dv else None
                w_left = w.sub(1, sw - 1) if sw > 1 else None
                w_right = w.sub(sw + length, dw) if sw + length - 1 < dw else None

                u1 = mid_v
                if b is not None:
                    u1 = concat(v_left, b, u1)
                if c is not None:
                    u1 = concat(u1, c, w_right)
                u2 = mid_v
                if d is not None:
                    u2 = concat(w_left, d, u2)
                if a is not None:
                    u2 = concat(u2, a, v_right)
                if not (is_valid_string(u1, q) and is_valid_string(u2, q)):
                    continue

                if b is not None and d is not None:
                    u3 = _connector_factor(q, v_left, w_left)
                elif b is None:
                    u3 = _truncation_factor(w_left, "tail_before_inverse")
                else:
                    u3 = _truncation_factor(v_left, "tail_before_direct")
                if a is not None and c is not None:
                    u4 = _connector_factor(q, v_right, w_right)
                elif a is None:
                    u4 = _truncation_factor(w_right, "head_after_direct")
                else:
                    u4 = _truncation_factor(v_right, "head_after_inverse")

                out.append(
                    Extension(
                        kind="overlap",
                        u1=u1,
                        u2_options=(SmoothingFactor.of_string(u2),),
                        u3=u3,
                        u4=u4,
                        detail=f"overlap v[{sv}..{sv + length - 1}] = w[{sw}..{sw + length - 1}]",
                    )
                )
    return out


def all_extensions(v: StringWord, w: StringWord, q: QuiverWithRelations) -> list:
    """Deduplicated extensions over both argument orders and orientations."""
    seen = {}
    for first, second in ((v, w), (w, v)):
        for fo in (first, first.inverse()):
            for so in (second, second.inverse()):
                for ext in arrow_extensions(fo, so, q) + overlap_extensions(fo, so, q):
                    key = ext.dedup_key()
                    if key not in seen:
                        seen[key] = ext
    return [seen[k] for k in sorted(seen, key=_ext_key_sort)]


def _ext_key_sort(key):
    kind, rest = key
    if isinstance(rest, frozenset):
        return (kind, tuple(sorted(rest)))
    return (kind, (rest,))


# -- enumeration ------------------------------------------------------


def enumerate_strings(q: QuiverWithRelations, max_vertices: int) -> list:
    """All valid strings with at most the given number of vertices.

    One representative per inversion class, in a deterministic order.
    """
    found = {}

    def extend(word: StringWord):
        key = _word_sort_key(word.canonical())
        if key in found:
            return
        found[key] = word.canonical()
        if word.d >= max_vertices:
            return
        last = word.vertices[-1]
        steps = [Letter(a, True) for a in q.arrows_from(last)]
        steps += [Letter(a, False) for a in q.arrows_to(last)]
        for letter in steps:
            nxt = letter.endpoints()[1]
            candidate = StringWord(word.vertices + (nxt,), word.letters + (letter,))
            if is_valid_string(candidate, q):
                extend(candidate)

    for v in sorted(q.vertices):
        extend(trivial_word(v))
    return [found[k] for k in sorted(found)]
