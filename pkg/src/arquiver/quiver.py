"""Dynkin quivers: orientations, height functions, and vertex classification.

An orientation is stored as a tuple of directed arrows (src, dst) covering
every diagram edge exactly once, plus a bitmask encoding against the
canonical edge order (edges sorted by (min endpoint, max endpoint); bit 0
means the arrow runs min -> max).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator

from .root_system import CartanDatum, Root, WeylWord


class QuiverError(ValueError):
    pass


class VertexClass(enum.Enum):
    SOURCE = "source"
    SINK = "sink"
    LEFT_INTERMEDIATE = "left-intermediate"
    RIGHT_INTERMEDIATE = "right-intermediate"
    OTHER = "other"


@dataclass(frozen=True)
class DynkinQuiver:
    datum: CartanDatum
    arrows: tuple[tuple[int, int], ...]

    @classmethod
    def from_arrows(cls, datum: CartanDatum, arrows) -> "DynkinQuiver":
        """Build from directed (src, dst) pairs covering each edge once."""
        covered = {}
        for src, dst in arrows:
            edge = (min(src, dst), max(src, dst))
            if edge not in datum.edges:
                raise QuiverError(f"{src}>{dst} is not a diagram edge")
            if edge in covered:
                raise QuiverError(f"edge {edge} oriented twice")
            covered[edge] = (src, dst)
        missing = [e for e in datum.edges if e not in covered]
        if missing:
            raise QuiverError(f"edges {missing} are not oriented")
        return cls(datum, tuple(covered[e] for e in datum.edges))

    @classmethod
    def from_bitmask(cls, datum: CartanDatum, mask: int) -> "DynkinQuiver":
        arrows = []
        for bit, (lo, hi) in enumerate(datum.edges):
            arrows.append((hi, lo) if mask >> bit & 1 else (lo, hi))
        return cls(datum, tuple(arrows))

    @property
    def bitmask(self) -> int:
        mask = 0
        for bit, ((lo, hi), (src, _)) in enumerate(zip(self.datum.edges, self.arrows)):
            if src == hi:
                mask |= 1 << bit
        return mask

    def arrows_at(self, i: int) -> tuple[tuple[int, int], ...]:
        return tuple(a for a in self.arrows if i in a)

    def points_into(self, i: int) -> tuple[int, ...]:
        """Neighbors j with an arrow j -> i."""
        return tuple(src for src, dst in self.arrows if dst == i)

    def points_out_of(self, i: int) -> tuple[int, ...]:
        """Neighbors j with an arrow i -> j."""
        return tuple(dst for src, dst in self.arrows if src == i)

    def is_source(self, i: int) -> bool:
        return not self.points_into(i)

    def is_sink(self, i: int) -> bool:
        return not self.points_out_of(i)

    def spec_string(self) -> str:
        return ",".join(f"{s}>{t}" for s, t in self.arrows)


def classify_vertex(quiver: DynkinQuiver, i: int) -> VertexClass:
    """Source, sink, left/right intermediate, or other.

    A right intermediate receives its arrows from the far side of the
    diagram (away from vertex 1) and emits toward vertex 1; a left
    intermediate is the mirror image.  At the branch vertex n-2 of type D
    this requires both spin arrows to point the same way; the four mixed
    orientations classify as OTHER.
    """
    datum = quiver.datum
    if i not in datum.vertices:
        raise QuiverError(f"no vertex {i}")
    if quiver.is_source(i):
        return VertexClass.SOURCE
    if quiver.is_sink(i):
        return VertexClass.SINK
    n = datum.rank
    incoming = set(quiver.points_into(i))
    outgoing = set(quiver.points_out_of(i))
    if datum.diagram_type == "D" and i == n - 2:
        spin = {n - 1, n}
        if incoming == spin and outgoing == {n - 3}:
            return VertexClass.RIGHT_INTERMEDIATE
        if incoming == {n - 3} and outgoing == spin:
            return VertexClass.LEFT_INTERMEDIATE
        return VertexClass.OTHER
    if incoming == {i + 1} and outgoing == {i - 1}:
        return VertexClass.RIGHT_INTERMEDIATE
    if incoming == {i - 1} and outgoing == {i + 1}:
        return VertexClass.LEFT_INTERMEDIATE
    return VertexClass.OTHER


def reflect_quiver(quiver: DynkinQuiver, i: int) -> DynkinQuiver:
    """Reverse every arrow incident to vertex i."""
    flipped = tuple(
        (dst, src) if i in (src, dst) else (src, dst) for src, dst in quiver.arrows
    )
    return DynkinQuiver.from_arrows(quiver.datum, flipped)


def is_adapted(word: WeylWord, quiver: DynkinQuiver) -> bool:
    """Each letter must be a source of the quiver reflected at all earlier letters."""
    current = quiver
    for i in word:
        if not current.is_source(i):
            return False
        current = reflect_quiver(current, i)
    return True


def coxeter_word(quiver: DynkinQuiver) -> WeylWord:
    """The source-peeling word: repeatedly remove the smallest current source."""
    current = quiver
    remaining = set(quiver.datum.vertices)
    word = []
    while remaining:
        source = min(i for i in remaining if current.is_source(i))
        word.append(source)
        remaining.discard(source)
        current = reflect_quiver(current, source)
    return tuple(word)


def eta_zeta(quiver: DynkinQuiver, i: int) -> tuple[Root, Root]:
    """eta_i sums alpha_j over j with a path j ~> i, zeta_i over i ~> j."""
    datum = quiver.datum
    eta = [0] * datum.rank
    for j in _reachable(quiver, i, backwards=True):
        eta[j - 1] = 1
    zeta = [0] * datum.rank
    for j in _reachable(quiver, i, backwards=False):
        zeta[j - 1] = 1
    return tuple(eta), tuple(zeta)


def _reachable(quiver: DynkinQuiver, start: int, backwards: bool) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            step = quiver.points_into(u) if backwards else quiver.points_out_of(u)
            for v in step:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def make_height_function(
    quiver: DynkinQuiver, anchor_vertex: int, anchor_value: int
) -> tuple[int, ...]:
    """The unique xi with xi_j = xi_i - 1 along arrows and the given anchor."""
    datum = quiver.datum
    if anchor_vertex not in datum.vertices:
        raise QuiverError(f"no vertex {anchor_vertex}")
    xi: dict[int, int] = {anchor_vertex: anchor_value}
    frontier = [anchor_vertex]
    while frontier:
        nxt = []
        for u in frontier:
            for v in quiver.points_out_of(u):
                if v not in xi:
                    xi[v] = xi[u] - 1
                    nxt.append(v)
            for v in quiver.points_into(u):
                if v not in xi:
                    xi[v] = xi[u] + 1
                    nxt.append(v)
        frontier = nxt
    return tuple(xi[i] for i in datum.vertices)


def check_height_function(quiver: DynkinQuiver, xi) -> None:
    if len(xi) != quiver.datum.rank:
        raise QuiverError("height function has wrong length")
    for src, dst in quiver.arrows:
        if xi[dst - 1] != xi[src - 1] - 1:
            raise QuiverError(
                f"height function violates arrow {src}>{dst}: "
                f"xi_{dst}={xi[dst - 1]} != xi_{src}-1"
            )


def all_orientations(datum: CartanDatum) -> Iterator[DynkinQuiver]:
    """All 2^(#edges) orientations in canonical bitmask order."""
    for mask in range(1 << len(datum.edges)):
        yield DynkinQuiver.from_bitmask(datum, mask)


# --- quiver spec strings (CLI) ------------------------------------------------

_ARROW_RE = re.compile(r"^\s*(\d+)\s*>\s*(\d+)\s*$")
_XI_RE = re.compile(r"^\s*(\d+)\s*=\s*(-?\d+)\s*$")


def parse_arrow_spec(datum: CartanDatum, text: str) -> DynkinQuiver:
    """Parse `2>1,3>2,2>4` into an orientation."""
    arrows = []
    for chunk in text.split(","):
        m = _ARROW_RE.match(chunk)
        if not m:
            raise QuiverError(f"cannot parse arrow {chunk!r}")
        arrows.append((int(m.group(1)), int(m.group(2))))
    return DynkinQuiver.from_arrows(datum, arrows)


def parse_xi_anchor(text: str) -> tuple[int, int]:
    """Parse a `vertex=value` height anchor."""
    m = _XI_RE.match(text)
    if not m:
        raise QuiverError(f"cannot parse height anchor {text!r}")
    return int(m.group(1)), int(m.group(2))
