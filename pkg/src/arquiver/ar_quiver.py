"""The Auslander-Reiten quiver Gamma_Q and its combinatorial structure.

The quiver is built by seeding level i at column xi_i with the root eta_i
and stepping left by the Coxeter transformation tau while the image stays
positive.  Vertices are coordinates (level, column); the builder records
the bijection between coordinates and positive roots, the arrow set
((i,p) -> (j,p+1) for adjacent i,j), and the per-level depths m_i.

Maximal sectional paths are modelled as "brooms": a diagonal chain through
levels <= n-2 together with the spin-level tips it runs into (an S-broom
may fork into both levels n-1 and n at its top; an N-broom may start from
both).  Two roots count as lying on a common sectional path when one
maximal broom contains both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from . import root_system as rs
from .quiver import DynkinQuiver, check_height_function, coxeter_word, eta_zeta
from .root_system import CartanDatum, Root

Coord = tuple[int, int]


class ARQuiverError(ValueError):
    pass


@dataclass(frozen=True)
class SectionalPath:
    """A maximal S- or N-broom; coords run in arrow order (column ascending)."""

    kind: str  # "S" or "N"
    coords: tuple[Coord, ...]
    maximal: bool
    shallow: bool


@dataclass(frozen=True)
class Swing:
    """S-broom into the level-(n-1, n) fork plus the N-broom out of it."""

    shared_index: int
    s_part: tuple[Coord, ...]
    fork: tuple[Coord, Coord]  # ((n-1, u), (n, u))
    n_part: tuple[Coord, ...]

    @property
    def coords(self) -> tuple[Coord, ...]:
        return self.s_part + self.fork + self.n_part


class ARQuiver:
    """Immutable after build; every query is a pure function of the data."""

    def __init__(
        self,
        quiver: DynkinQuiver,
        xi: tuple[int, ...],
        tau_word: tuple[int, ...],
        root_at: dict[Coord, Root],
        arrows: frozenset[tuple[Coord, Coord]],
        m: tuple[int, ...],
    ):
        self.quiver = quiver
        self.datum = quiver.datum
        self.xi = xi
        self.tau_word = tau_word
        self.root_at = root_at
        self.phi = {root: coord for coord, root in root_at.items()}
        self.arrows = arrows
        self.m = m
        self._descendants: Optional[dict[Coord, frozenset[Coord]]] = None
        self._paths_cache: Optional[list[SectionalPath]] = None
        self._swings_cache: Optional[list[Swing]] = None

    # --- basic queries -------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def vertices(self) -> list[Coord]:
        """Coordinates in the stable export order (column, then level)."""
        return sorted(self.root_at, key=lambda c: (c[1], c[0]))

    def coord_of(self, root: Root) -> Coord:
        try:
            return self.phi[root]
        except KeyError:
            raise ARQuiverError(f"{root} is not a positive root here") from None

    def level_of(self, root: Root) -> int:
        return self.coord_of(root)[0]

    def column_of(self, root: Root) -> int:
        return self.coord_of(root)[1]

    @property
    def spin_levels(self) -> tuple[int, int]:
        return (self.rank - 1, self.rank)

    @property
    def t_index(self) -> int:
        """The spin index t: roots with summand +-e_t sit at levels n-1 and n."""
        if self.datum.diagram_type != "D":
            raise ARQuiverError("spin indices exist only in type D")
        n = self.rank
        return n - 1 if abs(self.xi[n - 2] - self.xi[n - 1]) == 2 else n

    @property
    def t_prime_index(self) -> int:
        n = self.rank
        return n if abs(self.xi[n - 2] - self.xi[n - 1]) == 2 else n - 1

    def out_arrows(self, coord: Coord) -> list[Coord]:
        i, p = coord
        return [
            (j, p + 1)
            for j in self.datum.neighbors(i)
            if (j, p + 1) in self.root_at
        ]

    def in_arrows(self, coord: Coord) -> list[Coord]:
        i, p = coord
        return [
            (j, p - 1)
            for j in self.datum.neighbors(i)
            if (j, p - 1) in self.root_at
        ]

    # --- reachability / the convex partial order ------------------------------

    def descendants(self, coord: Coord) -> frozenset[Coord]:
        """All coordinates reachable from coord along arrows (coord excluded)."""
        if self._descendants is None:
            closure: dict[Coord, frozenset[Coord]] = {}
            for c in sorted(self.root_at, key=lambda c: -c[1]):
                acc: set[Coord] = set()
                for nxt in self.out_arrows(c):
                    acc.add(nxt)
                    acc |= closure[nxt]
                closure[c] = frozenset(acc)
            self._descendants = closure
        return self._descendants[coord]

    def prec(self, alpha: Root, beta: Root) -> bool:
        """alpha strictly precedes beta: a path from beta down to alpha exists."""
        return self.coord_of(alpha) in self.descendants(self.coord_of(beta))

    # --- named structure -------------------------------------------------------

    def simple_root_coords(self) -> dict[int, Coord]:
        return {k: self.coord_of(self.datum.simple_root(k)) for k in self.datum.vertices}

    def level_pair_sum(self, column: int) -> Optional[tuple[int, tuple[Root, Root]]]:
        """For a column holding both spin levels: the index a with root sum 2*e_a."""
        n = self.rank
        upper = self.root_at.get((n - 1, column))
        lower = self.root_at.get((n, column))
        if upper is None or lower is None:
            return None
        total = tuple(x + y for x, y in zip(upper, lower))
        e = rs.epsilon_coords(self.datum, total)
        support = [(i + 1, c) for i, c in enumerate(e) if c]
        if len(support) != 1 or support[0][1] != 2:
            raise ARQuiverError(f"column {column}: spin pair sums to {total}, not 2*e_a")
        return support[0][0], (upper, lower)

    def triangle_apex(self, coord_a: Coord, coord_b: Coord) -> Coord:
        """Where the sum of two spin-level roots sits: (n-1-k, (s+l)/2)."""
        n = self.rank
        (na, s), (nb, l) = coord_a, coord_b
        if na not in (n - 1, n) or nb not in (n - 1, n):
            raise ARQuiverError("both coordinates must be at the spin levels")
        if abs(s - l) == 0 or abs(s - l) % 2:
            raise ARQuiverError("columns must differ by a positive even number")
        k = abs(s - l) // 2
        if (na - nb) % 2 != (k - 1) % 2:
            raise ARQuiverError(f"parity mismatch: levels ({na},{nb}) with k={k}")
        apex = (n - 1 - k, (s + l) // 2)
        total = tuple(
            x + y for x, y in zip(self.root_at[coord_a], self.root_at[coord_b])
        )
        if self.root_at.get(apex) != total:
            raise ARQuiverError(f"apex {apex} does not hold the sum of the pair")
        return apex

    def longest_root_coord(self) -> Coord:
        if self.datum.diagram_type != "D":
            raise ARQuiverError("the longest-root formula is for type D")
        n = self.rank
        if self.quiver.is_source(1):
            return (n - 2, self.xi[0] - n + 1)
        return (n - 2, self.xi[0] - n + 3)

    # --- sectional paths and swings ---------------------------------------------

    def _is_s_arrow(self, a: Coord, b: Coord) -> bool:
        n = self.rank
        (i, p), (j, q) = a, b
        if q != p + 1:
            return False
        if self.datum.diagram_type == "A":
            return j == i + 1
        return (i <= n - 2 and j == i + 1) or (i == n - 2 and j == n)

    def _is_n_arrow(self, a: Coord, b: Coord) -> bool:
        n = self.rank
        (i, p), (j, q) = a, b
        if q != p + 1:
            return False
        if self.datum.diagram_type == "A":
            return j == i - 1
        return (2 <= i <= n - 1 and j == i - 1) or (i == n and j == n - 2)

    def sectional_paths(self) -> list[SectionalPath]:
        """All maximal sectional brooms, S-kind then N-kind, by start coordinate."""
        if self._paths_cache is None:
            self._paths_cache = self._sectional(kind="S") + self._sectional(kind="N")
        return list(self._paths_cache)

    def _sectional(self, kind: str) -> list[SectionalPath]:
        step = self._is_s_arrow if kind == "S" else self._is_n_arrow
        edges = [(a, b) for a, b in self.arrows if step(a, b)]
        # connected components of the S- (or N-) arrow subgraph are brooms:
        # a diagonal stem plus at most two spin-level members
        component: dict[Coord, int] = {}
        members: dict[int, set[Coord]] = {}
        next_id = 0
        for a, b in sorted(edges):
            ca = component.get(a)
            cb = component.get(b)
            if ca is None and cb is None:
                component[a] = component[b] = next_id
                members[next_id] = {a, b}
                next_id += 1
            elif ca is None:
                component[a] = cb
                members[cb].add(a)
            elif cb is None:
                component[b] = ca
                members[ca].add(b)
            elif ca != cb:
                for c in members[cb]:
                    component[c] = ca
                members[ca] |= members.pop(cb)
        spin = set(self.spin_levels) if self.datum.diagram_type == "D" else set()
        paths = []
        for group in members.values():
            coords = tuple(sorted(group, key=lambda c: (c[1], c[0])))
            is_shallow = bool(spin) and not any(c[0] in spin for c in coords)
            paths.append(
                SectionalPath(kind=kind, coords=coords, maximal=True, shallow=is_shallow)
            )
        paths.sort(key=lambda path: path.coords)
        return paths

    def swings(self) -> list[Swing]:
        """Maximal swings, one per fork column with stems on both sides."""
        if self.datum.diagram_type != "D":
            raise ARQuiverError("swings exist only in type D")
        if self._swings_cache is not None:
            return list(self._swings_cache)
        n = self.rank
        swings = []
        columns = sorted(
            p for (i, p) in self.root_at if i == n - 1 and (n, p) in self.root_at
        )
        for u in columns:
            if (n - 2, u - 1) not in self.root_at or (n - 2, u + 1) not in self.root_at:
                continue
            s_part = []
            c = (n - 2, u - 1)
            while c in self.root_at:
                s_part.append(c)
                c = (c[0] - 1, c[1] - 1)
            s_part.reverse()
            n_part = []
            c = (n - 2, u + 1)
            while c in self.root_at:
                n_part.append(c)
                c = (c[0] - 1, c[1] + 1)
            shared = self._swing_shared_index(s_part, ((n - 1, u), (n, u)), n_part)
            swings.append(
                Swing(
                    shared_index=shared,
                    s_part=tuple(s_part),
                    fork=((n - 1, u), (n, u)),
                    n_part=tuple(n_part),
                )
            )
        self._swings_cache = sorted(swings, key=lambda s: s.shared_index)
        return list(self._swings_cache)

    def _swing_shared_index(self, s_part, fork, n_part) -> int:
        common: Optional[set[int]] = None
        for coord in list(s_part) + list(fork) + list(n_part):
            eps = rs.epsilon_form(self.datum, self.root_at[coord])
            mine = {s for s in eps.summands if s > 0}
            common = mine if common is None else common & mine
        if not common or len(common) != 1:
            raise ARQuiverError(
                f"swing at fork {fork} shares {sorted(common or ())} summands, expected one"
            )
        return common.pop()

    def swing_of(self, a: int) -> Swing:
        for swing in self.swings():
            if swing.shared_index == a:
                return swing
        raise ARQuiverError(f"no {a}-swing")

    # --- the sigma and kappa sequences ------------------------------------------

    def sigma(self) -> tuple[list[Root], list[int]]:
        """Level-(n-1) roots minus simples, columns descending, with swing indices."""
        if self.datum.diagram_type != "D":
            raise ARQuiverError("the sigma sequence exists only in type D")
        n = self.rank
        simples = {self.datum.simple_root(n - 1), self.datum.simple_root(n)}
        members = [
            (p, root)
            for (i, p), root in self.root_at.items()
            if i == n - 1 and root not in simples
        ]
        members.sort(key=lambda pr: -pr[0])
        roots = [root for _, root in members]
        indices = [rs.epsilon_form(self.datum, root).a for root in roots]
        return roots, indices

    def kappa(self) -> tuple[list[Root], list[int], int]:
        """Level-1 roots (columns descending), summand indices, and the fold."""
        if self.datum.diagram_type != "D":
            raise ARQuiverError("the kappa sequence exists only in type D")
        members = [(p, root) for (i, p), root in self.root_at.items() if i == 1]
        members.sort(key=lambda pr: -pr[0])
        roots = [root for _, root in members]
        indices = [rs.epsilon_form(self.datum, root).b_signed for root in roots]
        tp = self.t_prime_index
        fold = None
        for pos in range(1, len(indices)):
            if abs(indices[pos - 1]) == tp and abs(indices[pos]) == tp:
                fold = pos + 1  # 1-based position l with |j_l| = |j_{l-1}| = t'
                break
        if fold is None:
            raise ARQuiverError("kappa sequence has no adjacent +-t' pair")
        return roots, indices, fold

    # --- multiplicity-non-free region ---------------------------------------------

    def nfree_region(self):
        """(i, j, predicate): column extremes of tall spin-level roots and the
        coordinate window that contains every multiplicity-non-free root."""
        if self.datum.diagram_type != "D":
            raise ARQuiverError("the non-free region exists only in type D")
        n = self.rank
        spin_tall = [
            p
            for (lvl, p), root in self.root_at.items()
            if lvl in (n - 1, n) and rs.ht(root) >= 2
        ]
        if not spin_tall:
            raise ARQuiverError("no spin-level roots of height >= 2")
        hi, lo = max(spin_tall), min(spin_tall)

        def inside(coord: Coord) -> bool:
            level, p = coord
            if not 1 < level < n - 1:
                return False
            return lo - (n - 1 - level) <= p <= hi - (n - 1 - level)

        return hi, lo, inside

    # --- export ---------------------------------------------------------------

    def to_json_dict(self) -> dict:
        verts = self.vertices
        index = {c: i for i, c in enumerate(verts)}
        vertices = []
        for level, p in verts:
            root = self.root_at[(level, p)]
            if self.datum.diagram_type == "D":
                eps = rs.epsilon_form(self.datum, root)
                eps_out = [eps.a, eps.b_signed]
            else:
                eps_out = None
            vertices.append(
                {"level": level, "p": p, "coeffs": list(root), "eps": eps_out}
            )
        arrows = sorted(
            [index[a], index[b]] for a, b in self.arrows
        )
        return {
            "diagram": {
                "type": self.datum.diagram_type,
                "rank": self.rank,
                "arrows": [list(a) for a in self.quiver.arrows],
            },
            "vertices": vertices,
            "arrows": arrows,
            "m": list(self.m),
            "xi": list(self.xi),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_dot(self) -> str:
        verts = self.vertices
        lines = ["digraph gamma_q {", "  rankdir=LR;", '  node [shape=box];']
        by_column: dict[int, list[Coord]] = {}
        for c in verts:
            by_column.setdefault(c[1], []).append(c)
        for level, p in verts:
            root = self.root_at[(level, p)]
            label = rs.format_root(self.datum, root)
            lines.append(f'  "v_{level}_{p}" [label="{label} @({level},{p})"];')
        for p in sorted(by_column):
            names = " ".join(f'"v_{i}_{q}"' for i, q in sorted(by_column[p]))
            lines.append(f"  {{ rank=same; {names} }}")
        for (a, b) in sorted(self.arrows):
            lines.append(f'  "v_{a[0]}_{a[1]}" -> "v_{b[0]}_{b[1]}";')
        lines.append("}")
        return "\n".join(lines)


def build(quiver: DynkinQuiver, xi, validate: bool = True) -> ARQuiver:
    """Knit Gamma_Q from the seeds (i, xi_i) -> eta_i by repeated tau steps."""
    datum = quiver.datum
    xi = tuple(xi)
    check_height_function(quiver, xi)
    tau = coxeter_word(quiver)
    root_at: dict[Coord, Root] = {}
    m = []
    for i in datum.vertices:
        beta, _ = eta_zeta(quiver, i)
        p = xi[i - 1]
        while True:
            root_at[(i, p)] = beta
            sign, image = rs.apply_word(datum, tau, beta)
            if sign < 0:
                break
            p -= 2
            beta = image
        m.append((xi[i - 1] - p) // 2)
    arrows = set()
    for (i, p) in root_at:
        for j in datum.neighbors(i):
            if (j, p + 1) in root_at:
                arrows.add(((i, p), (j, p + 1)))
    ar = ARQuiver(quiver, xi, tau, root_at, frozenset(arrows), tuple(m))
    if validate:
        message = validate_build(ar)
        if message is not None:
            raise ARQuiverError(message)
    return ar


def validate_build(ar: ARQuiver) -> Optional[str]:
    """Check the defining invariants; returns a diagnostic or None.

    Covers: the coordinate/root bijection, the column ranges, the Nakayama
    relation between opposite levels, mesh additivity, and the arrow rule.
    A failure here means the builder itself is wrong.
    """
    datum = ar.datum
    n = ar.rank
    roots = rs.enumerate_positive_roots(datum)
    if set(ar.phi) != set(roots) or len(ar.root_at) != len(roots):
        return "vertex set is not in bijection with the positive roots"
    for (i, p) in ar.root_at:
        if (p - ar.xi[i - 1]) % 2:
            return f"coordinate ({i},{p}) breaks the column parity of level {i}"
        if not ar.xi[i - 1] - 2 * ar.m[i - 1] <= p <= ar.xi[i - 1]:
            return f"coordinate ({i},{p}) is outside the level-{i} range"
    h = datum.coxeter_number
    star = rs.longest_element_star(datum)
    for i in datum.vertices:
        lhs = ar.xi[star[i] - 1] - 2 * ar.m[star[i] - 1]
        if lhs != ar.xi[i - 1] - h + 2:
            return f"Nakayama relation fails at level {i}"
    for (i, p), root in ar.root_at.items():
        prev = ar.root_at.get((i, p - 2))
        if prev is None:
            continue
        mesh = [0] * n
        for (j, q) in ar.in_arrows((i, p)):
            for idx, c in enumerate(ar.root_at[(j, q)]):
                mesh[idx] += c
        total = tuple(a + b for a, b in zip(root, prev))
        if total != tuple(mesh):
            return f"mesh additivity fails at ({i},{p})"
    for (a, b) in ar.arrows:
        if b[1] != a[1] + 1 or not datum.adjacent(a[0], b[0]):
            return f"arrow {a}->{b} is not of the form (i,p)->(j,p+1)"
        if a not in ar.root_at or b not in ar.root_at:
            return f"arrow {a}->{b} has a dangling endpoint"
    for (i, p) in ar.root_at:
        for j in datum.neighbors(i):
            if (j, p + 1) in ar.root_at and ((i, p), (j, p + 1)) not in ar.arrows:
                return f"missing arrow ({i},{p})->({j},{p + 1})"
    return None


def from_json_dict(payload: dict) -> ARQuiver:
    """Rebuild from the export schema and check it reproduces the same quiver."""
    diagram = payload["diagram"]
    datum = CartanDatum(diagram["type"], diagram["rank"])
    quiver = DynkinQuiver.from_arrows(datum, [tuple(a) for a in diagram["arrows"]])
    ar = build(quiver, tuple(payload["xi"]))
    verts = ar.vertices
    index = {c: i for i, c in enumerate(verts)}
    got_vertices = [
        {
            "level": c[0],
            "p": c[1],
            "coeffs": list(ar.root_at[c]),
            "eps": (
                [rs.epsilon_form(datum, ar.root_at[c]).a,
                 rs.epsilon_form(datum, ar.root_at[c]).b_signed]
                if datum.diagram_type == "D"
                else None
            ),
        }
        for c in verts
    ]
    if got_vertices != payload["vertices"]:
        raise ARQuiverError("vertex table does not match the rebuilt quiver")
    got_arrows = sorted([index[a], index[b]] for a, b in ar.arrows)
    if got_arrows != [list(a) for a in payload["arrows"]]:
        raise ARQuiverError("arrow table does not match the rebuilt quiver")
    if list(ar.m) != list(payload["m"]):
        raise ARQuiverError("m values do not match the rebuilt quiver")
    return ar


def from_json(text: str) -> ARQuiver:
    return from_json_dict(json.loads(text))
