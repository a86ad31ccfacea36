"""Root systems and Weyl group arithmetic for Dynkin types A and D.

Positive roots are stored as coefficient vectors over the simple roots
(tuples of non-negative ints, index i-1 holds the coefficient of alpha_i).
Signed roots are pairs (sign, coeffs) with sign in {+1, -1}; a negative
coefficient vector never leaves this module.

Type D uses the enumeration with the path 1 - 2 - ... - (n-2) and both
n-1 and n attached to n-2, so alpha_i = e_i - e_{i+1} for i <= n-1 and
alpha_n = e_{n-1} + e_n in the usual orthonormal coordinates.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

Root = tuple[int, ...]
SignedRoot = tuple[int, Root]
WeylWord = tuple[int, ...]


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    """Diagram type ('A' or 'D') plus rank; all diagram data derives from it."""

    diagram_type: str
    rank: int

    def __post_init__(self):
        if self.diagram_type not in ("A", "D"):
            raise RootSystemError(f"unsupported diagram type {self.diagram_type!r}")
        minimum = 4 if self.diagram_type == "D" else 1
        if self.rank < minimum:
            raise RootSystemError(
                f"type {self.diagram_type} needs rank >= {minimum}, got {self.rank}"
            )

    @property
    def vertices(self) -> range:
        return range(1, self.rank + 1)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Undirected diagram edges, sorted by (min endpoint, max endpoint)."""
        n = self.rank
        if self.diagram_type == "A":
            return tuple((i, i + 1) for i in range(1, n))
        path = [(i, i + 1) for i in range(1, n - 1)]
        path.append((n - 2, n))
        return tuple(sorted(path))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edge_set()

    def neighbors(self, i: int) -> tuple[int, ...]:
        return tuple(j for j in self.vertices if self.adjacent(i, j))

    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return _edge_set(self)

    def distance(self, i: int, j: int) -> int:
        """Graph distance between diagram vertices."""
        return _distances(self)[i][j]

    def cartan(self, i: int, j: int) -> int:
        if i == j:
            return 2
        return -1 if self.adjacent(i, j) else 0

    @property
    def coxeter_number(self) -> int:
        return self.rank + 1 if self.diagram_type == "A" else 2 * self.rank - 2

    @property
    def num_positive_roots(self) -> int:
        n = self.rank
        return n * (n + 1) // 2 if self.diagram_type == "A" else n * (n - 1)

    def simple_root(self, i: int) -> Root:
        if i not in self.vertices:
            raise RootSystemError(f"no vertex {i} in rank {self.rank}")
        return tuple(1 if j == i else 0 for j in self.vertices)

    def pairing(self, a: Root, b: Root) -> int:
        """Symmetric bilinear form (a, b) induced by the Cartan matrix."""
        total = 0
        for i in self.vertices:
            if a[i - 1] == 0:
                continue
            for j in self.vertices:
                if b[j - 1]:
                    total += a[i - 1] * b[j - 1] * self.cartan(i, j)
        return total


@lru_cache(maxsize=None)
def _edge_set(datum: CartanDatum) -> frozenset[tuple[int, int]]:
    return frozenset(datum.edges)


@lru_cache(maxsize=None)
def _distances(datum: CartanDatum) -> dict[int, dict[int, int]]:
    dist: dict[int, dict[int, int]] = {}
    for source in datum.vertices:
        d = {source: 0}
        frontier = [source]
        while frontier:
            nxt = []
            for u in frontier:
                for v in datum.neighbors(u):
                    if v not in d:
                        d[v] = d[u] + 1
                        nxt.append(v)
            frontier = nxt
        dist[source] = d
    return dist


def _as_signed(root: Root | SignedRoot) -> SignedRoot:
    if len(root) == 2 and isinstance(root[1], tuple):
        return root  # type: ignore[return-value]
    return (1, root)  # type: ignore[return-value]


def reflect(datum: CartanDatum, i: int, root: Root | SignedRoot) -> SignedRoot:
    """Apply the simple reflection s_i to a (signed) root."""
    sign, coeffs = _as_signed(root)
    pair = 0
    for j in datum.vertices:
        if coeffs[j - 1]:
            pair += datum.cartan(i, j) * coeffs[j - 1]
    out = list(coeffs)
    out[i - 1] -= pair
    if any(c < 0 for c in out):
        # a root vector is never mixed-sign, so this is the negative of a root
        return (-sign, tuple(-c for c in out))
    return (sign, tuple(out))


def apply_word(datum: CartanDatum, word: WeylWord, root: Root | SignedRoot) -> SignedRoot:
    """Apply a product of simple reflections; the last letter acts first."""
    current = _as_signed(root)
    for i in reversed(word):
        current = reflect(datum, i, current)
    return current


@lru_cache(maxsize=None)
def enumerate_positive_roots(datum: CartanDatum) -> frozenset[Root]:
    """All positive roots, by closing the simple roots under reflections.

    Breadth-first: starting from the simple roots, keep every s_i-image
    that stays positive.  The result is checked against the classical
    count for the type.
    """
    found: set[Root] = {datum.simple_root(i) for i in datum.vertices}
    frontier = list(found)
    while frontier:
        nxt = []
        for root in frontier:
            for i in datum.vertices:
                sign, image = reflect(datum, i, root)
                if sign > 0 and image not in found:
                    found.add(image)
                    nxt.append(image)
        frontier = nxt
    if len(found) != datum.num_positive_roots:
        raise RootSystemError(
            f"positive-root closure gave {len(found)} roots, "
            f"expected {datum.num_positive_roots}"
        )
    return frozenset(found)


def is_positive_root(datum: CartanDatum, coeffs: Root) -> bool:
    return coeffs in enumerate_positive_roots(datum)


def ht(root: Root) -> int:
    return sum(root)


def supp_ge(root: Root, k: int) -> frozenset[int]:
    """Vertices whose simple-root coefficient is at least k."""
    return frozenset(i + 1 for i, c in enumerate(root) if c >= k)


def mul(root: Root) -> int:
    return max(root)


def root_stats(root: Root, k: int = 1) -> tuple[int, frozenset[int], int]:
    """(height, support at threshold k, multiplicity) of a positive root."""
    return ht(root), supp_ge(root, k), mul(root)


def longest_element_star(datum: CartanDatum) -> dict[int, int]:
    """The diagram involution i -> i* with w0(alpha_i) = -alpha_{i*}."""
    n = datum.rank
    if datum.diagram_type == "A":
        return {i: n + 1 - i for i in datum.vertices}
    star = {i: i for i in range(1, n - 1)}
    if n % 2 == 0:
        star[n - 1] = n - 1
        star[n] = n
    else:
        star[n - 1] = n
        star[n] = n - 1
    return star


def is_reduced(datum: CartanDatum, word: WeylWord) -> bool:
    """A word is reduced iff its length equals the inversion count of its product."""
    inversions = 0
    for root in enumerate_positive_roots(datum):
        sign, _ = apply_word(datum, word, root)
        if sign < 0:
            inversions += 1
    return inversions == len(word)


# --- epsilon forms (type D) -------------------------------------------------

@dataclass(frozen=True, order=True)
class EpsilonForm:
    """A type-D positive root written as e_a + sign(b)*e_|b|, with a < |b| <= n."""

    a: int
    b_signed: int

    def __str__(self) -> str:
        return f"<{self.a},{self.b_signed}>"

    @property
    def summands(self) -> tuple[int, int]:
        """Signed summand indices (+a, +-b)."""
        return (self.a, self.b_signed)


def epsilon_coords(datum: CartanDatum, root: Root) -> tuple[int, ...]:
    """Coordinates of a root in the orthonormal e-basis (type D)."""
    if datum.diagram_type != "D":
        raise RootSystemError("epsilon coordinates are defined for type D only")
    n = datum.rank
    e = [0] * n
    for i in range(1, n):  # alpha_i = e_i - e_{i+1}
        e[i - 1] += root[i - 1]
        e[i] -= root[i - 1]
    e[n - 2] += root[n - 1]  # alpha_n = e_{n-1} + e_n
    e[n - 1] += root[n - 1]
    return tuple(e)


@lru_cache(maxsize=None)
def epsilon_form(datum: CartanDatum, root: Root) -> EpsilonForm:
    """The unique presentation e_a +- e_b of a type-D positive root."""
    e = epsilon_coords(datum, root)
    support = [(i + 1, c) for i, c in enumerate(e) if c]
    if len(support) != 2 or support[0][1] != 1 or abs(support[1][1]) != 1:
        raise RootSystemError(f"{root} is not a positive root of type D_{datum.rank}")
    (a, _), (b, cb) = support
    return EpsilonForm(a, cb * b)


def root_from_epsilon(datum: CartanDatum, eps: EpsilonForm) -> Root:
    """Inverse of epsilon_form."""
    if datum.diagram_type != "D":
        raise RootSystemError("epsilon forms are defined for type D only")
    n = datum.rank
    a, b = eps.a, abs(eps.b_signed)
    if not (1 <= a < b <= n):
        raise RootSystemError(f"bad epsilon form {eps}")
    coeffs = [0] * n
    if eps.b_signed < 0:  # e_a - e_b = alpha_a + ... + alpha_{b-1}
        for k in range(a, b):
            coeffs[k - 1] += 1
    elif b == n:  # e_a + e_n
        for k in range(a, n - 1):
            coeffs[k - 1] += 1
        coeffs[n - 1] += 1
    else:  # e_a + e_b with b < n
        for k in range(a, b):
            coeffs[k - 1] += 1
        for k in range(b, n - 1):
            coeffs[k - 1] += 2
        coeffs[n - 2] += 1
        coeffs[n - 1] += 1
    root = tuple(coeffs)
    if not is_positive_root(datum, root):
        raise RootSystemError(f"bad epsilon form {eps}")
    return root


def summand_indices(datum: CartanDatum, root: Root) -> tuple[int, int]:
    """Signed summands (+a, +-b) of a type-D positive root."""
    return epsilon_form(datum, root).summands


def carries_summand(datum: CartanDatum, root: Root, signed_index: int) -> bool:
    """Whether e_{|s|} (s > 0) or -e_{|s|} (s < 0) is a summand of the root."""
    eps = epsilon_form(datum, root)
    return signed_index == eps.a or signed_index == eps.b_signed


# --- parsing and formatting -------------------------------------------------

_ANGLE_RE = re.compile(r"^<\s*(\d+)\s*,\s*(-?\d+)\s*>$")
_EPS_RE = re.compile(r"^e(\d+)\s*([+-])\s*e(\d+)$")
_BRACKET_RE = re.compile(r"^\[([\d,\s]*)\]$")


def parse_root(datum: CartanDatum, text: str) -> Root:
    """Parse `[1,2,1,1]`, `e1+e2` / `e1-e3`, or `<1,-4>` into a positive root."""
    text = text.strip()
    m = _BRACKET_RE.match(text)
    if m:
        parts = [p.strip() for p in m.group(1).split(",") if p.strip()]
        coeffs = tuple(int(p) for p in parts)
        if len(coeffs) != datum.rank:
            raise RootSystemError(
                f"expected {datum.rank} coefficients, got {len(coeffs)}"
            )
        if not is_positive_root(datum, coeffs):
            raise RootSystemError(f"{text} is not a positive root")
        return coeffs
    m = _ANGLE_RE.match(text)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return root_from_epsilon(datum, EpsilonForm(a, b))
    m = _EPS_RE.match(text)
    if m:
        a, sign, b = int(m.group(1)), m.group(2), int(m.group(3))
        b_signed = b if sign == "+" else -b
        return root_from_epsilon(datum, EpsilonForm(a, b_signed))
    raise RootSystemError(f"cannot parse root {text!r}")


def format_root(datum: CartanDatum, root: Root) -> str:
    """Angle form for type D, coefficient vector for type A."""
    if datum.diagram_type == "D":
        return str(epsilon_form(datum, root))
    return "[" + ",".join(str(c) for c in root) + "]"
