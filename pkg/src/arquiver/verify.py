"""Exhaustive theorem harness over all orientations at small rank.

Every check is a pure function returning None on success or a short
counterexample string.  The runner owns all iteration: per-orientation
checks sweep the 2^(n-1) orientations of each rank (height anchored at
vertex n = 0), global checks run once.  Reports are byte-stable across
worker counts because records are merged by (rank, orientation, check).
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import ar_quiver, orders, qaffine
from . import root_system as rs
from .ar_quiver import ARQuiver
from .quiver import (
    DynkinQuiver,
    VertexClass,
    all_orientations,
    classify_vertex,
    is_adapted,
    make_height_function,
)
from .root_system import CartanDatum


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    suite: str
    rank: Optional[int]
    orientation: Optional[str]
    status: str  # "pass" | "fail"
    counterexample: Optional[str]
    elapsed: float


@dataclass
class VerifyReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status != "pass"]

    def to_json(self) -> str:
        return json.dumps([asdict(r) for r in self.records], indent=2)

    def summary(self) -> str:
        total = len(self.records)
        bad = len(self.failures())
        return f"{total - bad}/{total} checks passed"


# --- structure checks -------------------------------------------------------------

def check_vertex_range(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    roots = rs.enumerate_positive_roots(datum)
    if set(ar.phi) != set(roots):
        return "vertex labels are not a bijection with the positive roots"
    for i in datum.vertices:
        expected = {
            p for p in range(ar.xi[i - 1] - 2 * ar.m[i - 1], ar.xi[i - 1] + 1, 2)
        }
        actual = {p for (lvl, p) in ar.root_at if lvl == i}
        if expected != actual:
            return f"level {i} columns {sorted(actual)} != {sorted(expected)}"
    return None


def check_nakayama(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    star = rs.longest_element_star(datum)
    h = datum.coxeter_number
    for i in datum.vertices:
        lhs = ar.xi[star[i] - 1] - 2 * ar.m[star[i] - 1]
        rhs = ar.xi[i - 1] - h + 2
        if lhs != rhs:
            return f"level {i}: xi_(i*) - 2m_(i*) = {lhs} != xi_i - h + 2 = {rhs}"
    return None


def check_mesh_additivity(ar: ARQuiver) -> Optional[str]:
    for (i, p), root in ar.root_at.items():
        prev = ar.root_at.get((i, p - 2))
        if prev is None:
            continue
        mesh = [0] * ar.rank
        for src in ar.in_arrows((i, p)):
            if (src, (i, p)) not in ar.arrows:
                continue
            for idx, c in enumerate(ar.root_at[src]):
                mesh[idx] += c
        if tuple(mesh) != tuple(a + b for a, b in zip(root, prev)):
            return f"mesh fails at ({i},{p})"
    return None


def check_arrow_rule(ar: ARQuiver) -> Optional[str]:
    for a, b in ar.arrows:
        if b[1] != a[1] + 1 or not ar.datum.adjacent(a[0], b[0]):
            return f"arrow {a}->{b} malformed"
    expected = set()
    for (i, p) in ar.root_at:
        for j in ar.datum.neighbors(i):
            if (j, p + 1) in ar.root_at:
                expected.add(((i, p), (j, p + 1)))
    if expected != set(ar.arrows):
        extra = set(ar.arrows) - expected
        missing = expected - set(ar.arrows)
        return f"arrow set off: extra {sorted(extra)}, missing {sorted(missing)}"
    return None


def check_simple_root_coords(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    n = ar.rank
    star = rs.longest_element_star(datum)
    for k in datum.vertices:
        actual = ar.coord_of(datum.simple_root(k))
        cls = classify_vertex(ar.quiver, k)
        if cls is VertexClass.SOURCE:
            expected = (k, ar.xi[k - 1])
        elif cls is VertexClass.SINK:
            ks = star[k]
            expected = (ks, ar.xi[ks - 1] - 2 * ar.m[ks - 1])
        elif cls is VertexClass.LEFT_INTERMEDIATE:
            expected = (1, ar.xi[k - 1] - k + 1)
        elif cls is VertexClass.RIGHT_INTERMEDIATE:
            expected = (1, ar.xi[k - 1] - 2 * n + k + 3)
        else:
            if k != n - 2:
                return f"vertex {k} classified OTHER away from the branch vertex"
            incoming = set(ar.quiver.points_into(k))
            outgoing = set(ar.quiver.points_out_of(k))
            spin = {n - 1, n}
            if n - 3 in incoming:
                (a,) = outgoing
                expected = (star[a], ar.xi[k - 1] - 2 * n + 5)
            else:
                (a,) = incoming & spin
                expected = (a, ar.xi[k - 1] - 1)
        if actual != expected:
            return f"alpha_{k} at {actual}, expected {expected} ({cls.value})"
    return None


def check_arrow_pairing(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    for src, dst in ar.arrows:
        value = datum.pairing(ar.root_at[dst], ar.root_at[src])
        if value != 1:
            return f"arrow {src}->{dst} has pairing {value}"
    return None


def check_range_lemma(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    for i in datum.vertices:
        for j in datum.vertices:
            d = datum.distance(i, j)
            for p in (ar.xi[j - 1] - d, ar.xi[j - 1] - 2 * ar.m[j - 1] + d):
                if (i, p) not in ar.root_at:
                    return f"({i},{p}) missing for (i,j)=({i},{j})"
    return None


def check_m_values(ar: ARQuiver) -> Optional[str]:
    n = ar.rank
    for i in range(1, n - 1):
        if ar.m[i - 1] != n - 2:
            return f"m_{i} = {ar.m[i - 1]} != {n - 2}"
    mn1, mn = ar.m[n - 2], ar.m[n - 1]
    if mn1 + mn != 2 * n - 4 or min(mn1, mn) < n - 3:
        return f"spin depths ({mn1},{mn}) break m_(n-1)+m_n = 2n-4"
    xi_n1, xi_n = ar.xi[n - 2], ar.xi[n - 1]
    if n % 2 and xi_n == xi_n1 + 2:
        expected = (n - 3, n - 1)
    elif n % 2 and xi_n1 == xi_n + 2:
        expected = (n - 1, n - 3)
    else:
        expected = (n - 2, n - 2)
    if (mn1, mn) != expected:
        return f"spin depths ({mn1},{mn}) != {expected} for xi=({xi_n1},{xi_n})"
    return None


def check_level_pair_sums(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    n = ar.rank
    t = ar.t_index
    for p in sorted({q for (lvl, q) in ar.root_at if lvl == n - 1}):
        result = ar.level_pair_sum(p)
        if result is None:
            continue
        a, (upper, lower) = result
        eps = {rs.epsilon_form(datum, upper), rs.epsilon_form(datum, lower)}
        expected = {rs.EpsilonForm(a, t), rs.EpsilonForm(a, -t)}
        if a > n - 1 or eps != expected:
            return f"column {p}: pair {sorted(map(str, eps))} != <{a},+-{t}>"
    return None


def check_triangle(ar: ARQuiver) -> Optional[str]:
    n = ar.rank
    spin = [c for c in ar.root_at if c[0] in (n - 1, n)]
    for ca in spin:
        for cb in spin:
            gap = cb[1] - ca[1]
            if gap <= 0 or gap % 2:
                continue
            k = gap // 2
            if (ca[0] - cb[0]) % 2 != (k - 1) % 2:
                continue
            try:
                ar.triangle_apex(ca, cb)
            except ar_quiver.ARQuiverError as exc:
                return f"triangle at {ca},{cb}: {exc}"
    return None


def check_swing_shapes(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    n = ar.rank
    try:
        swings = ar.swings()
    except ar_quiver.ARQuiverError as exc:
        return str(exc)
    if [s.shared_index for s in swings] != list(range(1, n - 1)):
        return f"swing indices {[s.shared_index for s in swings]} != 1..{n - 2}"
    for swing in swings:
        a = swing.shared_index
        carriers = {
            root
            for root in ar.phi
            if rs.carries_summand(datum, root, a)
        }
        members = {ar.root_at[c] for c in swing.coords}
        if members != carriers:
            return f"{a}-swing misses carriers {carriers - members} or adds extras"
        if len(members) != 2 * n - a - 1:
            return f"{a}-swing has {len(members)} roots, expected {2 * n - a - 1}"
        if datum.simple_root(a) not in members:
            return f"{a}-swing does not contain alpha_{a}"
        s_start = swing.s_part[0][0]
        n_end = swing.n_part[-1][0]
        if not ((s_start == a and n_end == 1) or (s_start == 1 and n_end == a)):
            return f"{a}-swing shape ({s_start}..fork..{n_end}) is not one of the two"
    return None


def check_shallow_paths(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    n = ar.rank
    spin_sinks = ar.quiver.is_sink(n - 1) and ar.quiver.is_sink(n)
    spin_sources = ar.quiver.is_source(n - 1) and ar.quiver.is_source(n)
    delta = 1 if (spin_sinks or spin_sources) else 0
    seen_classes: set[int] = set()
    for path in ar.sectional_paths():
        if not path.shallow:
            continue
        levels = [c[0] for c in path.coords]
        if min(levels) != 1:
            return f"shallow {path.kind}-path {path.coords} misses level 1"
        shared = None
        for c in path.coords:
            eps = rs.epsilon_form(datum, ar.root_at[c])
            mine = {eps.b_signed} if eps.b_signed < 0 else set()
            shared = mine if shared is None else shared & mine
        if not shared or len(shared) != 1:
            return f"shallow path {path.coords} shares no single -e_k summand"
        k = -shared.pop()
        if k > n - 2 + delta:
            return f"shallow path shares -e_{k}, beyond n-2+{delta}"
        if k in seen_classes:
            return f"two shallow paths share -e_{k}"
        seen_classes.add(k)
        carriers = {
            root for root in ar.phi if rs.carries_summand(datum, root, -k)
        }
        members = {ar.root_at[c] for c in path.coords}
        if members != carriers:
            return f"shallow -e_{k} path does not hold the whole class"
    return None


def _summand_class_path(ar: ARQuiver, signed: int):
    """The maximal broom holding every root with the given signed summand."""
    carriers = {
        ar.coord_of(root)
        for root in ar.phi
        if rs.carries_summand(ar.datum, root, signed)
    }
    for path in ar.sectional_paths():
        if carriers <= set(path.coords):
            return path
    return None


def check_sigma_kappa(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    n = ar.rank
    sigma_roots, sigma_idx = ar.sigma()
    if len(sigma_roots) != n - 2:
        return f"|sigma| = {len(sigma_roots)} != {n - 2}"
    cols = [ar.column_of(r) for r in sigma_roots]
    if any(cols[k] - cols[k + 1] != 2 for k in range(len(cols) - 1)):
        return f"sigma columns {cols} do not descend by 2"
    if sorted(sigma_idx) != list(range(1, n - 1)):
        return f"sigma swing indices {sigma_idx} are not 1..{n - 2}"
    valley = sigma_idx.index(1)
    down, up = sigma_idx[: valley + 1], sigma_idx[valley:]
    if down != sorted(down, reverse=True) or up != sorted(up):
        return f"sigma indices {sigma_idx} are not reverse-unimodal"
    swings = {s.shared_index: s for s in ar.swings()}
    for pos, (root, idx) in enumerate(zip(sigma_roots, sigma_idx)):
        if ar.coord_of(root) not in swings[idx].coords:
            return f"sigma_{pos + 1} not in its {idx}-swing"
        s_len, n_len = len(swings[idx].s_part), len(swings[idx].n_part)
        if pos < valley and not n_len < s_len:
            return f"{idx}-swing left of the valley has N-part not shorter"
        if pos > valley and not s_len < n_len:
            return f"{idx}-swing right of the valley has S-part not shorter"

    kappa_roots, kappa_idx, fold = ar.kappa()
    if len(kappa_roots) != n - 1:
        return f"|kappa| = {len(kappa_roots)} != {n - 1}"
    cols = [ar.column_of(r) for r in kappa_roots]
    if any(cols[k] - cols[k + 1] != 2 for k in range(len(cols) - 1)):
        return f"kappa columns {cols} do not descend by 2"
    tp = ar.t_prime_index
    expected_idx = set(range(-2, -(n - 2) - 1, -1)) | {tp, -tp}
    if set(kappa_idx) != expected_idx or len(kappa_idx) != len(expected_idx):
        return f"kappa summand indices {kappa_idx} != {sorted(expected_idx)}"
    mags = [abs(j) for j in kappa_idx]
    if not (mags[fold - 1] == mags[fold - 2] == tp):
        return f"kappa fold {fold} does not sit on the +-{tp} pair"
    left, right = mags[: fold - 1], mags[fold - 1:]
    if left != sorted(left) or right != sorted(right, reverse=True):
        return f"kappa magnitudes {mags} are not a tent around position {fold}"
    total = [0] * n
    for root in kappa_roots:
        for idx2, c in enumerate(root):
            total[idx2] += c
    e = rs.epsilon_coords(datum, tuple(total))
    if [c for c in e if c] != [2] or e[0] != 2:
        return f"sum of kappa is not 2*e_1 (epsilon coords {e})"
    partial = [0] * n
    for root in kappa_roots[: fold - 1]:
        for idx2, c in enumerate(root):
            partial[idx2] += c
    head = rs.epsilon_coords(datum, tuple(partial))
    tail = tuple(a - b for a, b in zip(e, head))
    want = {
        tuple(1 if i in (0, tp - 1) else 0 for i in range(n)),
        tuple(1 if i == 0 else (-1 if i == tp - 1 else 0) for i in range(n)),
    }
    if {head, tail} != want:
        return f"kappa partial sums {head}, {tail} are not e_1 +- e_{tp}"
    if ar.quiver.is_sink(1):
        segment = kappa_roots[: n - 2]
    else:
        segment = kappa_roots[1:]
    seg_sum = [0] * n
    for root in segment:
        for idx2, c in enumerate(root):
            seg_sum[idx2] += c
    eps_sum = rs.epsilon_coords(datum, tuple(seg_sum))
    if eps_sum != tuple(1 if i in (0, 1) else 0 for i in range(n)):
        return f"kappa segment sum {eps_sum} is not e_1 + e_2"
    for pos, (root, j) in enumerate(zip(kappa_roots, kappa_idx), start=1):
        path = _summand_class_path(ar, j)
        carriers = sum(
            1 for other in ar.phi if rs.carries_summand(datum, other, j)
        )
        if carriers <= 1:
            continue
        if path is None:
            return f"kappa_{pos} class {j} lies on no single broom"
        want_kind = "S" if pos <= fold - 1 else "N"
        if path.kind != want_kind:
            return f"kappa_{pos} class {j} is {path.kind}-sectional, wanted {want_kind}"
    return None


def check_longest_root(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    n = ar.rank
    longest = rs.root_from_epsilon(datum, rs.EpsilonForm(1, 2))
    coord = ar.coord_of(longest)
    if coord != ar.longest_root_coord():
        return f"e_1+e_2 at {coord}, formula gives {ar.longest_root_coord()}"
    swings = {s.shared_index: s for s in ar.swings()}
    gap = abs(swings[1].fork[0][1] - swings[2].fork[0][1])
    if gap != 2:
        return f"1-swing and 2-swing forks are {gap} columns apart"
    return None


def check_nfree_region(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    n = ar.rank
    hi, lo, inside = ar.nfree_region()
    if hi - lo != 2 * (n - 3):
        return f"window extremes ({hi},{lo}) differ by {hi - lo} != {2 * (n - 3)}"
    for root, coord in ar.phi.items():
        if rs.mul(root) >= 2 and not inside(coord):
            return f"tall root {root} at {coord} escapes the window"
    for path in ar.sectional_paths():
        tall = [c for c in path.coords if rs.mul(ar.root_at[c]) >= 2]
        flat = [
            c
            for c in path.coords
            if rs.mul(ar.root_at[c]) == 1 and c[0] < n - 1
        ]
        for cf in flat:
            for ct in tall:
                if cf[0] >= ct[0]:
                    return (
                        f"multiplicity-free {cf} not below non-free {ct} "
                        f"on one sectional path"
                    )
    return None


# --- order checks --------------------------------------------------------------

def check_canonical_orders(ar: ARQuiver) -> Optional[str]:
    for tag in ("U1", "U2", "L1", "L2"):
        try:
            order = orders.canonical_reading(ar, tag)
        except orders.OrderError as exc:
            return f"{tag}: {exc}"
        if not is_adapted(order.word, ar.quiver):
            return f"{tag} word is not adapted"
    return None


def check_compatibility(ar: ARQuiver) -> Optional[str]:
    readings = {tag: orders.canonical_reading(ar, tag) for tag in ("U1", "U2", "L1", "L2")}
    roots = sorted(ar.phi)
    for alpha in roots:
        below = ar.descendants(ar.coord_of(alpha))
        for coord in below:
            beta = ar.root_at[coord]
            for tag, order in readings.items():
                if not order.index(beta) < order.index(alpha):
                    return f"{tag}: {beta} should precede {alpha}"
    return None


def check_pair_counts(ar: ARQuiver) -> Optional[str]:
    for gamma in sorted(ar.phi):
        if rs.ht(gamma) < 2:
            continue
        pairs = orders.pairs_of(ar, gamma)
        if len(pairs) != rs.ht(gamma) - 1:
            return f"{gamma} has {len(pairs)} pairs, expected ht-1 = {rs.ht(gamma) - 1}"
        verdicts = [orders.classify_pair(ar, gamma, pair).verdict for pair in pairs]
        minimal = sum(v == orders.Verdict.MINIMAL for v in verdicts)
        nonmin = len(verdicts) - minimal
        want_min = len(rs.supp_ge(gamma, 1)) - 1
        want_non = len(rs.supp_ge(gamma, 2))
        if (minimal, nonmin) != (want_min, want_non):
            return (
                f"{gamma}: ({minimal} minimal, {nonmin} non-minimal), "
                f"expected ({want_min},{want_non})"
            )
    return None


def check_nonfree_counts(ar: ARQuiver) -> Optional[str]:
    datum = ar.datum
    n = ar.rank
    for gamma in sorted(ar.phi):
        if rs.mul(gamma) < 2:
            continue
        eps = rs.epsilon_form(datum, gamma)
        b = eps.b_signed
        nonmin = sum(
            orders.classify_pair(ar, gamma, pair).verdict == orders.Verdict.NON_MINIMAL
            for pair in orders.pairs_of(ar, gamma)
        )
        if b < 0 or b > n - 2 or nonmin != n - b - 1:
            return f"{gamma} = <{eps.a},{b}>: {nonmin} non-minimal != {n - b - 1}"
    return None


def check_readings_equal_class(ar: ARQuiver) -> Optional[str]:
    reading_words = {order.word for order in orders.all_readings(ar)}
    seed = orders.canonical_reading(ar, "U1").word
    cls = orders.commutation_class(ar.datum, seed)
    if reading_words != cls:
        return (
            f"{len(reading_words)} readings vs {len(cls)} words in the class"
        )
    return None


def check_oracle_agreement(ar: ARQuiver) -> Optional[str]:
    for gamma in sorted(ar.phi):
        if rs.ht(gamma) < 2:
            continue
        for pair in orders.pairs_of(ar, gamma):
            fast = orders.classify_pair(ar, gamma, pair).verdict
            slow = orders.oracle_classify(ar, gamma, pair).verdict
            if fast != slow:
                return f"{gamma} pair {pair}: classifier {fast.value}, oracle {slow.value}"
    return None


NON_ADAPTED_WORD = (1, 2, 3, 1, 2, 4, 1, 2, 3, 1, 2, 4)


def check_non_adapted_word() -> Optional[str]:
    datum = CartanDatum("D", 4)
    word = NON_ADAPTED_WORD
    if not rs.is_reduced(datum, word):
        return "the 12-letter word is not reduced"
    for quiver in all_orientations(datum):
        if is_adapted(word, quiver):
            return f"word is adapted to {quiver.spec_string()}"
    alpha = (0, 1, 1, 0)  # alpha_2 + alpha_3
    beta = datum.simple_root(4)
    gamma = tuple(a + b for a, b in zip(alpha, beta))
    for other in orders.commutation_class(datum, word):
        order = orders.order_from_word(datum, other)
        if orders.minimal_wrt(order, (alpha, beta), gamma):
            return f"pair minimal under the word {other}"
    return None


# --- quantum-affine checks --------------------------------------------------------

def check_dorey_d1_coverage(ar: ARQuiver) -> Optional[str]:
    n = ar.rank
    for gamma in sorted(ar.phi):
        if rs.ht(gamma) < 2:
            continue
        for pair in orders.pairs_of(ar, gamma):
            triple = qaffine.pair_to_triple(ar, gamma, pair)
            verdict = qaffine.dorey_D1(n, triple)
            if not verdict.admissible:
                return f"{gamma} pair {pair} is not Dorey-admissible"
            minimal = (
                orders.classify_pair(ar, gamma, pair).verdict == orders.Verdict.MINIMAL
            )
            if minimal and verdict.case == "ii":
                return f"minimal pair {pair} of {gamma} matched case ii"
            if not minimal and verdict.case != "ii":
                return f"non-minimal pair {pair} of {gamma} matched case {verdict.case}"
    return None


def check_star_transport(ar: ARQuiver) -> Optional[str]:
    n = ar.rank
    folded = n - 1
    for gamma in sorted(ar.phi):
        if rs.ht(gamma) < 2:
            continue
        for pair in orders.pairs_of(ar, gamma):
            if orders.classify_pair(ar, gamma, pair).verdict != orders.Verdict.MINIMAL:
                continue
            t = qaffine.pair_to_triple(ar, gamma, pair)
            si, sx = qaffine.star_map(folded, t.i, t.x)
            sj, sy = qaffine.star_map(folded, t.j, t.y)
            sk, sz = qaffine.star_map(folded, t.k, t.z)
            image = qaffine.HomTriple(si, sx, sj, sy, sk, sz)
            if not qaffine.dorey_D2(folded, image).admissible:
                return f"star image of minimal pair {pair} of {gamma} rejected"
    return None


def check_surj_free_multiplicity(ar: ARQuiver) -> Optional[str]:
    for gamma in sorted(ar.phi):
        if rs.ht(gamma) < 2:
            continue
        for pair in orders.pairs_of(ar, gamma):
            verdict = orders.classify_pair(ar, gamma, pair).verdict
            if not qaffine.multiplicity_theorem_check(ar, gamma, pair, verdict):
                return f"zero multiplicity wrong for pair {pair} of {gamma}"
    return None


def check_sectional_commuting(ar: ARQuiver) -> Optional[str]:
    for path in ar.sectional_paths():
        coords = list(path.coords)
        for x in range(len(coords)):
            for y in range(x + 1, len(coords)):
                alpha = ar.root_at[coords[x]]
                beta = ar.root_at[coords[y]]
                if not qaffine.same_path_commuting_check(ar, alpha, beta):
                    return f"pair {coords[x]}, {coords[y]} on {path.kind}-path has a zero"
    return None


def check_double_zero_correspondence() -> Optional[str]:
    for n in range(3, 9):
        if qaffine.double_zero_set_D1(n + 1) != qaffine.double_zero_set_D2(n):
            return f"double-zero sets disagree at n = {n}"
        independents = set()
        for k in range(1, n + 2):
            for l in range(1, n + 2):
                for root, mult in qaffine.denom_D1(n + 1, k, l).counter().items():
                    if mult == 2 and root.p % 2 == 0 and qaffine.mq(root.p // 2) == root:
                        independents.add((k, l, root.p // 2))
        if independents != set(qaffine.double_zero_set_D1(n + 1)):
            return f"untwisted multiset route disagrees at rank {n + 1}"
        independents = set()
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                for root, mult in qaffine.denom_D2(n, k, l).counter().items():
                    if (
                        mult == 2
                        and root.p % 2 == 0
                        and qaffine.mq2(Fraction(root.p // 2, 2)) == root
                    ):
                        independents.add((k, l, root.p // 2))
        if independents != set(qaffine.double_zero_set_D2(n)):
            return f"twisted multiset route disagrees at n = {n}"
    return None


def check_dorey_ii_in_double_zero() -> Optional[str]:
    for n in range(4, 9):
        zeros = qaffine.double_zero_set_D1(n)
        for i in range(1, n - 1):
            for j in range(1, n - 1):
                k = 2 * n - 2 - i - j
                if i + j < n or not 1 <= k <= n - 2:
                    continue
                if (i, j, i + j) not in zeros:
                    return f"rank {n}: admissible ({i},{j},{k}) misses ({i},{j},{i + j})"
    return None


# --- catalog and runner --------------------------------------------------------

ORIENTATION_CHECKS: dict[str, tuple[str, Callable[[ARQuiver], Optional[str]]]] = {
    "vertex_range": ("structure", check_vertex_range),
    "nakayama": ("structure", check_nakayama),
    "mesh_additivity": ("structure", check_mesh_additivity),
    "arrow_rule": ("structure", check_arrow_rule),
    "simple_root_coords": ("structure", check_simple_root_coords),
    "arrow_pairing": ("structure", check_arrow_pairing),
    "range_lemma": ("structure", check_range_lemma),
    "m_values": ("structure", check_m_values),
    "level_pair_sums": ("structure", check_level_pair_sums),
    "triangle": ("structure", check_triangle),
    "swing_shapes": ("structure", check_swing_shapes),
    "shallow_paths": ("structure", check_shallow_paths),
    "sigma_kappa": ("structure", check_sigma_kappa),
    "longest_root": ("structure", check_longest_root),
    "nfree_region": ("structure", check_nfree_region),
    "canonical_orders": ("orders", check_canonical_orders),
    "compatibility": ("orders", check_compatibility),
    "pair_counts": ("orders", check_pair_counts),
    "nonfree_counts": ("orders", check_nonfree_counts),
    "readings_equal_class": ("orders", check_readings_equal_class),
    "oracle_agreement": ("orders", check_oracle_agreement),
    "dorey_d1_coverage": ("qaffine", check_dorey_d1_coverage),
    "star_transport": ("qaffine", check_star_transport),
    "surj_free_multiplicity": ("qaffine", check_surj_free_multiplicity),
    "sectional_commuting": ("qaffine", check_sectional_commuting),
}

# ranks at which a per-orientation check is meaningful to brute-force
RANK_LIMITS = {"readings_equal_class": 4, "oracle_agreement": 4}

GLOBAL_CHECKS: dict[str, tuple[str, Callable[[], Optional[str]]]] = {
    "non_adapted_word": ("orders", check_non_adapted_word),
    "double_zero_correspondence": ("qaffine", check_double_zero_correspondence),
    "dorey_ii_in_double_zero": ("qaffine", check_dorey_ii_in_double_zero),
}

SUITES = ("structure", "orders", "qaffine")

_DESCRIPTIONS = {
    "vertex_range": "vertex set is Phi+ spread over columns xi_i - 2m_i .. xi_i",
    "nakayama": "xi_(i*) - 2m_(i*) = xi_i - h + 2 at every level",
    "mesh_additivity": "beta + tau(beta) equals the sum over arrow sources into beta",
    "arrow_rule": "arrows are exactly (i,p)->(j,p+1) for adjacent levels",
    "simple_root_coords": "alpha_k sits where its vertex class predicts",
    "arrow_pairing": "every arrow's endpoints pair to 1 under the root form",
    "range_lemma": "(i, xi_j - d(i,j)) and (i, xi_j - 2m_j + d(i,j)) are vertices",
    "m_values": "m_i = n-2 below the fork; spin depths follow parity of n and xi",
    "level_pair_sums": "same-column spin roots are <a,t>, <a,-t> summing to 2e_a",
    "triangle": "spin pairs with matching parity meet at (n-1-k, (s+l)/2)",
    "swing_shapes": "n-2 maximal swings; the a-swing holds all e_a carriers",
    "shallow_paths": "shallow maximal paths reach level 1 and share one -e_k",
    "sigma_kappa": "sigma swing indices are reverse-unimodal; kappa tents at t'",
    "longest_root": "e_1+e_2 at (n-2, xi_1-n+1 or +3); 1- and 2-swings adjacent",
    "nfree_region": "tall roots stay in the diagonal window below tall spin roots",
    "canonical_orders": "the four canonical readings are convex and adapted",
    "compatibility": "path order implies order in every canonical reading",
    "pair_counts": "ht-1 pairs; minimal = |Supp>=1|-1, non-minimal = |Supp>=2|",
    "nonfree_counts": "e_a + e_b has exactly n-b-1 non-minimal pairs",
    "readings_equal_class": "readings of Gamma_Q = commutation class of one word",
    "oracle_agreement": "dominance classifier matches the all-readings oracle",
    "dorey_d1_coverage": "every pair is Dorey-admissible; case ii iff non-minimal",
    "star_transport": "folded images of minimal pairs pass the twisted rule",
    "surj_free_multiplicity": "zero multiplicity 1 for minimal pairs, 2 otherwise",
    "sectional_commuting": "no denominator zero in either direction along a path",
    "non_adapted_word": "the 12-letter non-adapted word never makes its pair minimal",
    "double_zero_correspondence": "untwisted rank n+1 and twisted n double zeros agree",
    "dorey_ii_in_double_zero": "case-ii data always lands on a double zero",
}


def check_catalog() -> list[dict]:
    """Stable listing of all check ids with suite and description."""
    catalog = []
    for check_id, (suite, _) in ORIENTATION_CHECKS.items():
        catalog.append(
            {"check_id": check_id, "suite": suite, "scope": "orientation",
             "description": _DESCRIPTIONS[check_id]}
        )
    for check_id, (suite, _) in GLOBAL_CHECKS.items():
        catalog.append(
            {"check_id": check_id, "suite": suite, "scope": "global",
             "description": _DESCRIPTIONS[check_id]}
        )
    return sorted(catalog, key=lambda entry: (entry["suite"], entry["check_id"]))


def _run_orientation_task(args) -> list[CheckRecord]:
    rank, mask, suites = args
    datum = CartanDatum("D", rank)
    quiver = DynkinQuiver.from_bitmask(datum, mask)
    xi = make_height_function(quiver, rank, 0)
    records = []
    try:
        ar = ar_quiver.build(quiver, xi)
    except ar_quiver.ARQuiverError as exc:
        return [
            CheckRecord("build", "structure", rank, quiver.spec_string(),
                        "fail", str(exc), 0.0)
        ]
    for check_id, (suite, fn) in ORIENTATION_CHECKS.items():
        if suite not in suites:
            continue
        limit = RANK_LIMITS.get(check_id)
        if limit is not None and rank > limit:
            continue
        start = time.perf_counter()
        message = fn(ar)
        elapsed = time.perf_counter() - start
        records.append(
            CheckRecord(
                check_id,
                suite,
                rank,
                quiver.spec_string(),
                "pass" if message is None else "fail",
                message,
                elapsed,
            )
        )
    return records


def run_suite(
    rank_max: int,
    suites: Optional[set[str]] = None,
    parallelism: int = 1,
) -> VerifyReport:
    """Run the selected suites over every orientation for 4 <= n <= rank_max."""
    if rank_max < 4:
        raise ValueError("rank_max must be at least 4")
    selected = set(SUITES) if not suites else set(suites)
    unknown = selected - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}")
    tasks = [
        (rank, mask, tuple(sorted(selected)))
        for rank in range(4, rank_max + 1)
        for mask in range(1 << (rank - 1))
    ]
    records: list[CheckRecord] = []
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for chunk in pool.map(_run_orientation_task, tasks, chunksize=4):
                records.extend(chunk)
    else:
        for task in tasks:
            records.extend(_run_orientation_task(task))
    for check_id, (suite, fn) in GLOBAL_CHECKS.items():
        if suite not in selected:
            continue
        start = time.perf_counter()
        message = fn()
        elapsed = time.perf_counter() - start
        records.append(
            CheckRecord(check_id, suite, None, None,
                        "pass" if message is None else "fail", message, elapsed)
        )
    records.sort(
        key=lambda r: (r.rank or 0, r.orientation or "", r.check_id)
    )
    return VerifyReport(records)
