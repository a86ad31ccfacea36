import pytest

from arquiver import ar_quiver
from arquiver import root_system as rs
from arquiver.ar_quiver import ARQuiver, ARQuiverError
from arquiver.quiver import all_orientations, make_height_function, parse_arrow_spec
from arquiver.root_system import CartanDatum, EpsilonForm

from conftest import EXAMPLE1_GRID


def eps_of(ar, coord):
    form = rs.epsilon_form(ar.datum, ar.root_at[coord])
    return (form.a, form.b_signed)


def test_example1_grid_exact(example1_ar):
    got = {coord: eps_of(example1_ar, coord) for coord in example1_ar.root_at}
    assert got == EXAMPLE1_GRID
    assert example1_ar.m == (2, 2, 2, 2)
    assert example1_ar.xi == (-2, -1, 0, -2)


def test_d5_spin_depths_split_by_parity():
    d5 = CartanDatum("D", 5)
    quiver = parse_arrow_spec(d5, "1>2,2>3,3>4,5>3")
    xi = make_height_function(quiver, 5, 0)
    assert xi[4] == xi[3] + 2  # xi_5 = xi_4 + 2
    ar = ar_quiver.build(quiver, xi)
    assert ar.m[:3] == (3, 3, 3)
    assert (ar.m[3], ar.m[4]) == (2, 4)


def test_simple_root_coords(example1_ar):
    coords = example1_ar.simple_root_coords()
    assert coords[3] == (3, 0)  # source
    assert coords[1] == (1, -6)  # sink
    assert coords[4] == (4, -6)  # sink
    assert coords[2] == (3, -2)  # mixed branch vertex


def test_left_intermediate_simple_root_position():
    d5 = CartanDatum("D", 5)
    quiver = parse_arrow_spec(d5, "1>2,2>3,3>4,3>5")
    xi = make_height_function(quiver, 5, 0)
    ar = ar_quiver.build(quiver, xi)
    # vertex 2 is a left intermediate: alpha_2 at (1, xi_2 - 1)
    assert ar.coord_of(d5.simple_root(2)) == (1, xi[1] - 1)


def test_level_pair_sum(example1_ar):
    result = example1_ar.level_pair_sum(-4)
    assert result is not None
    a, (upper, lower) = result
    assert a == 1
    assert eps_of(example1_ar, (3, -4)) == (1, 3)
    assert eps_of(example1_ar, (4, -4)) == (1, -3)
    assert example1_ar.level_pair_sum(0) is None
    assert example1_ar.t_index == 3
    assert example1_ar.t_prime_index == 4


def test_level_pair_equal_heights():
    d4 = CartanDatum("D", 4)
    quiver = parse_arrow_spec(d4, "1>2,2>3,2>4")
    xi = make_height_function(quiver, 4, 0)
    ar = ar_quiver.build(quiver, xi)
    assert ar.t_index == 4
    for p in {q for (i, q) in ar.root_at if i == 3}:
        result = ar.level_pair_sum(p)
        if result is None:
            continue
        _, (upper, lower) = result
        forms = {abs(rs.epsilon_form(d4, r).b_signed) for r in (upper, lower)}
        assert forms == {4}


def test_triangle_apex(example1_ar):
    # k = 1 pairs sit at the same spin level, two columns apart
    assert example1_ar.triangle_apex((3, -4), (3, -2)) == (2, -3)
    assert example1_ar.triangle_apex((4, -4), (4, -2)) == (2, -3)
    with pytest.raises(ARQuiverError):
        example1_ar.triangle_apex((3, -4), (3, 0))  # k=2 needs opposite levels
    with pytest.raises(ARQuiverError):
        example1_ar.triangle_apex((3, -4), (4, -2))  # k=1 needs equal levels
    with pytest.raises(ARQuiverError):
        example1_ar.triangle_apex((3, -4), (4, -4))  # same column
    with pytest.raises(ARQuiverError):
        example1_ar.triangle_apex((2, -3), (3, -2))  # not at spin levels


def test_swings_example1(example1_ar):
    swings = example1_ar.swings()
    assert [s.shared_index for s in swings] == [1, 2]
    one = example1_ar.swing_of(1)
    labels = {eps_of(example1_ar, c) for c in one.coords}
    assert labels == {(1, -2), (1, 4), (1, 3), (1, -3), (1, 2), (1, -4)}
    assert len(one.coords) == 2 * 4 - 1 - 1
    two = example1_ar.swing_of(2)
    assert len(two.coords) == 2 * 4 - 2 - 1
    assert two.fork == ((3, -2), (4, -2))


def test_sectional_paths_example1(example1_ar):
    paths = example1_ar.sectional_paths()
    coord_sets = {frozenset(p.coords) for p in paths}
    # the -e4 class runs up the S-diagonal, the +e4 class down the N-diagonal
    assert frozenset({(1, -2), (2, -1), (3, 0)}) in coord_sets
    assert frozenset({(4, -6), (2, -5), (1, -4)}) in coord_sets
    for path in paths:
        assert path.maximal
        assert not path.shallow  # none exist in this small example


def test_sigma_kappa_example1(example1_ar):
    sigma_roots, sigma_idx = example1_ar.sigma()
    assert [eps_of(example1_ar, example1_ar.coord_of(r)) for r in sigma_roots] == [
        (2, -3),
        (1, 3),
    ]
    assert sigma_idx == [2, 1]
    kappa_roots, kappa_idx, fold = example1_ar.kappa()
    assert [example1_ar.column_of(r) for r in kappa_roots] == [-2, -4, -6]
    assert kappa_idx == [-4, 4, -2]
    assert fold == 2
    total = [0] * 4
    for root in kappa_roots:
        for i, c in enumerate(root):
            total[i] += c
    assert rs.epsilon_coords(example1_ar.datum, tuple(total)) == (2, 0, 0, 0)


def test_longest_root_coord(example1_ar):
    gamma = rs.root_from_epsilon(example1_ar.datum, EpsilonForm(1, 2))
    assert example1_ar.coord_of(gamma) == (2, -3)
    assert example1_ar.longest_root_coord() == (2, -3)
    # source case
    d4 = CartanDatum("D", 4)
    quiver = parse_arrow_spec(d4, "1>2,2>3,2>4")
    xi = make_height_function(quiver, 4, 0)
    ar = ar_quiver.build(quiver, xi)
    assert ar.longest_root_coord() == (4 - 2, xi[0] - 4 + 1)
    assert ar.coord_of(rs.root_from_epsilon(d4, EpsilonForm(1, 2))) == (
        ar.longest_root_coord()
    )


def test_prec(example1_ar):
    a = example1_ar.root_at[(3, -2)]  # <2,-3>
    b = example1_ar.root_at[(3, -4)]  # <1,3>
    assert example1_ar.prec(a, b)
    assert not example1_ar.prec(b, a)
    assert not example1_ar.prec(a, a)
    first = example1_ar.root_at[(3, 0)]  # <3,-4>, read first in every order
    assert example1_ar.descendants((3, 0)) == frozenset()
    assert example1_ar.prec(first, example1_ar.root_at[(2, -1)])


def test_nfree_region(example1_ar):
    hi, lo, inside = example1_ar.nfree_region()
    assert (hi, lo) == (-2, -4)
    assert hi - lo == 2 * (4 - 3)
    assert inside((2, -3))  # the only tall root lives here
    assert not inside((1, -2))
    assert not inside((3, -4))


def test_xi_shift_moves_columns(example1_quiver, example1_ar):
    shifted = ar_quiver.build(
        example1_quiver, make_height_function(example1_quiver, 3, 6)
    )
    assert shifted.m == example1_ar.m
    for root, (level, p) in example1_ar.phi.items():
        assert shifted.phi[root] == (level, p + 6)


def test_type_a_build_and_guards():
    a3 = CartanDatum("A", 3)
    quiver = parse_arrow_spec(a3, "1>2,2>3")
    ar = ar_quiver.build(quiver, make_height_function(quiver, 3, 0))
    assert len(ar.root_at) == 6
    with pytest.raises(ARQuiverError):
        ar.swings()
    with pytest.raises(ARQuiverError):
        ar.sigma()
    with pytest.raises(ARQuiverError):
        ar.nfree_region()


def test_json_roundtrip(example1_ar):
    payload = example1_ar.to_json()
    rebuilt = ar_quiver.from_json(payload)
    assert rebuilt.root_at == example1_ar.root_at
    assert rebuilt.arrows == example1_ar.arrows
    assert rebuilt.m == example1_ar.m
    assert rebuilt.xi == example1_ar.xi


def test_json_detects_tampering(example1_ar):
    import json

    payload = example1_ar.to_json_dict()
    payload["m"][0] += 1
    with pytest.raises(ARQuiverError):
        ar_quiver.from_json(json.dumps(payload))


def test_dot_export(example1_ar):
    dot = example1_ar.to_dot()
    assert dot.startswith("digraph")
    assert '"v_3_0" [label="<3,-4> @(3,0)"];' in dot
    assert "rank=same" in dot
    assert '"v_2_-1" -> "v_3_0";' in dot


def test_every_orientation_builds_clean():
    for n in (4, 5):
        datum = CartanDatum("D", n)
        for quiver in all_orientations(datum):
            ar = ar_quiver.build(quiver, make_height_function(quiver, n, 0))
            assert len(ar.root_at) == datum.num_positive_roots
