import pytest

from arquiver import ar_quiver, orders
from arquiver import root_system as rs
from arquiver.orders import OrderError, Verdict
from arquiver.quiver import is_adapted, make_height_function, parse_arrow_spec
from arquiver.root_system import CartanDatum

from conftest import EXAMPLE1_ORDERS


def angle(datum, root):
    eps = rs.epsilon_form(datum, root)
    return (eps.a, eps.b_signed)


def test_order_from_word_d4(d4):
    word = (1, 2, 3, 1, 2, 4, 1, 2, 3, 1, 2, 4)
    order = orders.order_from_word(d4, word)
    assert len(order) == 12
    assert set(order.roots) == rs.enumerate_positive_roots(d4)


def test_order_from_word_a2():
    a2 = CartanDatum("A", 2)
    order = orders.order_from_word(a2, (1, 2, 1))
    assert order.roots == ((1, 0), (1, 1), (0, 1))


def test_order_from_word_rejects_bad_input(d4):
    with pytest.raises(OrderError):
        orders.order_from_word(d4, (1, 2, 3))
    with pytest.raises(OrderError):
        orders.order_from_word(d4, (1,) * 12)


def test_canonical_readings_match_published_lists(example1_ar, d4):
    for tag, expected in EXAMPLE1_ORDERS.items():
        order = orders.canonical_reading(example1_ar, tag)
        assert [angle(d4, r) for r in order.roots] == expected
    firsts = {
        orders.canonical_reading(example1_ar, tag).roots[0]
        for tag in ("U1", "U2", "L1", "L2")
    }
    assert firsts == {example1_ar.root_at[(3, 0)]}


def test_canonical_reading_unknown_strategy(example1_ar):
    with pytest.raises(OrderError):
        orders.canonical_reading(example1_ar, "X9")


def test_all_readings_are_adapted_linear_extensions(example1_ar):
    count = 0
    for order in orders.all_readings(example1_ar):
        count += 1
        assert is_adapted(order.word, example1_ar.quiver)
        for coord in example1_ar.root_at:
            below = example1_ar.descendants(coord)
            for other in below:
                alpha = example1_ar.root_at[other]
                beta = example1_ar.root_at[coord]
                assert order.index(alpha) < order.index(beta)
        if count > 5:
            break


def test_readings_equal_commutation_class(example1_ar):
    words = {order.word for order in orders.all_readings(example1_ar)}
    seed = orders.canonical_reading(example1_ar, "U1").word
    assert words == orders.commutation_class(example1_ar.datum, seed)


def test_commutation_class_basics(d4):
    assert orders.commutation_class(d4, (1, 3)) == {(1, 3), (3, 1)}
    assert orders.commutation_class(d4, (2, 3)) == {(2, 3)}


def test_pairs_of_longest_root(example1_ar, d4):
    gamma = rs.parse_root(d4, "e1+e2")
    pairs = orders.pairs_of(example1_ar, gamma)
    as_angles = {
        frozenset((angle(d4, a), angle(d4, b))) for a, b in pairs
    }
    assert as_angles == {
        frozenset({(1, -4), (2, 4)}),
        frozenset({(1, 3), (2, -3)}),
        frozenset({(1, -3), (2, 3)}),
        frozenset({(1, 4), (2, -4)}),
    }
    assert len(pairs) == rs.ht(gamma) - 1


def test_pairs_of_small_root(example1_ar, d4):
    gamma = (1, 1, 0, 0)  # alpha_1 + alpha_2
    pairs = orders.pairs_of(example1_ar, gamma)
    assert len(pairs) == 1
    assert set(pairs[0]) == {d4.simple_root(1), d4.simple_root(2)}
    with pytest.raises(OrderError):
        orders.pairs_of(example1_ar, d4.simple_root(1))


def test_pair_count_formula_holds(example1_ar):
    for gamma in example1_ar.phi:
        if rs.ht(gamma) < 2:
            continue
        assert len(orders.pairs_of(example1_ar, gamma)) == rs.ht(gamma) - 1


def test_classify_longest_root_pairs(example1_ar, d4):
    gamma = rs.parse_root(d4, "e1+e2")
    verdicts = {}
    for pair in orders.pairs_of(example1_ar, gamma):
        pv = orders.classify_pair(example1_ar, gamma, pair)
        verdicts[frozenset((angle(d4, pv.alpha), angle(d4, pv.beta)))] = pv
    nonmin = verdicts[frozenset({(1, 4), (2, -4)})]
    assert nonmin.verdict is Verdict.NON_MINIMAL
    wa, wb = nonmin.witness
    assert example1_ar.prec(nonmin.alpha, wa) and example1_ar.prec(wb, nonmin.beta)
    assert verdicts[frozenset({(1, 3), (2, -3)})].verdict is Verdict.MINIMAL
    minimal_count = sum(
        pv.verdict is Verdict.MINIMAL for pv in verdicts.values()
    )
    assert minimal_count == 3


def test_multiplicity_free_roots_have_only_minimal_pairs(example1_ar):
    for gamma in example1_ar.phi:
        if rs.ht(gamma) < 2 or rs.mul(gamma) >= 2:
            continue
        for pair in orders.pairs_of(example1_ar, gamma):
            pv = orders.classify_pair(example1_ar, gamma, pair)
            assert pv.verdict is Verdict.MINIMAL
            assert pv.order_tag in ("U1", "U2", "L1", "L2")


def test_minimal_wrt_positions(example1_ar, d4):
    gamma = rs.parse_root(d4, "e1+e2")
    u1 = orders.canonical_reading(example1_ar, "U1")
    pair = (rs.parse_root(d4, "<1,-4>"), rs.parse_root(d4, "<2,4>"))
    assert orders.minimal_wrt(u1, pair, gamma)
    bad = (rs.parse_root(d4, "<1,4>"), rs.parse_root(d4, "<2,-4>"))
    assert not orders.minimal_wrt(u1, bad, gamma)


def test_classify_rejects_non_pair(example1_ar, d4):
    gamma = rs.parse_root(d4, "e1+e2")
    with pytest.raises(OrderError):
        orders.classify_pair(example1_ar, gamma, (d4.simple_root(1), d4.simple_root(2)))


def test_oracle_agrees_on_example1(example1_ar):
    for gamma in sorted(example1_ar.phi):
        if rs.ht(gamma) < 2:
            continue
        for pair in orders.pairs_of(example1_ar, gamma):
            fast = orders.classify_pair(example1_ar, gamma, pair).verdict
            slow = orders.oracle_classify(example1_ar, gamma, pair).verdict
            assert fast == slow


def test_non_adapted_word_pair_never_minimal(d4):
    word = (1, 2, 3, 1, 2, 4, 1, 2, 3, 1, 2, 4)
    alpha = (0, 1, 1, 0)
    beta = d4.simple_root(4)
    gamma = (0, 1, 1, 1)
    for other in orders.commutation_class(d4, word):
        order = orders.order_from_word(d4, other)
        assert not orders.minimal_wrt(order, (alpha, beta), gamma)


def test_w0_word_from_reading_negates_simples(example1_ar, d4):
    word = orders.canonical_reading(example1_ar, "U1").word
    star = rs.longest_element_star(d4)
    for i in d4.vertices:
        sign, image = rs.apply_word(d4, word, d4.simple_root(i))
        assert sign == -1 and image == d4.simple_root(star[i])


def test_type_a_classifier_flags_unvalidated():
    a3 = CartanDatum("A", 3)
    quiver = parse_arrow_spec(a3, "1>2,2>3")
    ar = ar_quiver.build(quiver, make_height_function(quiver, 3, 0))
    gamma = (1, 1, 0)
    (pair,) = orders.pairs_of(ar, gamma)
    pv = orders.classify_pair(ar, gamma, pair)
    assert pv.validated is False
    # the oracle can confirm type-A verdicts directly
    assert orders.oracle_classify(ar, gamma, pair).verdict == pv.verdict


def test_type_d_classifier_is_validated(example1_ar, d4):
    gamma = rs.parse_root(d4, "e1+e2")
    for pair in orders.pairs_of(example1_ar, gamma):
        assert orders.classify_pair(example1_ar, gamma, pair).validated is True
