import pytest

from arquiver import ar_quiver
from arquiver.quiver import make_height_function, parse_arrow_spec
from arquiver.root_system import CartanDatum

# The running example: D4 with arrows 2>1, 3>2, 2>4 and xi_3 = 0.
EXAMPLE1_ARROWS = "2>1,3>2,2>4"

# Every vertex of its AR quiver, (level, column) -> <a,+-b>.
EXAMPLE1_GRID = {
    (1, -6): (1, -2),
    (1, -4): (2, 4),
    (1, -2): (1, -4),
    (2, -5): (1, 4),
    (2, -3): (1, 2),
    (2, -1): (2, -4),
    (3, -4): (1, 3),
    (3, -2): (2, -3),
    (3, 0): (3, -4),
    (4, -6): (3, 4),
    (4, -4): (1, -3),
    (4, -2): (2, 3),
}

# The four canonical convex orders of the running example, as <a,+-b> pairs.
EXAMPLE1_ORDERS = {
    "U1": [(3, -4), (2, -4), (1, -4), (2, 3), (2, -3), (1, 2),
           (2, 4), (1, -3), (1, 3), (1, 4), (1, -2), (3, 4)],
    "U2": [(3, -4), (2, -4), (1, -4), (2, -3), (2, 3), (1, 2),
           (2, 4), (1, 3), (1, -3), (1, 4), (1, -2), (3, 4)],
    "L1": [(3, -4), (2, -4), (2, -3), (2, 3), (1, -4), (1, 2),
           (1, -3), (1, 3), (2, 4), (1, 4), (3, 4), (1, -2)],
    "L2": [(3, -4), (2, -4), (2, 3), (2, -3), (1, -4), (1, 2),
           (1, 3), (1, -3), (2, 4), (1, 4), (3, 4), (1, -2)],
}


@pytest.fixture(scope="session")
def d4():
    return CartanDatum("D", 4)


@pytest.fixture(scope="session")
def example1_quiver(d4):
    return parse_arrow_spec(d4, EXAMPLE1_ARROWS)


@pytest.fixture(scope="session")
def example1_ar(example1_quiver):
    xi = make_height_function(example1_quiver, 3, 0)
    return ar_quiver.build(example1_quiver, xi)
