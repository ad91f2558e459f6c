import pytest

from rackplan import (
    BaseStation,
    Cell,
    ObjectClass,
    ObjectInstance,
    RackModel,
    TorsoLevel,
    WorldState,
)

CEREAL = ObjectClass("Cornflakes", "Cereals", 0.10, 0.06, 0.25,
                     color="yellow", shape="box")
BEANS = ObjectClass("Beans", "Canned", 0.08, 0.08, 0.11,
                    color="blue", shape="bottle", stackable=True)
SALT = ObjectClass("Salt", "Household", 0.06, 0.06, 0.12,
                   color="white", shape="box", clutter=True)


@pytest.fixture
def small_model():
    """3 shelves x 4 columns x 2 depths, one full-reach station, two torsos."""
    return RackModel(
        shelf_count=3, column_count=4, depth_count=2,
        shelf_heights=(0.35, 0.35, 0.35),
        base_stations=(BaseStation("s0", (0, 3), (0, 3)),),
        torso_levels=(TorsoLevel("low", (0, 1)), TorsoLevel("high", (1, 2))),
        buffer_cells=frozenset({Cell(0, 3, 0)}),
    )


@pytest.fixture
def four_objects():
    return (
        ObjectInstance("corn-1", CEREAL, Cell(1, 0, 0)),
        ObjectInstance("corn-2", CEREAL, Cell(1, 1, 0)),
        ObjectInstance("bean-1", BEANS, Cell(1, 2, 0)),
        ObjectInstance("bean-2", BEANS, Cell(1, 3, 0)),
    )


@pytest.fixture
def flat_state(four_objects):
    return WorldState(objects=four_objects)
