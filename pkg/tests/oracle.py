"""Independent oracles for validating the planner.

Everything here deliberately avoids the A* implementation: optimal costs
come from a plain uniform-cost search and full plan sets from bounded
depth-first enumeration, both driven only by the public action model.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass

from rackplan import (
    BaseStation,
    Cell,
    CostWeights,
    EXPLICIT,
    GENERIC,
    GoalSpec,
    ObjectClass,
    ObjectInstance,
    RackModel,
    TorsoLevel,
    WorldState,
    apply_action,
    goal_satisfied,
    legal_actions,
)


def uniform_cost_optimum(start, goal, model, weights=None, max_expansions=200_000):
    """Optimal plan cost by exhaustive uniform-cost search, or None."""
    weights = weights or CostWeights()
    counter = itertools.count()
    heap = [(0.0, next(counter), start)]
    best = {start: 0.0}
    done = set()
    while heap:
        cost, _, state = heapq.heappop(heap)
        if state in done:
            continue
        done.add(state)
        if goal_satisfied(state, goal):
            return cost
        if len(done) > max_expansions:
            return None
        for action in legal_actions(state, model, goal):
            child = apply_action(state, action, model)
            if child in done:
                continue
            child_cost = cost + weights.of(action.kind)
            if child_cost < best.get(child, float("inf")):
                best[child] = child_cost
                heapq.heappush(heap, (child_cost, next(counter), child))
    return None


def enumerate_plans(start, goal, model, weights=None, max_depth=6,
                    max_cost=float("inf")):
    """All goal-reaching action signatures within the bounds, cheapest first."""
    weights = weights or CostWeights()
    found = []

    def walk(state, actions, cost):
        if goal_satisfied(state, goal):
            found.append((cost, tuple(a.signature() for a in actions)))
        if len(actions) >= max_depth:
            return
        for action in legal_actions(state, model, goal):
            child_cost = cost + weights.of(action.kind)
            if child_cost > max_cost:
                continue
            walk(apply_action(state, action, model), actions + [action], child_cost)

    walk(start, [], 0.0)
    found.sort(key=lambda entry: entry[0])
    return found


# ---------------------------------------------------------------------------
# Random small instances (<= 4 objects, <= 6 cells, <= 2 torso, <= 2 stations)
# ---------------------------------------------------------------------------

PRODUCT_A = ObjectClass("Alpha", "CatA", 0.08, 0.06, 0.2, color="yellow",
                        shape="box", stackable=True)
PRODUCT_B = ObjectClass("Beta", "CatB", 0.07, 0.06, 0.15, color="blue",
                        shape="bottle", stackable=False)
CLUTTER = ObjectClass("Crumb", "CatC", 0.05, 0.05, 0.1, color="gray",
                      shape="bag", clutter=True)

_SHAPES = [(1, 4, 1), (1, 6, 1), (2, 3, 1), (2, 2, 1), (1, 3, 2), (3, 2, 1)]


@dataclass
class Instance:
    start: WorldState
    goal: GoalSpec
    model: RackModel
    weights: CostWeights


def _random_model(rng: random.Random, shelves, cols, depths,
                  buffer_candidates) -> RackModel:
    if shelves >= 2 and rng.random() < 0.6:
        torsos = (TorsoLevel("t0", (0, shelves - 2)),
                  TorsoLevel("t1", (1, shelves - 1)))
    else:
        torsos = (TorsoLevel("t0", (0, shelves - 1)),)
    if cols >= 3 and rng.random() < 0.5:
        split = cols // 2
        stations = (BaseStation("s0", (0, split), (0, split)),
                    BaseStation("s1", (split - 1, cols - 1), (split, cols - 1)))
    else:
        stations = (BaseStation("s0", (0, cols - 1), (0, cols - 1)),)
    buffers = frozenset(buffer_candidates[:1])
    return RackModel(shelf_count=shelves, column_count=cols, depth_count=depths,
                     shelf_heights=tuple([0.3] * shelves),
                     base_stations=stations, torso_levels=torsos,
                     buffer_cells=buffers)


def random_instance(rng: random.Random, allow_clutter=True) -> Instance:
    """One random solvable-looking instance; validity guaranteed, solvability not."""
    while True:
        shelves, cols, depths = rng.choice(_SHAPES)
        count = rng.randint(1, 4)
        classes = [rng.choice((PRODUCT_A, PRODUCT_B)) for _ in range(count)]
        if allow_clutter and count >= 2 and rng.random() < 0.3:
            classes[-1] = CLUTTER

        # goal layout first: one front cell per non-clutter object
        products = [c for c in classes if not c.clutter]
        front = [Cell(s, c, 0) for s in range(shelves) for c in range(cols)]
        if len(front) < len(products) + 1:
            continue
        rng.shuffle(front)
        layout_cells = sorted(front[:len(products)], key=Cell.key)
        layout = {}
        names = sorted(c.name for c in products)
        for cell, name in zip(layout_cells, names):
            layout[cell] = name
        spare_front = [c for c in front[len(products):]]

        # place objects anywhere valid (stacking and depth occlusion allowed)
        objects = []
        occupied_height: dict[tuple, int] = {}
        tops: dict[tuple, ObjectClass] = {}
        ok = True
        for index, cls in enumerate(classes):
            spots = []
            for s in range(shelves):
                for c in range(cols):
                    for d in range(depths):
                        key = (s, c, d)
                        height = occupied_height.get(key, 0)
                        if height == 0:
                            spots.append((key, 0))
                        elif tops[key].stackable and height < 2:
                            spots.append((key, height))
            if not spots:
                ok = False
                break
            key, level = rng.choice(spots)
            occupied_height[key] = level + 1
            tops[key] = cls
            objects.append(ObjectInstance(f"o{index}", cls, Cell(*key), level))
        if not ok:
            continue

        start = WorldState(objects=tuple(objects),
                           base=0, torso=0)
        model = _random_model(rng, shelves, cols, depths, spare_front)
        try:
            start.validate(model)
        except Exception:
            continue
        goal = GoalSpec(GENERIC, class_layout=layout)
        return Instance(start, goal, model, CostWeights())


def explicit_variant(instance: Instance, rng: random.Random) -> GoalSpec:
    """An explicit goal consistent with the instance's generic layout."""
    by_class: dict[str, list[str]] = {}
    for obj in instance.start.objects:
        if not obj.cls.clutter:
            by_class.setdefault(obj.cls.name, []).append(obj.id)
    mapping = {}
    cells_by_class: dict[str, list[Cell]] = {}
    for cell, name in sorted(instance.goal.class_layout.items(),
                             key=lambda e: e[0].key()):
        cells_by_class.setdefault(name, []).append(cell)
    for name, ids in sorted(by_class.items()):
        ids = sorted(ids)
        cells = cells_by_class.get(name, [])
        order = list(range(len(ids)))
        rng.shuffle(order)
        for slot, object_id in zip(order, ids):
            mapping[object_id] = cells[slot]
    return GoalSpec(EXPLICIT, explicit_map=mapping)
