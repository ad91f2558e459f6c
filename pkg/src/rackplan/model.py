"""Discrete world model of a shelf rack, its objects, and the robot.

The rack is a grid of shelves x columns x depth slots, depth 0 being the
front row.  Objects occupy a (cell, stack level) position or one of the
robot's two hand slots.  All types are immutable values; every operation
returns a new state and leaves its inputs untouched, so states can be
shared freely between searches and threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping

from .errors import (
    PreconditionViolated,
    RegionTooSmallError,
    UnknownClassError,
    UnknownObjectError,
    UnresolvedGoalError,
    ValidationError,
)

LEFT = "left"
RIGHT = "right"
HANDS = (LEFT, RIGHT)

# Action kinds
PICK = "pick"
PLACE = "place"
HANDOVER = "handover"
MOVE_TORSO = "move-torso"
MOVE_BASE = "move-base"

# Goal kinds
EXPLICIT = "explicit"
GENERIC = "generic"
RELATIONAL = "relational"

# Anomaly tags
OBSTRUCTION = "obstruction"
MULTIPLE_OBSTRUCTIONS = "multiple-obstructions"
STACKING_SAME = "stacking-same"
STACKING_DIFFERENT = "stacking-different"
IRREGULAR_OBJECT = "irregular-object"
NO_ANOMALY = "none"

ANOMALY_TAGS = (OBSTRUCTION, MULTIPLE_OBSTRUCTIONS, STACKING_SAME,
                STACKING_DIFFERENT, IRREGULAR_OBJECT, NO_ANOMALY)


@dataclass(frozen=True, order=True)
class Cell:
    """One slot of the rack grid: (shelf, column, depth)."""

    shelf: int
    column: int
    depth: int

    def key(self) -> tuple[int, int, int]:
        return (self.shelf, self.column, self.depth)


@dataclass(frozen=True)
class BaseStation:
    """A named docking position with one reachable column window per arm."""

    name: str
    left: tuple[int, int]   # inclusive column window for the left arm
    right: tuple[int, int]  # inclusive column window for the right arm

    def window(self, hand: str) -> tuple[int, int]:
        return self.left if hand == LEFT else self.right


@dataclass(frozen=True)
class TorsoLevel:
    """A named torso height with an inclusive reachable shelf window."""

    name: str
    shelves: tuple[int, int]


@dataclass(frozen=True)
class RackModel:
    """Static geometry of the rack plus the robot's reachability windows.

    ``buffer_cells`` are cells set aside for temporary relocation of
    objects that block goal-relevant ones.  ``column_width`` is the
    physical width of one column slot; it only matters for tessellation,
    where product footprints are checked against the available width.
    """

    shelf_count: int
    column_count: int
    depth_count: int
    shelf_heights: tuple[float, ...]
    base_stations: tuple[BaseStation, ...]
    torso_levels: tuple[TorsoLevel, ...]
    buffer_cells: frozenset[Cell] = frozenset()
    name: str = "rack"
    column_width: float = 0.15

    def __post_init__(self):
        object.__setattr__(self, "shelf_heights", tuple(self.shelf_heights))
        object.__setattr__(self, "base_stations", tuple(self.base_stations))
        object.__setattr__(self, "torso_levels", tuple(self.torso_levels))
        object.__setattr__(self, "buffer_cells", frozenset(self.buffer_cells))
        if min(self.shelf_count, self.column_count, self.depth_count) < 1:
            raise ValidationError("rack dimensions must all be >= 1")
        if len(self.shelf_heights) != self.shelf_count:
            raise ValidationError("shelf_heights length must equal shelf_count")
        if not self.base_stations:
            raise ValidationError("at least one base station is required")
        if not self.torso_levels:
            raise ValidationError("at least one torso level is required")
        if self.column_width <= 0:
            raise ValidationError("column_width must be positive")
        for col in range(self.column_count):
            if not any(w[0] <= col <= w[1]
                       for s in self.base_stations for w in (s.left, s.right)):
                raise ValidationError(f"column {col} unreachable from every (station, arm)")
        for shelf in range(self.shelf_count):
            if not any(t.shelves[0] <= shelf <= t.shelves[1] for t in self.torso_levels):
                raise ValidationError(f"shelf {shelf} unreachable from every torso level")
        for cell in self.buffer_cells:
            if not self.valid_cell(cell):
                raise ValidationError(f"buffer cell {cell} outside rack bounds")

    def valid_cell(self, cell: Cell) -> bool:
        return (0 <= cell.shelf < self.shelf_count
                and 0 <= cell.column < self.column_count
                and 0 <= cell.depth < self.depth_count)

    def cell_reachable(self, base: int, torso: int, cell: Cell, hand: str) -> bool:
        """True if the given arm can reach the cell from (base, torso)."""
        lo, hi = self.base_stations[base].window(hand)
        slo, shi = self.torso_levels[torso].shelves
        return lo <= cell.column <= hi and slo <= cell.shelf <= shi

    def cells(self) -> Iterable[Cell]:
        for shelf in range(self.shelf_count):
            for column in range(self.column_count):
                for depth in range(self.depth_count):
                    yield Cell(shelf, column, depth)


@dataclass(frozen=True)
class ObjectClass:
    """A product class: footprint geometry plus symbolic perception tags.

    ``clutter`` marks objects that belong to no product group; the planner
    only ever moves those when they block a goal-relevant object.
    """

    name: str
    category: str
    width: float
    depth: float
    height: float
    color: str = ""
    shape: str = "box"
    stackable: bool = False
    clutter: bool = False

    def __post_init__(self):
        if min(self.width, self.depth, self.height) <= 0:
            raise ValidationError(f"class {self.name}: footprint components must be > 0")


@dataclass(frozen=True)
class ObjectInstance:
    """A concrete object: either placed at (cell, stack_level) or held.

    A held object has ``cell is None``; its hand is recorded on the
    WorldState, not here.
    """

    id: str
    cls: ObjectClass
    cell: Cell | None
    stack_level: int = 0

    @property
    def placed(self) -> bool:
        return self.cell is not None


@dataclass(frozen=True, eq=False)
class WorldState:
    """Full planning state: object placements plus the robot configuration.

    Objects are kept sorted by id so that equal states compare and hash
    identically regardless of construction order.
    """

    objects: tuple[ObjectInstance, ...]
    base: int = 0
    torso: int = 0
    left_hand: str | None = None
    right_hand: str | None = None

    def __post_init__(self):
        objects = tuple(self.objects)
        # successor states preserve order; sort only when actually needed
        if any(objects[i].id > objects[i + 1].id for i in range(len(objects) - 1)):
            objects = tuple(sorted(objects, key=lambda o: o.id))
        object.__setattr__(self, "objects", objects)

    @cached_property
    def _key(self) -> tuple:
        placement = tuple(
            (o.id, o.cls.name,
             (o.cell.shelf, o.cell.column, o.cell.depth, o.stack_level)
             if o.cell is not None else None)
            for o in self.objects)
        return (placement, self.base, self.torso, self.left_hand, self.right_hand)

    @cached_property
    def _hash(self) -> int:
        return hash(self._key)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if not isinstance(other, WorldState):
            return NotImplemented
        return self._key == other._key

    # -- lookups ---------------------------------------------------------

    @cached_property
    def by_id(self) -> dict[str, ObjectInstance]:
        index = {}
        for o in self.objects:
            if o.id in index:
                raise ValidationError(f"duplicate object id {o.id!r}")
            index[o.id] = o
        return index

    @cached_property
    def stacks(self) -> dict[tuple[int, int, int], tuple[ObjectInstance, ...]]:
        """Placed objects grouped per cell, ordered by stack level."""
        grouped: dict[tuple[int, int, int], list[ObjectInstance]] = {}
        for o in self.objects:
            if o.cell is not None:
                grouped.setdefault(o.cell.key(), []).append(o)
        return {k: tuple(sorted(v, key=lambda o: o.stack_level))
                for k, v in grouped.items()}

    @cached_property
    def placed_sorted(self) -> tuple[ObjectInstance, ...]:
        """Placed objects in (cell, id) order, the fixed enumeration order."""
        return tuple(sorted((o for o in self.objects if o.cell is not None),
                            key=lambda o: (o.cell.key(), o.stack_level, o.id)))

    def instance(self, object_id: str) -> ObjectInstance:
        try:
            return self.by_id[object_id]
        except KeyError:
            raise UnknownObjectError(f"no object with id {object_id!r}") from None

    def stack_at(self, cell: Cell) -> tuple[ObjectInstance, ...]:
        return self.stacks.get(cell.key(), ())

    def stack_height(self, cell: Cell) -> int:
        return len(self.stack_at(cell))

    def hand_content(self, hand: str) -> str | None:
        return self.left_hand if hand == LEFT else self.right_hand

    def free_hands(self) -> tuple[str, ...]:
        return tuple(h for h in HANDS if self.hand_content(h) is None)

    # -- functional updates ----------------------------------------------

    def _with(self, objects=None, **robot) -> "WorldState":
        return WorldState(
            objects=tuple(objects) if objects is not None else self.objects,
            base=robot.get("base", self.base),
            torso=robot.get("torso", self.torso),
            left_hand=robot.get("left_hand", self.left_hand),
            right_hand=robot.get("right_hand", self.right_hand),
        )

    def _replace_instance(self, inst: ObjectInstance) -> tuple[ObjectInstance, ...]:
        return tuple(inst if o.id == inst.id else o for o in self.objects)

    # -- validation --------------------------------------------------------

    def validate(self, model: RackModel) -> None:
        """Raise ValidationError unless every state invariant holds."""
        _ = self.by_id  # raises on duplicate ids
        seen: set[tuple[int, int, int, int]] = set()
        for o in self.objects:
            if o.cell is None:
                if o.id not in (self.left_hand, self.right_hand):
                    raise ValidationError(f"object {o.id} is neither placed nor held")
                continue
            if not model.valid_cell(o.cell):
                raise ValidationError(f"object {o.id} at invalid cell {o.cell}")
            pos = o.cell.key() + (o.stack_level,)
            if pos in seen:
                raise ValidationError(f"two objects share position {pos}")
            seen.add(pos)
            if o.stack_level < 0:
                raise ValidationError(f"object {o.id} has negative stack level")
        for key, stack in self.stacks.items():
            for level, inst in enumerate(stack):
                if inst.stack_level != level:
                    raise ValidationError(
                        f"stack at {key} has a gap below {inst.id}")
                if level > 0 and not stack[level - 1].cls.stackable:
                    raise ValidationError(
                        f"{stack[level - 1].id} is not stackable but carries {inst.id}")
        for hand in HANDS:
            held = self.hand_content(hand)
            if held is None:
                continue
            if held not in self.by_id:
                raise ValidationError(f"{hand} hand references unknown object {held}")
            if self.by_id[held].cell is not None:
                raise ValidationError(f"object {held} is both placed and in a hand")
        if not 0 <= self.base:
            raise ValidationError("base index must be non-negative")
        if self.base >= len(model.base_stations):
            raise ValidationError(f"base index {self.base} out of range")
        if not 0 <= self.torso < len(model.torso_levels):
            raise ValidationError(f"torso index {self.torso} out of range")


@dataclass(frozen=True)
class Action:
    """One atomic robot action.  Use the module-level constructors."""

    kind: str
    object_id: str | None = None
    hand: str | None = None
    to_hand: str | None = None
    cell: Cell | None = None
    level: int = 0
    torso: int | None = None
    base: int | None = None

    def signature(self) -> tuple:
        if self.kind == PICK:
            return (PICK, self.object_id, self.hand)
        if self.kind == PLACE:
            return (PLACE, self.object_id, self.hand, self.cell.key(), self.level)
        if self.kind == HANDOVER:
            return (HANDOVER, self.hand, self.to_hand)
        if self.kind == MOVE_TORSO:
            return (MOVE_TORSO, self.torso)
        return (MOVE_BASE, self.base)

    def describe(self) -> str:
        return " ".join(str(part) for part in self.signature())


def pick(object_id: str, hand: str) -> Action:
    return Action(PICK, object_id=object_id, hand=hand)


def place(object_id: str, hand: str, cell: Cell, level: int = 0) -> Action:
    return Action(PLACE, object_id=object_id, hand=hand, cell=cell, level=level)


def handover(from_hand: str, to_hand: str) -> Action:
    return Action(HANDOVER, hand=from_hand, to_hand=to_hand)


def move_torso(level_index: int) -> Action:
    return Action(MOVE_TORSO, torso=level_index)


def move_base(station_index: int) -> Action:
    return Action(MOVE_BASE, base=station_index)


@dataclass(frozen=True)
class RobotGoal:
    """Optional constraints on the robot configuration in a goal state."""

    base: int | None = None
    torso: int | None = None
    hands_empty: bool = False

    def satisfied(self, state: WorldState) -> bool:
        if self.base is not None and state.base != self.base:
            return False
        if self.torso is not None and state.torso != self.torso:
            return False
        if self.hands_empty and (state.left_hand or state.right_hand):
            return False
        return True


@dataclass(frozen=True)
class Relation:
    """One qualitative constraint of a relational goal.

    ``subject`` and ``reference`` are designators (see the designator
    module); they are kept untyped here to avoid a circular import.
    """

    subject: Any
    kind: str  # near | left-of | right-of | on-shelf
    reference: Any


@dataclass
class GoalSpec:
    """A goal in one of three forms: explicit, generic, or relational.

    Relational goals must be resolved to a generic class layout before
    planning; see the designator module.
    """

    kind: str
    explicit_map: dict[str, Cell] | None = None
    class_layout: dict[Cell, str] | None = None
    relations: tuple[Relation, ...] | None = None
    robot_goal: RobotGoal | None = None

    def __post_init__(self):
        if self.kind not in (EXPLICIT, GENERIC, RELATIONAL):
            raise ValidationError(f"unknown goal kind {self.kind!r}")
        if self.kind == EXPLICIT and self.explicit_map is None:
            raise ValidationError("explicit goal needs an explicit_map")
        if self.kind == GENERIC and self.class_layout is None:
            raise ValidationError("generic goal needs a class_layout")
        if self.kind == RELATIONAL and self.relations is None:
            raise ValidationError("relational goal needs relations")

    def require_resolved(self) -> None:
        if self.kind == RELATIONAL:
            raise UnresolvedGoalError(
                "relational goal must be resolved to a generic layout first")


@dataclass(frozen=True)
class Anomaly:
    """A detected irregularity in an arrangement, with its subject ids."""

    tag: str
    subjects: tuple[str, ...] = ()

    def __post_init__(self):
        if self.tag not in ANOMALY_TAGS:
            raise ValidationError(f"unknown anomaly tag {self.tag!r}")


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def tessellate(model: RackModel,
               region: Iterable[tuple[int, tuple[int, int]]],
               groups: Iterable[tuple[ObjectClass | str, int]],
               classes: Mapping[str, ObjectClass] | None = None,
               clearance: float = 0.02) -> dict[Cell, str]:
    """Partition a shelf region into front cells assigned to product groups.

    ``region`` is a set of (shelf, (first column, last column)) spans;
    ``groups`` is an ordered list of (class, count).  Each instance gets
    one front-depth cell; a group's cells are contiguous and groups are
    laid out in the given order, advancing through region spans without
    backtracking.  Per span, the summed physical width of the assigned
    groups (count x (footprint width + clearance)) must fit the span's
    width (columns x column_width).
    """
    spans = sorted(((shelf, int(lo), int(hi)) for shelf, (lo, hi) in region),
                   key=lambda s: (s[0], s[1]))
    for shelf, lo, hi in spans:
        if lo > hi or not model.valid_cell(Cell(shelf, lo, 0)) \
                or not model.valid_cell(Cell(shelf, hi, 0)):
            raise ValidationError(f"region span (shelf {shelf}, columns {lo}-{hi}) "
                                  "outside rack bounds")
    layout: dict[Cell, str] = {}
    span_index = 0
    next_col = spans[0][1] if spans else 0
    used_width = 0.0
    for cls, count in groups:
        if isinstance(cls, str):
            if classes is None or cls not in classes:
                raise UnknownClassError(f"unknown class {cls!r} in tessellation groups")
            cls = classes[cls]
        if count == 0:
            continue
        needed = count * (cls.width + clearance)
        while span_index < len(spans):
            shelf, lo, hi = spans[span_index]
            span_width = (hi - lo + 1) * model.column_width
            if (hi - next_col + 1) >= count and used_width + needed <= span_width + 1e-9:
                for i in range(count):
                    layout[Cell(shelf, next_col + i, 0)] = cls.name
                next_col += count
                used_width += needed
                break
            span_index += 1
            if span_index < len(spans):
                next_col = spans[span_index][1]
                used_width = 0.0
        else:
            raise RegionTooSmallError(
                f"group ({cls.name}, {count}) needs {needed:.3f} width units "
                "but no remaining region span can hold it")
    return layout


def occluders_of(state: WorldState, object_id: str, model: RackModel) -> list[str]:
    """All objects that must move before ``object_id`` can be picked.

    Returns same-column objects at strictly smaller depth, front to back,
    followed by objects stacked above, bottom to top.  An empty list
    means the object is directly graspable.
    """
    obj = state.instance(object_id)
    if obj.cell is None:
        raise UnknownObjectError(f"object {object_id!r} is not in a cell")
    front = []
    for d in range(obj.cell.depth):
        for inst in state.stack_at(Cell(obj.cell.shelf, obj.cell.column, d)):
            front.append(inst.id)
    above = [inst.id for inst in state.stack_at(obj.cell)
             if inst.stack_level > obj.stack_level]
    return front + above


def _depth_occluders(state: WorldState, obj: ObjectInstance) -> list[str]:
    """Same-column objects in front of ``obj`` (stacked-above ones excluded)."""
    out = []
    for d in range(obj.cell.depth):
        for inst in state.stack_at(Cell(obj.cell.shelf, obj.cell.column, d)):
            out.append(inst.id)
    return out


def _front_lane_clear(state: WorldState, cell: Cell) -> bool:
    return all(not state.stack_at(Cell(cell.shelf, cell.column, d))
               for d in range(cell.depth))


def goal_relevant(obj: ObjectInstance, goal: GoalSpec) -> bool:
    """True if the goal constrains this object's placement."""
    goal.require_resolved()
    if goal.kind == EXPLICIT:
        return obj.id in goal.explicit_map
    return not obj.cls.clutter


def apply_action(state: WorldState, action: Action, model: RackModel) -> WorldState:
    """Apply one action, returning the successor state.

    Raises PreconditionViolated naming the failing precondition.  Place
    targets must be supported (level equals the current stack height, on
    a stackable object when above the surface) and must have a clear
    front lane, mirroring how objects physically slide into a rack.
    """
    kind = action.kind
    if kind == PICK:
        hand = action.hand
        if hand not in HANDS:
            raise PreconditionViolated(action, f"unknown hand {hand!r}")
        if state.hand_content(hand) is not None:
            raise PreconditionViolated(action, f"{hand} hand is not empty")
        obj = state.instance(action.object_id)
        if obj.cell is None:
            raise PreconditionViolated(action, f"{obj.id} is already held")
        stack = state.stack_at(obj.cell)
        if stack and stack[-1].id != obj.id:
            raise PreconditionViolated(
                action, f"{obj.id} is not the top of its stack ({stack[-1].id} above)")
        blockers = occluders_of(state, obj.id, model)
        if blockers:
            raise PreconditionViolated(
                action, f"{obj.id} is occluded by {', '.join(blockers)}")
        if not model.cell_reachable(state.base, state.torso, obj.cell, hand):
            raise PreconditionViolated(
                action, f"cell {obj.cell} out of reach for the {hand} arm")
        objects = state._replace_instance(
            ObjectInstance(obj.id, obj.cls, None, 0))
        return state._with(objects, **{f"{hand}_hand": obj.id})

    if kind == PLACE:
        hand = action.hand
        if hand not in HANDS:
            raise PreconditionViolated(action, f"unknown hand {hand!r}")
        held = state.hand_content(hand)
        if held != action.object_id:
            raise PreconditionViolated(
                action, f"{hand} hand holds {held!r}, not {action.object_id!r}")
        cell = action.cell
        if cell is None or not model.valid_cell(cell):
            raise PreconditionViolated(action, f"invalid target cell {cell}")
        if not model.cell_reachable(state.base, state.torso, cell, hand):
            raise PreconditionViolated(
                action, f"cell {cell} out of reach for the {hand} arm")
        height = state.stack_height(cell)
        if action.level != height:
            raise PreconditionViolated(
                action, f"level {action.level} unsupported (stack height is {height})")
        if height > 0 and not state.stack_at(cell)[-1].cls.stackable:
            raise PreconditionViolated(
                action, f"{state.stack_at(cell)[-1].id} cannot support another object")
        if not _front_lane_clear(state, cell):
            raise PreconditionViolated(action, f"front lane of {cell} is blocked")
        obj = state.instance(held)
        objects = state._replace_instance(
            ObjectInstance(obj.id, obj.cls, cell, action.level))
        return state._with(objects, **{f"{hand}_hand": None})

    if kind == HANDOVER:
        src, dst = action.hand, action.to_hand
        if {src, dst} != set(HANDS):
            raise PreconditionViolated(action, "handover must involve both hands")
        held = state.hand_content(src)
        if held is None:
            raise PreconditionViolated(action, f"{src} hand is empty")
        if state.hand_content(dst) is not None:
            raise PreconditionViolated(action, f"{dst} hand is not empty")
        return state._with(None, **{f"{src}_hand": None, f"{dst}_hand": held})

    if kind == MOVE_TORSO:
        if action.torso is None or not 0 <= action.torso < len(model.torso_levels):
            raise PreconditionViolated(action, f"no torso level {action.torso}")
        if action.torso == state.torso:
            raise PreconditionViolated(action, "torso already at that level")
        return state._with(None, torso=action.torso)

    if kind == MOVE_BASE:
        if action.base is None or not 0 <= action.base < len(model.base_stations):
            raise PreconditionViolated(action, f"no base station {action.base}")
        if action.base == state.base:
            raise PreconditionViolated(action, "base already at that station")
        return state._with(None, base=action.base)

    raise PreconditionViolated(action, f"unknown action kind {kind!r}")


def _relevant_occluder_ids(state: WorldState, model: RackModel,
                           goal: GoalSpec) -> set[str]:
    """Ids of objects that currently occlude some goal-relevant object."""
    blocking: set[str] = set()
    for obj in state.placed_sorted:
        if goal_relevant(obj, goal):
            blocking.update(occluders_of(state, obj.id, model))
    return blocking


def _place_targets(state: WorldState, model: RackModel, goal: GoalSpec,
                   obj: ObjectInstance) -> list[Cell]:
    """Candidate cells for placing a held object: its goal cells plus buffers.

    Restricting placements to goal-assigned cells and buffer cells keeps
    the search space finite and goal-directed; any reachable tidy
    arrangement is still reachable through these targets.
    """
    candidates: set[Cell] = set(model.buffer_cells)
    if goal.kind == EXPLICIT:
        target = goal.explicit_map.get(obj.id)
        if target is not None:
            candidates.add(target)
    else:
        if not obj.cls.clutter:
            candidates.update(c for c, name in goal.class_layout.items()
                              if name == obj.cls.name)
    return sorted(candidates, key=Cell.key)


def legal_actions(state: WorldState, model: RackModel,
                  goal: GoalSpec) -> list[Action]:
    """All actions applicable in ``state``, in a fixed deterministic order.

    Order: picks, places, handover, move-torso, move-base; picks and
    places sorted by cell then object id.  Picks never target occluded
    objects; clutter objects are only picked while they block something
    goal-relevant.
    """
    goal.require_resolved()
    actions: list[Action] = []

    free = state.free_hands()
    if free:
        blocking = _relevant_occluder_ids(state, model, goal)
        for obj in state.placed_sorted:
            stack = state.stack_at(obj.cell)
            if stack[-1].id != obj.id:
                continue
            if not _front_lane_clear(state, obj.cell):
                continue
            if obj.cls.clutter and obj.id not in blocking:
                continue
            for hand in free:
                if model.cell_reachable(state.base, state.torso, obj.cell, hand):
                    actions.append(pick(obj.id, hand))

    placements: list[tuple[tuple, Action]] = []
    for hand in HANDS:
        held = state.hand_content(hand)
        if held is None:
            continue
        obj = state.instance(held)
        for cell in _place_targets(state, model, goal, obj):
            if not model.cell_reachable(state.base, state.torso, cell, hand):
                continue
            if not _front_lane_clear(state, cell):
                continue
            level = state.stack_height(cell)
            if level > 0 and not state.stack_at(cell)[-1].cls.stackable:
                continue
            placements.append(((cell.key(), obj.id, hand), place(obj.id, hand, cell, level)))
    actions.extend(a for _, a in sorted(placements, key=lambda p: p[0]))

    held_hands = [h for h in HANDS if state.hand_content(h) is not None]
    if len(held_hands) == 1:
        other = RIGHT if held_hands[0] == LEFT else LEFT
        actions.append(handover(held_hands[0], other))

    for level in range(len(model.torso_levels)):
        if level != state.torso:
            actions.append(move_torso(level))
    for station in range(len(model.base_stations)):
        if station != state.base:
            actions.append(move_base(station))
    return actions


def misplaced_count(state: WorldState, goal: GoalSpec) -> int:
    """Number of objects not yet where the goal wants them.

    Explicit goals count mapped objects away from their mapped cell.
    Generic goals count non-clutter objects that do not sit on the shelf
    surface of a layout cell of their class; held objects count as
    misplaced.  Clutter objects count only while they sit on a cell
    assigned to a product group.
    """
    goal.require_resolved()
    count = 0
    if goal.kind == EXPLICIT:
        for obj in state.objects:
            target = goal.explicit_map.get(obj.id)
            if target is not None and obj.cell != target:
                count += 1
        return count
    layout = goal.class_layout
    for obj in state.objects:
        if obj.cls.clutter:
            if obj.cell is not None and obj.cell in layout:
                count += 1
        else:
            ok = (obj.cell is not None and obj.stack_level == 0
                  and layout.get(obj.cell) == obj.cls.name)
            if not ok:
                count += 1
    return count


def robot_state_delta(s0: WorldState, s1: WorldState) -> int:
    """Unit cost per differing robot configuration element (max 4)."""
    return (int(s0.base != s1.base)
            + int(s0.torso != s1.torso)
            + int(s0.left_hand != s1.left_hand)
            + int(s0.right_hand != s1.right_hand))


def detect_anomalies(state: WorldState, goal: GoalSpec,
                     model: RackModel) -> list[Anomaly]:
    """Classify irregularities of an arrangement relative to a goal.

    Obstruction means a goal-relevant object has something in front of it
    (stacked-above objects are reported through the stacking tags, not as
    obstructions).  Returns [none] for a flat, unobstructed arrangement
    of catalog products.
    """
    anomalies: list[Anomaly] = []
    obstructed = [obj.id for obj in state.placed_sorted
                  if goal_relevant(obj, goal) and _depth_occluders(state, obj)]
    if len(obstructed) == 1:
        anomalies.append(Anomaly(OBSTRUCTION, tuple(obstructed)))
    elif len(obstructed) > 1:
        anomalies.append(Anomaly(MULTIPLE_OBSTRUCTIONS, tuple(obstructed)))
    for key in sorted(state.stacks):
        stack = state.stacks[key]
        if len(stack) < 2:
            continue
        names = {inst.cls.name for inst in stack}
        tag = STACKING_SAME if len(names) == 1 else STACKING_DIFFERENT
        anomalies.append(Anomaly(tag, tuple(inst.id for inst in stack)))
    for obj in state.objects:
        if obj.cls.clutter:
            anomalies.append(Anomaly(IRREGULAR_OBJECT, (obj.id,)))
    if not anomalies:
        return [Anomaly(NO_ANOMALY)]
    return anomalies
