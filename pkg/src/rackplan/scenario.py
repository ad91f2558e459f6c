"""Scenario files: one s-expression describing rack, objects, and goal.

A scenario aggregates everything one planning or simulation run needs:
the rack model, the class catalog, the initial world state, a goal in
one of five forms (explicit, generic, tessellate, relational, task),
and the cost/failure/noise/limit knobs.  Omitted sections take the
documented defaults.  ``save_scenario(load_scenario(p))`` round-trips.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path

from . import sexpr
from .designator import Designator, _interpret, print_designator, resolve_location, resolve_object
from .errors import ValidationError
from .model import (
    ANOMALY_TAGS,
    BaseStation,
    Cell,
    EXPLICIT,
    GENERIC,
    GoalSpec,
    ObjectClass,
    ObjectInstance,
    RackModel,
    Relation,
    RELATIONAL,
    RobotGoal,
    TorsoLevel,
    WorldState,
    tessellate,
)
from .planner import CostWeights, SearchLimits
from .simulator import FailurePolicy, ObservationNoise, as_goal_provider

Sym = sexpr.Symbol


@dataclass(frozen=True)
class TessellationGoal:
    """A goal template: product groups tessellated over a region.

    Resolution recounts each group's instances from the given state, so
    a belief that missed objects yields a correspondingly smaller layout
    and the goal grows back once they are perceived.
    """

    region: tuple[tuple[int, tuple[int, int]], ...]
    group_order: tuple[str, ...]
    declared_counts: tuple[int, ...]
    clearance: float = 0.02
    robot_goal: RobotGoal | None = None

    def resolve(self, state: WorldState, model: RackModel) -> GoalSpec:
        counts: dict[str, int] = {}
        classes: dict[str, ObjectClass] = {}
        for obj in state.objects:
            counts[obj.cls.name] = counts.get(obj.cls.name, 0) + 1
            classes[obj.cls.name] = obj.cls
        groups = [(classes[name], counts.get(name, 0))
                  for name in self.group_order if name in classes]
        layout = tessellate(model, self.region, groups, clearance=self.clearance)
        return GoalSpec(GENERIC, class_layout=layout, robot_goal=self.robot_goal)


@dataclass(eq=True)
class TaskGoal:
    """A fetch-and-place task designator, grounded once on first resolve.

    The object and location referents are fixed at the first resolution
    so the goal does not drift as execution frees and fills cells.
    """

    task: Designator
    _cached: GoalSpec | None = field(default=None, compare=False, repr=False)

    def resolve(self, state: WorldState, model: RackModel) -> GoalSpec:
        if self._cached is None:
            obj = resolve_object(self.task.get("object"), state).candidates[0]
            cell = resolve_location(self.task.get("location"), state, model).candidates[0]
            self._cached = GoalSpec(EXPLICIT, explicit_map={obj: cell})
        return self._cached


@dataclass
class Scenario:
    """A fully validated scenario ready for planning or simulation."""

    name: str
    model: RackModel
    classes: tuple[ObjectClass, ...]
    initial: WorldState
    goal: object  # GoalSpec or a goal provider (TessellationGoal, TaskGoal, ...)
    weights: CostWeights = field(default_factory=CostWeights)
    policy: FailurePolicy = field(default_factory=FailurePolicy)
    noise: ObservationNoise = field(default_factory=ObservationNoise)
    limits: SearchLimits = field(default_factory=SearchLimits)
    replan_budget: int = 10
    expected_anomalies: tuple[str, ...] = ()

    def resolved_goal(self, state: WorldState | None = None) -> GoalSpec:
        """The concrete goal for a given state (default: the initial one)."""
        return as_goal_provider(self.goal).resolve(
            state if state is not None else self.initial, self.model)


def _fail(message: str, spans=None, form=None):
    if spans is not None and form is not None and id(form) in spans:
        line, column = spans[id(form)]
        raise ValidationError(f"{message} (at {line}:{column})")
    raise ValidationError(message)


def _sections(form, spans, what: str) -> dict:
    out: dict[str, list] = {}
    for item in form:
        if not isinstance(item, list) or not item or not isinstance(item[0], Sym):
            _fail(f"{what}: every section must be a (name ...) list", spans, item)
        out.setdefault(str(item[0]), []).append(item[1:])
    return out


def _one(sections: dict, key: str, what: str, default=None):
    entries = sections.get(key)
    if not entries:
        if default is not None:
            return default
        raise ValidationError(f"{what}: missing required section ({key} ...)")
    if len(entries) > 1:
        raise ValidationError(f"{what}: duplicate section ({key} ...)")
    return entries[0]


def _kv(items, what: str) -> dict:
    out = {}
    for item in items:
        if isinstance(item, list) and item and isinstance(item[0], Sym):
            out[str(item[0])] = item[1:]
        else:
            raise ValidationError(f"{what}: expected (key value ...) pairs")
    return out


def _num(values, what: str, index: int = 0):
    if len(values) <= index or not isinstance(values[index], (int, float)) \
            or isinstance(values[index], bool):
        raise ValidationError(f"{what}: expected a number")
    return values[index]


def _cell(values, what: str) -> Cell:
    if len(values) != 3 or not all(isinstance(v, int) for v in values):
        raise ValidationError(f"{what}: expected (cell shelf column depth)")
    return Cell(*values)


def _parse_rack(items, spans) -> RackModel:
    sections = _sections(items, spans, "rack")
    stations = []
    for entry in sections.get("station", []):
        if not entry or not isinstance(entry[0], Sym):
            raise ValidationError("station: expected (station name (left lo hi) (right lo hi))")
        windows = _kv(entry[1:], f"station {entry[0]}")
        if "left" not in windows or "right" not in windows:
            raise ValidationError(f"station {entry[0]}: needs (left lo hi) and (right lo hi)")
        left = (int(_num(windows["left"], "left window", 0)),
                int(_num(windows["left"], "left window", 1)))
        right = (int(_num(windows["right"], "right window", 0)),
                 int(_num(windows["right"], "right window", 1)))
        stations.append(BaseStation(str(entry[0]), left, right))
    torsos = []
    for entry in sections.get("torso", []):
        if not entry or not isinstance(entry[0], Sym):
            raise ValidationError("torso: expected (torso name (shelves lo hi))")
        windows = _kv(entry[1:], f"torso {entry[0]}")
        if "shelves" not in windows:
            raise ValidationError(f"torso {entry[0]}: needs (shelves lo hi)")
        torsos.append(TorsoLevel(str(entry[0]),
                                 (int(_num(windows["shelves"], "shelf window", 0)),
                                  int(_num(windows["shelves"], "shelf window", 1)))))
    buffers = frozenset(_cell(entry, "buffer") for entry in sections.get("buffer", []))
    kv = {k: v[0] for k, v in sections.items()
          if k in ("name", "shelves", "columns", "depths", "column-width") and v}
    heights = sections.get("shelf-heights", [[]])[0]
    shelf_count = int(_num(kv.get("shelves", [1]), "shelves"))
    if not heights:
        heights = [0.35] * shelf_count
    return RackModel(
        shelf_count=shelf_count,
        column_count=int(_num(kv.get("columns", [1]), "columns")),
        depth_count=int(_num(kv.get("depths", [1]), "depths")),
        shelf_heights=tuple(float(h) for h in heights),
        base_stations=tuple(stations),
        torso_levels=tuple(torsos),
        buffer_cells=buffers,
        name=str(kv["name"][0]) if "name" in kv else "rack",
        column_width=float(_num(kv.get("column-width", [0.15]), "column-width")),
    )


def _parse_class(entry) -> ObjectClass:
    if not entry or not isinstance(entry[0], Sym):
        raise ValidationError("class: expected (class Name (category ...) ...)")
    name = str(entry[0])
    kv = {}
    flags = set()
    for item in entry[1:]:
        if isinstance(item, Sym):
            flags.add(str(item))
        elif isinstance(item, list) and item and isinstance(item[0], Sym):
            kv[str(item[0])] = item[1:]
        else:
            raise ValidationError(f"class {name}: malformed attribute {item!r}")
    footprint = kv.get("footprint")
    if not footprint or len(footprint) != 3:
        raise ValidationError(f"class {name}: needs (footprint width depth height)")
    return ObjectClass(
        name=name,
        category=str(kv.get("category", ["misc"])[0]),
        width=float(footprint[0]), depth=float(footprint[1]), height=float(footprint[2]),
        color=str(kv.get("color", [""])[0]),
        shape=str(kv.get("shape", ["box"])[0]),
        stackable="stackable" in flags,
        clutter="clutter" in flags,
    )


def _parse_objects(entries, classes: dict[str, ObjectClass]):
    objects = []
    left_hand = None
    right_hand = None
    for entry in entries:
        if len(entry) < 2 or not isinstance(entry[0], Sym) or not isinstance(entry[1], Sym):
            raise ValidationError("object: expected (object id Class (cell s c d) ...)")
        object_id, class_name = str(entry[0]), str(entry[1])
        if class_name not in classes:
            raise ValidationError(
                f"object {object_id}: references undefined class {class_name!r}")
        kv = _kv(entry[2:], f"object {object_id}")
        if "held" in kv:
            hand = str(kv["held"][0])
            if hand == "left":
                left_hand = object_id
            elif hand == "right":
                right_hand = object_id
            else:
                raise ValidationError(f"object {object_id}: unknown hand {hand!r}")
            objects.append(ObjectInstance(object_id, classes[class_name], None))
            continue
        if "cell" not in kv:
            raise ValidationError(f"object {object_id}: needs (cell s c d) or (held hand)")
        cell = _cell(kv["cell"], f"object {object_id}")
        level = int(_num(kv["level"], f"object {object_id} level")) if "level" in kv else 0
        objects.append(ObjectInstance(object_id, classes[class_name], cell, level))
    return objects, left_hand, right_hand


def _parse_region(items) -> tuple[tuple[int, tuple[int, int]], ...]:
    spans = []
    for item in items:
        if not isinstance(item, list) or len(item) != 4 or str(item[0]) != "shelf":
            raise ValidationError("region: expected (shelf index first-col last-col) spans")
        spans.append((int(item[1]), (int(item[2]), int(item[3]))))
    return tuple(spans)


def _parse_robot_goal(kv: dict) -> RobotGoal | None:
    if not any(k in kv for k in ("base", "torso", "hands-empty")):
        return None
    return RobotGoal(
        base=int(_num(kv["base"], "robot goal base")) if "base" in kv else None,
        torso=int(_num(kv["torso"], "robot goal torso")) if "torso" in kv else None,
        hands_empty="hands-empty" in kv,
    )


def _parse_goal(items, spans, classes: dict[str, ObjectClass]):
    if len(items) != 1 or not isinstance(items[0], list) or not items[0] \
            or not isinstance(items[0][0], Sym):
        raise ValidationError("goal: expected exactly one goal form")
    form = items[0]
    head = str(form[0])
    if head == "explicit":
        mapping = {}
        for item in form[1:]:
            if not isinstance(item, list) or len(item) != 4 \
                    or not isinstance(item[0], Sym):
                raise ValidationError("explicit goal: expected (id shelf column depth) entries")
            mapping[str(item[0])] = Cell(int(item[1]), int(item[2]), int(item[3]))
        return GoalSpec(EXPLICIT, explicit_map=mapping)
    if head == "generic":
        layout = {}
        for item in form[1:]:
            if not isinstance(item, list) or len(item) != 4 \
                    or not isinstance(item[-1], Sym):
                raise ValidationError(
                    "generic goal: expected (shelf column depth Class) entries")
            cls = str(item[3])
            if cls not in classes:
                raise ValidationError(f"generic goal: undefined class {cls!r}")
            layout[Cell(int(item[0]), int(item[1]), int(item[2]))] = cls
        return GoalSpec(GENERIC, class_layout=layout)
    if head == "tessellate":
        sections = _sections(form[1:], spans, "tessellate goal")
        region = _parse_region(_one(sections, "region", "tessellate goal"))
        groups = []
        for item in _one(sections, "groups", "tessellate goal"):
            if not isinstance(item, list) or len(item) != 2 \
                    or not isinstance(item[0], Sym):
                raise ValidationError("groups: expected (Class count) entries")
            if str(item[0]) not in classes:
                raise ValidationError(f"groups: undefined class {item[0]!r}")
            groups.append((str(item[0]), int(item[1])))
        clearance = 0.02
        if "clearance" in sections:
            clearance = float(_num(sections["clearance"][0], "clearance"))
        return TessellationGoal(
            region=region,
            group_order=tuple(name for name, _ in groups),
            declared_counts=tuple(count for _, count in groups),
            clearance=clearance,
        )
    if head == "relational":
        relations = []
        for item in form[1:]:
            if not isinstance(item, list) or len(item) != 4 or str(item[0]) != "rel":
                raise ValidationError(
                    "relational goal: expected (rel SUBJECT relation REFERENCE) entries")
            subject = _interpret(item[1], spans, 1)
            kind = str(item[2])
            if kind not in ("near", "left-of", "right-of", "on-shelf"):
                raise ValidationError(f"relational goal: unknown relation {kind!r}")
            reference = item[3] if isinstance(item[3], int) \
                else _interpret(item[3], spans, 1)
            relations.append(Relation(subject, kind, reference))
        return GoalSpec(RELATIONAL, relations=tuple(relations))
    if head == "task":
        if len(form) != 2 or not isinstance(form[1], list):
            raise ValidationError("task goal: expected (task (fetch-and-place ...))")
        return TaskGoal(_interpret(form[1], spans, 1))
    raise ValidationError(f"goal: unknown goal form {head!r}")


def _validate(scenario: Scenario) -> None:
    names = [c.name for c in scenario.classes]
    if len(names) != len(set(names)):
        raise ValidationError("class names must be unique")
    scenario.initial.validate(scenario.model)
    goal = scenario.goal
    if isinstance(goal, GoalSpec) and goal.kind == EXPLICIT:
        for object_id, cell in goal.explicit_map.items():
            if object_id not in scenario.initial.by_id:
                raise ValidationError(f"explicit goal names unknown object {object_id!r}")
            if not scenario.model.valid_cell(cell):
                raise ValidationError(f"explicit goal cell {cell} outside rack bounds")
    if isinstance(goal, GoalSpec) and goal.kind == GENERIC:
        for cell in goal.class_layout:
            if not scenario.model.valid_cell(cell):
                raise ValidationError(f"generic goal cell {cell} outside rack bounds")
    if isinstance(goal, TessellationGoal):
        counts: dict[str, int] = {}
        for obj in scenario.initial.objects:
            counts[obj.cls.name] = counts.get(obj.cls.name, 0) + 1
        for name, declared in zip(goal.group_order, goal.declared_counts):
            if counts.get(name, 0) != declared:
                raise ValidationError(
                    f"goal group {name} declares {declared} instances but the "
                    f"initial state has {counts.get(name, 0)}")
        goal.resolve(scenario.initial, scenario.model)  # fails fast if region too small
    for tag in scenario.expected_anomalies:
        if tag not in ANOMALY_TAGS:
            raise ValidationError(f"annotations name unknown anomaly tag {tag!r}")


def loads_scenario(text: str, name_hint: str = "") -> Scenario:
    form, spans = sexpr.parse(text)
    if not isinstance(form, list) or not form or str(form[0]) != "scenario":
        raise ValidationError("expected a single top-level (scenario ...) expression")
    sections = _sections(form[1:], spans, "scenario")

    name_items = _one(sections, "name", "scenario", default=[name_hint])
    name = str(name_items[0]) if name_items else name_hint

    model = _parse_rack(_one(sections, "rack", "scenario"), spans)
    if "classes" not in sections:
        raise ValidationError("scenario: missing (classes (class ...) ...) section")
    classes = tuple(_parse_class(entry)
                    for entry in _kv_entries(sections["classes"][0]))
    catalog = {c.name: c for c in classes}

    objects, left, right = _parse_objects(
        _kv_entries(_one(sections, "objects", "scenario", default=[])), catalog)

    robot_kv = _kv(_one(sections, "robot", "scenario", default=[]), "robot")
    initial = WorldState(
        objects=tuple(objects),
        base=int(_num(robot_kv["base"], "robot base")) if "base" in robot_kv else 0,
        torso=int(_num(robot_kv["torso"], "robot torso")) if "torso" in robot_kv else 0,
        left_hand=left,
        right_hand=right,
    )

    goal = _parse_goal(_one(sections, "goal", "scenario"), spans, catalog)

    weights = CostWeights()
    if "weights" in sections:
        kv = _kv(sections["weights"][0], "weights")
        weights = CostWeights(
            pick=float(_num(kv["pick"], "pick weight")) if "pick" in kv else 1.2,
            place=float(_num(kv["place"], "place weight")) if "place" in kv else 1.2,
            move_torso=float(_num(kv["move-torso"], "move-torso weight"))
            if "move-torso" in kv else 2.0,
            move_base=float(_num(kv["move-base"], "move-base weight"))
            if "move-base" in kv else 1.0,
            handover=float(_num(kv["handover"], "handover weight"))
            if "handover" in kv else 1.5,
        )

    policy = FailurePolicy()
    replan_budget = 10
    if "policy" in sections:
        kv = _kv(sections["policy"][0], "policy")
        policy = FailurePolicy(
            p_grasp_fail=float(_num(kv["grasp-fail"], "grasp-fail"))
            if "grasp-fail" in kv else 0.0,
            p_drop=float(_num(kv["drop"], "drop")) if "drop" in kv else 0.0,
            p_trajectory_fail=float(_num(kv["trajectory-fail"], "trajectory-fail"))
            if "trajectory-fail" in kv else 0.0,
            retry_limit=int(_num(kv["retries"], "retries")) if "retries" in kv else 3,
            frustration_limit=int(_num(kv["frustration"], "frustration"))
            if "frustration" in kv else 3,
            seed=int(_num(kv["seed"], "seed")) if "seed" in kv else 0,
        )
        if "replan-budget" in kv:
            replan_budget = int(_num(kv["replan-budget"], "replan-budget"))

    noise = ObservationNoise()
    if "noise" in sections:
        kv = _kv(sections["noise"][0], "noise")
        noise = ObservationNoise(
            p_omit=float(_num(kv["omit"], "omit")) if "omit" in kv else 0.0,
            p_merge=float(_num(kv["merge"], "merge")) if "merge" in kv else 0.0,
        )

    limits = SearchLimits()
    if "limits" in sections:
        kv = _kv(sections["limits"][0], "limits")
        limits = SearchLimits(
            max_expansions=int(_num(kv["expansions"], "expansions"))
            if "expansions" in kv else 500_000,
            max_solutions=int(_num(kv["solutions"], "solutions"))
            if "solutions" in kv else 1,
            timeout=float(_num(kv["timeout"], "timeout")) if "timeout" in kv else 60.0,
        )

    expected = ()
    if "annotations" in sections:
        kv = _kv(sections["annotations"][0], "annotations")
        if "anomalies" in kv:
            expected = tuple(str(tag) for tag in kv["anomalies"])

    scenario = Scenario(name=name, model=model, classes=classes, initial=initial,
                        goal=goal, weights=weights, policy=policy, noise=noise,
                        limits=limits, replan_budget=replan_budget,
                        expected_anomalies=expected)
    _validate(scenario)
    return scenario


def _kv_entries(items):
    """Entries of a section that wraps repeated (class ...) / (object ...) forms."""
    out = []
    for item in items:
        if not isinstance(item, list) or not item or not isinstance(item[0], Sym):
            raise ValidationError("expected a list of (class ...) or (object ...) forms")
        out.append(item[1:])
    return out


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read scenario {path}: {exc}") from exc
    return loads_scenario(text, name_hint=path.stem)


# ---------------------------------------------------------------------------
# Saving
# ---------------------------------------------------------------------------


def _goal_form(goal) -> list:
    if isinstance(goal, GoalSpec) and goal.kind == EXPLICIT:
        return [Sym("explicit")] + [
            [Sym(object_id), cell.shelf, cell.column, cell.depth]
            for object_id, cell in sorted(goal.explicit_map.items())]
    if isinstance(goal, GoalSpec) and goal.kind == GENERIC:
        return [Sym("generic")] + [
            [cell.shelf, cell.column, cell.depth, Sym(name)]
            for cell, name in sorted(goal.class_layout.items(), key=lambda e: e[0].key())]
    if isinstance(goal, GoalSpec) and goal.kind == RELATIONAL:
        entries = []
        for rel in goal.relations:
            reference = rel.reference if isinstance(rel.reference, int) \
                else sexpr.parse(print_designator(rel.reference))[0]
            entries.append([Sym("rel"),
                            sexpr.parse(print_designator(rel.subject))[0],
                            Sym(rel.kind), reference])
        return [Sym("relational")] + entries
    if isinstance(goal, TessellationGoal):
        region = [Sym("region")] + [[Sym("shelf"), shelf, lo, hi]
                                    for shelf, (lo, hi) in goal.region]
        groups = [Sym("groups")] + [[Sym(name), count] for name, count
                                    in zip(goal.group_order, goal.declared_counts)]
        return [Sym("tessellate"), region, groups, [Sym("clearance"), goal.clearance]]
    if isinstance(goal, TaskGoal):
        return [Sym("task"), sexpr.parse(print_designator(goal.task))[0]]
    raise ValidationError(f"cannot serialize goal {goal!r}")


def save_scenario(scenario: Scenario) -> str:
    """Render a scenario back to its file format."""
    m = scenario.model
    rack = [Sym("rack"),
            [Sym("name"), Sym(m.name)],
            [Sym("shelves"), m.shelf_count],
            [Sym("columns"), m.column_count],
            [Sym("depths"), m.depth_count],
            [Sym("shelf-heights")] + [float(h) for h in m.shelf_heights],
            [Sym("column-width"), m.column_width]]
    for station in m.base_stations:
        rack.append([Sym("station"), Sym(station.name),
                     [Sym("left"), station.left[0], station.left[1]],
                     [Sym("right"), station.right[0], station.right[1]]])
    for torso in m.torso_levels:
        rack.append([Sym("torso"), Sym(torso.name),
                     [Sym("shelves"), torso.shelves[0], torso.shelves[1]]])
    for cell in sorted(m.buffer_cells, key=Cell.key):
        rack.append([Sym("buffer"), cell.shelf, cell.column, cell.depth])

    classes = [Sym("classes")]
    for cls in scenario.classes:
        entry = [Sym("class"), Sym(cls.name),
                 [Sym("category"), cls.category],
                 [Sym("footprint"), cls.width, cls.depth, cls.height]]
        if cls.color:
            entry.append([Sym("color"), Sym(cls.color)])
        entry.append([Sym("shape"), Sym(cls.shape)])
        if cls.stackable:
            entry.append(Sym("stackable"))
        if cls.clutter:
            entry.append(Sym("clutter"))
        classes.append(entry)

    objects = [Sym("objects")]
    for obj in scenario.initial.objects:
        entry = [Sym("object"), Sym(obj.id), Sym(obj.cls.name)]
        if obj.cell is None:
            hand = "left" if scenario.initial.left_hand == obj.id else "right"
            entry.append([Sym("held"), Sym(hand)])
        else:
            entry.append([Sym("cell"), obj.cell.shelf, obj.cell.column, obj.cell.depth])
            if obj.stack_level:
                entry.append([Sym("level"), obj.stack_level])
        objects.append(entry)

    p, n, l = scenario.policy, scenario.noise, scenario.limits
    form = [Sym("scenario"),
            [Sym("name"), scenario.name],
            rack, classes, objects,
            [Sym("robot"), [Sym("base"), scenario.initial.base],
             [Sym("torso"), scenario.initial.torso]],
            [Sym("goal"), _goal_form(scenario.goal)],
            [Sym("weights"),
             [Sym("pick"), scenario.weights.pick],
             [Sym("place"), scenario.weights.place],
             [Sym("move-torso"), scenario.weights.move_torso],
             [Sym("move-base"), scenario.weights.move_base],
             [Sym("handover"), scenario.weights.handover]],
            [Sym("policy"),
             [Sym("grasp-fail"), p.p_grasp_fail], [Sym("drop"), p.p_drop],
             [Sym("trajectory-fail"), p.p_trajectory_fail],
             [Sym("retries"), p.retry_limit], [Sym("frustration"), p.frustration_limit],
             [Sym("seed"), p.seed], [Sym("replan-budget"), scenario.replan_budget]],
            [Sym("noise"), [Sym("omit"), n.p_omit], [Sym("merge"), n.p_merge]],
            [Sym("limits"), [Sym("expansions"), l.max_expansions],
             [Sym("solutions"), l.max_solutions], [Sym("timeout"), l.timeout]]]
    if scenario.expected_anomalies:
        form.append([Sym("annotations"),
                     [Sym("anomalies")] + [Sym(t) for t in scenario.expected_anomalies]])
    return sexpr.dumps(form) + "\n"


# ---------------------------------------------------------------------------
# Shipped corpus
# ---------------------------------------------------------------------------


def corpus_dir() -> Path:
    return Path(str(importlib.resources.files("rackplan") / "scenarios"))


def corpus_paths() -> list[Path]:
    """All shipped scenario files, sorted by name."""
    return sorted(corpus_dir().glob("*.scn"))
