"""Underspecified object/location/task descriptions and their resolution.

A designator describes what is wanted, not which concrete object or cell
satisfies it: ``(an object (type box) (label "Cornflakes"))`` names any
yellow-boxed cornflakes instance, ``(a location (on rack) (shelf 2))``
any free front cell on shelf 2.  Resolution grounds a designator against
a world state, returning all candidates in a deterministic order with
the first one as the designated referent.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from . import sexpr
from .errors import (
    DesignatorSyntaxError,
    NoMatchError,
    NotAnObjectDesignatorError,
    NotALocationDesignatorError,
    UnknownKeyError,
    UnresolvableInnerObjectError,
    UnsatisfiableRelationsError,
)
from .model import (
    Cell,
    GENERIC,
    GoalSpec,
    ObjectInstance,
    RackModel,
    Relation,
    RELATIONAL,
    WorldState,
    tessellate,
)

OBJECT = "object"
LOCATION = "location"
TASK = "task"

OBJECT_KEYS = ("type", "label", "color", "category")
LOCATION_KEYS = ("on", "shelf", "near", "left-of", "right-of")
TASK_KEYS = ("object", "location")
ALL_KEYS = OBJECT_KEYS + LOCATION_KEYS + TASK_KEYS

MAX_NESTING = 4
NEAR_RADIUS = 1  # Manhattan distance over (shelf, column)


@dataclass(frozen=True)
class Designator:
    """A parsed description: kind, determiner, and (key, value) properties.

    Values are symbols, strings, numbers, or nested designators.  Task
    designators carry their object and location children under the
    ``object`` and ``location`` keys.
    """

    kind: str
    determiner: str
    properties: tuple[tuple[str, object], ...]

    def get(self, key: str):
        for k, v in self.properties:
            if k == key:
                return v
        return None


@dataclass(frozen=True)
class Resolution:
    """Grounded candidates for a designator, the first being the referent."""

    candidates: tuple
    exhaustive: bool = True


def _interpret(form, spans, depth: int) -> Designator:
    where = spans.get(id(form), (None, None))
    if not isinstance(form, list) or not form:
        raise DesignatorSyntaxError("designator must be a non-empty list",
                                    *where, expected=("(",))
    if depth > MAX_NESTING:
        raise DesignatorSyntaxError(f"designator nesting deeper than {MAX_NESTING}",
                                    *where)
    head = form[0]

    if isinstance(head, list):
        # bare property list, e.g. ((on rack) (shelf 2)): a location description
        return Designator(LOCATION, "a",
                          _interpret_properties(form, spans, depth, LOCATION, where))

    if not isinstance(head, sexpr.Symbol):
        raise DesignatorSyntaxError("designator head must be a symbol", *where,
                                    expected=("an", "a", "fetch-and-place"))

    if head == "fetch-and-place":
        if len(form) != 3:
            raise DesignatorSyntaxError(
                "fetch-and-place takes exactly an object and a location", *where)
        obj = _interpret(form[1], spans, depth + 1)
        loc = _interpret(form[2], spans, depth + 1)
        if obj.kind != OBJECT:
            raise DesignatorSyntaxError("fetch-and-place: first child must be an object",
                                        *where)
        if loc.kind != LOCATION:
            raise DesignatorSyntaxError("fetch-and-place: second child must be a location",
                                        *where)
        return Designator(TASK, "", (("object", obj), ("location", loc)))

    if head in ("an", "a"):
        if len(form) < 2 or not isinstance(form[1], sexpr.Symbol) \
                or form[1] not in (OBJECT, LOCATION):
            raise DesignatorSyntaxError(f"expected 'object' or 'location' after '{head}'",
                                        *where, expected=(OBJECT, LOCATION))
        kind = str(form[1])
        props = _interpret_properties(form[2:], spans, depth, kind, where)
        return Designator(kind, str(head), props)

    raise DesignatorSyntaxError(f"unknown designator form '{head}'", *where,
                                expected=("an", "a", "fetch-and-place"))


def _interpret_properties(items, spans, depth, kind, where):
    if not items:
        raise DesignatorSyntaxError("designator property list must be non-empty", *where)
    allowed = OBJECT_KEYS if kind == OBJECT else LOCATION_KEYS
    props = []
    for item in items:
        iwhere = spans.get(id(item), where)
        if not isinstance(item, list) or len(item) != 2 \
                or not isinstance(item[0], sexpr.Symbol):
            raise DesignatorSyntaxError("property must be a (key value) pair", *iwhere)
        key = str(item[0])
        if key not in ALL_KEYS:
            raise UnknownKeyError(key, *iwhere)
        if key not in allowed:
            raise UnknownKeyError(f"{key} (not valid on {kind} designators)", *iwhere)
        value = item[1]
        if isinstance(value, list):
            value = _interpret(value, spans, depth + 1)
        props.append((key, value))
    return tuple(props)


def parse_designator(text: str) -> Designator:
    """Parse designator text into a tree; see the module grammar notes."""
    form, spans = sexpr.parse(text)
    return _interpret(form, spans, 1)


def _value_form(value):
    if isinstance(value, Designator):
        return _designator_form(value)
    return value


def _designator_form(d: Designator):
    if d.kind == TASK:
        return [sexpr.Symbol("fetch-and-place"),
                _designator_form(d.get("object")),
                _designator_form(d.get("location"))]
    head = [sexpr.Symbol(d.determiner or "a"), sexpr.Symbol(d.kind)]
    return head + [[sexpr.Symbol(k), _value_form(v)] for k, v in d.properties]


def print_designator(d: Designator) -> str:
    """Render a designator canonically; parse(print(d)) == d."""
    return sexpr.dumps(_designator_form(d))


# ---------------------------------------------------------------------------
# Resolution
# ---------------------------------------------------------------------------


def _matches_object(inst: ObjectInstance, props) -> bool:
    for key, value in props:
        wanted = str(value)
        if key == "type":
            got = inst.cls.shape
        elif key == "label":
            got = inst.cls.name
        elif key == "color":
            got = inst.cls.color
        elif key == "category":
            got = inst.cls.category
        else:
            raise NotAnObjectDesignatorError(
                f"property '{key}' is not valid on object designators")
        if got != wanted:
            return False
    return True


def resolve_object(d: Designator, state: WorldState) -> Resolution:
    """All instances whose class satisfies every property, id-ordered."""
    if d.kind != OBJECT:
        raise NotAnObjectDesignatorError(f"expected an object designator, got {d.kind}")
    matches = tuple(o.id for o in state.objects if _matches_object(o, d.properties))
    if not matches:
        raise NoMatchError(f"no object matches {print_designator(d)}")
    return Resolution(matches)


def _matched_cells(d: Designator, state: WorldState) -> list[Cell]:
    try:
        ids = resolve_object(d, state).candidates
    except NoMatchError as exc:
        raise UnresolvableInnerObjectError(str(exc)) from None
    return [state.by_id[i].cell for i in ids if state.by_id[i].cell is not None]


def resolve_location(d: Designator, state: WorldState,
                     model: RackModel) -> Resolution:
    """Free, supported, front-row cells satisfying every constraint.

    Candidates are enumerated in (shelf, column) order; the first one is
    the designated referent.
    """
    if d.kind != LOCATION:
        raise NotALocationDesignatorError(f"expected a location designator, got {d.kind}")
    cells = [Cell(shelf, column, 0)
             for shelf in range(model.shelf_count)
             for column in range(model.column_count)
             if not state.stack_at(Cell(shelf, column, 0))]
    for key, value in d.properties:
        if key == "on":
            if str(value) != model.name:
                cells = []
        elif key == "shelf":
            cells = [c for c in cells if c.shelf == value]
        elif key == "near":
            refs = _matched_cells(value, state)
            cells = [c for c in cells
                     if any(abs(c.shelf - r.shelf) + abs(c.column - r.column)
                            <= NEAR_RADIUS for r in refs)]
        elif key == "left-of":
            refs = _matched_cells(value, state)
            cells = [c for c in cells
                     if refs and all(c.shelf == r.shelf and c.column < r.column
                                     for r in refs)]
        elif key == "right-of":
            refs = _matched_cells(value, state)
            cells = [c for c in cells
                     if refs and all(c.shelf == r.shelf and c.column > r.column
                                     for r in refs)]
        else:
            raise NotALocationDesignatorError(
                f"property '{key}' is not valid on location designators")
    if not cells:
        raise NoMatchError(f"no cell satisfies {print_designator(d)}")
    return Resolution(tuple(cells))


# ---------------------------------------------------------------------------
# Relational goal resolution
# ---------------------------------------------------------------------------


def _relation_classes(d: Designator, state: WorldState) -> set[str]:
    ids = resolve_object(d, state).candidates
    return {state.by_id[i].cls.name for i in ids}


def _layout_cells(layout: dict[Cell, str], classes: set[str]) -> list[Cell]:
    return [cell for cell, name in layout.items() if name in classes]


def _relation_holds(relation: Relation, layout: dict[Cell, str],
                    state: WorldState) -> bool:
    subject = _layout_cells(layout, _relation_classes(relation.subject, state))
    if not subject:
        return False
    if relation.kind == "on-shelf":
        shelf = relation.reference if isinstance(relation.reference, int) \
            else relation.reference.get("shelf")
        return all(c.shelf == shelf for c in subject)
    reference = _layout_cells(layout, _relation_classes(relation.reference, state))
    if not reference:
        return False
    if relation.kind == "near":
        return min(abs(s.shelf - r.shelf) + abs(s.column - r.column)
                   for s in subject for r in reference) <= NEAR_RADIUS
    if relation.kind == "left-of":
        return all(s.shelf == r.shelf and s.column < r.column
                   for s in subject for r in reference)
    if relation.kind == "right-of":
        return all(s.shelf == r.shelf and s.column > r.column
                   for s in subject for r in reference)
    raise UnsatisfiableRelationsError(f"unknown relation kind {relation.kind!r}")


def _order_cycle(relations, state: WorldState):
    """Find a subject/reference pair involved in a precedence cycle, if any."""
    edges: list[tuple[str, str, Relation]] = []
    for rel in relations:
        if rel.kind not in ("left-of", "right-of"):
            continue
        subj = _relation_classes(rel.subject, state)
        ref = _relation_classes(rel.reference, state)
        for s in subj:
            for r in ref:
                if rel.kind == "left-of":
                    edges.append((s, r, rel))
                else:
                    edges.append((r, s, rel))
    graph: dict[str, set[str]] = {}
    for a, b, _ in edges:
        graph.setdefault(a, set()).add(b)

    def reaches(src: str, dst: str, seen: set[str]) -> bool:
        if src == dst:
            return True
        if src in seen:
            return False
        seen.add(src)
        return any(reaches(nxt, dst, seen) for nxt in graph.get(src, ()))

    for a, b, rel in edges:
        if reaches(b, a, set()):
            return rel
    return None


def resolve_goal(relational: GoalSpec, state: WorldState,
                 model: RackModel) -> GoalSpec:
    """Turn a relational goal into a generic class layout via tessellation.

    Product groups are the non-clutter classes present in the state, in
    first-occurrence order over id-sorted instances, each with its
    instance count; the region is the whole rack.  Group permutations
    are tried in deterministic order until one tessellation satisfies
    every relation; conflicting relations fail instead of guessing.
    """
    if relational.kind != RELATIONAL:
        raise UnsatisfiableRelationsError(
            f"expected a relational goal, got {relational.kind}")
    order: list = []
    counts: dict[str, int] = {}
    for obj in state.objects:
        if obj.cls.clutter:
            continue
        if obj.cls.name not in counts:
            order.append(obj.cls)
            counts[obj.cls.name] = 0
        counts[obj.cls.name] += 1
    groups = [(cls, counts[cls.name]) for cls in order]
    region = [(shelf, (0, model.column_count - 1))
              for shelf in range(model.shelf_count)]
    relations = tuple(relational.relations or ())

    cyclic = _order_cycle(relations, state)
    if cyclic is not None:
        raise UnsatisfiableRelationsError(
            "cyclic ordering constraints",
            pair=(print_designator(cyclic.subject), print_designator(cyclic.reference)))

    failing = None
    for perm in permutations(groups):
        layout = tessellate(model, region, perm)
        failing = next((rel for rel in relations
                        if not _relation_holds(rel, layout, state)), None)
        if failing is None:
            return GoalSpec(GENERIC, class_layout=layout,
                            robot_goal=relational.robot_goal)
    if failing is None:
        raise UnsatisfiableRelationsError("no product groups to lay out")
    raise UnsatisfiableRelationsError(
        "no group ordering satisfies every relation",
        pair=(print_designator(failing.subject),
              print_designator(failing.reference)
              if isinstance(failing.reference, Designator) else str(failing.reference)))
