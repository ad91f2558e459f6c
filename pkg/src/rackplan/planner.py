"""A* planning over rack states with k-best enumeration of distinct plans.

The search uses the misplaced-object fraction as its heuristic, which
never exceeds 1 and thus never overestimates the cost of any remaining
action (all action weights are at least 1).  Additional solutions are
enumerated by banning each found plan's complete action signature and
restarting the search with a fresh closed list; a banned goal arrival is
simply not accepted and the search continues past it.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from time import perf_counter

from .errors import (
    EmptyStateError,
    NoSolutionError,
    PreconditionViolated,
    ValidationError,
)
from .model import (
    EXPLICIT,
    HANDOVER,
    MOVE_BASE,
    MOVE_TORSO,
    PICK,
    PLACE,
    Action,
    GoalSpec,
    RackModel,
    WorldState,
    apply_action,
    legal_actions,
    misplaced_count,
    robot_state_delta,
)


@dataclass(frozen=True)
class CostWeights:
    """Per-action-type weights used for plan cost accounting.

    All weights must be >= 1 so the misplaced-fraction heuristic stays
    admissible.
    """

    pick: float = 1.2
    place: float = 1.2
    move_torso: float = 2.0
    move_base: float = 1.0
    handover: float = 1.5

    def __post_init__(self):
        for name in ("pick", "place", "move_torso", "move_base", "handover"):
            if getattr(self, name) < 1:
                raise ValidationError(f"weight {name} must be >= 1")

    def of(self, kind: str) -> float:
        if kind == PICK:
            return self.pick
        if kind == PLACE:
            return self.place
        if kind == MOVE_TORSO:
            return self.move_torso
        if kind == MOVE_BASE:
            return self.move_base
        if kind == HANDOVER:
            return self.handover
        raise ValidationError(f"unknown action kind {kind!r}")

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.pick, self.place, self.move_torso, self.move_base, self.handover)


@dataclass(frozen=True)
class Plan:
    """An ordered action sequence with its accumulated weight sum."""

    actions: tuple[Action, ...]
    cost: float
    plan_time: float = 0.0

    def signature(self) -> tuple:
        return tuple(a.signature() for a in self.actions)

    def count(self, kind: str) -> int:
        return sum(1 for a in self.actions if a.kind == kind)


@dataclass(frozen=True)
class SearchLimits:
    """Bounds on one planning call.

    ``max_expansions`` applies per search restart; ``timeout`` (seconds)
    covers the whole call including all restarts.
    """

    max_expansions: int = 500_000
    max_solutions: int = 1
    timeout: float = 60.0

    def __post_init__(self):
        if self.max_expansions <= 0 or self.max_solutions <= 0 or self.timeout <= 0:
            raise ValidationError("search limits must all be positive")


@dataclass
class SearchResult:
    """Plans found by plan_astar, cheapest first.

    ``truncated`` is set when expansion or time limits cut enumeration
    short; when it is False, every plan the restart scheme can produce
    has been returned.
    """

    plans: list[Plan]
    truncated: bool = False
    expansions: int = 0

    def __iter__(self):
        return iter(self.plans)

    def __len__(self):
        return len(self.plans)


def heuristic(state: WorldState, goal: GoalSpec) -> float:
    """Fraction of misplaced objects, in [0, 1]."""
    goal.require_resolved()
    total = len(state.objects)
    if total == 0:
        empty_goal = (not goal.explicit_map) if goal.kind == EXPLICIT \
            else (not goal.class_layout)
        if empty_goal:
            return 0.0
        raise EmptyStateError("heuristic undefined for an empty state with a non-empty goal")
    return misplaced_count(state, goal) / total


def transition_cost(actions: list[Action] | tuple[Action, ...],
                    weights: CostWeights,
                    s0: WorldState, s1: WorldState) -> float:
    """Weight sum of the actions plus the robot-configuration delta.

    With identical end states the delta term is zero and the result is
    the pure accumulated action cost used in reports.
    """
    total = 0.0
    for action in actions:
        total += weights.of(action.kind)
    return total + robot_state_delta(s0, s1)


def goal_satisfied(state: WorldState, goal: GoalSpec) -> bool:
    """Goal test used by the search.

    Explicit: every mapped object sits at its mapped cell.  Generic:
    every layout cell holds exactly one instance of the required class on
    the shelf surface, and both hands are empty.  Same-class instances
    are interchangeable under generic goals.
    """
    goal.require_resolved()
    if goal.robot_goal is not None and not goal.robot_goal.satisfied(state):
        return False
    if goal.kind == EXPLICIT:
        for object_id, cell in goal.explicit_map.items():
            inst = state.by_id.get(object_id)
            if inst is None or inst.cell != cell:
                return False
        return True
    if state.left_hand is not None or state.right_hand is not None:
        return False
    for cell, class_name in goal.class_layout.items():
        stack = state.stack_at(cell)
        if len(stack) != 1 or stack[0].cls.name != class_name:
            return False
    return True


def _reconstruct(parents: dict, state: WorldState) -> list[Action]:
    actions: list[Action] = []
    while True:
        entry = parents[state]
        if entry is None:
            break
        state, action = entry
        actions.append(action)
    actions.reverse()
    return actions


def _search_once(start: WorldState, goal: GoalSpec, model: RackModel,
                 weights: CostWeights, limits: SearchLimits,
                 banned: set[tuple], deadline: float):
    """One A* run; returns ((actions, cost) | None, expansions, hit_limit)."""
    counter = itertools.count()
    g: dict[WorldState, float] = {start: 0.0}
    parents: dict[WorldState, tuple | None] = {start: None}
    closed: set[WorldState] = set()
    h0 = heuristic(start, goal)
    heap: list[tuple] = [(h0, h0, next(counter), 0.0, start)]
    expansions = 0
    while heap:
        _, _, _, gs, state = heapq.heappop(heap)
        if state in closed or gs > g.get(state, float("inf")):
            continue
        closed.add(state)
        if goal_satisfied(state, goal):
            actions = _reconstruct(parents, state)
            if tuple(a.signature() for a in actions) not in banned:
                return (actions, gs), expansions, False
        expansions += 1
        if expansions >= limits.max_expansions:
            return None, expansions, True
        if expansions % 256 == 0 and perf_counter() > deadline:
            return None, expansions, True
        for action in legal_actions(state, model, goal):
            child = apply_action(state, action, model)
            if child in closed:
                continue
            ng = gs + weights.of(action.kind)
            if ng < g.get(child, float("inf")):
                g[child] = ng
                parents[child] = (state, action)
                hc = heuristic(child, goal)
                heapq.heappush(heap, (ng + hc, hc, next(counter), ng, child))
    return None, expansions, False


def plan_astar(start: WorldState, goal: GoalSpec, model: RackModel,
               weights: CostWeights | None = None,
               limits: SearchLimits | None = None) -> SearchResult:
    """Find up to ``limits.max_solutions`` plans, in nondecreasing cost order.

    The first plan is cost-optimal within the limits; later plans have
    pairwise distinct action signatures.  An already satisfied goal
    yields one empty plan of cost 0.  Raises NoSolutionError when no
    plan at all can be found.
    """
    weights = weights or CostWeights()
    limits = limits or SearchLimits()
    deadline = perf_counter() + limits.timeout
    banned: set[tuple] = set()
    plans: list[Plan] = []
    truncated = False
    total_expansions = 0
    for _ in range(limits.max_solutions):
        t0 = perf_counter()
        found, expansions, hit_limit = _search_once(
            start, goal, model, weights, limits, banned, deadline)
        total_expansions += expansions
        if found is None:
            truncated = hit_limit
            break
        actions, cost = found
        plan = Plan(actions=tuple(actions), cost=cost,
                    plan_time=perf_counter() - t0)
        plans.append(plan)
        banned.add(plan.signature())
    if not plans:
        if truncated:
            raise NoSolutionError("search limits exceeded before any plan was found",
                                  truncated=True)
        raise NoSolutionError("search exhausted without reaching the goal")
    return SearchResult(plans=plans, truncated=truncated,
                        expansions=total_expansions)


@dataclass
class VerifyResult:
    """Outcome of replaying a plan; truthy iff the plan checks out."""

    ok: bool
    step: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_plan(start: WorldState, plan: Plan, goal: GoalSpec,
                model: RackModel, weights: CostWeights | None = None) -> VerifyResult:
    """Replay a plan from ``start``: preconditions, goal, and stored cost.

    Returns a falsy result with the first failing step's diagnostic when
    any action precondition fails, the final state misses the goal, or
    the stored cost disagrees with the recomputed weight sum.
    """
    weights = weights or CostWeights()
    state = start
    cost = 0.0
    for index, action in enumerate(plan.actions):
        try:
            state = apply_action(state, action, model)
        except PreconditionViolated as exc:
            return VerifyResult(False, index, str(exc))
        cost += weights.of(action.kind)
    if not goal_satisfied(state, goal):
        return VerifyResult(False, len(plan.actions), "final state does not satisfy the goal")
    if abs(cost - plan.cost) > 1e-9:
        return VerifyResult(False, None,
                            f"stored cost {plan.cost} != recomputed {cost}")
    return VerifyResult(True)
