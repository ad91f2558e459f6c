"""Seeded execution of plans against a ground truth the planner cannot see.

The simulator keeps two states: the truth, which actions modify, and the
belief, formed from noisy observations, which planning runs on.  Action
outcomes (grasp failures, drops, trajectory failures) are drawn from
independent substreams of one seeded source, keyed by plan, action, and
retry index, so identical seeds replay identical episodes and extra
retries never shift later samples.

Failures accumulate toward a per-plan frustration counter; exceeding the
limit abandons the remaining plan and replans from a fresh observation.
After every manipulation the belief predicted by the action is checked
against a fresh restricted observation of the touched cells; any
disagreement also triggers a replan.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field, replace
from typing import Protocol

from . import designator as _designator
from .errors import ValidationError
from .model import (
    Cell,
    GoalSpec,
    HANDOVER,
    MOVE_BASE,
    MOVE_TORSO,
    PICK,
    PLACE,
    RELATIONAL,
    Action,
    RackModel,
    WorldState,
    apply_action,
    detect_anomalies,
)
from .planner import (
    CostWeights,
    SearchLimits,
    goal_satisfied,
    plan_astar,
)

SUCCESS = "success"
GRASP_FAILURE = "grasp-failure"
DROP = "drop"
TRAJECTORY_FAILURE = "trajectory-failure"

FRUSTRATION_EXCEEDED = "frustration-exceeded"
BELIEF_MISMATCH = "belief-mismatch"

# Fixed key order of serialized log entries; part of the stable file format.
ENTRY_FIELDS = ("action", "outcome", "retry", "observation", "replan_trigger",
                "replan_detail", "plan_index", "plan_cost", "plan_time",
                "plan_actions", "ts")


@dataclass(frozen=True)
class FailurePolicy:
    """Failure probabilities, retry and frustration limits, and the seed."""

    p_grasp_fail: float = 0.0
    p_drop: float = 0.0
    p_trajectory_fail: float = 0.0
    retry_limit: int = 3
    frustration_limit: int = 3
    seed: int = 0

    def __post_init__(self):
        for name in ("p_grasp_fail", "p_drop", "p_trajectory_fail"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"{name} must be in [0, 1]")
        if self.retry_limit < 0:
            raise ValidationError("retry_limit must be non-negative")
        if self.frustration_limit < 1:
            raise ValidationError("frustration_limit must be positive")


@dataclass(frozen=True)
class ObservationNoise:
    """Perception noise: omitted objects and stacks merged into their top."""

    p_omit: float = 0.0
    p_merge: float = 0.0

    def __post_init__(self):
        for name in ("p_omit", "p_merge"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"{name} must be in [0, 1]")


class GoalProvider(Protocol):
    """Resolves a goal against a state; lets templates adapt to belief."""

    def resolve(self, state: WorldState, model: RackModel) -> GoalSpec: ...


@dataclass(frozen=True)
class ConstantGoal:
    """A fixed, already resolved goal."""

    goal: GoalSpec

    def resolve(self, state: WorldState, model: RackModel) -> GoalSpec:
        return self.goal


@dataclass(frozen=True)
class RelationalGoal:
    """A relational goal re-resolved against the current state per plan."""

    goal: GoalSpec

    def resolve(self, state: WorldState, model: RackModel) -> GoalSpec:
        return _designator.resolve_goal(self.goal, state, model)


def as_goal_provider(goal) -> GoalProvider:
    if isinstance(goal, GoalSpec):
        if goal.kind == RELATIONAL:
            return RelationalGoal(goal)
        return ConstantGoal(goal)
    return goal


def substream(seed: int, *tags) -> random.Random:
    """An independent deterministic RNG for one (seed, tags) address."""
    digest = hashlib.sha256(repr((seed,) + tags).encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def state_snapshot(state: WorldState) -> dict:
    """JSON-friendly rendering of a state, stable across runs."""
    return {
        "objects": [[o.id, o.cls.name,
                     o.cell.shelf if o.cell else None,
                     o.cell.column if o.cell else None,
                     o.cell.depth if o.cell else None,
                     o.stack_level if o.cell else None]
                    for o in state.objects],
        "base": state.base,
        "torso": state.torso,
        "left": state.left_hand,
        "right": state.right_hand,
    }


def observe(truth: WorldState, noise: ObservationNoise,
            rng: random.Random) -> WorldState:
    """Derive a belief state from the truth under the given noise.

    Stacks of two or more objects collapse (with p_merge) to their top
    object reported on the shelf surface; every placed object is then
    independently omitted with p_omit.  The robot configuration, held
    objects included, is always observed exactly.  Stack levels of the
    surviving objects are re-packed from 0 so the belief stays a valid
    state.
    """
    removed: set[str] = set()
    for key in sorted(truth.stacks):
        stack = truth.stacks[key]
        if len(stack) >= 2 and rng.random() < noise.p_merge:
            removed.update(inst.id for inst in stack[:-1])
    for obj in truth.objects:
        if obj.cell is not None and rng.random() < noise.p_omit:
            removed.add(obj.id)
    objects = []
    for key in sorted(truth.stacks):
        level = 0
        for inst in truth.stacks[key]:
            if inst.id in removed:
                continue
            objects.append(replace(inst, stack_level=level))
            level += 1
    for obj in truth.objects:
        if obj.cell is None:
            objects.append(obj)
    return WorldState(objects=tuple(objects), base=truth.base, torso=truth.torso,
                      left_hand=truth.left_hand, right_hand=truth.right_hand)


@dataclass
class EpisodeLog:
    """Append-only record of one execution episode.

    ``entries`` are uniform dicts with the keys in ENTRY_FIELDS (unused
    fields null); the serialized form is one JSON object per line plus a
    final summary line.
    """

    entries: list[dict] = field(default_factory=list)
    final_state: WorldState | None = None
    goal_reached: bool = False
    replan_count: int = 0
    total_failures: int = 0
    name: str = ""
    seed: int = 0
    anomalies: tuple[str, ...] = ()
    weights: CostWeights = field(default_factory=CostWeights)
    budget_exhausted: bool = False
    final_state_data: dict | None = None

    def to_jsonl(self, timestamps: bool = True) -> str:
        lines = []
        for entry in self.entries:
            record = dict(entry)
            if not timestamps:
                record["ts"] = None
                record["plan_time"] = None
            lines.append(json.dumps(record, separators=(",", ":")))
        summary = {
            "final_state": self.final_state_data,
            "goal_reached": self.goal_reached,
            "replan_count": self.replan_count,
            "total_failures": self.total_failures,
            "name": self.name,
            "seed": self.seed,
            "anomalies": list(self.anomalies),
            "weights": list(self.weights.as_tuple()),
            "budget_exhausted": self.budget_exhausted,
        }
        lines.append(json.dumps(summary, separators=(",", ":")))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "EpisodeLog":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise ValidationError("empty episode log")
        summary = json.loads(lines[-1])
        if "final_state" not in summary:
            raise ValidationError("episode log has no summary line")
        entries = [json.loads(line) for line in lines[:-1]]
        weights = CostWeights(*summary["weights"])
        return cls(entries=entries,
                   final_state=None,
                   goal_reached=summary["goal_reached"],
                   replan_count=summary["replan_count"],
                   total_failures=summary["total_failures"],
                   name=summary.get("name", ""),
                   seed=summary.get("seed", 0),
                   anomalies=tuple(summary.get("anomalies", ())),
                   weights=weights,
                   budget_exhausted=summary.get("budget_exhausted", False),
                   final_state_data=summary["final_state"])

    # -- entry helpers ------------------------------------------------------

    def _append(self, clock, **fields) -> None:
        entry = {key: fields.get(key) for key in ENTRY_FIELDS}
        entry["ts"] = clock()
        self.entries.append(entry)

    def plan_entries(self) -> list[dict]:
        return [e for e in self.entries if e["plan_index"] is not None]

    def replan_entries(self) -> list[dict]:
        return [e for e in self.entries if e["replan_trigger"] is not None]

    def action_entries(self) -> list[dict]:
        return [e for e in self.entries if e["action"] is not None]


@dataclass(frozen=True)
class MetricsRow:
    """One report row, column-compatible with the evaluation tables."""

    name: str
    plan_time: float
    picks: int
    places: int
    move_torsos: int
    move_bases: int
    handovers: int
    cost: float
    replans: int
    goal_reached: bool
    anomalies: tuple[str, ...]


def _action_json(action: Action) -> list:
    return [part if not isinstance(part, tuple) else list(part)
            for part in action.signature()]


def _touched_cells(action: Action, belief: WorldState) -> list[Cell]:
    if action.kind == PICK:
        inst = belief.by_id.get(action.object_id)
        return [inst.cell] if inst is not None and inst.cell is not None else []
    if action.kind == PLACE:
        return [action.cell]
    return []


def _stack_view(state: WorldState, cell: Cell) -> tuple:
    return tuple((inst.id, inst.cls.name, inst.stack_level)
                 for inst in state.stack_at(cell))


def _consistent(predicted: WorldState, observed: WorldState,
                cells: list[Cell]) -> bool:
    return all(_stack_view(predicted, c) == _stack_view(observed, c)
               for c in cells)


def _return_dropped(truth: WorldState, object_id: str, hand: str,
                    source: tuple[Cell, int]) -> WorldState:
    """Put a dropped object back at its source cell (its prior level when
    still free, else on top of whatever now occupies the cell)."""
    cell, level = source
    if truth.stack_height(cell) != level:
        level = truth.stack_height(cell)
    objects = tuple(replace(o, cell=cell, stack_level=level) if o.id == object_id else o
                    for o in truth.objects)
    return WorldState(objects=objects, base=truth.base, torso=truth.torso,
                      left_hand=None if hand == "left" else truth.left_hand,
                      right_hand=None if hand == "right" else truth.right_hand)


def _attempt(truth: WorldState, action: Action, model: RackModel,
             policy: FailurePolicy, rng: random.Random,
             sources: dict[str, tuple[Cell, int]]):
    """One execution attempt against the truth: (outcome, new truth).

    Base and torso moves always succeed.  Manipulations draw a
    trajectory check first, then a grasp/drop check.  An action whose
    preconditions fail in the truth (the belief was wrong) registers as
    a trajectory failure.  A drop returns the held object to the cell it
    was picked from.
    """
    if action.kind in (MOVE_TORSO, MOVE_BASE):
        return SUCCESS, apply_action(truth, action, model)
    u_trajectory = rng.random()
    u_manipulation = rng.random()
    if u_trajectory < policy.p_trajectory_fail:
        return TRAJECTORY_FAILURE, truth
    if action.kind == PICK:
        if u_manipulation < policy.p_grasp_fail:
            return GRASP_FAILURE, truth
        obj = truth.by_id.get(action.object_id)
        try:
            new_truth = apply_action(truth, action, model)
        except Exception:
            return TRAJECTORY_FAILURE, truth
        sources[action.hand] = (obj.cell, obj.stack_level)
        return SUCCESS, new_truth
    if action.kind == PLACE:
        source = sources.get(action.hand)
        if u_manipulation < policy.p_drop and source is not None:
            return DROP, _return_dropped(truth, action.object_id, action.hand, source)
        try:
            new_truth = apply_action(truth, action, model)
        except Exception:
            return TRAJECTORY_FAILURE, truth
        sources.pop(action.hand, None)
        return SUCCESS, new_truth
    # handover
    if u_manipulation < policy.p_grasp_fail:
        return GRASP_FAILURE, truth
    try:
        new_truth = apply_action(truth, action, model)
    except Exception:
        return TRAJECTORY_FAILURE, truth
    if action.hand in sources:
        sources[action.to_hand] = sources.pop(action.hand)
    return SUCCESS, new_truth


def execute(start_truth: WorldState, goal, model: RackModel,
            weights: CostWeights | None = None,
            policy: FailurePolicy | None = None,
            noise: ObservationNoise | None = None,
            limits: SearchLimits | None = None,
            replan_budget: int = 10,
            name: str = "",
            clock=time.time) -> EpisodeLog:
    """Run one episode: observe, plan, act, retry, and replan to the goal.

    ``goal`` is a GoalSpec or a goal provider; providers (including
    relational goals) are re-resolved against the belief at every plan,
    which lets goals adapt when perception revealed new objects.  The
    final goal check runs the provider against the truth.

    Raises NoSolutionError when planning fails outright; when the replan
    budget runs out the log is returned with goal_reached False.
    """
    weights = weights or CostWeights()
    policy = policy or FailurePolicy()
    noise = noise or ObservationNoise()
    limits = limits or SearchLimits()
    limits = replace(limits, max_solutions=1)
    provider = as_goal_provider(goal)
    log = EpisodeLog(name=name, seed=policy.seed, weights=weights)
    seed = policy.seed
    obs_index = 0
    plan_index = 0
    truth = start_truth
    sources: dict[str, tuple[Cell, int]] = {}

    def full_observation() -> WorldState:
        nonlocal obs_index
        belief = observe(truth, noise, substream(seed, "obs", obs_index))
        obs_index += 1
        log._append(clock, observation=state_snapshot(belief))
        return belief

    belief = full_observation()
    current_goal = provider.resolve(belief, model)
    log.anomalies = tuple(a.tag for a in detect_anomalies(belief, current_goal, model))

    while True:
        result = plan_astar(belief, current_goal, model, weights, limits)
        plan = result.plans[0]
        log._append(clock, plan_index=plan_index, plan_cost=plan.cost,
                    plan_time=plan.plan_time,
                    plan_actions=[_action_json(a) for a in plan.actions])
        frustration = 0
        abandoned = False
        replan_trigger = None
        replan_detail = None

        for action_index, action in enumerate(plan.actions):
            executed = False
            last_outcome = None
            for retry in range(policy.retry_limit + 1):
                rng = substream(seed, "act", plan_index, action_index, retry)
                outcome, truth = _attempt(truth, action, model, policy, rng, sources)
                log._append(clock, action=_action_json(action), outcome=outcome,
                            retry=retry)
                last_outcome = outcome
                if outcome == SUCCESS:
                    executed = True
                    break
                log.total_failures += 1
                frustration += 1
                if outcome == DROP or frustration > policy.frustration_limit:
                    break
            if executed:
                predicted = apply_action(belief, action, model)
                touched = _touched_cells(action, belief)
                if touched:
                    fresh = observe(truth, noise, substream(seed, "obs", obs_index))
                    obs_index += 1
                    if not _consistent(predicted, fresh, touched):
                        replan_trigger = BELIEF_MISMATCH
                        replan_detail = ("post-action observation disagrees at "
                                         + ", ".join(str(c.key()) for c in touched))
                        abandoned = True
                        break
                belief = predicted
            else:
                if last_outcome == DROP:
                    replan_trigger = BELIEF_MISMATCH
                    replan_detail = f"dropped {action.object_id}; rack re-perceived"
                else:
                    replan_trigger = FRUSTRATION_EXCEEDED
                    replan_detail = (f"{frustration} local failures on "
                                     f"{action.describe()}")
                abandoned = True
                break

        if not abandoned:
            final_goal = provider.resolve(truth, model)
            if goal_satisfied(truth, final_goal):
                log.goal_reached = True
                break
            replan_trigger = BELIEF_MISMATCH
            replan_detail = "plan completed but the goal is not reached"

        if log.replan_count >= replan_budget:
            log.budget_exhausted = True
            break
        log._append(clock, replan_trigger=replan_trigger, replan_detail=replan_detail)
        log.replan_count += 1
        belief = full_observation()
        current_goal = provider.resolve(belief, model)
        plan_index += 1

    log.final_state = truth
    log.final_state_data = state_snapshot(truth)
    return log


def summarize(log: EpisodeLog) -> MetricsRow:
    """Reduce an episode to one report row.

    Action counts and cost come from the first plan (the cost is
    recomputed from the logged actions and weights); anomalies are the
    tags detected on the initial belief.
    """
    plans = log.plan_entries()
    counts = {PICK: 0, PLACE: 0, MOVE_TORSO: 0, MOVE_BASE: 0, HANDOVER: 0}
    cost = 0.0
    plan_time = 0.0
    if plans:
        first = plans[0]
        for sig in first["plan_actions"]:
            counts[sig[0]] += 1
            cost += log.weights.of(sig[0])
        plan_time = first["plan_time"] or 0.0
    return MetricsRow(
        name=log.name,
        plan_time=plan_time,
        picks=counts[PICK],
        places=counts[PLACE],
        move_torsos=counts[MOVE_TORSO],
        move_bases=counts[MOVE_BASE],
        handovers=counts[HANDOVER],
        cost=cost,
        replans=log.replan_count,
        goal_reached=log.goal_reached,
        anomalies=log.anomalies,
    )
