"""Shelf rearrangement planning with generic goals, designators, and a
failure-injecting execution simulator."""

from .errors import (
    DesignatorError,
    DesignatorSyntaxError,
    EmptyStateError,
    NoMatchError,
    NoSolutionError,
    PreconditionViolated,
    RackPlanError,
    RegionTooSmallError,
    UnknownClassError,
    UnknownKeyError,
    UnknownObjectError,
    UnresolvedGoalError,
    UnsatisfiableRelationsError,
    ValidationError,
)
from .model import (
    Action,
    Anomaly,
    BaseStation,
    Cell,
    EXPLICIT,
    GENERIC,
    GoalSpec,
    LEFT,
    ObjectClass,
    ObjectInstance,
    RackModel,
    Relation,
    RELATIONAL,
    RIGHT,
    RobotGoal,
    TorsoLevel,
    WorldState,
    apply_action,
    detect_anomalies,
    handover,
    legal_actions,
    misplaced_count,
    move_base,
    move_torso,
    occluders_of,
    pick,
    place,
    robot_state_delta,
    tessellate,
)
from .planner import (
    CostWeights,
    Plan,
    SearchLimits,
    SearchResult,
    goal_satisfied,
    heuristic,
    plan_astar,
    transition_cost,
    verify_plan,
)
from .designator import (
    Designator,
    Resolution,
    parse_designator,
    print_designator,
    resolve_goal,
    resolve_location,
    resolve_object,
)
from .simulator import (
    EpisodeLog,
    FailurePolicy,
    MetricsRow,
    ObservationNoise,
    execute,
    observe,
    summarize,
)
from .scenario import (
    Scenario,
    TaskGoal,
    TessellationGoal,
    corpus_paths,
    load_scenario,
    loads_scenario,
    save_scenario,
)
from .report import render_figures, render_report

__version__ = "0.1.0"
