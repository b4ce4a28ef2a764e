"""Pursuit games on finite graphs where both sides move at once.

Solves the simultaneous-move cop-and-robber game by value iteration over
per-position matrix games, extracts optimal memoryless mixed strategies,
classifies graphs by the number of cops needed in the classical turn-based
game, and validates everything by Monte Carlo simulation. A small HTTP
service lets a human play either side against the solved policy.
"""

from .concurrent_game import (
    ConcurrentPosition,
    MixedStrategyTable,
    StepResult,
    ValueTable,
    capture_time,
    cccr_step,
    cccr_transition,
    is_capture,
    local_game,
    query_strategy,
    stage_payoff,
    value_iterate,
)
from .graph import (
    Graph,
    GraphError,
    closed_neighborhood,
    distance,
    edge_list_text,
    generate,
    graph_key,
    parse_edge_list,
)
from .matrix_game import GameSolution, MatrixGame, game_value, solve_matrix_game
from .simulation import (
    EpisodeTrace,
    StrategyError,
    StrategyHandle,
    ValueEstimate,
    delayed_evasion_strategy,
    estimate_value,
    guessing_cop_strategy,
    mixed_table_strategy,
    run_episode,
    stationary_strategy,
    uniform_random_strategy,
)
from .turn_based import (
    CopwinTable,
    DeterministicStrategy,
    canonical_opening,
    cop_number,
    extract_cop_strategy,
    extract_robber_strategy,
    solve_copwin,
    tbcr_capture_time,
    tbcr_transition,
)

__version__ = "0.1.0"

__all__ = [
    "ConcurrentPosition",
    "CopwinTable",
    "DeterministicStrategy",
    "EpisodeTrace",
    "GameSolution",
    "Graph",
    "GraphError",
    "MatrixGame",
    "MixedStrategyTable",
    "StepResult",
    "StrategyError",
    "StrategyHandle",
    "ValueEstimate",
    "ValueTable",
    "canonical_opening",
    "capture_time",
    "cccr_step",
    "cccr_transition",
    "closed_neighborhood",
    "cop_number",
    "delayed_evasion_strategy",
    "distance",
    "edge_list_text",
    "estimate_value",
    "extract_cop_strategy",
    "extract_robber_strategy",
    "game_value",
    "generate",
    "graph_key",
    "guessing_cop_strategy",
    "is_capture",
    "local_game",
    "mixed_table_strategy",
    "parse_edge_list",
    "query_strategy",
    "run_episode",
    "solve_copwin",
    "solve_matrix_game",
    "stage_payoff",
    "stationary_strategy",
    "uniform_random_strategy",
    "tbcr_capture_time",
    "tbcr_transition",
    "value_iterate",
]
