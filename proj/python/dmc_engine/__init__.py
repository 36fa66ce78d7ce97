"""Alpha-beta chess search with dynamic move chains and move tables."""

from ._core import (
    DATA_DIR,
    ChainStore,
    ChessError,
    Color,
    ConfigError,
    Engine,
    GameRecordError,
    MoveTables,
    PieceType,
    Position,
    bench,
    describe_config,
    evaluate,
    perft,
    quiescence_moves,
    search,
    square_control,
)

__all__ = [
    "DATA_DIR",
    "ChainStore",
    "ChessError",
    "Color",
    "ConfigError",
    "Engine",
    "GameRecordError",
    "MoveTables",
    "PieceType",
    "Position",
    "bench",
    "describe_config",
    "evaluate",
    "perft",
    "quiescence_moves",
    "search",
    "square_control",
]
