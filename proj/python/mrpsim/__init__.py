"""Python access to the mrpsim simulation core."""

from ._core import (
    ConfigError,
    ParseError,
    analyze,
    cell_count,
    lot_size,
    net_extended,
    net_standard,
    run_preset,
    simulate,
    tables,
    utilization_table,
    version,
)

__version__ = version

__all__ = [
    "ConfigError",
    "ParseError",
    "analyze",
    "cell_count",
    "lot_size",
    "net_extended",
    "net_standard",
    "run_preset",
    "simulate",
    "tables",
    "utilization_table",
]
