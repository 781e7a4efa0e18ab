"""Identifying codes on graphs, binary Hamming spaces and periodic grids."""

from .graph import Graph, GraphError, GraphFormatError, SizeGuardError, format_graph, parse_graph
from .solve import (
    Budget,
    BudgetExceeded,
    SolveReport,
    TwinsPresent,
    count_min_id_codes,
    count_min_socs,
    min_id_code,
    min_ld_code,
    min_soc,
)
from .verify import Violation, check, is_identifying

__version__ = "0.1.0"
