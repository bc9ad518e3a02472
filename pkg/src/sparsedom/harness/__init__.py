"""File formats, generators, the directed degree-reduction gadget, benchmarks and the CLI."""

from .bench import BenchConfig, RunReport, bench, to_csv, verify_witness
from .gadget import degree_reduction_gadget, disjoint_paths, total_degree
from .generators import FAMILIES, generate
from .io import InstanceFile, ParseError, emit_instance, graph_instance, parse_instance

__all__ = [
    "BenchConfig", "RunReport", "bench", "to_csv", "verify_witness",
    "degree_reduction_gadget", "disjoint_paths", "total_degree",
    "FAMILIES", "generate",
    "InstanceFile", "ParseError", "emit_instance", "graph_instance", "parse_instance",
]
