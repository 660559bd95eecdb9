import logging

import typer
from rich.table import Table

from app.algebra import cayley
from app.algebra.graph import automorphism_group, is_edge_transitive, vertex_connectivity
from app.algebra.tgraph import TranspositionSet, family_info, is_generating, to_graph
from app.cli.output import console, emit_json, fail_from, read_input, yes_no
from app.core.config import settings
from app.core.errors import CaygenError, get_capacity_error
from app.schemas.schemas import AnalysisReport, CayleyStats, InputSpec
from app.verification.checks import parity_bipartition

logger = logging.getLogger(__name__)


def build_report(spec: InputSpec, s: TranspositionSet, materialize: bool = False) -> AnalysisReport:
    report = AnalysisReport(
        source=spec.source,
        n=s.n,
        num_generators=len(s),
        generators=s.sorted_pairs(),
        generating=is_generating(s),
    )
    if spec.kind == "family":
        report.cayley_name = family_info(spec.family).cayley_name
    if not report.generating:
        report.note = f"T(S) is disconnected, so S does not generate S_{s.n}; analysis stops here"
        return report

    t = to_graph(s)
    t_aut = automorphism_group(t)
    verdict = cayley.fast_is_edge_transitive(s)
    report.t_edge_transitive = is_edge_transitive(t, t_aut)
    report.t_aut_order = t_aut.order
    report.cayley_edge_transitive = verdict.value
    report.in_theorem_range = verdict.in_theorem_range
    if not verdict.in_theorem_range:
        report.note = f"the Cayley verdict is read off T(S) and is only guaranteed for n >= {cayley.THEOREM_MIN_DEGREE}"

    if materialize:
        if s.n > settings.MAX_ORACLE_DEGREE:
            raise get_capacity_error("degree", s.n, settings.MAX_ORACLE_DEGREE, hint="drop --materialize")
        report.cayley = _cayley_stats(s)
    return report


def _cayley_stats(s: TranspositionSet) -> CayleyStats:
    x = cayley.build(s)
    bipartite, parity_sides = parity_bipartition(x)
    aut = automorphism_group(x.graph)
    g_e = aut.stabilizer(x.identity_vertex)
    l_e = g_e.pointwise_stabilizer([x.identity_vertex, *x.neighbors(x.identity_vertex)])
    logger.debug("Cay(S_%d, S): |Aut|=%d |G_e|=%d |L_e|=%d", s.n, aut.order, g_e.order, l_e.order)
    return CayleyStats(
        vertices=x.num_vertices,
        edges=x.num_edges,
        regular_degree=len(s),
        bipartite=bipartite,
        parity_bipartition=parity_sides,
        aut_order=aut.order,
        g_e_order=g_e.order,
        l_e_order=l_e.order,
        connectivity=vertex_connectivity(x.graph),
    )


def _render(report: AnalysisReport) -> None:
    table = Table(show_header=False, box=None)
    table.add_column(style="bold")
    table.add_column()
    table.add_row("source", report.source)
    if report.cayley_name:
        table.add_row("family", report.cayley_name)
    table.add_row("n", str(report.n))
    table.add_row("|S|", str(report.num_generators))
    table.add_row("generators", " ".join(f"({i} {j})" for i, j in report.generators))
    table.add_row("generating", yes_no(report.generating))
    if report.generating:
        table.add_row("T edge-transitive", yes_no(report.t_edge_transitive))
        table.add_row("|Aut(T)|", str(report.t_aut_order))
        range_flag = "n >= 5" if report.in_theorem_range else "n < 5, unproven"
        table.add_row("Cayley edge-transitive", f"{yes_no(report.cayley_edge_transitive)} ({range_flag})")
    if report.cayley is not None:
        stats = report.cayley
        table.add_row("Cayley vertices", str(stats.vertices))
        table.add_row("Cayley edges", str(stats.edges))
        table.add_row("bipartite", yes_no(stats.bipartite))
        table.add_row("parts are parity classes", yes_no(stats.parity_bipartition))
        table.add_row("|Aut|", str(stats.aut_order))
        table.add_row("|G_e|", str(stats.g_e_order))
        table.add_row("|L_e|", str(stats.l_e_order))
        table.add_row("connectivity", str(stats.connectivity))
    if report.note:
        table.add_row("note", report.note)
    console.print(table, highlight=False)


def analyze(
    source: str = typer.Argument(..., help="Edge-list file or family URI such as family:star:5"),
    materialize: bool = typer.Option(False, "--materialize", help="Build the Cayley graph and compute its statistics (n <= 5)"),
    as_json: bool = typer.Option(False, "--json", help="Print a single JSON document"),
):
    """Analyze a transposition set and its Cayley graph."""
    try:
        spec, s = read_input(source, {"materialize": materialize})
        report = build_report(spec, s, materialize=materialize)
    except CaygenError as e:
        fail_from(e, as_json)
    if as_json:
        emit_json(report)
    else:
        _render(report)
