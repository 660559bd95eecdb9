"""Executable checks of the equivalence theorems and their supporting results.

Each check computes a theorem-based prediction ("fast") and an
independently computed value ("oracle") and records whether they agree.
Oracle paths never call the fast paths.  Results below the theorems'
stated range are recorded as exploratory and not asserted.
"""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Any, Callable, Optional

from app.algebra import cayley
from app.algebra.cayley import CayleyGraph, within_theorem_range
from app.algebra.graph import (
    PermutationGroup,
    automorphism_group,
    component_labels,
    contains_k4,
    find_isomorphism,
    induced_edge_mapping,
    is_arc_transitive,
    is_bipartite,
    is_edge_transitive,
    line_graph,
    vertex_connectivity,
    whitney_lift,
)
from app.algebra.perm import Permutation
from app.algebra.tgraph import TranspositionSet, enumerate_connected, is_generating, to_graph
from app.core.config import settings
from app.core.errors import PreconditionError, get_capacity_error
from app.schemas.schemas import ClaimId, SweepReport, VerificationReport

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def _cayley(s: TranspositionSet) -> CayleyGraph:
    return cayley.build(s)


@lru_cache(maxsize=64)
def _cayley_aut(s: TranspositionSet) -> PermutationGroup:
    return automorphism_group(_cayley(s).graph)


def _timed(fn: Callable[[], Any]) -> tuple[Any, float]:
    start = time.perf_counter()
    value = fn()
    return value, round((time.perf_counter() - start) * 1000.0, 3)


def _require_generating(*sets: TranspositionSet) -> None:
    for s in sets:
        if not is_generating(s):
            raise PreconditionError(f"{s} does not generate S_{s.n}")


def _require_degree(s: TranspositionSet, limit: int, what: str = "degree") -> None:
    if s.n > limit:
        raise get_capacity_error(what, s.n, limit)


def _report(
    claim: ClaimId,
    s: TranspositionSet,
    fast: tuple[Any, float],
    oracle: tuple[Any, float],
    asserted: bool,
    s2: Optional[TranspositionSet] = None,
    details: Optional[dict[str, Any]] = None,
) -> VerificationReport:
    report = VerificationReport(
        claim=claim,
        n=s.n,
        s=s.sorted_pairs(),
        s2=s2.sorted_pairs() if s2 is not None else None,
        fast=fast[0],
        oracle=oracle[0],
        agree=fast[0] == oracle[0],
        asserted=asserted,
        exploratory=not within_theorem_range(s.n),
        ms_fast=fast[1],
        ms_oracle=oracle[1],
        details=details or {},
    )
    if report.failed:
        logger.warning("%s disagrees on %s: fast=%r oracle=%r", claim.value, s, report.fast, report.oracle)
    return report


def verify_part_a(s: TranspositionSet, s2: TranspositionSet) -> VerificationReport:
    """Cayley graphs isomorphic iff transposition graphs isomorphic."""
    if s.n != s2.n:
        raise PreconditionError("both sets must act on the same degree")
    _require_generating(s, s2)
    _require_degree(s, settings.MAX_ORACLE_DEGREE)
    details: dict[str, Any] = {}

    f, ms_fast = _timed(lambda: find_isomorphism(to_graph(s), to_graph(s2)))
    x, x2 = _cayley(s), _cayley(s2)
    phi, ms_oracle = _timed(lambda: find_isomorphism(x.graph, x2.graph))

    if f is not None:
        cayley.conjugation_isomorphism(x, x2, f)
        details["conjugation_certified"] = True
    if phi is not None and within_theorem_range(s.n):
        cayley.transposition_isomorphism(x, x2, phi)
        details["recovered_isomorphism"] = True
    return _report(
        ClaimId.part_a, s, (f is not None, ms_fast), (phi is not None, ms_oracle),
        asserted=within_theorem_range(s.n), s2=s2, details=details,
    )


def verify_part_b(s: TranspositionSet) -> VerificationReport:
    """Cayley graph edge-transitive iff transposition graph edge-transitive."""
    _require_generating(s)
    _require_degree(s, settings.MAX_ORACLE_DEGREE)
    fast = _timed(lambda: cayley.fast_is_edge_transitive(s).value)
    oracle = _timed(lambda: is_edge_transitive(_cayley(s).graph, _cayley_aut(s)))
    return _report(
        ClaimId.part_b, s, fast, oracle,
        asserted=within_theorem_range(s.n),
        details={"aut_order": _cayley_aut(s).order},
    )


def check_restriction_property(s: TranspositionSet) -> VerificationReport:
    """Every g in G_e fixes S setwise and restricts to an automorphism of L(T(S))."""
    _require_generating(s)
    _require_degree(s, settings.MAX_STABILIZER_DEGREE)
    x = _cayley(s)
    lt, _ = line_graph(to_graph(s))
    g_e = _cayley_aut(s).stabilizer(x.identity_vertex)

    def observed() -> int:
        good = 0
        for g in g_e.elements:
            restriction = cayley.restrict_to_generators(x, g)
            if restriction is not None and restriction.is_automorphism(lt):
                good += 1
        return good

    oracle = _timed(observed)
    return _report(
        ClaimId.restriction, s, (g_e.order, 0.0), oracle,
        asserted=s.n >= 4,
        details={"g_e_order": g_e.order, "line_aut_order": automorphism_group(lt).order},
    )


def check_stabilizer_decomposition(s: TranspositionSet) -> VerificationReport:
    """G_e = L_e x| Aut(S_n, S)."""
    _require_generating(s)
    _require_degree(s, settings.MAX_STABILIZER_DEGREE)
    x = _cayley(s)
    decomposition, ms_oracle = _timed(lambda: cayley.stabilizer_decomposition(x))
    t_order, ms_fast = _timed(lambda: automorphism_group(to_graph(s)).order)
    fast = {"order": decomposition.l_e.order * t_order, "certified": True}
    oracle = {"order": decomposition.g_e.order, "certified": decomposition.certified}
    return _report(
        ClaimId.stabilizer, s, (fast, ms_fast), (oracle, ms_oracle),
        asserted=s.n >= 4,
        details={
            "g_e_order": decomposition.g_e.order,
            "l_e_order": decomposition.l_e.order,
            "aut_sns_order": len(decomposition.conjugations),
            "checks": decomposition.checks,
        },
    )


def check_arc_transitivity(s: TranspositionSet) -> VerificationReport:
    """r_t swaps the arc (e, t); edge-transitive Cayley graphs are arc-transitive."""
    _require_generating(s)
    _require_degree(s, settings.MAX_ORACLE_DEGREE)
    x = _cayley(s)
    aut = _cayley_aut(s)

    def right_swaps() -> bool:
        e = x.identity_vertex
        for v, (a, b) in x.generator_vertices().items():
            r_t = cayley.right_regular_automorphism(x, Permutation.transposition(a, b, s.n))
            if not (r_t.is_automorphism(x.graph) and r_t(e) == v and r_t(v) == e):
                return False
        return True

    edge_transitive = is_edge_transitive(x.graph, aut)
    fast = _timed(lambda: {"right_swaps": True, "arc_transitive": edge_transitive})
    oracle = _timed(lambda: {"right_swaps": right_swaps(), "arc_transitive": is_arc_transitive(x.graph, aut)})
    return _report(
        ClaimId.arc_transitivity, s, fast, oracle, asserted=True,
        details={"edge_transitive": edge_transitive},
    )


def parity_bipartition(x: CayleyGraph) -> tuple[bool, bool]:
    """(bipartite, sides equal the parity classes on every component)."""
    coloring = is_bipartite(x.graph)
    if coloring is None:
        return False, False
    parity = x.parity_classes()
    # the flip between coloring and parity must be constant on each component
    flip: dict[int, int] = {}
    component = component_labels(x.graph)
    for v, c in enumerate(coloring):
        d = c ^ parity[v]
        if flip.setdefault(component[v], d) != d:
            return True, False
    return True, True


def check_connectivity_corollary(s: TranspositionSet, extended: bool = False) -> VerificationReport:
    """kappa(Cay(S_n, S)) equals the minimum degree |S|; the graph is bipartite hence K_4-free."""
    _require_generating(s)
    limit = settings.MAX_ORACLE_DEGREE if extended else settings.MAX_CONNECTIVITY_DEGREE
    _require_degree(s, limit)
    x = _cayley(s)
    fast = _timed(lambda: {"connectivity": len(s), "bipartite": True, "k4_free": True})

    def observed() -> dict[str, Any]:
        bipartite, _ = parity_bipartition(x)
        return {
            "connectivity": vertex_connectivity(x.graph),
            "bipartite": bipartite,
            "k4_free": not contains_k4(x.graph),
        }

    oracle = _timed(observed)
    return _report(ClaimId.connectivity, s, fast, oracle, asserted=True)


def check_bipartite(s: TranspositionSet) -> VerificationReport:
    """The Cayley graph is bipartite with the parity classes as its sides."""
    _require_degree(s, settings.MAX_ORACLE_DEGREE)
    x = _cayley(s)
    fast = _timed(lambda: {"bipartite": True, "parity_classes": True})

    def observed() -> dict[str, bool]:
        bipartite, matches = parity_bipartition(x)
        return {"bipartite": bipartite, "parity_classes": matches}

    oracle = _timed(observed)
    return _report(ClaimId.bipartite, s, fast, oracle, asserted=True)


def _whitney_hypothesis(s: TranspositionSet) -> bool:
    return s.n >= 5 and is_generating(s)


def check_whitney_feng(s: TranspositionSet) -> VerificationReport:
    """|Aut(T)| == |Aut(L(T))| == |Aut(S_n, S)| and lifting inverts inducing."""
    t = to_graph(s)
    hypothesis = _whitney_hypothesis(s)
    t_aut, ms_fast = _timed(lambda: automorphism_group(t))

    def observed() -> dict[str, Any]:
        lt, _ = line_graph(t)
        line_aut = automorphism_group(lt)
        result = {"aut_line": line_aut.order, "aut_sns": None, "lift_inverts_induce": None}
        if not hypothesis:
            return result
        lifts = [whitney_lift(t, a) for a in line_aut.elements]
        result["lift_inverts_induce"] = (
            len(set(lifts)) == line_aut.order
            and all(induced_edge_mapping(t, h) == a for h, a in zip(lifts, line_aut.elements))
            and all(whitney_lift(t, induced_edge_mapping(t, h)) == h for h in t_aut.elements)
        )
        result["aut_sns"] = len(cayley.aut_sns(s))
        return result

    oracle, ms_oracle = _timed(observed)
    fast = {
        "aut_line": t_aut.order,
        "aut_sns": t_aut.order if hypothesis else None,
        "lift_inverts_induce": True if hypothesis else None,
    }
    details = {"aut_t": t_aut.order}
    if not hypothesis:
        details["hypothesis"] = "needs a connected transposition graph on 5 or more points"
    return _report(
        ClaimId.whitney, s, (fast, ms_fast), (oracle, ms_oracle),
        asserted=hypothesis, details=details,
    )


def check_feng(s: TranspositionSet) -> VerificationReport:
    """Aut(S_n, S) consists of conjugations, one per automorphism of T(S), acting distinctly on S."""
    _require_generating(s)
    fast = _timed(lambda: automorphism_group(to_graph(s)).order)

    def observed() -> int:
        conjugations = cayley.aut_sns(s)
        distinct = {tuple(sorted(a.on_generators().items())) for a in conjugations}
        return len(distinct) if all(a.fixes_generators() for a in conjugations) else -1

    oracle = _timed(observed)
    return _report(ClaimId.feng, s, fast, oracle, asserted=s.n >= 3)


_SINGLE_CHECKS: dict[ClaimId, Callable[..., VerificationReport]] = {
    ClaimId.part_b: verify_part_b,
    ClaimId.whitney: check_whitney_feng,
    ClaimId.feng: check_feng,
    ClaimId.restriction: check_restriction_property,
    ClaimId.stabilizer: check_stabilizer_decomposition,
    ClaimId.arc_transitivity: check_arc_transitivity,
    ClaimId.connectivity: check_connectivity_corollary,
    ClaimId.bipartite: check_bipartite,
}


def run_claim(
    claim: ClaimId,
    s: TranspositionSet,
    s2: Optional[TranspositionSet] = None,
    extended: bool = False,
) -> VerificationReport:
    claim = ClaimId(claim)
    if claim is ClaimId.part_a:
        if s2 is None:
            raise PreconditionError("part_a compares two transposition sets")
        return verify_part_a(s, s2)
    if claim is ClaimId.connectivity:
        return check_connectivity_corollary(s, extended=extended)
    return _SINGLE_CHECKS[claim](s)


def replay(report: VerificationReport) -> VerificationReport:
    """Re-run a report from its instance description."""
    s = TranspositionSet.of(report.n, report.s)
    s2 = TranspositionSet.of(report.n, report.s2) if report.s2 is not None else None
    return run_claim(report.claim, s, s2, extended=True)


def sweep_instances(
    claim: ClaimId,
    n: int,
    extended: bool = False,
) -> list[tuple[TranspositionSet, Optional[TranspositionSet]]]:
    classes = enumerate_connected(n, extended=extended)
    if ClaimId(claim) is ClaimId.part_a:
        return [(a, b) for a, b in combinations_with_replacement(classes, 2)]
    return [(s, None) for s in classes]


def _run_instance(args: tuple) -> VerificationReport:
    claim, s, s2, extended = args
    return run_claim(claim, s, s2, extended=extended)


def sweep(
    claim: ClaimId,
    n: int,
    instances: Optional[list[tuple[TranspositionSet, Optional[TranspositionSet]]]] = None,
    workers: int = 1,
    extended: bool = False,
) -> SweepReport:
    """Run a claim over instances (default: every connected class on n points)."""
    claim = ClaimId(claim)
    if instances is None:
        instances = sweep_instances(claim, n, extended=extended)
    jobs = [(claim, s, s2, extended) for s, s2 in instances]
    logger.info("sweeping %s over %d instances at n=%d", claim.value, len(jobs), n)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_instance, jobs))
    else:
        reports = [_run_instance(job) for job in jobs]
    reports.sort(key=lambda r: r.instance_key())
    return SweepReport(
        claim=claim,
        n=n,
        total=len(reports),
        agreed=sum(r.agree for r in reports),
        failed=sum(r.failed for r in reports),
        reports=reports,
    )
