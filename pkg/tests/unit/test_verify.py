import pytest
from pydantic import ValidationError

from app.algebra.perm import Permutation
from app.algebra.tgraph import TranspositionSet, family
from app.core.errors import CapacityError, PreconditionError
from app.schemas.schemas import ClaimId, VerificationReport
from app.verification import checks

TIMINGS = {"ms_fast", "ms_oracle"}


def without_timings(report: VerificationReport) -> dict:
    return report.model_dump(exclude=TIMINGS)


class TestPartA:
    def test_path_and_star_not_isomorphic(self):
        report = checks.verify_part_a(family("path", 5), family("star", 5))
        assert report.fast is False and report.oracle is False
        assert report.agree and not report.failed

    def test_relabeled_path_isomorphic_and_certified(self):
        s = family("path", 5)
        s2 = s.relabel(Permutation.from_one_line([4, 2, 5, 1, 3]))
        report = checks.verify_part_a(s, s2)
        assert report.fast is True and report.oracle is True
        assert report.details["conjugation_certified"]
        assert report.details["recovered_isomorphism"]
        assert report.s2 == s2.sorted_pairs()

    def test_degree_mismatch(self):
        with pytest.raises(PreconditionError):
            checks.verify_part_a(family("path", 4), family("path", 5))

    def test_needs_generating_sets(self):
        with pytest.raises(PreconditionError):
            checks.verify_part_a(TranspositionSet.of(4, [(1, 2)]), family("path", 4))

    @pytest.mark.slow
    def test_sweep_at_n5(self):
        result = checks.sweep(ClaimId.part_a, 5)
        assert result.total == 231
        assert result.failed == 0
        assert result.agreed == 231
        assert sum(r.fast for r in result.reports) == 21


class TestPartB:
    @pytest.mark.parametrize(
        "name, expected",
        [("path", False), ("cycle", True), ("star", True), ("complete", True)],
    )
    def test_named_families(self, name, expected):
        report = checks.verify_part_b(family(name, 5))
        assert report.fast is expected and report.oracle is expected
        assert report.asserted and not report.exploratory

    def test_small_degree_is_exploratory(self):
        report = checks.verify_part_b(family("star", 4))
        assert report.exploratory and not report.asserted

    def test_oracle_degree_guard(self):
        with pytest.raises(CapacityError):
            checks.verify_part_b(family("star", 6))

    @pytest.mark.slow
    def test_sweep_at_n5(self):
        result = checks.sweep(ClaimId.part_b, 5)
        assert result.total == 21
        assert result.failed == 0 and result.agreed == 21


class TestStructuralChecks:
    def test_stabilizer_sweep_at_n4(self):
        result = checks.sweep(ClaimId.stabilizer, 4)
        assert result.total == 6 and result.agreed == 6
        for r in result.reports:
            assert all(r.details["checks"].values())

    @pytest.mark.slow
    def test_stabilizer_named_families_at_n5(self, families_n5):
        for s in families_n5.values():
            assert checks.check_stabilizer_decomposition(s).agree

    def test_restriction_sweep_at_n4(self):
        result = checks.sweep(ClaimId.restriction, 4)
        assert result.failed == 0 and result.agreed == 6

    def test_restriction_path_at_n5(self):
        report = checks.check_restriction_property(family("path", 5))
        assert report.fast == report.oracle == 2
        assert report.details["line_aut_order"] == 2
        assert report.asserted and report.agree

    def test_arc_transitivity(self):
        report = checks.check_arc_transitivity(family("star", 4))
        assert report.oracle == {"right_swaps": True, "arc_transitive": True}
        assert report.agree

    def test_arc_transitivity_sweep_at_n4(self):
        assert checks.sweep(ClaimId.arc_transitivity, 4).failed == 0

    def test_connectivity_sweep_at_n4(self):
        result = checks.sweep(ClaimId.connectivity, 4)
        assert result.total == 6 and result.agreed == 6
        for r in result.reports:
            assert r.oracle["connectivity"] == len(r.s)

    def test_connectivity_at_n5_needs_opt_in(self):
        with pytest.raises(CapacityError):
            checks.check_connectivity_corollary(family("star", 5))

    def test_bipartite_families(self):
        for n in (3, 4, 5):
            for name in ("path", "cycle", "star", "complete"):
                assert checks.check_bipartite(family(name, n)).agree

    def test_bipartite_sweep_at_n5(self):
        result = checks.sweep(ClaimId.bipartite, 5)
        assert result.total == 21 and result.agreed == 21
        for r in result.reports:
            assert r.oracle == {"bipartite": True, "parity_classes": True}

    def test_bipartite_disconnected_set(self):
        report = checks.check_bipartite(TranspositionSet.of(4, [(1, 2), (3, 4)]))
        assert report.oracle == {"bipartite": True, "parity_classes": True}


class TestWhitneyFeng:
    def test_sweep_at_n5(self):
        result = checks.sweep(ClaimId.whitney, 5)
        assert result.total == 21 and result.agreed == 21
        for r in result.reports:
            assert r.oracle["lift_inverts_induce"] is True
            assert r.oracle["aut_line"] == r.oracle["aut_sns"] == r.details["aut_t"]

    def test_small_degree_reports_hypothesis(self):
        report = checks.check_whitney_feng(family("complete", 4))
        assert not report.asserted
        assert "hypothesis" in report.details
        # L(K_4) has twice as many automorphisms as K_4
        assert report.oracle["aut_line"] == 48

    def test_feng_sweep_at_n5(self):
        result = checks.sweep(ClaimId.feng, 5)
        assert result.failed == 0 and result.agreed == 21

    def test_feng_at_n2_not_asserted(self):
        report = checks.check_feng(family("path", 2))
        assert not report.asserted


class TestReports:
    def test_json_round_trip(self):
        report = checks.check_stabilizer_decomposition(family("star", 4))
        assert VerificationReport.model_validate_json(report.model_dump_json()) == report

    def test_agree_must_match_values(self):
        with pytest.raises(ValidationError):
            VerificationReport(claim="part_b", n=5, s=[(1, 2)], fast=True, oracle=False, agree=True)

    def test_replay(self):
        report = checks.verify_part_b(family("cycle", 5))
        assert without_timings(checks.replay(report)) == without_timings(report)

    def test_run_claim_part_a_needs_second_set(self):
        with pytest.raises(PreconditionError):
            checks.run_claim(ClaimId.part_a, family("path", 4))

    def test_sweep_is_sorted_and_deterministic(self):
        first = checks.sweep(ClaimId.feng, 4)
        second = checks.sweep(ClaimId.feng, 4)
        keys = [r.instance_key() for r in first.reports]
        assert keys == sorted(keys)
        assert [without_timings(r) for r in first.reports] == [without_timings(r) for r in second.reports]

    def test_parallel_sweep_matches_serial(self):
        serial = checks.sweep(ClaimId.bipartite, 4)
        parallel = checks.sweep(ClaimId.bipartite, 4, workers=2)
        assert [without_timings(r) for r in parallel.reports] == [without_timings(r) for r in serial.reports]

    def test_part_a_instances_are_unordered_pairs(self, classes_n4):
        instances = checks.sweep_instances(ClaimId.part_a, 4)
        assert len(instances) == 6 * 7 // 2
        assert {a for a, _ in instances} == set(classes_n4)
