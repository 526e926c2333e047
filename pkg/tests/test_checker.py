import numpy as np
import pytest

from summa import (MAIN_CONDITIONS, THEOREM_A_CONDITIONS, CesaroParams,
                   FamilyBundle, GrowthVerdict, RealSequence, SequenceSpec,
                   Tolerances, WeightKind, WeightSpec, builtin_family,
                   check_main_theorem, check_theorem_a, conclusion_diagnostic,
                   dyadic_checkpoints, growth_diagnostic, materialize)
from summa.functionals import FunctionalTrace


class TestDyadicCheckpoints:
    def test_canonical_grid(self):
        assert dyadic_checkpoints(10000) == (156, 312, 625, 1250, 2500,
                                             5000, 10000)

    def test_small_grid(self):
        assert dyadic_checkpoints(64) == (1, 2, 4, 8, 16, 32, 64)

    def test_positive_required(self):
        with pytest.raises(ValueError):
            dyadic_checkpoints(0)


class TestGrowthDiagnostic:
    def test_constant_is_bounded(self):
        cps = (10, 20, 40, 80)
        d = growth_diagnostic(np.full(4, 3.0), cps)
        assert d.slope == pytest.approx(0.0, abs=1e-12)
        assert d.verdict is GrowthVerdict.BOUNDED_CONSISTENT

    def test_log_against_log_reference_cancels(self):
        cps = dyadic_checkpoints(4096)
        vals = np.log(np.asarray(cps, dtype=float))
        d = growth_diagnostic(vals, cps, reference=vals.copy())
        assert d.slope == pytest.approx(0.0, abs=1e-12)
        assert d.verdict is GrowthVerdict.BOUNDED_CONSISTENT

    def test_sqrt_growth_detected(self):
        cps = dyadic_checkpoints(4096)
        vals = np.sqrt(np.asarray(cps, dtype=float))
        d = growth_diagnostic(vals, cps)
        assert d.slope == pytest.approx(0.5, abs=1e-9)
        assert d.verdict is GrowthVerdict.GROWTH_DETECTED

    def test_all_zero_is_bounded(self):
        cps = (1, 2, 4, 8)
        d = growth_diagnostic(np.zeros(4), cps)
        assert d.slope == 0.0
        assert d.last_mid_ratio == 1.0
        assert d.verdict is GrowthVerdict.BOUNDED_CONSISTENT

    def test_requires_four_checkpoints(self):
        with pytest.raises(ValueError):
            growth_diagnostic(np.ones(3), (1, 2, 4))

    def test_zero_reference_rejected(self):
        with pytest.raises(ValueError):
            growth_diagnostic(np.ones(4), (1, 2, 4, 8),
                              reference=np.array([1.0, 0.0, 1.0, 1.0]))

    def test_accepts_functional_trace(self):
        trace = FunctionalTrace(checkpoints=(1, 2, 4, 8),
                                partial_sums=np.array([1.0, 1.0, 1.0, 1.0]))
        d = growth_diagnostic(trace)
        assert d.verdict is GrowthVerdict.BOUNDED_CONSISTENT

    def test_reference_sequence_sampling(self):
        cps = (2, 4, 8, 16)
        ref = RealSequence(1, np.arange(1.0, 17.0))
        d = growth_diagnostic(np.asarray(cps, dtype=float), cps, reference=ref)
        assert np.allclose(d.values, 1.0)

    def test_tolerance_knobs(self):
        cps = dyadic_checkpoints(4096)
        vals = np.power(np.asarray(cps, dtype=float), 0.3)
        assert (growth_diagnostic(vals, cps).verdict
                is GrowthVerdict.GROWTH_DETECTED)
        relaxed = growth_diagnostic(vals, cps, slope_tolerance=0.5,
                                    ratio_tolerance=10.0)
        assert relaxed.verdict is GrowthVerdict.BOUNDED_CONSISTENT


class TestTolerances:
    def test_round_trip(self):
        t = Tolerances(slope=0.2, ratio=2.0, inf_ratio_floor=1e-5,
                       weight_rel_tol=1e-10)
        assert Tolerances.from_json(t.to_json()) == t

    def test_positive_required(self):
        with pytest.raises(ValueError):
            Tolerances(slope=0.0)

    def test_unknown_field_rejected(self):
        with pytest.raises(ValueError):
            Tolerances.from_json({"slope": 0.1, "grit": 1.0})


class TestCheckMainTheorem:
    def test_f1_all_records_pass(self):
        report = check_main_theorem(builtin_family("F1", 10000))
        assert tuple(r.condition for r in report.records) == MAIN_CONDITIONS
        assert report.all_passed
        assert report.theorem == "main"

    def test_f3_fails_exactly_cond7(self):
        report = check_main_theorem(builtin_family("F3", 10000))
        failing = {r.condition for r in report.records if not r.passed}
        assert failing == {"cond7"}
        rec = next(r for r in report.records if r.condition == "cond7")
        assert rec.verdict == GrowthVerdict.GROWTH_DETECTED.value

    def test_element_wise_records_pass_at_smaller_scales(self):
        # prefix-monotone conditions must keep passing as N shrinks
        for N in (64, 128, 256, 1024):
            report = check_main_theorem(builtin_family("F1", N))
            by_id = {r.condition: r for r in report.records}
            for cond in ("majorant", "quasi_monotone", "weight_monotone",
                         "param_gate"):
                assert by_id[cond].passed, (cond, N)

    def test_param_gate_failure(self):
        bundle = builtin_family("F1", 64,
                                overrides={"alpha": 0.5, "k": 1.0,
                                           "epsilon": 0.4})
        report = check_main_theorem(bundle)
        rec = next(r for r in report.records if r.condition == "param_gate")
        assert not rec.passed

    def test_majorant_violation_reported(self):
        base = builtin_family("F1", 64)
        # shrink Q far below |D lambda| at every index
        import dataclasses
        weak_q = RealSequence(1, np.full(64, 1e-12))
        bundle = dataclasses.replace(base, Q=weak_q)
        report = check_main_theorem(bundle)
        rec = next(r for r in report.records if r.condition == "majorant")
        assert not rec.passed
        assert rec.first_violation == 1

    def test_requires_majorant_data(self):
        bundle = builtin_family("F2", 64)
        with pytest.raises(ValueError, match="requires Q and delta"):
            check_main_theorem(bundle)

    def test_requires_alpha_in_unit_interval(self):
        bundle = builtin_family("F1", 64, overrides={"alpha": 2.0})
        with pytest.raises(ValueError, match="0 < alpha <= 1"):
            check_main_theorem(bundle)

    def test_report_serialization(self):
        report = check_main_theorem(builtin_family("F1", 256))
        obj = report.to_json()
        assert obj["theorem"] == "main"
        assert len(obj["records"]) == 8
        assert obj["checkpoints"] == list(dyadic_checkpoints(256))
        assert obj["tolerances"]["slope"] == 0.1


class TestCheckTheoremA:
    def test_f2_all_records_pass(self):
        report = check_theorem_a(builtin_family("F2", 10000))
        assert tuple(r.condition for r in report.records) == THEOREM_A_CONDITIONS
        assert report.all_passed
        assert report.theorem == "theorem_a"

    def test_rejects_majorant_data(self):
        with pytest.raises(ValueError, match="must not carry"):
            check_theorem_a(builtin_family("F1", 64))

    def test_rejects_fractional_alpha(self):
        import dataclasses
        bundle = builtin_family("F2", 64)
        bundle = dataclasses.replace(
            bundle, params=CesaroParams(alpha=0.5, k=1.5, epsilon=1.0))
        with pytest.raises(ValueError, match="alpha = 1"):
            check_theorem_a(bundle)

    def test_decreasing_x_flagged_with_index(self):
        N = 64
        a = materialize(SequenceSpec("alternating_unit", n=N, start=1))
        lam = materialize(SequenceSpec("power_decay", n=N, start=1,
                                       params={"p": 1.0, "c0": 2.0}))
        X = materialize(SequenceSpec("power_decay", n=N, start=1,
                                     params={"p": 1.0}))
        bundle = FamilyBundle(label="bad-X", a=a, lam=lam, X=X,
                              weight=WeightSpec(kind=WeightKind.CLASSIC),
                              params=CesaroParams(alpha=1.0, k=1.5))
        report = check_theorem_a(bundle)
        rec = next(r for r in report.records if r.condition == "X_class")
        assert not rec.passed
        assert rec.first_violation == 2

    def test_constant_lambda_zero_conditions(self):
        # lambda = 0 everywhere: cond7 and cond8 see identically zero input
        N = 256
        a = materialize(SequenceSpec("alternating_unit", n=N, start=1))
        lam = RealSequence(1, np.zeros(N))
        X = materialize(SequenceSpec("log_shift", n=N, start=1))
        bundle = FamilyBundle(label="zero-lam", a=a, lam=lam, X=X,
                              weight=WeightSpec(kind=WeightKind.CLASSIC),
                              params=CesaroParams(alpha=1.0, k=1.5))
        report = check_theorem_a(bundle)
        by_id = {r.condition: r for r in report.records}
        assert by_id["cond7"].passed
        assert by_id["cond8"].passed


class TestConclusionDiagnostic:
    def test_f1_conclusion_bounded(self):
        trace, diag = conclusion_diagnostic(builtin_family("F1", 2048))
        assert diag.verdict is GrowthVerdict.BOUNDED_CONSISTENT
        assert np.all(np.diff(trace.partial_sums) >= 0)

    def test_uses_factored_series(self):
        # zero lambda kills the factored series outright
        import dataclasses
        bundle = builtin_family("F1", 256)
        bundle = dataclasses.replace(bundle,
                                     lam=RealSequence(1, np.zeros(256)))
        trace, diag = conclusion_diagnostic(bundle)
        assert np.array_equal(trace.partial_sums,
                              np.zeros(len(trace.checkpoints)))
        assert diag.verdict is GrowthVerdict.BOUNDED_CONSISTENT


class TestFamilyBundle:
    def test_alignment_enforced(self):
        a = RealSequence(1, np.ones(8))
        lam = RealSequence(1, np.ones(9))
        X = RealSequence(1, np.ones(8))
        with pytest.raises(ValueError, match="length"):
            FamilyBundle(label="x", a=a, lam=lam, X=X,
                         weight=WeightSpec(kind=WeightKind.CLASSIC),
                         params=CesaroParams())

    def test_start_index_enforced(self):
        a = RealSequence(0, np.ones(8))
        lam = RealSequence(1, np.ones(8))
        X = RealSequence(1, np.ones(8))
        with pytest.raises(ValueError, match="start at index 1"):
            FamilyBundle(label="x", a=a, lam=lam, X=X,
                         weight=WeightSpec(kind=WeightKind.CLASSIC),
                         params=CesaroParams())
