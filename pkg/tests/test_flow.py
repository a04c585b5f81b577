import numpy as np
import pytest

from skewflow import (
    ConvergenceError,
    CriticalType,
    FlowParams,
    FlowTrace,
    StructureTensor,
    criticality,
    critical_value,
    derivation_algebra,
    dim4_family,
    flow,
    flow_batch,
    jacobi_residual,
    mu_he,
    random_tensor,
    resolve,
    stratum_label,
)

FAST = FlowParams(max_steps=50_000)


class TestFlowParams:
    def test_defaults(self):
        p = FlowParams()
        assert p.max_steps == 200_000
        assert p.crit_tol == 1e-8

    def test_validation(self):
        with pytest.raises(ValueError):
            FlowParams(initial_step=0.0)
        with pytest.raises(ValueError):
            FlowParams(grad_tol=-1e-9)
        with pytest.raises(ValueError):
            FlowParams(max_steps=0)


def test_zero_tensor_rejected():
    with pytest.raises(ValueError):
        flow(StructureTensor.zero(4))


def test_critical_start_converges_immediately():
    trace = flow(mu_he(4).tensor)
    assert trace.converged
    assert trace.samples[-1][0] == 0  # no descent steps accepted
    assert trace.stratum == CriticalType((2, 3, 4), (2, 1, 1))
    assert trace.limit_report.F_value == pytest.approx(12.0, abs=1e-9)


def test_limit_is_unit_norm():
    for name in ("g6", "r2+r2", "g4"):
        trace = flow(dim4_family(name).tensor, FAST)
        assert trace.converged
        assert trace.limit.norm() == pytest.approx(1.0, abs=1e-12)


def test_f_decreases_along_flow():
    trace = flow(dim4_family("g7").tensor, FAST)
    fs = [f for _, f, _ in trace.samples]
    diffs = np.diff(fs)
    assert np.all(diffs <= 1e-12)
    assert fs[-1] < fs[0]


def test_samples_start_at_zero_and_increase():
    trace = flow(dim4_family("r3+C").tensor, FAST)
    steps = [s for s, _, _ in trace.samples]
    assert steps[0] == 0
    assert all(a < b for a, b in zip(steps, steps[1:]))


def test_limit_value_matches_stratum():
    # self-consistency: numeric limit value agrees with the exact value of
    # the extracted type
    for name, params in (("g6", ()), ("r3l+C", (0.5,)), ("sl2+C", ())):
        trace = flow(dim4_family(name, params).tensor, FAST)
        assert trace.converged and trace.stratum is not None
        exact = float(critical_value(trace.stratum))
        assert trace.samples[-1][1] == pytest.approx(exact, abs=1e-6)


def test_derivation_dimension_never_drops():
    # the limit sits in the closure of the orbit, so Der can only grow
    for name in ("n4", "g6", "g2"):
        e = resolve(name)
        d0 = derivation_algebra(e.tensor.normalized()).dim_complex
        trace = flow(e.tensor, FAST)
        d1 = derivation_algebra(trace.limit).dim_complex
        assert d1 >= d0, name


def test_limit_of_lie_start_is_lie():
    for name in ("g4", "g7", "r2+C2"):
        trace = flow(dim4_family(name).tensor, FAST)
        assert jacobi_residual(trace.limit) <= 1e-6, name


def test_nilpotent_starts_get_positive_smallest_weight():
    # nilpotent brackets flow to strata whose smallest weight is positive
    for entry in (dim4_family("n3+C"), dim4_family("n4"), mu_he(4)):
        trace = flow(entry.tensor, FAST)
        assert trace.converged
        assert trace.stratum.ks[0] > 0
    # solvable non-nilpotent ones keep k_1 = 0
    trace = flow(dim4_family("r3+C").tensor, FAST)
    assert trace.stratum.ks[0] == 0


def test_tiny_budget_reports_nonconvergence():
    trace = flow(dim4_family("g7").tensor, FlowParams(max_steps=2))
    assert not trace.converged
    assert trace.stratum is None
    assert trace.limit_report is not None
    assert trace.limit_report.residual > 0.0
    assert trace.limit.norm() == pytest.approx(1.0, abs=1e-12)


def test_flow_is_deterministic():
    a = flow(dim4_family("g8", (2.0,)).tensor, FAST)
    b = flow(dim4_family("g8", (2.0,)).tensor, FAST)
    assert a.samples == b.samples
    assert a.limit == b.limit


def test_perturbed_starts_land_on_consistent_strata():
    # jitter a critical point; wherever the flow lands, the extracted type
    # must reproduce the numeric limit value
    base = mu_he(4).tensor.normalized()
    rng = np.random.default_rng(1)
    for _ in range(6):
        noise = rng.standard_normal(base.coeff.shape) + 1j * rng.standard_normal(
            base.coeff.shape
        )
        start = StructureTensor(base.coeff + 1e-3 * noise)
        trace = flow(start, FAST)
        assert trace.converged
        assert trace.stratum is not None
        exact = float(critical_value(trace.stratum))
        assert trace.limit_report.F_value == pytest.approx(exact, abs=1e-6)


def test_random_starts_converge():
    for seed in range(3):
        trace = flow(random_tensor(3, seed=seed), FAST)
        assert trace.converged
        rep = criticality(trace.limit)
        assert rep.is_critical


class TestStratumLabel:
    def test_labels(self):
        assert stratum_label(dim4_family("g6").tensor, FAST) == CriticalType(
            (0, 1, 2), (1, 2, 1)
        )

    def test_raises_on_budget_exhaustion(self):
        with pytest.raises(ConvergenceError):
            stratum_label(dim4_family("g7").tensor, FlowParams(max_steps=2))


class TestFlowBatch:
    def test_order_preserved(self):
        inputs = [dim4_family("g6").tensor, mu_he(4).tensor]
        traces = flow_batch(inputs, FAST)
        assert len(traces) == 2
        assert traces[0].stratum == CriticalType((0, 1, 2), (1, 2, 1))
        assert traces[1].stratum == CriticalType((2, 3, 4), (2, 1, 1))

    def test_bad_item_recorded_not_raised(self):
        inputs = [StructureTensor.zero(3), dim4_family("r2+r2").tensor]
        traces = flow_batch(inputs, FAST)
        assert traces[0].error is not None
        assert not traces[0].converged
        assert traces[1].converged

    def test_empty(self):
        assert flow_batch([]) == []


def test_trace_dataclass_defaults():
    t = FlowTrace()
    assert t.samples == [] and t.limit is None and not t.converged
