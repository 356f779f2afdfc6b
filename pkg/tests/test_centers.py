import numpy as np
import pytest

from centerlab import centers, norms
from centerlab.centers import (
    CenterProblem,
    Composite,
    FiniteSet,
    PowerSum,
    UnionOfLines,
    WeightedMax,
    WeightedSum,
    delta_center_probe,
    eval_rf,
    f_value,
    lipschitz_estimate,
    modulus_csv,
    p1_modulus,
    problem_from_json,
    problem_to_json,
    sacp_experiment,
    solve_center,
    uniform_max,
    validate_fcmc,
)
from centerlab.norms import l1, l2, linf, subspace_from_basis

from oracles import grid_minimize

Y_POINTS = np.array([[-2.0, 1.0, 1.0], [1.0, 1.0, -2.0], [1.0, -2.0, 1.0]])


def plane_sum_zero():
    return subspace_from_basis(3, [[1.0, 0.0, -1.0], [0.0, 1.0, -1.0]])


def test_eval_rf_reference_value():
    v = np.array([-0.5, -0.5, -0.5])
    assert eval_rf(linf(3), v, FiniteSet(Y_POINTS), uniform_max(3)) == 1.5


def test_eval_rf_at_member_is_zero():
    x = np.array([2.0, -1.0])
    assert eval_rf(linf(2), x, FiniteSet([x]), uniform_max(1)) == 0.0


def test_eval_rf_weighted_sum_recomposition():
    rng = np.random.default_rng(17)
    space = l1(3)
    pts = FiniteSet(rng.normal(size=(4, 3)))
    w = rng.uniform(0.5, 2.0, size=4)
    f = WeightedSum(w)
    for _ in range(20):
        v = rng.normal(size=3)
        manual = sum(wi * norms.eval_norm(space, v - p)
                     for wi, p in zip(w, pts.points))
        assert eval_rf(space, v, pts, f) == pytest.approx(manual, abs=1e-12)


def test_two_point_center_is_midpoint():
    rng = np.random.default_rng(23)
    for space in (linf(3), l1(3)):
        x1, x2 = rng.normal(size=3), rng.normal(size=3)
        prob = CenterProblem(space, None, FiniteSet([x1, x2]), uniform_max(2))
        res = solve_center(prob)
        half = 0.5 * norms.eval_norm(space, x1 - x2)
        assert res.rad == pytest.approx(half, abs=1e-9)
        mid_val = eval_rf(space, 0.5 * (x1 + x2), prob.points, prob.f)
        assert mid_val <= res.rad + 1e-9


def test_reference_instance_whole_space():
    prob = CenterProblem(linf(3), None, FiniteSet(Y_POINTS), uniform_max(3))
    res = solve_center(prob)
    # the witness (-1/2,-1/2,-1/2) gives 3/2, and two points are 3 apart
    assert res.rad == pytest.approx(1.5, abs=1e-9)

    def fun(v):
        return eval_rf(linf(3), v, prob.points, prob.f)

    oracle, _ = grid_minimize(fun, np.zeros(3), 3.0, steps=13, refinements=6)
    assert res.rad == pytest.approx(oracle, abs=1e-3)


def test_reference_instance_restricted_to_plane():
    prob = CenterProblem(linf(3), plane_sum_zero(), FiniteSet(Y_POINTS),
                         uniform_max(3))
    res = solve_center(prob)
    assert res.rad > 1.5 + 0.4
    assert res.rad == pytest.approx(2.0, abs=1e-9)
    assert plane_sum_zero().contains(res.minimizer)

    sub = plane_sum_zero()

    def fun(alpha):
        return eval_rf(linf(3), sub.embed(alpha), prob.points, prob.f)

    oracle, _ = grid_minimize(fun, np.zeros(2), 3.0, steps=13, refinements=6)
    assert res.rad == pytest.approx(oracle, abs=1e-3)


def test_lp_and_subgradient_paths_agree():
    rng = np.random.default_rng(31)
    for trial in range(6):
        dim = int(rng.integers(2, 4))
        space = [linf(dim), l1(dim)][trial % 2]
        pts = FiniteSet(rng.normal(size=(3, dim)))
        f = [uniform_max(3), WeightedSum(rng.uniform(0.5, 1.5, size=3))][trial % 2]
        prob = CenterProblem(space, None, pts, f)
        lp_res = solve_center(prob, method="lp")
        sg_res = solve_center(prob, method="subgradient", seed=trial)
        assert sg_res.rad == pytest.approx(lp_res.rad, abs=1e-4)
        assert sg_res.rad >= lp_res.rad - 1e-9


def test_subgradient_handles_smooth_norms():
    rng = np.random.default_rng(41)
    x1, x2 = rng.normal(size=3), rng.normal(size=3)
    prob = CenterProblem(l2(3), None, FiniteSet([x1, x2]), uniform_max(2))
    res = solve_center(prob)
    assert res.method == "subgradient"
    assert res.rad == pytest.approx(0.5 * np.linalg.norm(x1 - x2), abs=1e-9)


def test_rad_is_lower_bound_on_sampled_values():
    rng = np.random.default_rng(3)
    sub = plane_sum_zero()
    prob = CenterProblem(linf(3), sub, FiniteSet(Y_POINTS), uniform_max(3))
    res = solve_center(prob)
    for _ in range(200):
        v = sub.embed(rng.uniform(-4, 4, size=2))
        assert res.rad <= eval_rf(linf(3), v, prob.points, prob.f) + 1e-9


def test_scaling_invariance_of_minimizers():
    rng = np.random.default_rng(13)
    pts = FiniteSet(rng.normal(size=(3, 2)))
    space = linf(2)
    f1 = WeightedMax(np.array([1.0, 1.0, 1.0]))
    f2 = WeightedMax(np.array([2.5, 2.5, 2.5]))
    p1_ = CenterProblem(space, None, pts, f1)
    p2_ = CenterProblem(space, None, pts, f2)
    r1, r2 = solve_center(p1_), solve_center(p2_)
    assert r2.rad == pytest.approx(2.5 * r1.rad, rel=1e-9)
    # cross-feasibility of minimizers
    assert eval_rf(space, r2.minimizer, pts, f1) <= r1.rad + 1e-8
    assert eval_rf(space, r1.minimizer, pts, f2) <= r2.rad + 1e-8


def test_delta_probe_zero_delta_zero_excess():
    prob = CenterProblem(linf(3), plane_sum_zero(), FiniteSet(Y_POINTS),
                         uniform_max(3))
    res = solve_center(prob)
    probe = delta_center_probe(prob, delta=0.0, eps=1e-6, result=res)
    assert probe.excess <= 1e-6
    assert probe.within


def test_delta_probe_segment_center_set():
    # Cent of {(-1,0),(1,0)} under the max norm is the segment {0} x [-1,1]
    space = linf(2)
    prob = CenterProblem(space, None, FiniteSet([[-1.0, 0.0], [1.0, 0.0]]),
                         uniform_max(2))
    res = solve_center(prob)
    assert res.rad == pytest.approx(1.0, abs=1e-12)
    probe = delta_center_probe(prob, delta=0.25, eps=np.inf, result=res)
    assert probe.samples.shape[0] >= 4
    for v in probe.samples:
        a, b = v
        closed_form = max(abs(a), max(0.0, abs(b) - 1.0))
        assert res.cent_face.distance_to(v) == pytest.approx(closed_form, abs=1e-7)
    assert probe.excess == pytest.approx(0.25, abs=1e-7)


def test_delta_probe_samples_stay_in_sublevel():
    rng = np.random.default_rng(8)
    pts = FiniteSet(rng.normal(size=(3, 2)))
    prob = CenterProblem(l1(2), None, pts, uniform_max(3))
    res = solve_center(prob)
    for delta in (0.5, 0.05):
        probe = delta_center_probe(prob, delta, eps=np.inf, result=res)
        vals = centers.eval_rf_many(l1(2), probe.samples, pts, prob.f)
        assert (vals <= res.rad + delta + 1e-6).all()


def test_modulus_curve_monotone_and_vanishing():
    prob = CenterProblem(linf(2), None,
                         FiniteSet([[-1.0, 0.0], [1.0, 0.0]]), uniform_max(2))
    res = solve_center(prob)
    deltas = [0.3, 0.1, 0.01, 0.001, 0.0]
    curve = p1_modulus(prob, deltas, result=res)
    excesses = [row[1] for row in curve]
    assert all(excesses[i] >= excesses[i + 1] - 1e-9 for i in range(len(curve) - 1))
    assert excesses[-1] <= 1e-7
    csv = modulus_csv(curve)
    assert csv.splitlines()[0] == "delta,excess,samples"
    assert len(csv.splitlines()) == len(curve) + 1


def test_sacp_constant_sequence_single_cluster():
    prob = CenterProblem(linf(3), plane_sum_zero(), FiniteSet(Y_POINTS),
                         uniform_max(3))
    res = solve_center(prob)
    seq = [res.minimizer.copy() for _ in range(20)]
    verdict = sacp_experiment(prob, seq, horizon=20, cluster_tol=1e-6, result=res)
    assert verdict.minimizing
    assert len(verdict.clusters) == 1
    assert verdict.verdict == "clusters found"
    assert verdict.topology == centers.TOPOLOGY_NOTE


def test_sacp_random_minimizing_sequence_clusters():
    rng = np.random.default_rng(5)
    sub = subspace_from_basis(3, np.eye(3))
    pts = FiniteSet(rng.normal(size=(2, 3)))
    prob = CenterProblem(l1(3), sub, pts, uniform_max(2))
    res = solve_center(prob)
    seq = [res.minimizer + rng.normal(size=3) * 0.5 / (k + 1)
           for k in range(60)]
    verdict = sacp_experiment(prob, seq, horizon=60, cluster_tol=0.25,
                              result=res, value_tol=0.2)
    assert verdict.clusters


def test_sacp_rejects_points_outside_feasible_set():
    sub = subspace_from_basis(2, [[1.0, 0.0]])
    prob = CenterProblem(l1(2), sub, FiniteSet([[0.0, 0.0]]), uniform_max(1))
    with pytest.raises(ValueError, match="element 1"):
        sacp_experiment(prob, [np.zeros(2), np.array([0.0, 1.0])],
                        horizon=5, cluster_tol=0.1)


def test_union_of_lines_center():
    lines = UnionOfLines(points=[[0.0, 1.0], [3.0, 2.0]],
                         directions=[[1.0, 0.0], [1.0, 0.0]])
    prob = CenterProblem(l1(2), lines, FiniteSet([[0.0, 0.0]]), uniform_max(1))
    res = solve_center(prob)
    assert res.rad == pytest.approx(1.0, abs=1e-9)
    assert lines.contains(res.minimizer)
    assert res.cent_face is None


def test_validate_fcmc_families():
    assert validate_fcmc(uniform_max(3))["ok"]
    assert validate_fcmc(WeightedSum(np.array([0.5, 2.0])))["ok"]
    assert validate_fcmc(PowerSum(2.0, np.array([1.0, 1.0])))["ok"]
    comp = Composite(uniform_max(2), power=2.0, scale=0.5)
    assert validate_fcmc(comp)["ok"]
    assert solve_center(CenterProblem(
        l2(2), None, FiniteSet([[1.0, 0.0], [-1.0, 0.0]]), comp)).rad == \
        pytest.approx(0.5, abs=1e-6)


def test_lipschitz_estimate_finite_and_stable():
    f = WeightedSum(np.array([1.0, 3.0]))
    center = np.array([2.0, 2.0])
    coarse = lipschitz_estimate(f, center, 1.0, samples=200, seed=0)
    fine = lipschitz_estimate(f, center, 1.0, samples=2000, seed=1)
    assert np.isfinite(coarse) and np.isfinite(fine)
    # exact Lipschitz constant in the sup metric is 1 + 3 = 4
    assert fine == pytest.approx(4.0, rel=0.15)
    assert abs(fine - coarse) <= 0.5


def test_power_sum_lp_when_p_equals_one():
    pts = FiniteSet([[0.0, 0.0], [2.0, 0.0]])
    prob = CenterProblem(l1(2), None, pts, PowerSum(1.0, np.array([1.0, 1.0])))
    res = solve_center(prob)
    assert res.method == "lp"
    assert res.rad == pytest.approx(2.0, abs=1e-9)


def test_problem_json_roundtrip():
    prob = CenterProblem(linf(3), plane_sum_zero(), FiniteSet(Y_POINTS),
                         WeightedMax(np.array([1.0, 2.0, 0.5])))
    back = problem_from_json(problem_to_json(prob))
    assert solve_center(back).rad == pytest.approx(solve_center(prob).rad, abs=1e-12)
    lines_prob = CenterProblem(
        l1(2), UnionOfLines([[0.0, 1.0]], [[1.0, 0.0]]),
        FiniteSet([[0.0, 0.0]]), uniform_max(1))
    back2 = problem_from_json(problem_to_json(lines_prob))
    assert isinstance(back2.feasible, UnionOfLines)


def test_solve_center_deterministic_minimizer():
    # the optimal set is a segment; the lexicographic tie-break pins one point
    prob = CenterProblem(linf(2), None, FiniteSet([[-1.0, 0.0], [1.0, 0.0]]),
                         uniform_max(2))
    first = solve_center(prob)
    second = solve_center(prob)
    assert first.rad == second.rad
    assert np.array_equal(first.minimizer, second.minimizer)
    # lexicographically smallest point of the center segment {0} x [-1, 1]
    assert first.minimizer[1] == pytest.approx(-1.0, abs=1e-7)


def test_f_value_composite_chain():
    f = Composite(WeightedSum(np.array([1.0, 1.0])), power=2.0, scale=3.0)
    assert f_value(f, np.array([1.0, 2.0])) == pytest.approx(27.0)
