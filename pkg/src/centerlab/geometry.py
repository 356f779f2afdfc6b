"""Ball-intersection feasibility and subspace property checkers.

The checkers come in two strengths.  Falsification is exact: a family of
balls with no common point in a subspace carries a Farkas certificate, and a
candidate projection that fails the norm-1 condition carries an explicit
violating vector.  Positive verdicts from randomized checkers are always
"no counterexample found in N trials", never proofs.

Random ball families are generated witness-first (pick the witness, derive
the radii), since independently random radii almost never intersect.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import norms, optim
from .centers import FiniteSet
from .errors import DimensionMismatchError, OptimizationError
from .norms import (
    Ball,
    Subspace,
    dist_to_subspace,
    eval_norm,
    eval_norm_many,
    intersect_subspaces,
    norm_subgradient,
)

FEAS_TOL = 1e-9

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNRESOLVED = "unresolved"


@dataclass(frozen=True, eq=False)
class BallFamily:
    balls: tuple

    def __post_init__(self):
        balls = tuple(self.balls)
        if not balls:
            raise ValueError("ball family must be nonempty")
        dim = balls[0].center.shape[0]
        if any(b.center.shape[0] != dim for b in balls):
            raise DimensionMismatchError("ball centers have mixed dimensions")
        object.__setattr__(self, "balls", balls)

    @classmethod
    def from_arrays(cls, centers, radii) -> "BallFamily":
        centers = np.atleast_2d(np.asarray(centers, dtype=float))
        radii = np.asarray(radii, dtype=float).ravel()
        return cls(tuple(Ball(c, float(r)) for c, r in zip(centers, radii)))

    @property
    def centers(self) -> np.ndarray:
        return np.array([b.center for b in self.balls])

    @property
    def radii(self) -> np.ndarray:
        return np.array([b.radius for b in self.balls])

    @property
    def size(self) -> int:
        return len(self.balls)

    @property
    def dim(self) -> int:
        return self.balls[0].center.shape[0]


def family_to_json(family: BallFamily) -> dict:
    return {"centers": family.centers.tolist(), "radii": family.radii.tolist()}


def family_from_json(data: dict) -> BallFamily:
    return BallFamily.from_arrays(data["centers"], data["radii"])


@dataclass(frozen=True, eq=False)
class IntersectionResult:
    """Outcome of a ball-intersection query, with replayable evidence.

    `lp` and `outcome` hold the feasibility program and its certificate for
    polyhedral norms; non-polyhedral infeasibility is only ever reported as
    "unresolved" (nothing found below tolerance), never as certified."""

    status: str
    witness: np.ndarray | None
    lp: optim.LinearProgram | None
    outcome: object


def balls_intersect(space, family: BallFamily, within: Subspace | None = None
                    ) -> IntersectionResult:
    """Decide whether the balls share a point of `within` (whole space when
    None)."""
    n = norms.space_dim(space)
    if family.dim != n:
        raise DimensionMismatchError("family does not match the space dimension")
    if within is not None and within.ambient_dim != n:
        raise DimensionMismatchError("subspace ambient dim mismatch")
    basis = np.eye(n) if within is None else np.array(within.basis)
    centers = family.centers
    radii = family.radii

    if norms.is_lp_encodable(space):
        builder = optim.LpBuilder()
        alphas = builder.new_vars(basis.shape[1])
        tvars = builder.new_vars(family.size)
        for i in range(family.size):
            norms.add_norm_epigraph(builder, space, alphas, basis,
                                    -centers[i], tvars[i])
            builder.add_ub({tvars[i]: 1.0}, float(radii[i]))
        lp = builder.build()
        out = optim.lp_solve(lp)
        if out.status == optim.OPTIMAL:
            witness = basis @ out.x[:basis.shape[1]]
            gaps = eval_norm_many(space, witness[None, :] - centers) - radii
            if gaps.max(initial=0.0) > 1e-8 * max(1.0, float(radii.max(initial=1.0))):
                raise OptimizationError("witness failed the ball audit")
            return IntersectionResult(FEASIBLE, witness, lp, out)
        if out.status == optim.INFEASIBLE:
            return IntersectionResult(INFEASIBLE, None, lp, out)
        raise OptimizationError(f"feasibility LP ended with {out.status}")

    def oracle(alpha):
        v = basis @ alpha
        vals = eval_norm_many(space, v[None, :] - centers) - radii
        j = int(np.argmax(vals))
        g = norm_subgradient(space, v - centers[j])
        return float(vals[j]), basis.T @ g

    start = basis.T @ centers.mean(axis=0)
    scale = max(1.0, 2.0 * float(np.linalg.norm(centers - centers.mean(axis=0),
                                                axis=1).max(initial=0.0)))
    res = optim.staged_subgradient(oracle, None, start, scale=scale)
    witness = basis @ res.point
    gaps = eval_norm_many(space, witness[None, :] - centers) - radii
    if gaps.max(initial=0.0) <= FEAS_TOL * max(1.0, float(radii.max(initial=1.0))):
        return IntersectionResult(FEASIBLE, witness, None, res)
    return IntersectionResult(UNRESOLVED, witness, None, res)


# ---------------------------------------------------------------------------
# central subspaces

@dataclass(frozen=True, eq=False)
class CentralVerdict:
    passed: bool
    counterexample: BallFamily | None
    result: IntersectionResult | None
    trials_run: int
    injected: bool
    note: str


def central_subspace_check(space, sub: Subspace, trials: int, seed: int,
                           within: Subspace | None = None,
                           inject: Sequence[BallFamily] = (),
                           family_size: tuple[int, int] = (2, 5),
                           slack: float = 0.2) -> CentralVerdict:
    """Randomized search for a family of balls with centers in `sub` that
    intersects in `within` (default: the whole space) but not in `sub`.

    Families are generated witness-first: the witness is drawn from `within`,
    centers from `sub`, and each radius is the witness distance inflated by a
    factor in [1, 1 + slack], so feasibility in `within` holds by
    construction.  Known families can be injected and are tested first.
    """
    n = norms.space_dim(space)
    rng = np.random.default_rng(seed)
    for fam in inject:
        res = balls_intersect(space, fam, sub)
        if res.status != FEASIBLE:
            return CentralVerdict(False, fam, res, 0, True,
                                  "injected family fails to intersect in the subspace")
    w_basis = np.eye(n) if within is None else np.array(within.basis)
    for trial in range(trials):
        k = int(rng.integers(family_size[0], family_size[1]))
        w = w_basis @ rng.normal(size=w_basis.shape[1]) * 1.5
        centers = (sub.basis @ rng.normal(size=(sub.dim, k)) * 1.5).T \
            if sub.dim else np.zeros((k, n))
        radii = eval_norm_many(space, w[None, :] - centers) * \
            (1.0 + rng.uniform(0.0, slack, size=k))
        fam = BallFamily.from_arrays(centers, radii)
        res = balls_intersect(space, fam, sub)
        if res.status != FEASIBLE:
            certified = res.status == INFEASIBLE
            note = ("counterexample with Farkas certificate" if certified
                    else "candidate counterexample (semi-decided norm)")
            return CentralVerdict(False, fam, res, trial + 1, False, note)
    return CentralVerdict(True, None, None, trials, False,
                          f"no counterexample found in {trials} trials")


# ---------------------------------------------------------------------------
# dominators

@dataclass(frozen=True, eq=False)
class DominatorResult:
    status: str
    dominator: np.ndarray | None
    lp: optim.LinearProgram | None
    outcome: object


def ac_dominator(space, sub: Subspace, a_points, x) -> DominatorResult:
    """Find y in the subspace with ||y - a|| <= ||x - a|| for every a in the
    finite set, or certify that none exists (polyhedral norms)."""
    a_points = np.atleast_2d(np.asarray(a_points, dtype=float))
    x = np.asarray(x, dtype=float)
    for a in a_points:
        if not sub.contains(a, tol=1e-7):
            raise ValueError("reference points must lie in the subspace")
    caps = eval_norm_many(space, x[None, :] - a_points)

    if norms.is_lp_encodable(space):
        builder = optim.LpBuilder()
        alphas = builder.new_vars(sub.dim)
        tvars = builder.new_vars(a_points.shape[0])
        for i, a in enumerate(a_points):
            norms.add_norm_epigraph(builder, space, alphas, np.array(sub.basis),
                                    -a, tvars[i])
            builder.add_ub({tvars[i]: 1.0}, float(caps[i]))
        lp = builder.build()
        out = optim.lp_solve(lp)
        if out.status == optim.OPTIMAL:
            return DominatorResult(FEASIBLE, sub.embed(out.x[:sub.dim]), lp, out)
        if out.status == optim.INFEASIBLE:
            return DominatorResult(INFEASIBLE, None, lp, out)
        raise OptimizationError(f"dominator LP ended with {out.status}")

    def oracle(alpha):
        y = sub.embed(alpha)
        vals = eval_norm_many(space, y[None, :] - a_points) - caps
        j = int(np.argmax(vals))
        g = norm_subgradient(space, y - a_points[j])
        return float(vals[j]), sub.basis.T @ g

    res = optim.staged_subgradient(oracle, None, sub.coords(x),
                                   scale=max(1.0, float(caps.max(initial=1.0))))
    if res.value <= FEAS_TOL * max(1.0, float(caps.max(initial=1.0))):
        return DominatorResult(FEASIBLE, sub.embed(res.point), None, res)
    return DominatorResult(UNRESOLVED, None, None, res)


# ---------------------------------------------------------------------------
# elementary projections span{x, Y} -> Y

@dataclass(frozen=True, eq=False)
class ProjectionData:
    """A candidate norm-1 projection onto `subspace`, determined by its value
    on one transversal vector: P(a*x + y) = a*image + y."""

    subspace: Subspace
    transversal: np.ndarray
    image: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.transversal, dtype=float)
        p = np.asarray(self.image, dtype=float)
        object.__setattr__(self, "transversal", x)
        object.__setattr__(self, "image", p)
        if self.subspace.contains(x, tol=1e-7):
            raise ValueError("transversal vector lies in the target subspace")
        if not self.subspace.contains(p, tol=1e-7):
            raise ValueError("image vector must lie in the target subspace")

    def decompose(self, v) -> tuple[float, np.ndarray]:
        """Write v = alpha * transversal + y with y in the subspace."""
        v = np.asarray(v, dtype=float)
        kx = self.subspace.kernel @ self.transversal
        alpha = float(kx @ (self.subspace.kernel @ v)) / float(kx @ kx)
        y = v - alpha * self.transversal
        if not self.subspace.contains(y, tol=1e-6):
            raise ValueError("vector outside span{transversal, subspace}")
        return alpha, y

    def span_contains(self, v, tol: float = 1e-7) -> bool:
        try:
            self.decompose(v)
            return True
        except ValueError:
            return False

    def apply(self, v) -> np.ndarray:
        alpha, y = self.decompose(v)
        if alpha == 1.0 and not y.any():
            return self.image.copy()
        return alpha * self.image + y


@dataclass(frozen=True, eq=False)
class ProjectionVerdict:
    accepted: bool
    max_violation: float
    witness: np.ndarray | None
    mode: str


def verify_norm1_projection(space, pd: ProjectionData, mode: str = "auto",
                            trials: int = 200, seed: int = 0) -> ProjectionVerdict:
    """Check ||image + y|| <= ||transversal + y|| for all y in the subspace
    (equivalent, by homogeneity, to the projection having norm one).

    Exact mode enumerates the extreme points of the unit ball of
    span{transversal, Y} (polyhedral norms, span dimension <= 4); otherwise a
    seeded sample plus local ascent on the violation gap.  Rejections carry
    the violating y.
    """
    x, p, sub = pd.transversal, pd.image, pd.subspace
    span_dim = sub.dim + 1
    exact_ok = mode != "sampled" and span_dim <= 4
    gens = None
    if exact_ok:
        try:
            gens = norms.explicit_generators(space, cap=20_000)
        except norms.InvalidNormError:
            gens = None
    if mode == "exact" and gens is None:
        raise ValueError("exact mode needs a polyhedral norm and span dim <= 4")

    if gens is not None:
        s_mat = np.column_stack([x, sub.basis])
        verts = optim.enumerate_vertices(gens @ s_mat, np.ones(gens.shape[0]))
        worst = 0.0
        witness = None
        for u in verts:
            tv = u[0] * p + sub.basis @ u[1:]
            viol = eval_norm(space, tv) - 1.0
            if viol > worst:
                worst = viol
                witness = (sub.basis @ u[1:]) / u[0] if abs(u[0]) > 1e-12 else None
        if worst <= 1e-9:
            return ProjectionVerdict(True, worst, None, "exact")
        return ProjectionVerdict(False, worst, witness, "exact")

    rng = np.random.default_rng(seed)
    scale = max(1.0, eval_norm(space, x))

    def violation(y):
        return eval_norm(space, p + y) - eval_norm(space, x + y)

    best = violation(np.zeros_like(x))
    best_y = np.zeros_like(x)
    starts = [(best, best_y)]
    for _ in range(trials):
        y = sub.basis @ rng.normal(size=sub.dim) * scale * rng.choice([0.3, 1.0, 3.0])
        v = violation(y)
        starts.append((v, y))
        if v > best:
            best, best_y = v, y
    starts.sort(key=lambda t: -t[0])
    for v0, y0 in starts[:3]:
        y = y0.copy()
        for step in range(60):
            g = norm_subgradient(space, p + y) - norm_subgradient(space, x + y)
            y = y + (0.3 * scale / (step + 2.0)) * sub.project_euclid(g)
            v = violation(y)
            if v > best:
                best, best_y = v, y
    fell_back = mode == "auto" and span_dim > 4
    label = "sampled-fallback" if fell_back else "sampled"
    if best <= 1e-9 * scale:
        return ProjectionVerdict(True, best, None, label)
    return ProjectionVerdict(False, best, best_y, label)


@dataclass(frozen=True, eq=False)
class NetProbeResult:
    status: str  # "candidate" | "falsified" | "inconclusive"
    image: np.ndarray | None
    net: np.ndarray | None
    verdict: ProjectionVerdict | None
    rounds: int


def almost_constrained_probe(space, sub: Subspace, x, seed: int = 0,
                             initial_net: int = 8, growth: float = 2.0,
                             max_rounds: int = 7,
                             inject: Sequence[np.ndarray] = ()) -> NetProbeResult:
    """Search for a norm-1 projection image for span{x, Y} -> Y via dominators
    over growing finite nets in Y.

    Falsification is sound: a finite net with a certified empty dominator set
    refutes the projection's existence outright.  Acceptance is net-limited:
    a candidate that survives verification is returned, otherwise the
    verification witness is fed back into the net (the violating y enters as
    the reference point -y) and the search continues until the budget runs
    out.
    """
    x = np.asarray(x, dtype=float)
    if sub.contains(x, tol=1e-7):
        raise ValueError("x already lies in the subspace")
    rng = np.random.default_rng(seed)
    scale = max(1.0, eval_norm(space, x))
    net: list[np.ndarray] = []
    for arr in inject:
        net.extend(np.atleast_2d(np.asarray(arr, dtype=float)))
    size = initial_net
    for round_no in range(max_rounds):
        while len(net) < size:
            net.append(sub.basis @ rng.normal(size=sub.dim) * scale *
                       rng.choice([0.5, 1.0, 2.0]))
        res = ac_dominator(space, sub, np.array(net), x)
        if res.status == INFEASIBLE:
            return NetProbeResult("falsified", None, np.array(net), None, round_no + 1)
        if res.status == UNRESOLVED:
            return NetProbeResult("inconclusive", None, np.array(net), None,
                                  round_no + 1)
        pd = ProjectionData(sub, x, res.dominator)
        verdict = verify_norm1_projection(space, pd, seed=seed + round_no)
        if verdict.accepted:
            return NetProbeResult("candidate", res.dominator, np.array(net),
                                  verdict, round_no + 1)
        if verdict.witness is not None:
            net.append(-verdict.witness)
        size = int(size * growth)
    return NetProbeResult("inconclusive", None, np.array(net), None, max_rounds)


# ---------------------------------------------------------------------------
# locally constrained pairs and the ball-intersection transfer

@dataclass(frozen=True, eq=False)
class LocallyConstrainedData:
    """Projection pair for one z: inner maps span{z, Z2} onto Z2, outer maps
    span{z, Y} onto Y, and both send z to the same image."""

    z: np.ndarray
    inner: ProjectionData
    outer: ProjectionData


def locally_constrained_from_full_projection(p_matrix, z, z2: Subspace,
                                             y: Subspace) -> LocallyConstrainedData:
    """Standard construction when Y is the range of a full norm-1 projection
    that leaves Z1 invariant: both local projections restrict it."""
    z = np.asarray(z, dtype=float)
    image = np.asarray(p_matrix, dtype=float) @ z
    return LocallyConstrainedData(z, ProjectionData(z2, z, image),
                                  ProjectionData(y, z, image))


@dataclass(frozen=True, eq=False)
class LocalVerdict:
    accepted: bool
    reason: str
    inner: ProjectionVerdict | None
    outer: ProjectionVerdict | None


def locally_constrained_verify(space, data: LocallyConstrainedData,
                               trials: int = 200, seed: int = 0) -> LocalVerdict:
    """Both projections must have norm one and share the image of z exactly."""
    if not data.inner.subspace.is_subspace_of(data.outer.subspace):
        raise ValueError("inner target must be nested inside the outer target")
    if not (np.array_equal(data.inner.transversal, data.z)
            and np.array_equal(data.outer.transversal, data.z)):
        return LocalVerdict(False, "transversal vectors disagree with z", None, None)
    if not np.array_equal(data.inner.image, data.outer.image):
        return LocalVerdict(False, "images of z differ", None, None)
    inner_v = verify_norm1_projection(space, data.inner, trials=trials, seed=seed)
    if not inner_v.accepted:
        return LocalVerdict(False, "inner projection exceeds norm one", inner_v, None)
    outer_v = verify_norm1_projection(space, data.outer, trials=trials, seed=seed)
    if not outer_v.accepted:
        return LocalVerdict(False, "outer projection exceeds norm one",
                            inner_v, outer_v)
    return LocalVerdict(True, "ok", inner_v, outer_v)


@dataclass(frozen=True, eq=False)
class TransferResult:
    ok: bool
    stage: str
    point: np.ndarray | None
    detail: dict


def locally_constrained_transfer(space, z1: Subspace, y: Subspace,
                                 z2: Subspace, family: BallFamily,
                                 data: LocallyConstrainedData | Callable,
                                 ) -> TransferResult:
    """Route a ball family with centers in Z2 through a Z1 witness and the
    locally constrained projection pair, landing a common point in Z2.

    Stages: the family must intersect within Y; it must intersect within Z1
    (this is where centrality of Z1 is exercised); the projection pair for
    the found witness must verify; and the projected point must lie in every
    ball with no slack.  The first failing stage is reported.
    """
    for b in family.balls:
        if not z2.contains(b.center, tol=1e-7):
            return TransferResult(False, "precondition", None,
                                  {"reason": "ball center outside Z2"})
    res_y = balls_intersect(space, family, y)
    if res_y.status != FEASIBLE:
        return TransferResult(False, "family-in-Y", None, {"result": res_y})
    res_z1 = balls_intersect(space, family, z1)
    if res_z1.status != FEASIBLE:
        return TransferResult(False, "witness-in-Z1", None, {"result": res_z1})
    z_wit = res_z1.witness
    if z2.contains(z_wit):
        return TransferResult(True, "done", z_wit,
                              {"note": "witness already lies in the target"})
    if callable(data):
        data = data(z_wit)
    if np.abs(data.z - z_wit).max() > 1e-7 * max(1.0, np.abs(z_wit).max()):
        return TransferResult(False, "projection-data", None,
                              {"reason": "data built for a different witness"})
    verdict = locally_constrained_verify(space, data)
    if not verdict.accepted:
        return TransferResult(False, "projection-data", None,
                              {"verdict": verdict})
    point = data.inner.image
    if not z2.contains(point, tol=1e-7):
        return TransferResult(False, "membership", None,
                              {"reason": "projected point left Z2"})
    dists = eval_norm_many(space, point[None, :] - family.centers)
    slack = dists - family.radii
    if slack.max(initial=0.0) > 1e-9 * max(1.0, float(family.radii.max())):
        return TransferResult(False, "radius", point,
                              {"distances": dists, "radii": family.radii})
    return TransferResult(True, "ok", point,
                          {"distances": dists, "radii": family.radii})


# ---------------------------------------------------------------------------
# compositions across sums

def _lift_subspace(parts: Sequence[Subspace], n_total: int,
                   slices: Sequence[slice]) -> Subspace:
    cols = []
    for part, sl in zip(parts, slices):
        for j in range(part.dim):
            col = np.zeros(n_total)
            col[sl] = part.basis[:, j]
            cols.append(col)
    return norms.subspace_from_basis(n_total, np.array(cols)) if cols \
        else Subspace.zero(n_total)


def compose_direct_sum_projections(space: norms.DirectSumNorm,
                                   pairs: Sequence[tuple[ProjectionData, ProjectionData]],
                                   z0, samples: int = 10_000, seed: int = 0,
                                   verify_components: bool = True) -> tuple:
    """Assemble componentwise projection pairs into a pair on the direct sum.

    Component images of z0 must agree bit-for-bit, which makes the composed
    images identical arrays; the norm-1 property of the outer composition is
    then sampled, since the monotone combiner transfers componentwise
    contraction.
    """
    z0 = np.asarray(z0, dtype=float)
    slices = norms.component_slices(space)
    if len(pairs) != len(space.components):
        raise DimensionMismatchError("one projection pair per component required")
    image = np.zeros_like(z0)
    inner_parts, outer_parts = [], []
    for (p_i, q_i), comp, sl in zip(pairs, space.components, slices):
        if not (np.array_equal(p_i.transversal, z0[sl])
                and np.array_equal(q_i.transversal, z0[sl])):
            raise ValueError("component transversal must equal the z0 slice")
        if not np.array_equal(p_i.image, q_i.image):
            raise ValueError("component images of z0 must agree exactly")
        if verify_components:
            for pd in (p_i, q_i):
                verdict = verify_norm1_projection(comp, pd, trials=80, seed=seed)
                if not verdict.accepted:
                    raise ValueError("component projection is not norm one")
        image[sl] = p_i.image
        inner_parts.append(p_i.subspace)
        outer_parts.append(q_i.subspace)
    n = norms.space_dim(space)
    z2_sum = _lift_subspace(inner_parts, n, slices)
    y_sum = _lift_subspace(outer_parts, n, slices)
    composed_p = ProjectionData(z2_sum, z0, image)
    composed_q = ProjectionData(y_sum, z0, image)

    rng = np.random.default_rng(seed)
    alphas = rng.normal(size=samples)
    ys = (y_sum.basis @ rng.normal(size=(y_sum.dim, samples))).T \
        if y_sum.dim else np.zeros((samples, n))
    w = alphas[:, None] * z0 + ys
    qw = alphas[:, None] * image + ys
    ratios = eval_norm_many(space, qw) / np.maximum(eval_norm_many(space, w), 1e-300)
    report = {
        "image_bitexact": np.array_equal(composed_p.apply(z0), composed_q.apply(z0)),
        "max_contraction_ratio": float(ratios.max(initial=0.0)),
        "samples": samples,
        "seed": seed,
        "ok": bool(ratios.max(initial=0.0) <= 1.0 + 1e-9),
    }
    return composed_p, composed_q, report


def esum_dominator(space: norms.ESumNorm, y_components: Sequence[Subspace],
                   x, a_points, component_oracle: Callable | None = None
                   ) -> tuple[np.ndarray, dict]:
    """Assemble a dominator in a monotone sum from componentwise dominators.

    Zero is adjoined to every component reference set, which pins the
    component norms of the dominator under those of x; the assembled
    domination in the sum norm is then verified directly.
    """
    x = np.asarray(x, dtype=float)
    a_points = np.atleast_2d(np.asarray(a_points, dtype=float))
    slices = norms.component_slices(space)
    if len(y_components) != len(space.components):
        raise DimensionMismatchError("one subspace per component required")
    y = np.zeros_like(x)
    comp_bounds = []
    for idx, (comp, sub, sl) in enumerate(zip(space.components, y_components,
                                              slices)):
        refs = np.vstack([a_points[:, sl], np.zeros((1, sl.stop - sl.start))])
        if component_oracle is not None:
            y_n = component_oracle(idx, comp, sub, x[sl], refs)
        else:
            res = ac_dominator(comp, sub, refs, x[sl])
            if res.status != FEASIBLE:
                raise OptimizationError(
                    f"component {idx} produced no dominator ({res.status})")
            y_n = res.dominator
        y[sl] = y_n
        comp_bounds.append((eval_norm(comp, y_n), eval_norm(comp, x[sl])))
    lhs = eval_norm_many(space, y[None, :] - a_points)
    rhs = eval_norm_many(space, x[None, :] - a_points)
    report = {
        "domination_ok": bool((lhs <= rhs * (1 + 1e-9) + 1e-12).all()),
        "component_bounds": comp_bounds,
        "component_bound_ok": all(a <= b * (1 + 1e-9) + 1e-12
                                  for a, b in comp_bounds),
        "lhs": lhs,
        "rhs": rhs,
    }
    return y, report


@dataclass(frozen=True, eq=False)
class LiftResult:
    space: norms.DirectSumNorm
    matrix: np.ndarray
    checks: dict
    central: CentralVerdict | None


def lift_projection_linf_sum(base_space, p_matrix, z1: Subspace, k: int,
                             trials: int = 200, seed: int = 0,
                             samples: int = 2000) -> LiftResult:
    """Lift a full norm-1 projection componentwise to the sup-normed sum of k
    copies of the base space, and re-run the central-subspace check on the
    lifted intersection subspace inside the lifted range.

    The size-k sup-sum stands in for continuous functions on a k-point
    compact space with values in the base space.
    """
    p_matrix = np.asarray(p_matrix, dtype=float)
    n = norms.space_dim(base_space)
    rng = np.random.default_rng(seed)
    checks: dict = {}
    checks["idempotent"] = bool(np.abs(p_matrix @ p_matrix - p_matrix).max() <= 1e-9)
    xs = rng.normal(size=(samples, n))
    ratios = eval_norm_many(base_space, xs @ p_matrix.T) / \
        np.maximum(eval_norm_many(base_space, xs), 1e-300)
    checks["base_norm_le_1"] = bool(ratios.max() <= 1.0 + 1e-9)
    checks["z1_invariant"] = all(
        z1.contains(p_matrix @ z1.basis[:, j], tol=1e-7) for j in range(z1.dim))
    if not all(checks.values()):
        return LiftResult(None, None, checks, None)

    lifted_space = norms.make_direct_sum([base_space] * k, norms.max_combiner(k))
    lifted = np.kron(np.eye(k), p_matrix)
    checks["lift_idempotent_bitexact"] = np.array_equal(lifted @ lifted, lifted)
    xs_big = rng.normal(size=(samples, k * n))
    ratios = eval_norm_many(lifted_space, xs_big @ lifted.T) / \
        np.maximum(eval_norm_many(lifted_space, xs_big), 1e-300)
    checks["lift_norm_le_1"] = bool(ratios.max() <= 1.0 + 1e-9)

    y_base = norms.subspace_from_basis(n, _column_space(p_matrix).T) \
        if np.abs(p_matrix).max() > 0 else Subspace.zero(n)
    z2_base = intersect_subspaces(z1, y_base)
    slices = [slice(i * n, (i + 1) * n) for i in range(k)]
    lifted_y = _lift_subspace([y_base] * k, k * n, slices)
    lifted_z2 = _lift_subspace([z2_base] * k, k * n, slices)
    central = central_subspace_check(lifted_space, lifted_z2, trials, seed,
                                     within=lifted_y)
    checks["central_preserved"] = central.passed
    return LiftResult(lifted_space, lifted, checks, central)


def _column_space(mat: np.ndarray) -> np.ndarray:
    u, s, _ = np.linalg.svd(mat)
    rank = int((s > max(mat.shape) * np.finfo(float).eps * (s[0] if s.size else 0)).sum())
    return u[:, :rank].T if rank else np.zeros((0, mat.shape[0]))


# ---------------------------------------------------------------------------
# three-ball sampler

@dataclass(frozen=True, eq=False)
class ThreeBallVerdict:
    passed: bool
    witness_family: BallFamily | None
    enlarged_family: BallFamily | None
    result: IntersectionResult | None
    trials_run: int
    eps: float
    note: str


def mideal_three_ball_check(space, z: Subspace, trials: int, eps: float = 1e-6,
                            seed: int = 0) -> ThreeBallVerdict:
    """Sampled three-ball test: every generated triple intersects jointly and
    each ball meets the subspace; the eps-enlarged triple must then meet the
    subspace too.

    Failures return the triple together with the infeasibility evidence for
    the enlarged system.  A pass is only the absence of counterexamples.
    """
    n = norms.space_dim(space)
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        w = rng.normal(size=n) * 1.5
        centers = rng.normal(size=(3, n)) * 1.5
        joint = eval_norm_many(space, w[None, :] - centers)
        meet = np.array([dist_to_subspace(space, c, z)[0] for c in centers])
        tight = rng.random(size=3) < 0.5
        infl = 1.0 + rng.uniform(0.0, 0.1, size=3) * (~tight)
        radii = np.maximum(joint, meet) * infl
        family = BallFamily.from_arrays(centers, radii)
        enlarged = BallFamily.from_arrays(centers, radii + eps)
        res = balls_intersect(space, enlarged, z)
        if res.status != FEASIBLE:
            return ThreeBallVerdict(False, family, enlarged, res, trial + 1, eps,
                                    "enlarged triple misses the subspace")
    return ThreeBallVerdict(True, None, None, None, trials, eps,
                            f"no counterexample found in {trials} trials")


# ---------------------------------------------------------------------------
# minimal-sum decompositions

@dataclass(frozen=True, eq=False)
class DecompositionResult:
    y: np.ndarray
    z: np.ndarray
    value: float
    ratio: float


def decompose_min_sum(space, x, y_sub: Subspace, z_sub: Subspace
                      ) -> DecompositionResult:
    """Minimize ||y|| + ||z|| over decompositions x = y + z with y in Y and
    z in Z (LP for polyhedral norms)."""
    x = np.asarray(x, dtype=float)
    total = norms.sum_subspaces(y_sub, z_sub)
    if not total.contains(x, tol=1e-7):
        raise ValueError("x does not lie in Y + Z")
    n = x.shape[0]
    b_mat, c_mat = np.array(y_sub.basis), np.array(z_sub.basis)

    if norms.is_lp_encodable(space):
        builder = optim.LpBuilder()
        a_vars = builder.new_vars(y_sub.dim)
        b_vars = builder.new_vars(z_sub.dim)
        ty = builder.new_var()
        tz = builder.new_var()
        builder.add_objective({ty: 1.0, tz: 1.0})
        norms.add_norm_epigraph(builder, space, a_vars, b_mat, np.zeros(n), ty)
        norms.add_norm_epigraph(builder, space, b_vars, c_mat, np.zeros(n), tz)
        for row in range(n):
            terms = {a: float(b_mat[row, j]) for j, a in enumerate(a_vars)}
            for j, b in enumerate(b_vars):
                terms[b] = terms.get(b, 0.0) + float(c_mat[row, j])
            builder.add_eq(terms, float(x[row]))
        out = optim.lp_solve(builder.build())
        if out.status != optim.OPTIMAL:
            raise OptimizationError(f"decomposition LP ended with {out.status}")
        y_vec = b_mat @ out.x[:y_sub.dim]
        z_vec = c_mat @ out.x[y_sub.dim:y_sub.dim + z_sub.dim]
        value = float(out.value)
    else:
        stacked = np.column_stack([b_mat, c_mat]) if y_sub.dim + z_sub.dim \
            else np.zeros((n, 0))
        w0, *_ = np.linalg.lstsq(stacked, x, rcond=None)
        _, s, vt = np.linalg.svd(stacked)
        rank = int((s > 1e-12).sum())
        null = vt[rank:].T

        def oracle(xi):
            w = w0 + null @ xi
            yv, zv = b_mat @ w[:y_sub.dim], c_mat @ w[y_sub.dim:]
            val = eval_norm(space, yv) + eval_norm(space, zv)
            gy = b_mat.T @ norm_subgradient(space, yv)
            gz = c_mat.T @ norm_subgradient(space, zv)
            return val, null.T @ np.concatenate([gy, gz])

        res = optim.staged_subgradient(oracle, None, np.zeros(null.shape[1]),
                                       scale=max(1.0, float(np.abs(w0).max(initial=0.0))))
        w = w0 + null @ res.point
        y_vec = b_mat @ w[:y_sub.dim]
        z_vec = c_mat @ w[y_sub.dim:]
        value = res.value

    resid = np.abs(y_vec + z_vec - x).max(initial=0.0)
    if resid > 1e-6 * max(1.0, np.abs(x).max(initial=0.0)):
        raise OptimizationError("decomposition does not reassemble x")
    nx = eval_norm(space, x)
    ratio = value / nx if nx > 1e-300 else 1.0
    return DecompositionResult(y_vec, z_vec, value, ratio)


def gamma_estimate(space, y_sub: Subspace, z_sub: Subspace, samples: int,
                   seed: int) -> float:
    """Largest observed ||y|| + ||z|| over unit-norm x in Y + Z."""
    rng = np.random.default_rng(seed)
    worst = 1.0
    for _ in range(samples):
        x = y_sub.basis @ rng.normal(size=y_sub.dim) + \
            z_sub.basis @ rng.normal(size=z_sub.dim)
        nx = eval_norm(space, x)
        if nx < 1e-9:
            continue
        dec = decompose_min_sum(space, x / nx, y_sub, z_sub)
        worst = max(worst, dec.ratio)
    return worst


def projection_contraction_check(space, p_matrix, y_sub: Subspace, trials: int,
                                 seed: int) -> tuple[bool, dict | None]:
    """Range-of-projection pattern: for sampled families with centers in the
    range feasible in the whole space, the projected witness lies in every
    ball."""
    p_matrix = np.asarray(p_matrix, dtype=float)
    n = norms.space_dim(space)
    rng = np.random.default_rng(seed)
    for trial in range(trials):
        k = int(rng.integers(2, 5))
        w = rng.normal(size=n) * 1.5
        centers = (y_sub.basis @ rng.normal(size=(y_sub.dim, k)) * 1.5).T
        radii = eval_norm_many(space, w[None, :] - centers) * \
            (1.0 + rng.uniform(0.0, 0.2, size=k))
        res = balls_intersect(space, BallFamily.from_arrays(centers, radii))
        if res.status != FEASIBLE:
            return False, {"trial": trial, "reason": "generator failed"}
        proj = p_matrix @ res.witness
        gaps = eval_norm_many(space, proj[None, :] - centers) - radii
        if gaps.max(initial=0.0) > 1e-9 * max(1.0, float(radii.max())):
            return False, {"trial": trial, "witness": res.witness, "proj": proj}
    return True, None
