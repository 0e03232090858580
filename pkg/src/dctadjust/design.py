"""Design of sparse orthogonal adjustment matrices.

An adjustment turns a cheap base transform B into an approximation of a
desired transform D: H = B*A (pre-adjustment) or H = C*B (post-adjustment).
Quality is the frequency-weighted squared error

    E(H, D) = sum_ij exp(-alpha*i) * (H[i,j] - D[i,j])^2,   alpha = ln(100)/N,

which weights low-frequency rows exponentially more.  Orthogonality of the
adjustment is enforced by construction: it is parameterized as layers of
parallel (index-disjoint) plane rotations, and the optimizer is a cyclic
coordinate descent over the rotation angles, each angle minimized by a
1-D golden-section search.

Sparsity patterns are structural.  A K-tap band adjustment is realized by
K-1 alternating "brick wall" layers of adjacent-pair rotations, whose product
provably has bandwidth <= K-1 (entries outside |i-j| < K are exact zeros).
A BxB sub-block adjustment only rotates indices below B, so everything
outside the top-left block stays exactly identity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import (
    InvalidScheduleError,
    KindMismatchError,
    PatternError,
    ShapeError,
)
from .transforms import TransformKind, TransformMatrix, alternating_signs

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_ANGLE_TOL = 1e-12
_SEARCH_GRID = 33


class PatternKind(Enum):
    BAND = "band"
    SUBBLOCK = "subblock"
    DENSE = "dense"


class Side(Enum):
    PRE = "pre"
    POST = "post"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SparsityPattern:
    """Which entries of an N x N adjustment may differ from the identity.

    band(K): non-zeros restricted to |i-j| < K (at most 2K-1 per row).
    subblock(B): identity outside the top-left B x B block.
    dense: no restriction.
    """

    kind: PatternKind
    size: int
    taps: int | None = None
    order: int | None = None

    def __post_init__(self):
        if self.size < 1:
            raise PatternError(f"pattern size must be >= 1, got {self.size}")
        if self.kind is PatternKind.BAND:
            if self.taps is None or self.taps < 1 or self.taps > self.size:
                raise PatternError(f"band taps must be in 1..{self.size}, got {self.taps}")
        elif self.kind is PatternKind.SUBBLOCK:
            if self.order is None or self.order < 1 or self.order > self.size:
                raise PatternError(f"sub-block order must be in 1..{self.size}, got {self.order}")

    @staticmethod
    def band(taps: int, size: int) -> "SparsityPattern":
        return SparsityPattern(PatternKind.BAND, size, taps=taps)

    @staticmethod
    def subblock(order: int, size: int) -> "SparsityPattern":
        return SparsityPattern(PatternKind.SUBBLOCK, size, order=order)

    @staticmethod
    def dense(size: int) -> "SparsityPattern":
        return SparsityPattern(PatternKind.DENSE, size)

    def label(self) -> str:
        if self.kind is PatternKind.BAND:
            return f"band:{self.taps}"
        if self.kind is PatternKind.SUBBLOCK:
            return f"subblock:{self.order}"
        return "dense"

    @staticmethod
    def from_label(label: str, size: int) -> "SparsityPattern":
        if label == "dense":
            return SparsityPattern.dense(size)
        name, _, arg = label.partition(":")
        if name == "band" and arg:
            return SparsityPattern.band(int(arg), size)
        if name == "subblock" and arg:
            return SparsityPattern.subblock(int(arg), size)
        raise PatternError(f"unknown pattern label {label!r}")


def pattern_violation(pattern: SparsityPattern, matrix: np.ndarray) -> float:
    """Max deviation of `matrix` from what the pattern requires outside its support."""
    n = pattern.size
    if matrix.shape != (n, n):
        raise ShapeError(f"matrix shape {matrix.shape} does not match pattern size {n}")
    i = np.arange(n)[:, None]
    j = np.arange(n)[None, :]
    if pattern.kind is PatternKind.BAND:
        outside = np.abs(i - j) >= pattern.taps
        return float(np.max(np.abs(matrix[outside]))) if outside.any() else 0.0
    if pattern.kind is PatternKind.SUBBLOCK:
        b = pattern.order
        outside = (i >= b) | (j >= b)
        if not outside.any():
            return 0.0
        return float(np.max(np.abs((matrix - np.eye(n))[outside])))
    return 0.0


class PlaneRotation(NamedTuple):
    i: int
    j: int
    theta: float


@dataclass(frozen=True)
class GivensSchedule:
    """Ordered layers of index-disjoint plane rotations.

    Layers are applied in order; the realized matrix is
    L_last * ... * L_0 where each L is the product of its (commuting) layer
    rotations.  Rotation convention for (i, j, theta) acting on a vector x:

        x_i' = cos(theta) * x_i - sin(theta) * x_j
        x_j' = sin(theta) * x_i + cos(theta) * x_j
    """

    size: int
    layers: tuple[tuple[PlaneRotation, ...], ...]

    def __post_init__(self):
        for layer in self.layers:
            seen: set[int] = set()
            for rot in layer:
                if not (0 <= rot.i < rot.j < self.size):
                    raise InvalidScheduleError(
                        f"rotation indices ({rot.i},{rot.j}) out of range for size {self.size}"
                    )
                if rot.i in seen or rot.j in seen:
                    raise InvalidScheduleError(
                        f"index reused within a layer at rotation ({rot.i},{rot.j})"
                    )
                seen.add(rot.i)
                seen.add(rot.j)

    @property
    def n_rotations(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def rotations(self) -> list[PlaneRotation]:
        return [rot for layer in self.layers for rot in layer]

    def angles(self) -> np.ndarray:
        return np.array([rot.theta for rot in self.rotations()], dtype=float)

    def with_angles(self, thetas: Sequence[float]) -> "GivensSchedule":
        thetas = list(thetas)
        if len(thetas) != self.n_rotations:
            raise InvalidScheduleError(
                f"expected {self.n_rotations} angles, got {len(thetas)}"
            )
        out = []
        idx = 0
        for layer in self.layers:
            new_layer = []
            for rot in layer:
                new_layer.append(PlaneRotation(rot.i, rot.j, float(thetas[idx])))
                idx += 1
            out.append(tuple(new_layer))
        return GivensSchedule(self.size, tuple(out))


def givens_to_matrix(schedule: GivensSchedule) -> np.ndarray:
    """Realize the schedule as an orthogonal matrix (layers applied in order)."""
    m = np.eye(schedule.size)
    for layer in schedule.layers:
        for i, j, theta in layer:
            c, s = math.cos(theta), math.sin(theta)
            ri = m[i].copy()
            rj = m[j].copy()
            m[i] = c * ri - s * rj
            m[j] = s * ri + c * rj
    return m


def _round_robin_layers(indices: Sequence[int]) -> list[list[tuple[int, int]]]:
    """All-pairs pairing of `indices` in layers of disjoint pairs (circle method)."""
    ids: list[int | None] = list(indices)
    if len(ids) % 2:
        ids.append(None)
    m = len(ids)
    layers = []
    for _ in range(m - 1):
        layer = []
        for i in range(m // 2):
            a, b = ids[i], ids[m - 1 - i]
            if a is not None and b is not None:
                layer.append((min(a, b), max(a, b)))
        layers.append(sorted(layer))
        ids = [ids[0], ids[-1]] + ids[1:-1]
    return layers


def pattern_schedule_template(pattern: SparsityPattern) -> GivensSchedule:
    """Zero-angle rotation skeleton spanning orthogonal matrices of the pattern.

    band(K): K-1 alternating brick-wall layers of adjacent-pair rotations
    (i, i+1); a product of L such layers has bandwidth <= L, so conformance
    to the band is structural.  subblock(B): every pair below B, arranged in
    disjoint layers; dense: every pair.
    """
    n = pattern.size
    if pattern.kind is PatternKind.BAND:
        layers = []
        for level in range(pattern.taps - 1):
            offset = level % 2
            layer = [
                PlaneRotation(i, i + 1, 0.0) for i in range(offset, n - 1, 2)
            ]
            if layer:
                layers.append(tuple(layer))
        return GivensSchedule(n, tuple(layers))
    indices = range(pattern.order if pattern.kind is PatternKind.SUBBLOCK else n)
    layers = [
        tuple(PlaneRotation(a, b, 0.0) for a, b in layer)
        for layer in _round_robin_layers(list(indices))
        if layer
    ]
    return GivensSchedule(n, tuple(layers))


def default_alpha(size: int) -> float:
    """The frequency-weight decay rate ln(10^2)/N."""
    return math.log(100.0) / size


def frequency_weights(size: int, alpha: float) -> np.ndarray:
    return np.exp(-alpha * np.arange(size))


def weighted_error(h: np.ndarray, d: np.ndarray, alpha: float) -> float:
    """sum_ij exp(-alpha*i) * (H[i,j] - D[i,j])^2 with i the frequency row index."""
    h = np.asarray(h, dtype=float)
    d = np.asarray(d, dtype=float)
    if h.shape != d.shape or h.ndim != 2:
        raise ShapeError(f"mismatched shapes {h.shape} vs {d.shape}")
    w = frequency_weights(h.shape[0], alpha)
    diff = h - d
    return float(np.einsum("i,ij,ij->", w, diff, diff))


@dataclass(frozen=True)
class DesignConfig:
    """Optimizer knobs.  alpha=None means ln(100)/N resolved at run time."""

    alpha: float | None = None
    max_iterations: int = 2000
    tolerance: float = 1e-10
    restarts: int = 4
    rng_seed: int = 0
    sparsity_epsilon: float = 0.05

    def __post_init__(self):
        if self.alpha is not None and self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.restarts < 0:
            raise ValueError("restarts must be >= 0")

    def resolve_alpha(self, size: int) -> float:
        return self.alpha if self.alpha is not None else default_alpha(size)


@dataclass(frozen=True)
class AdjustmentMatrix:
    """A designed orthogonal sparse adjustment plus design metadata."""

    pattern: SparsityPattern
    side: Side
    base: TransformKind
    target: TransformKind
    schedule: GivensSchedule
    realized: np.ndarray
    objective: float | None = None
    identity_objective: float | None = None
    converged: bool = True
    objective_trace: tuple[float, ...] = field(default=(), repr=False)
    restart_index: int = 0

    def __post_init__(self):
        self.realized.setflags(write=False)


def _apply_rotation_rows(m: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    rp = m[p].copy()
    rq = m[q].copy()
    m[p] = c * rp - s * rq
    m[q] = s * rp + c * rq


def _strip_rotation_cols(m: np.ndarray, p: int, q: int, c: float, s: float) -> None:
    # right-multiply by the rotation transpose: remove G from the left partial product
    cp = m[:, p].copy()
    cq = m[:, q].copy()
    m[:, p] = c * cp - s * cq
    m[:, q] = s * cp + c * cq


def _golden_min(f: Callable[[float], float], lo: float, hi: float) -> float:
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > _ANGLE_TOL:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


_GRID = np.linspace(-math.pi / 2, math.pi / 2, _SEARCH_GRID)
_GRID_COS = np.cos(_GRID)
_GRID_SIN = np.sin(_GRID)


def _minimize_angle(
    f: Callable[[float], float],
    grid_values: np.ndarray,
    theta_old: float,
) -> tuple[float, float]:
    """1-D minimization over [-pi/2, pi/2]: coarse grid (pre-evaluated,
    vectorized by the caller), then golden-section refinement to 1e-12;
    ties broken toward the smaller |theta|."""
    k = int(np.argmin(grid_values))
    step = _GRID[1] - _GRID[0]
    lo = max(-math.pi / 2, _GRID[k] - step)
    hi = min(math.pi / 2, _GRID[k] + step)
    t_best = _golden_min(f, lo, hi)
    f_best = f(t_best)
    for cand in (0.0, theta_old):
        fc = f(cand)
        tie = 1e-15 * (1.0 + abs(f_best))
        if fc < f_best - tie or (abs(fc - f_best) <= tie and abs(cand) < abs(t_best)):
            f_best, t_best = fc, cand
    return t_best, f_best


class _CoordinateDescent:
    """Cyclic coordinate descent over the angles of a fixed rotation skeleton.

    Keeps the composed matrix H (= B*A or A*B) and the adjustment A updated by
    rank-2 increments, so each angle step costs O(N^2).  For one rotation
    G(p,q,theta) inside the product, H is affine in (cos, sin):

        H(theta) = H_stripped + cos(theta)*P + sin(theta)*Q

    with P, Q rank-2 matrices built from the columns/rows of the partial
    products to the left/right of G, which makes the weighted error an exact
    degree-2 trigonometric polynomial in theta.
    """

    def __init__(
        self,
        base: np.ndarray,
        desired: np.ndarray,
        template: GivensSchedule,
        side: Side,
        alpha: float,
        sparsity_epsilon: float | None = None,
    ):
        self.base = base
        self.desired = desired
        self.side = side
        self.weights = frequency_weights(base.shape[0], alpha)
        self.eps = sparsity_epsilon
        rots = template.rotations()
        self.rp = np.array([r.i for r in rots], dtype=int)
        self.rq = np.array([r.j for r in rots], dtype=int)
        self.m = len(rots)
        self.n = base.shape[0]

    def _penalty(self, a: np.ndarray) -> float:
        return float(np.sum(a * a / (self.eps + np.abs(a))))

    def _objective(self, a_cur: np.ndarray, h_cur: np.ndarray) -> float:
        diff = h_cur - self.desired
        obj = float(np.einsum("i,ij,ij->", self.weights, diff, diff))
        if self.eps is not None:
            obj += self._penalty(a_cur)
        return obj

    def _realize(self, theta: np.ndarray) -> np.ndarray:
        a = np.eye(self.n)
        for t in range(self.m):
            _apply_rotation_rows(a, self.rp[t], self.rq[t], math.cos(theta[t]), math.sin(theta[t]))
        return a

    def compose(self, a: np.ndarray) -> np.ndarray:
        return self.base @ a if self.side is Side.PRE else a @ self.base

    def run(self, theta0: np.ndarray, max_sweeps: int, tol: float):
        theta = np.asarray(theta0, dtype=float).copy()
        a_cur = self._realize(theta)
        e_cur = self.compose(a_cur) - self.desired
        w = self.weights
        wobj = float(np.einsum("i,ij,ij->", w, e_cur, e_cur))
        obj = wobj + (self._penalty(a_cur) if self.eps is not None else 0.0)
        trace = [obj]
        converged = False
        if self.m == 0:
            return theta, trace, True

        for _ in range(max_sweeps):
            # partial products around rotation 0: A = L*G_0, R = I
            c0, s0 = math.cos(theta[0]), math.sin(theta[0])
            ua = a_cur.copy()
            _strip_rotation_cols(ua, self.rp[0], self.rq[0], c0, s0)
            va = np.eye(self.n)
            if self.side is Side.PRE:
                uw = e_cur + self.desired
                _strip_rotation_cols(uw, self.rp[0], self.rq[0], c0, s0)
                vw = va
            else:
                uw = ua
                vw = self.base.copy()

            for t in range(self.m):
                p, q = self.rp[t], self.rq[t]
                co, so = math.cos(theta[t]), math.sin(theta[t])
                up, uq = uw[:, p], uw[:, q]
                vp, vq = vw[p, :], vw[q, :]
                # rank-2 structure of H(theta) = (E - co*P - so*Q) + c*P + s*Q
                # with P = up vp^T + uq vq^T, Q = uq vp^T - up vq^T reduces the
                # weighted error to a degree-2 trig polynomial with O(N) setup
                wup = w * up
                wuq = w * uq
                suu_pp = float(wup @ up)
                suu_qq = float(wuq @ uq)
                suu_pq = float(wup @ uq)
                svv_pp = float(vp @ vp)
                svv_qq = float(vq @ vq)
                svv_pq = float(vp @ vq)
                a_pp = suu_pp * svv_pp + 2 * suu_pq * svv_pq + suu_qq * svv_qq
                a_qq = suu_qq * svv_pp - 2 * suu_pq * svv_pq + suu_pp * svv_qq
                a_pq = (suu_pq * svv_pp - suu_pp * svv_pq
                        + suu_qq * svv_pq - suu_pq * svv_qq)
                evp = e_cur @ vp
                evq = e_cur @ vq
                we_p = float(wup @ evp + wuq @ evq)
                we_q = float(wuq @ evp - wup @ evq)
                b_p = we_p - co * a_pp - so * a_pq
                b_q = we_q - co * a_pq - so * a_qq
                const = (wobj - 2 * co * we_p - 2 * so * we_q
                         + co * co * a_pp + so * so * a_qq + 2 * co * so * a_pq)

                def quad(c: float, s: float) -> float:
                    return (const + 2 * c * b_p + 2 * s * b_q
                            + c * c * a_pp + s * s * a_qq + 2 * c * s * a_pq)

                if self.eps is None:
                    def f(th: float) -> float:
                        return quad(math.cos(th), math.sin(th))

                    grid_vals = (const + 2 * _GRID_COS * b_p + 2 * _GRID_SIN * b_q
                                 + _GRID_COS * _GRID_COS * a_pp
                                 + _GRID_SIN * _GRID_SIN * a_qq
                                 + 2 * _GRID_COS * _GRID_SIN * a_pq)
                else:
                    pa = np.outer(ua[:, p], va[p, :]) + np.outer(ua[:, q], va[q, :])
                    qa = np.outer(ua[:, q], va[p, :]) - np.outer(ua[:, p], va[q, :])
                    a0 = a_cur - co * pa - so * qa

                    def f(th: float) -> float:
                        c, s = math.cos(th), math.sin(th)
                        return quad(c, s) + self._penalty(a0 + c * pa + s * qa)

                    cand = (a0[None, :, :] + _GRID_COS[:, None, None] * pa
                            + _GRID_SIN[:, None, None] * qa)
                    pen = np.sum(cand * cand / (self.eps + np.abs(cand)), axis=(1, 2))
                    grid_vals = (const + 2 * _GRID_COS * b_p + 2 * _GRID_SIN * b_q
                                 + _GRID_COS * _GRID_COS * a_pp
                                 + _GRID_SIN * _GRID_SIN * a_qq
                                 + 2 * _GRID_COS * _GRID_SIN * a_pq) + pen

                t_new, f_new = _minimize_angle(f, grid_vals, theta[t])
                c_new, s_new = math.cos(t_new), math.sin(t_new)
                dc, ds = c_new - co, s_new - so
                e_cur += np.outer(up, dc * vp - ds * vq)
                e_cur += np.outer(uq, dc * vq + ds * vp)
                if self.eps is not None:
                    a_cur += dc * pa + ds * qa
                else:
                    a_cur += np.outer(ua[:, p], dc * va[p, :] - ds * va[q, :])
                    a_cur += np.outer(ua[:, q], dc * va[q, :] + ds * va[p, :])
                theta[t] = t_new
                obj = f_new
                wobj = quad(c_new, s_new)

                if t + 1 < self.m:
                    pn, qn = self.rp[t + 1], self.rq[t + 1]
                    cn, sn = math.cos(theta[t + 1]), math.sin(theta[t + 1])
                    _strip_rotation_cols(ua, pn, qn, cn, sn)
                    if self.side is Side.PRE and uw is not ua:
                        _strip_rotation_cols(uw, pn, qn, cn, sn)
                    _apply_rotation_rows(va, p, q, c_new, s_new)
                    if self.side is Side.POST and vw is not va:
                        _apply_rotation_rows(vw, p, q, c_new, s_new)

            prev = trace[-1]
            trace.append(obj)
            if prev - obj < tol * (1.0 + abs(obj)):
                converged = True
                break
        return theta, trace, converged


def _restart_angles(m: int, seed: int, restart: int) -> np.ndarray:
    if restart == 0:
        return np.zeros(m)
    rng = np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, restart])
    return rng.uniform(-0.3, 0.3, size=m)


def _check_design_inputs(b: TransformMatrix, d: TransformMatrix, pattern: SparsityPattern):
    if b.size != d.size:
        raise ShapeError(f"base size {b.size} != desired size {d.size}")
    if pattern.size != b.size:
        raise ShapeError(f"pattern size {pattern.size} != transform size {b.size}")


def optimize_adjustment(
    b: TransformMatrix,
    d: TransformMatrix,
    pattern: SparsityPattern,
    side: Side,
    config: DesignConfig = DesignConfig(),
) -> AdjustmentMatrix:
    """Minimize the weighted error of H = B*A (pre) or C*B (post) over the
    orthogonal matrices conforming to `pattern`.

    Runs `config.restarts` random restarts after the zero-angle (identity)
    start; results merge by lowest objective, then lowest restart index.  The
    plain identity adjustment is always a candidate, so the result never
    scores worse than no adjustment.
    """
    _check_design_inputs(b, d, pattern)
    alpha = config.resolve_alpha(b.size)
    template = pattern_schedule_template(pattern)
    identity_obj = weighted_error(b.entries, d.entries, alpha)

    cd = _CoordinateDescent(b.entries, d.entries, template, side, alpha)
    best = None  # (objective, restart, theta, trace, converged)
    for r in range(config.restarts + 1):
        theta0 = _restart_angles(template.n_rotations, config.rng_seed, r)
        theta, trace, conv = cd.run(theta0, config.max_iterations, config.tolerance)
        realized = cd._realize(theta)
        obj = weighted_error(cd.compose(realized), d.entries, alpha)
        if best is None or obj < best[0]:
            best = (obj, r, theta, trace, conv)

    obj, restart, theta, trace, conv = best
    if identity_obj <= obj:
        schedule = template
        realized = np.eye(b.size)
        obj = identity_obj
        trace = [identity_obj]
        conv = True
        restart = -1
    else:
        schedule = template.with_angles(theta)
        realized = givens_to_matrix(schedule)
    return AdjustmentMatrix(
        pattern=pattern,
        side=side,
        base=b.kind,
        target=d.kind,
        schedule=schedule,
        realized=realized,
        objective=float(obj),
        identity_objective=float(identity_obj),
        converged=conv,
        objective_trace=tuple(trace),
        restart_index=restart,
    )


@dataclass(frozen=True)
class DiscoveryResult:
    """Output of the sparsity-discovery optimization."""

    matrix: np.ndarray
    magnitude_map: np.ndarray
    objective: float
    weighted_term: float
    penalty_term: float
    side: Side

    def __post_init__(self):
        self.matrix.setflags(write=False)
        self.magnitude_map.setflags(write=False)


def discover_sparsity(
    b: TransformMatrix,
    d: TransformMatrix,
    side: Side,
    config: DesignConfig = DesignConfig(),
) -> DiscoveryResult:
    """Find which sparsity pattern suits a base/desired pair, by minimizing

        sum_ij [ X_ij^2 / (eps + |X_ij|) + exp(-alpha*i) * (H_ij - D_ij)^2 ]

    over fully dense orthogonal X (H = B*X or X*B per `side`).  The penalty
    drives unneeded entries toward zero; the returned magnitude map (in
    [0,1], 1 = largest magnitude) is what the gray-map export renders.
    """
    _check_design_inputs(b, d, SparsityPattern.dense(b.size))
    alpha = config.resolve_alpha(b.size)
    template = pattern_schedule_template(SparsityPattern.dense(b.size))
    cd = _CoordinateDescent(
        b.entries, d.entries, template, side, alpha,
        sparsity_epsilon=config.sparsity_epsilon,
    )
    best = None
    for r in range(config.restarts + 1):
        theta0 = _restart_angles(template.n_rotations, config.rng_seed, r)
        theta, trace, conv = cd.run(theta0, config.max_iterations, config.tolerance)
        realized = cd._realize(theta)
        obj = cd._objective(realized, cd.compose(realized))
        if best is None or obj < best[0]:
            best = (obj, r, theta)
    obj, _, theta = best
    realized = cd._realize(theta)
    h = cd.compose(realized)
    weighted = weighted_error(h, d.entries, alpha)
    mags = np.abs(realized)
    peak = float(mags.max())
    return DiscoveryResult(
        matrix=realized,
        magnitude_map=mags / peak if peak > 0 else mags,
        objective=float(obj),
        weighted_term=float(weighted),
        penalty_term=float(obj - weighted),
        side=side,
    )


def dct8_adjustment_from_dst7(c_s7: AdjustmentMatrix) -> AdjustmentMatrix:
    """Derive the DCT-8 post-adjustment from the DST-7 one: C_C8 = S*C_S7*S.

    Entries pick up the chessboard sign (-1)^(i+j); magnitudes are unchanged,
    the sparsity pattern is preserved, and applying the flip twice returns
    the original matrix exactly.
    """
    if c_s7.side is not Side.POST or c_s7.base is not TransformKind.DCT2:
        raise KindMismatchError(
            f"sign-flip derivation needs side=post, base=dct2; "
            f"got side={c_s7.side}, base={c_s7.base}"
        )
    if c_s7.target is TransformKind.DST7:
        new_target = TransformKind.DCT8
    elif c_s7.target is TransformKind.DCT8:
        new_target = TransformKind.DST7
    else:
        raise KindMismatchError(f"target must be dst7 or dct8, got {c_s7.target}")

    sgn = alternating_signs(c_s7.pattern.size)
    realized = c_s7.realized * sgn[:, None] * sgn[None, :]
    # conjugating a plane rotation by S flips its angle iff (-1)^(i+j) = -1
    angles = [
        rot.theta if (rot.i + rot.j) % 2 == 0 else -rot.theta
        for rot in c_s7.schedule.rotations()
    ]
    return AdjustmentMatrix(
        pattern=c_s7.pattern,
        side=c_s7.side,
        base=c_s7.base,
        target=new_target,
        schedule=c_s7.schedule.with_angles(angles),
        realized=realized,
        objective=c_s7.objective,
        identity_objective=c_s7.identity_objective,
        converged=c_s7.converged,
        objective_trace=c_s7.objective_trace,
        restart_index=c_s7.restart_index,
    )


def identity_adjustment(
    pattern: SparsityPattern,
    side: Side,
    base: TransformKind,
    target: TransformKind,
) -> AdjustmentMatrix:
    """Zero-angle adjustment for the given pattern (useful as a baseline)."""
    template = pattern_schedule_template(pattern)
    return AdjustmentMatrix(
        pattern=pattern,
        side=side,
        base=base,
        target=target,
        schedule=template,
        realized=np.eye(pattern.size),
    )
