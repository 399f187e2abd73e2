"""Fixed-point iteration oracle.

Plain iteration of p <- phi(p) / (phi(p) + chi(p)), with no acceleration,
used as an independent check on every closed form. Scalar variants record a
full trace; the batch variant drives many tables at once with numpy and
returns limits only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWeightsError, DomainError, UnsupportedClassError
from .estimators import weights2
from .tables import (
    DEFAULT_POLICY,
    AsymmetricTable2,
    GameClass,
    GameTag,
    NumericPolicy,
    PayoffTable2,
    PayoffTable3,
)

__all__ = [
    "IterationTrace",
    "iterate2",
    "iterate3",
    "iterate_asym",
    "iterate2_limits",
    "iterate3_limits",
    "weights3",
]


@dataclass(frozen=True)
class IterationTrace:
    """Record of one fixed-point run.

    ``iterates`` starts at the seed and ends at the final estimate; for the
    asymmetric run the entries are (p_x, p_y) pairs. ``converged`` means the
    last step moved at most fp_tol.
    """

    iterates: tuple
    converged: bool
    iterations_used: int

    @property
    def limit(self):
        return self.iterates[-1]


def weights3(f, g, h, j, k, m, p):
    """Three-player (psi, omega) at cooperation level p; array-friendly."""
    q = 1.0 - p
    psi = p * (g - h) + q * (j - k)
    omega = p * p * (f - g) + 2.0 * p * q * (h - j) + q * q * (k - m)
    return psi, omega


def _check_p0(p0: float) -> float:
    if not 0.0 <= p0 <= 1.0:
        raise DomainError(f"starting point p0={p0!r} outside [0, 1]")
    return float(p0)


def _corner_repels(a, b, c, d):
    """Whether p = 1 repels under the StagHunt balance map.

    At p = 1 the defection weight chi vanishes, so 1 is always a fixed
    point; a deviation eps is multiplied by (c - d) / (2b - a - c) per
    step. This reads that factor off the map itself, no root formula
    involved.
    """
    return (c - d) > (2.0 * b - a - c)


def iterate2(
    table: PayoffTable2,
    game_class: GameClass,
    p0: float = 0.5,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> IterationTrace:
    """Iterate the two-player balance map from p0 and record the trace.

    A StagHunt seed of exactly 1 lands on a fixed point that may repel:
    when it does, iterating in place would sit on the corner forever (and
    a tiny nudge stalls against fp_tol for weakly repelling tables), so
    the seed is moved to 0.5 and the interior attractor takes over. The
    repulsion test only inspects the map's own slope at the corner.
    """
    if game_class.tag is GameTag.UNCLASSIFIED:
        raise UnsupportedClassError("iteration requires a classified table")
    p = _check_p0(p0)
    a, b, c, d = table.values()
    if game_class.tag is GameTag.STAG_HUNT and p == 1.0 and _corner_repels(a, b, c, d):
        p = 0.5
    iterates = [p]
    for n in range(1, policy.fp_max_iter + 1):
        phi, chi = weights2(game_class.tag, a, b, c, d, p)
        total = phi + chi
        if total == 0.0:
            raise DegenerateWeightsError(f"phi + chi = 0 at iterate {p!r}")
        nxt = phi / total
        iterates.append(nxt)
        if abs(nxt - p) <= policy.fp_tol:
            return IterationTrace(tuple(iterates), True, n)
        p = nxt
    return IterationTrace(tuple(iterates), False, policy.fp_max_iter)


def iterate3(
    table: PayoffTable3,
    p0: float = 0.5,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> IterationTrace:
    """Iterate the three-player balance map p <- psi / (psi + omega)."""
    p = _check_p0(p0)
    f, g, h, j, k, m = table.values()
    iterates = [p]
    for n in range(1, policy.fp_max_iter + 1):
        psi, omega = weights3(f, g, h, j, k, m, p)
        total = psi + omega
        if total == 0.0:
            raise DegenerateWeightsError(f"psi + omega = 0 at iterate {p!r}")
        nxt = psi / total
        iterates.append(nxt)
        if abs(nxt - p) <= policy.fp_tol:
            return IterationTrace(tuple(iterates), True, n)
        p = nxt
    return IterationTrace(tuple(iterates), False, policy.fp_max_iter)


def iterate_asym(
    table: AsymmetricTable2,
    p_y0: float = 0.5,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> IterationTrace:
    """Alternating iteration for a two-sided table.

    Each round updates side x against the current p_y, then side y against
    the fresh p_x. The trace records (p_x, p_y) after every round; the run
    converges when both coordinates move at most fp_tol in a round.
    """
    py = _check_p0(p_y0)
    ax, bx, cx, dx = table.side_x().values()
    ay, by, cy, dy = table.side_y().values()
    px = py  # placeholder for the first round's delta
    iterates: list[tuple[float, float]] = []
    for n in range(1, policy.fp_max_iter + 1):
        phix = bx - cx
        chix = py * (ax - bx) + (1.0 - py) * (cx - dx)
        if phix + chix == 0.0:
            raise DegenerateWeightsError("phi_x + chi_x = 0")
        nx = phix / (phix + chix)
        phiy = by - cy
        chiy = nx * (ay - by) + (1.0 - nx) * (cy - dy)
        if phiy + chiy == 0.0:
            raise DegenerateWeightsError("phi_y + chi_y = 0")
        ny = phiy / (phiy + chiy)
        iterates.append((nx, ny))
        if abs(nx - px) <= policy.fp_tol and abs(ny - py) <= policy.fp_tol and n > 1:
            return IterationTrace(tuple(iterates), True, n)
        px, py = nx, ny
    return IterationTrace(tuple(iterates), False, policy.fp_max_iter)


def iterate2_limits(
    tag: GameTag,
    a: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    d: np.ndarray,
    p0: float = 0.5,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> tuple[np.ndarray, np.ndarray]:
    """Batch limits of the two-player balance map over arrays of tables.

    Returns (limits, converged). All tables must share one class tag. The
    active set shrinks as elements converge, so mixed-rate batches do not
    pay for their slowest member on every lane. StagHunt lanes seeded on a
    repelling corner (p0 = 1) restart from 0.5, as in iterate2.
    """
    a, b, c, d = (np.asarray(x, dtype=float) for x in (a, b, c, d))
    n = a.shape[0]
    p = np.full(n, float(p0))
    if tag is GameTag.STAG_HUNT and p0 == 1.0:
        p[_corner_repels(a, b, c, d)] = 0.5
    converged = np.zeros(n, dtype=bool)
    idx = np.arange(n)
    pa, pb, pc, pd = a, b, c, d
    for _ in range(policy.fp_max_iter):
        phi, chi = weights2(tag, pa, pb, pc, pd, p[idx])
        total = phi + chi
        if np.any(total == 0.0):
            raise DegenerateWeightsError("phi + chi = 0 in batch iteration")
        nxt = phi / total
        done = np.abs(nxt - p[idx]) <= policy.fp_tol
        p[idx] = nxt
        if done.any():
            converged[idx[done]] = True
            keep = ~done
            idx = idx[keep]
            if idx.size == 0:
                return p, converged
            pa, pb, pc, pd = a[idx], b[idx], c[idx], d[idx]
    return p, converged


def iterate3_limits(
    f: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    j: np.ndarray,
    k: np.ndarray,
    m: np.ndarray,
    p0: float = 0.5,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> tuple[np.ndarray, np.ndarray]:
    """Batch limits of the three-player balance map."""
    f, g, h, j, k, m = (np.asarray(x, dtype=float) for x in (f, g, h, j, k, m))
    n = f.shape[0]
    p = np.full(n, float(p0))
    converged = np.zeros(n, dtype=bool)
    idx = np.arange(n)
    arrs = (f, g, h, j, k, m)
    cur = arrs
    for _ in range(policy.fp_max_iter):
        psi, omega = weights3(*cur, p[idx])
        total = psi + omega
        if np.any(total == 0.0):
            raise DegenerateWeightsError("psi + omega = 0 in batch iteration")
        nxt = psi / total
        done = np.abs(nxt - p[idx]) <= policy.fp_tol
        p[idx] = nxt
        if done.any():
            converged[idx[done]] = True
            idx = idx[~done]
            if idx.size == 0:
                return p, converged
            cur = tuple(x[idx] for x in arrs)
    return p, converged
