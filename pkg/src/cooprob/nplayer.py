"""Solvers beyond the symmetric two-player case.

Three-player tables reduce to a cubic in p; general n-player dilemma
ladders build (psi, omega) polynomials by recursion on the ladder; the
two-sided (asymmetric) game couples two balance equations

    p_x (p_y K_x + (b_x - d_x)) = F_x
    p_y (p_x K_y + (b_y - d_y)) = F_y

with K = a - b - c + d and F = b - c per side, eliminated into one
quadratic per side. Root selection is residual-based, stability is judged
by the slope of the balance map at the root, and the plain-iteration oracle
arbitrates whenever the algebra leaves more than one admissible answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import brentq

from .errors import (
    AmbiguousRootError,
    DegenerateWeightsError,
    DomainError,
    NoValidRootError,
    UnsupportedClassError,
)
from .estimators import EquiprobabilityReport, Leaning
from .iteration import iterate3, iterate_asym, weights3
from .tables import (
    DEFAULT_POLICY,
    AsymmetricTable2,
    Estimate,
    GameClass,
    GameTag,
    NumericPolicy,
    PayoffTable3,
    classify2,
    classify3,
    payoff_scale,
)

__all__ = [
    "CubicCoefficients",
    "cubic_coefficients",
    "balanced_p3",
    "equiprobability3",
    "expected_payoff3",
    "balanced_p_asym",
    "psi_omega_coeffs",
    "balanced_pn",
]


@dataclass(frozen=True)
class CubicCoefficients:
    """Descending coefficients of the three-player balance cubic."""

    c3: float
    c2: float
    c1: float
    c0: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.c3, self.c2, self.c1, self.c0)


def cubic_coefficients(table: PayoffTable3) -> CubicCoefficients:
    """Coefficients of p (psi + omega) - psi = 0 expanded in p (descending)."""
    f, g, h, j, k, m = table.values()
    return CubicCoefficients(
        c3=f - g - 2.0 * h + 2.0 * j + k - m,
        c2=g + h - 3.0 * j - k + 2.0 * m,
        c1=-g + h + 2.0 * j - k - m,
        c0=k - j,
    )


def _real_roots(desc_coeffs: list[float], eps_root: float) -> list[float]:
    """Real roots of a polynomial given by descending coefficients."""
    if len(desc_coeffs) <= 1:
        return []
    roots = np.roots(desc_coeffs)
    scale = max(abs(r) for r in roots) if len(roots) else 1.0
    out = []
    for r in roots:
        if abs(r.imag) <= eps_root * max(1.0, scale):
            out.append(float(r.real))
    return sorted(out)


def _map_slope3(table: PayoffTable3, p: float) -> float:
    """Slope of psi/(psi+omega) at p; magnitude below 1 means attracting."""
    f, g, h, j, k, m = table.values()
    q = 1.0 - p
    psi, omega = weights3(f, g, h, j, k, m, p)
    dpsi = (g - h) - (j - k)
    domega = 2.0 * p * (f - g) + 2.0 * (1.0 - 2.0 * p) * (h - j) - 2.0 * q * (k - m)
    total = psi + omega
    if total == 0.0:
        raise DegenerateWeightsError("psi + omega = 0 at candidate root")
    return (dpsi * omega - psi * domega) / (total * total)


def balanced_p3(table: PayoffTable3, policy: NumericPolicy = DEFAULT_POLICY) -> Estimate:
    """Balanced cooperation probability for a three-player dilemma table.

    The balance cubic may lose leading degree (its top coefficients vanish
    for many regular tables); degeneration falls through to the quadratic or
    linear form and is flagged on the estimate. Among real roots in [0, 1]
    the attracting one (map slope magnitude below 1) is returned; when the
    slope test is inconclusive the iteration oracle picks, and leftover ties
    raise an ambiguity error carrying the candidates.
    """
    cls = classify3(table)
    if cls.tag is not GameTag.PRISONERS_DILEMMA:
        raise UnsupportedClassError("balanced_p3 requires the dilemma chain f>=g>=h>=j>=k>=m")
    coeffs = cubic_coefficients(table).as_tuple()
    tol = policy.coeff_tol(payoff_scale(table.values()))
    desc = list(coeffs)
    degenerate = False
    while len(desc) > 1 and abs(desc[0]) <= tol:
        desc.pop(0)
        degenerate = len(desc) < 4  # any drop below cubic counts
    if all(abs(x) <= tol for x in desc):
        raise DegenerateWeightsError("balance polynomial vanished identically")
    all_roots = _real_roots(desc, policy.eps_root)
    poly_scale = max(abs(x) for x in desc)
    candidates = [
        min(1.0, max(0.0, r))
        for r in all_roots
        if -policy.eps_root <= r <= 1.0 + policy.eps_root
        and abs(np.polyval(desc, r)) <= max(policy.eps_root * poly_scale, 1e-9)
    ]
    if not candidates:
        raise NoValidRootError(f"no balance root in [0, 1]; real roots {all_roots!r}")
    stable = [r for r in candidates if abs(_map_slope3(table, r)) < 1.0]
    if len(stable) == 1:
        p = stable[0]
    elif len(stable) > 1:
        raise AmbiguousRootError(
            f"several attracting roots in [0, 1]: {stable!r}", tuple(stable)
        )
    else:
        # slope test rejected everything (neutral cases); let the oracle pick
        trace = iterate3(table, 0.5, policy)
        matches = [r for r in candidates if abs(r - trace.limit) <= max(policy.eps_root, 1e-9)]
        if not matches:
            raise NoValidRootError(
                f"no candidate root matches the iteration limit {trace.limit!r}"
            )
        p = matches[0]
    return Estimate(p, 1.0 - p, "balanced", cls, roots=tuple(all_roots), degenerate_branch=degenerate)


def equiprobability3(table: PayoffTable3) -> EquiprobabilityReport:
    """Three-player analogue of the p = 1/2 test.

    gap = 3 (g - k) - (f - m) - 4 (h - j); sign semantics match the
    two-player report.
    """
    f, g, h, j, k, m = table.values()
    gap = 3.0 * (g - k) - (f - m) - 4.0 * (h - j)
    if gap == 0.0:
        verdict = Leaning.BALANCED
    elif gap > 0.0:
        verdict = Leaning.COOPERATION
    else:
        verdict = Leaning.DEFECTION
    return EquiprobabilityReport(gap=gap, verdict=verdict)


def expected_payoff3(table: PayoffTable3, p: float) -> float:
    """Per-player expected payoff with all three cooperating at level p.

    mu = p^3 g + q^3 k + p^2 q (f + 2 j) + p q^2 (2 h + m).
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p={p!r} outside [0, 1]")
    f, g, h, j, k, m = table.values()
    q = 1.0 - p
    return p**3 * g + q**3 * k + p * p * q * (f + 2.0 * j) + p * q * q * (2.0 * h + m)


def _side_quadratic(kx, fx, bdx, ky, fy, bdy) -> tuple[float, float, float]:
    """Quadratic in this side's p after eliminating the other side.

    Descending coefficients of
    p^2 (b-d) K' + p [K F' - K' F + (b-d)(b'-d')] - F (b'-d') = 0,
    primes marking the other side.
    """
    return (bdx * ky, kx * fy - ky * fx + bdx * bdy, -fx * bdy)


def _quad_roots_in_unit(qcoeffs, tol, eps_root):
    """Real roots (all) and unit-interval candidates of a side quadratic."""
    desc = list(qcoeffs)
    degenerate = False
    while len(desc) > 1 and abs(desc[0]) <= tol:
        desc.pop(0)
        degenerate = True
    if all(abs(x) <= tol for x in desc):
        raise DegenerateWeightsError("side balance polynomial vanished identically")
    roots = _real_roots(desc, eps_root)
    inside = [min(1.0, max(0.0, r)) for r in roots if -eps_root <= r <= 1.0 + eps_root]
    return roots, inside, degenerate


def balanced_p_asym(
    table: AsymmetricTable2, policy: NumericPolicy = DEFAULT_POLICY
) -> tuple[Estimate, Estimate]:
    """Coupled balanced probabilities (p_x, p_y) for a two-sided dilemma.

    Both sides must classify PrisonersDilemma (boundary flags permitted).
    Each side's eliminated quadratic is solved; partner values follow from
    the coupling relation, the pair with the smallest joint residual wins,
    and the answer must agree with the alternating-iteration oracle within
    1e-9, otherwise any candidate pair that does agree is taken instead.
    """
    cls_x = classify2(table.side_x())
    cls_y = classify2(table.side_y())
    if cls_x.tag is not GameTag.PRISONERS_DILEMMA or cls_y.tag is not GameTag.PRISONERS_DILEMMA:
        raise UnsupportedClassError("both sides must classify PrisonersDilemma")
    ax, bx, cx, dx = table.side_x().values()
    ay, by, cy, dy = table.side_y().values()
    kx, fx, bdx = ax - bx - cx + dx, bx - cx, bx - dx
    ky, fy, bdy = ay - by - cy + dy, by - cy, by - dy
    scale = payoff_scale((ax, bx, cx, dx, ay, by, cy, dy))
    tol = policy.coeff_tol(scale)

    qx = _side_quadratic(kx, fx, bdx, ky, fy, bdy)
    qy = _side_quadratic(ky, fy, bdy, kx, fx, bdx)
    roots_x, inside_x, degen_x = _quad_roots_in_unit(qx, tol, policy.eps_root)
    roots_y, inside_y, degen_y = _quad_roots_in_unit(qy, tol, policy.eps_root)

    def partner_y(px: float) -> float:
        den = px * ky + bdy
        if den == 0.0:
            raise DegenerateWeightsError("side-y weights vanished at candidate p_x")
        return fy / den

    def partner_x(py: float) -> float:
        den = py * kx + bdx
        if den == 0.0:
            raise DegenerateWeightsError("side-x weights vanished at candidate p_y")
        return fx / den

    def residual(px: float, py: float) -> float:
        r1 = px * (py * kx + bdx) - fx
        r2 = py * (px * ky + bdy) - fy
        return abs(r1) + abs(r2)

    pairs: list[tuple[float, float]] = []
    for rx in inside_x:
        py = partner_y(rx)
        if -policy.eps_root <= py <= 1.0 + policy.eps_root:
            pairs.append((rx, min(1.0, max(0.0, py))))
    for ry in inside_y:
        px = partner_x(ry)
        if -policy.eps_root <= px <= 1.0 + policy.eps_root:
            pairs.append((min(1.0, max(0.0, px)), ry))
    if not pairs:
        raise NoValidRootError("no consistent pair in the unit square")

    pairs.sort(key=lambda pr: residual(*pr))
    best = pairs[0]
    trace = iterate_asym(table, 0.5, policy)
    if trace.converged:
        ox, oy = trace.limit
        agree = max(policy.eps_root, 1e-9)
        if not (abs(best[0] - ox) <= agree and abs(best[1] - oy) <= agree):
            matching = [
                pr for pr in pairs if abs(pr[0] - ox) <= agree and abs(pr[1] - oy) <= agree
            ]
            if not matching:
                raise NoValidRootError(
                    f"no candidate pair agrees with the iteration limit ({ox!r}, {oy!r})"
                )
            best = matching[0]
    px, py = best
    est_x = Estimate(px, 1.0 - px, "balanced", cls_x, roots=tuple(roots_x), degenerate_branch=degen_x)
    est_y = Estimate(py, 1.0 - py, "balanced", cls_y, roots=tuple(roots_y), degenerate_branch=degen_y)
    return est_x, est_y


def _validate_ladder(ladder, n: int | None) -> int:
    vals = [float(v) for v in ladder]
    if len(vals) < 4 or len(vals) % 2 != 0:
        raise DomainError("ladder must hold 2n payoffs with n >= 2")
    players = len(vals) // 2
    if n is not None and n != players:
        raise DomainError(f"ladder length {len(vals)} does not match n={n}")
    for hi, lo in zip(vals, vals[1:]):
        if not hi > lo:
            raise DomainError("ladder payoffs must decrease strictly")
    if not all(math.isfinite(v) for v in vals):
        raise DomainError("ladder payoffs must be finite")
    return players


def psi_omega_coeffs(ladder) -> tuple[np.ndarray, np.ndarray]:
    """Ascending polynomial coefficients of (psi, omega) for a dilemma ladder.

    The ladder interleaves defection and cooperation payoffs from best to
    worst: (D_1, C_0, D_2, C_1, ..., D_n, C_{n-1}), strictly decreasing.
    Recursion: against one more cooperator the ladder loses its worst two
    rungs, against one more defector its best two; psi and omega mix the two
    reduced ladders with weights p and q.
    """
    vals = [float(v) for v in ladder]
    if len(vals) == 4:
        d1, c0, d2, c1 = vals
        psi = np.array([c0 - d2])
        omega = np.array([d2 - c1, (d1 - c0) - (d2 - c1)])
        return psi, omega
    psi_c, omega_c = psi_omega_coeffs(vals[:-2])
    psi_d, omega_d = psi_omega_coeffs(vals[2:])
    # p * upper + (1 - p) * lower, as coefficient arrays
    psi = npoly.polyadd(npoly.polysub(npoly.polymulx(psi_c), npoly.polymulx(psi_d)), psi_d)
    omega = npoly.polyadd(npoly.polysub(npoly.polymulx(omega_c), npoly.polymulx(omega_d)), omega_d)
    return psi, omega


def balanced_pn(
    ladder, n: int | None = None, policy: NumericPolicy = DEFAULT_POLICY
) -> Estimate:
    """Balanced cooperation probability for an n-player dilemma ladder.

    Solves p (psi + omega) = psi by bracketed search on [0, 1] (the balance
    function changes sign across the interval for every strict ladder) and
    cross-checks the answer against direct iteration. Reduces exactly to the
    two- and three-player solvers at n = 2 and n = 3.
    """
    players = _validate_ladder(ladder, n)
    psi, omega = psi_omega_coeffs(ladder)
    bal = npoly.polysub(npoly.polymulx(npoly.polyadd(psi, omega)), psi)

    def hfun(p: float) -> float:
        return float(npoly.polyval(p, bal))

    def gmap(p: float) -> float:
        ps = float(npoly.polyval(p, psi))
        om = float(npoly.polyval(p, omega))
        total = ps + om
        if total == 0.0:
            raise DegenerateWeightsError("psi + omega = 0 during ladder iteration")
        return ps / total

    h0, h1 = hfun(0.0), hfun(1.0)
    if h0 == 0.0:
        p = 0.0
    elif h1 == 0.0:
        p = 1.0
    elif h0 * h1 < 0.0:
        p = brentq(hfun, 0.0, 1.0, xtol=1e-15, rtol=8.9e-16)
    else:
        raise NoValidRootError("balance function does not change sign on [0, 1]")

    # cross-check with plain iteration; prefer a root the iteration confirms
    cur, converged = 0.5, False
    for _ in range(policy.fp_max_iter):
        nxt = gmap(cur)
        if abs(nxt - cur) <= policy.fp_tol:
            cur, converged = nxt, True
            break
        cur = nxt
    agree = max(policy.eps_root, 1e-9)
    desc = list(bal[::-1])
    all_roots = _real_roots(desc, policy.eps_root)
    if converged and abs(cur - p) > agree:
        matches = [r for r in all_roots if abs(r - cur) <= agree and -policy.eps_root <= r <= 1 + policy.eps_root]
        if not matches:
            raise NoValidRootError(
                f"bracketed root {p!r} and iteration limit {cur!r} disagree"
            )
        p = min(1.0, max(0.0, matches[0]))

    cls = GameClass(GameTag.PRISONERS_DILEMMA)
    return Estimate(p, 1.0 - p, "balanced", cls, roots=tuple(all_roots))
