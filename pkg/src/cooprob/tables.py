"""Core domain types: payoff tables, game classification, numeric policy.

Two-player symmetric games are described by four payoffs seen from the row
player: ``a`` (defect against a cooperator), ``b`` (mutual cooperation),
``c`` (mutual defection), ``d`` (cooperate against a defector). Three-player
symmetric games use six payoffs ``f > g > h > j > k > m`` ordered by how
favorable the outcome is: ``f`` defect vs two cooperators, ``g`` all
cooperate, ``h`` defect vs one cooperator, ``j`` cooperate vs one defector,
``k`` all defect, ``m`` cooperate vs two defectors.

Classification tags a table with the conventional dilemma family based on
strict payoff orderings; designated weak inequalities are admitted and
recorded as boundary flags (for example ``c=d``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DomainError, InvalidTableError

__all__ = [
    "GameTag",
    "GameClass",
    "PayoffTable2",
    "PayoffTable3",
    "AsymmetricTable2",
    "NumericPolicy",
    "DEFAULT_POLICY",
    "Estimate",
    "classify2",
    "classify3",
    "payoff_scale",
]


class GameTag(enum.Enum):
    """Conventional 2x2 dilemma families plus a catch-all."""

    PRISONERS_DILEMMA = "prisoners-dilemma"
    CHICKEN = "chicken"
    BATTLE_OF_SEXES = "battle-of-sexes"
    STAG_HUNT = "stag-hunt"
    TRANSLATORS = "translators"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class GameClass:
    """Classification result: a tag plus any boundary equalities hit.

    ``boundary_flags`` holds strings like ``"c=d"`` recording which weak
    inequality in the matched ordering held with equality. Equality is
    tested exactly; numeric tolerances apply to computed coefficients, not
    to user-supplied payoffs.
    """

    tag: GameTag
    boundary_flags: frozenset[str] = field(default_factory=frozenset)

    @property
    def is_boundary(self) -> bool:
        return bool(self.boundary_flags)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidTableError(f"payoff {name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class PayoffTable2:
    """Symmetric two-player payoff table (a, b, c, d)."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))

    def values(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def translated(self, offset: float) -> "PayoffTable2":
        return PayoffTable2(self.a + offset, self.b + offset, self.c + offset, self.d + offset)

    def scaled(self, factor: float) -> "PayoffTable2":
        if factor <= 0:
            raise DomainError("scale factor must be positive")
        return PayoffTable2(self.a * factor, self.b * factor, self.c * factor, self.d * factor)

    def to_dict(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_dict(cls, data: dict) -> "PayoffTable2":
        try:
            return cls(data["a"], data["b"], data["c"], data["d"])
        except KeyError as exc:
            raise InvalidTableError(f"missing payoff key {exc.args[0]!r}") from exc


@dataclass(frozen=True)
class PayoffTable3:
    """Symmetric three-player payoff table (f, g, h, j, k, m)."""

    f: float
    g: float
    h: float
    j: float
    k: float
    m: float

    def __post_init__(self) -> None:
        for name in ("f", "g", "h", "j", "k", "m"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))

    def values(self) -> tuple[float, ...]:
        return (self.f, self.g, self.h, self.j, self.k, self.m)

    def to_dict(self) -> dict[str, float]:
        return {"f": self.f, "g": self.g, "h": self.h, "j": self.j, "k": self.k, "m": self.m}

    @classmethod
    def from_dict(cls, data: dict) -> "PayoffTable3":
        try:
            return cls(data["f"], data["g"], data["h"], data["j"], data["k"], data["m"])
        except KeyError as exc:
            raise InvalidTableError(f"missing payoff key {exc.args[0]!r}") from exc


@dataclass(frozen=True)
class AsymmetricTable2:
    """Two-player game with a distinct table per side (x and y)."""

    ax: float
    bx: float
    cx: float
    dx: float
    ay: float
    by: float
    cy: float
    dy: float

    def __post_init__(self) -> None:
        for name in ("ax", "bx", "cx", "dx", "ay", "by", "cy", "dy"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))

    def side_x(self) -> PayoffTable2:
        return PayoffTable2(self.ax, self.bx, self.cx, self.dx)

    def side_y(self) -> PayoffTable2:
        return PayoffTable2(self.ay, self.by, self.cy, self.dy)

    @classmethod
    def from_tables(cls, x: PayoffTable2, y: PayoffTable2) -> "AsymmetricTable2":
        return cls(x.a, x.b, x.c, x.d, y.a, y.b, y.c, y.d)

    def to_dict(self) -> dict[str, float]:
        return {
            "ax": self.ax, "bx": self.bx, "cx": self.cx, "dx": self.dx,
            "ay": self.ay, "by": self.by, "cy": self.cy, "dy": self.dy,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AsymmetricTable2":
        try:
            return cls(*(data[k] for k in ("ax", "bx", "cx", "dx", "ay", "by", "cy", "dy")))
        except KeyError as exc:
            raise InvalidTableError(f"missing payoff key {exc.args[0]!r}") from exc


@dataclass(frozen=True)
class NumericPolicy:
    """Tolerances governing coefficient degeneracy, roots, and iteration.

    ``eps_coeff`` is relative: a polynomial coefficient counts as zero when
    its magnitude is at most ``eps_coeff`` times the largest absolute payoff
    difference of the table it came from. ``eps_root`` widens the [0, 1]
    acceptance interval for roots. ``fp_tol`` and ``fp_max_iter`` control
    fixed-point iteration.
    """

    eps_coeff: float = 1e-12
    eps_root: float = 1e-9
    fp_tol: float = 1e-12
    fp_max_iter: int = 10**6

    def __post_init__(self) -> None:
        if not (self.eps_coeff >= 0 and math.isfinite(self.eps_coeff)):
            raise DomainError("eps_coeff must be finite and nonnegative")
        if not (self.eps_root >= 0 and math.isfinite(self.eps_root)):
            raise DomainError("eps_root must be finite and nonnegative")
        if not (self.fp_tol > 0 and math.isfinite(self.fp_tol)):
            raise DomainError("fp_tol must be finite and positive")
        if self.fp_max_iter < 1:
            raise DomainError("fp_max_iter must be at least 1")

    def coeff_tol(self, scale: float) -> float:
        """Absolute zero-threshold for coefficients at the given payoff scale."""
        return self.eps_coeff * scale if scale > 0 else self.eps_coeff


DEFAULT_POLICY = NumericPolicy()


@dataclass(frozen=True)
class Estimate:
    """A cooperation-probability estimate.

    ``q`` is stored as ``1 - p`` exactly as computed. ``roots`` carries every
    real candidate root of the balance polynomial (ascending), including ones
    rejected for lying outside [0, 1]. ``degenerate_branch`` is set when a
    reduced-degree closed form was used because a leading coefficient
    vanished.
    """

    p: float
    q: float
    method: str
    class_used: GameClass
    roots: tuple[float, ...] = ()
    degenerate_branch: bool = False

    def __post_init__(self) -> None:
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"estimate p={self.p!r} outside [0, 1]")


def payoff_scale(values: tuple[float, ...]) -> float:
    """Largest absolute pairwise payoff difference (max minus min)."""
    return max(values) - min(values)


def classify2(table: PayoffTable2) -> GameClass:
    """Classify a two-player table by strict payoff ordering.

    Orderings, in precedence order (equality permitted only where shown,
    recorded as a boundary flag):

    * PrisonersDilemma: ``a > b > c >= d``
    * Chicken:          ``a > b > d > c`` (``c = d`` resolves to PD)
    * BattleOfSexes:    ``a > d > c >= b``
    * StagHunt:         ``b > a >= c > d``
    * Translators:      ``a > c >= b > d``

    Anything else is Unclassified. Comparisons are exact; no epsilon is
    applied to user-supplied payoffs.
    """
    a, b, c, d = table.values()
    if a > b > c >= d:
        flags = frozenset({"c=d"}) if c == d else frozenset()
        return GameClass(GameTag.PRISONERS_DILEMMA, flags)
    if a > b > d > c:
        return GameClass(GameTag.CHICKEN)
    if a > d > c >= b:
        flags = frozenset({"b=c"}) if c == b else frozenset()
        return GameClass(GameTag.BATTLE_OF_SEXES, flags)
    if b > a >= c > d:
        flags = frozenset({"a=c"}) if a == c else frozenset()
        return GameClass(GameTag.STAG_HUNT, flags)
    if a > c >= b > d:
        flags = frozenset({"b=c"}) if c == b else frozenset()
        return GameClass(GameTag.TRANSLATORS, flags)
    return GameClass(GameTag.UNCLASSIFIED)


def classify3(table: PayoffTable3) -> GameClass:
    """Classify a three-player table.

    The dilemma chain ``f > g > h > j > k > m`` may hold with equality at
    any adjacent step; every equality hit is recorded as a boundary flag
    (for example ``j=k``). A chain violation yields Unclassified.
    """
    names = ("f", "g", "h", "j", "k", "m")
    vals = table.values()
    flags = set()
    for (n1, v1), (n2, v2) in zip(zip(names, vals), zip(names[1:], vals[1:])):
        if v1 < v2:
            return GameClass(GameTag.UNCLASSIFIED)
        if v1 == v2:
            flags.add(f"{n1}={n2}")
    return GameClass(GameTag.PRISONERS_DILEMMA, frozenset(flags))
