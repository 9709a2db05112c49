"""Ground truth by enumeration.

Dyck paths are generated explicitly and every admissible column sequence
under a path is counted, either by iterating over all of them or by the
per-step product of q-integers.  ``dp_series`` does the same count with a
transfer matrix over heights, which is what the other modules are checked
against for larger N.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator

from .qalg import QPoly, TSeries, mul_q_integer

__all__ = [
    "Policy",
    "DyckPath",
    "PathDiagram",
    "CoeffTable",
    "TooLarge",
    "BRUTE_MAX_N",
    "gen_dyck_paths",
    "iter_diagrams",
    "enumerate_diagrams",
    "brute_coeff",
    "dp_series",
]

BRUTE_MAX_N = 10


class TooLarge(ValueError):
    """Requested enumeration is beyond the brute-force guard."""


class Policy(enum.Enum):
    """Possibility function: bound on the column under each step.

    Up steps from height j allow columns 0..j under both policies.  Down
    steps from height k allow 0..k (tangent) or 0..k-1 (secant).
    """

    TANGENT = "tangent"
    SECANT = "secant"

    def pos(self, up: bool, height: int) -> int:
        if up or self is Policy.TANGENT:
            return height
        return height - 1

    def up_weight(self, height: int) -> int:
        """Number of column choices under an up step from ``height``."""
        return height + 1

    def down_weight(self, height: int) -> int:
        return height + 1 if self is Policy.TANGENT else height

    @classmethod
    def parse(cls, value: "str | Policy") -> "Policy":
        if isinstance(value, Policy):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"unknown family {value!r}; use tangent or secant")


@dataclass(frozen=True)
class DyckPath:
    """Up/down steps written as a string over ``U`` and ``D``."""

    steps: str

    def __post_init__(self):
        h = 0
        for s in self.steps:
            if s == "U":
                h += 1
            elif s == "D":
                h -= 1
                if h < 0:
                    raise ValueError(f"path {self.steps!r} dips below zero")
            else:
                raise ValueError(f"bad step {s!r}")
        if h:
            raise ValueError(f"path {self.steps!r} does not return to zero")

    @property
    def half_length(self) -> int:
        return len(self.steps) // 2

    @cached_property
    def start_heights(self) -> tuple[int, ...]:
        out, h = [], 0
        for s in self.steps:
            out.append(h)
            h += 1 if s == "U" else -1
        return tuple(out)

    @property
    def max_height(self) -> int:
        return max(self.start_heights, default=0)

    def labels(self) -> list[str]:
        """Step labels a_j / b_k with j, k the starting height."""
        return [
            f"a{h}" if s == "U" else f"b{h}"
            for s, h in zip(self.steps, self.start_heights)
        ]

    def bounds(self, policy: Policy) -> list[int]:
        return [
            policy.pos(s == "U", h) for s, h in zip(self.steps, self.start_heights)
        ]


@dataclass(frozen=True)
class PathDiagram:
    path: DyckPath
    columns: tuple[int, ...]
    policy: Policy = Policy.TANGENT

    def __post_init__(self):
        bounds = self.path.bounds(self.policy)
        if len(self.columns) != len(bounds):
            raise ValueError("one column per step is required")
        for s, b in zip(self.columns, bounds):
            if not 0 <= s <= b:
                raise ValueError(f"column {s} outside 0..{b}")

    @property
    def area(self) -> int:
        return sum(self.columns)

    def to_json(self) -> dict:
        return {"steps": self.path.steps, "columns": list(self.columns)}


@dataclass(frozen=True)
class CoeffTable:
    family: Policy
    width: int | None
    entries: dict[int, QPoly]

    def totals(self) -> dict[int, int]:
        return {n: p(1) for n, p in self.entries.items()}


def gen_dyck_paths(n: int, width: int | None = None) -> list[DyckPath]:
    """All Dyck paths of half-length n with height at most ``width``.

    Ordered lexicographically with U before D.
    """
    if n < 0:
        raise ValueError("half-length must be nonnegative")
    cap = n if width is None else min(width, n)
    if width is not None and width < 0:
        return []
    out: list[DyckPath] = []
    buf: list[str] = []

    def walk(ups: int, downs: int, h: int) -> None:
        if ups == n and downs == n:
            out.append(DyckPath("".join(buf)))
            return
        if ups < n and h < cap:
            buf.append("U")
            walk(ups + 1, downs, h + 1)
            buf.pop()
        if downs < ups:
            buf.append("D")
            walk(ups, downs + 1, h - 1)
            buf.pop()

    walk(0, 0, 0)
    return out


def iter_diagrams(path: DyckPath, policy: Policy) -> Iterator[PathDiagram]:
    policy = Policy.parse(policy)
    ranges = [range(b + 1) for b in path.bounds(policy)]
    for cols in product(*ranges):
        yield PathDiagram(path, cols, policy)


def enumerate_diagrams(
    path: DyckPath, policy: Policy, method: str = "product"
) -> QPoly:
    """Area generating polynomial of the diagrams over ``path``.

    ``method="iterate"`` visits every column sequence and is only meant as
    the oracle for the default per-step product.
    """
    policy = Policy.parse(policy)
    if method == "product":
        p = QPoly([1])
        for b in path.bounds(policy):
            p = mul_q_integer(p, b + 1)
        return p
    if method == "iterate":
        counts: dict[int, int] = {}
        for cols in product(*(range(b + 1) for b in path.bounds(policy))):
            m = sum(cols)
            counts[m] = counts.get(m, 0) + 1
        if not counts:
            return QPoly()
        return QPoly([counts.get(m, 0) for m in range(max(counts) + 1)])
    raise ValueError(f"unknown method {method!r}")


def brute_coeff(
    n: int, width: int | None, policy: Policy, method: str = "product"
) -> QPoly:
    """Coefficient of t**(2n) in G_w (tangent) or G'_w (secant), by enumeration."""
    policy = Policy.parse(policy)
    if n > BRUTE_MAX_N:
        raise TooLarge(f"brute-force enumeration is limited to N <= {BRUTE_MAX_N}")
    total = QPoly()
    for path in gen_dyck_paths(n, width):
        total = total + enumerate_diagrams(path, policy, method)
    return total


def dp_series(order: int, width: int | None, policy: Policy) -> TSeries:
    """Transfer-matrix count of weighted paths, as a series in t**2.

    State after s steps is a vector of QPoly indexed by height; an up step
    from height h multiplies by [h+1]_q, a down step from h by [h+1]_q
    (tangent) or [h]_q (secant).  Heights above ``order`` can never return
    to zero in time and are dropped.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    policy = Policy.parse(policy)
    cap = order if width is None else min(width, order)
    if cap < 0:
        return TSeries([], order)
    coeffs = [QPoly([1])]
    state: list[QPoly] = [QPoly([1])] + [QPoly()] * cap
    steps = 2 * order
    for s in range(1, steps + 1):
        # a path must be back at 0 after ``steps`` steps
        reach = min(cap, s, steps - s)
        nxt = [QPoly()] * (cap + 1)
        for h in range(min(cap, s - 1) + 1):
            v = state[h]
            if not v:
                continue
            if h + 1 <= reach:
                nxt[h + 1] = nxt[h + 1] + mul_q_integer(v, policy.up_weight(h))
            if h >= 1 and h - 1 <= reach:
                nxt[h - 1] = nxt[h - 1] + mul_q_integer(v, policy.down_weight(h))
        state = nxt
        if s % 2 == 0:
            coeffs.append(state[0])
    return TSeries(coeffs, order)

