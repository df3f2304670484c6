"""Interval-union sets over the extended real line.

Parameter regions (assertions, focal sets, plausibility regions) are finite
unions of disjoint intervals with open/closed endpoint flags.  Two predicates
implement the conservative endpoint convention used by the inference engine:
a focal set touching a region boundary counts as intersecting the region but
not as contained in it, so belief is never overstated and plausibility never
understated.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

INF = math.inf


@dataclass(frozen=True)
class Interval:
    """One interval component.  Infinite endpoints are always open."""

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoints must not be NaN")
        if lo > hi:
            raise ValueError(f"interval endpoints out of order: {lo} > {hi}")
        if math.isinf(lo) and not self.lo_open:
            object.__setattr__(self, "lo_open", True)
        if math.isinf(hi) and not self.hi_open:
            object.__setattr__(self, "hi_open", True)
        if lo == hi and (self.lo_open or self.hi_open):
            raise ValueError("degenerate interval must be a closed singleton")
        if lo == hi and math.isinf(lo):
            raise ValueError("interval has no finite point")

    def contains(self, x: float) -> bool:
        if x == self.lo and x == self.hi:
            return True
        if x == self.lo:
            return not self.lo_open
        if x == self.hi:
            return not self.hi_open
        return self.lo < x < self.hi

    def __str__(self) -> str:
        lb = "(" if self.lo_open else "["
        rb = ")" if self.hi_open else "]"
        return f"{lb}{_fmt_endpoint(self.lo)},{_fmt_endpoint(self.hi)}{rb}"


def _fmt_endpoint(x: float) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return repr(x)


def _merged_lo(a: Interval, b: Interval) -> tuple[float, bool]:
    if a.lo < b.lo:
        return a.lo, a.lo_open
    if b.lo < a.lo:
        return b.lo, b.lo_open
    return a.lo, a.lo_open and b.lo_open


def _merged_hi(a: Interval, b: Interval) -> tuple[float, bool]:
    if a.hi > b.hi:
        return a.hi, a.hi_open
    if b.hi > a.hi:
        return b.hi, b.hi_open
    return a.hi, a.hi_open and b.hi_open


def _mergeable(a: Interval, b: Interval) -> bool:
    # a sorted before b; merge on overlap, or on touch when the junction
    # point belongs to at least one side.
    if b.lo < a.hi:
        return True
    if b.lo == a.hi:
        return (not a.hi_open) or (not b.lo_open)
    return False


class ParamSet:
    """Normalized finite union of disjoint intervals."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Interval] = ()) -> None:
        comps = sorted(components, key=lambda c: (c.lo, c.lo_open))
        merged: list[Interval] = []
        for c in comps:
            if merged and _mergeable(merged[-1], c):
                prev = merged.pop()
                lo, lo_open = _merged_lo(prev, c)
                hi, hi_open = _merged_hi(prev, c)
                merged.append(Interval(lo, hi, lo_open, hi_open))
            else:
                merged.append(c)
        self.components: tuple[Interval, ...] = tuple(merged)

    @staticmethod
    def empty() -> "ParamSet":
        return ParamSet(())

    @staticmethod
    def whole_line() -> "ParamSet":
        return ParamSet((Interval(-INF, INF, True, True),))

    @staticmethod
    def singleton(x: float) -> "ParamSet":
        return ParamSet((Interval(x, x),))

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_bounded(self) -> bool:
        return all(
            math.isfinite(c.lo) and math.isfinite(c.hi) for c in self.components
        )

    def contains(self, x: float) -> bool:
        return any(c.contains(x) for c in self.components)

    def contains_points(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized membership, honoring endpoint flags."""
        xs = np.asarray(xs, dtype=float)
        mask = np.zeros(xs.shape, dtype=bool)
        for c in self.components:
            lo_ok = xs > c.lo if c.lo_open else xs >= c.lo
            hi_ok = xs < c.hi if c.hi_open else xs <= c.hi
            mask |= lo_ok & hi_ok
        return mask

    def union(self, other: "ParamSet") -> "ParamSet":
        return ParamSet(self.components + other.components)

    def complement(self) -> "ParamSet":
        """Complement within the extended real line (finite points only)."""
        if not self.components:
            return ParamSet.whole_line()
        pieces: list[Interval] = []
        first = self.components[0]
        if first.lo != -INF:
            pieces.append(Interval(-INF, first.lo, True, not first.lo_open))
        for a, b in zip(self.components, self.components[1:]):
            lo_open = not a.hi_open
            hi_open = not b.lo_open
            if a.hi < b.lo:
                pieces.append(Interval(a.hi, b.lo, lo_open, hi_open))
            elif a.hi == b.lo and a.hi_open and b.lo_open:
                pieces.append(Interval(a.hi, a.hi))
        last = self.components[-1]
        if last.hi != INF:
            pieces.append(Interval(last.hi, INF, not last.hi_open, True))
        return ParamSet(pieces)

    def contains_focal(self, other: "ParamSet") -> bool:
        """Conservative containment: strict at shared finite endpoints.

        True when every component of `other` sits inside a single component
        of this set without touching a finite boundary of it.
        """
        if other.is_empty:
            return True
        for o in other.components:
            ok = False
            for c in self.components:
                lo_ok = c.lo < o.lo or (c.lo == o.lo == -INF)
                hi_ok = o.hi < c.hi or (o.hi == c.hi == INF)
                if lo_ok and hi_ok:
                    ok = True
                    break
            if not ok:
                return False
        return True

    def intersects_focal(self, other: "ParamSet") -> bool:
        """Conservative intersection: touching endpoints count as overlap."""
        for o in other.components:
            for c in self.components:
                if max(c.lo, o.lo) <= min(c.hi, o.hi):
                    return True
        return False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParamSet):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __str__(self) -> str:
        if not self.components:
            return "<empty>"
        return " u ".join(str(c) for c in self.components)

    def __repr__(self) -> str:
        return f"ParamSet({list(self.components)!r})"

    def to_json(self) -> dict:
        return {
            "components": [
                {
                    "lo": _json_endpoint(c.lo),
                    "hi": _json_endpoint(c.hi),
                    "lo_open": c.lo_open,
                    "hi_open": c.hi_open,
                }
                for c in self.components
            ]
        }


def _json_endpoint(x: float):
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return x


_INTERVAL_RE = re.compile(
    r"""
    (?P<lb>[\[\(])
    (?P<lo>[^,\[\]\(\)\{\}]+)
    ,
    (?P<hi>[^,\[\]\(\)\{\}]+)
    (?P<rb>[\]\)])
    """,
    re.VERBOSE,
)
_SINGLETON_RE = re.compile(r"\{(?P<x>[^\{\},]+)\}")


def _parse_number(token: str, what: str) -> float:
    try:
        x = float(token)
    except ValueError as exc:
        raise ValueError(f"cannot parse {what} {token!r}") from exc
    if math.isnan(x):
        raise ValueError(f"{what} must not be NaN")
    return x


def parse_region(text: str) -> ParamSet:
    """Parse an interval-union expression such as ``(-inf,9] u [12,inf)``.

    Grammar (whitespace-insensitive; ``u``, ``U`` both accepted as union)::

        region    = term , { "u" , term } ;
        term      = interval | singleton ;
        interval  = ( "(" | "[" ) , endpoint , "," , endpoint , ( ")" | "]" ) ;
        singleton = "{" , number , "}" ;
        endpoint  = number | "inf" | "+inf" | "-inf" ;

    Infinite endpoints must use round (open) brackets.
    """
    stripped = re.sub(r"\s+", "", text)
    if not stripped:
        raise ValueError("empty assertion")
    comps: list[Interval] = []
    pos = 0
    expecting_term = True
    while pos < len(stripped):
        if not expecting_term:
            if stripped[pos] in ("u", "U"):
                pos += 1
                expecting_term = True
                continue
            raise ValueError(f"expected 'u' at position {pos} in {text!r}")
        m = _INTERVAL_RE.match(stripped, pos)
        if m:
            lo = _parse_number(m.group("lo"), "endpoint")
            hi = _parse_number(m.group("hi"), "endpoint")
            lo_open = m.group("lb") == "("
            hi_open = m.group("rb") == ")"
            if math.isinf(lo) and not lo_open:
                raise ValueError("infinite endpoint requires an open bracket")
            if math.isinf(hi) and not hi_open:
                raise ValueError("infinite endpoint requires an open bracket")
            if lo > hi:
                raise ValueError(f"endpoints out of order in {m.group(0)!r}")
            if lo == hi and (lo_open or hi_open):
                raise ValueError(f"empty interval {m.group(0)!r}")
            comps.append(Interval(lo, hi, lo_open, hi_open))
            pos = m.end()
            expecting_term = False
            continue
        m = _SINGLETON_RE.match(stripped, pos)
        if m:
            x = _parse_number(m.group("x"), "singleton")
            if math.isinf(x):
                raise ValueError("singleton must be finite")
            comps.append(Interval(x, x))
            pos = m.end()
            expecting_term = False
            continue
        raise ValueError(f"cannot parse assertion at position {pos} in {text!r}")
    if expecting_term:
        raise ValueError(f"dangling union in {text!r}")
    return ParamSet(comps)


def format_region(region: ParamSet) -> str:
    """Inverse of :func:`parse_region` up to normalization."""
    return str(region)


def region_from_components(specs: Sequence[tuple[float, float, bool, bool]]) -> ParamSet:
    return ParamSet(Interval(lo, hi, lo_o, hi_o) for lo, hi, lo_o, hi_o in specs)
