"""Ramsey-type threshold functions and sparse-class profiles.

The thresholds that guarantee a bottleneck/scattered-set pair are towers of
Ramsey numbers.  They are evaluated honestly with saturating arithmetic:
anything above ``cap`` (default ``2**64``) becomes :data:`HUGE`, and every
comparison against an ordinary integer stays well defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

DEFAULT_CAP = 2**64

Mode = Literal["paper", "practical"]


@dataclass(frozen=True)
class BigBound:
    """A nonnegative integer, or the absorbing sentinel ``HUGE`` (``value=None``)."""

    value: int | None
    cap: int = DEFAULT_CAP

    @classmethod
    def of(cls, value: "int | BigBound", cap: int = DEFAULT_CAP) -> "BigBound":
        if isinstance(value, BigBound):
            return cls(None, cap) if value.value is None else cls.of(value.value, cap)
        if value < 0:
            raise ValueError("bounds are nonnegative")
        return cls(None if value > cap else value, cap)

    @classmethod
    def huge(cls, cap: int = DEFAULT_CAP) -> "BigBound":
        return cls(None, cap)

    @property
    def is_huge(self) -> bool:
        return self.value is None

    def __int__(self) -> int:
        if self.value is None:
            raise OverflowError("bound saturated past its cap")
        return self.value

    def _other(self, other: "int | BigBound") -> int | None:
        if isinstance(other, BigBound):
            return other.value
        return other

    def __add__(self, other: "int | BigBound") -> "BigBound":
        o = self._other(other)
        if self.value is None or o is None:
            return BigBound.huge(self.cap)
        return BigBound.of(self.value + o, self.cap)

    __radd__ = __add__

    def __mul__(self, other: "int | BigBound") -> "BigBound":
        o = self._other(other)
        if self.value is None or o is None:
            # HUGE * 0 is still HUGE: the sentinel is absorbing by contract.
            return BigBound.huge(self.cap)
        return BigBound.of(self.value * o, self.cap)

    __rmul__ = __mul__

    def __pow__(self, exponent: "int | BigBound") -> "BigBound":
        e = self._other(exponent)
        if self.value is None or e is None:
            return BigBound.huge(self.cap)
        return sat_pow(self.value, e, self.cap)

    def _cmp(self, other: "int | BigBound") -> int:
        o = self._other(other)
        if self.value is None:
            return 0 if o is None else 1
        if o is None:
            return -1
        return (self.value > o) - (self.value < o)

    def __lt__(self, other): return self._cmp(other) < 0
    def __le__(self, other): return self._cmp(other) <= 0
    def __gt__(self, other): return self._cmp(other) > 0
    def __ge__(self, other): return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (int, BigBound)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return "HUGE" if self.value is None else str(self.value)


def sat_pow(base: int, exponent: int, cap: int = DEFAULT_CAP) -> BigBound:
    if base in (0, 1) or exponent == 0:
        return BigBound.of(1 if exponent == 0 else base, cap)
    if exponent * math.log2(base) > cap.bit_length() + 1:
        return BigBound.huge(cap)
    return BigBound.of(base**exponent, cap)


def ramsey_upper(colors: int, tuple_size: int, target: int, cap: int = DEFAULT_CAP) -> BigBound:
    """Upper bound ``R`` such that every ``colors``-colouring of the
    ``tuple_size``-subsets of any set with at least ``R`` elements has a
    homogeneous subset of size ``target`` (so any set larger than ``R`` does
    too).

    ``tuple_size == 1`` is pigeonhole.  Higher tuple sizes use the
    end-homogeneous sequence argument: grow ``a_1, a_2, ...`` while keeping a
    reservoir on which the colour of every tuple closed by a reservoir element
    depends only on its first ``tuple_size - 1`` members; a homogeneous
    ``(target-1)``-set for that induced colouring plus one later element is
    homogeneous.
    """
    if colors < 1 or tuple_size < 1 or target < 1:
        raise ValueError("ramsey_upper arguments must be positive")
    return _ramsey(colors, tuple_size, target, cap)


@lru_cache(maxsize=4096)
def _ramsey(c: int, y: int, z: int, cap: int) -> BigBound:
    if z <= y or c == 1:
        return BigBound.of(z, cap)
    if y == 1:
        return BigBound.of(c * (z - 1) + 1, cap)
    inner = _ramsey(c, y - 1, z - 1, cap)
    if inner.is_huge:
        return inner
    length = int(inner)
    # need = reservoir size required after t elements of the sequence are fixed
    need = BigBound.of(1, cap)
    for t in range(length - 1, -1, -1):
        classes = sat_pow(c, math.comb(t, y - 2), cap)
        need = classes * (need + (-1)) + 2
        if need.is_huge:
            return need
    return need


def _colors(h: int, colors: str) -> int:
    return {"h+1": h + 1, "h": h}[colors]


def b_h(h: int, x: "int | BigBound", times: int = 1, colors: str = "h+1", cap: int = DEFAULT_CAP) -> BigBound:
    """``b_h(x) = R(k+1, h, (h-2)(x+1))`` iterated ``times`` times."""
    out = BigBound.of(x, cap)
    for _ in range(times):
        if out.is_huge:
            break
        out = ramsey_upper(_colors(h, colors), h, (h - 2) * (int(out) + 1), cap)
    return out


def c_h(h: int, x: "int | BigBound", times: int = 1, colors: str = "h+1", cap: int = DEFAULT_CAP) -> BigBound:
    """``c_h(x) = R(2, 2, b_h^{h-2}(x))`` iterated ``times`` times."""
    out = BigBound.of(x, cap)
    for _ in range(times):
        out = b_h(h, out, h - 2, colors, cap)
        if out.is_huge:
            break
        out = ramsey_upper(2, 2, int(out), cap)
    return out


def n_threshold(
    h: int,
    r: int,
    m: int,
    colors: Literal["h+1", "h"] = "h+1",
    cap: int = DEFAULT_CAP,
) -> BigBound:
    """``c_h`` iterated ``r`` times on ``m``.

    The colour count ``k+1`` inside ``b_h`` is read as ``h+1`` by default;
    ``colors="h"`` selects the alternative reading.
    """
    if h < 3:
        raise ValueError("n_threshold needs h >= 3")
    if r < 0 or m < 1:
        raise ValueError("need r >= 0 and m >= 1")
    return c_h(h, m, r, colors, cap)


@dataclass(frozen=True)
class ClassProfile:
    """The functions describing a sparse graph class.

    ``s`` is the strict margin: bottlenecks satisfy ``|S| < s(r)``, except
    that a margin of 0 means the bottleneck is always empty.
    """

    name: str
    h: Callable[[int], int]
    s: Callable[[int], int]
    N: Callable[[int, int], BigBound]
    mode: Mode = "practical"

    def max_bottleneck(self, r: int) -> int:
        return max(self.s(r) - 1, 0)


def ballsize(max_deg: int, radius: int) -> int:
    """Largest possible ``radius``-ball in a graph of maximum degree ``max_deg``."""
    return 1 + max_deg * sum((max_deg - 1) ** i for i in range(radius))


def profile_bounded_degree(max_deg: int, mode: Mode = "practical") -> ClassProfile:
    if max_deg < 2:
        raise ValueError("bounded-degree profile needs max_deg >= 2")
    if mode == "paper":
        # Stored verbatim, m does not appear in the published formula.
        def N(r: int, m: int) -> BigBound:
            return BigBound.of((max_deg - 1) ** r + max_deg + 1)
    else:
        def N(r: int, m: int) -> BigBound:
            return BigBound.of(m * ballsize(max_deg, 2 * r))
    return ClassProfile(
        name=f"bounded-degree-{max_deg}",
        h=lambda r: max_deg + 2,
        s=lambda r: 0,
        N=N,
        mode=mode,
    )


def profile_from_h(h: Callable[[int], int], name: str = "excluded-clique") -> ClassProfile:
    """Profile of a class excluding ``K_{h(r)}`` as a depth-``r`` minor."""
    return ClassProfile(
        name=name,
        h=h,
        s=lambda r: h(r) - 1,
        N=lambda r, m: n_threshold(h(r), r, m),
        mode="paper",
    )


def get_profile(name: str, mode: Mode = "practical") -> ClassProfile:
    """Look up a profile by CLI name.

    Known names: ``bounded-degree-<D>``, ``excluded-clique-<h>``, ``forest``
    (h=3) and ``planar`` (h=5).
    """
    if name == "forest":
        return profile_from_h(lambda r: 3, "forest")
    if name == "planar":
        return profile_from_h(lambda r: 5, "planar")
    prefix, _, tail = name.rpartition("-")
    if tail.isdigit():
        if prefix == "bounded-degree":
            return profile_bounded_degree(int(tail), mode)
        if prefix == "excluded-clique":
            hv = int(tail)
            return profile_from_h(lambda r: hv, name)
    raise ValueError(f"unknown profile {name!r}")
