"""Boolean, exact quantitative, and smooth quantitative STL semantics.

Quantifiers range over a sampled grid. For Until at time t with interval [a, b]:

    candidates  C(t)     = {lo, hi} ∪ {samples in [lo, hi]},  lo = min(t+a, end), hi = min(t+b, end)
    inner set   D(t, t') = {t, t'}  ∪ {samples in [t, t']}

Subformulas are evaluated at exactly those times; predicates interpolate the signal.
Times past the last sample read the last value.

The quantitative evaluator works bottom-up over whole time grids so each temporal
operator costs time linear in the trace length. The exact and smooth paths share the
same passes; only the `Algebra` (max/min and sliding-window reductions) differs.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from stlplan.autodiff import Scalar
from stlplan.core.config import get_settings
from stlplan.core.errors import DomainError, FormulaError
from stlplan.stl.formula import And, Formula, Not, Predicate, TrueF, Until
from stlplan.stl.signal import Signal
from stlplan.stl.smooth import SmoothingConfig, smooth_max, smooth_min

Range = tuple[int, int]


@dataclass
class OpCounter:
    """Counts elementary comparisons made by the exact evaluator."""

    count: int = 0


class _WindowQueue:
    """Sliding window over `items` aggregated with an associative `combine`.

    Two stacks: the front holds suffix aggregates of the oldest items, the back a running
    aggregate of the newest. Every item is combined a bounded number of times, so a sweep
    over non-decreasing ranges is linear in len(items). `combine` need not commute.
    """

    def __init__(self, items: Sequence, combine: Callable) -> None:
        self.items = items
        self.combine = combine
        self.first = 0
        self.next = 0
        self.back_start = 0
        self.front: list = []
        self.back = None

    def slide(self, i0: int, i1: int):
        """Aggregate of items[i0..i1], or None when the range is empty."""
        while self.next <= i1:
            item = self.items[self.next]
            self.back = item if self.back is None else self.combine(self.back, item)
            self.next += 1
        if self.next <= i0:
            self.front.clear()
            self.back = None
            self.first = self.next = self.back_start = i0
            return None
        while self.first < i0:
            if not self.front:
                self._flip()
            self.front.pop()
            self.first += 1
        if i0 > i1 or self.first == self.next:
            return None
        if not self.front:
            return self.back
        if self.back is None:
            return self.front[-1]
        return self.combine(self.front[-1], self.back)

    def _flip(self) -> None:
        acc = None
        for j in range(self.next - 1, self.back_start - 1, -1):
            acc = self.items[j] if acc is None else self.combine(self.items[j], acc)
            self.front.append(acc)
        self.back_start = self.next
        self.back = None


class Algebra:
    """max/min operators used by the quantitative evaluator."""

    def max2(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def min2(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def maxn(self, items: Sequence[Scalar]) -> Scalar:
        raise NotImplementedError

    def minn(self, items: Sequence[Scalar]) -> Scalar:
        raise NotImplementedError

    def window_max(self, values: Sequence[Scalar], ranges: Sequence[Range], to_end: bool) -> list:
        """Max of values[i0..i1] for each (i0, i1); None for empty ranges.

        Ranges must be non-decreasing in both ends. `to_end` says every range
        finishes at the last index.
        """
        raise NotImplementedError

    def window_min(self, values: Sequence[Scalar], ranges: Sequence[Range], to_end: bool) -> list:
        raise NotImplementedError


class ExactAlgebra(Algebra):
    def __init__(self, counter: Optional[OpCounter] = None) -> None:
        self.counter = counter or OpCounter()

    def max2(self, a, b):
        self.counter.count += 1
        return a if a >= b else b

    def min2(self, a, b):
        self.counter.count += 1
        return a if a <= b else b

    def maxn(self, items):
        self.counter.count += len(items)
        return max(items)

    def minn(self, items):
        self.counter.count += len(items)
        return min(items)

    def window_max(self, values, ranges, to_end):
        return self._sliding(values, ranges, lambda old, new: old <= new)

    def window_min(self, values, ranges, to_end):
        return self._sliding(values, ranges, lambda old, new: old >= new)

    def _sliding(self, values, ranges, dominated: Callable[[float, float], bool]) -> list:
        # Monotonic deque: indices whose values are never dominated by a later one.
        out: list = []
        window: deque[int] = deque()
        nxt = 0
        counter = self.counter
        for i0, i1 in ranges:
            while nxt <= i1:
                while window and dominated(values[window[-1]], values[nxt]):
                    window.pop()
                    counter.count += 1
                window.append(nxt)
                nxt += 1
                counter.count += 1
            while window and window[0] < i0:
                window.popleft()
                counter.count += 1
            out.append(values[window[0]] if i0 <= i1 and window else None)
        return out


class SmoothAlgebra(Algebra):
    def __init__(self, config: SmoothingConfig) -> None:
        self.k = config.k

    def max2(self, a, b):
        return smooth_max((a, b), self.k)

    def min2(self, a, b):
        return smooth_min((a, b), self.k)

    def maxn(self, items):
        return smooth_max(items, self.k)

    def minn(self, items):
        return smooth_min(items, self.k)

    def window_max(self, values, ranges, to_end):
        return self._reduce(values, ranges, to_end, self.max2)

    def window_min(self, values, ranges, to_end):
        return self._reduce(values, ranges, to_end, self.min2)

    @staticmethod
    def _reduce(values, ranges, to_end, pair) -> list:
        # log-sum-exp is associative, so pairwise folding equals the flat reduction
        if to_end:
            suffix: list = [None] * len(values)
            acc = None
            for j in range(len(values) - 1, -1, -1):
                acc = values[j] if acc is None else pair(values[j], acc)
                suffix[j] = acc
            return [suffix[i0] if i0 <= i1 else None for i0, i1 in ranges]
        queue = _WindowQueue(values, pair)
        return [queue.slide(i0, i1) for i0, i1 in ranges]


class _QuantitativeEvaluator:
    def __init__(self, signal: Signal, algebra: Algebra, top: float) -> None:
        self.signal = signal
        self.algebra = algebra
        self.top = top
        self.sample_times = signal.time_list
        self.last = len(self.sample_times) - 1

    def values(self, node: Formula, query: list[float]) -> list[Scalar]:
        if isinstance(node, TrueF):
            return [self.top] * len(query)
        if isinstance(node, Predicate):
            column = self.signal.sample(node.channel, query)
            if node.direction == ">=":
                return [v - node.threshold for v in column]
            return [node.threshold - v for v in column]
        if isinstance(node, Not):
            return [-v for v in self.values(node.arg, query)]
        if isinstance(node, And):
            left = self.values(node.left, query)
            right = self.values(node.right, query)
            return [self.algebra.min2(a, b) for a, b in zip(left, right)]
        if isinstance(node, Until):
            return self._until(node, query)
        raise FormulaError(f"unsupported formula node {type(node).__name__}")

    def _until(self, node: Until, query: list[float]) -> list[Scalar]:
        sig = self.signal
        times = sig.times
        end = sig.end
        a, b = node.interval.lower, node.interval.upper
        lows = [sig.snap(min(t + a, end)) for t in query]
        highs = [sig.snap(min(t + b, end)) if math.isfinite(b) else end for t in query]

        # child grid: every sample plus the query times and window endpoints
        grid = sorted(set(self.sample_times).union(query, lows, highs))
        grid_arr = np.asarray(grid)
        sample_pos = np.searchsorted(grid_arr, times).tolist()

        def lookup(vals: list[Scalar]) -> Callable[[float], Scalar]:
            return lambda t: vals[int(np.searchsorted(grid_arr, t))]

        right_vals = self.values(node.right, grid)
        r2 = lookup(right_vals)
        r2s = [right_vals[p] for p in sample_pos]

        j0s = np.searchsorted(times, lows, side="left").tolist()
        j1s = (np.searchsorted(times, highs, side="right") - 1).tolist()
        is_sample = set(self.sample_times)
        alg = self.algebra
        unbounded = not node.interval.bounded

        if isinstance(node.left, TrueF):
            windows = alg.window_max(r2s, list(zip(j0s, j1s)), unbounded)
            out = []
            for lo, hi, w in zip(lows, highs, windows):
                cands = [] if w is None else [w]
                if lo not in is_sample:
                    cands.append(r2(lo))
                if hi not in is_sample and hi != lo:
                    cands.append(r2(hi))
                out.append(alg.maxn(cands))
            return out

        left_vals = self.values(node.left, grid)
        r1 = lookup(left_vals)
        r1s = [left_vals[p] for p in sample_pos]

        # samples in [t, lo): the part of every inner set that precedes the window
        starts = np.searchsorted(times, query, side="left").tolist()
        pre_windows = alg.window_min(r1s, [(i, j - 1) for i, j in zip(starts, j0s)], False)

        if unbounded:
            # tail[j] = max over j' >= j of min(r2[j'], min r1[j..j']); one backward pass
            tail: list = [None] * (self.last + 1)
            inner_all: list = [None] * (self.last + 1)
            tail[self.last] = alg.min2(r2s[self.last], r1s[self.last])
            inner_all[self.last] = r1s[self.last]
            for j in range(self.last - 1, -1, -1):
                tail[j] = alg.max2(alg.min2(r2s[j], r1s[j]), alg.min2(r1s[j], tail[j + 1]))
                inner_all[j] = alg.min2(r1s[j], inner_all[j + 1])
            spans = [(tail[j0], inner_all[j0]) if j0 <= j1 else None for j0, j1 in zip(j0s, j1s)]
        else:
            spans = self._until_windows(r1s, r2s, list(zip(j0s, j1s)))

        out = []
        for t, lo, hi, span, pre_w in zip(query, lows, highs, spans, pre_windows):
            pre = [] if pre_w is None else [pre_w]
            if t not in is_sample:
                pre.append(r1(t))
            cands = []
            if lo not in is_sample:
                if lo == t:
                    cands.append(alg.min2(r2(t), r1(t)))
                else:
                    cands.append(alg.minn([r2(lo), *pre, r1(lo)]))
            inner = None
            if span is not None:
                window, inner = span
                cands.append(alg.min2(alg.minn(pre), window) if pre else window)
            if hi not in is_sample and hi != lo:
                closing = [r2(hi), *pre, r1(hi)]
                if inner is not None:
                    closing.append(inner)
                cands.append(alg.minn(closing))
            out.append(alg.maxn(cands))
        return out

    def _until_windows(self, r1s, r2s, ranges: list[Range]) -> list:
        """(max over j of min(r2[j], min r1[i0..j]), min r1[i0..i1]) for each window.

        Both parts compose over adjacent segments, so one sliding sweep covers every window.
        """
        alg = self.algebra

        def combine(left, right):
            return alg.max2(left[0], alg.min2(left[1], right[0])), alg.min2(left[1], right[1])

        items = [(alg.min2(b, a), a) for a, b in zip(r1s, r2s)]
        queue = _WindowQueue(items, combine)
        return [queue.slide(i0, i1) for i0, i1 in ranges]


def _check_channels(formula: Formula, signal: Signal) -> None:
    if formula.max_channel() >= signal.dim:
        raise FormulaError(
            f"formula references channel {formula.max_channel()} but the signal has {signal.dim} channels"
        )


def _resolve_top(top: Optional[float]) -> float:
    return get_settings().TOP_VALUE if top is None else float(top)


def robustness_trace(
    formula: Formula,
    signal: Signal,
    top: Optional[float] = None,
    counter: Optional[OpCounter] = None,
) -> Signal:
    """Exact robustness at every sample time, as a one-channel signal on the same grid."""
    _check_channels(formula, signal)
    top = _resolve_top(top)
    magnitude = float(np.max(np.abs(signal.values())))
    if magnitude >= top:
        raise DomainError(f"channel magnitude {magnitude:g} reaches the top value {top:g}")
    evaluator = _QuantitativeEvaluator(signal, ExactAlgebra(counter), top)
    values = evaluator.values(formula, list(signal.time_list))
    return Signal(signal.times, [[v] for v in values])


def robustness(
    formula: Formula,
    signal: Signal,
    t: float = 0.0,
    top: Optional[float] = None,
) -> float:
    """Exact robustness margin at time `t`.

    Example:
        >>> from stlplan.stl.formula import Always, Predicate
        >>> from stlplan.stl.signal import Interval
        >>> robustness(Always(Predicate(0, 0.0), Interval(0, 10)), Signal([0, 5, 10], [5, 5, 5]))
        5.0
    """
    t = signal.check_time(t)
    index = signal.sample_index(t)
    if index is not None:
        return float(robustness_trace(formula, signal, top).column(0)[index])
    _check_channels(formula, signal)
    evaluator = _QuantitativeEvaluator(signal, ExactAlgebra(), _resolve_top(top))
    return float(evaluator.values(formula, [t])[0])


def robustness_smooth(
    formula: Formula,
    signal: Signal,
    t: float = 0.0,
    config: SmoothingConfig = SmoothingConfig(),
    top: Optional[float] = None,
) -> Scalar:
    """Smooth robustness at `t`; differentiable in every signal value that is a `Var`."""
    t = signal.check_time(t)
    _check_channels(formula, signal)
    evaluator = _QuantitativeEvaluator(signal, SmoothAlgebra(config), _resolve_top(top))
    return evaluator.values(formula, [t])[0]


def eval_boolean(formula: Formula, signal: Signal, t: float = 0.0) -> bool:
    """Boolean satisfaction at `t` over the same grid convention as the robustness."""
    t = signal.check_time(t)
    _check_channels(formula, signal)
    memo: dict[tuple[int, float], bool] = {}

    def sat(node: Formula, at: float) -> bool:
        key = (id(node), at)
        if key in memo:
            return memo[key]
        if isinstance(node, TrueF):
            result = True
        elif isinstance(node, Predicate):
            v = float(signal.interpolate(node.channel, at))
            result = v >= node.threshold if node.direction == ">=" else v <= node.threshold
        elif isinstance(node, Not):
            result = not sat(node.arg, at)
        elif isinstance(node, And):
            result = sat(node.left, at) and sat(node.right, at)
        elif isinstance(node, Until):
            a, b = node.interval.lower, node.interval.upper
            result = any(
                sat(node.right, tp) and all(sat(node.left, tpp) for tpp in signal.window_points(at, tp))
                for tp in signal.window_points(at + a, at + b)
            )
        else:
            raise FormulaError(f"unsupported formula node {type(node).__name__}")
        memo[key] = result
        return result

    return sat(formula, t)
