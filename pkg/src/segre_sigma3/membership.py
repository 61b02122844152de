"""Decision procedures for the second and third secant varieties of a Segre product.

``sigma3`` evaluates, in a fixed canonical order:

1. ``subspace``   -- every single-mode flattening has rank <= 3;
2. reduction of the tensor to its concise core;
3. ``flattening`` -- every bipartition (up to complement) has rank <= 3;
4. ``strassen``   -- for every ordered pair (a, b) with concise dim A >= 2,
   the exterior flattening has rank <= 3 (dim A - 1).

The witness of a non-member is the first failing family in that order.
Families inside steps 3 and 4 are independent and may be evaluated on a
thread pool (``SEGRE_SIGMA3_THREADS``); results do not depend on scheduling.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .certificate import Certificate, TraceEntry
from .flattening import Bipartition, array_rank, bipartitions, concise_core
from .strassen import _integer_array, concise_strassen_rank
from .tensor import Tensor

__all__ = ["CaseLabel", "sigma3", "sigma2", "classify_case", "thread_count"]

SIGMA3_BOUND = 3


class CaseLabel(str, Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    OUTSIDE = "Outside"


def thread_count() -> int:
    raw = os.environ.get("SEGRE_SIGMA3_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"SEGRE_SIGMA3_THREADS must be a natural number, got {raw!r}") from None
        return max(1, n)
    return os.cpu_count() or 1


_POOL: ThreadPoolExecutor | None = None


def _evaluate(jobs: Sequence[Callable[[], TraceEntry]], full: bool, threads: int) -> list[TraceEntry]:
    """Run ``jobs`` and return their entries in order, truncated after the first failure unless ``full``."""
    global _POOL
    if threads > 1 and len(jobs) > 1:
        if _POOL is None or _POOL._max_workers != threads:
            _POOL = ThreadPoolExecutor(max_workers=threads)
        entries = list(_POOL.map(lambda job: job(), jobs))
        if not full:
            for k, e in enumerate(entries):
                if not e.passed:
                    return entries[: k + 1]
        return entries
    out = []
    for job in jobs:
        e = job()
        out.append(e)
        if not full and not e.passed:
            break
    return out


def _flattening_jobs(arr: np.ndarray, bound: int, family: str = "flattening"):
    jobs = []
    for bp in bipartitions(arr.ndim):
        def job(bp=bp):
            return TraceEntry(family, bp.as_lists(), array_rank(arr, bp.left, bp.right), bound)
        jobs.append(job)
    return jobs


def sigma3(t: Tensor, full_trace: bool = False, threads: int | None = None) -> Certificate:
    """Decide whether ``t`` has border rank at most 3."""
    if not isinstance(t, Tensor):
        raise TypeError("sigma3 expects a Tensor")
    threads = thread_count() if threads is None else threads
    n = t.order
    if n == 2:
        entry = TraceEntry("flattening", [[0], [1]], array_rank(t.array, (0,), (1,)), SIGMA3_BOUND)
        return Certificate.from_trace((entry,))

    trace: list[TraceEntry] = []
    for i in range(n):
        bp = Bipartition.from_left([i], n)
        trace.append(TraceEntry("subspace", bp.as_lists(), array_rank(t.array, bp.left, bp.right), SIGMA3_BOUND))
        if not full_trace and not trace[-1].passed:
            return Certificate.from_trace(trace)
    if t.is_zero():
        return Certificate.from_trace(trace)

    core = _integer_array(concise_core(t).core.array)

    trace += _evaluate(_flattening_jobs(core, SIGMA3_BOUND), full_trace, threads)
    if not full_trace and not trace[-1].passed:
        return Certificate.from_trace(trace)

    jobs = []
    for a in range(n):
        dim_a = core.shape[a]
        if dim_a < 2:
            continue
        for b in range(n):
            if b == a:
                continue
            def job(a=a, b=b, bound=SIGMA3_BOUND * (dim_a - 1)):
                return TraceEntry("strassen", {"a": a, "b": b}, concise_strassen_rank(core, a, b), bound)
            jobs.append(job)
    trace += _evaluate(jobs, full_trace, threads)
    return Certificate.from_trace(trace)


def sigma2(t: Tensor, full_trace: bool = False, threads: int | None = None) -> Certificate:
    """Border rank at most 2: every flattening has rank <= 2."""
    threads = thread_count() if threads is None else threads
    trace = _evaluate(_flattening_jobs(t.array, 2), full_trace, threads)
    return Certificate.from_trace(trace)


def _grouped_sigma2(core: np.ndarray, groups: Sequence[Sequence[int]]) -> bool:
    """All flattenings of the tensor viewed with the given mode groups have rank <= 2."""
    k = len(groups)
    for mask in range(1, 2 ** (k - 1)):
        left = [m for g in range(k) if mask >> g & 1 for m in groups[g]]
        right = [m for g in range(k) if not mask >> g & 1 for m in groups[g]]
        if array_rank(core, left, right) > 2:
            return False
    return True


def classify_case(t: Tensor) -> CaseLabel:
    """Coarse case of a member by sorted concise dims and the grouped sigma_2 test."""
    if not sigma3(t).is_member:
        return CaseLabel.OUTSIDE
    if t.is_zero():
        return CaseLabel.CASE4
    core = concise_core(t).core.array
    dims = core.shape
    order = sorted(range(len(dims)), key=lambda i: -dims[i])
    groups = [[order[0]], [order[1]]]
    if len(order) > 2:
        groups.append(sorted(order[2:]))
    if _grouped_sigma2(core, groups):
        return CaseLabel.CASE4
    d1, d2 = dims[order[0]], dims[order[1]]
    if d1 == 3 and d2 == 3:
        return CaseLabel.CASE1
    if d1 == 3:
        return CaseLabel.CASE2
    return CaseLabel.CASE3
