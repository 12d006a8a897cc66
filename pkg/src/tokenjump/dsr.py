"""Dominating set reconfiguration via bounded domination cores.

A core is a vertex set C such that, for every candidate set of size at most
k+1, dominating C is equivalent to dominating the whole graph.  Sets in a
reconfiguration sequence never exceed k+1 vertices, so the size-bounded core
property is exactly what the correctness argument consumes.  Vertices outside
the core and the endpoint sets that share their core-neighborhood with
another such vertex are strongly irrelevant: deleting them preserves not just
the answer but shortest sequence lengths.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable

from .engine import DEFAULT_STATE_BUDGET, SolveResult, bfs_reconfig
from .graph import Graph, contains_biclique
from .instances import (
    RULE_CORE_TWIN,
    Instance,
    Problem,
    ReductionLog,
    ReductionStep,
)

__all__ = [
    "InfeasibleInstanceError",
    "DominationCore",
    "CoreTwinCertificate",
    "compute_bounded_core",
    "remove_core_twins",
    "check_twinless_bound",
    "kernel_size_cap",
    "kernelize_dsr",
    "solve_dsr",
]

logger = logging.getLogger(__name__)


class InfeasibleInstanceError(ValueError):
    """The graph has no dominating set within the requested size."""


@dataclass(frozen=True)
class DominationCore:
    """Core C with the property certified for all sets of size <= size_bound_cap."""

    core: frozenset[int]
    size_bound_cap: int


@dataclass(frozen=True)
class CoreTwinCertificate:
    deleted: int
    survivor: int
    shared_core_neighborhood: frozenset[int]


def _unique_cover_masks(
    g: Graph, k: int
) -> tuple[list[int], int, dict[int, int], bool]:
    """Unique domination masks over all vertex subsets of size <= k+1.

    Also reports whether some subset of size <= k dominates everything.
    """
    verts = g.vertices
    pos = {v: i for i, v in enumerate(verts)}
    closed = []
    for v in verts:
        mask = 1 << pos[v]
        for w in g.neighbor_set(v):
            mask |= 1 << pos[w]
        closed.append(mask)
    full = (1 << len(verts)) - 1
    covers: set[int] = set()
    feasible = False
    for size in range(k + 2):
        for combo in itertools.combinations(range(len(verts)), size):
            mask = 0
            for i in combo:
                mask |= closed[i]
            covers.add(mask)
            if size <= k and mask == full:
                feasible = True
    return sorted(covers), full, pos, feasible


def compute_bounded_core(g: Graph, k: int) -> DominationCore:
    """Greedily shrink C from V while the bounded core property is preserved.

    A vertex w leaves C when every set of size at most k+1 that dominates
    C minus w also dominates w, verified by brute-force enumeration (the
    domination masks of all small subsets are memoized once).  Raises
    InfeasibleInstanceError when the graph has no dominating set of size <= k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    covers, full, pos, feasible = _unique_cover_masks(g, k)
    if not feasible:
        raise InfeasibleInstanceError(f"graph has no dominating set of size <= {k}")
    verts = g.vertices
    core_mask = full
    changed = True
    while changed:
        changed = False
        for v in verts:
            bit = 1 << pos[v]
            if not core_mask & bit:
                continue
            needed = core_mask & ~bit
            removable = True
            for cover in covers:
                if cover & needed == needed and not cover & bit:
                    removable = False
                    break
            if removable:
                core_mask &= ~bit
                changed = True
    core = frozenset(v for v in verts if core_mask >> pos[v] & 1)
    return DominationCore(core=core, size_bound_cap=k + 1)


def remove_core_twins(
    inst: Instance, core: DominationCore
) -> tuple[Instance, ReductionLog]:
    """Keep one vertex per core-neighborhood cell outside C and the endpoints.

    The deleted vertices are strongly irrelevant, so shortest reconfiguration
    distances between the endpoints are preserved exactly.
    """
    if inst.problem is not Problem.DSR:
        raise ValueError("core-twin removal applies to DSR instances only")
    g = inst.graph
    protected = core.core | inst.anchors
    cells: dict[frozenset[int], list[int]] = {}
    for v in g.vertices:
        if v in protected:
            continue
        cells.setdefault(g.neighbor_set(v) & core.core, []).append(v)
    log = ReductionLog()
    for key in sorted(cells, key=lambda s: tuple(sorted(s))):
        vs = cells[key]
        survivor = vs[0]
        for doomed in vs[1:]:
            g = g.delete_vertex(doomed)
            log.append(
                ReductionStep(
                    RULE_CORE_TWIN,
                    doomed,
                    {
                        "survivor": survivor,
                        "shared_core_neighborhood": sorted(key),
                    },
                )
            )
    return inst.with_graph(g), log


def check_twinless_bound(
    core_side: Iterable[int], twin_side: Iterable[int], d: int
) -> bool:
    """Diagnostic size bound for the twinless side of a biclique-free bipartite graph.

    Returns whether |B| <= 2(d-1) * (|A| e / d)^(2d).  A false return on a
    genuinely K_{d,d}-free input signals a bug; inputs containing K_{d,d} may
    legitimately fail.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    a = len(frozenset(core_side))
    b = len(frozenset(twin_side))
    bound = 2 * (d - 1) * (a * math.e / d) ** (2 * d)
    return b <= bound


def kernel_size_cap(d: int, k: int) -> int:
    """Kernel size diagnostic for graphs without K_{d,d} subgraphs."""
    return d * k**d + 2 * k + 2 * d * (3 * d * k**d) ** (2 * d)


def kernelize_dsr(inst: Instance) -> tuple[Instance, ReductionLog, DominationCore]:
    core = compute_bounded_core(inst.graph, inst.k)
    kernel, log = remove_core_twins(inst, core)
    return kernel, log, core


def solve_dsr(
    inst: Instance, budget: int = DEFAULT_STATE_BUDGET, d: int | None = None
) -> SolveResult:
    """Core computation, strong-irrelevance removal, then kernel search.

    Because only strongly irrelevant vertices are deleted, a yes-sequence is
    shortest for the original instance, and it is valid there as well.  When a
    ``d`` with no K_{d,d} subgraph is supplied, kernel-size diagnostics are
    logged (never asserted: the greedy core is not claimed minimum).
    """
    if inst.problem is not Problem.DSR:
        raise ValueError("solve_dsr applies to DSR instances only")
    kernel, log, core = kernelize_dsr(inst)
    if d is not None:
        if contains_biclique(inst.graph, d):
            logger.info("graph contains K_{%d,%d}; size diagnostics skipped", d, d)
        else:
            core_cap = d * inst.k**d
            cap = kernel_size_cap(d, inst.k)
            logger.info(
                "core size %d (cap %d), kernel %d vertices (cap %d) for d=%d",
                len(core.core),
                core_cap,
                kernel.graph.n,
                cap,
                d,
            )
    outcome = bfs_reconfig(kernel, budget)
    return SolveResult(outcome=outcome, log=log, kernel=kernel)
