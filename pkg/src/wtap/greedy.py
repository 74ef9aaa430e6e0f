"""Relative greedy solver.

Start from the cheapest disjoint vertical-path cover, then repeatedly swap
in the best-ratio ceil(2/eps)-thin component, removing the up-links whose
paths it covers, until no component has ratio below 1.

The component alphabet is the original links plus the surviving up-link
paths (each viewed as a link of its recorded cost).  A full shadow closure
can be requested instead for differential experiments; the guarantee needs
only the original links and the up-link singletons, which both alphabets
contain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .baseline import UpLinkSolution, UpPath, cheapest_disjoint_uplink_cover
from .component_dp import (ComponentSearch, SearchLink, original_search_links,
                           shadow_closure_search_links, uplink_search_links)
from .model import Instance, vertical_cost_table
from .ratio import best_ratio_component


class InvalidEpsilonError(ValueError):
    pass


@dataclass(frozen=True)
class Solution:
    """A feasible link choice.

    ``link_ids`` are the original instance links after mapping any internal
    shadows back; ``weight`` is the total weight of the distinct chosen
    objects (shadows counted at their own cost), the quantity the
    approximation guarantee bounds.  ``deduped_weight`` is the weight of the
    original-id set, which can only be smaller.
    """
    link_ids: tuple[int, ...]
    weight: int
    deduped_weight: int

    def covers(self, instance: Instance) -> bool:
        mask = 0
        for lid in self.link_ids:
            mask |= instance.link_paths[lid]
        return mask == instance.full_edge_mask


@dataclass(frozen=True)
class IterationRecord:
    component: tuple[SearchLink, ...]
    component_weight: int
    drop_weight: int
    ratio: Fraction
    u_weight_before: int
    u_weight_after: int


@dataclass
class GreedyTrace:
    k: int
    initial_u_weight: int
    iterations: list[IterationRecord] = field(default_factory=list)
    stopped_early: bool = False
    final_weight: int = 0


def epsilon_to_k(eps: Fraction) -> int:
    if eps <= 0:
        raise InvalidEpsilonError(f"epsilon must be positive, got {eps}")
    two_over = Fraction(2) / eps
    return -(-two_over.numerator // two_over.denominator)


def _finish(instance: Instance, chosen: dict[tuple, SearchLink],
            remaining: list[UpPath], trace: GreedyTrace) -> Solution:
    weight = sum(sl.weight for sl in chosen.values())
    weight += sum(p.weight for p in remaining)
    ids = set()
    cover = 0
    for sl in chosen.values():
        kind = sl.label[0]
        if kind in ("orig", "shadow"):
            ids.add(sl.label[1])
        else:
            raise AssertionError(f"unmapped label {sl.label}")
        cover |= instance.index.path_edge_mask(sl.a, sl.b)
    for p in remaining:
        ids.add(p.link_id)
    for lid in ids:
        cover |= instance.link_paths[lid]
    if cover != instance.full_edge_mask:
        raise AssertionError("greedy output does not cover all tree edges")
    deduped = sum(instance.link(l).weight for l in ids)
    trace.final_weight = weight
    return Solution(link_ids=tuple(sorted(ids)), weight=weight,
                    deduped_weight=deduped)


def solve(instance: Instance, eps: Fraction | int | str,
          k_override: int | None = None,
          full_shadows: bool = False) -> tuple[Solution, GreedyTrace]:
    """Run the relative greedy; returns the solution and its trace."""
    eps = Fraction(eps)
    k = k_override if k_override is not None else epsilon_to_k(eps)
    if k < 1:
        raise InvalidEpsilonError("k override must be at least 1")
    if instance.n == 1:
        return (Solution(link_ids=(), weight=0, deduped_weight=0),
                GreedyTrace(k=k, initial_u_weight=0))

    baseline = cheapest_disjoint_uplink_cover(instance)
    uplinks = list(baseline.paths)
    trace = GreedyTrace(k=k, initial_u_weight=baseline.weight)
    originals = (shadow_closure_search_links(instance) if full_shadows
                 else original_search_links(instance))
    chosen: dict[tuple, SearchLink] = {}
    up_by_pair = {(p.top, p.bottom): p for p in uplinks}

    while uplinks:
        search = originals + uplink_search_links(uplinks)
        result = best_ratio_component(instance, uplinks, k, search)
        w_before = sum(p.weight for p in uplinks)
        if result.rho >= 1:
            trace.stopped_early = True
            break
        dropped = set(result.drop_indices)
        for sl in result.links:
            if sl.label[0] == "up":
                # a surviving path chosen as a component link maps to its witness
                path = up_by_pair[(sl.label[1], sl.label[2])]
                sl = SearchLink(sl.a, sl.b, sl.weight, ("orig", path.link_id))
            chosen[sl.label] = sl
        uplinks = [p for i, p in enumerate(uplinks) if i not in dropped]
        trace.iterations.append(IterationRecord(
            component=result.links, component_weight=result.weight,
            drop_weight=result.drop_weight, ratio=result.rho,
            u_weight_before=w_before,
            u_weight_after=sum(p.weight for p in uplinks)))

    solution = _finish(instance, chosen, uplinks, trace)
    return solution, trace


def two_approx_only(instance: Instance,
                    baseline: UpLinkSolution | None = None) -> Solution:
    """The 2-approximation alone, with shadows mapped to original links."""
    if instance.n == 1:
        return Solution(link_ids=(), weight=0, deduped_weight=0)
    if baseline is None:
        baseline = cheapest_disjoint_uplink_cover(instance)
    ids = sorted({p.link_id for p in baseline.paths})
    deduped = sum(instance.link(l).weight for l in ids)
    return Solution(link_ids=tuple(ids), weight=baseline.weight,
                    deduped_weight=deduped)
