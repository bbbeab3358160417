"""Raise clustering by closing triangles inside dilation classes.

Each step picks two non-adjacent nodes of one dilation class that share
at least one neighbor and links them, which closes a triangle through
every common neighbor. The matching is repaired after each insertion and
the dilation classes recomputed, so the unmatched count never increases.
"""
import itertools
from collections import defaultdict
from dataclasses import dataclass, field

from .graph import build_graph, clustering
from .matching import dulmage_mendelsohn, max_matching

EXHAUSTED = "exhausted"
BUDGET_REACHED = "budget_reached"


@dataclass(frozen=True)
class DensifyStep:
    added_edge: tuple
    common_neighbor: int
    common_count: int
    unmatched_before: int
    unmatched_after: int
    transitivity_before: float
    transitivity_after: float


@dataclass(frozen=True)
class Checkpoint:
    links_added: int
    unmatched: int
    transitivity: float


@dataclass
class DensifyResult:
    graph: object
    steps: list = field(default_factory=list)
    checkpoints: list = field(default_factory=list)
    status: str = BUDGET_REACHED

    @property
    def links_added(self):
        return len(self.steps)


def best_pair(adjacency, members):
    """Best non-adjacent pair inside ``members`` sharing a neighbor.

    Pairs are ranked by number of common neighbors (descending), then by
    the pair itself (ascending). Returns ``(a, b, witness, count)`` with
    ``witness`` the smallest common neighbor, or ``None``.
    """
    inside = set(members)
    counts = defaultdict(int)
    witness = {}
    for w, row in enumerate(adjacency):
        local = [v for v in row if v in inside]
        if len(local) < 2:
            continue
        for a, b in itertools.combinations(local, 2):
            key = (a, b) if a < b else (b, a)
            counts[key] += 1
            if key not in witness:
                witness[key] = w
    best = None
    for key, c in counts.items():
        if key[1] in adjacency[key[0]]:
            continue
        if best is None or c > counts[best] or (c == counts[best] and key < best):
            best = key
    if best is None:
        return None
    return best[0], best[1], witness[best], counts[best]


def densify(g, budget, checkpoint_every=1, full_recompute=False):
    """Add up to ``budget`` triangle-closing links inside dilation classes.

    Classes are scanned most-deficient first (ties by smallest member).
    The run stops early with status ``"exhausted"`` when no class holds an
    eligible pair. After each insertion the previous maximum matching is
    extended by augmenting paths; ``full_recompute=True`` runs a fresh
    Hopcroft-Karp instead (same count, used for verification).

    Checkpoints hold ``(links_added, unmatched, transitivity)`` at 0, at
    every multiple of ``checkpoint_every``, and at the final state.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if checkpoint_every < 1:
        raise ValueError("checkpoint_every must be >= 1")

    report = clustering(g)
    triangles = report.triangle_count
    triplets = report.triplet_count
    adjacency = [set(row) for row in g.adjacency]
    edges = g.edges()
    current = g
    matching = max_matching(current)

    def trans():
        return 3.0 * triangles / triplets if triplets else 0.0

    result = DensifyResult(g)
    result.checkpoints.append(Checkpoint(0, matching.unmatched_count, trans()))

    while len(result.steps) < budget:
        dilations = dulmage_mendelsohn(current, matching)
        order = sorted(range(len(dilations)), key=lambda k: -dilations.class_deficiency[k])
        pick = None
        for k in order:
            pick = best_pair(adjacency, dilations.classes[k])
            if pick is not None:
                break
        if pick is None:
            result.status = EXHAUSTED
            break
        a, b, w, common = pick

        before_u = matching.unmatched_count
        before_t = trans()
        triplets += len(adjacency[a]) + len(adjacency[b])
        triangles += common
        adjacency[a].add(b)
        adjacency[b].add(a)
        edges.append((a, b))
        current = build_graph(edges, g.n)
        matching = max_matching(current, warm_start=None if full_recompute else matching)

        result.steps.append(DensifyStep((a, b), w, common, before_u,
                                        matching.unmatched_count, before_t, trans()))
        if len(result.steps) % checkpoint_every == 0:
            result.checkpoints.append(
                Checkpoint(len(result.steps), matching.unmatched_count, trans()))

    if result.checkpoints[-1].links_added != len(result.steps):
        result.checkpoints.append(Checkpoint(len(result.steps), matching.unmatched_count, trans()))
    result.graph = current
    return result
