"""Content placement: cache selection for UAVs and FAPs, orthogonal segment
assignment inside an inter-cluster, replication across inter-clusters by the
lattice reuse rule, and the closed-form cache metrics.

Both placement objectives are linear in 0/1 indicators with per-budget
cardinality constraints and non-negative weights, so the exact optimum is
top-k selection by weight.  Tests check the greedy solutions against
exhaustive enumeration on small instances.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass

import numpy as np

from . import lattice
from .popularity import n_popular

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class UavCacheSelection:
    """Contents cached whole by a UAV (1-based ranks)."""

    selected: tuple[int, ...]
    n_contents: int

    def indicator(self):
        """x with x_l = 0 exactly when content l is cached."""
        x = np.ones(self.n_contents, dtype=np.int8)
        for rank in self.selected:
            x[rank - 1] = 0
        return x

    def objective(self, weights):
        return float(np.dot(np.asarray(weights, dtype=float), self.indicator()))


@dataclass(frozen=True)
class FapCacheSelection:
    """Whole (popular budget) and coded (mediocre budget) contents for one
    FAP; the two sets are disjoint."""

    popular: tuple[int, ...]
    mediocre: tuple[int, ...]
    n_contents: int

    def objective(self, weights):
        w = np.asarray(weights, dtype=float)
        y = np.ones(self.n_contents)
        z = np.ones(self.n_contents)
        for rank in self.popular:
            y[rank - 1] = 0
        for rank in self.mediocre:
            z[rank - 1] = 0
        return float(w @ y + w @ z)


def _top_k(weights, k):
    """Indices (1-based ranks) of the k largest weights, ties broken by the
    lower rank."""
    w = np.asarray(weights, dtype=float)
    k = max(0, min(int(k), len(w)))
    if k == 0:
        return ()
    order = np.lexsort((np.arange(len(w)), -w))
    return tuple(sorted(int(i) + 1 for i in order[:k]))


def solve_uav_placement(weights, cache_capacity):
    """Cache the ``cache_capacity`` contents of largest aggregated weight."""
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0):
        raise ValueError("weights must be >= 0")
    return UavCacheSelection(
        selected=_top_k(w, cache_capacity), n_contents=len(w)
    )


def solve_fap_placement(weights, alpha, cache_capacity, n_segments):
    """Fill the popular budget floor(alpha*C_f) with the top-weight contents
    (stored whole), then the coded budget N_s*(C_f - floor(alpha*C_f)) with
    the next ones (one segment each)."""
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0):
        raise ValueError("weights must be >= 0")
    pop_budget = n_popular(alpha, cache_capacity)
    coded_budget = n_segments * (cache_capacity - pop_budget)
    popular = _top_k(w, pop_budget)
    remaining = np.array(w)
    for rank in popular:
        remaining[rank - 1] = -np.inf
    order = np.lexsort((np.arange(len(w)), -remaining))
    k = max(0, min(coded_budget, len(w) - len(popular)))
    mediocre = tuple(sorted(int(i) + 1 for i in order[:k]))
    return FapCacheSelection(popular=popular, mediocre=mediocre, n_contents=len(w))


def assign_segments(cluster_fap_ids, n_mediocre, n_segments):
    """Orthogonal segment choice inside one inter-cluster.

    The FAP at intra-cluster index i stores segment ((i + l) mod N_s) + 1 of
    the l-th mediocre content (i, l zero-based): a cyclic Latin square, so
    no two cluster members hold the same segment of any content.
    """
    if len(cluster_fap_ids) != n_segments:
        raise ValueError(
            f"cluster size {len(cluster_fap_ids)} must equal the segment "
            f"count {n_segments}"
        )
    matrices = {}
    rows = np.arange(n_mediocre)
    for i, fap_id in enumerate(cluster_fap_ids):
        mat = np.zeros((n_mediocre, n_segments), dtype=np.uint8)
        mat[rows, (i + rows) % n_segments] = 1
        matrices[fap_id] = mat
    return matrices


def reuse_offset(w, z):
    """Reuse index of a (w, z) lattice move: w^2 + w*z + z^2."""
    if w < 0 or z < 0 or (w == 0 and z == 0):
        raise ValueError("w, z must be >= 0 and not both zero")
    return w * w + w * z + z * z


def replicate_across_clusters(net, matrices, w=2, z=1):
    """Copy one inter-cluster's segment matrices to every inter-cluster so
    that FAPs separated by a (w, z) lattice move hold identical matrices.

    On a hex layout the copy is matched through the reuse group of each
    cell.  On other layouts the matrices are copied with identical
    orientation (position-aligned within each cluster) and a warning is
    logged, since there is no lattice to orient by.
    """
    source_ids = list(matrices.keys())
    source_cluster = None
    for members in net.inter_clusters:
        if source_ids[0] in members:
            source_cluster = members
            break
    if source_cluster is None or set(source_ids) != set(source_cluster):
        raise ValueError("matrices must cover exactly one inter-cluster")

    if net.layout != "hex":
        log.warning(
            "non-hex layout: replicating placement matrices with identical "
            "orientation in every cluster"
        )
        by_index = [matrices[fid] for fid in source_cluster]
        full = {}
        for members in net.inter_clusters:
            for idx, fid in enumerate(members):
                full[fid] = by_index[idx]
        return full

    if reuse_offset(w, z) != len(source_cluster) or not lattice.preserves_reuse_group(w, z):
        raise ValueError(
            f"(w, z) = ({w}, {z}) does not map the seven-cell clusters onto "
            "each other"
        )

    by_group = {
        lattice.reuse_group(net.faps[fid].lattice_coord): matrices[fid]
        for fid in source_cluster
    }
    return {
        fap.id: by_group[lattice.reuse_group(fap.lattice_coord)]
        for fap in net.faps
    }


def kappa(alpha, cache_capacity, n_segments):
    """Distinct contents reachable in a coded inter-cluster relative to an
    uncoded one."""
    if cache_capacity < 1:
        raise ValueError("cache_capacity must be >= 1")
    pop = n_popular(alpha, cache_capacity)
    return (pop + n_segments * (cache_capacity - pop)) / cache_capacity


def cache_diversity(alpha, cache_capacity, n_segments=None):
    """Fraction of an inter-cluster's storage holding distinct coded items:
    1 - floor(alpha*C_f)/C_f.  Independent of the segment count."""
    if cache_capacity < 1:
        raise ValueError("cache_capacity must be >= 1")
    return 1.0 - n_popular(alpha, cache_capacity) / cache_capacity


def cache_redundancy(alpha, cache_capacity, n_segments):
    """Fraction of an inter-cluster's storage occupied by duplicates of
    items already present in the cluster: (N_s - 1)*floor(alpha*C_f) /
    (N_s*C_f)."""
    if cache_capacity < 1:
        raise ValueError("cache_capacity must be >= 1")
    pop = n_popular(alpha, cache_capacity)
    return (n_segments - 1) * pop / (n_segments * cache_capacity)


def beta_max(alpha, n_segments):
    """Largest cache-to-catalog ratio at which a cluster stores no redundant
    segment: 1 / (alpha*(1 - N_s) + N_s)."""
    if n_segments < 1:
        raise ValueError("n_segments must be >= 1")
    denom = alpha * (1 - n_segments) + n_segments
    if denom <= 0:
        raise ValueError("degenerate cache split: denominator <= 0")
    return 1.0 / denom


def measured_cache_redundancy(popular, matrices, cluster_fap_ids, cache_capacity, n_segments):
    """Duplicate storage fraction counted from an actual placement.

    Whole contents weigh one capacity unit, segments 1/N_s; every copy of an
    item beyond the first in the cluster counts as duplicate.  The fraction
    is over the cluster's total capacity N_b * C_f.
    """
    duplicates = 0.0
    # whole popular contents are replicated at every cluster member
    duplicates += len(popular) * (len(cluster_fap_ids) - 1)
    seg_counts = {}
    for fid in cluster_fap_ids:
        mat = matrices[fid]
        for row in range(mat.shape[0]):
            seg = int(np.argmax(mat[row]))
            key = (row, seg)
            seg_counts[key] = seg_counts.get(key, 0) + 1
    for count in seg_counts.values():
        duplicates += (count - 1) / n_segments
    return duplicates / (len(cluster_fap_ids) * cache_capacity)


def measured_cache_diversity(matrices, cluster_fap_ids, cache_capacity, n_segments):
    """Coded storage fraction counted from an actual placement: segment rows
    per FAP divided by the FAP's capacity in segments."""
    rows = matrices[cluster_fap_ids[0]].shape[0]
    return rows / (n_segments * cache_capacity)


def distinct_cluster_contents(popular, mediocre):
    """Number of distinct contents reachable inside one inter-cluster."""
    return len(set(popular) | set(mediocre))


@dataclass(frozen=True, eq=False)
class NetworkPlacement:
    """Complete placement state for one epoch (immutable until the next)."""

    popular: tuple[int, ...]
    mediocre: tuple[int, ...]
    matrices: dict
    uav_cache: tuple[int, ...]
    n_segments: int

    def segment_at(self, fap_id, mediocre_row):
        """1-based segment index the FAP stores for that mediocre content."""
        return int(np.argmax(self.matrices[fap_id][mediocre_row])) + 1

    def rows(self):
        """Yield (fap_id, content_id, segment_id | 'FULL') for every stored
        item."""
        for fap_id in sorted(self.matrices):
            for rank in self.popular:
                yield fap_id, rank, "FULL"
            for row, rank in enumerate(self.mediocre):
                yield fap_id, rank, self.segment_at(fap_id, row)

    def dump_csv(self, target):
        """Write the placement rows as CSV to a path or file object."""
        own = isinstance(target, (str, bytes))
        fh = open(target, "w", newline="", encoding="utf-8") if own else target
        try:
            writer = csv.writer(fh)
            writer.writerow(["fap_id", "content_id", "segment_id"])
            for row in self.rows():
                writer.writerow(row)
        finally:
            if own:
                fh.close()


def build_network_placement(
    net, fap_weights, uav_weights, alpha, cache_capacity, n_segments,
    uav_cache_capacity, w=2, z=1,
):
    """Solve both cache selections and spread the segment matrices over the
    whole network."""
    fap_sel = solve_fap_placement(fap_weights, alpha, cache_capacity, n_segments)
    uav_sel = solve_uav_placement(uav_weights, uav_cache_capacity)
    if not net.inter_clusters:
        return NetworkPlacement(
            popular=fap_sel.popular,
            mediocre=fap_sel.mediocre,
            matrices={},
            uav_cache=uav_sel.selected,
            n_segments=n_segments,
        )
    first = net.inter_clusters[0]
    seed_matrices = assign_segments(first, len(fap_sel.mediocre), n_segments)
    matrices = replicate_across_clusters(net, seed_matrices, w, z)
    return NetworkPlacement(
        popular=fap_sel.popular,
        mediocre=fap_sel.mediocre,
        matrices=matrices,
        uav_cache=uav_sel.selected,
        n_segments=n_segments,
    )
