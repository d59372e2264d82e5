"""UAV siting: partition outdoor users into intra-clusters and place each
UAV at its cluster's coordinate mean (Lloyd iterations).

The assignment step minimises squared distance while the reported objective
also includes the plain sum of Euclidean distances, since the mean update
is kept even though it is not the minimiser of the unsquared sum.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class IntraClustering:
    assignments: np.ndarray
    centroids: np.ndarray
    objective: float
    squared_objective: float
    n_iterations: int
    # squared objective after each assignment step, for convergence checks
    history: tuple[float, ...]


def _uniform_disc(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(size=n))
    theta = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def kmeans_deploy(points, n_clusters, rng, max_iter=100, tol=0.0, region_radius=None):
    """Cluster user coordinates and return centroids for the UAVs.

    Centroids start at uniformly random points in the region disc (bounding
    radius of the data when ``region_radius`` is not given).  Iterations
    stop when assignments no longer change, when centroids move less than
    ``tol``, or at ``max_iter``.  A cluster that loses all members is
    re-seeded at the point currently farthest from its assigned centroid.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must be an (n, 2) array")
    n = len(pts)
    if n < n_clusters:
        raise ValueError(f"need at least {n_clusters} users, got {n}")
    if region_radius is None:
        region_radius = float(np.max(np.hypot(pts[:, 0], pts[:, 1]))) or 1.0

    centroids = _uniform_disc(rng, n_clusters, region_radius)
    assignments = np.full(n, -1, dtype=int)
    history = []
    iterations = 0

    for iterations in range(1, max_iter + 1):
        d2 = ((pts[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new_assign = np.argmin(d2, axis=1)

        # Re-seed empty clusters at the worst-served point.  Stealing that
        # point can empty another cluster, so repeat until stable.
        for _ in range(n_clusters):
            empties = [k for k in range(n_clusters) if not np.any(new_assign == k)]
            if not empties:
                break
            for k in empties:
                cost = d2[np.arange(n), new_assign]
                centroids[k] = pts[int(np.argmax(cost))]
            d2 = ((pts[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
            new_assign = np.argmin(d2, axis=1)

        history.append(float(d2[np.arange(n), new_assign].sum()))
        converged = np.array_equal(new_assign, assignments)
        assignments = new_assign

        moved = 0.0
        for k in range(n_clusters):
            members = pts[assignments == k]
            if len(members) == 0:
                continue
            update = members.mean(axis=0)
            moved = max(moved, float(np.hypot(*(update - centroids[k]))))
            centroids[k] = update

        if converged or moved <= tol:
            break

    d = np.sqrt(((pts - centroids[assignments]) ** 2).sum(axis=1))
    return IntraClustering(
        assignments=assignments,
        centroids=centroids,
        objective=float(d.sum()),
        squared_objective=float((d**2).sum()),
        n_iterations=iterations,
        history=tuple(history),
    )


def dump_clustering_csv(clustering, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["user", "cluster", "centroid_x", "centroid_y"])
        for user, k in enumerate(clustering.assignments):
            cx, cy = clustering.centroids[k]
            writer.writerow([user, int(k), f"{cx:.12g}", f"{cy:.12g}"])
