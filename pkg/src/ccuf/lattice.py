"""Axial-coordinate helpers for the hexagonal FAP lattice.

Cells live on a pointy-top hexagonal grid addressed by axial coordinates
``(q, r)``.  The Cartesian frame has y pointing up, which makes a 60 degree
counter-clockwise turn map the +q axis onto the +r axis.

Inter-clusters are seven-cell flowers (a centre cell plus its six
neighbours).  Flower centres form the index-7 sublattice spanned by the
norm-7 vector (2, 1) and its 60 degree rotation; two cells carry the same
reuse index exactly when they differ by a sublattice vector, i.e. when one
is reached from the other by a (w, z) = (2, 1) move.
"""

from __future__ import annotations

import math

# Unit moves to the six neighbouring cells, counter-clockwise from +q.
DIRECTIONS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

# Basis of the reuse-7 sublattice on which cluster centres sit.
CLUSTER_BASIS = ((2, 1), (-1, 3))

FLOWER_SIZE = 7


def rotate_ccw(vec):
    """Rotate an axial vector by 60 degrees counter-clockwise."""
    q, r = vec
    return (-r, q + r)


def hex_distance(a, b):
    """Number of cell hops between two cells."""
    dq = b[0] - a[0]
    dr = b[1] - a[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def squared_norm(vec):
    """Squared lattice length q^2 + q*r + r^2 of an axial vector."""
    q, r = vec
    return q * q + q * r + r * r


def reuse_move(start, direction, w, z):
    """Move ``w`` cells along ``direction``, turn 60 degrees
    counter-clockwise, then move ``z`` more cells.

    The displacement has squared lattice length w^2 + w*z + z^2 for any of
    the six starting directions.
    """
    turned = rotate_ccw(direction)
    return (
        start[0] + w * direction[0] + z * turned[0],
        start[1] + w * direction[1] + z * turned[1],
    )


def axial_to_xy(coord, cell_radius):
    """Cartesian centre of a cell; ``cell_radius`` is the hexagon
    circumradius in metres (adjacent centres are sqrt(3)*cell_radius apart)."""
    q, r = coord
    return (math.sqrt(3.0) * cell_radius * (q + 0.5 * r), 1.5 * cell_radius * r)


def reuse_group(coord):
    """Coset index (0..6) of a cell with respect to the flower sublattice.

    Two FAPs get identical cache matrices exactly when their cells share a
    reuse group.
    """
    q, r = coord
    return (3 * q + r) % 7


def preserves_reuse_group(w, z):
    """True when a (w, z) move always lands in the caller's reuse group."""
    return (3 * w + z) % 7 == 0


def flower(center):
    """The seven cells of the inter-cluster centred at ``center``."""
    return (center,) + tuple(
        (center[0] + d[0], center[1] + d[1]) for d in DIRECTIONS
    )


def cluster_centers(count):
    """The ``count`` flower centres closest to the origin.

    Deterministic: sorted by squared lattice norm, ties by (q, r).
    """
    if count <= 0:
        return []
    span = max(2, math.isqrt(count) + 2)
    candidates = []
    for a in range(-span, span + 1):
        for b in range(-span, span + 1):
            q = a * CLUSTER_BASIS[0][0] + b * CLUSTER_BASIS[1][0]
            r = a * CLUSTER_BASIS[0][1] + b * CLUSTER_BASIS[1][1]
            candidates.append((q, r))
    candidates.sort(key=lambda c: (squared_norm(c), c))
    return candidates[:count]
