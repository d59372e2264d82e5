"""Ground-user mobility over the inter-cluster cells and the success
probability of acquiring a full content while moving.

Two walk models operate on the cells of one inter-cluster:

* ``simple``      -- every contact happens in a never-visited cell, so all
  cells are seen within one content download.
* ``random_walk`` -- each slot the user jumps to one of the other
  ``N_s - 1`` cells of the cluster, uniformly at random, and may revisit.

Closed forms are paired with a Monte Carlo oracle.  The per-contact
new-segment formula ((N_s-2)/(N_s-1))**(n-2) matches the walk's
unconditional fresh-cell rate at every contact, but a full download needs
every contact fresh jointly, and the joint probability
(N_s-2)!/(N_s-1)**(N_s-2) sits well below the product of those marginals.
The closed forms evaluate the marginal construction verbatim; the Monte
Carlo result reports the gap instead of asserting it away.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .popularity import ZipfProfile, n_mediocre, n_popular

SIMPLE = "simple"
RANDOM_WALK = "random_walk"


@dataclass
class GroundUser:
    """Mutable per-user state used by the reference walk."""

    id: int
    position: tuple[float, float]
    speed: float = 0.0
    heading: float = 0.0
    indoor: bool = False
    visited_cells: set = field(default_factory=set)
    held_segments: set = field(default_factory=set)
    stationary: bool = False


@dataclass(frozen=True)
class SuccessProbInputs:
    profile: ZipfProfile
    alpha: float
    cache_capacity: int
    n_segments: int
    model: str = RANDOM_WALK


@dataclass(frozen=True)
class MonteCarloSuccess:
    estimate: float
    ci_halfwidth: float
    trials: int
    # empirical probability that contact n lands in a never-visited cell
    new_segment_rate: np.ndarray

    @property
    def ci(self):
        return (self.estimate - self.ci_halfwidth, self.estimate + self.ci_halfwidth)


def step(user, model, dt_s, net, rng):
    """Advance a user by one slot over its inter-cluster's cells.

    A user with zero speed stays put and is flagged stationary.  Otherwise
    the user jumps to another cell of the cluster containing its nearest
    FAP: a never-visited one under ``simple``, a uniformly random other cell
    under ``random_walk``.  Returns the new position (the target cell's FAP
    position).
    """
    if user.speed == 0.0:
        user.stationary = True
        return user.position
    user.stationary = False
    distances = [math.dist(f.position, user.position) for f in net.faps]
    nearest = int(np.argmin(distances))
    members = net.inter_clusters[net.faps[nearest].inter_cluster_id]
    user.visited_cells.add(nearest)
    if model == SIMPLE:
        fresh = [m for m in members if m not in user.visited_cells]
        if not fresh:
            return user.position
        target = fresh[int(rng.integers(len(fresh)))]
    elif model == RANDOM_WALK:
        others = [m for m in members if m != nearest]
        target = others[int(rng.integers(len(others)))]
    else:
        raise ValueError(f"unknown mobility model {model!r}")
    user.visited_cells.add(target)
    user.position = net.faps[target].position
    return user.position


def success_prob_uncoded(profile, cache_capacity):
    """Chance of fully downloading a requested content when every FAP caches
    the same top contents whole: the head mass of the cached ranks."""
    if cache_capacity > profile.n_contents:
        raise ValueError("cache_capacity exceeds the catalog")
    return profile.head_mass(cache_capacity)


def success_prob_coded_simple(profile, alpha, cache_capacity, n_segments):
    """Full-download probability under coded placement when every contact
    happens in a fresh cell: popular head mass plus the mediocre block
    mass."""
    pop = n_popular(alpha, cache_capacity)
    med = n_mediocre(alpha, cache_capacity, n_segments)
    return profile.head_mass(pop + med)


def p_new_segment(contact_index, n_segments, literal=False):
    """Chance that the given contact yields a not-yet-held segment under the
    uniform random walk.

    The first two contacts always succeed; later contacts succeed with
    ((N_s-2)/(N_s-1))**(n-2).  ``literal=True`` skips the early-contact
    clamp and evaluates the power formula for every n, which exceeds one at
    n = 1.
    """
    if contact_index < 1:
        raise ValueError("contact_index must be >= 1")
    if n_segments < 2:
        raise ValueError("n_segments must be >= 2")
    ratio = (n_segments - 2) / (n_segments - 1)
    if literal:
        return ratio ** (contact_index - 2)
    if contact_index <= 2:
        return 1.0
    return ratio ** (contact_index - 2)


def success_prob_coded_rw(profile, alpha, cache_capacity, n_segments, mode="clamped"):
    """Full-download probability under coded placement and the uniform
    random walk.

    ``clamped`` (default): per-contact new-segment factors with the
    early-contact clamp, applied to the per-segment share of the mediocre
    mass (each contact can deliver at most one of the N_s segments).

    ``literal``: the unclamped power factor applied to the whole mediocre
    mass at every contact.  The result can exceed one and is returned as
    computed, never clipped.
    """
    pop = n_popular(alpha, cache_capacity)
    med = n_mediocre(alpha, cache_capacity, n_segments)
    pop_mass = profile.head_mass(pop)
    med_mass = profile.head_mass(pop + med) - pop_mass
    if med == 0:
        return pop_mass
    if mode == "clamped":
        factor = sum(p_new_segment(n, n_segments) for n in range(1, n_segments + 1))
        return pop_mass + factor * med_mass / n_segments
    if mode == "literal":
        factor = sum(
            p_new_segment(n, n_segments, literal=True)
            for n in range(1, n_segments + 1)
        )
        return pop_mass + factor * med_mass
    raise ValueError(f"unknown mode {mode!r}")


def _walk_cells(model, trials, n_segments, rng):
    """Cell index per (trial, contact); cells are 0..N_s-1 within the
    cluster.  Returns the visit matrix and the per-contact fresh-cell flags.
    """
    cells = np.zeros((trials, n_segments), dtype=np.int64)
    new = np.ones((trials, n_segments), dtype=bool)
    if model == SIMPLE:
        # a fresh cell every contact: any fixed enumeration works
        cells[:] = np.arange(n_segments)
        return cells, new
    if model != RANDOM_WALK:
        raise ValueError(f"unknown mobility model {model!r}")
    visited = np.zeros((trials, n_segments), dtype=bool)
    visited[:, 0] = True
    current = np.zeros(trials, dtype=np.int64)
    for n in range(1, n_segments):
        draw = rng.integers(0, n_segments - 1, size=trials)
        nxt = draw + (draw >= current)
        cells[:, n] = nxt
        new[:, n] = ~visited[np.arange(trials), nxt]
        visited[np.arange(trials), nxt] = True
        current = nxt
    return cells, new


def monte_carlo_success(inputs, trials, rng):
    """Simulate full-content downloads over N_s contacts.

    Each trial draws a content from the profile and walks the cluster per
    the configured model.  Popular contents succeed at every contact;
    mediocre contents need a fresh cell (hence a fresh segment) at every
    contact; non-popular contents always fail.  Returns the success
    estimate with a 95% normal CI and the empirical per-contact fresh-cell
    rates.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    profile = inputs.profile
    pop = n_popular(inputs.alpha, inputs.cache_capacity)
    med = n_mediocre(inputs.alpha, inputs.cache_capacity, inputs.n_segments)

    cdf = np.cumsum(profile.probabilities)
    ranks = np.searchsorted(cdf, rng.uniform(size=trials), side="right") + 1
    is_pop = ranks <= pop
    is_med = (ranks > pop) & (ranks <= pop + med)

    _, new = _walk_cells(inputs.model, trials, inputs.n_segments, rng)
    all_fresh = new.all(axis=1)
    success = is_pop | (is_med & all_fresh)

    estimate = float(success.mean())
    half = 1.96 * math.sqrt(max(estimate * (1.0 - estimate), 0.0) / trials)
    return MonteCarloSuccess(
        estimate=estimate,
        ci_halfwidth=half,
        trials=trials,
        new_segment_rate=new.mean(axis=0),
    )
