"""Content library: Zipf popularity, the popular / mediocre / non-popular
split controlled by the uncoded cache share alpha, and per-user demand.

Ranks are 1-based throughout: rank 1 is the most requested content.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass

import numpy as np


class ContentClass(enum.Enum):
    POPULAR = "popular"
    MEDIOCRE = "mediocre"
    NON_POPULAR = "non_popular"


def n_popular(alpha, cache_capacity):
    """floor(alpha * C_f) with a snap guard: products that land within
    1e-9 of an integer are treated as that integer, so decimal alphas like
    0.6 do not lose a slot to float dust."""
    x = alpha * cache_capacity
    nearest = round(x)
    if abs(x - nearest) < 1e-9:
        return int(nearest)
    return int(math.floor(x))


def mediocre_upper_rank(alpha, cache_capacity, n_segments):
    """Largest rank in the mediocre class: N_s * (C_f - floor(alpha*C_f))."""
    return n_segments * (cache_capacity - n_popular(alpha, cache_capacity))


def n_mediocre(alpha, cache_capacity, n_segments):
    """Number of mediocre-classified contents; zero when the popular block
    already reaches past the coded block."""
    return max(
        0,
        mediocre_upper_rank(alpha, cache_capacity, n_segments)
        - n_popular(alpha, cache_capacity),
    )


def zipf_popularity(rank, gamma, n_contents):
    """Request probability of the content at ``rank``:
    rank**(-gamma) / sum_r r**(-gamma)."""
    if not 1 <= rank <= n_contents:
        raise ValueError(f"rank {rank} outside 1..{n_contents}")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    ranks = np.arange(1, n_contents + 1, dtype=float)
    return float(rank ** (-gamma) / np.sum(ranks ** (-gamma)))


@dataclass(frozen=True)
class ZipfProfile:
    """Normalised, rank-sorted popularity vector."""

    n_contents: int
    gamma: float
    probabilities: np.ndarray

    @classmethod
    def build(cls, n_contents, gamma):
        if n_contents < 1:
            raise ValueError("n_contents must be >= 1")
        if gamma < 0:
            raise ValueError("gamma must be >= 0")
        ranks = np.arange(1, n_contents + 1, dtype=float)
        weights = ranks ** (-float(gamma))
        probs = weights / weights.sum()
        probs.flags.writeable = False
        return cls(n_contents=n_contents, gamma=float(gamma), probabilities=probs)

    def probability(self, rank):
        return float(self.probabilities[rank - 1])

    def head_mass(self, upper_rank):
        """Total request probability of ranks 1..upper_rank."""
        upper = max(0, min(upper_rank, self.n_contents))
        return float(self.probabilities[:upper].sum())


def classify(rank, alpha, cache_capacity, n_segments):
    """Class of the content at ``rank`` for a given cache split."""
    if rank < 1:
        raise ValueError("rank must be >= 1")
    pop = n_popular(alpha, cache_capacity)
    if rank <= pop:
        return ContentClass.POPULAR
    if rank <= mediocre_upper_rank(alpha, cache_capacity, n_segments):
        return ContentClass.MEDIOCRE
    return ContentClass.NON_POPULAR


@dataclass(frozen=True)
class ContentCatalog:
    """Ranked library plus its class split and file size."""

    profile: ZipfProfile
    n_segments: int
    alpha: float
    cache_capacity: int
    content_size_mbit: float = 300.0

    @property
    def n_popular(self):
        return n_popular(self.alpha, self.cache_capacity)

    @property
    def n_mediocre(self):
        return n_mediocre(self.alpha, self.cache_capacity, self.n_segments)

    def content_class(self, rank):
        return classify(rank, self.alpha, self.cache_capacity, self.n_segments)

    def classes(self):
        """Class label per rank as an int8 array (0 popular, 1 mediocre,
        2 non-popular)."""
        n = self.profile.n_contents
        out = np.full(n, 2, dtype=np.int8)
        pop = min(self.n_popular, n)
        upper = min(
            mediocre_upper_rank(self.alpha, self.cache_capacity, self.n_segments), n
        )
        out[:pop] = 0
        if upper > pop:
            out[pop:upper] = 1
        return out

    def dump_csv(self, path):
        labels = {0: "popular", 1: "mediocre", 2: "non_popular"}
        cls = self.classes()
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["rank", "probability", "class"])
            for i, p in enumerate(self.profile.probabilities):
                writer.writerow([i + 1, f"{p:.12g}", labels[int(cls[i])]])


class UserDemand:
    """Per-user request distributions over the catalog.

    With ``dirichlet_noise == 0`` every user shares the global profile;
    otherwise each user's vector is a Dirichlet perturbation of it, redrawn
    at update epochs by the single writer that owns the demand object.
    """

    def __init__(self, profile, n_users, dirichlet_noise=0.0, rng=None):
        self.profile = profile
        self.n_users = n_users
        self.dirichlet_noise = float(dirichlet_noise)
        self._matrix = None
        if self.dirichlet_noise > 0.0:
            if rng is None:
                raise ValueError("perturbed demand needs an rng")
            self.update(rng)
        self._shared_cdf = np.cumsum(profile.probabilities)

    def update(self, rng):
        if self.dirichlet_noise <= 0.0:
            return
        conc = self.profile.probabilities / self.dirichlet_noise
        self._matrix = rng.dirichlet(conc, size=self.n_users)

    def vector(self, user):
        if self._matrix is None:
            return self.profile.probabilities
        return self._matrix[user]

    def sample_request(self, user, rng):
        """Draw a 1-based content rank from the user's distribution."""
        u = rng.uniform()
        if self._matrix is None:
            return int(np.searchsorted(self._shared_cdf, u, side="right")) + 1
        cdf = np.cumsum(self._matrix[user])
        return int(np.searchsorted(cdf, u, side="right")) + 1

    def sample_many(self, uniforms):
        """Vectorised draw: one rank per uniform, user j uses uniforms[j]."""
        uniforms = np.asarray(uniforms, dtype=float)
        if self._matrix is None:
            return (
                np.searchsorted(self._shared_cdf, uniforms, side="right").astype(int)
                + 1
            )
        cdfs = np.cumsum(self._matrix, axis=1)
        return (cdfs < uniforms[:, None]).sum(axis=1).astype(int) + 1

    def dump_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["user", "rank", "probability"])
            for j in range(self.n_users):
                vec = self.vector(j)
                for i, p in enumerate(vec):
                    writer.writerow([j, i + 1, f"{p:.12g}"])


def aggregate_demand(demand_vectors, delay_weights):
    """Demand aggregated across users, weighted by each user's expected
    access delay: weight_l = sum_j p_l^(j) * D^(j)."""
    vectors = np.asarray(demand_vectors, dtype=float)
    delays = np.asarray(delay_weights, dtype=float)
    if vectors.ndim != 2 or vectors.shape[0] != delays.shape[0]:
        raise ValueError(
            f"demand matrix {vectors.shape} does not match "
            f"{delays.shape[0]} delay weights"
        )
    if np.any(delays < 0):
        raise ValueError("delay weights must be >= 0")
    return vectors.T @ delays
