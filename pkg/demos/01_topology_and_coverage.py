"""Build the hexagonal FAP network, colour cells by reuse group, and check
the shadowed coverage boundary of a single FAP.

Cells sharing a colour hold identical cache matrices after replication: a
(w, z) = (2, 1) lattice move always lands on the same colour.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ccuf import lattice
from ccuf.channel import GroundChannelParams
from ccuf.topology import TopologyConfig, build_topology, default_rssi_threshold, fap_covers

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

cfg = TopologyConfig(n_faps=49, region_radius_m=300.0, cell_radius_m=30.0, n_uavs=3)
net = build_topology(cfg, np.random.default_rng(0))
print(f"{len(net.faps)} FAPs in {len(net.inter_clusters)} inter-clusters, "
      f"{len(net.indoor_regions)} indoor rectangles")

fig, ax = plt.subplots(figsize=(7, 7))
for xmin, ymin, xmax, ymax in net.indoor_regions:
    ax.add_patch(plt.Rectangle((xmin, ymin), xmax - xmin, ymax - ymin,
                               color="gold", alpha=0.35, zorder=0))
colors = plt.cm.tab10(np.linspace(0, 1, 10))
for fap in net.faps:
    group = lattice.reuse_group(fap.lattice_coord)
    ax.scatter(*fap.position, color=colors[group], s=60, zorder=2)
    ax.annotate(str(group), fap.position, fontsize=7, ha="center", va="bottom",
                xytext=(0, 5), textcoords="offset points")
for members in net.inter_clusters:
    xs = [net.faps[f].position[0] for f in members]
    ys = [net.faps[f].position[1] for f in members]
    ax.scatter(np.mean(xs), np.mean(ys), marker="+", color="k", s=30, zorder=3)
ax.set_aspect("equal")
ax.set_title("Inter-clusters, reuse groups and indoor blocks")
fig.savefig(os.path.join(OUT, "topology.png"), dpi=130, bbox_inches="tight")
plt.close(fig)

# demonstrate the (2, 1) reuse move from the central FAP
start = net.faps[0].lattice_coord
for direction in lattice.DIRECTIONS:
    target = lattice.reuse_move(start, direction, 2, 1)
    same = lattice.reuse_group(target) == lattice.reuse_group(start)
    print(f"  move (2,1) along {direction}: lands on group "
          f"{lattice.reuse_group(target)} (same colour: {same})")

# shadowed coverage probability versus distance for one FAP
ground = GroundChannelParams(path_loss_exponent=3.0, shadowing_std_db=4.0)
fap = net.faps[0]
threshold = default_rssi_threshold(fap.tx_power_dbm, ground, fap.tx_range_m)
gen = np.random.default_rng(1)
distances = np.linspace(5.0, 60.0, 12)
prob = [
    np.mean([
        fap_covers(fap, (fap.position[0] + d, fap.position[1]),
                   gen.normal(0, ground.shadowing_std_db), ground, threshold)
        for _ in range(2000)
    ])
    for d in distances
]
fig, ax = plt.subplots(figsize=(6, 4))
ax.plot(distances, prob, marker="o")
ax.axvline(fap.tx_range_m, ls="--", color="grey", label="nominal range")
ax.set_xlabel("distance (m)")
ax.set_ylabel("coverage probability")
ax.legend()
fig.savefig(os.path.join(OUT, "coverage_probability.png"), dpi=130,
            bbox_inches="tight")
plt.close(fig)
print("wrote", os.path.join(OUT, "topology.png"))
print("wrote", os.path.join(OUT, "coverage_probability.png"))
