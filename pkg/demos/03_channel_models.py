"""Radio models: ground path loss, the LoS probability S-curve, the
air-to-ground mixture loss (with the indoor penetration penalty), and the
two readings of the server-to-UAV NLoS penalty.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ccuf.channel import (
    AirChannelParams,
    GroundChannelParams,
    air_ground_avg_path_loss,
    ground_path_loss_db,
    los_probability,
    server_uav_avg_path_loss,
)

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

ground = GroundChannelParams()
air = AirChannelParams()
altitude = 100.0

fig, axes = plt.subplots(2, 2, figsize=(10, 7))

d = np.linspace(1.0, 200.0, 300)
for eta in (2.0, 2.5, 3.0):
    g = GroundChannelParams(path_loss_exponent=eta)
    axes[0, 0].plot(d, ground_path_loss_db(d, g), label=f"exponent {eta}")
axes[0, 0].set_xlabel("distance (m)")
axes[0, 0].set_ylabel("path loss (dB)")
axes[0, 0].legend()
axes[0, 0].set_title("ground link")

horiz = np.linspace(0.0, 1500.0, 400)
axes[0, 1].plot(horiz, los_probability(horiz, altitude, air))
axes[0, 1].set_xlabel("horizontal distance (m)")
axes[0, 1].set_ylabel("LoS probability")
axes[0, 1].set_title(f"air link, altitude {altitude:.0f} m")

loss_out = air_ground_avg_path_loss(horiz, altitude, air, ground)
loss_in = air_ground_avg_path_loss(horiz, altitude, air, ground, indoor=True)
axes[1, 0].plot(horiz, loss_out, label="outdoor user")
axes[1, 0].plot(horiz, loss_in, label="indoor user (wall penalty)")
axes[1, 0].set_xlabel("horizontal distance (m)")
axes[1, 0].set_ylabel("mean path loss (dB)")
axes[1, 0].legend()
axes[1, 0].set_title("air-to-ground mixture")

d_srv = np.linspace(1.0, 300.0, 300)
p = los_probability(d_srv, altitude, air)
axes[1, 1].semilogy(
    d_srv, server_uav_avg_path_loss(d_srv, air, p), label="penalty as attenuation"
)
axes[1, 1].semilogy(
    d_srv, server_uav_avg_path_loss(d_srv, air, p, literal=True),
    ls="--", label="literal penalty (gain)",
)
axes[1, 1].set_xlabel("server-UAV distance (m)")
axes[1, 1].set_ylabel("mean channel gain")
axes[1, 1].legend()
axes[1, 1].set_title("backhaul link")

fig.tight_layout()
fig.savefig(os.path.join(OUT, "channel_models.png"), dpi=130, bbox_inches="tight")
plt.close(fig)
print("wrote", os.path.join(OUT, "channel_models.png"))
