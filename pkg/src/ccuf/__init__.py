"""Cluster-centric coded UAV-aided femtocaching (CCUF) network simulator.

A seedable, deterministic model of a small-cell network where neighbouring
FAPs form inter-clusters that store orthogonal segments of moderately
popular contents, UAVs serve fast outdoor users from intra-clusters placed
by K-means, and transmission schemes (ST / JT / PT) follow content class
and link quality.
"""

from .channel import (
    AirChannelParams,
    GroundChannelParams,
    Region,
    air_ground_avg_path_loss,
    classify_region,
    fap_sinr,
    ground_path_loss_db,
    jt_sinr,
    los_probability,
    rayleigh_gain,
    server_uav_avg_path_loss,
)
from .config import (
    CatalogConfig,
    ConfigError,
    MobilityConfig,
    SchedulerConfig,
    SimConfig,
    desk_profile,
    paper_profile,
)
from .deployment import IntraClustering, kmeans_deploy
from .mobility import (
    GroundUser,
    MonteCarloSuccess,
    SuccessProbInputs,
    monte_carlo_success,
    p_new_segment,
    step,
    success_prob_coded_rw,
    success_prob_coded_simple,
    success_prob_uncoded,
)
from .placement import (
    FapCacheSelection,
    NetworkPlacement,
    UavCacheSelection,
    assign_segments,
    beta_max,
    build_network_placement,
    cache_diversity,
    cache_redundancy,
    kappa,
    replicate_across_clusters,
    reuse_offset,
    solve_fap_placement,
    solve_uav_placement,
)
from .popularity import (
    ContentCatalog,
    ContentClass,
    UserDemand,
    ZipfProfile,
    aggregate_demand,
    classify,
    zipf_popularity,
)
from .report import MetricsReport, emit, load_report, run
from .scheduler import (
    EnergyParams,
    RequestOutcome,
    Scheme,
    UavEnergyLedger,
    detect_handover,
    expected_uav_delay,
    fap_delay,
    select_scheme,
    uav_delay,
    uav_energy_step,
)
from .topology import (
    FapSite,
    Network,
    TopologyConfig,
    UavSite,
    build_topology,
    default_rssi_threshold,
    fap_covers,
    is_indoor,
)

__version__ = "0.1.0"
