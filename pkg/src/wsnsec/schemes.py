"""Network-level secrecy metrics: round-robin, best-node, and conditional SOP."""

import math
from dataclasses import dataclass

from .analytic import (
    NodeChannel,
    QuadratureSettings,
    SeriesSettings,
    _clamp_probability,
    outdated_wiretap_cdf,
    sop_per_node,
)
from .errors import DomainError

__all__ = [
    "NetworkConfig",
    "secrecy_rate",
    "sop_round_robin",
    "sop_best_node",
    "conditional_sop",
]


@dataclass(frozen=True)
class NetworkConfig:
    """N sensor nodes sharing a sink, with target secrecy rate and codeword rate.

    All main links must be identically distributed; wiretap links may differ
    per node. rate_tx defaults to rate_s (zero rate redundancy).
    """

    nodes: tuple[NodeChannel, ...]
    rate_s: float
    rate_tx: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if len(self.nodes) < 1:
            raise DomainError("need at least one node")
        if self.rate_s <= 0:
            raise DomainError(f"rate_s must be > 0, got {self.rate_s}")
        if self.rate_tx is None:
            object.__setattr__(self, "rate_tx", float(self.rate_s))
        if self.rate_tx < self.rate_s:
            raise DomainError(
                f"rate_tx must be >= rate_s, got rate_tx={self.rate_tx} < rate_s={self.rate_s}"
            )
        first = self.nodes[0].main
        for i, node in enumerate(self.nodes[1:], start=1):
            if node.main != first:
                raise DomainError(
                    f"main links must be identical across nodes, node {i} differs"
                )

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)


def secrecy_rate(gamma_s: float, gamma_e: float) -> float:
    """Achievable secrecy rate max(log2(1+gamma_s) - log2(1+gamma_e), 0)."""
    if gamma_s < 0 or gamma_e < 0:
        raise DomainError("SNRs must be >= 0")
    return max(math.log2(1.0 + gamma_s) - math.log2(1.0 + gamma_e), 0.0)


def sop_round_robin(
    cfg: NetworkConfig,
    s: SeriesSettings | None = None,
    q: QuadratureSettings | None = None,
) -> float:
    """SOP under round-robin scheduling: arithmetic mean of per-node SOPs.

    Exactly flat in the node count for identical nodes (the common value is
    returned as is, no mean rounding).
    """
    vals = [sop_per_node(node, cfg.rate_s, s, q) for node in cfg.nodes]
    if all(v == vals[0] for v in vals[1:]):
        return vals[0]
    return sum(vals) / len(vals)


def sop_best_node(
    cfg: NetworkConfig,
    s: SeriesSettings | None = None,
    q: QuadratureSettings | None = None,
) -> float:
    """SOP under best-node scheduling: product of per-node SOPs.

    The product form treats per-node secrecy events as independent. The Monte
    Carlo counterpart (selection on outdated CSI, outage on current CSI) is
    the semantically faithful estimate of the same quantity.
    """
    out = 1.0
    for node in cfg.nodes:
        out *= sop_per_node(node, cfg.rate_s, s, q)
    return out


def conditional_sop(
    node: NodeChannel,
    rate_tx: float,
    rate_s: float,
    s: SeriesSettings | None = None,
) -> float:
    """Conditional SOP of one node: wiretap CDF at 2^(rate_tx - rate_s) - 1.

    Exactly 0 at rate_tx = rate_s. Clamped to [0, 1]; for rho < 1 the series
    CDF can overshoot 1 at large arguments (normalization defect), which logs
    a warning.
    """
    if rate_s <= 0:
        raise DomainError(f"rate_s must be > 0, got {rate_s}")
    if rate_tx < rate_s:
        raise DomainError(f"rate_tx must be >= rate_s, got {rate_tx} < {rate_s}")
    x = 2.0 ** (rate_tx - rate_s) - 1.0
    raw = float(outdated_wiretap_cdf(x, node.wiretap, s))
    return _clamp_probability(raw, "conditional_sop")
