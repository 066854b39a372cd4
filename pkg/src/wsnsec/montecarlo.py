"""Seeded Monte Carlo estimators for every analytic secrecy metric.

Reproducibility contract: trials are split into fixed-size chunks; chunk c
draws from a Philox stream keyed by (seed, c), and integer outage counts are
reduced in chunk order. Estimates are therefore bit-identical across runs and
across worker counts for fixed (seed, samples, chunk).

eval_mode selects which eavesdropper SNR the outage predicate sees:
"current" (default) judges outage on the present-time SNR while any node
selection still uses the outdated one the sink knows; "outdated" applies the
outage predicate to the sink's stale knowledge, which makes every estimator
invariant in rho (the stale SNR alone carries no correlation information).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import NodeChannel
from .channel import sample_correlated_pair, sample_snr
from .errors import DomainError
from .schemes import NetworkConfig

__all__ = [
    "McSettings",
    "McEstimate",
    "mc_sop_per_node",
    "mc_round_robin",
    "mc_best_node",
    "mc_conditional_sop",
]

_EVAL_MODES = ("current", "outdated")


@dataclass(frozen=True)
class McSettings:
    samples: int = 1_000_000
    seed: int = 42
    chunk: int = 65536
    eval_mode: str = "current"
    workers: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError(f"samples must be >= 1, got {self.samples}")
        if self.chunk < 1:
            raise DomainError(f"chunk must be >= 1, got {self.chunk}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 bits")
        if self.eval_mode not in _EVAL_MODES:
            raise DomainError(f"eval_mode must be one of {_EVAL_MODES}, got {self.eval_mode!r}")
        if self.workers < 1:
            raise DomainError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class McEstimate:
    value: float
    stderr: float
    samples: int
    seed: int

    def interval(self, z: float = 1.96) -> tuple[float, float]:
        """Normal-approximation confidence interval value +- z*stderr."""
        return self.value - z * self.stderr, self.value + z * self.stderr


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed, index]))


def _run(mc: McSettings, count_fn) -> McEstimate:
    """Map count_fn(rng, n, start_index) over chunks, reduce counts in order."""
    n_chunks = (mc.samples + mc.chunk - 1) // mc.chunk

    def one(c: int) -> int:
        start = c * mc.chunk
        n = min(mc.chunk, mc.samples - start)
        return count_fn(_chunk_rng(mc.seed, c), n, start)

    if mc.workers == 1 or n_chunks == 1:
        counts = [one(c) for c in range(n_chunks)]
    else:
        with ThreadPoolExecutor(max_workers=mc.workers) as pool:
            counts = list(pool.map(one, range(n_chunks)))
    total = 0
    for c in counts:
        total += c
    value = total / mc.samples
    stderr = math.sqrt(value * (1.0 - value) / mc.samples)
    return McEstimate(value=value, stderr=stderr, samples=mc.samples, seed=mc.seed)


def _eavesdropper_snr(pair, eval_mode: str):
    return pair.current if eval_mode == "current" else pair.outdated


def _outage_count(g_main, g_eve, rate_s: float) -> int:
    rs = np.maximum(np.log2(1.0 + g_main) - np.log2(1.0 + g_eve), 0.0)
    return int(np.count_nonzero(rs < rate_s))


def mc_sop_per_node(ch: NodeChannel, rate_s: float, mc: McSettings) -> McEstimate:
    """Simulated single-node SOP at target secrecy rate rate_s."""
    if rate_s <= 0:
        raise DomainError(f"rate_s must be > 0, got {rate_s}")

    def body(rng, n, start):
        g_main = sample_snr(ch.main, rng, n)
        pair = sample_correlated_pair(ch.wiretap, rng, n)
        return _outage_count(g_main, _eavesdropper_snr(pair, mc.eval_mode), rate_s)

    return _run(mc, body)


def mc_round_robin(cfg: NetworkConfig, mc: McSettings) -> McEstimate:
    """Simulated round-robin SOP: trial t is a transmission by node t mod N.

    Within a chunk the trials of each node are drawn as one batch, in node
    order, so the estimate does not depend on how chunks map to workers.
    """
    n_nodes = cfg.n_nodes

    def body(rng, n, start):
        node_idx = (start + np.arange(n)) % n_nodes
        count = 0
        for i, node in enumerate(cfg.nodes):
            m = int(np.count_nonzero(node_idx == i))
            if m == 0:
                continue
            g_main = sample_snr(node.main, rng, m)
            pair = sample_correlated_pair(node.wiretap, rng, m)
            count += _outage_count(g_main, _eavesdropper_snr(pair, mc.eval_mode), cfg.rate_s)
        return count

    return _run(mc, body)


def mc_best_node(cfg: NetworkConfig, mc: McSettings) -> McEstimate:
    """Simulated best-node SOP.

    Selection always maximizes log2((1+g_main)/(1+g_out)) using the outdated
    wiretap SNR (all the sink can know); the outage predicate on the selected
    node then uses the SNR given by eval_mode.
    """
    n_nodes = cfg.n_nodes

    def body(rng, n, start):
        g_main = np.empty((n_nodes, n))
        g_out = np.empty((n_nodes, n))
        g_cur = np.empty((n_nodes, n))
        for i, node in enumerate(cfg.nodes):
            g_main[i] = sample_snr(node.main, rng, n)
            pair = sample_correlated_pair(node.wiretap, rng, n)
            g_out[i] = pair.outdated
            g_cur[i] = pair.current
        metric = np.log2(1.0 + g_main) - np.log2(1.0 + g_out)
        sel = np.argmax(metric, axis=0)
        cols = np.arange(n)
        g_eve = (g_cur if mc.eval_mode == "current" else g_out)[sel, cols]
        return _outage_count(g_main[sel, cols], g_eve, cfg.rate_s)

    return _run(mc, body)


def mc_conditional_sop(
    node: NodeChannel, rate_tx: float, rate_s: float, mc: McSettings
) -> McEstimate:
    """Simulated conditional SOP: frequency of log2(1+g_eve) <= rate_tx - rate_s.

    This is the sampling mirror of the analytic wiretap-CDF form (0 exactly at
    rate_tx = rate_s). Both eval modes see a plain Weibull marginal here, so
    the estimate itself is rho-invariant; comparing it against the rho-aware
    series value is a diagnostic for the series normalization defect.
    """
    if rate_s <= 0:
        raise DomainError(f"rate_s must be > 0, got {rate_s}")
    if rate_tx < rate_s:
        raise DomainError(f"rate_tx must be >= rate_s, got {rate_tx} < {rate_s}")
    threshold = rate_tx - rate_s

    def body(rng, n, start):
        pair = sample_correlated_pair(node.wiretap, rng, n)
        g_eve = _eavesdropper_snr(pair, mc.eval_mode)
        return int(np.count_nonzero(np.log2(1.0 + g_eve) <= threshold))

    return _run(mc, body)
