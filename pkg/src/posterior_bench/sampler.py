"""Monte Carlo sampling of the joint posterior of mean and variance.

The procedure draws, for each sample s, a variance from the inverse-gamma
marginal (as the reciprocal of a gamma draw on the precision) and then the
mean from its conditional normal given that variance.  The pairs are
independent across s, and the theta sequence alone is a sample from the
Student-t marginal of the mean.

Determinism contract: every draw is a pure function of (stream key, sample
index, draw counter) via the Philox engine in :mod:`posterior_bench.rng`.
Chunking and worker counts are execution details only; outputs are
bit-identical for any ``chunk_size`` and any number of workers.

Algorithms (fixed, documented, test-pinned):

* gamma: Marsaglia-Tsang squeeze/rejection for shape >= 1
  (d = shape - 1/3, c = 1/sqrt(9d); propose v = (1 + c*z)^3 from a normal
  z, accept when v > 0 and u < 1 - 0.0331 z^4 or
  ln u < z^2/2 + d(1 - v + ln v)), with the standard boost
  ``gamma(shape+1) * u**(1/shape)`` for shape < 1.  Each rejection
  iteration consumes exactly two blocks of the sample's own substream.
* normal: Box-Muller cosine branch, one block per draw.
* inverse gamma: reciprocal of a gamma draw with the same shape and rate.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NumericError
from .posterior import Posterior, precision_marginal_params
from .rng import CounterStream, derive_key, standard_normal, uniform01

DEFAULT_CHUNK_SIZE = 4096

# Sub-stream labels: the variance and mean draws of sample i live on
# distinct keys so their consumption patterns cannot interfere.
_SIGMA_LABEL = "sigma_sq"
_THETA_LABEL = "theta"


@dataclass(frozen=True)
class SamplerConfig:
    """How many joint samples to draw and from which seed.

    ``chunk_size`` is the batching granularity for parallel execution; it
    never affects the values drawn.
    """

    seed: int
    num_samples: int
    chunk_size: int = DEFAULT_CHUNK_SIZE

    def __post_init__(self) -> None:
        if int(self.num_samples) != self.num_samples or self.num_samples < 1:
            raise NumericError(f"num_samples must be a positive integer, got {self.num_samples!r}")
        if int(self.chunk_size) != self.chunk_size or self.chunk_size < 1:
            raise NumericError(f"chunk_size must be a positive integer, got {self.chunk_size!r}")


@dataclass(frozen=True, eq=False)
class JointSamples:
    """Paired posterior draws of the mean (theta) and variance (sigma_sq),
    with the seed and posterior that produced them."""

    theta: np.ndarray
    sigma_sq: np.ndarray
    seed: int
    posterior: Posterior

    def __post_init__(self) -> None:
        theta = np.asarray(self.theta, dtype=float)
        sigma_sq = np.asarray(self.sigma_sq, dtype=float)
        if theta.ndim != 1 or sigma_sq.ndim != 1 or theta.size != sigma_sq.size:
            raise NumericError("theta and sigma_sq must be 1-d sequences of equal length")
        if theta.size < 1:
            raise NumericError("at least one joint sample is required")
        if not np.all(np.isfinite(theta)):
            raise NumericError("theta draws must be finite")
        if not (np.all(np.isfinite(sigma_sq)) and np.all(sigma_sq > 0.0)):
            raise NumericError("sigma_sq draws must be positive and finite")
        theta.setflags(write=False)
        sigma_sq.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "sigma_sq", sigma_sq)

    @property
    def num_samples(self) -> int:
        return self.theta.size


def _standard_gamma(key: int, index: np.ndarray, shape: float, counter: np.ndarray):
    """One standard-gamma draw per element of ``index``.

    ``counter`` gives each element's starting draw counter; the returned
    pair is (draws, counter after consumption).  An element's consumption
    depends only on its own stream, so batching is irrelevant.
    """
    index = np.asarray(index, dtype=np.uint64)
    ctr = np.array(counter, dtype=np.uint64, copy=True)
    a = float(shape)
    boost = None
    if a < 1.0:
        boost = uniform01(key, index, ctr) ** (1.0 / a)
        ctr = ctr + np.uint64(1)
        a += 1.0
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(index.shape, dtype=float)
    pending = np.arange(index.size)
    while pending.size:
        z = standard_normal(key, index[pending], ctr[pending])
        u = uniform01(key, index[pending], ctr[pending] + np.uint64(1))
        ctr[pending] += np.uint64(2)
        v = 1.0 + c * z
        v = v * v * v
        positive = v > 0.0
        squeeze = u < 1.0 - 0.0331 * (z * z) * (z * z)
        with np.errstate(invalid="ignore", divide="ignore"):
            full = np.log(u) < 0.5 * z * z + d * (1.0 - v + np.log(np.where(positive, v, 1.0)))
        accept = positive & (squeeze | full)
        out[pending[accept]] = d * v[accept]
        pending = pending[~accept]
    if boost is not None:
        out = out * boost
    return out, ctr


def _check_shape_rate(shape: float, rate: float) -> None:
    if not (math.isfinite(shape) and shape > 0.0):
        raise NumericError(f"gamma shape must be positive, got {shape!r}")
    if not (math.isfinite(rate) and rate > 0.0):
        raise NumericError(f"gamma rate must be positive, got {rate!r}")


def sample_gamma(shape: float, rate: float, stream: CounterStream) -> float:
    """One gamma(shape, rate) draw from the stream's substream; advances it."""
    _check_shape_rate(shape, rate)
    idx = np.array([stream.index], dtype=np.uint64)
    ctr = np.array([stream.counter], dtype=np.uint64)
    draws, after = _standard_gamma(stream.key, idx, shape, ctr)
    stream.counter = int(after[0])
    return float(draws[0] / rate)


def sample_inverse_gamma(shape: float, rate_of_precision: float, stream: CounterStream) -> float:
    """One inverse-gamma draw: the reciprocal of gamma(shape, rate)."""
    return 1.0 / sample_gamma(shape, rate_of_precision, stream)


def sample_normal(mean: float, variance: float, stream: CounterStream) -> float:
    """One normal(mean, variance) draw (Box-Muller); advances the stream."""
    if not (math.isfinite(variance) and variance > 0.0):
        raise NumericError(f"normal variance must be positive, got {variance!r}")
    ctr = stream.take(1)
    z = standard_normal(stream.key, np.array([stream.index], dtype=np.uint64), ctr)
    return float(mean + math.sqrt(variance) * z[0])


def gamma_draws(shape: float, rate: float, key: int, num: int, start_index: int = 0) -> np.ndarray:
    """Vectorized gamma(shape, rate) draws, one per element index
    ``start_index .. start_index+num-1`` (draw counters start at zero).

    Element i of the result equals ``sample_gamma`` run on
    ``CounterStream(key, start_index + i)``.
    """
    _check_shape_rate(shape, rate)
    idx = np.arange(start_index, start_index + num, dtype=np.uint64)
    draws, _ = _standard_gamma(key, idx, shape, np.zeros(num, dtype=np.uint64))
    return draws / rate


def inverse_gamma_draws(shape: float, rate_of_precision: float, key: int, num: int, start_index: int = 0) -> np.ndarray:
    """Vectorized inverse-gamma draws (reciprocals of gamma draws)."""
    return 1.0 / gamma_draws(shape, rate_of_precision, key, num, start_index)


def normal_draws(mean: float, variance: float, key: int, num: int, start_index: int = 0) -> np.ndarray:
    """Vectorized normal(mean, variance) draws, one per element index."""
    if not (math.isfinite(variance) and variance > 0.0):
        raise NumericError(f"normal variance must be positive, got {variance!r}")
    idx = np.arange(start_index, start_index + num, dtype=np.uint64)
    z = standard_normal(key, idx, np.zeros(num, dtype=np.uint64))
    return mean + math.sqrt(variance) * z


def sample_joint(post: Posterior, config: SamplerConfig, workers: int = 1) -> JointSamples:
    """Draw ``config.num_samples`` independent (theta, sigma_sq) pairs.

    For sample s: sigma_sq[s] is an inverse-gamma(nu_n/2, nu_n*sigma_n_sq/2)
    draw, theta[s] a normal(mu_n, sigma_sq[s]/kappa_n) draw.  Sample s uses
    element index s on two keys derived from the seed, so the output is
    independent of chunking and worker scheduling.
    """
    if workers < 1:
        raise NumericError(f"workers must be >= 1, got {workers!r}")
    shape, rate = precision_marginal_params(post)
    key_sigma = derive_key(config.seed, _SIGMA_LABEL)
    key_theta = derive_key(config.seed, _THETA_LABEL)
    total = config.num_samples
    theta = np.empty(total, dtype=float)
    sigma_sq = np.empty(total, dtype=float)

    def fill(lo: int, hi: int) -> None:
        num = hi - lo
        idx = np.arange(lo, hi, dtype=np.uint64)
        g, _ = _standard_gamma(key_sigma, idx, shape, np.zeros(num, dtype=np.uint64))
        s2 = 1.0 / (g / rate)
        z = standard_normal(key_theta, idx, np.zeros(num, dtype=np.uint64))
        theta[lo:hi] = post.mu_n + np.sqrt(s2 / post.kappa_n) * z
        sigma_sq[lo:hi] = s2

    bounds = [(lo, min(lo + config.chunk_size, total)) for lo in range(0, total, config.chunk_size)]
    if workers == 1 or len(bounds) == 1:
        for lo, hi in bounds:
            fill(lo, hi)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(lambda b: fill(*b), bounds))
    return JointSamples(theta=theta, sigma_sq=sigma_sq, seed=config.seed, posterior=post)


def samples_csv(samples: JointSamples) -> str:
    """Columnar text form of the draws: header ``index,theta,sigma_sq``,
    full round-trip precision."""
    lines = ["index,theta,sigma_sq"]
    for i in range(samples.num_samples):
        lines.append(f"{i},{float(samples.theta[i])!r},{float(samples.sigma_sq[i])!r}")
    return "\n".join(lines) + "\n"


def samples_envelope(samples: JointSamples) -> dict:
    """JSON-ready provenance envelope: seed, sample count, and the
    posterior parameters the draws came from."""
    post = samples.posterior
    return {
        "seed": samples.seed,
        "num_samples": samples.num_samples,
        "posterior": {
            "mu_n": post.mu_n,
            "kappa_n": post.kappa_n,
            "nu_n": post.nu_n,
            "sigma_n_sq": post.sigma_n_sq,
        },
    }


def parse_samples_csv(text: str, seed: int, posterior: Posterior) -> JointSamples:
    """Rebuild JointSamples from ``samples_csv`` output plus its envelope
    fields."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "index,theta,sigma_sq":
        raise NumericError("expected header 'index,theta,sigma_sq'")
    theta = np.empty(len(lines) - 1)
    sigma_sq = np.empty(len(lines) - 1)
    for row, line in enumerate(lines[1:]):
        _, t, s = line.split(",")
        theta[row] = float(t)
        sigma_sq[row] = float(s)
    return JointSamples(theta=theta, sigma_sq=sigma_sq, seed=seed, posterior=posterior)
