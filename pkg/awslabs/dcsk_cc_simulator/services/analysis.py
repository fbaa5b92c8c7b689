# Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Analytical BER and throughput of the cooperative DCSK system.

The system BER combines three link error probabilities, each the average of
a conditional BER over a gamma-distributed SNR:

    BER = BER_SR * BER_SD + (1 - BER_SR) * BER_D,   gamma_D = gamma_SD + gamma_RD

The density of gamma_D is evaluated with the Moschopoulos single-gamma
series. The SNR convention is received frame energy over N0, so a link's
mean SNR is (Eb/N0) / (2 d**2) in the cooperative phases.
"""

import collections
import functools
import itertools
import math
import numpy as np
from awslabs.dcsk_cc_simulator.consts import (
    EQUAL_SCALE_RTOL,
    NEGLIGIBLE_COMPONENT_RATIO,
    QUAD_EPSABS,
    QUAD_EPSREL,
    QUAD_LIMIT,
    QUAD_TAIL_SIGMAS,
    ROOT_BRACKET_DB,
    SERIES_CHUNK,
    SERIES_CONSECUTIVE_SMALL_TERMS,
    SERIES_MAX_TERMS,
    SERIES_TERM_RTOL,
)
from awslabs.dcsk_cc_simulator.models.analysis_models import (
    GammaParams,
    MoschopoulosSeries,
    SystemConfig,
)
from awslabs.dcsk_cc_simulator.models.common import (
    BerKernel,
    Combining,
    RelayModel,
    ThroughputSystem,
)
from awslabs.dcsk_cc_simulator.services.dcsk_common import ConfigurationError, NumericalError
from loguru import logger
from scipy import integrate, optimize, special, stats
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union


ArrayLike = Union[float, np.ndarray]


def _as_output(value: np.ndarray, like: ArrayLike) -> ArrayLike:
    return float(value) if np.ndim(like) == 0 else value


# Conditional BER kernels


def conditional_ber(gamma: ArrayLike, beta: int) -> ArrayLike:
    """Gaussian-approximation BER of the GML receiver at a fixed SNR.

    BER(gamma) = 1/2 erfc([(4 / gamma)(1 + beta / (2 gamma))]**(-1/2)), with the
    exponent applied to the whole bracket so that BER -> 0 as gamma -> inf.

    Args:
        gamma: SNR (> 0), scalar or array.
        beta: Sub-spreading factor.

    Returns:
        BER in (0, 1/2).

    Raises:
        ValueError: If any gamma is not positive.
    """
    g = np.asarray(gamma, dtype=np.float64)
    if np.any(~(g > 0)):
        raise ValueError(f'gamma must be positive, got {gamma}')
    return _as_output(_ga_ber(g, beta), gamma)


def _ga_ber(g: np.ndarray, beta: float) -> np.ndarray:
    with np.errstate(divide='ignore'):
        inv_arg_sq = 4.0 / g + 2.0 * beta / (g * g)
        ber = 0.5 * special.erfc(1.0 / np.sqrt(inv_arg_sq))
    return np.where(g > 0, ber, 0.5)


def exact_conditional_ber(gamma: ArrayLike, beta: int, branches: int = 1) -> ArrayLike:
    """Exact BER of the GML receiver on an AWGN link.

    With the diagonal excluded, metric_b0 - metric_b1 is a scaled difference of a
    non-central and a central chi-square variate with beta * branches degrees of
    freedom each, so the error probability is a non-central F CDF at 1.

    Args:
        gamma: Total SNR over all branches (>= 0), scalar or array.
        beta: Sub-spreading factor.
        branches: Metric-level EGC branches.

    Returns:
        BER in (0, 1/2], exactly 1/2 at gamma = 0.

    Raises:
        ValueError: If gamma is negative or branches < 1.
    """
    g = np.asarray(gamma, dtype=np.float64)
    if np.any(~(g >= 0)):
        raise ValueError(f'gamma must be non-negative, got {gamma}')
    if branches < 1:
        raise ValueError(f'branches must be at least 1, got {branches}')
    return _as_output(_exact_ber(g, beta, branches), gamma)


def _exact_ber(g: np.ndarray, beta: float, branches: int) -> np.ndarray:
    dof = beta * branches
    ber = stats.ncf.cdf(1.0, dof, dof, 2.0 * np.maximum(g, 1e-300))
    return np.where(g > 0, ber, 0.5)


def _kernel(kernel: BerKernel, beta: int, branches: int) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized conditional BER for the chosen kernel, 1/2 at gamma = 0."""
    if kernel == BerKernel.EXACT:
        return lambda g: _exact_ber(np.asarray(g, dtype=np.float64), beta, branches)
    # EGC branches add noise x noise terms, which the approximation sees as a longer carrier
    return lambda g: _ga_ber(np.asarray(g, dtype=np.float64), beta * branches)


# Link SNR parameters


def _amplitude_moments(m: Optional[float]) -> Dict[int, float]:
    """E[a**e], e = 1 .. 4, of a unit-power Nakagami amplitude (all 1 for fixed gains)."""
    if m is None:
        return {e: 1.0 for e in range(1, 5)}
    return {
        e: math.exp(special.gammaln(m + e / 2) - special.gammaln(m) - (e / 2) * math.log(m))
        for e in range(1, 5)
    }


def _product_moment(indices: Sequence[int], moments: Dict[int, float]) -> float:
    return math.prod(moments[count] for count in collections.Counter(indices).values())


@functools.lru_cache(maxsize=256)
def despread_energy_moments(
    carriers: int, delays: Tuple[int, ...], beta: int, m: Optional[float]
) -> Tuple[float, float]:
    """Mean and variance of the despread signal energy of unit-power path components.

    Every (carrier, path) component has an independent amplitude a_i. The energy
    is sum_i a_i**2 + 2 sum_{i<j} a_i a_j rho_ij, where rho_ij is the overlap of
    the two delayed carriers over a sub-segment, normalized by beta. For one
    zero-mean carrier at lag d, rho has mean -(beta - d) / beta**2; for two
    independent carriers it has mean 0. Both have variance (beta - d) / beta**2,
    and pairs with the same carriers and lag share one rho.

    Args:
        carriers: Independently modulated copies adding at the receiver (forwarding relays).
        delays: Chip delay of each path.
        beta: Sub-spreading factor.
        m: Nakagami factor of every path, None for fixed path gains.

    Returns:
        (mean, variance) in units of one component's mean power.
    """
    moments = _amplitude_moments(m)
    components = [(c, tau) for c in range(carriers) for tau in delays]
    quadratic: List[Tuple[Tuple[int, ...], float]] = [
        ((i, i), 1.0) for i in range(len(components))
    ]
    groups: Dict[Tuple[int, int, int], List[Tuple[int, int]]] = collections.defaultdict(list)
    for (i, (ci, ti)), (j, (cj, tj)) in itertools.combinations(enumerate(components), 2):
        if ci == cj:
            lag = abs(tj - ti)
            quadratic.append(((i, j), -2.0 * (beta - lag) / beta**2))
        else:
            lag = tj - ti
        groups[(ci, cj, lag)].append((i, j))

    mean = sum(w * _product_moment(idx, moments) for idx, w in quadratic)
    second = sum(
        wa * wb * _product_moment(a + b, moments)
        for (a, wa), (b, wb) in itertools.product(quadratic, repeat=2)
    )
    fluctuation = sum(
        4.0
        * (beta - abs(lag)) / beta**2
        * sum(_product_moment(p + q, moments) for p, q in itertools.product(pairs, repeat=2))
        for (_, _, lag), pairs in groups.items()
    )
    return mean, second - mean**2 + fluctuation


def correlated_link_params(
    mean_snr: float,
    beta: int,
    delays: Sequence[int],
    m: Optional[float] = None,
    carriers: int = 1,
) -> GammaParams:
    """Moment-matched gamma SNR of a multipath link with chaotic-carrier correlation.

    Args:
        mean_snr: Nominal mean SNR summed over carriers and paths.
        beta: Sub-spreading factor.
        delays: Chip delay of each path.
        m: Nakagami factor of every path, None for fixed path gains.
        carriers: Independent carriers adding at the receiver.

    Returns:
        The gamma law with the mean and variance of the despread SNR.

    Raises:
        ConfigurationError: If the SNR has no spread (one fixed-gain path on one carrier).
    """
    delays = tuple(int(d) for d in delays)
    mean, variance = despread_energy_moments(carriers, delays, beta, m)
    power = mean_snr / (carriers * len(delays))
    # a path delayed by tau keeps beta - tau chips of each sub-segment; the spilled
    # chips add equally to both candidate metrics on average over the Walsh rows
    power *= 1.0 - float(np.mean(delays)) / beta
    if variance <= 0:
        raise ConfigurationError('A single fixed-gain path has a deterministic SNR')
    return GammaParams(shape=mean**2 / variance, scale=power * variance / mean)


def _link_params(cfg: SystemConfig, mean_snr: float, carriers: int = 1) -> GammaParams:
    if cfg.delays is None:
        shape = carriers * cfg.diversity_shape
        return GammaParams(shape=shape, scale=mean_snr / shape)
    return correlated_link_params(mean_snr, cfg.beta, cfg.delays, cfg.m, carriers)


def gamma_params_sr(cfg: SystemConfig) -> GammaParams:
    """SNR of one user-to-user link in phase 1: G(mL, (Eb/N0) / (2 mL d_sr**2))."""
    return _link_params(cfg, cfg.eb_over_n0 / (2 * cfg.geometry.d_sr**2))


def gamma_params_sd(cfg: SystemConfig) -> GammaParams:
    """SNR of the direct link in phase 1: G(mL, (Eb/N0) / (2 mL d_sd**2))."""
    return _link_params(cfg, cfg.eb_over_n0 / (2 * cfg.geometry.d_sd**2))


def gamma_params_rd(cfg: SystemConfig, relays: Optional[int] = None) -> GammaParams:
    """Combined SNR of the relays' phase-2 forwards of one user.

    Each of the N - 1 relays spends Eb / (2(N - 1)) on the user, so the sum over
    k forwarding relays is G(k mL, (Eb/N0) / (2(N - 1) mL d_rd**2)). With path
    delays configured the k carriers also overlap at random, which widens the
    SNR spread.

    Args:
        cfg: System configuration.
        relays: Number of forwarding relays k, default N - 1.

    Returns:
        The gamma parameters of the combined relay SNR.

    Raises:
        ConfigurationError: If N < 2 or relays is outside [1, N - 1].
    """
    if cfg.num_users < 2:
        raise ConfigurationError('Relay links need at least 2 users')
    others = cfg.num_users - 1
    relays = others if relays is None else relays
    if not 1 <= relays <= others:
        raise ConfigurationError(f'relays must be in [1, {others}], got {relays}')
    return _link_params(cfg, relays * cfg.eb_over_n0 / (2 * others * cfg.geometry.d_rd**2), relays)


def gamma_pdf(x: ArrayLike, p: GammaParams) -> ArrayLike:
    """Gamma density G(x; shape, scale)."""
    return _as_output(stats.gamma.pdf(x, p.shape, scale=p.scale), x)


# Sum of gammas


def _significant_components(components: Sequence[GammaParams]) -> Tuple[GammaParams, ...]:
    total = sum(c.mean for c in components)
    kept = tuple(c for c in components if c.mean >= NEGLIGIBLE_COMPONENT_RATIO * total)
    if len(kept) < len(components):
        logger.warning(
            f'Dropped {len(components) - len(kept)} negligible gamma component(s) '
            f'with mean below {NEGLIGIBLE_COMPONENT_RATIO:g} of the total'
        )
    return kept


def _truncation_point(log_w: np.ndarray) -> Optional[int]:
    """Term count once 5 consecutive terms past the mode fall below the relative tolerance."""
    w = np.exp(log_w - np.max(log_w))
    small = w < SERIES_TERM_RTOL * np.cumsum(w)
    small[: int(np.argmax(w)) + 1] = False
    window = np.ones(SERIES_CONSECUTIVE_SMALL_TERMS, dtype=np.int64)
    runs = np.flatnonzero(np.convolve(small.astype(np.int64), window, mode='valid') == window.size)
    if runs.size == 0:
        return None
    return int(runs[0]) + SERIES_CONSECUTIVE_SMALL_TERMS


def _single_term(
    components: Tuple[GammaParams, ...], rho: float, y0: float
) -> MoschopoulosSeries:
    return MoschopoulosSeries(
        components=components,
        log_c=0.0,
        rho=rho,
        y0=y0,
        log_weights=np.zeros(1),
        z=np.zeros(0),
        terms=1,
        residual=0.0,
    )


def _negative_binomial_weights(
    x_other: float, p: float
) -> Tuple[np.ndarray, int, float]:
    """Two-component weights: C xi_i is the NB(x_other, p) pmf with p = y0 / y_other."""
    log_w = np.empty(0)
    while True:
        start = log_w.size
        idx = np.arange(start, start + SERIES_CHUNK)
        log_w = np.concatenate([log_w, stats.nbinom.logpmf(idx, x_other, p)])
        terms = _truncation_point(log_w)
        if terms is not None:
            return log_w[:terms], terms, float(stats.nbinom.sf(terms - 1, x_other, p))
        if log_w.size >= SERIES_MAX_TERMS:
            terms = SERIES_MAX_TERMS
            return log_w[:terms], terms, float(stats.nbinom.sf(terms - 1, x_other, p))


def _recursive_weights(
    shapes: np.ndarray, ratios: np.ndarray, log_c: float
) -> Tuple[np.ndarray, np.ndarray, int, float]:
    """Mixture weights from xi_i = (1/i) sum_{j=1}^{i} j z_j xi_{i-j}.

    The xi history is rescaled whenever it grows large, so only log(C xi_i) is
    ever formed.
    """
    with np.errstate(divide='ignore'):
        log_ratios = np.log(ratios)  # log(1 - y0 / y_k), -inf for the smallest scale
    xi = np.zeros(SERIES_MAX_TERMS)
    jz = np.zeros(SERIES_MAX_TERMS)
    log_w = np.full(SERIES_MAX_TERMS, -np.inf)
    xi[0] = 1.0
    log_w[0] = log_c
    log_scale = 0.0
    terms = None
    for i in range(1, SERIES_MAX_TERMS):
        jz[i - 1] = float(np.sum(shapes * np.exp(i * log_ratios)))
        value = float(np.dot(jz[:i], xi[i - 1 :: -1])) / i
        xi[i] = value
        if value > 1e250:
            xi[: i + 1] /= value
            log_scale += math.log(value)
        log_w[i] = log_c + log_scale + math.log(xi[i]) if xi[i] > 0 else -np.inf
        if (i + 1) % SERIES_CHUNK == 0:
            terms = _truncation_point(log_w[: i + 1])
            if terms is not None:
                break
    if terms is None:
        terms = _truncation_point(log_w) or SERIES_MAX_TERMS
    log_w = log_w[:terms]
    residual = 1.0 - float(np.sum(np.exp(log_w)))
    z = jz[: terms - 1] / np.arange(1, terms)
    return log_w, z, terms, residual


def moschopoulos_series(
    components: Sequence[GammaParams], closed_form: bool = True
) -> MoschopoulosSeries:
    """Expand the density of a sum of independent gammas in gamma densities of scale y0.

    Components whose mean is negligible are dropped. Equal scales (within a
    relative 1e-12) collapse to a single gamma term. Two components use the
    closed-form negative-binomial coefficients unless closed_form is False.

    Args:
        components: The summed gamma variates.
        closed_form: Use the negative-binomial form for two components.

    Returns:
        The truncated series.

    Raises:
        ValueError: If no components are given.
        NumericalError: If the series has not converged within the term cap.
    """
    if not components:
        raise ValueError('At least one gamma component is required')
    kept = _significant_components(components)
    scales = np.array([c.scale for c in kept])
    shapes = np.array([c.shape for c in kept])
    y0 = float(scales.min())
    rho = float(shapes.sum())
    if np.all(scales - y0 <= EQUAL_SCALE_RTOL * scales.max()):
        return _single_term(kept, rho, y0)

    log_c = float(np.sum(shapes * np.log(y0 / scales)))
    if closed_form and len(kept) == 2:
        other = int(np.argmax(scales))
        p = y0 / scales[other]
        log_w, terms, residual = _negative_binomial_weights(float(shapes[other]), p)
        z = shapes[other] * (1.0 - p) ** np.arange(1, terms) / np.arange(1, terms)
    else:
        log_w, z, terms, residual = _recursive_weights(shapes, 1.0 - y0 / scales, log_c)

    if terms >= SERIES_MAX_TERMS and _truncation_point(log_w) is None:
        logger.error(f'Moschopoulos series did not converge in {SERIES_MAX_TERMS} terms')
        raise NumericalError(
            f'Sum-of-gammas series did not converge within {SERIES_MAX_TERMS} terms',
            residual=residual,
        )
    logger.debug(f'Moschopoulos series: {terms} terms, residual {residual:.3e}')
    return MoschopoulosSeries(
        components=kept,
        log_c=log_c,
        rho=rho,
        y0=y0,
        log_weights=log_w,
        z=np.asarray(z, dtype=np.float64),
        terms=terms,
        residual=residual,
    )


@functools.lru_cache(maxsize=128)
def _cached_series(components: Tuple[GammaParams, ...]) -> MoschopoulosSeries:
    return moschopoulos_series(components)


def series_pdf(series: MoschopoulosSeries, x: ArrayLike) -> ArrayLike:
    """Evaluate the density represented by a series."""
    xs = np.asarray(x, dtype=np.float64)
    if series.terms == 1:
        return _as_output(stats.gamma.pdf(xs, series.rho, scale=series.y0), x)
    shapes = series.rho + np.arange(series.terms)
    log_terms = stats.gamma.logpdf(xs[..., None], shapes, scale=series.y0) + series.log_weights
    return _as_output(np.exp(special.logsumexp(log_terms, axis=-1)), x)


def series_cdf(series: MoschopoulosSeries, x: ArrayLike) -> ArrayLike:
    """Evaluate the distribution function represented by a series."""
    xs = np.asarray(x, dtype=np.float64)
    if series.terms == 1:
        return _as_output(special.gammainc(series.rho, xs / series.y0), x)
    shapes = series.rho + np.arange(series.terms)
    cdf = special.gammainc(shapes, xs[..., None] / series.y0) @ series.weights
    return _as_output(np.clip(cdf, 0.0, 1.0), x)


def _check_positive(x: ArrayLike, name: str) -> None:
    if np.any(~(np.asarray(x, dtype=np.float64) > 0)):
        raise ValueError(f'{name} must be positive, got {x}')


def sum_gamma_pdf(p2: GammaParams, p3: GammaParams, gamma_d: ArrayLike) -> ArrayLike:
    """Density of gamma_D = gamma_2 + gamma_3 for independent gamma summands.

    Args:
        p2: First summand.
        p3: Second summand.
        gamma_d: Evaluation point(s), > 0.

    Returns:
        Non-negative density value(s).

    Raises:
        ValueError: If gamma_d is not positive.
        NumericalError: If the series does not converge.
    """
    _check_positive(gamma_d, 'gamma_d')
    return series_pdf(_cached_series((p2, p3)), gamma_d)


def sum_gamma_cdf(p2: GammaParams, p3: GammaParams, x: ArrayLike) -> ArrayLike:
    """Distribution function of gamma_2 + gamma_3, 0 for x <= 0."""
    xs = np.maximum(np.asarray(x, dtype=np.float64), 0.0)
    return _as_output(np.asarray(series_cdf(_cached_series((p2, p3)), xs)), x)


# Averaged BERs


def _upper_limit(components: Sequence[GammaParams]) -> float:
    return sum(
        c.scale * (c.shape + QUAD_TAIL_SIGMAS * math.sqrt(c.shape) + QUAD_TAIL_SIGMAS)
        for c in components
    )


def _integrate(integrand: Callable[[float], float], upper: float, peak: float, what: str) -> float:
    result = integrate.quad(
        integrand,
        0.0,
        upper,
        points=[peak] if 0.0 < peak < upper else None,
        epsabs=QUAD_EPSABS,
        epsrel=QUAD_EPSREL,
        limit=QUAD_LIMIT,
        full_output=1,
    )
    value, abserr = float(result[0]), float(result[1])
    if len(result) == 4:
        if abserr > max(1e-6 * abs(value), 1e-13):
            logger.error(f'Quadrature for {what} failed: {result[3]}')
            raise NumericalError(f'Quadrature for {what} missed its tolerance', residual=abserr)
        logger.warning(f'Quadrature for {what} accepted with error estimate {abserr:.3e}')
    return min(max(value, 0.0), 0.5)


def link_ber(
    p: GammaParams, beta: int, kernel: BerKernel = BerKernel.GAUSSIAN, branches: int = 1
) -> float:
    """Average the conditional BER over a gamma-distributed link SNR.

    Args:
        p: Link SNR distribution.
        beta: Sub-spreading factor.
        kernel: Conditional BER kernel.
        branches: Metric-level EGC branches seen by the receiver.

    Returns:
        The averaged BER.

    Raises:
        NumericalError: If the quadrature misses its tolerance.
    """
    ber = _kernel(kernel, beta, branches)
    frozen = stats.gamma(p.shape, scale=p.scale)
    return _integrate(
        lambda g: float(ber(g) * frozen.pdf(g)),
        _upper_limit([p]),
        p.mean,
        f'link BER (shape {p.shape:g}, scale {p.scale:g})',
    )


def destination_ber(
    p_sd: GammaParams,
    p_rd: GammaParams,
    beta: int,
    kernel: BerKernel = BerKernel.GAUSSIAN,
    branches: int = 1,
) -> float:
    """Average the conditional BER over gamma_D = gamma_SD + gamma_RD.

    Args:
        p_sd: Direct-link SNR distribution.
        p_rd: Combined relay SNR distribution.
        beta: Sub-spreading factor.
        kernel: Conditional BER kernel.
        branches: Metric-level EGC branches seen by the destination.

    Returns:
        The averaged BER.

    Raises:
        NumericalError: If the series or the quadrature fails.
    """
    series = _cached_series((p_sd, p_rd))
    if series.terms == 1:
        merged = GammaParams(shape=series.rho, scale=series.y0)
        return link_ber(merged, beta, kernel, branches)
    ber = _kernel(kernel, beta, branches)
    return _integrate(
        lambda g: float(ber(g) * series_pdf(series, g)),
        _upper_limit(series.components),
        sum(c.mean for c in series.components),
        'destination BER',
    )


def system_ber_cc(cfg: SystemConfig) -> float:
    """BER of the cooperative system under decode-and-forward.

    ALL_OR_NOTHING: BER_SR * BER_SD + (1 - BER_SR) * BER_D.
    PER_RELAY: sum_k Binom(k; N - 1, 1 - BER_SR) * BER_D(k), where BER_D(k) has
    k forwarding relays and BER_D(0) is the direct-link BER.
    Under informed combining a user no relay forwarded is decided on the direct
    metric alone, so BER_D(0) uses a single branch.

    Args:
        cfg: System configuration.

    Returns:
        The system BER.

    Raises:
        ConfigurationError: If N < 2.
        NumericalError: If an integral or series fails.
    """
    if cfg.num_users < 2:
        raise ConfigurationError('The cooperative analysis needs at least 2 users')
    p_sd = gamma_params_sd(cfg)
    ber_sr = link_ber(gamma_params_sr(cfg), cfg.beta, cfg.kernel, 1)
    direct_branches = 1 if cfg.combining == Combining.INFORMED else cfg.destination_branches
    ber_sd = link_ber(p_sd, cfg.beta, cfg.kernel, direct_branches)

    if cfg.relay_model == RelayModel.ALL_OR_NOTHING:
        ber_d = destination_ber(
            p_sd, gamma_params_rd(cfg), cfg.beta, cfg.kernel, cfg.destination_branches
        )
        return ber_sr * ber_sd + (1.0 - ber_sr) * ber_d

    others = cfg.num_users - 1
    total = float(stats.binom.pmf(0, others, 1.0 - ber_sr)) * ber_sd
    for k in range(1, others + 1):
        ber_d = destination_ber(
            p_sd, gamma_params_rd(cfg, k), cfg.beta, cfg.kernel, cfg.destination_branches
        )
        total += float(stats.binom.pmf(k, others, 1.0 - ber_sr)) * ber_d
    return total


def ber_curve(cfg: SystemConfig, grid_db: Sequence[float]) -> List[float]:
    """Evaluate system_ber_cc at each Eb/N0 in grid_db (dB)."""
    return [system_ber_cc(cfg.at_eb_n0_db(db)) for db in grid_db]


def required_eb_n0_db(cfg: SystemConfig, target_ber: float) -> float:
    """Find the Eb/N0 in dB at which the system BER equals target_ber.

    Args:
        cfg: System configuration; its own Eb/N0 is ignored.
        target_ber: Target BER in (0, 1/2).

    Returns:
        The required Eb/N0 in dB.

    Raises:
        ValueError: If the target is outside (0, 1/2).
        NumericalError: If the target is not bracketed by the search interval.
    """
    if not 0 < target_ber < 0.5:
        raise ValueError(f'target_ber must be in (0, 0.5), got {target_ber}')

    def excess(db: float) -> float:
        return math.log(max(system_ber_cc(cfg.at_eb_n0_db(db)), 1e-300)) - math.log(target_ber)

    low, high = ROOT_BRACKET_DB
    try:
        return float(optimize.brentq(excess, low, high, xtol=1e-6))
    except ValueError as e:
        raise NumericalError(
            f'BER {target_ber:g} is not reached between {low} and {high} dB'
        ) from e


def throughput(ber: float, system: ThroughputSystem, n_users: int) -> float:
    """Normalized throughput: 1 - BER, scaled by (N - 1)/N for the MIMO relay system.

    Args:
        ber: Bit error rate in [0, 1].
        system: CC, NC or MIMO.
        n_users: Number of users N.

    Returns:
        Throughput in [0, 1].

    Raises:
        ValueError: If ber is outside [0, 1] or N < 2 for MIMO.
    """
    if not 0.0 <= ber <= 1.0:
        raise ValueError(f'ber must be in [0, 1], got {ber}')
    if system == ThroughputSystem.MIMO:
        if n_users < 2:
            raise ValueError(f'MIMO throughput needs at least 2 users, got {n_users}')
        return (n_users - 1) / n_users * (1.0 - ber)
    return 1.0 - ber
