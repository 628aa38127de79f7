"""Kalman-filter check of structural observability on a network.

A random linear system ``x[k+1] = A x[k] + noise`` lives on the graph
support, is scaled to a target spectral radius, and is observed through the
chosen measured nodes. Bounded mean-squared estimation error means the
measured set renders the system observable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .graph import Graph

log = logging.getLogger(__name__)

NOISE_VAR = 0.02
WEIGHT_FLOOR = 0.05
PSD_FLOOR = -1e-8


class SpectralRadiusError(ArithmeticError):
    pass


@dataclass
class LinearSystem:
    A: np.ndarray
    C: np.ndarray
    measured: tuple[int, ...]
    Q: float = NOISE_VAR
    R: float = NOISE_VAR
    rho_target: float | None = None

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def without(self, node: int) -> LinearSystem:
        """Same dynamics with the sensor on ``node`` removed."""
        keep = [r for r, i in enumerate(self.measured) if i != node]
        if len(keep) == len(self.measured):
            raise ValueError(f"node {node} is not measured")
        return LinearSystem(A=self.A, C=self.C[keep], measured=tuple(self.measured[r] for r in keep),
                            Q=self.Q, R=self.R, rho_target=self.rho_target)


@dataclass
class MseeTrace:
    msee: np.ndarray
    seed: int
    measured: tuple[int, ...]
    rho_target: float | None = None
    trials: int = 1
    meta: dict = field(default_factory=dict)

    def window_means(self, frac: float = 0.1) -> tuple[float, float]:
        w = max(1, int(round(frac * len(self.msee))))
        return float(self.msee[:w].mean()), float(self.msee[-w:].mean())

    def ratio(self, frac: float = 0.1) -> float:
        first, last = self.window_means(frac)
        return last / first if first > 0 else np.inf

    def is_bounded(self, threshold: float = 10.0) -> bool:
        return bool(np.all(np.isfinite(self.msee))) and self.ratio() < threshold

    def is_divergent(self, threshold: float = 1e6) -> bool:
        return not np.isfinite(self.window_means()[1]) or self.window_means()[1] > threshold

    def to_csv(self) -> str:
        lines = [f"# seed={self.seed} q={len(self.measured)} rho_target={self.rho_target} "
                 f"trials={self.trials}",
                 "step,msee"]
        lines += [f"{k},{v:.10g}" for k, v in enumerate(self.msee)]
        return "\n".join(lines) + "\n"


def spectral_radius(A: np.ndarray) -> float:
    """Largest eigenvalue magnitude of a square matrix (LAPACK QR iteration)."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"need a square matrix, got shape {A.shape}")
    if A.size == 0:
        return 0.0
    try:
        ev = scipy.linalg.eigvals(A, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SpectralRadiusError(f"eigenvalue iteration failed for {A.shape} matrix: {exc}") from exc
    return float(np.max(np.abs(ev)))


def _signed_weights(rng: np.random.Generator, size: int) -> np.ndarray:
    # uniform on [-1, -floor] U [floor, 1]
    mag = rng.uniform(WEIGHT_FLOOR, 1.0, size)
    return np.where(rng.random(size) < 0.5, -mag, mag)


def build_system(g: Graph, measured, rho_target: float = 1.2, rng_seed: int = 0,
                 self_weights: bool = False, noise_var: float = NOISE_VAR) -> LinearSystem:
    """Random weights on the graph support, rescaled so that rho(A) = rho_target.

    Both directions of an edge get independent weights. Diagonal self-weights
    are off by default; with them on, every node is trivially matched to
    itself and a single sensor per component already suffices.
    """
    measured = tuple(sorted(set(measured)))
    if not measured:
        raise ValueError("measured set must be nonempty")
    if rho_target <= 0:
        raise ValueError("rho_target must be positive")
    n = g.node_count
    if any(not 0 <= i < n for i in measured):
        raise ValueError("measured node out of range")
    rng = np.random.default_rng(rng_seed)
    A = np.zeros((n, n))
    rows, cols = [], []
    for i in range(n):
        for j in g.sorted_neighbors(i):
            rows.append(i)
            cols.append(j)
    if self_weights:
        rows += list(range(n))
        cols += list(range(n))
    A[rows, cols] = _signed_weights(rng, len(rows))
    rho = spectral_radius(A)
    if rho <= 1e-12:
        raise SpectralRadiusError("system matrix has zero spectral radius; cannot rescale")
    A *= rho_target / rho
    C = np.zeros((len(measured), n))
    C[np.arange(len(measured)), measured] = _signed_weights(rng, len(measured))
    return LinearSystem(A=A, C=C, measured=measured, Q=noise_var, R=noise_var,
                        rho_target=rho_target)


def run_kalman(sys: LinearSystem, horizon: int = 200, trials: int = 50,
               rng_seed: int = 0, check_psd: bool = True) -> MseeTrace:
    """Trial-averaged MSEE of the time-varying Kalman filter.

    The Riccati recursion does not depend on the data, so one covariance
    sequence serves all trials and the trials are propagated as a batch.
    Entry ``k`` is the posterior error after the measurement at step ``k``.
    """
    if horizon < 1 or trials < 1:
        raise ValueError("horizon and trials must be >= 1")
    A, C = sys.A, sys.C
    n, q = sys.n, C.shape[0]
    rng = np.random.default_rng(rng_seed)
    sq, sr = np.sqrt(sys.Q), np.sqrt(sys.R)
    Qm = sys.Q * np.eye(n)
    Rm = sys.R * np.eye(q)
    eye = np.eye(n)

    x = rng.standard_normal((trials, n))
    xhat = np.zeros((trials, n))
    P = eye.copy()
    msee = np.empty(horizon)
    jitter = 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(horizon):
            if k > 0:
                x = x @ A.T + sq * rng.standard_normal((trials, n))
                xhat = xhat @ A.T
                P = A @ P @ A.T + Qm
            if q == 0:
                msee[k] = np.mean((x - xhat) ** 2)
                continue
            y = x @ C.T + sr * rng.standard_normal((trials, q))
            S = C @ P @ C.T + Rm
            S = 0.5 * (S + S.T)
            try:
                cf = scipy.linalg.cho_factor(S + jitter * np.eye(q))
            except np.linalg.LinAlgError:
                jitter = max(2 * jitter, 1e-10 * max(1.0, np.trace(S) / q))
                log.warning("innovation covariance not positive definite at step %d; "
                            "adding jitter %.3g", k, jitter)
                cf = scipy.linalg.cho_factor(S + jitter * np.eye(q))
            K = scipy.linalg.cho_solve(cf, C @ P).T
            xhat = xhat + (y - xhat @ C.T) @ K.T
            IKC = eye - K @ C
            P = IKC @ P @ IKC.T + K @ Rm @ K.T  # Joseph form keeps P symmetric PSD
            P = 0.5 * (P + P.T)
            if check_psd and np.all(np.isfinite(P)):
                floor = np.linalg.eigvalsh(P)[0]
                scale = max(1.0, float(np.max(np.abs(np.diag(P)))))
                if floor < PSD_FLOOR * scale:
                    raise AssertionError(f"error covariance lost PSD at step {k}: {floor:.3g}")
            msee[k] = np.mean((x - xhat) ** 2)
    return MseeTrace(msee=msee, seed=rng_seed, measured=sys.measured,
                     rho_target=sys.rho_target, trials=trials)
