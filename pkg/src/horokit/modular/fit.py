"""Least-squares fits of log|error| = -eta |t| + q log(1 + |t|) + c."""

from dataclasses import dataclass

import numpy as np

from ..errors import FitRejected

MIN_SAMPLES = 5
NOISE_FACTOR = 10.0


@dataclass
class DecayFit:
    slope: float
    q: float
    intercept: float
    residual: float
    n: int
    q_free: bool

    def to_json(self):
        return {"slope": self.slope, "q": self.q, "intercept": self.intercept,
                "residual": self.residual, "n": self.n, "q_free": self.q_free}


def _fit(t, logs, q):
    cols = [t, np.ones_like(t)]
    if q is None:
        cols.insert(1, np.log1p(np.abs(t)))
        A = np.stack(cols, axis=1)
        coef, *_ = np.linalg.lstsq(A, logs, rcond=None)
        eta, qq, c = coef
        pred = A @ coef
    else:
        A = np.stack(cols, axis=1)
        coef, *_ = np.linalg.lstsq(A, logs - q * np.log1p(np.abs(t)), rcond=None)
        eta, c = coef
        qq = q
        pred = A @ coef + q * np.log1p(np.abs(t))
    res = float(np.sqrt(np.mean((logs - pred) ** 2)))
    return DecayFit(float(eta), float(qq), float(c), res, len(t), q is None)


def fit_decay(ts, errors, quad_errs=None, q=0):
    """Fit one model; q=None fits the polynomial degree as a free parameter.

    Samples whose error is within NOISE_FACTOR of the quadrature estimate are
    dropped; fewer than MIN_SAMPLES usable samples raises FitRejected.
    """
    t = np.asarray(ts, dtype=float)
    e = np.abs(np.asarray(errors, dtype=float))
    keep = e > 0
    if quad_errs is not None:
        keep &= e > NOISE_FACTOR * np.asarray(quad_errs, dtype=float)
    if keep.sum() < MIN_SAMPLES:
        raise FitRejected(f"only {int(keep.sum())} samples above the noise floor")
    return _fit(t[keep], np.log(e[keep]), q)


def fit_all(ts, errors, quad_errs=None):
    """Fits with q = 0, q = 1 and free q."""
    return {name: fit_decay(ts, errors, quad_errs, q)
            for name, q in (("q0", 0), ("q1", 1), ("free", None))}
