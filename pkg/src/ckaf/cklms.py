"""Complex kernel LMS with a growing dictionary and novelty sparsification.

The filter state is an expansion over stored input centers z_k with
complex coefficients c_k = a_k + i b_k. A step observes (z, d), emits
the prediction

    y(z) = sum_k [(a_k + b_k) + i (a_k - b_k)] * kappa(z, z_k),

forms the error e = d - y, and (if the novelty criterion admits z)
appends the center with coefficients

    a = mu (Re e + Im e) / gamma,   b = mu (Re e - Im e) / gamma,

gamma being 2*kappa(z, z) in the normalized variant (NCKLMS) and 1
otherwise. Stored coefficients are never revisited: the algorithm is a
pure LMS in the complexified kernel space, and a sample rejected by
the novelty criterion contributes no update at all.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .kernels import RealKernel, as_cvec, kernel_eval, kernel_eval_many, polynomial_feature_map, embed
from .wirtinger import GradientCheckReport, WirtingerPair, check_gradient


@dataclass(frozen=True)
class NoveltyCriterion:
    """Admission thresholds for new dictionary centers.

    A candidate is rejected when its feature-space distance to the
    dictionary falls below delta1, or (otherwise) when the magnitude of
    its prediction error falls below delta2. A zero threshold never
    rejects, so (0, 0) is equivalent to no criterion at all.
    """

    delta1: float
    delta2: float

    def __post_init__(self):
        if self.delta1 < 0 or self.delta2 < 0:
            raise ValueError(f"novelty thresholds must be nonnegative, got ({self.delta1}, {self.delta2})")


class StepResult(NamedTuple):
    prediction: complex
    error: complex
    admitted: bool


class CklmsFilter:
    """Complex kernel LMS / normalized complex kernel LMS filter.

    Parameters
    ----------
    kernel:
        Real kernel evaluated on the R^(2*nu) identification of the
        complex inputs.
    mu:
        Step size.
    normalized:
        When True (NCKLMS) the per-step coefficients are divided by
        gamma = 2*kappa(z, z); for the Gaussian kernel gamma == 2.
    novelty:
        Optional NoveltyCriterion controlling dictionary growth; None
        admits every sample.
    """

    def __init__(
        self,
        kernel: RealKernel,
        mu: float,
        normalized: bool = True,
        novelty: Optional[NoveltyCriterion] = None,
    ):
        if not mu > 0:
            raise ValueError(f"mu must be positive, got {mu}")
        self.kernel = kernel
        self.mu = float(mu)
        self.normalized = bool(normalized)
        self.novelty = novelty
        self._dim: Optional[int] = None
        self._n = 0
        self._centers = np.empty((0, 0), dtype=complex)
        self._coeffs = np.empty(0, dtype=complex)
        self._self_k = np.empty(0, dtype=float)  # kappa(z_k, z_k) cache

    @property
    def dictionary_size(self) -> int:
        return self._n

    @property
    def centers(self) -> np.ndarray:
        return self._centers[: self._n].copy()

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs[: self._n].copy()

    def _coerce(self, z) -> np.ndarray:
        z = as_cvec(z)
        if self._dim is not None and z.size != self._dim:
            raise ValueError(f"input length {z.size} does not match dictionary dimension {self._dim}")
        return z

    def predict(self, z) -> complex:
        """Filter output at z; an empty dictionary predicts 0."""
        z = self._coerce(z)
        if self._n == 0:
            return 0j
        k = kernel_eval_many(self.kernel, z, self._centers[: self._n])
        a = self._coeffs[: self._n].real
        b = self._coeffs[: self._n].imag
        return complex((a + b) @ k + 1j * ((a - b) @ k))

    def admit(self, z, e: complex) -> bool:
        """Novelty decision for a candidate center with prediction error e."""
        if self.novelty is None:
            return True
        z = self._coerce(z)
        if self._n > 0:
            k_zz = kernel_eval(self.kernel, z, z)
            k_cross = kernel_eval_many(self.kernel, z, self._centers[: self._n])
            dist_sq = 2.0 * (k_zz - 2.0 * k_cross + self._self_k[: self._n])
            dis = float(np.sqrt(max(np.min(dist_sq), 0.0)))
            if dis < self.novelty.delta1:
                return False
        if abs(e) < self.novelty.delta2:
            return False
        return True

    def step(self, z, d: complex) -> StepResult:
        """Process one sample: predict, measure the error, maybe grow."""
        z = self._coerce(z)
        d = complex(d)
        if not (cmath.isfinite(d)):
            raise ValueError("non-finite desired value; step rejected")
        prediction = self.predict(z)
        e = d - prediction
        admitted = self.admit(z, e)
        if admitted:
            k_zz = kernel_eval(self.kernel, z, z)
            gamma = 2.0 * k_zz if self.normalized else 1.0
            a = self.mu * (e.real + e.imag) / gamma
            b = self.mu * (e.real - e.imag) / gamma
            self._append(z, complex(a, b), k_zz)
        return StepResult(prediction=prediction, error=e, admitted=admitted)

    def _append(self, z: np.ndarray, coeff: complex, self_k: float) -> None:
        if self._dim is None:
            self._dim = z.size
            self._centers = np.empty((16, self._dim), dtype=complex)
            self._coeffs = np.empty(16, dtype=complex)
            self._self_k = np.empty(16, dtype=float)
        elif self._n == self._centers.shape[0]:
            cap = 2 * self._n
            for name in ("_centers", "_coeffs", "_self_k"):
                old = getattr(self, name)
                new = np.empty((cap,) + old.shape[1:], dtype=old.dtype)
                new[: self._n] = old[: self._n]
                setattr(self, name, new)
        self._centers[self._n] = z
        self._coeffs[self._n] = coeff
        self._self_k[self._n] = self_k
        self._n += 1

    def save_dictionary(self, path) -> None:
        """Write the dictionary as flat text, one line per entry.

        Each line holds the center components followed by the
        coefficient, every complex number as a real/imaginary pair of
        decimal floats, full double precision.
        """
        with open(path, "w", encoding="utf-8") as fh:
            for row, coeff in zip(self._centers[: self._n], self._coeffs[: self._n]):
                parts = []
                for v in row:
                    parts.append(f"{float(v.real)!r} {float(v.imag)!r}")
                parts.append(f"{float(coeff.real)!r} {float(coeff.imag)!r}")
                fh.write(" ".join(parts) + "\n")


def load_dictionary(path) -> tuple[np.ndarray, np.ndarray]:
    """Read a dictionary written by save_dictionary: (centers, coeffs)."""
    centers = []
    coeffs = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            vals = [float(tok) for tok in line.split()]
            if len(vals) < 4 or len(vals) % 2:
                raise ValueError(f"malformed dictionary line: {line!r}")
            cplx = [complex(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)]
            centers.append(cplx[:-1])
            coeffs.append(cplx[-1])
    if not centers:
        return np.empty((0, 0), dtype=complex), np.empty(0, dtype=complex)
    return np.asarray(centers, dtype=complex), np.asarray(coeffs, dtype=complex)


def instantaneous_cost_check(
    n_trials: int = 50,
    tol: float = 1e-5,
    rng_seed: int = 0,
    degree: int = 2,
) -> list[GradientCheckReport]:
    """Check the analytic cost gradient in an explicit-feature surrogate.

    The polynomial kernel of the given degree admits an explicit
    monomial feature map phi; complexifying it as Phi(z) = (1+i) phi(z)
    makes the kernel filter's instantaneous cost |d - <Phi(z), w>|^2 an
    ordinary field on C^M, where its analytic conjugate gradient
    -e* Phi(z) (and its conjugate, since the cost is real) can be
    compared against finite differences.
    """
    rng = np.random.default_rng(rng_seed)
    reports = []
    for _ in range(n_trials):
        nu = int(rng.integers(1, 3))
        z = 0.7 * (rng.standard_normal(nu) + 1j * rng.standard_normal(nu))
        d = complex(rng.standard_normal() + 1j * rng.standard_normal())
        phi = polynomial_feature_map(embed(z), degree)
        big_phi = (1.0 + 1.0j) * phi
        w0 = 0.5 * (rng.standard_normal(big_phi.size) + 1j * rng.standard_normal(big_phi.size))

        def cost(w, big_phi=big_phi, d=d):
            e = d - np.sum(big_phi * np.conj(w))
            return abs(e) ** 2

        def analytic(w, big_phi=big_phi, d=d):
            e = d - np.sum(big_phi * np.conj(w))
            d_zstar = -np.conj(e) * big_phi
            return WirtingerPair(d_z=np.conj(d_zstar), d_zstar=d_zstar)

        reports.append(check_gradient(cost, analytic, w0, tol=tol))
    return reports
