"""Real positive-definite kernels evaluated on complex inputs.

Complex vectors z = x + iy in C^nu are identified with real vectors
(x, y) in R^(2*nu), all real parts first, then all imaginary parts.
A real kernel kappa on R^(2*nu) then induces a complex RKHS via the
complexified feature map Phi(z) = phi(z) + i*phi(z), whose inner
product and distance reduce to the closed forms implemented here:

    <Phi(z1), Phi(z2)> = 2*kappa(z1, z2)
    ||Phi(z1) - Phi(z2)||^2 = 2*(kappa(z1,z1) - 2*kappa(z1,z2) + kappa(z2,z2))
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

GAUSSIAN = "gaussian"
POLYNOMIAL = "polynomial"


@dataclass(frozen=True)
class RealKernel:
    """A real positive-definite kernel with its parameters.

    kind is "gaussian" (kappa(u, v) = exp(-||u - v||^2 / sigma^2)) or
    "polynomial" (kappa(u, v) = (1 + u.v)^degree). The Gaussian uses
    sigma^2 in the denominator with no extra factor of 2.
    """

    kind: str
    sigma: Optional[float] = None
    degree: Optional[int] = None

    def __post_init__(self):
        if self.kind == GAUSSIAN:
            if self.sigma is None or not self.sigma > 0:
                raise ValueError(f"gaussian kernel requires sigma > 0, got {self.sigma}")
        elif self.kind == POLYNOMIAL:
            if self.degree is None or int(self.degree) < 1:
                raise ValueError(f"polynomial kernel requires degree >= 1, got {self.degree}")
        else:
            raise ValueError(f"unknown kernel kind {self.kind!r}")

    @classmethod
    def gaussian(cls, sigma: float) -> "RealKernel":
        return cls(GAUSSIAN, sigma=float(sigma))

    @classmethod
    def polynomial(cls, degree: int) -> "RealKernel":
        return cls(POLYNOMIAL, degree=int(degree))


def as_cvec(z) -> np.ndarray:
    """Coerce to a 1-D complex vector, rejecting non-finite entries."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.ndim != 1:
        raise ValueError(f"expected a 1-D complex vector, got shape {z.shape}")
    if not np.all(np.isfinite(z)):
        raise ValueError("complex input vector contains non-finite entries")
    return z


def embed(z) -> np.ndarray:
    """Map z in C^nu to (Re z_1..Re z_nu, Im z_1..Im z_nu) in R^(2*nu)."""
    z = as_cvec(z)
    return np.concatenate([z.real, z.imag])


def unembed(v) -> np.ndarray:
    """Inverse of embed: (x, y) in R^(2*nu) back to x + iy in C^nu."""
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.size % 2:
        raise ValueError(f"embedded vector must have even length, got {v.size}")
    nu = v.size // 2
    return v[:nu] + 1j * v[nu:]


def _check_same_dim(z1: np.ndarray, z2: np.ndarray) -> None:
    if z1.shape[-1] != z2.shape[-1]:
        raise ValueError(f"dimension mismatch: {z1.shape[-1]} vs {z2.shape[-1]}")


def kernel_eval_many(k: RealKernel, z: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Evaluate kappa(z, c) for every row c of `centers`.

    z is a length-nu complex vector, centers an (m, nu) complex array;
    returns a length-m float array. This is the hot path of the kernel
    filters, so both kernels are evaluated without forming the explicit
    R^(2*nu) embedding (the results are identical).
    """
    z = np.asarray(z, dtype=complex)
    centers = np.atleast_2d(np.asarray(centers, dtype=complex))
    _check_same_dim(z, centers)
    if k.kind == GAUSSIAN:
        diff = centers - z
        dist_sq = np.sum(diff.real**2 + diff.imag**2, axis=1)
        return np.exp(-dist_sq / (k.sigma * k.sigma))
    # polynomial: u.v on the embedding equals Re(z1).Re(z2) + Im(z1).Im(z2)
    dot = centers.real @ z.real + centers.imag @ z.imag
    return (1.0 + dot) ** k.degree


def kernel_eval(k: RealKernel, z1, z2) -> float:
    """kappa evaluated on the R^(2*nu) identification of z1, z2."""
    z1 = as_cvec(z1)
    z2 = as_cvec(z2)
    return float(kernel_eval_many(k, z1, z2[np.newaxis, :])[0])


def complexified_inner(k: RealKernel, z1, z2) -> complex:
    """Inner product <Phi(z1), Phi(z2)> in the complexified RKHS.

    Because the feature map's real and imaginary parts coincide, the
    imaginary part cancels and the value is 2*kappa(z1, z2) + 0j.
    """
    return complex(2.0 * kernel_eval(k, z1, z2))


def feature_distance_sq(k: RealKernel, z1, z2) -> float:
    """Squared distance ||Phi(z1) - Phi(z2)||^2 in the complexified RKHS."""
    z1 = as_cvec(z1)
    z2 = as_cvec(z2)
    k11 = kernel_eval(k, z1, z1)
    k12 = kernel_eval(k, z1, z2)
    k22 = kernel_eval(k, z2, z2)
    return 2.0 * (k11 - 2.0 * k12 + k22)


def polynomial_feature_map(u, degree: int) -> np.ndarray:
    """Explicit monomial feature map phi of the polynomial kernel.

    For real u, phi(u).phi(v) = (1 + u.v)^degree. Supported for
    degree 1 and 2; used to build finite-dimensional surrogates where
    the implicit RKHS geometry can be checked coordinate by coordinate.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if degree == 1:
        return np.concatenate([[1.0], u])
    if degree == 2:
        p = u.size
        iu, ju = np.triu_indices(p, k=1)
        return np.concatenate(
            [
                [1.0],
                np.sqrt(2.0) * u,
                u * u,
                np.sqrt(2.0) * u[iu] * u[ju],
            ]
        )
    raise ValueError(f"explicit feature map only implemented for degree 1 or 2, got {degree}")
