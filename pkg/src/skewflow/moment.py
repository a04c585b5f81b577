"""Moment-map matrix, the squared-norm functional, and criticality tests.

For a structure tensor mu the moment map is the hermitian matrix

    R[r, p] = -4 sum_{ij} c[p,i,j] conj(c[r,i,j])
              + 2 sum_{ij} conj(c[i,j,p]) c[i,j,r],

the derivative at the identity of the basis-change energy g -> ||g.mu||^2.
The functional minimized by the flow is the scale-invariant

    scalar_F(mu) = 4 tr(R^2) / (tr R)^2,

which equals tr(R^2) on the unit sphere because tr R = -2 ||mu||^2 always.
A point is critical exactly when R = c I + D with c real and D a hermitian
derivation of mu; we certify this by orthogonal projection of R onto
span_R{I} + (hermitian derivations) and measuring the remainder.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    StructureTensor,
    delta,
    derivation_algebra,
    hermitian_part,
)

__all__ = [
    "CriticalReport",
    "moment_map",
    "scalar_F",
    "sphere_F",
    "gradient",
    "tangential_gradient",
    "criticality",
]


def moment_map(mu: StructureTensor) -> np.ndarray:
    """Hermitian moment-map matrix of mu; tr = -2||mu||^2."""
    c = mu.coeff
    cbar = np.conj(c)
    r = -4.0 * np.einsum("pij,rij->rp", c, cbar) + 2.0 * np.einsum(
        "ijp,ijr->rp", cbar, c
    )
    return hermitian_part(r)


def sphere_F(mu: StructureTensor) -> float:
    """tr(R^2) after normalizing mu to the unit sphere."""
    return scalar_F(mu)


def scalar_F(mu: StructureTensor) -> float:
    """Scale-invariant functional 4 tr(R^2) / (tr R)^2; equals tr(R^2) at ||mu||=1."""
    if mu.is_zero():
        raise ValueError("scalar_F is undefined at the zero tensor")
    r = moment_map(mu)
    tr = float(np.trace(r).real)
    tr2 = float(np.trace(r @ r).real)
    return 4.0 * tr2 / tr**2


def gradient(mu: StructureTensor) -> StructureTensor:
    """Ambient gradient of mu -> tr(R_mu^2): -8 delta_mu(R_mu)."""
    return StructureTensor(-8.0 * delta(mu, moment_map(mu)).coeff)


def tangential_gradient(v: StructureTensor, mu: StructureTensor) -> StructureTensor:
    """Component of v tangent to the sphere through mu: v - Re<v,mu> mu/||mu||^2."""
    coeff = np.vdot(mu.coeff, v.coeff).real / np.vdot(mu.coeff, mu.coeff).real
    return StructureTensor(v.coeff - coeff * mu.coeff)


@dataclass(frozen=True)
class CriticalReport:
    """Criticality certificate at the normalized tensor.

    residual is the Frobenius distance from R to span_R{I} + hermitian
    derivations; c_mu = tr(R^2)/tr(R); D_mu = R - c_mu I (meaningful when
    critical); F_value = tr(R^2) at unit norm.
    """

    c_mu: float
    D_mu: np.ndarray
    residual: float
    F_value: float
    is_critical: bool

    def d_eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.D_mu)


def _hermitian_coords(a: np.ndarray) -> np.ndarray:
    """Isometric real coordinates of a hermitian matrix (Frobenius norm)."""
    n = a.shape[0]
    iu = np.triu_indices(n, k=1)
    return np.concatenate(
        [np.real(np.diag(a)), np.sqrt(2.0) * a[iu].real, np.sqrt(2.0) * a[iu].imag]
    )


def criticality(
    mu: StructureTensor, tol: float = 1e-8, nullspace_tol: float = 1e-9
) -> CriticalReport:
    """Project R onto span_R{I} + hermitian derivations; report the remainder.

    The input is normalized internally, so residual and F_value refer to the
    unit-sphere representative.
    """
    if mu.is_zero():
        raise ValueError("criticality is undefined at the zero tensor")
    nu = mu.normalized()
    r = moment_map(nu)
    tr = float(np.trace(r).real)
    tr2 = float(np.trace(r @ r).real)
    c_mu = tr2 / tr
    d_mu = hermitian_part(r - c_mu * np.eye(nu.dim))

    ders = derivation_algebra(nu, tol=nullspace_tol).hermitian_basis
    cols = [_hermitian_coords(np.eye(nu.dim, dtype=complex))]
    cols.extend(_hermitian_coords(h) for h in ders)
    basis = np.array(cols).T
    target = _hermitian_coords(r)
    sol = np.linalg.lstsq(basis, target, rcond=None)[0]
    residual = float(np.linalg.norm(target - basis @ sol))

    rnorm = float(np.linalg.norm(r))
    return CriticalReport(
        c_mu=c_mu,
        D_mu=d_mu,
        residual=residual,
        F_value=tr2,
        is_critical=bool(residual <= tol * rnorm),
    )
