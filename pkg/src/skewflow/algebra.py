"""Structure-constant tensors for complex skew-symmetric algebras.

An n-dimensional bilinear skew-symmetric product mu is stored as a dense
(n, n, n) complex array c with

    mu(e_i, e_j) = sum_k c[i, j, k] e_k,

antisymmetric in the first two indices.  The basis e_1..e_n is orthonormal
for the standard hermitian inner product on C^n, which induces the inner
product used throughout:

    <mu, lam> = sum_{ijk} c_mu[i,j,k] * conj(c_lam[i,j,k])

over *ordered* index pairs, so each unordered pair (i, j) contributes twice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import minimize_scalar

__all__ = [
    "StructureTensor",
    "DerivationBasis",
    "StructureInvariants",
    "bracket_eval",
    "jacobi_residual",
    "act",
    "inner_product",
    "delta",
    "delta_star",
    "derivation_algebra",
    "structure_invariants",
    "direct_sum",
    "tune_direct_sum_scale",
    "semidirect_extension",
    "hermitian_part",
    "commutator",
]

DEFAULT_NULLSPACE_TOL = 1e-9


def hermitian_part(a: np.ndarray) -> np.ndarray:
    """Exactly hermitian symmetrization (A + A*)/2."""
    return 0.5 * (a + a.conj().T)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


@dataclass(frozen=True)
class StructureTensor:
    """Immutable antisymmetric coefficient tensor of a bilinear product.

    The stored array is the antisymmetric part (in the first two slots) of
    the input, so mu(X, X) = 0 holds exactly.  Use :meth:`from_brackets` to
    build from an i < j bracket table.
    """

    coeff: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeff, dtype=complex)
        if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[0] != c.shape[2]:
            raise ValueError(f"expected an (n, n, n) array, got shape {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("structure constants must be finite")
        c = 0.5 * (c - c.transpose(1, 0, 2))
        c.flags.writeable = False
        object.__setattr__(self, "coeff", c)

    @classmethod
    def zero(cls, n: int) -> "StructureTensor":
        return cls(np.zeros((n, n, n), dtype=complex))

    @classmethod
    def from_brackets(cls, n: int, brackets: dict) -> "StructureTensor":
        """Build from {(i, j): vector or {k: coeff}} with 0-based i < j."""
        c = np.zeros((n, n, n), dtype=complex)
        for (i, j), val in brackets.items():
            if not 0 <= i < j < n:
                raise ValueError(f"bracket key ({i}, {j}) needs 0 <= i < j < n")
            if isinstance(val, dict):
                vec = np.zeros(n, dtype=complex)
                for k, x in val.items():
                    vec[k] = x
            else:
                vec = np.asarray(val, dtype=complex)
            c[i, j] = vec
            c[j, i] = -vec
        return cls(c)

    @property
    def dim(self) -> int:
        return self.coeff.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeff))

    def normalized(self) -> "StructureTensor":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero tensor")
        return StructureTensor(self.coeff / nrm)

    def is_zero(self) -> bool:
        return not np.any(self.coeff)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.coeff.shape == other.coeff.shape and np.array_equal(
            self.coeff, other.coeff
        )

    def __hash__(self):
        return hash((self.coeff.shape, self.coeff.tobytes()))

    def __repr__(self) -> str:
        nz = int(np.count_nonzero(self.coeff))
        return f"StructureTensor(dim={self.dim}, nonzeros={nz}, norm={self.norm():.6g})"


def bracket_eval(mu: StructureTensor, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Evaluate mu(X, Y) by contraction."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != (mu.dim,) or y.shape != (mu.dim,):
        raise ValueError("vector length must match tensor dimension")
    return np.einsum("i,j,ijk->k", x, y, mu.coeff)


def jacobi_residual(mu: StructureTensor) -> float:
    """Frobenius norm of the cyclic Jacobi sum over all basis triples.

    Zero (to rounding) exactly when mu is a Lie bracket.
    """
    c = mu.coeff
    # t[i,j,k,l] = coefficient of e_l in mu(mu(e_i, e_j), e_k)
    t = np.einsum("ijm,mkl->ijkl", c, c)
    jac = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return float(np.linalg.norm(jac))


def act(g: np.ndarray, mu: StructureTensor, cond_max: float = 1e12) -> StructureTensor:
    """Basis-change action (g.mu)(X, Y) = g mu(g^-1 X, g^-1 Y)."""
    g = np.asarray(g, dtype=complex)
    n = mu.dim
    if g.shape != (n, n):
        raise ValueError("matrix dimension must match tensor dimension")
    if np.linalg.cond(g) > cond_max:
        raise np.linalg.LinAlgError("matrix is singular or too ill-conditioned to act")
    h = np.linalg.inv(g)
    new = np.einsum("pi,qj,kr,pqr->ijk", h, h, g, mu.coeff, optimize=True)
    return StructureTensor(new)


def inner_product(mu: StructureTensor, lam: StructureTensor) -> complex:
    """Hermitian inner product, summed over ordered index triples."""
    if mu.dim != lam.dim:
        raise ValueError("dimension mismatch")
    return complex(np.vdot(lam.coeff, mu.coeff))  # vdot conjugates its first arg


def delta(mu: StructureTensor, a: np.ndarray) -> StructureTensor:
    """Coboundary delta_mu(A) = mu(A., .) + mu(., A.) - A mu(., .).

    Derivations of mu are exactly the kernel; delta_mu(I) = mu.
    """
    a = np.asarray(a, dtype=complex)
    c = mu.coeff
    if a.shape != (mu.dim, mu.dim):
        raise ValueError("matrix dimension must match tensor dimension")
    t1 = np.einsum("pi,pjk->ijk", a, c)
    t2 = np.einsum("pj,ipk->ijk", a, c)
    t3 = np.einsum("kr,ijr->ijk", a, c)
    return StructureTensor(t1 + t2 - t3)


def delta_star(mu: StructureTensor, lam: StructureTensor) -> np.ndarray:
    """Adjoint of A -> delta_mu(A): <lam, delta_mu(A)> = tr(delta_star(mu,lam) A*)."""
    if mu.dim != lam.dim:
        raise ValueError("dimension mismatch")
    cbar = np.conj(mu.coeff)
    l = lam.coeff
    a1 = np.einsum("vjk,ujk->uv", l, cbar)
    a2 = np.einsum("ivk,iuk->uv", l, cbar)
    a3 = np.einsum("iju,ijv->uv", l, cbar)
    return a1 + a2 - a3


def _hermitian_param_basis(n: int) -> np.ndarray:
    """Real basis of hermitian n x n matrices, shape (n*n, n, n)."""
    basis = np.zeros((n * n, n, n), dtype=complex)
    idx = 0
    for i in range(n):
        basis[idx, i, i] = 1.0
        idx += 1
    for i in range(n):
        for j in range(i + 1, n):
            basis[idx, i, j] = 1.0
            basis[idx, j, i] = 1.0
            idx += 1
            basis[idx, i, j] = 1.0j
            basis[idx, j, i] = -1.0j
            idx += 1
    return basis


@dataclass(frozen=True)
class DerivationBasis:
    """Orthonormal bases of the derivation algebra of a tensor.

    complex_basis spans Der(mu) over C; hermitian_basis spans the real
    subspace of hermitian derivations.  Shapes: (dim, n, n).
    """

    complex_basis: np.ndarray
    hermitian_basis: np.ndarray

    @property
    def dim_complex(self) -> int:
        return self.complex_basis.shape[0]

    @property
    def dim_hermitian(self) -> int:
        return self.hermitian_basis.shape[0]


def derivation_algebra(
    mu: StructureTensor, tol: float = DEFAULT_NULLSPACE_TOL
) -> DerivationBasis:
    """Nullspace of A -> delta_mu(A), by singular-value thresholding.

    Returns both the complex derivation algebra and a real orthonormal basis
    of its hermitian part (computed over R on n^2 real parameters, since
    hermiticity is only R-linear).
    """
    n = mu.dim
    c = mu.coeff
    eye = np.eye(n)
    # delta(E_uv)[i,j,k] = d(i,v) c[u,j,k] + d(j,v) c[i,u,k] - d(k,u) c[i,j,v]
    m1 = np.einsum("iv,ujk->ijkuv", eye, c)
    m2 = np.einsum("jv,iuk->ijkuv", eye, c)
    m3 = np.einsum("ku,ijv->ijkuv", eye, c)
    m = (m1 + m2 - m3).reshape(n**3, n**2)
    ns = null_space(m, rcond=tol)  # orthonormal columns = flattened derivations
    complex_basis = np.ascontiguousarray(ns.T).reshape(-1, n, n)

    # Hermitian part: real-linear system on n^2 real parameters.
    herm = _hermitian_param_basis(n)
    cols = []
    for h in herm:
        img = delta(mu, h).coeff.ravel()
        cols.append(np.concatenate([img.real, img.imag]))
    mreal = np.array(cols).T  # (2 n^3, n^2) real
    nsr = null_space(mreal, rcond=tol)
    hermitian_basis = np.einsum("pc,pij->cij", nsr, herm)
    # re-exactify hermiticity against rounding
    hermitian_basis = 0.5 * (
        hermitian_basis + np.conj(hermitian_basis.transpose(0, 2, 1))
    )
    return DerivationBasis(complex_basis=complex_basis, hermitian_basis=hermitian_basis)


def _subspace_span(vectors: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal basis (columns) of the row span of `vectors`."""
    if vectors.size == 0:
        width = vectors.shape[1] if vectors.ndim == 2 else 0
        return np.zeros((width, 0), dtype=complex)
    _, s, vh = np.linalg.svd(vectors, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((vectors.shape[1], 0), dtype=complex)
    rank = int(np.sum(s > tol * s[0]))
    return vh[:rank].conj().T


@dataclass(frozen=True)
class StructureInvariants:
    is_lie: bool
    dim_derivations: int
    dim_image: int
    dim_center: int | None
    is_nilpotent: bool | None
    is_solvable: bool | None
    is_semisimple: bool | None


def structure_invariants(
    mu: StructureTensor, tol: float = DEFAULT_NULLSPACE_TOL
) -> StructureInvariants:
    """Derivation dimension, image/center dimensions and structure flags.

    For non-Lie input only dim Der and dim mu(C^n, C^n) are computed; the
    series-based flags stay None.
    """
    n = mu.dim
    c = mu.coeff
    scale = max(mu.norm(), 1.0)
    dim_der = derivation_algebra(mu, tol).dim_complex
    dim_image = _subspace_span(c.reshape(n * n, n), tol).shape[1]

    if jacobi_residual(mu) > 1e-8 * scale**2:
        return StructureInvariants(False, dim_der, dim_image, None, None, None, None)

    # center: kernel of X -> mu(X, .)
    mker = c.transpose(1, 2, 0).reshape(n * n, n)
    if np.any(mker):
        svals = np.linalg.svd(mker, compute_uv=False)
        rank = int(np.sum(svals > tol * svals[0]))
    else:
        rank = 0
    dim_center = n - rank

    # lower central series: a_{m+1} = mu(C^n, a_m), decreasing
    basis = np.eye(n, dtype=complex)
    for _ in range(n + 1):
        if basis.shape[1] == 0:
            break
        vecs = np.einsum("ipk,pj->ijk", c, basis).reshape(-1, n)
        new = _subspace_span(vecs, tol)
        if new.shape[1] >= basis.shape[1]:
            basis = new
            break
        basis = new
    is_nilpotent = basis.shape[1] == 0

    # derived series: h_{m+1} = mu(h_m, h_m)
    basis = np.eye(n, dtype=complex)
    for _ in range(n + 1):
        if basis.shape[1] == 0:
            break
        vecs = np.einsum("ijk,ia,jb->abk", c, basis, basis).reshape(-1, n)
        new = _subspace_span(vecs, tol)
        if new.shape[1] >= basis.shape[1]:
            basis = new
            break
        basis = new
    is_solvable = basis.shape[1] == 0

    # Killing form nondegeneracy, tested on the eigenvalue-normalized matrix
    killing = np.einsum("iqp,jpq->ij", c, c)
    eigs = np.linalg.eigvals(killing)
    lmax = float(np.max(np.abs(eigs))) if eigs.size else 0.0
    if lmax == 0.0:
        is_semisimple = False
    else:
        is_semisimple = bool(abs(np.linalg.det(killing / lmax)) > 1e-8)

    return StructureInvariants(
        True, dim_der, dim_image, dim_center, is_nilpotent, is_solvable, is_semisimple
    )


def direct_sum(mu: StructureTensor, lam: StructureTensor, c: float = 1.0) -> StructureTensor:
    """Block tensor on C^{n+m}: mu on the first block, c*lam on the second."""
    n, m = mu.dim, lam.dim
    out = np.zeros((n + m, n + m, n + m), dtype=complex)
    out[:n, :n, :n] = mu.coeff
    out[n:, n:, n:] = c * lam.coeff
    return StructureTensor(out)


def tune_direct_sum_scale(mu: StructureTensor, lam: StructureTensor) -> float:
    """Scale c > 0 minimizing the criticality residual of mu (+) c*lam.

    One-dimensional search; useful when both summands are critical and a
    critical direct sum is expected at some relative scaling.
    """
    from .moment import criticality  # local import, avoids a cycle

    def resid(logc: float) -> float:
        return criticality(direct_sum(mu, lam, float(np.exp(logc)))).residual

    res = minimize_scalar(
        resid, bounds=(-6.0, 6.0), method="bounded", options={"xatol": 1e-12}
    )
    return float(np.exp(res.x))


def semidirect_extension(
    lam: StructureTensor,
    gens: list,
    c_lambda: float,
    tol: float = 1e-8,
) -> StructureTensor:
    """Extend a bracket lam on C^m by a reductive algebra r of derivations.

    Builds the bracket of r acting on lam, on C^{d+m}: matrix commutators on
    r, [A, X] = AX for X in C^m, and lam on the ideal.  The generator span is
    orthonormalized for the inner product

        <A, B> = -(4 / c_lambda) * (tr(ad A (ad B)^H)/2 + tr(A B^H)),

    adjoints taken in the trace inner product on r, via the hermitian square
    root of the Gram matrix so the result does not depend on generator order.
    When lam is a nilpotent critical point with constant c_lambda < 0 this
    produces a critical point again.
    """
    m = lam.dim
    if lam.is_zero():
        raise ValueError("the ideal bracket must be nonzero")
    if c_lambda >= 0:
        raise ValueError("c_lambda must be negative")
    if not gens:
        return lam

    gens = [np.asarray(g, dtype=complex) for g in gens]
    for g in gens:
        if g.shape != (m, m):
            raise ValueError("generator dimension mismatch")
        for a in (g, g.conj().T):
            if delta(lam, a).norm() > tol * max(np.linalg.norm(a), 1.0) * lam.norm():
                raise ValueError("generators and their adjoints must be derivations")

    # Trace-orthonormal basis of r = span(gens).
    flat = np.array([g.ravel() for g in gens])
    basis_cols = _subspace_span(flat, DEFAULT_NULLSPACE_TOL)
    d = basis_cols.shape[1]
    onb = np.ascontiguousarray(basis_cols.T).reshape(d, m, m)

    # Closure under commutator, and structure constants f[a, b, :] of r.
    f = np.zeros((d, d, d), dtype=complex)
    for a in range(d):
        for b in range(d):
            k = commutator(onb[a], onb[b])
            coeffs = np.array([np.vdot(onb[x], k) for x in range(d)])
            rem = k - np.einsum("x,xij->ij", coeffs, onb)
            if np.linalg.norm(rem) > tol * max(np.linalg.norm(k), 1.0):
                raise ValueError("generators do not span a subalgebra")
            f[a, b] = coeffs

    # Gram matrix of the extension inner product in the trace-orthonormal
    # basis: ad O_a has matrix M_a[c, b] = f[a, b, c]; tr(O_a O_b^H) = d_ab.
    gram = -4.0 / c_lambda * (0.5 * np.einsum("auc,buc->ab", f, np.conj(f)) + np.eye(d))
    gram = hermitian_part(gram)
    evals, evecs = np.linalg.eigh(gram)
    if np.min(evals) <= 0:
        raise ValueError("extension inner product is not positive definite")
    s_inv_half = (evecs * evals**-0.5) @ evecs.conj().T  # gram^(-1/2)
    s_half = (evecs * evals**0.5) @ evecs.conj().T
    new_basis = np.einsum("aj,apq->jpq", s_inv_half, onb)

    n_total = d + m
    out = np.zeros((n_total, n_total, n_total), dtype=complex)
    # r x r: commutators, re-expanded in the new basis (coords map by s_half)
    for i in range(d):
        for j in range(d):
            k = commutator(new_basis[i], new_basis[j])
            t = np.array([np.vdot(onb[x], k) for x in range(d)])
            out[i, j, :d] = s_half @ t
    # r acting on the ideal: [B_i, e_p] = sum_k B_i[k, p] e_k
    for i in range(d):
        out[i, d:, d:] = new_basis[i].T
    out[d:, :d, d:] = -np.transpose(out[:d, d:, d:], (1, 0, 2))
    # ideal x ideal: lam itself
    out[d:, d:, d:] = lam.coeff
    return StructureTensor(out)
