"""Small-dimension complex linear algebra: vectors, a cyclic Jacobi
eigensolver for Hermitian matrices, and the subspace calculus
(membership, containment, intersection, join, orthocomplement).

All decisions are eps-thresholded; the single global default is EPS.
Every value is immutable after construction and every function is pure.
"""

from __future__ import annotations

import numpy as np

EPS = 1e-9
MAX_DIM = 16
_MAX_SWEEPS = 100


class LinalgError(Exception):
    pass


class DimensionMismatch(LinalgError):
    pass


class ConvergenceError(LinalgError):
    pass


def check_eps(eps: float) -> float:
    if not (0.0 < eps < 1e-3):
        raise ValueError(f"eps must lie in (0, 1e-3), got {eps}")
    return eps


def as_vector(v) -> np.ndarray:
    """Coerce to a 1-d complex array, rejecting NaN/Inf components."""
    a = np.asarray(v, dtype=complex).reshape(-1)
    if a.size < 1:
        raise ValueError("vector must have at least one component")
    if a.size > MAX_DIM:
        raise DimensionMismatch(f"dimension {a.size} exceeds supported maximum {MAX_DIM}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError("vector has non-finite components")
    return a


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise DimensionMismatch(f"dimension {a.shape[0]} exceeds supported maximum {MAX_DIM}")
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError("matrix has non-finite entries")
    return a


def inner(u, v) -> complex:
    """Hermitian inner product, conjugate-linear in the first argument."""
    u = as_vector(u)
    v = as_vector(v)
    if u.size != v.size:
        raise DimensionMismatch(f"dimension mismatch: {u.size} vs {v.size}")
    return complex(np.vdot(u, v))


def norm(v) -> float:
    return float(np.linalg.norm(as_vector(v)))


def is_hermitian(m, eps: float = EPS) -> bool:
    a = as_matrix(m)
    return float(np.max(np.abs(a - a.conj().T))) < eps


def _canonical_phase(v: np.ndarray, eps: float) -> np.ndarray:
    """Rotate the global phase so the first non-negligible component is
    real and positive.  Keeps eigenvector output reproducible."""
    for x in v:
        if abs(x) > eps:
            return v * (abs(x) / x)
    return v


def hermitian_eig(m, eps: float = EPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues, eigenvectors): eigenvalues ascending as a real
    array, eigenvectors as columns of a unitary matrix, phases fixed so
    the first nonzero component of each vector is real positive.  Ties in
    the eigenvalue sort are broken by lexicographic comparison of the
    eigenvector components.
    """
    check_eps(eps)
    a = as_matrix(m).copy()
    n = a.shape[0]
    if not is_hermitian(a, eps):
        raise ValueError("matrix is not Hermitian within eps")
    # symmetrize so accumulated roundoff cannot skew the iteration
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)

    # convergence threshold on the off-diagonal Frobenius mass, scaled by
    # the matrix magnitude so large entries do not stall the sweep loop
    scale = max(1.0, float(np.sum(np.abs(a) ** 2)))
    threshold = eps * eps * scale

    off_diag = ~np.eye(n, dtype=bool)

    def off_mass() -> float:
        return float(np.sum(np.abs(a[off_diag]) ** 2))

    sweeps = 0
    while off_mass() > threshold:
        if sweeps >= _MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi failed to converge in {_MAX_SWEEPS} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-150:  # negligible pivot; rotating would overflow
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = np.sign(tau) if tau != 0 else 1.0
                t = t / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # unitary rotation R: R[p,p]=c, R[p,q]=s,
                # R[q,p]=-conj(phase)*s, R[q,q]=conj(phase)*c
                pb = np.conj(phase)
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - pb * s * aq
                a[:, q] = s * ap + pb * c * aq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - phase * s * rq
                a[q, :] = s * rp + phase * c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - pb * s * vq
                v[:, q] = s * vp + pb * c * vq

    evals = np.diag(a).real.copy()
    vecs = [_canonical_phase(v[:, i].copy(), eps) for i in range(n)]

    def sort_key(i):
        comps = tuple((x.real, x.imag) for x in vecs[i])
        return (evals[i], comps)

    order = sorted(range(n), key=sort_key)
    return evals[order], np.column_stack([vecs[i] for i in order])


class Subspace:
    """A subspace of C^n held as an orthonormal basis (columns).

    The zero subspace has an empty basis; the ambient dimension is always
    carried explicitly.
    """

    def __init__(self, ambient_dim: int, basis: np.ndarray | None = None, eps: float = EPS):
        check_eps(eps)
        if not (1 <= ambient_dim <= MAX_DIM):
            raise ValueError(f"ambient_dim must be in 1..{MAX_DIM}")
        if basis is None or (hasattr(basis, "size") and basis.size == 0):
            basis = np.zeros((ambient_dim, 0), dtype=complex)
        basis = np.asarray(basis, dtype=complex)
        if basis.ndim != 2 or basis.shape[0] != ambient_dim:
            raise DimensionMismatch(
                f"basis shape {basis.shape} incompatible with ambient dim {ambient_dim}")
        if basis.shape[1] > ambient_dim:
            raise ValueError("basis has more vectors than the ambient dimension")
        gram = basis.conj().T @ basis
        if basis.shape[1] and float(np.max(np.abs(gram - np.eye(basis.shape[1])))) > 10 * eps:
            raise ValueError("basis is not orthonormal within tolerance")
        self.ambient_dim = int(ambient_dim)
        self.basis = basis
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim)

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, np.eye(ambient_dim, dtype=complex))

    @staticmethod
    def span(vectors, eps: float = EPS) -> "Subspace":
        return gram_schmidt(vectors, eps)

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def project(self, v) -> np.ndarray:
        v = as_vector(v)
        if v.size != self.ambient_dim:
            raise DimensionMismatch(f"vector dim {v.size} vs ambient {self.ambient_dim}")
        if self.dim == 0:
            return np.zeros_like(v)
        return self.basis @ (self.basis.conj().T @ v)

    def contains(self, v, eps: float = EPS) -> bool:
        """Membership: residual of v against the subspace below eps*|v|."""
        check_eps(eps)
        v = as_vector(v)
        nv = float(np.linalg.norm(v))
        if nv <= eps:
            raise ValueError("membership is undefined for the zero vector")
        return float(np.linalg.norm(v - self.project(v))) < eps * nv

    def is_subset(self, other: "Subspace", eps: float = EPS) -> bool:
        self._check_ambient(other)
        return all(other.contains(self.basis[:, i], eps) for i in range(self.dim))

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def intersect(self, other: "Subspace", eps: float = EPS) -> "Subspace":
        """Meet of two subspaces: the eigenvalue-2 eigenspace of the sum of
        the two projectors, decided by eigenvalue > 2 - eps."""
        self._check_ambient(other)
        check_eps(eps)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        evals, vecs = hermitian_eig(self.projector() + other.projector(), eps)
        cols = [vecs[:, i] for i in range(len(evals)) if evals[i] > 2.0 - eps]
        if not cols:
            return Subspace.zero(self.ambient_dim)
        return gram_schmidt(cols, eps)

    def join(self, other: "Subspace", eps: float = EPS) -> "Subspace":
        self._check_ambient(other)
        cols = [self.basis[:, i] for i in range(self.dim)]
        cols += [other.basis[:, i] for i in range(other.dim)]
        if not cols:
            return Subspace.zero(self.ambient_dim)
        return gram_schmidt(cols, eps)

    def orthocomplement(self, eps: float = EPS) -> "Subspace":
        check_eps(eps)
        if self.is_zero():
            return Subspace.full(self.ambient_dim)
        if self.is_full():
            return Subspace.zero(self.ambient_dim)
        evals, vecs = hermitian_eig(self.projector(), eps)
        cols = [vecs[:, i] for i in range(len(evals)) if evals[i] < 0.5]
        return gram_schmidt(cols, eps)

    def equals(self, other: "Subspace", eps: float = EPS) -> bool:
        return self.is_subset(other, eps) and other.is_subset(self, eps)

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dims differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def gram_schmidt(vectors, eps: float = EPS) -> Subspace:
    """Orthonormalize (modified Gram-Schmidt); near-dependent vectors with
    residual norm below eps are dropped.  The input list must be nonempty
    (the zero subspace is requested through Subspace.zero, which carries
    the ambient dimension explicitly)."""
    check_eps(eps)
    vecs = [as_vector(v) for v in vectors]
    if not vecs:
        raise ValueError("empty vector list: use Subspace.zero(ambient_dim)")
    n = vecs[0].size
    if any(v.size != n for v in vecs):
        raise DimensionMismatch("vectors do not share a dimension")
    basis: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        for _ in range(2):  # one re-orthogonalization pass for stability
            for b in basis:
                w = w - np.vdot(b, w) * b
        r = float(np.linalg.norm(w))
        if r < eps:
            continue
        basis.append(w / r)
    if not basis:
        return Subspace.zero(n)
    return Subspace(n, np.column_stack(basis), eps)
