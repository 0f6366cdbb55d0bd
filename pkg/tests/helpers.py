"""Shared randomized constructions for the test suite.

Everything here is seeded: each helper takes a numpy Generator so tests
stay reproducible.
"""

import numpy as np

from qopposition.linalg import Subspace, gram_schmidt
from qopposition.quantum import Literal, State


def random_state(n, rng):
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return State.normalized(z)


def haar_unitary(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (z + z.conj().T) / 2


def random_subspace(n, k, rng):
    if k == 0:
        return Subspace.zero(n)
    u = haar_unitary(n, rng)
    return gram_schmidt([u[:, i] for i in range(k)])


def random_literal(n, rng, allow_trivial=True):
    lo = 0 if allow_trivial else 1
    hi = n if allow_trivial else n - 1
    k = int(rng.integers(lo, hi + 1))
    return Literal(random_subspace(n, k, rng), asserted=bool(rng.integers(0, 2)))


def apply_unitary_subspace(u, s):
    if s.is_zero():
        return Subspace.zero(s.ambient_dim)
    return gram_schmidt([u @ s.basis[:, i] for i in range(s.dim)])


def apply_unitary_literal(u, lit):
    return Literal(apply_unitary_subspace(u, lit.subspace), lit.asserted)
