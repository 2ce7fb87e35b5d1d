"""Deterministic test Hamiltonians for every branch of the reality criterion.

Random models are pure functions of their arguments; see :mod:`pseudoherm.rng`
for the bit-exact definition of the random stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import _frozen
from .rng import XorShift64Star

__all__ = [
    "MODEL_KINDS",
    "ModelSpec",
    "conjugator",
    "hermitian_random",
    "jordan_block",
    "planted_spectrum",
    "pt_chain",
    "pt_dimer",
    "random_paired_spectrum",
    "random_real_spectrum",
    "star_violator",
]

# sub-stream tags
_SPECTRUM, _UNITARY, _SHEAR, _HERMITIAN = 1, 2, 3, 4

#: Minimum distance between planted eigenvalues.
SEPARATION = 1e-3


def pt_dimer(gamma: float, coupling: float) -> np.ndarray:
    """``[[i gamma, J], [J, -i gamma]]``; real spectrum iff ``|gamma| <= |J|``."""
    if coupling == 0:
        raise ValueError("coupling must be nonzero")
    return _frozen([[1j * gamma, coupling], [coupling, -1j * gamma]])


def pt_chain(n: int, gamma: float, coupling: float) -> np.ndarray:
    """Open tight-binding chain with gain ``+i gamma`` on the left half and
    loss ``-i gamma`` on the mirrored right half (a middle site, if any, is
    neutral)."""
    if n < 2:
        raise ValueError("chain needs at least two sites")
    if coupling == 0:
        raise ValueError("coupling must be nonzero")
    h = np.zeros((n, n), dtype=np.complex128)
    for k in range(n // 2):
        h[k, k] = 1j * gamma
        h[n - 1 - k, n - 1 - k] = -1j * gamma
    idx = np.arange(n - 1)
    h[idx, idx + 1] = coupling
    h[idx + 1, idx] = coupling
    return _frozen(h)


def jordan_block(n: int, lam: complex = 0.0) -> np.ndarray:
    if n < 2:
        raise ValueError("a Jordan block needs n >= 2")
    return _frozen(lam * np.eye(n) + np.eye(n, k=1))


def star_violator(n: int) -> np.ndarray:
    """Upper bidiagonal with diagonal ``(i, 2, 3, ..., n)``: the lone
    eigenvalue ``i`` has no conjugate partner."""
    if n < 2:
        raise ValueError("n must be at least 2")
    diag = np.arange(1, n + 1, dtype=np.complex128)
    diag[0] = 1j
    return _frozen(np.diag(diag) + np.eye(n, k=1))


def hermitian_random(n: int, seed: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be positive")
    z = XorShift64Star(seed, _HERMITIAN).complex_normal_matrix(n)
    return _frozen((z + z.conj().T) / 2)


def _separated(draw, count, separation=SEPARATION):
    values: list[complex] = []
    while len(values) < count:
        cand = draw()
        new = [cand] if cand.imag == 0 else [cand, cand.conjugate()]
        if all(abs(c - v) >= separation for c in new for v in values):
            values.extend(new)
    return values


def planted_spectrum(kind: str, n: int, seed: int) -> np.ndarray:
    """The diagonal ``D`` used by :func:`random_real_spectrum` (``kind="real"``)
    or :func:`random_paired_spectrum` (``kind="paired"``), in planting order."""
    rng = XorShift64Star(seed, _SPECTRUM)
    if kind == "real":
        values = _separated(lambda: complex(rng.uniform(-1.0, 1.0)), n)
    elif kind == "paired":
        if n % 2:
            raise ValueError("a paired spectrum needs even n")
        values = _separated(lambda: complex(rng.uniform(-1.0, 1.0), rng.uniform(0.1, 1.0)), n)
    else:
        raise ValueError(f"unknown spectrum kind {kind!r}")
    return _frozen(values)


def conjugator(n: int, seed: int, cond_cap: float) -> np.ndarray:
    """Seeded similarity ``V = Q (I + t N)`` with 2-norm condition number in
    ``[0.9 cond_cap, cond_cap]``.

    ``Q`` is the (phase-fixed) unitary QR factor of a complex Gaussian matrix
    and ``N`` a strictly upper-triangular Gaussian shear.  ``cond(I + t N)``
    starts at 1 and grows without bound, so ``t`` is found by bisection.
    ``cond_cap <= 1`` (or ``n == 1``) gives ``V = Q``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if cond_cap < 1:
        raise ValueError("cond_cap must be >= 1")
    z = XorShift64Star(seed, _UNITARY).complex_normal_matrix(n)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))[None, :]
    if n == 1 or cond_cap <= 1.0:
        return _frozen(q)

    shear = np.triu(XorShift64Star(seed, _SHEAR).complex_normal_matrix(n), 1)
    eye = np.eye(n)

    def cond(t):
        return np.linalg.cond(eye + t * shear)

    lo, hi = 0.0, 1.0
    while cond(hi) < 0.9 * cond_cap:
        lo, hi = hi, 2.0 * hi
    t = hi
    for _ in range(200):
        c = cond(t)
        if 0.9 * cond_cap <= c <= cond_cap:
            break
        if c > cond_cap:
            hi = t
        else:
            lo = t
        t = 0.5 * (lo + hi)
    else:  # pragma: no cover - cond is continuous, bisection always lands
        raise RuntimeError("conjugator bisection did not converge")
    return _frozen(q @ (eye + t * shear))


def _conjugate_diagonal(values, seed, cond_cap):
    n = len(values)
    if n == 1:
        # a 1x1 similarity is the identity map; skip the rounding it would add
        return _frozen([[values[0]]])
    v = np.asarray(conjugator(n, seed, cond_cap))
    # H = V D V^{-1}  <=>  V^T H^T = (V D)^T
    return _frozen(np.linalg.solve(v.T, (v * np.asarray(values)[None, :]).T).T)


def random_real_spectrum(n: int, seed: int, cond_cap: float = 10.0) -> np.ndarray:
    """``V D V^{-1}`` with ``D`` real, drawn from [-1, 1] with separation 1e-3."""
    return _conjugate_diagonal(planted_spectrum("real", n, seed), seed, cond_cap)


def random_paired_spectrum(n: int, seed: int, cond_cap: float = 10.0) -> np.ndarray:
    """``V D V^{-1}`` with ``D = diag(l_1, conj(l_1), ...)`` and ``Im l_k >= 0.1``."""
    return _conjugate_diagonal(planted_spectrum("paired", n, seed), seed, cond_cap)


# kind -> (required params, optional params with defaults)
_PARAMS = {
    "pt_dimer": (("gamma", "J"), {}),
    "pt_chain": (("gamma", "J"), {}),
    "random_real_spectrum": ((), {"cond_cap": 10.0}),
    "random_paired_spectrum": ((), {"cond_cap": 10.0}),
    "hermitian_random": ((), {}),
    "jordan_block": ((), {"lambda": 0.0, "lambda_im": 0.0}),
    "star_violator": ((), {}),
}
MODEL_KINDS = tuple(_PARAMS)
_ALIASES = {"coupling": "J", "lam": "lambda"}


@dataclass(frozen=True)
class ModelSpec:
    """Serializable description of a generated Hamiltonian.

    ``params`` holds real numbers only; the complex ``lambda`` of a Jordan
    block is split into ``lambda`` and ``lambda_im``.
    """

    kind: str
    size: int = 2
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in _PARAMS:
            raise ValueError(f"unknown model kind {self.kind!r}; expected one of {MODEL_KINDS}")
        required, optional = _PARAMS[self.kind]
        params = {_ALIASES.get(k, k): float(v) for k, v in self.params.items()}
        unknown = set(params) - set(required) - set(optional)
        if unknown:
            raise ValueError(f"unknown parameters for {self.kind}: {sorted(unknown)}")
        missing = [p for p in required if p not in params]
        if missing:
            raise ValueError(f"{self.kind} requires parameters {missing}")
        object.__setattr__(self, "params", {**optional, **params})
        size = 2 if self.kind == "pt_dimer" else int(self.size)
        if size < 1:
            raise ValueError("size must be positive")
        object.__setattr__(self, "size", size)
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "seed", int(self.seed))

    def generate(self) -> np.ndarray:
        p, n, seed = self.params, self.size, self.seed
        if self.kind == "pt_dimer":
            return pt_dimer(p["gamma"], p["J"])
        if self.kind == "pt_chain":
            return pt_chain(n, p["gamma"], p["J"])
        if self.kind == "random_real_spectrum":
            return random_real_spectrum(n, seed, p["cond_cap"])
        if self.kind == "random_paired_spectrum":
            return random_paired_spectrum(n, seed, p["cond_cap"])
        if self.kind == "hermitian_random":
            return hermitian_random(n, seed)
        if self.kind == "jordan_block":
            return jordan_block(n, complex(p["lambda"], p["lambda_im"]))
        return star_violator(n)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "size": self.size, "params": dict(self.params), "seed": self.seed}

    @classmethod
    def from_dict(cls, data: dict) -> "ModelSpec":
        extra = set(data) - {"kind", "size", "params", "seed"}
        if extra:
            raise ValueError(f"unknown model spec fields {sorted(extra)}")
        return cls(
            kind=data["kind"],
            size=data.get("size", 2),
            params=data.get("params", {}),
            seed=data.get("seed", 0),
        )

    def describe(self) -> str:
        params = " ".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        return f"model {self.kind} size={self.size} seed={self.seed} {params}".rstrip()
