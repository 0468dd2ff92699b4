"""Floating-point Haar sampling and empirical moment checks.

Randomness: every draw comes from ``numpy.random.Generator(PCG64)`` seeded by
``SeedSequence(seed, spawn_key=(stream,))``. Gaussians are numpy's
``standard_normal`` (ziggurat), which is fixed by numpy's stream
compatibility policy, so a given ``(seed, stream)`` yields the same bytes on
every platform for a given numpy release.

Reductions use ``numpy.sum`` over the sample axis in sample order (pairwise
summation), so reports are reproducible bit-for-bit.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CapExceededError
from .integrate import MomentQuery, integrate, parse_monomial
from .weingarten.tables import GroupKind

BATCH = 4096
MAX_CHANNEL_DIM = 128


@dataclass(frozen=True)
class RngSpec:
    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        return np.random.Generator(np.random.PCG64(ss))

    def child(self, stream: int) -> "RngSpec":
        return RngSpec(self.seed, stream)


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return rng.generator()


def haar_unitary_batch(n: int, size: int, gen: np.random.Generator) -> np.ndarray:
    """``size`` Haar unitaries of dimension ``n`` (Ginibre, QR, phase fix)."""
    z = (gen.standard_normal((size, n, n)) + 1j * gen.standard_normal((size, n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    # column j times r_jj/|r_jj| makes the triangular factor's diagonal positive
    return q * (d / np.abs(d))[:, None, :]


def haar_orthogonal_batch(n: int, size: int, gen: np.random.Generator) -> np.ndarray:
    """``size`` Haar orthogonal matrices (real Ginibre, QR, sign fix)."""
    z = gen.standard_normal((size, n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * np.sign(d)[:, None, :]


def sample_haar_unitary(n: int, rng) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    return haar_unitary_batch(n, 1, _as_generator(rng))[0]


def sample_haar_orthogonal(n: int, rng) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    return haar_orthogonal_batch(n, 1, _as_generator(rng))[0]


def unitarity_defect(u: np.ndarray) -> float:
    """``max |U*U - I|`` (over a batch if ``u`` is 3-d)."""
    prod = np.conj(np.swapaxes(u, -1, -2)) @ u
    return float(np.max(np.abs(prod - np.eye(u.shape[-1]))))


@dataclass
class MomentEstimate:
    mean: complex
    se: float
    samples: int


def _monomial_values(q: MomentQuery, mats: np.ndarray) -> np.ndarray:
    out = np.ones(mats.shape[0], dtype=mats.dtype)
    for r, c, conj in q.factors:
        entry = mats[:, r - 1, c - 1]
        out = out * (np.conj(entry) if conj else entry)
    return out


def _batches(samples: int):
    done = 0
    while done < samples:
        size = min(BATCH, samples - done)
        yield size
        done += size


def _summarize(values: np.ndarray) -> MomentEstimate:
    m = values.shape[0]
    mean = np.sum(values) / m
    # complex std: sqrt(var(Re) + var(Im)), sample (m-1) normalization
    dev = values - mean
    var = float(np.sum(np.abs(dev) ** 2)) / max(m - 1, 1)
    return MomentEstimate(complex(mean), math.sqrt(var / m), m)


def estimate_moment(q: MomentQuery, n: int, samples: int, rng) -> MomentEstimate:
    """Sample mean of the monomial over ``samples`` Haar matrices of size ``n``."""
    if q.group is GroupKind.FREE:
        raise ValueError("O_n^+ has no matrix model here; use the exact engine (integrate)")
    if any(max(r, c) > n for r, c, _ in q.factors):
        raise ValueError(f"index exceeds n={n} in {q}")
    gen = _as_generator(rng)
    sampler = haar_unitary_batch if q.group is GroupKind.UNITARY else haar_orthogonal_batch
    vals = np.concatenate([_monomial_values(q, sampler(n, size, gen)) for size in _batches(samples)])
    return _summarize(vals)


# Golden set: (group, monomial, n)
GOLDEN_QUERIES: tuple[tuple[str, str, int], ...] = (
    ("unitary", "u[1,1] ~u[1,1]", 5),
    ("unitary", "u[1,1] u[1,1] ~u[1,1] ~u[1,1]", 10),
    ("unitary", "u[1,1] u[2,2] ~u[1,2] ~u[2,1]", 10),
    ("unitary", "u[1,1] u[2,2] ~u[1,1] ~u[2,2]", 5),
    ("unitary", "u[1,1] u[2,2] u[3,3] ~u[1,2] ~u[2,3] ~u[3,1]", 5),
    ("unitary", "u[1,1] u[1,1] u[1,1] ~u[1,1] ~u[1,1] ~u[1,1]", 20),
    ("orthogonal", "u[1,1] u[1,1]", 5),
    ("orthogonal", "u[1,1] u[1,1] u[1,1] u[1,1]", 10),
    ("orthogonal", "u[1,1] u[1,2] u[2,1] u[2,2]", 5),
    ("orthogonal", "u[1,1] u[1,1] u[2,2] u[2,2]", 10),
    ("orthogonal", "u[1,1] u[1,2] u[1,3]", 5),
    ("orthogonal", "u[1,1] u[1,1] u[1,1] u[1,1] u[1,1] u[1,1]", 20),
)


@dataclass
class MomentReport:
    query: str
    group: str
    n: int
    samples: int
    seed: int
    stream: int
    estimate_re: float
    estimate_im: float
    se: float
    exact: str | None
    z: float | None

    @property
    def ok(self) -> bool:
        return self.z is not None and self.z <= 5

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def moment_report(group: str, monomial: str, n: int, samples: int, rng: RngSpec) -> MomentReport:
    q = parse_monomial(monomial, group, n)
    est = estimate_moment(q, n, samples, rng)
    exact = integrate(q)
    diff = abs(est.mean - float(exact))
    z = diff / est.se if est.se > 0 else (0.0 if diff == 0 else math.inf)
    return MomentReport(str(q), q.group.value, n, samples, rng.seed, rng.stream,
                        est.mean.real, est.mean.imag, est.se, str(exact), z)


def golden_reports(samples: int, seed: int, queries=GOLDEN_QUERIES) -> list[MomentReport]:
    """One report per golden query; query ``i`` uses stream ``i``."""
    return [moment_report(g, m, n, samples, RngSpec(seed, i)) for i, (g, m, n) in enumerate(queries)]


@dataclass
class CltReport:
    n: int
    samples: int
    seed: int
    moments: list
    se: list
    expected: tuple = (0.0, 1.0, 0.0, 3.0)
    z: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(z <= 5 for z in self.z)


def trace_clt_demo(n: int, samples: int, rng: RngSpec) -> CltReport:
    """First four empirical moments of ``Tr(U)`` for Haar ``U`` in ``O(n)``."""
    gen = _as_generator(rng)
    traces = np.concatenate([np.trace(haar_orthogonal_batch(n, size, gen), axis1=1, axis2=2)
                             for size in _batches(samples)])
    rep = CltReport(n, samples, rng.seed, [], [])
    for j, expected in enumerate(rep.expected, start=1):
        est = _summarize(traces ** j)
        rep.moments.append(float(est.mean.real))
        rep.se.append(est.se)
        rep.z.append(float(abs(est.mean.real - expected) / est.se))
    return rep


# ---------------------------------------------------------------------------
# Random channel on a Bell state
# ---------------------------------------------------------------------------


def gamma_limit(k: int, t) -> list[float]:
    """Limiting nonzero spectrum ``(t + (1-t)/k^2, (1-t)/k^2, ...)`` of length ``k^2``."""
    t = float(t)
    rest = (1 - t) / (k * k)
    return [t + rest] + [rest] * (k * k - 1)


def channel_bell_output(u: np.ndarray, n: int, k: int, p: int) -> np.ndarray:
    """``Phi (x) conj(Phi)`` applied to the Bell state on the first ``p`` coordinates.

    ``Phi(X) = Tr_k(V X V*)`` with ``V = U[:, :p]`` and ``C^{nk} = C^n (x) C^k``.
    """
    kraus = u[:, :p].reshape(n, k, p)  # kraus[:, a, :] is the n x p operator K_a
    out = np.zeros((n * n, n * n), dtype=complex)
    for a in range(k):
        for b in range(k):
            w = (kraus[:, a, :] @ np.conj(kraus[:, b, :]).T).reshape(-1)
            out += np.outer(w, np.conj(w))
    return out / p


def top_eigenvalues(h: np.ndarray, count: int, gen: np.random.Generator,
                    tol: float = 1e-12, max_iter: int = 20000) -> list[float]:
    """Largest ``count`` eigenvalues of a Hermitian PSD matrix by power iteration
    with deflation.

    Each vector is iterated orthogonally to those already found (an explicit
    projection, equivalent to Hotelling deflation) until its Rayleigh quotient
    and residual settle.
    """
    dim = h.shape[0]
    found: list[np.ndarray] = []
    values: list[float] = []
    for _ in range(min(count, dim)):
        v = gen.standard_normal(dim) + 1j * gen.standard_normal(dim)
        basis = np.array(found).T if found else None

        def deflate(x):
            if basis is None:
                return x
            return x - basis @ (np.conj(basis).T @ x)

        v = deflate(v)
        v /= np.linalg.norm(v)
        lam = 0.0
        for _ in range(max_iter):
            w = deflate(h @ v)
            new_lam = float(np.real(np.vdot(v, w)))
            norm = np.linalg.norm(w)
            if norm == 0:
                new_lam = 0.0
                break
            resid = np.linalg.norm(w - new_lam * v)
            v = w / norm
            if resid <= tol * max(1.0, abs(new_lam)) or abs(new_lam - lam) <= tol * 1e-2:
                lam = new_lam
                break
            lam = new_lam
        found.append(v)
        values.append(lam)
    return values


@dataclass
class ChannelReport:
    n: int
    k: int
    t: str
    p: int
    samples: int
    seed: int
    expected: list
    eigenvalues: list
    next_eigenvalue: float
    rel_errors: list

    @property
    def ok(self) -> bool:
        kk = self.k * self.k
        return (all(e <= 0.10 for e in self.rel_errors)
                and self.next_eigenvalue < 0.5 * self.eigenvalues[kk - 1])


def channel_demo(n: int, k: int, t, samples: int, rng: RngSpec) -> ChannelReport:
    """Top ``k^2`` eigenvalues of ``Phi (x) conj(Phi)(Bell)`` averaged over ``samples`` draws.

    ``p = round(t n k)``; the input corner is the first ``p`` coordinates.
    """
    if n * k > MAX_CHANNEL_DIM:
        raise CapExceededError("n*k", n * k, MAX_CHANNEL_DIM)
    t = Fraction(t)
    p = round(t * n * k)
    if not 1 <= p <= n * k:
        raise ValueError(f"p = round(t n k) = {p} out of range")
    gen = _as_generator(rng)
    kk = k * k
    acc = np.zeros(kk + 1)
    for _ in range(samples):
        u = haar_unitary_batch(n * k, 1, gen)[0]
        acc += np.array(top_eigenvalues(channel_bell_output(u, n, k, p), kk + 1, gen))
    eig = [float(x) for x in acc / samples]
    expected = gamma_limit(k, t)
    rel = [abs(a - b) / b if b else abs(a) for a, b in zip(eig[:kk], expected)]
    rel = [float(x) for x in rel]
    return ChannelReport(n, k, str(t), p, samples, rng.seed, expected, eig[:kk], eig[kk], rel)
