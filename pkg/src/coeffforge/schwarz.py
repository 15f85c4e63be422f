"""Admissible initial coefficients of analytic self-maps of the disk.

A jet is the triple (c1, c2, c3) of leading coefficients of a function
omega with omega(0) = 0 and |omega| < 1. Membership of the generated
function in the lambda-class imposes, beyond the classical constraints
|c1| <= 1 and |c2| <= 1 - |c1|^2, the pair

    t := |(1+L)c2 - L c1^2| <= L,
    |2(1+L)c3 - 4L c1 c2|   <= L - t^2/L,

with L the class parameter. The samplers emit only jets satisfying all of
these; extremal configurations sit on the boundary, so float admissibility
tests allow a 1e-12 band while exact jets are compared exactly (via
squared moduli, which stay rational).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import (EXACT, FLOAT, QComplex, as_scalar, maybe_exact_abs,
                      rational_sqrt, to_complex)

BOUNDARY_TOL = 1e-12
STRATEGIES = ("uniform", "boundary-biased", "grid")
_BLOCK = 8192
_CANDIDATES = 8  # per-slot candidates in one rejection round


@dataclass(frozen=True)
class SchwarzJet:
    c1: object
    c2: object
    c3: object

    @property
    def mode(self):
        return EXACT if isinstance(self.c1, QComplex) else FLOAT

    def as_float(self):
        return SchwarzJet(to_complex(self.c1), to_complex(self.c2), to_complex(self.c3))

    def as_exact(self):
        """Exact jet with the same value (floats convert by binary value)."""
        return SchwarzJet(as_scalar(self.c1, EXACT), as_scalar(self.c2, EXACT),
                          as_scalar(self.c3, EXACT))

    def rotated(self, theta):
        """Jet of z -> e^{-i theta} omega(e^{i theta} z)."""
        w = complex(math.cos(theta), math.sin(theta))
        c1, c2, c3 = to_complex(self.c1), to_complex(self.c2), to_complex(self.c3)
        return SchwarzJet(w * c1, w * w * c2, w * w * w * c3)

    def to_json(self):
        c1, c2, c3 = to_complex(self.c1), to_complex(self.c2), to_complex(self.c3)
        return {"c1": [c1.real, c1.imag], "c2": [c2.real, c2.imag], "c3": [c3.real, c3.imag]}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(complex(*data["c1"]), complex(*data["c2"]), complex(*data["c3"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed jet record: {exc}") from exc


@dataclass(frozen=True)
class JetConstraintProfile:
    """Derived quantities of the class constraints for one jet.

    t is the modulus |(1+L)c2 - L c1^2| (exact whenever its square is a
    perfect rational square, e.g. for the extremal corner), c3_slack is
    L - t^2/L, and the two flags report the first and second constraint.
    """
    lam: object
    t: object
    t_sq: object
    c3_slack: object
    first_ok: bool
    second_ok: bool

    @property
    def satisfied(self):
        return self.first_ok and self.second_ok


def is_schur_admissible(c1, c2, tol=BOUNDARY_TOL):
    """|c1| <= 1 and |c2| <= 1 - |c1|^2, exact for exact scalars."""
    if isinstance(c1, QComplex) or isinstance(c2, QComplex):
        c1 = as_scalar(c1, EXACT)
        c2 = as_scalar(c2, EXACT)
        s = 1 - c1.abs2()
        return s >= 0 and c2.abs2() <= s * s
    a1 = abs(complex(c1))
    if a1 > 1.0 + tol:
        return False
    return abs(complex(c2)) <= max(1.0 - a1 * a1, 0.0) + tol


def jet_constraint_profile(lam, jet, tol=BOUNDARY_TOL):
    """Evaluate both class constraints; exact comparisons for exact jets."""
    exact = isinstance(lam, (int, Fraction)) and jet.mode == EXACT
    if exact:
        lam = Fraction(lam)
        if not 0 < lam <= 1:
            raise ValueError("class parameter must lie in (0, 1]")
        c1, c2, c3 = jet.c1, jet.c2, jet.c3
        expr = (1 + lam) * c2 - lam * c1 * c1
        t_sq = expr.abs2()
        slack = lam - t_sq / lam
        root = rational_sqrt(t_sq)
        t = root if root is not None else math.sqrt(float(t_sq))
        first = t_sq <= lam * lam
        lhs = 2 * (1 + lam) * c3 - 4 * lam * c1 * c2
        second = slack >= 0 and lhs.abs2() <= slack * slack
        return JetConstraintProfile(lam, t, t_sq, slack, first, second)
    lam = float(lam)
    if not 0 < lam <= 1:
        raise ValueError("class parameter must lie in (0, 1]")
    c1, c2, c3 = to_complex(jet.c1), to_complex(jet.c2), to_complex(jet.c3)
    t = abs((1 + lam) * c2 - lam * c1 * c1)
    slack = lam - t * t / lam
    first = t <= lam + tol
    lhs = abs(2 * (1 + lam) * c3 - 4 * lam * c1 * c2)
    second = lhs <= max(slack, 0.0) + tol
    return JetConstraintProfile(lam, t, t * t, slack, first, second)


def is_admissible(lam, jet, tol=BOUNDARY_TOL, constraint="eq3"):
    """Full admissibility: Schur-Carlson plus (unless relaxed) the class pair.

    constraint="schur" drops the class-specific pair; the relaxation is
    only sound for functionals not involving c3.
    """
    if not is_schur_admissible(jet.c1, jet.c2, tol):
        return False
    if constraint == "schur":
        return True
    return jet_constraint_profile(lam, jet, tol).satisfied


def rationalize(jet, max_denominator=None):
    """Exact jet from a float jet; optionally cap denominators."""
    exact = jet.as_exact()
    if max_denominator is None:
        return exact

    def cap(q):
        return QComplex(q.re.limit_denominator(max_denominator),
                        q.im.limit_denominator(max_denominator))

    return SchwarzJet(cap(exact.c1), cap(exact.c2), cap(exact.c3))


# -- sampling ---------------------------------------------------------------

def sample_jets(lam, count, seed=0, strategy="uniform", rotation_reduce=False,
                constraint="eq3"):
    """Deterministic sequence of admissible jets.

    uniform          draws area-uniform in each feasible disk;
    boundary-biased  concentrates near |c1| = 1 and the saturated
                     constraints, where the extremal values live;
    grid             a regular lattice over the feasible region, with the
                     corner jet (1, 0, 0) always included first.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    c1, c2, c3 = sample_jet_arrays(lam, count, seed, strategy, rotation_reduce,
                                   constraint)
    return [SchwarzJet(complex(c1[i]), complex(c2[i]), complex(c3[i]))
            for i in range(count)]


def sample_jet_arrays(lam, count, seed=0, strategy="uniform",
                      rotation_reduce=False, constraint="eq3"):
    """Vectorized sampler returning (c1, c2, c3) complex arrays.

    Random strategies generate in fixed blocks of 8192 indices; block b is
    driven by default_rng([seed, b]), so any partition of the index range
    across workers reproduces the sequential output.
    """
    lam = float(lam)
    if not 0 < lam <= 1:
        raise ValueError("class parameter must lie in (0, 1]")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "grid":
        return _grid_arrays(lam, np.arange(count), count, rotation_reduce)
    blocks = []
    for b in range((count + _BLOCK - 1) // _BLOCK):
        blocks.append(_random_block(lam, seed, b, strategy, rotation_reduce,
                                    constraint))
    c1 = np.concatenate([blk[0] for blk in blocks])[:count]
    c2 = np.concatenate([blk[1] for blk in blocks])[:count]
    c3 = np.concatenate([blk[2] for blk in blocks])[:count]
    return c1, c2, c3


def sample_block_arrays(lam, seed, block_index, strategy="uniform",
                        rotation_reduce=False, constraint="eq3"):
    """One aligned block of samples (the parallel work unit)."""
    return _random_block(float(lam), seed, block_index, strategy,
                         rotation_reduce, constraint)


def block_size():
    return _BLOCK


def _random_block(lam, seed, block_index, strategy, rotation_reduce, constraint):
    rng = np.random.default_rng([seed, block_index])
    n = _BLOCK
    biased = strategy == "boundary-biased"

    if biased:
        r1 = rng.random(n) ** 0.125
    else:
        r1 = np.sqrt(rng.random(n))
    theta = np.zeros(n) if rotation_reduce else 2.0 * np.pi * rng.random(n)
    c1 = r1 * np.exp(1j * theta)
    schur = np.clip(1.0 - r1 * r1, 0.0, None)

    # Feasible c2 set: |c2| <= schur intersected (unless relaxed) with the
    # disk |c2 - m2| <= R2 equivalent to the first class constraint.
    m2 = lam * c1 * c1 / (1.0 + lam)
    R2 = lam / (1.0 + lam)

    if constraint == "schur":
        u, v = rng.random(n), rng.random(n)
        c2 = schur * np.sqrt(u) * np.exp(2j * np.pi * v)
        return c1, c2, np.zeros(n, complex)

    if biased:
        on_boundary = rng.random(n) < 0.5
        phi = 2.0 * np.pi * rng.random(n)
        ray = np.exp(1j * phi)
        proj = m2 * np.conj(ray)
        reach = proj.real + np.sqrt(np.clip(R2 * R2 - proj.imag ** 2, 0.0, None))
        c2_boundary = np.minimum(schur, reach) * ray
        c2_interior = _fill_c2(rng, schur, m2, R2)
        c2 = np.where(on_boundary, c2_boundary, c2_interior)
    else:
        c2 = _fill_c2(rng, schur, m2, R2)

    t = (1.0 + lam) * np.abs(c2 - m2)
    slack = np.clip(lam - t * t / lam, 0.0, None)
    m3 = 2.0 * lam * c1 * c2 / (1.0 + lam)
    R3 = slack / (2.0 * (1.0 + lam))
    if biased:
        rim = rng.random(n) < 0.5
        u, v = rng.random(n), rng.random(n)
        radial = np.where(rim, 1.0, np.sqrt(u))
    else:
        u, v = rng.random(n), rng.random(n)
        radial = np.sqrt(u)
    c3 = m3 + R3 * radial * np.exp(2j * np.pi * v)
    return c1, c2, c3


def _fill_c2(rng, schur, m2, R2):
    """Area-uniform draw from the feasible c2 region by rejection.

    The region always contains 0, so acceptance never degenerates; each
    round proposes a fixed number of candidates per unfilled slot to keep
    the round count low at small class parameters.
    """
    n = len(schur)
    out = np.zeros(n, complex)
    pending = np.arange(n)
    while pending.size:
        k = pending.size
        u = rng.random((k, _CANDIDATES))
        v = rng.random((k, _CANDIDATES))
        cand = (schur[pending, None] * np.sqrt(u)) * np.exp(2j * np.pi * v)
        ok = np.abs(cand - m2[pending, None]) <= R2
        hit = ok.any(axis=1)
        first = ok.argmax(axis=1)
        idx = pending[hit]
        out[idx] = cand[hit, first[hit]]
        pending = pending[~hit]
    return out


def _grid_arrays(lam, indices, count, rotation_reduce):
    """Lattice points decoded from flat indices; index 0 is the corner jet."""
    indices = np.asarray(indices)
    c1 = np.zeros(indices.shape, complex)
    c2 = np.zeros(indices.shape, complex)
    c3 = np.zeros(indices.shape, complex)

    corner = indices == 0
    c1[corner] = 1.0 + 0.0j

    lattice = ~corner
    if not lattice.any():
        return c1, c2, c3
    k = max(2, math.ceil((max(count - 1, 1)) ** (1.0 / 6.0)))
    flat = indices[lattice] - 1
    digits = []
    for _ in range(6):
        digits.append(flat % k)
        flat = flat // k
    i_r1, i_th, i_f2, i_p2, i_f3, i_p3 = digits

    frac = np.linspace(0.0, 1.0, k)
    r1 = frac[i_r1]
    theta = np.zeros(r1.shape) if rotation_reduce else 2.0 * np.pi * i_th / k
    g1 = r1 * np.exp(1j * theta)
    schur = np.clip(1.0 - r1 * r1, 0.0, None)

    m2 = lam * g1 * g1 / (1.0 + lam)
    R2 = lam / (1.0 + lam)
    phi = 2.0 * np.pi * i_p2 / k
    ray = np.exp(1j * phi)
    proj = m2 * np.conj(ray)
    reach = proj.real + np.sqrt(np.clip(R2 * R2 - proj.imag ** 2, 0.0, None))
    g2 = frac[i_f2] * np.minimum(schur, reach) * ray

    t = (1.0 + lam) * np.abs(g2 - m2)
    slack = np.clip(lam - t * t / lam, 0.0, None)
    m3 = 2.0 * lam * g1 * g2 / (1.0 + lam)
    R3 = slack / (2.0 * (1.0 + lam))
    g3 = m3 + frac[i_f3] * R3 * np.exp(2j * np.pi * i_p3 / k)

    c1[lattice] = g1
    c2[lattice] = g2
    c3[lattice] = g3
    return c1, c2, c3
