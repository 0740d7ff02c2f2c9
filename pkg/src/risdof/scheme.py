"""Numerical synthesis of the RIS cancellation.

Channels are drawn i.i.d. circularly-symmetric complex Gaussian from a
seeded generator.  Zeroing the first f1 rows/columns of the cross channel
H21 and f2 rows/columns of H12 is a linear system in the reflection
vector psi: each targeted entry (a, b) of a cross link with RIS-to-Rx
matrix G and Tx-to-RIS matrix D contributes one equation with coefficient
row G[a, :] * D[:, b] and right-hand side -H[a, b].  With at most r
targeted entries the stacked system is (generically) full row rank and
underdetermined; psi is its minimum-norm least-squares solution.

Tolerances (relative to the scale of the untouched channel):
zero blocks 1e-9, rank decisions 1e-8, solver residual 1e-9, and a
conditioning floor of 1e-10 on the smallest retained singular value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import dof_core
from .model import AntennaConfig, CaseLabel, RisConfig
from .dof_core import ElimMode, EliminationPlan

ZERO_BLOCK_TOL = 1e-9
RANK_TOL = 1e-8
RESIDUAL_TOL = 1e-9
CONDITION_FLOOR = 1e-10

_FULL_RANK_RETRIES = 10
_RESAMPLE_SEED_STRIDE = 7919  # prime stride for derived retry seeds


class InfeasibleBudget(ValueError):
    """More entries targeted for cancellation than RIS elements."""


class IllConditioned(RuntimeError):
    """Stacked cancellation system is numerically rank deficient."""


class ZeroBlockViolation(RuntimeError):
    """A supposedly cancelled entry exceeds tolerance after applying psi."""


@dataclass(frozen=True)
class ChannelSet:
    """All channel matrices of one draw, plus the seed that produced it.

    h_ij is the Tx_i -> Rx_j direct link (n_j x m_i), d_i the Tx_i -> RIS
    link (r x m_i), g_i the RIS -> Rx_i link (n_i x r).
    """

    h11: np.ndarray
    h21: np.ndarray
    h12: np.ndarray
    h22: np.ndarray
    d1: np.ndarray
    d2: np.ndarray
    g1: np.ndarray
    g2: np.ndarray
    seed: int


@dataclass(frozen=True)
class RisVector:
    """Reflection coefficients; amplitudes are unconstrained (active RIS)."""

    psi: np.ndarray
    max_magnitude: float


@dataclass(frozen=True)
class GammaSystem:
    """Stacked linear system for the targeted cross-channel entries.

    gamma1/gamma2 hold the coefficient rows of the 2->1 and 1->2 links;
    rhs holds the negated targeted entries in the same order.  Row order
    follows the elimination mode: row-mode links enumerate targeted
    entries row-major (vec of the transposed channel), column-mode links
    column-major (vec of the channel).
    """

    gamma1: np.ndarray
    gamma2: np.ndarray
    rhs: np.ndarray

    @property
    def rows(self) -> int:
        return self.gamma1.shape[0] + self.gamma2.shape[0]

    def stacked(self) -> np.ndarray:
        return np.vstack([self.gamma1, self.gamma2])


@dataclass(frozen=True)
class EffectiveChannels:
    """The four links after applying the RIS reflection."""

    hbar11: np.ndarray
    hbar21: np.ndarray
    hbar12: np.ndarray
    hbar22: np.ndarray
    plan: EliminationPlan


def _complex_normal(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def matrix_rank(a: np.ndarray, scale: float = 1.0, tol: float = RANK_TOL) -> int:
    """Numerical rank with threshold tol * max(sigma_max, scale).

    The explicit ``scale`` floor keeps a fully cancelled matrix (all
    entries at solver-noise level) at rank 0, where a purely relative
    threshold would see only its own noise and report full rank.
    """
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > tol * max(float(s[0]), scale)))


def _is_full_rank(a: np.ndarray) -> bool:
    if a.size == 0:
        return True
    return matrix_rank(a, scale=0.0) == min(a.shape)


def generate_channels(cfg: AntennaConfig, ris: RisConfig, seed: int) -> ChannelSet:
    """Draw all channel matrices from one seeded generator.

    Every matrix is verified full rank (a probability-one event); on the
    astronomically unlikely failure the whole set is redrawn from the
    continuing stream, up to 10 times, keeping the draw deterministic in
    the seed.
    """
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    r = ris.r
    rng = np.random.default_rng(seed)
    for _ in range(_FULL_RANK_RETRIES):
        mats = (
            _complex_normal(rng, n1, m1),
            _complex_normal(rng, n1, m2),
            _complex_normal(rng, n2, m1),
            _complex_normal(rng, n2, m2),
            _complex_normal(rng, r, m1),
            _complex_normal(rng, r, m2),
            _complex_normal(rng, n1, r),
            _complex_normal(rng, n2, r),
        )
        if all(_is_full_rank(m) for m in mats):
            return ChannelSet(*mats, seed=seed)
    raise RuntimeError(f"no full-rank channel draw after {_FULL_RANK_RETRIES} attempts (seed {seed})")


def _link_equations(
    g: np.ndarray, d: np.ndarray, h: np.ndarray, f: int, mode: ElimMode
) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient rows and rhs for zeroing f rows/columns of one link."""
    n, m = h.shape
    r = d.shape[0]
    if mode is ElimMode.ROW:
        if not 0 <= f <= n:
            raise ValueError(f"cannot zero {f} rows of a {n}x{m} link")
        rows = np.einsum("aj,jb->abj", g[:f, :], d).reshape(f * m, r)
        rhs = -h[:f, :].reshape(f * m)
    else:
        if not 0 <= f <= m:
            raise ValueError(f"cannot zero {f} columns of a {n}x{m} link")
        rows = np.einsum("aj,jb->baj", g, d[:, :f]).reshape(f * n, r)
        rhs = -h[:, :f].T.reshape(f * n)
    return rows, rhs


def build_gamma(ch: ChannelSet, plan: EliminationPlan, case: CaseLabel) -> GammaSystem:
    """Assemble the stacked cancellation system for a plan."""
    mode1, mode2 = dof_core.case_modes(case)
    assert (mode1, mode2) == (plan.mode1, plan.mode2), "plan modes do not match the case"
    gamma1, rhs1 = _link_equations(ch.g1, ch.d2, ch.h21, plan.f1, plan.mode1)
    gamma2, rhs2 = _link_equations(ch.g2, ch.d1, ch.h12, plan.f2, plan.mode2)
    return GammaSystem(gamma1=gamma1, gamma2=gamma2, rhs=np.concatenate([rhs1, rhs2]))


def solve_psi(sys: GammaSystem, ris: RisConfig) -> RisVector:
    """Minimum-norm least-squares solution of the stacked system.

    Raises InfeasibleBudget when the system has more rows than RIS
    elements and IllConditioned when the smallest retained singular value
    falls below 1e-10 of the largest (resample the channels in that
    case).  An empty system yields the zero vector.
    """
    if sys.rows > ris.r:
        raise InfeasibleBudget(f"{sys.rows} cancellation equations exceed {ris.r} RIS elements")
    if sys.rows == 0:
        return RisVector(psi=np.zeros(ris.r, dtype=complex), max_magnitude=0.0)
    a = sys.stacked()
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s[-1] < CONDITION_FLOOR * s[0]:
        raise IllConditioned(
            f"singular value ratio {s[-1] / s[0]:.3e} below {CONDITION_FLOOR:.0e}"
        )
    psi = vh.conj().T @ ((u.conj().T @ sys.rhs) / s)
    return RisVector(psi=psi, max_magnitude=float(np.abs(psi).max()))


def system_residual(sys: GammaSystem, psi: RisVector) -> float:
    """Norm of (stacked system applied to psi) minus rhs."""
    if sys.rows == 0:
        return 0.0
    return float(np.linalg.norm(sys.stacked() @ psi.psi - sys.rhs))


def zero_block(matrix: np.ndarray, f: int, mode: ElimMode) -> np.ndarray:
    """The block of a cross link that the plan says must vanish."""
    return matrix[:f, :] if mode is ElimMode.ROW else matrix[:, :f]


def cross_rank_expected(plan: EliminationPlan, h21_shape: tuple[int, int],
                        h12_shape: tuple[int, int]) -> tuple[int, int]:
    """Ranks the two cross links must have after elimination."""
    n1, m2 = h21_shape
    n2, m1 = h12_shape
    rank21 = n1 - plan.f1 if plan.mode1 is ElimMode.ROW else m2 - plan.f1
    rank12 = n2 - plan.f2 if plan.mode2 is ElimMode.ROW else m1 - plan.f2
    return rank21, rank12


def effective_channels(
    ch: ChannelSet,
    psi: RisVector,
    plan: EliminationPlan,
    case: CaseLabel,
    zero_tol: float = ZERO_BLOCK_TOL,
) -> EffectiveChannels:
    """Apply the reflection to all four links and check the zero blocks.

    hbar_ij = h_ij + g_j diag(psi) d_i.  Raises ZeroBlockViolation when a
    targeted entry exceeds zero_tol * (1 + Frobenius norm of the original
    link), which indicates an upstream solver failure.
    """
    reflected = psi.psi
    eff = EffectiveChannels(
        hbar11=ch.h11 + (ch.g1 * reflected) @ ch.d1,
        hbar21=ch.h21 + (ch.g1 * reflected) @ ch.d2,
        hbar12=ch.h12 + (ch.g2 * reflected) @ ch.d1,
        hbar22=ch.h22 + (ch.g2 * reflected) @ ch.d2,
        plan=plan,
    )
    for name, hbar, h, f, mode in (
        ("h21", eff.hbar21, ch.h21, plan.f1, plan.mode1),
        ("h12", eff.hbar12, ch.h12, plan.f2, plan.mode2),
    ):
        block = zero_block(hbar, f, mode)
        if block.size:
            worst = float(np.abs(block).max())
            limit = zero_tol * (1.0 + float(np.linalg.norm(h)))
            if worst > limit:
                raise ZeroBlockViolation(
                    f"cancelled block of {name} has entry {worst:.3e} > {limit:.3e}"
                )
    return eff


def synthesize(
    cfg: AntennaConfig, ris: RisConfig, case: CaseLabel, seed: int
) -> tuple[ChannelSet, RisVector, EffectiveChannels]:
    """Full pipeline: channels, optimal plan, cancellation system, psi.

    Deterministic in the seed.  An ill-conditioned draw (measure-zero) is
    retried with a derived seed a bounded number of times.
    """
    plan = dof_core.optimal_elimination(cfg, ris, case)
    last_error: Exception | None = None
    for attempt in range(_FULL_RANK_RETRIES):
        ch = generate_channels(cfg, ris, seed + _RESAMPLE_SEED_STRIDE * attempt)
        sys = build_gamma(ch, plan, case)
        try:
            psi = solve_psi(sys, ris)
        except IllConditioned as err:
            last_error = err
            continue
        return ch, psi, effective_channels(ch, psi, plan, case)
    raise IllConditioned(f"no well-conditioned draw after {_FULL_RANK_RETRIES} attempts") from last_error


def _complex_pairs(vec: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in vec]


def instance_record(
    cfg: AntennaConfig,
    ris: RisConfig,
    case: CaseLabel,
    seed: int,
    ch: ChannelSet,
    psi: RisVector,
    eff: EffectiveChannels,
) -> dict:
    """JSON-serializable summary of one synthesized instance."""
    sys = build_gamma(ch, eff.plan, case)
    rank21, rank12 = cross_rank_expected(eff.plan, ch.h21.shape, ch.h12.shape)
    return {
        "config": {
            "m1": cfg.m1, "m2": cfg.m2, "n1": cfg.n1, "n2": cfg.n2,
            "swapped": cfg.swapped,
        },
        "r": ris.r,
        "seed": seed,
        "case": case.value,
        "plan": {
            "f1": eff.plan.f1, "f2": eff.plan.f2,
            "mode1": eff.plan.mode1.value, "mode2": eff.plan.mode2.value,
            "cost": eff.plan.cost,
        },
        "psi": _complex_pairs(psi.psi),
        "residual": system_residual(sys, psi),
        "ranks": {
            "hbar11": matrix_rank(eff.hbar11, scale=1.0 + float(np.linalg.norm(ch.h11))),
            "hbar21": matrix_rank(eff.hbar21, scale=1.0 + float(np.linalg.norm(ch.h21))),
            "hbar12": matrix_rank(eff.hbar12, scale=1.0 + float(np.linalg.norm(ch.h12))),
            "hbar22": matrix_rank(eff.hbar22, scale=1.0 + float(np.linalg.norm(ch.h22))),
            "expected_hbar21": rank21,
            "expected_hbar12": rank12,
        },
    }


def dump_instance(path: str | Path, record: dict) -> None:
    Path(path).write_text(json.dumps(record, indent=2) + "\n")
