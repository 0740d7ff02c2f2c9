"""Antenna/RIS configuration types and the case taxonomy.

A two-user MIMO interference channel is described by four antenna counts
(M1, M2 at the transmitters, N1, N2 at the receivers) plus the number of
RIS reflecting elements R.  Configurations are canonicalized so that
max{M1, N1} >= max{M2, N2}; every canonical configuration falls into at
least one of four elimination cases that determine which rows or columns
of the cross channels the RIS cancels.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass


class CoverageError(RuntimeError):
    """No elimination case applies to a canonical configuration.

    This cannot happen for valid inputs; it exists so an impossible gap in
    the case taxonomy fails loudly instead of silently.
    """


class CaseLabel(enum.Enum):
    """Elimination strategy applicable to an antenna configuration."""

    CASE1 = "1"      # row-row:       Tx1 largest, M2 >= N1
    CASE2_1 = "2-1"  # column-row:    M1 >= N2, N1 >= M2, M1 >= N1
    CASE2_2 = "2-2"  # column-row:    M1 >= N2, N1 >= M2, N1 > M1
    CASE3 = "3"      # column-column: Rx1 largest, N2 >= M1

    def __str__(self) -> str:
        return f"case {self.value}"


@dataclass(frozen=True)
class AntennaConfig:
    """Canonical antenna counts of the two transmit-receive pairs.

    ``swapped`` records whether the two users were relabeled by
    :func:`canonicalize` so per-user results can be mapped back to the
    caller's original indices.  The sum-DoF itself is invariant under the
    relabeling.
    """

    m1: int
    m2: int
    n1: int
    n2: int
    swapped: bool = False

    def __post_init__(self) -> None:
        for name in ("m1", "m2", "n1", "n2"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class RisConfig:
    """Number of RIS reflecting elements; r = 0 models absence of the RIS."""

    r: int

    def __post_init__(self) -> None:
        if not isinstance(self.r, int) or isinstance(self.r, bool) or self.r < 0:
            raise ValueError(f"r must be a non-negative integer, got {self.r!r}")


def canonicalize(m1: int, m2: int, n1: int, n2: int) -> AntennaConfig:
    """Return the configuration relabeled so max{m1, n1} >= max{m2, n2}.

    If the convention already holds the counts are returned unchanged,
    otherwise the two users are swapped ((m1, n1) <-> (m2, n2)) and the
    result carries ``swapped=True``.
    """
    cfg = AntennaConfig(m1, m2, n1, n2)
    if max(cfg.m1, cfg.n1) >= max(cfg.m2, cfg.n2):
        return cfg
    return AntennaConfig(m2, m1, n2, n1, swapped=True)


def is_canonical(cfg: AntennaConfig) -> bool:
    return max(cfg.m1, cfg.n1) >= max(cfg.m2, cfg.n2)


@functools.lru_cache(maxsize=None)
def classify_cases(cfg: AntennaConfig) -> tuple[CaseLabel, ...]:
    """All applicable case labels, in declaration order.

    The conditions overlap (for instance M2 = N1 satisfies both the
    row-row and column-row premises), so more than one label may apply;
    downstream DoF computation evaluates every applicable case and keeps
    the best.  The union of the cases covers every canonical
    configuration.
    """
    if not is_canonical(cfg):
        raise ValueError(f"configuration {cfg} is not canonical; call canonicalize first")
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    labels = []
    if m1 >= max(m2, n1, n2) and m2 >= n1:
        labels.append(CaseLabel.CASE1)
    if m1 >= n2 and n1 >= m2:
        labels.append(CaseLabel.CASE2_1 if m1 >= n1 else CaseLabel.CASE2_2)
    if n1 >= max(m1, m2, n2) and n2 >= m1:
        labels.append(CaseLabel.CASE3)
    if not labels:
        raise CoverageError(f"no case applies to canonical configuration {cfg}")
    return tuple(labels)
