"""Requirement/capability analysis in matrix form.

``Q`` is ``M x nr`` (row v = requirement vector of victim v) and ``P`` is
``nr x N`` (column r = capability vector of robot r). ``U = Q @ P`` is
``M x N`` and counts, for every (victim, robot) pair, how many of the
victim's requirements the robot covers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InvalidInputError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CapabilityMatrices:
    Q: np.ndarray
    P: np.ndarray

    def __post_init__(self):
        Q = np.atleast_2d(np.asarray(self.Q, dtype=np.int64))
        P = np.asarray(self.P, dtype=np.int64)
        if P.ndim == 1:
            P = P[:, None]
        if Q.shape[1] != P.shape[0]:
            raise InvalidInputError(
                f"Q has {Q.shape[1]} requirement kinds but P has {P.shape[0]}")
        for name, arr in (("Q", Q), ("P", P)):
            if not np.isin(arr, (0, 1)).all():
                raise InvalidInputError(f"{name} must be binary")
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "P", P)

    @classmethod
    def from_vectors(cls, requirements, capabilities) -> CapabilityMatrices:
        """Build from per-victim ``q`` vectors and per-robot ``p`` vectors."""
        Q = np.array(requirements, dtype=np.int64).reshape(len(requirements), -1)
        P = np.array(capabilities, dtype=np.int64).reshape(len(capabilities), -1).T
        return cls(Q, P)

    @property
    def n_victims(self) -> int:
        return self.Q.shape[0]

    @property
    def n_robots(self) -> int:
        return self.P.shape[1]

    @property
    def n_req(self) -> int:
        return self.Q.shape[1]


@dataclass(frozen=True, eq=False)
class ReqAnalysisIntermediate:
    U: np.ndarray  # (victim, robot) -> covered requirement count
    S: np.ndarray  # victim -> total requirement count


@dataclass(frozen=True)
class ReqAnalysisResult:
    l_full: tuple[tuple[int, ...], ...]
    l_partial: tuple[tuple[int, ...], ...]
    l_potential: tuple[tuple[tuple[int, ...], ...], ...]


def reqment_analysis(mats: CapabilityMatrices) -> tuple[ReqAnalysisResult, ReqAnalysisIntermediate]:
    Q, P = mats.Q, mats.P
    S = Q.sum(axis=1)
    if (S == 0).any():
        bad = np.flatnonzero(S == 0).tolist()
        raise InvalidInputError(f"victims {bad} have no requirements")
    U = Q @ P
    full = (U > 0) & (U == S[:, None])
    partial = (U > 0) & (U < S[:, None])
    l_full = tuple(tuple(np.flatnonzero(full[:, r]).tolist()) for r in range(mats.n_robots))
    l_partial = tuple(tuple(np.flatnonzero(partial[:, r]).tolist()) for r in range(mats.n_robots))
    # robot r is a potential server of (v, j) iff Q[v, j] = 1 and P[j, r] = 1
    capable = [tuple(np.flatnonzero(P[j]).tolist()) for j in range(mats.n_req)]
    l_potential = tuple(
        tuple(capable[j] if Q[v, j] else () for j in range(mats.n_req))
        for v in range(mats.n_victims)
    )
    return ReqAnalysisResult(l_full, l_partial, l_potential), ReqAnalysisIntermediate(U, S)


def missing_cap(mats: CapabilityMatrices, result: ReqAnalysisResult) -> list[tuple[int, int]]:
    """(victim, requirement) pairs that no robot in the fleet can serve."""
    return [
        (v, j)
        for v in range(mats.n_victims)
        for j in range(mats.n_req)
        if mats.Q[v, j] and not result.l_potential[v][j]
    ]
