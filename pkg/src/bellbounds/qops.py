"""Measurement projectors and Bell operators for bipartite qubit systems.

Measurement directions live in the x-z plane and are given as angles in
radians.  Every constructor symmetrizes its result, (O + O^dag)/2, so
Hermiticity is exact by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import BasisError, InputError, NumericError
from .polytope import EventStructure, Inequality

COMPUTATIONAL = "computational"
BELL = "bell"

_SQ2 = 1.0 / math.sqrt(2.0)

#: Columns are the Bell states phi+, psi+, psi-, phi- in the computational
#: basis |00>, |01>, |10>, |11>.
BELL_BASIS = np.array(
    [
        [_SQ2, 0.0, 0.0, _SQ2],
        [0.0, _SQ2, _SQ2, 0.0],
        [0.0, _SQ2, -_SQ2, 0.0],
        [_SQ2, 0.0, 0.0, -_SQ2],
    ],
    dtype=np.complex128,
)

Side = Literal["left", "right"]


def canonical_angle(theta: float) -> float:
    """Representative in [0, 2*pi); operators themselves are 2*pi-periodic."""
    if not math.isfinite(theta):
        raise InputError("angle must be finite")
    return theta % (2.0 * math.pi)


def hermitize(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.complex128)
    return (M + M.conj().T) / 2.0


def sigma(theta: float) -> np.ndarray:
    """Spin observable along the x-z direction theta: eigenvalues -1 and +1."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def projector(theta: float) -> np.ndarray:
    """Rank-1 spin-up projector (1 + sigma(theta)) / 2."""
    return hermitize((np.eye(2) + sigma(theta)) / 2.0)


def single_site(theta: float, side: Side) -> np.ndarray:
    """Single-particle measurement on the given side, identity on the other."""
    if side == "left":
        return hermitize(np.kron(projector(theta), np.eye(2)))
    if side == "right":
        return hermitize(np.kron(np.eye(2), projector(theta)))
    raise InputError(f"side must be 'left' or 'right', got {side!r}")


def joint(theta_left: float, theta_right: float) -> np.ndarray:
    """Joint spin-up measurement: projector on the left times projector on
    the right."""
    return hermitize(np.kron(projector(theta_left), projector(theta_right)))


@dataclass
class BellOperator:
    """Hermitian operator obtained from an inequality and an angle map."""

    matrix: np.ndarray
    basis: str = COMPUTATIONAL
    source: Optional[Inequality] = None
    angles: Optional[dict[int, float]] = None

    def __post_init__(self):
        self.matrix = hermitize(self.matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": self.basis,
            "entries": [
                [[float(z.real), float(z.imag)] for z in row]
                for row in self.matrix
            ],
            "angles": None
            if self.angles is None
            else {str(k): canonical_angle(v) for k, v in self.angles.items()},
            "source": None if self.source is None else self.source.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BellOperator":
        try:
            dim = int(obj["dim"])
            entries = obj["entries"]
            M = np.array(
                [[complex(re, im) for re, im in row] for row in entries],
                dtype=np.complex128,
            )
            if M.shape != (dim, dim):
                raise InputError("entry grid does not match dim")
            basis = obj.get("basis", COMPUTATIONAL)
            if basis not in (COMPUTATIONAL, BELL):
                raise InputError(f"unknown basis tag {basis!r}")
            angles = obj.get("angles")
            source = obj.get("source")
            return cls(
                matrix=M,
                basis=basis,
                source=None if source is None else Inequality.from_json(source),
                angles=None
                if angles is None
                else {int(k): float(v) for k, v in angles.items()},
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad operator JSON: {exc}") from exc


@dataclass
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace state (possibly mixed)."""

    matrix: np.ndarray
    basis: str = COMPUTATIONAL

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=np.complex128)
        if np.max(np.abs(M - M.conj().T)) > 1e-12:
            raise InputError("density matrix is not Hermitian")
        self.matrix = hermitize(M)
        if abs(np.trace(self.matrix).real - 1.0) > 1e-12:
            raise InputError("density matrix trace differs from 1")
        if float(np.min(np.linalg.eigvalsh(self.matrix))) < -1e-12:
            raise InputError("density matrix has a negative eigenvalue")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def bell_operator(
    ineq: Inequality, angles: dict[int, float], structure: EventStructure
) -> BellOperator:
    """Substitute projectors for the classical probabilities of ``ineq``.

    Every single term becomes a one-sided measurement, every joint term a
    product measurement, weighted by the inequality coefficients.
    """
    if len(structure.sides) != 2:
        raise InputError("Bell operators require a bipartite side partition")
    ineq.check_keys(structure)
    side_of = structure.side_of_event()
    O = np.zeros((4, 4), dtype=np.complex128)
    for key, coeff in ineq.coeffs.items():
        if isinstance(key, int):
            if key not in angles:
                raise InputError(f"no angle given for event {key}")
            side: Side = "left" if side_of[key] == 0 else "right"
            O = O + float(coeff) * single_site(angles[key], side)
        else:
            i, j = key
            if i not in angles or j not in angles:
                raise InputError(f"no angle given for joint ({i},{j})")
            if side_of[i] == 1:  # store left event first
                i, j = j, i
            O = O + float(coeff) * joint(angles[i], angles[j])
    return BellOperator(
        matrix=O, basis=COMPUTATIONAL, source=ineq, angles=dict(angles)
    )


def chsh_operator(
    alpha: float, beta: float, gamma: float, delta: float
) -> BellOperator:
    """Correlation-form operator
    sigma(alpha) x sigma(gamma) + sigma(beta) x sigma(gamma)
    + sigma(beta) x sigma(delta) - sigma(alpha) x sigma(delta)."""
    O = (
        np.kron(sigma(alpha), sigma(gamma))
        + np.kron(sigma(beta), sigma(gamma))
        + np.kron(sigma(beta), sigma(delta))
        - np.kron(sigma(alpha), sigma(delta))
    )
    return BellOperator(
        matrix=O,
        basis=COMPUTATIONAL,
        angles={1: alpha, 2: beta, 3: gamma, 4: delta},
    )


def expectation(W: DensityMatrix, O: BellOperator) -> float:
    """Tr[W O]; real for Hermitian arguments, checked to 1e-12."""
    if W.dim != O.dim:
        raise InputError("dimension mismatch between state and operator")
    if W.basis != O.basis:
        raise BasisError(
            f"state basis {W.basis!r} does not match operator basis {O.basis!r}"
        )
    val = complex(np.trace(W.matrix @ O.matrix))
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise NumericError(f"expectation has imaginary part {val.imag}")
    return val.real


def to_bell_basis(O: BellOperator) -> BellOperator:
    """Conjugate into the Bell basis {phi+, psi+, psi-, phi-}."""
    if O.basis == BELL:
        raise BasisError("operator is already in the Bell basis")
    if O.dim != 4:
        raise InputError("Bell-basis conversion is defined for dim 4")
    M = BELL_BASIS.conj().T @ O.matrix @ BELL_BASIS
    return BellOperator(matrix=M, basis=BELL, source=O.source, angles=O.angles)
