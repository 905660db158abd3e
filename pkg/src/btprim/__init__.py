"""Primitive quantum gates for the 24-element binary tetrahedral group.

Subpackages cover the exact group arithmetic (``group``), a small circuit
IR with simulation, lowering, and routing (``circuits``), five-qubit and
24-level-qudit gate constructions (``qubit_gates``, ``qudit_gates``),
SNAP/displacement compilation (``snapcompile``), Pauli-twirled noise and
fidelity experiments (``noise``), fault-tolerant cost estimates
(``resources``), and Euclidean Monte Carlo for the pure gauge theory
(``lattice``).
"""

from . import (  # noqa: F401
    circuits,
    group,
    lattice,
    noise,
    qubit_gates,
    qudit_gates,
    resources,
    snapcompile,
)

__all__ = [
    "circuits",
    "group",
    "lattice",
    "noise",
    "qubit_gates",
    "qudit_gates",
    "resources",
    "snapcompile",
]

__version__ = "0.1.0"
