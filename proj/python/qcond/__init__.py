"""Projective-measurement calculus for entangled subsystems.

Dense state vectors over small tensor-product spaces, the Born rule with
collapse and conditional probabilities, exhaustive verification that
cross-subsystem measurement ordering never changes joint outcome
probabilities, and the EPR / delayed-choice-eraser / Wheeler double-slit /
Everett-branch experiments built on top.
"""

from qcond._core import *  # noqa: F401,F403
from qcond._core import __version__, eraser, everett, wheeler  # noqa: F401
