"""Ultra-short sums over roots of integer polynomials modulo split primes.

Polynomials are passed as strings such as ``"X^3+X+3"``. Sum grids come back
as ``(params, values)`` numpy arrays; samplers return numpy arrays.
"""

from ._core import *  # noqa: F401,F403
from ._core import UltrashortError

UltrashortError.kind = property(lambda self: str(self).split(":", 1)[0])

__version__ = "0.1.0"
