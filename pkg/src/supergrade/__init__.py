"""supergrade: exact-arithmetic Lie and Jordan superalgebra computations.

Constructs gl/sl/psl-type Lie superalgebras and matrix Jordan superalgebras
over Q, decomposes them into root spaces, computes second cohomology and
universal central extensions, runs the Tits-Kantor-Koecher construction in
both directions, and verifies A(n,n)-type root gradings on desk-scale
instances.
"""

from .errors import SupergradeError

__version__ = "1.0.0"

__all__ = ["SupergradeError", "__version__"]
