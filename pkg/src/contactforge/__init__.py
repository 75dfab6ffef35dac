"""contactforge: exact symbolic exterior calculus over rational polynomial rings.

The package audits a family of computational claims about contact geometry on
matrix groups: the odd-symplectic form on SL(2p), its Reeb field and
invariance groups, Cartan classes of linear forms on Lie algebras, and the
induced contact form on SO(3). Everything symbolic is exact (Fraction
coefficients, structural equality); the only floating point lives in the
torus-scan module.
"""

__version__ = "0.1.0"

from .errors import (
    ContactforgeError,
    DegreeError,
    DimensionError,
    IncompleteAssignmentError,
    InvalidAlgebraError,
    ParameterError,
    TermLimitError,
)
from .polyring import Poly
from .exterior import Form, VField

__all__ = [
    "ContactforgeError",
    "DegreeError",
    "DimensionError",
    "Form",
    "IncompleteAssignmentError",
    "InvalidAlgebraError",
    "ParameterError",
    "Poly",
    "TermLimitError",
    "VField",
    "__version__",
]
