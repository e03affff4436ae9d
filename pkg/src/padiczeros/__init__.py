"""Systems of quadratic forms over finite fields and p-adic fields.

Exact evaluation of the sigma1 + sigma2 < 1 admissibility bounds, finite
field quadratic form algebra (including characteristic 2), pencil rank
spectra and zero counts, the minimization condition, and Hensel lifting of
nonsingular zeros.
"""

from .errors import CapExceededError
from .fields import FieldElement, FieldSpec, field
from .forms import (
    AssociatedMatrix,
    CanonicalForm,
    QuadraticForm,
    canonicalize,
    count_zeros_closed,
    rank,
    rank_le_via_minors,
)
from .halfminors import HalfMinorForm, half_minor_polynomial
from .hensel import IntegerQuadraticSystem, PadicVector, hensel_lift, reduce_mod_p
from .pencils import (
    Pencil,
    count_common_zeros_bruteforce,
    count_common_zeros_exact,
    count_error_bound,
    count_singular_zeros,
    find_nonsingular_zero,
    is_minimized,
    rank_spectrum,
    verify_count_lower_bound,
    verify_spectrum_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "AssociatedMatrix",
    "CanonicalForm",
    "CapExceededError",
    "FieldElement",
    "FieldSpec",
    "HalfMinorForm",
    "IntegerQuadraticSystem",
    "PadicVector",
    "Pencil",
    "QuadraticForm",
    "canonicalize",
    "count_common_zeros_bruteforce",
    "count_common_zeros_exact",
    "count_error_bound",
    "count_singular_zeros",
    "count_zeros_closed",
    "field",
    "find_nonsingular_zero",
    "half_minor_polynomial",
    "hensel_lift",
    "is_minimized",
    "rank",
    "rank_le_via_minors",
    "rank_spectrum",
    "reduce_mod_p",
    "verify_count_lower_bound",
    "verify_spectrum_bounds",
    "__version__",
]
