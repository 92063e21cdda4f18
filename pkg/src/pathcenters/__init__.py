"""Exact-arithmetic toolkit for the center problem of v' = sum a_i(x) v^(i+1):
truncated path signatures over the Gaussian rationals, the D/L operator
representation, first return maps with an independent ODE oracle, and the
structural decompositions and center generators of the group of formal paths.
"""

from .errors import OrderMismatchError, ParseError
from .scalars import GaussianRational, format_scalar, parse_scalar
from .series import (
    FreeSeries,
    commutator,
    enumerate_words,
    group_commutator,
    series_exp,
    series_from_text,
    series_inverse,
    series_log,
    series_to_text,
    truncate,
    weight,
)
from .lie import (
    LieSeries,
    abel_gen_count,
    bch,
    expand_bracket,
    free_lie_dim,
    is_group_like,
    is_lie_element,
    lucas,
    lyndon_basis,
    mobius,
    shuffle_product,
)
from .paths import (
    MomentFactor,
    MomentSpec,
    PathSpec,
    Segment,
    distance,
    is_closed,
    iterated_integral,
    lcs_order,
    moment_eval,
    moment_from_json,
    moment_to_json,
    monodromy,
    path_from_json,
    path_inverse,
    path_to_json,
    star_concat,
    triviality_order,
)
from .operators import (
    DLPoly,
    DLSeries,
    dl_apply,
    dl_apply_word,
    dl_bracket,
    dl_exp,
    dl_log,
    dl_monodromy,
    dl_normalize,
    dl_poly_to_text,
    dl_series_to_text,
    gamma_nested_bracket,
    gamma_of_bracket,
    gamma_product_formula,
    psi,
)
from .returnmap import (
    CenterReport,
    ReturnSeries,
    is_center,
    ode_return_map,
    p_poly,
    phi_forward,
    phi_inverse,
    return_map,
    return_series_from_text,
    return_series_to_json,
    return_series_to_text,
    rs_compose,
    rs_invert,
)
from .structure import (
    DiagonalLieVector,
    center_generator,
    diagonal_product,
    diagonal_projection,
    group_factorize,
    lie_center_test,
    lie_decompose,
    pl_center_element,
    section_diagonal,
    section_two_letter,
    series_rank,
    two_letter_generator,
    two_letter_project,
)

__version__ = "0.1.0"
