"""Exact Hirzebruch genera and characteristic-class arithmetic for CP^n-like manifolds."""

__version__ = "0.1.0"

from .classifier import (
    classify_cp4,
    classify_general,
    cp4_candidates,
    cp4_solve_c2,
    fano_index_check,
    solve_todd_one,
    todd_from_c1_pontrjagin,
    yau_check,
)
from .cpn import (
    CPnModel,
    HodgeTable,
    chern_to_pontrjagin,
    euler_characteristic,
    infer_hodge,
    standard_pontrjagin,
    todd_from_hodge,
)
from .genus import (
    GradedClassPoly,
    Genus,
    ahat_genus,
    c1cn1_constraint,
    chi_y_genus,
    evaluate,
    k_polynomials,
    k_polynomials_pontrjagin,
    l_genus,
    todd_genus,
)
from .series import (
    ParamPolynomial,
    SeriesError,
    TruncatedSeries,
    coefficient,
    generalized_binomial,
    series_add,
    series_compose,
    series_div_unit,
    series_exp,
    series_log,
    series_mul,
    series_pow,
)
