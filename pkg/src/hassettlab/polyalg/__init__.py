"""Polynomial algebra over prime fields: arithmetic, Groebner bases, ideals."""

from .groebner import (
    GroebnerBasis,
    buchberger,
    groebner,
    is_groebner,
    is_reduced,
    normal_form,
    s_polynomial,
    unreduced_spolys,
)
from .ideal import (
    Ideal,
    RingMap,
    dim_and_degree,
    elimination_ideal,
    hilbert_data,
    hilbert_degree,
    ideal_intersection,
    ideal_member,
    krull_dimension,
    minors_ideal,
    random_elements_from_ideal,
    random_form,
    random_form_in_ideal,
    ring_map_kernel,
)
from .ring import DEFAULT_PRIME, Poly, PolyRing, monomials_of_degree
from .smooth import forms_have_no_common_zero, is_projectively_smooth, jacobian

__all__ = [
    "DEFAULT_PRIME", "GroebnerBasis", "Ideal", "Poly", "PolyRing", "RingMap",
    "buchberger", "dim_and_degree", "elimination_ideal", "forms_have_no_common_zero",
    "groebner", "hilbert_data", "hilbert_degree", "ideal_intersection", "ideal_member",
    "is_groebner", "is_projectively_smooth", "is_reduced", "jacobian", "krull_dimension",
    "minors_ideal", "monomials_of_degree", "normal_form", "random_elements_from_ideal",
    "random_form", "random_form_in_ideal", "ring_map_kernel", "s_polynomial",
    "unreduced_spolys",
]
