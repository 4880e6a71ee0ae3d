"""Exact categories: ``VECTQ``, ``FILTQ`` and ``FGAB``."""

from .objects import (
    FGAB,
    FILTQ,
    VECTQ,
    CategoryError,
    DirectSum,
    InstanceId,
    Mor,
    Obj,
    Presentation,
    ab,
    block_mor,
    compose,
    direct_sum,
    filt,
    present,
    present_orders,
    vect,
    zero_object,
)
from .hom import (
    HomSpace,
    LinearSystem,
    factor_through,
    hom_group,
    hom_post,
    hom_pre,
    hom_space,
)
from .limits import (
    Classification,
    Square,
    Sub,
    classify,
    cokernel,
    coimage,
    epi_mono_factorization,
    image,
    is_admissible_epi,
    is_admissible_mono,
    is_iso,
    is_short_exact,
    is_strict,
    kernel,
    pullback_along_epi,
    pushout_along_mono,
)
from .projective import (
    detect_epi_via_generators,
    generator_family,
    is_projective,
    is_projective_by_splitting,
    projective_cover,
    split_section,
)

__all__ = [name for name in dir() if not name.startswith("_")]
