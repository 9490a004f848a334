"""Bases of twisted affine root supersystems."""
from .bases import Base, Decomposition, Verdict, decompose, is_base, positive_roots, verify_at_cutoff
from .canon import (
    CanonicalParams,
    are_conjugate,
    build_base,
    conjugacy_word,
    make_admissible,
    make_fine,
    match_canonical,
    predicted_positive_roots,
)
from .core import Family, SignedSymbol, SystemDescriptor, Vector, form_kappa, form_star, parse_vector, sgn, support
from .rootsys import RootClass, contains, enumerate_roots, is_long_like
from .weyl import Letter, ReflectionWord, apply_word, belongto_operator, check_preserves_R, reflect

__version__ = "0.1.0"
