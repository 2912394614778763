"""Finite unary semigroups and their division bimagmas."""

from .algebra import (FiniteBimagma, FiniteSemigroup, FiniteUnarySemigroup, canonical_form,
                      format_algebra, is_isomorphic, parse_algebra, read_algebra, write_algebra)
from .functors import roundtrip_check, to_division_bimagma, to_unary_semigroup
from .registry import default_registry
from .search import SearchSpec, enumerate_models, find_witness
from .terms import find_violation, holds, parse_identity, parse_term

__version__ = "0.1.0"
