"""Exact generalized power series, cuts of ordered groups and towers of complements."""

from .config import DEFAULT, Config
from .cuts import MINUS, PLUS, Cut, cmp_cut, diff, left_sum, n_fold, neg_cut, right_sum, set_cut, shift, z_mul
from .errors import (
    BoundExceeded, HahnError, HorizonExceeded, NotInGroup, NotPseudoCauchy, NotSimpleRoot,
    ParseError, UnrepresentableCut, ZeroDivisor,
)
from .groups import integers, lex_power, p_hull, rational_subgroup
from .literals import parse_cut, parse_elem, parse_field, parse_group, parse_series
from .series import HahnField, Series, cocycle_verify, derive_factor_set
from .tower import in_complement, mu, split_at

__version__ = "0.1.0"
