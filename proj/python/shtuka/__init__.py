"""Local shtukas, fundamental alcoves and affine Deligne-Lusztig varieties for GL_n."""

from fractions import Fraction

from . import _shtuka
from ._shtuka import (
    ParseError,
    PrecisionLoss,
    PreconditionError,
    adlv_count,
    bruhat_leq,
    conjugation_bound,
    csd_check_glr,
    csd_check_zink,
    default_precision,
    is_p_fundamental,
    run_acceptance,
    set_default_precision,
    slope_division,
    trivialize,
)

__version__ = _shtuka.__version__


def _strs(nu):
    return [str(Fraction(v)) for v in nu]


def _fracs(nu):
    return [Fraction(v) for v in nu]


def invariants(matrix, field="p=2"):
    out = _shtuka.invariants(matrix, field)
    out["newton"] = _fracs(out["newton"])
    return out


def weyl(element):
    out = _shtuka.weyl(element)
    out["newton"] = _fracs(out["newton"])
    return out


def find_fundamental_alcoves(newton, kappa):
    return _shtuka.find_fundamental_alcoves(_strs(newton), kappa)


def standard_representative(newton, kappa):
    return _shtuka.standard_representative(_strs(newton), kappa)


def dim_formula(mu, newton):
    return Fraction(_shtuka.dim_formula(list(mu), _strs(newton)))


def rank_jb(newton):
    return _shtuka.rank_jb(_strs(newton))


def newton_chain_length(mu, newton):
    return _shtuka.newton_chain_length(list(mu), _strs(newton))
