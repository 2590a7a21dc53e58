"""Exact p-adic valued Fourier analysis and local zeta integrals on tame l-adic fields."""
from .characters import (Character, characters_of_level, dual_char, eval_char, haar_char,
                         inverse, make_character)
from .config import REFERENCE_CONFIGS, SessionConfig
from .errors import TateError
from .fourier import fourier, fourier_shell, haar_integral, inverse_fourier
from .localfield import KElement, LocalFieldParams
from .padic import PadicContext, embed, vp
from .scalars import CycScalar, LaurentPoly, RationalFunc
from .stepfun import GeoTail, ShellFunction, StepFunction
from .zeta import (continue_zeta, gauss_sum, named_family, rho_closed, rho_from_h,
                   schwartz_interval, verify_fe, zeta_integral, zeta_shell)

__version__ = "0.1.0"
