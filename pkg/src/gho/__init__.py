"""Generalized harmonic oscillator with a position-dependent mass."""
from .coherent import CoherentState, coherent_overlap, expectation_mu, expectation_pi, make_coherent, uncertainties
from .errors import GHOError
from .grid import Grid, WaveFunction
from .mass import (
    CATALOG,
    Domain,
    MassKind,
    MassSpec,
    MassTable,
    RangeClass,
    classify_range,
    make_mass,
    mu_map,
)
from .oscillator import OrderingParams, eigenfunction, eigenfunctions, eigenvalue, gho_ordering
from .spectral import SpectralReport, VerifyConfig, verify

__version__ = "0.1.0"
