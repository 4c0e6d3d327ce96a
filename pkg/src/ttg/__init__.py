"""Spectral spaces, transfinite dimension functions and support filtrations.

Modules:

* ``ordinal``  : ordinals below omega^omega in Cantor normal form
* ``ordset``   : subsets of ordinal intervals in rank form
* ``space``    : finite, ordinal and Cantor spaces with the spectral predicates
* ``literal``  : text forms of points, subsets and space files
* ``dimfn``    : Krull dimension, Cantor-Bendixson rank, axiom and compatibility checks
* ``ltg``      : support operators, filtration traces, Thomason ideals
* ``stone``    : Boolean presentations and the support bijection for products of fields
* ``cli``      : the ``ttg`` command
"""

from .dimfn import DimensionAssignment, cbrank, check_compatibility, krull, validate
from .errors import TTGError
from .literal import format_subset, load_space, loads_space, parse_subset
from .ltg import SupportDatum, filtration, thomason_ideals
from .ordinal import OMEGA, Ordinal, format_ordinal, parse as parse_ordinal
from .ordset import OrdinalSet
from .space import CantorSpace, FiniteSpace, OrdinalSpace, subspace

__version__ = "0.1.0"
