"""Exact characteristic numbers, twisted genera and the 24-dimensional String cobordism lattice."""

from __future__ import annotations

from .errors import (CharnumError, ConsistencyError, ManifestError, NotRealizableError, NotStringError,
                     NotSymmetricError, UsageError)
from .genus import ahat_class, l_class, multiplicative_sequence, wu_spin_class
from .graded import GradedPoly, PontryaginNumbers, bernoulli, pair, symmetric_reduce
from .lattice import (CobordismVector, SublatticeConstraint, conjecture_sweep, decompose, divisibility_theorems,
                      gcd_over_sublattice, kappa, kappa_data, modified_signature)
from .manifolds import RingModel, WallPair, load_manifest, numbers, signature
from .qforms import QSeries, delta, delta_bar, eisenstein_e4, eisenstein_e6, witten_direct, witten_modular
from .twist import ChernCharacter, exterior_power, parse_twist, symmetric_power, twisted_ahat, twisted_sig

__version__ = "0.1.0"
