"""genusone5: minimisation and reduction of genus one models of degree 5."""

from .rings import QQ, PAdicContext, FiniteField, EtaleAlgebra, ZeroDivisorWitness, valuation
from .models import (
    GenusOneModel5,
    Transformation,
    QuadricIntersection,
    apply_transformation,
    deg4_to_deg5,
    deg5_point_to_deg4,
    hesse_model,
    pfaffians,
    reduce_mod_p,
    weierstrass_to_deg4,
)
from .invariants import (
    InvariantTriple,
    WeierstrassCoefficients,
    hesse_invariants,
    invariants,
    jacobian,
    kraus_lift,
    level,
    minimal_discriminant_valuation,
    qi_invariants,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
