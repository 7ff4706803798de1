"""Finite and topological quandles: construction, axiom checking, braid actions."""

from .braid import BraidWord, FixedPointSet, act, fixed_points
from .continuum import (
    AffineLine,
    BallOmega,
    ChartTransport,
    ClosedInterval,
    ContinuumSpec,
    DomainError,
    FamilyFn,
    FamilyOmegaN,
    Gluing,
    OpenIntervalG,
    RealLineArctan,
    TrivialSpace,
    UnitInterval,
    arctan_chart_spec,
    evaluate,
    right_mul,
    right_mul_curves,
    right_mul_inverse,
    spec_from_json,
)
from .finite import (
    BoundExceededError,
    FiniteQuandle,
    are_isomorphic,
    check_quandle,
    check_rack,
    inner_group,
    is_connected,
    make_alexander,
    make_conj,
    make_core,
    make_dihedral,
    make_trivial,
)
from .groups import GroupTable, InvalidGroupError, small_groups
from .polyrack import RationalBivariatePoly, check_polynomial_quandle, check_polynomial_rack
from .report import FiniteReport, LocusReport, VerificationReport
from .verify import (
    nonisomorphism_certificate,
    residual_at,
    trivial_locus,
    verify_closure,
    verify_distributivity,
    verify_homeomorphism,
    verify_idempotency,
)

__version__ = "0.1.0"
