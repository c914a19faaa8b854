"""Exact verification of Hopf algebras, right Hopf algebroids and Hopf 2-algebras over Q."""

__version__ = "0.1.0"

from .algebroid import (  # noqa: E402
    RightBialgebroid,
    build_right_bialgebroid,
    check_bialgebroid_axioms,
    check_full_hopf_antipode,
    check_lambda_bijective,
    check_mu_bijective,
)
from .bicross import (  # noqa: E402
    BicrossData,
    BicrossedModule,
    Hopf2Algebra,
    build_bicrossproduct,
    build_hopf2,
    build_mirror,
    check_bicross_conditions,
    check_hopf2,
    check_peiffer,
    candidate_full_antipode,
)
from .catalog import builtin  # noqa: E402
from .hopfcore import HopfData, check_hopf_axioms  # noqa: E402
from .report import CheckReport, ConstructionError  # noqa: E402

__all__ = [
    "BicrossData", "BicrossedModule", "CheckReport", "ConstructionError", "Hopf2Algebra", "HopfData",
    "RightBialgebroid", "build_bicrossproduct", "build_hopf2", "build_mirror", "build_right_bialgebroid",
    "builtin", "check_bialgebroid_axioms", "check_bicross_conditions", "check_full_hopf_antipode",
    "check_hopf2", "check_hopf_axioms", "check_lambda_bijective", "check_mu_bijective", "check_peiffer",
    "candidate_full_antipode",
]
