"""Exact verification of twisted, L-R-twisted and L-R-smash products of
finite-dimensional algebras given by structure constants."""
from types import ModuleType as _ModuleType

from .algebra import (Algebra, AlgebraMorphism, check_algebra, check_morphism, is_isomorphism,
                      multiplication_table, opposite, tensor_algebra)
from .exactfield import GF, QQ, Field, FieldError, Matrix, SingularMatrixError, field_from_tag
from .hopf import (Bialgebra, BicomoduleAlgebra, BimoduleAlgebra, HopfAlgebra, YDLAlgebra,
                   build_lr_smash, check_bialgebra, check_bicomodule_algebra,
                   check_bimodule_algebra, check_hopf, check_ydl, diagonal_crossed,
                   iterated_smash, regular_bicomodule, smash_maps)
from .invariance import (Cocycle, TwistData, build_bullet_algebra, build_twisted_pair,
                         check_cocycle, check_invundtw, check_pregat, drinfeld_twist,
                         invariance_iso, invariance_suite, smash_invariance_iso,
                         specialize_from_hopf, twist_bimodule_algebra)
from .iterate import TripleData, build_iterated, check_hexagons
from .report import CheckResult, PreconditionError, Report
from .twisted import (LRPair, QMap, Twistor, TwistingMap, build_lr_product, build_q_product,
                      build_twisted_by_twistor, build_twisted_product, canonical_twistors,
                      check_lr_pair, check_lr_suite, check_qmap, check_twisting_map,
                      check_twistor, detwist, qop_correspondence)

__version__ = "0.1.0"

__all__ = sorted(name for name, obj in globals().items()
                 if not name.startswith("_") and not isinstance(obj, _ModuleType))
