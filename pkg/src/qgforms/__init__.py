"""Exact universal quantum groups of pairs of preregular multilinear forms.

The package builds the Hopf/bialgebra presentations attached to a pair of
preregular forms, generates the relation spaces of their superpotential
algebras, and mechanically verifies the structural identities through
explicit, re-expandable ideal-membership certificates.
"""

from .forms import (FIRST, LAST, DegenerateFormError, FormError,
                    MultilinearForm, PreregularityReport, TwistMatrix,
                    check_preregular, dualize, find_twist,
                    is_twisted_superpotential, nondegeneracy, odot, polar,
                    polar_variants, star, verify_polar)
from .spalg import (RelationSpace, WSpace, derive_relations,
                    dual_algebra_dimension, koszul_dual_relations, span_equal,
                    wspace)
from .ncpoly import (Alphabet, AlgebraError, CertSummand, IdealSearcher,
                     MembershipCertificate, NCPoly, TensorPoly, biideal_check,
                     coproduct_extend, expand_certificate, ideal_member,
                     top_reduce, verify_certificate)
from .hopf import (CheckResult, Presentation, PresentationError,
                   VerificationReport, build_He, build_Hef, build_Hf,
                   build_OM, build_quotients, codeterminant_numeric,
                   equivalence_check, grouplikes_OM, sovereign_check,
                   verify_antipode, verify_central_codet,
                   verify_inverse_lemma, verify_pushout_maps, verify_s2_twist)
from .catalog import (CatalogError, ast_forms, signature_form, sklyanin3,
                      sklyanin4, takeuchi_forms, yang_mills)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
