"""Exact computations around Jordan constants of automorphism groups of
rational quadric surfaces: tower-field arithmetic, finite groups given by
generators, PGL_2 over quadratic towers, and the field classification tables."""

from .exactfield import FieldElem, Tower, galois_conj, make_tower, verify_two_squares_witness
from .groupcore import (FiniteGroup, JordanCertificate, classify_extension, conjugacy_classes,
                        generate, jordan_constant, normal_subgroups, recognize)
from .permgroup import Permutation, alternating_group, symmetric_group
from .projgroup import ProjMatrix, TwistedElement, porder, trace_sq_over_det
from .constructions import (A5Witness, a5_group, builtin_witness, s5_twisted_group,
                            square_wreath)
from .classifier import (FieldProfile, builtin_catalog, certify, jordan_aut_p1xp1,
                         jordan_pgl2, m_of_k)

__version__ = "0.1.0"
