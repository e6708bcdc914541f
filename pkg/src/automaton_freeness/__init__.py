"""Automaton semigroups and monoids, and PCP encodings that test their freeness."""

from .automata import (AutomatonError, InvalidAutomatonError, Transducer, Transition,
                       ValidationReport, act, compose, dual, dual_act, is_invertible, power,
                       step, tuple_name, union, validate)
from .wordproblem import (BoundedResult, CongruenceTable, Decision, Relation, acts_as_identity,
                          bounded_separator, decide_equal, enumerate_relations)
from .free import (AdjunctionProvider, FreeBasis, FreeBasisReport, UnsupportedAdjunction,
                   UnsupportedConstruction, adding_machine, adjoin_free_generator,
                   build_r_hat_semigroup, free_semigroup_automaton, power_projection,
                   union_of_powers, validate_free_basis, with_identity_state)
from .blocks import HASH1, HASH2, Factorization, factorize, pi_hash
from .semigroup_reduction import PcpInstance, ReductionError, SemigroupArtifacts, build_semigroup
from .monoid_reduction import (EpcpInstance, MonoidArtifacts, PresentationVerdict, L_hom,
                               build_monoid, check_free_presentation, e_equiv, pad_to_epcp)
from .analysis import (PropertyReport, check_cancellative, check_equidivisible,
                       check_hom_extension, check_length_function)
from .io import (FormatError, artifacts_to_dict, dumps_automaton, dumps_instance, export_dot,
                 load_fixture, parse_automaton, parse_instance)

__version__ = "0.1.0"
