"""Finite reversible asymmetric event structures and causal nets."""

from .net import Ipt, reachable_markings, is_safe, states
from .acn import (Relations, derived_relations, validate_pacn, validate_acn,
                  validate_cn, pacn_configurations, is_configuration,
                  is_coherent, relevant_marking, cn_to_acn,
                  configuration_of_marking, marking_of_configuration)
from .racn import (Racn, BackwardRelations, backward_relations, validate_racn,
                   racn_configurations, racn_coproduct,
                   sustained_causation_net)
from .es import (Aes, Raes, SRaes, validate_aes, validate_raes,
                 aes_configurations, sustained_causation, raes_enabled,
                 raes_fire, raes_config_graph, raes_coproduct, saturate_raes,
                 raes_to_sraes, sraes_to_raes)
from .graphs import ConfigGraph, relabel, isomorphic
from .maps import EsMorphism, NetMorphism, compose_es, compose_net
from .morphisms import (check_aes_morphism, check_raes_morphism,
                        check_acn_morphism, check_racn_morphism,
                        es_preservation_counterexample,
                        net_preservation_counterexample,
                        search_raes_mediating, racn_mediating)
from .bridge import (raes_to_racn, racn_to_raes, round_trip_identity,
                     map_raes_morphism, map_racn_morphism)
from .errors import (ModelError, MalformedModel, UnknownIdentifier,
                     NotEnabled, UnsafeMarking, RepeatedFiring,
                     BoundExceeded, NotApplicable)

__all__ = [n for n in dir() if not n.startswith("_")]
