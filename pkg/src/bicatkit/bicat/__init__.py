"""Finite bicategories, normal pseudofunctors, icons and 2-natural transformations."""

from .core import (FinBicat, are_objects_equivalent, are_objects_isomorphic,
                   is_equivalence_1cell, is_strict_2category, validate_bicat)
from .fibrations import (is_discrete_isofibration, is_equifibration, is_isofibration_2cat,
                         is_isofibration_icon, underlying_functor)
from .functors import (NormalPseudofunctor, compose_pseudofunctors, constant_pseudofunctor,
                       enumerate_pseudofunctors, identity_pseudofunctor,
                       validate_normal_pseudofunctor)
from .transformations import (Icon, Modification, TwoNatTrans, enumerate_2nats, enumerate_icons,
                              enumerate_modifications, icon_hcompose, icon_vcompose,
                              icon_whisker_left, icon_whisker_right, identity_2nat, identity_icon,
                              identity_modification, mod_hcompose, mod_vcompose, mod_whisker_left,
                              mod_whisker_right, nat_vcompose, nat_whisker_left, nat_whisker_right,
                              validate_2nat, validate_icon, validate_modification)
