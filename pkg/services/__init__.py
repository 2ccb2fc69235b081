from .coxeter_group import CoxeterGroup, GroupElement
from .wall_service import Wall, WallGeometry, WallSet
from .voracious_service import VoraciousLanguage
from .automaton_service import AutomatonBuilder, VoraciousAutomaton
from .verifier_service import VerifierService
from .group_service import GroupService

__all__ = [
    "CoxeterGroup", "GroupElement", "Wall", "WallGeometry", "WallSet", "VoraciousLanguage",
    "AutomatonBuilder", "VoraciousAutomaton", "VerifierService", "GroupService",
]
