from .group_models import CoxeterMatrix, GroupCreate, GroupInfo, parse_group_config
from .config_models import EngineSettings
from .automaton_models import AutomatonDocument, EdgeDocument
from .report_models import CheckResult, Constants, VerificationReport, VerifyConfig

__all__ = [
    "CoxeterMatrix", "GroupCreate", "GroupInfo", "parse_group_config",
    "EngineSettings", "AutomatonDocument", "EdgeDocument",
    "CheckResult", "Constants", "VerificationReport", "VerifyConfig",
]
