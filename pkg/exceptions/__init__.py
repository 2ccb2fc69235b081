from .coxeter_exceptions import (
    CoxeterEngineException,
    InvalidCoxeterMatrixError,
    UnknownGeneratorError,
    InvalidCapError,
    InvalidWallPairError,
    UnknownFormatError,
    AutomatonFileError,
    GroupNotFoundError,
    ResourceCapExceededError,
    SmallRootOverflowError,
    InconsistentRootError,
    AutomatonConsistencyError,
    DuplicateAliasError,
)

__all__ = [
    "CoxeterEngineException",
    "InvalidCoxeterMatrixError",
    "UnknownGeneratorError",
    "InvalidCapError",
    "InvalidWallPairError",
    "UnknownFormatError",
    "AutomatonFileError",
    "GroupNotFoundError",
    "ResourceCapExceededError",
    "SmallRootOverflowError",
    "InconsistentRootError",
    "AutomatonConsistencyError",
    "DuplicateAliasError",
]
