"""Constants that user deals with."""
from enum import unique
from typing import Mapping

from brackpy._constants._utils import ModeEnum


# pb/_maps.py, geo/_surface.py
@unique
class DensityMode(ModeEnum):
    SQRT_G = "sqrt_g"
    UNIT = "one"
    CUSTOM = "custom"  # Expr in u1, u2

    @classmethod
    def _aliases(cls) -> Mapping[str, str]:
        return {"unit": "one", "1": "one", "sqrtg": "sqrt_g"}


# pb/_znormals.py
@unique
class NestedArrangement(ModeEnum):
    STANDARD = "standard"  # Q_ikl Q_jmn, Q_ikl = {x^i,{x^k,x^l}}
    SHIFTED = "shifted"  # Q_ijk Q_jmn


# pb/_theorems.py
@unique
class NormalTermSign(ModeEnum):
    MINUS = "minus"  # agrees with jet differentiation of the frame
    PLUS = "plus"

    @classmethod
    def _aliases(cls) -> Mapping[str, str]:
        return {"-1": "minus", "+1": "plus", "1": "plus"}


# _cli.py
@unique
class Subcommand(ModeEnum):
    CHECK = "check"
    TABLE = "table"
    POINT = "point"
