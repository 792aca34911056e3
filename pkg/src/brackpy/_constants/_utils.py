from __future__ import annotations

from enum import Enum
from typing import Any, Mapping

__all__ = ["ModeEnum"]


class ModeEnum(str, Enum):
    """
    String option whose lookup is case-insensitive, accepts aliases and lists the valid options on failure.

    Subclasses may override :meth:`_aliases` to map alternative spellings onto member values.
    """

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return str(self)

    @property
    def s(self) -> str:
        """Return the :attr:`value` as :class:`str`."""
        return str(self.value)

    @classmethod
    def _aliases(cls) -> Mapping[str, str]:
        return {}

    @classmethod
    def _missing_(cls, value: Any) -> ModeEnum:
        if isinstance(value, str):
            key = value.strip().lower()
            key = cls._aliases().get(key, key)
            for member in cls:
                if member.value == key:
                    return member
        raise ValueError(
            f"Invalid option `{value}` for `{cls.__name__}`. Valid options are: `{[m.value for m in cls]}`."
        )
