from enum import StrEnum
from typing import Self

from pmnn.exceptions import InvalidArgumentError


class ExampleId(StrEnum):
    fode1 = "fode1"
    conv1d = "conv1d"
    conv2d = "conv2d"

    @classmethod
    def from_number(cls, number: int | str) -> Self:
        """CLI numbering: 1, 2, 3."""
        members = list(cls)
        try:
            index = int(number)
        except ValueError:
            index = 0
        if not 1 <= index <= len(members):
            raise InvalidArgumentError(
                f"Unknown example {number!r}, expected one of 1..{len(members)}"
            )
        return members[index - 1]

    @property
    def number(self) -> int:
        return list(ExampleId).index(self) + 1
