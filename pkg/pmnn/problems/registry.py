"""Registry of the ready-made benchmark problems."""

from collections.abc import Callable
from dataclasses import dataclass

from pmnn.caputo.models import FractionalOrder
from pmnn.exceptions import InvalidArgumentError
from pmnn.problems.models import ExampleId
from pmnn.solver.models import FractionalIVP

ProblemFactory = Callable[[FractionalOrder | float], FractionalIVP]


@dataclass(frozen=True)
class ProblemDefinition:
    example_id: ExampleId
    description: str
    spatial_dim: int
    factory: ProblemFactory


class ProblemRegistry:
    def __init__(self) -> None:
        self._problems: dict[ExampleId, ProblemDefinition] = {}

    def register(
        self,
        example_id: ExampleId,
        spatial_dim: int,
        description: str = "",
    ) -> Callable[[ProblemFactory], ProblemFactory]:
        """Decorator to register a problem constructor."""

        def decorator(fn: ProblemFactory) -> ProblemFactory:
            self._problems[example_id] = ProblemDefinition(
                example_id=example_id,
                description=description,
                spatial_dim=spatial_dim,
                factory=fn,
            )
            return fn

        return decorator

    def get(self, example_id: ExampleId | str) -> ProblemDefinition:
        try:
            return self._problems[ExampleId(example_id)]
        except (KeyError, ValueError):
            raise InvalidArgumentError(f"Unknown example '{example_id}'") from None

    def list_all(self) -> list[ProblemDefinition]:
        return [self._problems[key] for key in ExampleId if key in self._problems]

    def build(self, example_id: ExampleId | str, alpha: FractionalOrder | float) -> FractionalIVP:
        return self.get(example_id).factory(alpha)


registry = ProblemRegistry()
