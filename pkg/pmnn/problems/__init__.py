from pmnn.problems.examples import build_problem, example1, example2, example3
from pmnn.problems.models import ExampleId
from pmnn.problems.registry import ProblemDefinition, ProblemRegistry, registry

__all__ = [
    "ExampleId",
    "ProblemDefinition",
    "ProblemRegistry",
    "build_problem",
    "example1",
    "example2",
    "example3",
    "registry",
]
