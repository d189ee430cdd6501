import json
import logging

import structlog

from pmnn.logging_config import order_run_context, run_context
from pmnn.neural import LbfgsConfig, NetworkSpec
from pmnn.solver import Scheme, train


def test_run_identifiers_follow_the_event():
    event = {"loss": 1.0, "seed": 3, "event": "training_finished", "problem": "fode1"}
    ordered = order_run_context(None, "info", event)
    assert list(ordered) == ["event", "problem", "seed", "loss"]


def test_run_context_is_scoped():
    with run_context(problem="fode1", nx=None, seed=2):
        assert structlog.contextvars.get_contextvars() == {"problem": "fode1", "seed": 2}
    assert "problem" not in structlog.contextvars.get_contextvars()


def test_training_records_carry_run_context(fode, caplog):
    caplog.set_level(logging.INFO)
    network = NetworkSpec(input_dim=1, hidden_layers=1, width=4)
    train(fode, Scheme.l1, nt=6, seed=9, config=LbfgsConfig(max_iterations=2), network=network)

    records = []
    for record in caplog.records:
        try:
            records.append(json.loads(record.getMessage()))
        except ValueError:
            continue
    finished = [
        r for r in records if isinstance(r, dict) and r.get("event") == "training_finished"
    ]
    assert finished
    assert (finished[-1]["problem"], finished[-1]["seed"], finished[-1]["nt"]) == ("fode1", 9, 6)
    assert "nx" not in finished[-1]
