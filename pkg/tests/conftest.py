import random

import pytest

from crsm.closure_engine import generate_closure
from crsm.machine_model import Machine

# The five order-2 basic machines, states listed so that state "1" is index 0.
BASIC_MACHINES = {
    "C2": Machine.of([("1", (1, 0)), ("0", (0, 1))], state_names=("1", "0")),
    "U2": Machine.of([("1", (1, 1, 0)), ("0", (1, 1, 1))], state_names=("1", "0", "2")),
    "H2": Machine.of([("1", (0, 1)), ("0", (1, 1))], state_names=("1", "0")),
    "L2": Machine.of([("1", (0, 1, 0)), ("0", (0, 1, 1))], state_names=("1", "0", "2")),
    "R2": Machine.of([("1", (0, 0)), ("0", (1, 1))], state_names=("1", "0")),
}


@pytest.fixture(scope="session")
def basic_machines():
    return BASIC_MACHINES


@pytest.fixture(scope="session")
def basic_closures():
    return {name: generate_closure(m) for name, m in BASIC_MACHINES.items()}


def random_machine(rng: random.Random, max_states=4, max_generators=3) -> Machine:
    n = rng.randint(2, max_states)
    k = rng.randint(1, max_generators)
    gens = [
        (label, tuple(rng.randrange(n) for _ in range(n)))
        for label in "abc"[:k]
    ]
    return Machine.of(gens)


@pytest.fixture(scope="session")
def machine_sample():
    """The 500-machine sample shared by the acceptance criteria."""
    rng = random.Random(20250809)
    return [random_machine(rng) for _ in range(500)]


@pytest.fixture(scope="session")
def closure_sample(machine_sample):
    return [generate_closure(m) for m in machine_sample]


@pytest.fixture(scope="session")
def small_machine_sample():
    """Fixed sample of 50 machines with 3 states and 2 generators."""
    rng = random.Random(771)
    return [
        Machine.of(
            [(label, tuple(rng.randrange(3) for _ in range(3))) for label in "ab"]
        )
        for _ in range(50)
    ]
