import json
import random
from pathlib import Path

import pytest

from mucert.criteria.certificate import Certificate
from mucert.io import curve_from_dict, newform_from_dict

DATA = Path(__file__).parent / "data"

# every certificate assembled during the session, for the soundness check
EMITTED = []

_assemble = Certificate.assemble.__func__


def _recording_assemble(cls, *args, **kwargs):
    cert = _assemble(cls, *args, **kwargs)
    EMITTED.append(cert)
    return cert


Certificate.assemble = classmethod(_recording_assemble)


def pytest_sessionfinish(session, exitstatus):
    bad = [c.subject for c in EMITTED if not c.is_sound()]
    if bad:
        print(f"\nunsound certificates emitted: {bad}")
        session.exitstatus = 1


def load_json(name):
    return json.loads((DATA / name).read_text())


def curve(label):
    return curve_from_dict(load_json(f"curves/{label}.json"))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def curves():
    return {p.stem: curve(p.stem) for p in sorted((DATA / "curves").glob("*.json"))}


@pytest.fixture(scope="session")
def delta():
    return newform_from_dict(load_json("newform_delta.json"))


@pytest.fixture(scope="session")
def forms26():
    return (newform_from_dict(load_json("newform_26_2_a_a.json")),
            newform_from_dict(load_json("newform_26_2_a_b.json")))
