import json

import pytest

from torcells.bundle import corpus_path
from torcells.monoid import MonoidDatum
from torcells.polyhedral import Cone, Fan


def corpus_fan(name: str) -> Fan:
    return Fan.from_json(json.loads(corpus_path(f"fan_{name}.json").read_text()))


def corpus_cone(name: str) -> Cone:
    return Cone.from_json(json.loads(corpus_path(f"cone_{name}.json").read_text()))


def corpus_monoid(name: str) -> MonoidDatum:
    return MonoidDatum.from_json(json.loads(corpus_path(f"monoid_{name}.json").read_text()))


FAN_NAMES = ["p1", "p2", "p1xp1", "f1", "p112", "p3"]


@pytest.fixture(params=FAN_NAMES)
def any_fan(request):
    return request.param, corpus_fan(request.param)
