import pytest

from iqirelay import EhConfig, FixedCee, IqiMismatch, NetworkModel
from iqirelay.energy import db_to_linear

NON_IDEAL = IqiMismatch.from_degrees(1.1, 5.0)


@pytest.fixture
def ideal_model():
    return NetworkModel(cee=FixedCee(0.0))


@pytest.fixture
def impaired_model():
    return NetworkModel(cee=FixedCee(0.05))


@pytest.fixture
def non_ideal():
    return NON_IDEAL


def eh_at(pb_db, **kw):
    return EhConfig(pb=float(db_to_linear(pb_db)), **kw)
