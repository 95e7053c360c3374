import json
import math

import pytest

from iqirelay.channel import FixedCee, SnrDependentCee
from iqirelay.config import ConfigDocument, ConfigError, Sweep, apply_sweep, from_dict, load_config


def write(tmp_path, doc):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return p


def test_empty_object_gives_defaults(tmp_path):
    cfg = load_config(write(tmp_path, {}))
    assert cfg == ConfigDocument()
    assert cfg.network.d_rd == cfg.network.d_re == 1.5
    assert cfg.network.d_se == 2.0
    assert cfg.network.path_loss_exponent == 3.0
    assert cfg.energy.alpha == 0.5 and cfg.energy.sigma1 == cfg.energy.sigma2 == 0.5
    assert cfg.r_th == 0.05
    assert cfg.iqi.xi_t == 1.1 and cfg.iqi.phi_t == pytest.approx(math.radians(5))
    assert cfg.network.cee == FixedCee(0.05)


def test_alpha_out_of_range(tmp_path):
    with pytest.raises(ConfigError, match=r"alpha must lie in \(0,1\)"):
        load_config(write(tmp_path, {"energy": {"alpha": 1.2}}))


def test_cee_below_omega_accepted():
    cfg = from_dict({"network": {"distances": {"sr": 1.5}, "cee": {"model": "fixed", "variance": 0.05}}})
    assert cfg.network.cee.t < cfg.network.omega("sr")


def test_cee_at_or_above_omega_rejected():
    with pytest.raises(ConfigError, match="Omega"):
        from_dict({"network": {"cee": {"model": "fixed", "variance": 0.3}}})


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"colour": 1}, "<root>"),
        ({"energy": {"pb_dbm": 3}}, "energy"),
        ({"experiment": {"sweep": {"var": "pb_db", "start": 0, "stop": 1}}}, "experiment.sweep"),
        ({"experiment": {"mc": {"trials": 1.5}}}, "experiment.mc.trials"),
        ({"network": {"distances": {"sr": -1}}}, "network.distances.sr"),
        ({"experiment": {"schemes": ["best"]}}, "experiment.schemes.0"),
    ],
)
def test_schema_errors_name_the_field(doc, path):
    with pytest.raises(ConfigError) as info:
        from_dict(doc)
    assert str(info.value).startswith(path)


def test_power_units():
    assert from_dict({"energy": {"pb_db": 20}}).energy.pb == pytest.approx(100.0)
    assert from_dict({"energy": {"pb": 5}}).energy.pb == 5.0
    assert from_dict({"energy": {"gamma1_db": 10}}).energy.gamma1 == pytest.approx(10.0)
    with pytest.raises(ConfigError):
        from_dict({"energy": {"pb": 5, "pb_db": 7}})


def test_iqi_and_per_link_overrides():
    cfg = from_dict({"iqi": {"xi_t": 1.0, "phi_t_deg": 0.0, "links": {"se": {"xi_t": 1.2}}}})
    assert cfg.iqi.is_ideal
    imp = cfg.impairments()
    assert imp["sr"].q == 0.0
    assert imp["se"].q > 0.0


def test_snr_cee_and_eve_override():
    cfg = from_dict({"network": {"cee": {"model": "snr", "delta": 2.0}, "cee_eve": {"model": "fixed", "variance": 0.0}}})
    assert cfg.network.cee == SnrDependentCee(2.0)
    assert cfg.network.cee_eve == FixedCee(0.0)


def test_invalid_json(tmp_path):
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_config(write(tmp_path, "{nope"))
    with pytest.raises(ConfigError):
        load_config(write(tmp_path, "[]"))


def test_sweep_points():
    assert len(Sweep("pb_db", 0, 40, 2).points()) == 21
    assert Sweep("alpha", 0.1, 0.9, 0.1).points()[-1] == pytest.approx(0.9)
    assert len(Sweep("alpha", 0.1, 0.9, 0.1).points()) == 9
    for bad in (dict(step=0), dict(start=2, stop=1), dict(var="beta")):
        with pytest.raises(ConfigError):
            Sweep(**{**dict(var="pb_db", start=0, stop=1, step=1), **bad})


def test_apply_sweep_variables():
    cfg = ConfigDocument()
    assert apply_sweep(cfg, "pb_db", 30).energy.pb == pytest.approx(1000.0)
    assert apply_sweep(cfg, "xi", 1.3).iqi.xi_r == 1.3
    assert apply_sweep(cfg, "phi_deg", 10).iqi.phi_t == pytest.approx(math.radians(10))
    assert apply_sweep(cfg, "alpha", 0.3).energy.alpha == 0.3
    assert apply_sweep(cfg, "sigma2", 0.7).energy.sigma2 == 0.7
    assert apply_sweep(cfg, "m", 4).network.relays == 4
    assert apply_sweep(cfg, "sigma_e2", 0.0).network.cee == FixedCee(0.0)
    assert apply_sweep(cfg, "delta", 3.0).network.cee == SnrDependentCee(3.0)
    assert apply_sweep(cfg, "r_th", 0.2).r_th == 0.2
    with pytest.raises(ConfigError):
        apply_sweep(cfg, "m", 2.5)
    with pytest.raises(ConfigError):
        apply_sweep(cfg, "alpha", 1.0)
    with pytest.raises(ConfigError):
        apply_sweep(cfg, "sigma_e2", 0.5)
