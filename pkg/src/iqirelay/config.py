"""JSON configuration: schema, defaults and sweep application.

Omitted fields take the reference operating point: d_SR = d_RD = d_RE = 1.5,
d_SE = 2, path-loss exponent 3, unit noise, alpha = 0.5, conversion
efficiencies 0.5, R_th = 0.05, and the impaired case xi = 1.1, phi = 5 deg,
sigma_e^2 = 0.05.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import jsonschema

from .channel import ESTIMATED, FixedCee, NetworkModel, SnrDependentCee
from .energy import EhConfig, db_to_linear
from .iqi import IqiMismatch, LinkImpairments
from .link import SCHEMES
from .mc import McConfig

METRICS = ("op", "ip_direct", "ip_relay")
MODES = ("mc", "analytic", "asymptotic")
SWEEP_VARS = ("pb_db", "xi", "phi_deg", "alpha", "sigma1", "sigma2", "m", "sigma_e2", "delta", "r_th")


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


_num = {"type": "number"}
_pos = {"type": "number", "exclusiveMinimum": 0}
_cee = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"model": {"const": "fixed"}, "variance": {"type": "number", "minimum": 0}},
            "required": ["model", "variance"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"model": {"const": "snr"}, "delta": _pos},
            "required": ["model", "delta"],
            "additionalProperties": False,
        },
    ]
}
_mismatch = {
    "type": "object",
    "properties": {"xi_t": _pos, "phi_t_deg": _num, "xi_r": _pos, "phi_r_deg": _num},
    "additionalProperties": False,
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "network": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "relays": {"type": "integer", "minimum": 1},
                "distances": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {k: _pos for k in ("sr", "rd", "re", "se", "bs", "br")},
                },
                "path_loss_exponent": _pos,
                "noise": {
                    "oneOf": [
                        _pos,
                        {
                            "type": "object",
                            "additionalProperties": False,
                            "properties": {k: _pos for k in ESTIMATED},
                        },
                    ]
                },
                "cee": _cee,
                "cee_eve": {"oneOf": [{"type": "null"}, _cee]},
            },
        },
        "energy": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "alpha": _num,
                "sigma1": _num,
                "sigma2": _num,
                "gamma1": _num,
                "gamma1_db": _num,
                "gamma2": _num,
                "gamma2_db": _num,
                "pb": _num,
                "pb_db": _num,
                "t_block": _num,
            },
        },
        "iqi": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                **_mismatch["properties"],
                "links": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {k: _mismatch for k in ESTIMATED},
                },
            },
        },
        "r_th": {"type": "number", "minimum": 0},
        "experiment": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "metric": {"enum": list(METRICS)},
                "schemes": {"type": "array", "items": {"enum": list(SCHEMES)}, "minItems": 1, "uniqueItems": True},
                "sweep": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {"var": {"enum": list(SWEEP_VARS)}, "start": _num, "stop": _num, "step": _num},
                    "required": ["var", "start", "stop", "step"],
                },
                "modes": {"type": "array", "items": {"enum": list(MODES)}, "minItems": 1, "uniqueItems": True},
                "mc": {
                    "type": "object",
                    "additionalProperties": False,
                    "properties": {
                        "trials": {"type": "integer", "minimum": 1},
                        "seed": {"type": "integer", "minimum": 0},
                        "workers": {"type": "integer", "minimum": 1},
                        "chunk": {"type": "integer", "minimum": 1},
                        "rrs_random": {"type": "boolean"},
                    },
                },
                "y_nodes": {"type": "integer", "minimum": 4},
                "output": {"type": ["string", "null"]},
                "ip_relay_tap": {"oneOf": [{"const": "selected"}, {"type": "integer", "minimum": 0}]},
            },
        },
    },
}


@dataclass(frozen=True)
class Sweep:
    var: str = "pb_db"
    start: float = 0.0
    stop: float = 40.0
    step: float = 2.0

    def __post_init__(self):
        for name in ("start", "stop", "step"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.var not in SWEEP_VARS:
            raise ConfigError(f"sweep.var: unknown sweep variable {self.var!r}")
        if not self.step > 0:
            raise ConfigError("sweep.step must be positive")
        if self.stop < self.start:
            raise ConfigError("sweep.stop must be >= sweep.start")

    def points(self) -> list:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        pts = [self.start + i * self.step for i in range(n)]
        # strip accumulated binary noise so CSV values print cleanly
        return [round(p, 12) for p in pts]


@dataclass(frozen=True)
class ExperimentSpec:
    metric: str = "op"
    schemes: tuple = SCHEMES
    sweep: Sweep = field(default_factory=Sweep)
    modes: tuple = ("mc", "analytic")
    mc: McConfig = field(default_factory=McConfig)
    y_nodes: int = 200
    output: str | None = None
    ip_relay_tap: object = "selected"

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ConfigError(f"experiment.metric must be one of {METRICS}")
        if not self.schemes or any(s not in SCHEMES for s in self.schemes):
            raise ConfigError(f"experiment.schemes must be a nonempty subset of {SCHEMES}")
        if not self.modes or any(m not in MODES for m in self.modes):
            raise ConfigError(f"experiment.modes must be a nonempty subset of {MODES}")
        if self.y_nodes < 4:
            raise ConfigError("experiment.y_nodes must be >= 4")


@dataclass(frozen=True)
class ConfigDocument:
    network: NetworkModel = field(default_factory=lambda: NetworkModel(cee=FixedCee(0.05)))
    energy: EhConfig = field(default_factory=EhConfig)
    iqi: IqiMismatch = field(default_factory=lambda: IqiMismatch.from_degrees(1.1, 5.0))
    iqi_links: dict = field(default_factory=dict)
    r_th: float = 0.05
    experiment: ExperimentSpec = field(default_factory=ExperimentSpec)

    def impairments(self) -> LinkImpairments:
        return LinkImpairments.from_mismatches(self.iqi, **self.iqi_links)

    def with_(self, **changes) -> "ConfigDocument":
        return replace(self, **changes)


def _cee_from(doc):
    if doc is None:
        return None
    if doc["model"] == "fixed":
        return FixedCee(doc["variance"])
    return SnrDependentCee(doc["delta"])


def _mismatch_from(doc, base: IqiMismatch | None = None) -> IqiMismatch:
    base = base or IqiMismatch()
    xi_t = doc.get("xi_t", base.xi_t)
    phi_t = doc.get("phi_t_deg", math.degrees(base.phi_t))
    return IqiMismatch.from_degrees(
        xi_t,
        phi_t,
        doc.get("xi_r", xi_t if "xi_t" in doc else base.xi_r),
        doc.get("phi_r_deg", phi_t if "phi_t_deg" in doc else math.degrees(base.phi_r)),
    )


def _linear(doc, key, default):
    if key in doc and f"{key}_db" in doc:
        raise ConfigError(f"energy: give either {key} or {key}_db, not both")
    if f"{key}_db" in doc:
        return float(db_to_linear(doc[f"{key}_db"]))
    return float(doc.get(key, default))


def from_dict(doc: dict) -> ConfigDocument:
    """Validate a parsed JSON document and fill in defaults."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = ".".join(str(p) for p in e.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {e.message}")
    try:
        return _build(doc)
    except ConfigError:
        raise
    except (ValueError, IndexError) as exc:
        raise ConfigError(str(exc)) from exc


def _build(doc: dict) -> ConfigDocument:
    default = ConfigDocument()
    net = doc.get("network", {})
    dist = net.get("distances", {})
    base_net = default.network
    network = NetworkModel(
        relays=net.get("relays", base_net.relays),
        path_loss_exponent=net.get("path_loss_exponent", base_net.path_loss_exponent),
        noise=net.get("noise", 1.0),
        cee=_cee_from(net["cee"]) if "cee" in net else base_net.cee,
        cee_eve=_cee_from(net.get("cee_eve")),
        **{f"d_{k}": dist.get(k, base_net.distance(k)) for k in ("sr", "rd", "re", "se", "bs", "br")},
    )

    en = doc.get("energy", {})
    base_eh = default.energy
    energy = EhConfig(
        alpha=en.get("alpha", base_eh.alpha),
        sigma1=en.get("sigma1", base_eh.sigma1),
        sigma2=en.get("sigma2", base_eh.sigma2),
        gamma1=_linear(en, "gamma1", base_eh.gamma1),
        gamma2=_linear(en, "gamma2", base_eh.gamma2),
        pb=_linear(en, "pb", base_eh.pb),
        t_block=en.get("t_block", base_eh.t_block),
    )

    iq = doc.get("iqi", {})
    mismatch = _mismatch_from(iq, default.iqi)
    links = {k: _mismatch_from(v, mismatch) for k, v in iq.get("links", {}).items()}

    ex = doc.get("experiment", {})
    base_ex = default.experiment
    mcd = ex.get("mc", {})
    base_mc = base_ex.mc
    sweep = Sweep(**ex["sweep"]) if "sweep" in ex else base_ex.sweep
    experiment = ExperimentSpec(
        metric=ex.get("metric", base_ex.metric),
        schemes=tuple(ex.get("schemes", base_ex.schemes)),
        sweep=sweep,
        modes=tuple(ex.get("modes", base_ex.modes)),
        mc=McConfig(
            trials=mcd.get("trials", base_mc.trials),
            seed=mcd.get("seed", base_mc.seed),
            workers=mcd.get("workers", base_mc.workers),
            chunk=mcd.get("chunk", base_mc.chunk),
            rrs_random=mcd.get("rrs_random", base_mc.rrs_random),
        ),
        y_nodes=ex.get("y_nodes", base_ex.y_nodes),
        output=ex.get("output", base_ex.output),
        ip_relay_tap=ex.get("ip_relay_tap", base_ex.ip_relay_tap),
    )
    if isinstance(experiment.ip_relay_tap, int) and experiment.ip_relay_tap >= network.relays:
        raise ConfigError("experiment.ip_relay_tap: relay index out of range")
    return ConfigDocument(network, energy, mismatch, links, float(doc.get("r_th", default.r_th)), experiment)


def load_config(path) -> ConfigDocument:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return from_dict(doc)


def apply_sweep(cfg: ConfigDocument, var: str, value: float) -> ConfigDocument:
    """Return ``cfg`` with one sweep variable set to ``value``."""
    try:
        if var == "pb_db":
            return cfg.with_(energy=cfg.energy.with_(pb=float(db_to_linear(value))))
        if var in ("alpha", "sigma1", "sigma2"):
            return cfg.with_(energy=cfg.energy.with_(**{var: value}))
        if var == "xi":
            m = cfg.iqi
            return cfg.with_(iqi=replace(m, xi_t=value, xi_r=value))
        if var == "phi_deg":
            m = cfg.iqi
            return cfg.with_(iqi=replace(m, phi_t=math.radians(value), phi_r=math.radians(value)))
        if var == "m":
            if value != int(value):
                raise ConfigError("relay count must be an integer")
            return cfg.with_(network=cfg.network.with_(relays=int(value)))
        if var == "sigma_e2":
            return cfg.with_(network=cfg.network.with_(cee=FixedCee(value)))
        if var == "delta":
            return cfg.with_(network=cfg.network.with_(cee=SnrDependentCee(value)))
        if var == "r_th":
            if value < 0:
                raise ConfigError("r_th must be nonnegative")
            return cfg.with_(r_th=float(value))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"sweep {var}={value}: {exc}") from exc
    raise ConfigError(f"unknown sweep variable {var!r}")
