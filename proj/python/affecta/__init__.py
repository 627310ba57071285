"""Python access to the affecta core.

Maps, rooms and random streams are native objects. Configs, reports,
heatmaps and service payloads come back as plain dicts.
"""

import json as _json

from . import _affecta
from ._affecta import (  # noqa: F401
    ArgumentError,
    ConfigError,
    ContextMap,
    DecodeError,
    DegenerateRoomError,
    GridPos,
    MapConfig,
    RobotParams,
    Rng,
    Room,
    apply_feedback,
    best_matching_unit,
    binomial_tail,
    binomial_tail_normal_approx,
    distance_to_wall,
    epsilon,
    gather_context_sample,
    grid_step_distance,
    load_map,
    make_stream,
    map_from_json,
    new_map,
    preferred_intensity,
    save_map,
    select_pair,
    update_map,
    weighted_distance,
)

STREAMS = {
    "phase1": 1,
    "phase2": 2,
    "roster": 3,
    "validation": 4,
    "probe": 5,
    "session": 6,
    "single_probe": 7,
}


def _dump(doc):
    return None if doc is None else _json.dumps(doc)


def default_config():
    return _json.loads(_affecta.default_config())


def run(command, config=None, input_map=None):
    """Run `explore`, `train` or `validate`; returns (map, report dict)."""
    cmap, report = _affecta.run_command(command, _dump(config), input_map)
    return cmap, _json.loads(report)


def replay(report):
    return _affecta.replay(_json.dumps(report))


def sweep(runs, config=None, first_seed=1, threads=0):
    return _json.loads(_affecta.sweep(runs, _dump(config), first_seed, threads))


def heatmap(cmap, layer="attribute:0"):
    return _json.loads(_affecta.heatmap(cmap, layer))


def render_ppm(cmap, layer="attribute:0", scale=16):
    return _affecta.render_ppm(cmap, layer, scale)


def map_to_dict(cmap):
    return _json.loads(cmap.to_json())


class Service:
    """In-process session service; same routes and payloads as the HTTP server."""

    def __init__(self):
        self._core = _affecta.ServiceCore()

    def request(self, method, path, body=None):
        status, text = self._core.handle(method, path, "" if body is None else _json.dumps(body))
        return status, _json.loads(text)

    def map_snapshot(self, session):
        return self._core.map_snapshot(session)

    @property
    def session_count(self):
        return self._core.session_count
