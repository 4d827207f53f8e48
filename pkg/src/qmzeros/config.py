import json
import os
from importlib import resources


def load_defaults(path=None):
    """Default numerical parameters, optionally overlaid by a user JSON file."""
    with resources.files("qmzeros").joinpath("defaults.json").open() as fh:
        cfg = json.load(fh)
    if path is not None:
        with open(path) as fh:
            user = json.load(fh)
        for section, values in user.items():
            cfg.setdefault(section, {}).update(values)
    return cfg


def default_order(weight):
    env = os.environ.get("QMZ_ORDER")
    if env:
        return int(env)
    return 2 * weight + 16
