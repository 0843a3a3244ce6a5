"""Build a dataclass config from command-line flags, one flag per field."""

from __future__ import annotations

import argparse
import dataclasses


def parse_config(cls, description: str, argv=None):
    p = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, bool):
            p.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        elif isinstance(default, tuple):
            p.add_argument(flag, type=int, nargs="+", default=list(default))
        else:
            p.add_argument(flag, type=type(default), default=default)
    ns = vars(p.parse_args(argv))
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in ns.items()})
