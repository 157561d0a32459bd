"""Tiny helper: expose the fields of a config dataclass as command-line options."""

import argparse
from dataclasses import MISSING, asdict, fields


def parse_config(cls, description=None, argv=None):
    parser = argparse.ArgumentParser(description=description or cls.__doc__)
    for f in fields(cls):
        default = f.default if f.default is not MISSING else f.default_factory()
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, bool):
            parser.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        elif isinstance(default, tuple):
            parser.add_argument(flag, nargs="*", default=default, type=type(default[0]) if default else str)
        else:
            parser.add_argument(flag, default=default, type=type(default) if default is not None else str)
    ns = parser.parse_args(argv)
    values = {f.name: getattr(ns, f.name) for f in fields(cls)}
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in values.items()})


def describe(cfg):
    return ", ".join(f"{k}={v}" for k, v in asdict(cfg).items())
