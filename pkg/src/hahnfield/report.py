"""Canonical JSON for reports: sorted keys, exact rationals as strings."""

from __future__ import annotations

import json
import sys
from fractions import Fraction

from .cuts import Cut
from .literals import format_series
from .series import FINITE, Series

SCHEMA_VERSION = 1


def series_json(x: Series, depth=None):
    ring = x.ring
    g, k = ring.group, ring.field
    out = {
        "group": g.literal(),
        "field": k.literal(),
        "factor_set": ring.factor_set.literal(),
    }
    if x.kind == FINITE:
        terms = x.terms()
    else:
        depth = depth or ring.config.depth
        terms = [(e, c) for e, c in x.grid_head(depth) if c] if x.kind != "stream" else x.terms()[:depth]
        out["truncated_at"] = depth
    out["terms"] = [{"exp": g.format_elem(e), "coeff": k.format(c)} for e, c in terms]
    if x.kind == FINITE:
        v = x.valuation()
        out["valuation"] = "inf" if v is None else g.format_elem(v)
        out["literal"] = format_series(x)
    return out


def jsonable(obj, depth=None):
    if isinstance(obj, Series):
        return series_json(obj, depth)
    if isinstance(obj, Cut):
        return obj.literal()
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v, depth) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, depth) for v in obj]
    return str(obj)


def make_report(command, options, inputs, outputs, status, config):
    return {
        "hahnfield_report": SCHEMA_VERSION,
        "command": command,
        "options": options,
        "inputs": inputs,
        "outputs": outputs,
        "status": status,
        "config": config.as_dict(),
    }


def dumps(report, depth=None):
    return json.dumps(jsonable(report, depth), sort_keys=True, indent=2) + "\n"


def emit_report(report, path=None, depth=None):
    text = dumps(report, depth)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)
    return text

