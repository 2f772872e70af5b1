"""On-disk cache for exact coefficient tables.

Location: $BALLINT_CACHE_DIR, else $XDG_CACHE_HOME/ballint, else
~/.cache/ballint.  Keys are content hashes over (pipeline, nu, m, k,
code-version tag), so a version bump invalidates everything and
identical requests across runs share one entry.  Payloads hold exact
rational strings only; decimals are recomputed on render so cached and
uncached output stay byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from . import __version__
from .rationals import format_rational, parse_rational

__all__ = ["cache_dir", "cache_key", "load_coeffs", "store_coeffs"]

ENV_VAR = "BALLINT_CACHE_DIR"


def cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "ballint"


def cache_key(pipeline: str, nu: Fraction | None, m: int, k: int) -> str:
    payload = json.dumps(
        {
            "pipeline": pipeline,
            "nu": format_rational(nu) if nu is not None else None,
            "m": m,
            "k": k,
            "version": __version__,
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def load_coeffs(pipeline: str, nu: Fraction | None, m: int, k: int) -> list[Fraction] | None:
    path = cache_dir() / f"{cache_key(pipeline, nu, m, k)}.json"
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        values = [parse_rational(s) for s in doc["coefficients"]]
    except (OSError, ValueError, KeyError, TypeError):
        return None
    if len(values) != m + 1:
        return None
    return values


def store_coeffs(pipeline: str, nu: Fraction | None, m: int, k: int, coeffs) -> None:
    directory = cache_dir()
    try:
        directory.mkdir(parents=True, exist_ok=True)
        doc = {
            "pipeline": pipeline,
            "nu": format_rational(nu) if nu is not None else None,
            "m": m,
            "k": k,
            "version": __version__,
            "coefficients": [format_rational(c) for c in coeffs],
        }
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh)
            os.replace(tmp, directory / f"{cache_key(pipeline, nu, m, k)}.json")
        except BaseException:
            os.unlink(tmp)
            raise
    except OSError:
        # cache is best-effort; unwritable locations degrade to recompute
        return
