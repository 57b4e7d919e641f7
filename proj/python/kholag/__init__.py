"""Khovanov and Lee homology of braid closures, transverse invariants and
Lagrangian cobordism obstructions."""

import json as _json

from ._kholag import (
    DomainError,
    KholagError,
    ParseError,
    canonical_key,
    khovanov,
    khovanov_json,
    lee_ranks,
    movie_check,
    ng_line,
    psi_pq_vanishes,
    psi_vanishes,
    s_invariant,
    self_linking,
)
from . import _kholag


def obstruct(bottom, top, E, tb_bottom=None, r_bottom=None, tb_top=None, r_top=None, windows=()):
    """Obstruction report as a dict. ``bottom`` may be "empty"."""
    return _json.loads(
        _kholag.obstruct_json(bottom, top, E, tb_bottom, r_bottom, tb_top, r_top, list(windows))
    )


def effectiveness(braid):
    return _json.loads(_kholag.effectiveness_json(braid))


__all__ = [
    "DomainError",
    "KholagError",
    "ParseError",
    "canonical_key",
    "effectiveness",
    "khovanov",
    "khovanov_json",
    "lee_ranks",
    "movie_check",
    "ng_line",
    "obstruct",
    "psi_pq_vanishes",
    "psi_vanishes",
    "s_invariant",
    "self_linking",
]
