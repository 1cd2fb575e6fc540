"""Cartan prolongation of graded nilpotent Lie (super)algebras.

Every entry point takes a spec as a dict, a JSON string or a path to a JSON
file, and returns the same report the command-line tool prints with
``--format json``, decoded into plain Python objects.
"""

import json
import os

from ._cartan import (
    CartanArithmeticError,
    CartanError,
    SchemaError,
    ValidationError,
)
from . import _cartan

__all__ = [
    "CartanArithmeticError",
    "CartanError",
    "SchemaError",
    "ValidationError",
    "centralize",
    "embed",
    "prolong",
    "validate",
]


def _text(doc):
    if doc is None:
        return None
    if isinstance(doc, (dict, list)):
        return json.dumps(doc)
    if isinstance(doc, os.PathLike) or (isinstance(doc, str) and not doc.lstrip().startswith(("{", "["))):
        with open(doc, encoding="utf-8") as fh:
            return fh.read()
    return doc


def validate(spec, *, field=None):
    """Check grading, super-antisymmetry, Jacobi and generation by degree -1."""
    return json.loads(_cartan.validate(_text(spec), field=field))


def embed(spec, *, column_order=None, field=None):
    """Maurer-Cartan forms and the embedded vector fields X_i."""
    return json.loads(_cartan.embed(_text(spec), column_order=_text(column_order), field=field))


def centralize(spec, *, column_order=None, field=None):
    """Centralizer frame Y_i and its dual coframe."""
    return json.loads(_cartan.centralize(_text(spec), column_order=_text(column_order), field=field))


def prolong(spec, max_degree=3, *, partial=None, cross_check=True, column_order=None, field=None):
    """Complete prolongation, or the partial one when a beginning part is given."""
    return json.loads(
        _cartan.prolong(
            _text(spec),
            max_degree=max_degree,
            partial=_text(partial),
            cross_check=cross_check,
            column_order=_text(column_order),
            field=field,
        )
    )
