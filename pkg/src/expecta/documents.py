"""JSON documents for spaces, models and assessments.

Rationals travel as strings (``"3/8"``, ``"1"``); mass keys are
comma-joined world ids.  When ``worlds`` is omitted the space is the full
atom space over ``props``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping

from .atoms import AtomSpace, World, members, realize_gamble
from .coherence import Assessment
from .errors import InputError, ModelValidationError
from .logic.parser import parse_gamble
from .measures import (CredalSet, MassFunction, PossibilityMeasure, ProbabilityMeasure, model_kind,
                       validate_model)
from .syntax import fmt_rat


def rat(value: Any) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"rationals must be strings or integers, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"not a rational: {value!r}")


def load_space(doc: Mapping) -> AtomSpace:
    if not isinstance(doc, Mapping):
        raise InputError("a space document must be a JSON object")
    props = doc.get("props")
    if not isinstance(props, list) or not all(isinstance(p, str) for p in props):
        raise InputError("'props' must be a list of proposition names")
    worlds = doc.get("worlds")
    if worlds is None:
        return AtomSpace.atoms(props)
    out = []
    for k, w in enumerate(worlds):
        if not isinstance(w, Mapping):
            raise InputError(f"world #{k} must be an object")
        assign = w.get("assign", {})
        if not isinstance(assign, Mapping) or not all(isinstance(v, bool) for v in assign.values()):
            raise InputError(f"world #{k}: 'assign' must map propositions to booleans")
        out.append(World(str(w.get("id", f"w{k + 1}")), frozenset(p for p, v in assign.items() if v)))
    return AtomSpace(tuple(props), tuple(out))


def _weights(space: AtomSpace, table: Any, what: str) -> list:
    if not isinstance(table, Mapping):
        raise InputError(f"{what} must map world ids to rationals")
    vals = [Fraction(0)] * len(space)
    for wid, v in table.items():
        vals[space.index(wid)] = rat(v)
    return vals


def load_model(doc: Mapping, check: bool = True):
    """Build a model; with ``check`` invalid models raise with their violations."""
    space = load_space(doc)
    measure = doc.get("measure")
    if not isinstance(measure, Mapping):
        raise InputError("'measure' must be an object")
    kind = measure.get("type")
    if kind == "probability":
        model = ProbabilityMeasure(space, _weights(space, measure.get("values"), "values"), check=False)
    elif kind == "credal":
        ms = measure.get("measures")
        if not isinstance(ms, list):
            raise InputError("'measures' must be a list")
        model = CredalSet(space, [ProbabilityMeasure(space, _weights(space, m, "measure"), check=False)
                                  for m in ms], check=False)
    elif kind == "mass":
        masses = measure.get("masses")
        if not isinstance(masses, Mapping):
            raise InputError("'masses' must map comma-joined world ids to rationals")
        table = {}
        for key, v in masses.items():
            ids = [s.strip() for s in key.split(",") if s.strip()]
            U = space.mask_of(ids)
            table[U] = table.get(U, Fraction(0)) + rat(v)
        model = MassFunction(space, table, check=False)
    elif kind == "possibility":
        model = PossibilityMeasure(space, _weights(space, measure.get("values"), "values"), check=False)
    else:
        raise InputError(f"unknown measure type {kind!r}")
    if check:
        violations = validate_model(model)
        if violations:
            raise ModelValidationError(violations)
    return model


def space_doc(space: AtomSpace) -> dict:
    return {
        "props": list(space.props),
        "worlds": [{"id": w.id, "assign": {p: p in w.true_props for p in space.props}} for w in space.worlds],
    }


def _table(space, values) -> dict:
    return {w.id: fmt_rat(v) for w, v in zip(space.worlds, values)}


def model_doc(model) -> dict:
    doc = space_doc(model.space)
    kind = model_kind(model)
    if kind == "probability":
        doc["measure"] = {"type": kind, "values": _table(model.space, model.values)}
    elif kind == "credal":
        doc["measure"] = {"type": kind, "measures": [_table(model.space, m.values) for m in model.measures]}
    elif kind == "mass":
        doc["measure"] = {"type": kind, "masses": {",".join(model.space.ids_of(U)): fmt_rat(m)
                                                   for U, m in model.masses}}
    else:
        doc["measure"] = {"type": kind, "values": _table(model.space, model.values)}
    return doc


def load_assessment(doc: Mapping) -> Assessment:
    if not isinstance(doc, Mapping):
        raise InputError("an assessment document must be a JSON object")
    space = load_space(doc.get("model_space") or {})
    items = doc.get("assessments", [])
    if not isinstance(items, list):
        raise InputError("'assessments' must be a list")
    pairs = []
    for k, item in enumerate(items):
        if not isinstance(item, Mapping) or "gamble" not in item or "lower" not in item:
            raise InputError(f"assessment #{k} needs 'gamble' and 'lower'")
        pairs.append((realize_gamble(parse_gamble(item["gamble"]), space), rat(item["lower"])))
    return Assessment(space, tuple(pairs))


def violations_doc(space: AtomSpace, violations) -> list:
    return [{"axiom": v.axiom, "detail": v.detail,
             "sets": [[space.worlds[i].id for i in members(U) if i < len(space)] for U in v.sets]}
            for v in violations]
