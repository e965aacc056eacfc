"""JSON file formats for pencils, factorizations and reports.

Integers outside the signed 64-bit range are written as decimal strings and
read back from either form, so arbitrarily large genera survive a round trip.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .exceptional import CalculusError, DoublingSequence, ExceptionalData, PencilState
from .search import MatchingFamily
from .words import Factorization, TwistLetter, WordError

_I64 = 2 ** 63


class InputError(ValueError):
    pass


def enc_int(n: int):
    return n if -_I64 <= n < _I64 else str(n)


def dec_int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError:
            pass
    raise InputError(f"{where}: expected an integer, got {x!r}")


def _read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _check_keys(obj: dict, allowed: set, where: str, strict: bool) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    extra = sorted(set(obj) - allowed)
    if strict and extra:
        raise InputError(f"{where}: unknown field(s) {', '.join(extra)}")


def pencil_from_obj(obj: Any, strict: bool = True) -> PencilState:
    _check_keys(obj, {"genus", "exceptional_data", "label"}, "pencil", strict)
    for k in ("genus", "exceptional_data"):
        if k not in obj:
            raise InputError(f"pencil: missing field {k!r}")
    genus = dec_int(obj["genus"], "pencil.genus")
    raw = obj["exceptional_data"]
    if not isinstance(raw, list):
        raise InputError("pencil.exceptional_data: expected a list")
    data = [dec_int(x, f"pencil.exceptional_data[{i}]") for i, x in enumerate(raw)]
    for i, x in enumerate(data):
        if x < 0:
            raise InputError(f"pencil.exceptional_data[{i}]: negative entry {x}")
    if genus < 0:
        raise InputError(f"pencil.genus: negative genus {genus}")
    return PencilState.of(genus, data)


def pencil_to_obj(state: PencilState, label: str | None = None) -> dict:
    out = {"genus": enc_int(state.genus), "exceptional_data": [enc_int(x) for x in state.data]}
    if label is not None:
        out["label"] = label
    return out


def load_pencil(path, strict: bool = True) -> PencilState:
    return pencil_from_obj(_read_json(path), strict)


def factorization_from_obj(obj: Any, strict: bool = True) -> Factorization:
    _check_keys(obj, {"genus", "boundary_count", "letters"}, "factorization", strict)
    if "genus" not in obj or "letters" not in obj:
        raise InputError("factorization: needs 'genus' and 'letters'")
    genus = dec_int(obj["genus"], "genus")
    m = dec_int(obj.get("boundary_count", 0), "boundary_count")
    if genus < 0 or m < 0:
        raise InputError("genus and boundary_count must be non-negative")
    raw = obj["letters"]
    if not isinstance(raw, list):
        raise InputError("letters: expected a list")
    letters = []
    for i, rec in enumerate(raw):
        where = f"letters[{i}]"
        if isinstance(rec, list):
            rec = {"class": rec}
        _check_keys(rec, {"class", "name", "separating"}, where, strict)
        if "class" not in rec or not isinstance(rec["class"], list):
            raise InputError(f"{where}: missing integer list 'class'")
        cls = tuple(dec_int(x, f"{where}.class") for x in rec["class"])
        if len(cls) != 2 * genus:
            raise InputError(
                f"{where}: class has length {len(cls)}, expected 2g = {2 * genus}"
            )
        sep = rec.get("separating")
        if sep is None:
            sep = not any(cls)
        try:
            letters.append(TwistLetter(cls, rec.get("name"), bool(sep)))
        except WordError as exc:
            raise InputError(f"{where}: {exc}") from exc
    return Factorization(genus, m, tuple(letters))


def factorization_to_obj(f: Factorization) -> dict:
    letters = []
    for l in f.letters:
        rec: dict = {"class": [enc_int(x) for x in l.cls]}
        if l.label is not None:
            rec["name"] = l.label
        if l.separating:
            rec["separating"] = True
        letters.append(rec)
    return {"genus": f.genus, "boundary_count": f.boundary_count, "letters": letters}


def load_factorization(path, strict: bool = True) -> Factorization:
    return factorization_from_obj(_read_json(path), strict)


def family_to_obj(fam: MatchingFamily) -> dict:
    return {
        "start": {"g0": enc_int(fam.start[0]), "m0": enc_int(fam.start[1])},
        "shared": {"M": enc_int(fam.shared[0]), "g": enc_int(fam.shared[1])},
        "requested": fam.requested,
        "complete": fam.complete,
        "bounds": fam.bounds,
        "sequences": [[enc_int(k) for k in s] for s in fam.sequences],
        "datasets": [[enc_int(x) for x in d] for d in fam.datasets],
    }


def family_from_obj(obj: Any) -> MatchingFamily:
    try:
        g0 = dec_int(obj["start"]["g0"], "start.g0")
        m0 = dec_int(obj["start"]["m0"], "start.m0")
        M = dec_int(obj["shared"]["M"], "shared.M")
        g = dec_int(obj["shared"]["g"], "shared.g")
        seqs = [
            DoublingSequence(tuple(dec_int(k, f"sequences[{i}]") for k in s))
            for i, s in enumerate(obj["sequences"])
        ]
        datasets = [
            ExceptionalData(tuple(dec_int(x, f"datasets[{i}]") for x in d))
            for i, d in enumerate(obj.get("datasets", []))
        ]
    except (KeyError, TypeError) as exc:
        raise InputError(f"family: malformed report ({exc})") from exc
    except CalculusError as exc:
        raise InputError(f"family: {exc}") from exc
    return MatchingFamily(
        (g0, m0), seqs, (M, g), datasets,
        requested=int(obj.get("requested", len(seqs))),
        complete=bool(obj.get("complete", True)),
        bounds=dict(obj.get("bounds", {})),
    )


def load_family(path) -> MatchingFamily:
    return family_from_obj(_read_json(path))
