"""JSON ingestion (schema-checked) and deterministic report serialization."""
import csv
import json
from datetime import datetime, timezone
from pathlib import Path

import jsonschema

from .criteria.certificate import STATUSES, VERDICTS, Certificate
from .criteria.modular import NewformRecord
from .curves import CurveRecord
from .errors import InputError
from .forms import QuadField, enumerate_reduced_forms
from .iwasawa import LambdaPresentation, PrecisionProfile

_INT = {"type": "integer"}
_POS = {"type": "integer", "minimum": 1}

CURVE_SCHEMA = {
    "type": "object",
    "required": ["label", "ainvs", "conductor", "rank", "sha_order", "tamagawa_product",
                 "isogeny_degrees", "minimal"],
    "properties": {
        "label": {"type": "string"},
        "ainvs": {"type": "array", "items": _INT, "minItems": 5, "maxItems": 5},
        "conductor": _POS,
        "rank": {"type": "integer", "minimum": 0},
        "sha_order": _POS,
        "tamagawa_product": _POS,
        "isogeny_degrees": {"type": "array", "items": _POS},
        "minimal": {"const": True},
    },
}

_EIGENVALUE = {"oneOf": [_INT, {"type": "array", "items": _INT, "minItems": 1}]}

NEWFORM_SCHEMA = {
    "type": "object",
    "required": ["label", "level", "weight", "eigenvalues"],
    "properties": {
        "label": {"type": "string"},
        "level": _POS,
        "weight": {"type": "integer", "minimum": 2},
        "neben_conductor": _POS,
        "hecke_field_degree": _POS,
        "hecke_poly": {"type": "array", "items": _INT, "minItems": 2},
        "nonirreducible_primes": {"type": "array", "items": _POS},
        "sturm_bound": {"type": "integer", "minimum": 0},
        "eigenvalues": {
            "type": "object",
            "patternProperties": {r"^[0-9]+$": _EIGENVALUE},
            "additionalProperties": False,
        },
    },
}

FIELD_SCHEMA = {
    "type": "object",
    "required": ["D"],
    "properties": {"D": _POS},
}

CLASS_GROUP_SCHEMA = {
    "type": "object",
    "required": ["D", "h"],
    "properties": {
        "D": _POS,
        "h": _POS,
        "structure": {"type": "array", "items": _POS},
    },
}

PRESENTATION_SCHEMA = {
    "type": "object",
    "required": ["p", "matrix"],
    "properties": {
        "p": {"type": "integer", "minimum": 3},
        "p_prec": _POS,
        "t_prec": _POS,
        "matrix": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 1,
                      "items": {"oneOf": [{"type": "string"}, _INT]}},
        },
    },
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["subject", "theorem", "conditions", "verdict", "interpretation_notes",
                 "toolkit_version"],
    "additionalProperties": False,
    "properties": {
        "subject": {"type": "string"},
        "theorem": {"type": "string"},
        "conditions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status", "evidence"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": list(STATUSES)},
                    "evidence": {"type": "string"},
                },
            },
        },
        "verdict": {"enum": list(VERDICTS)},
        "interpretation_notes": {"type": "array", "items": {"type": "string"}},
        "toolkit_version": {"type": "string"},
        "timestamp": {"type": "string"},
    },
}


def validate(data, schema, what="record"):
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise InputError(f"{what} failed schema validation at {where}: {exc.message}") from None
    return data


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from None


def curve_from_dict(data):
    validate(data, CURVE_SCHEMA, "curve")
    return CurveRecord(
        label=data["label"],
        ainvs=tuple(data["ainvs"]),
        conductor=data["conductor"],
        rank=data["rank"],
        sha_order=data["sha_order"],
        tamagawa_product=data["tamagawa_product"],
        isogeny_degrees=frozenset(data["isogeny_degrees"]),
        minimal=data["minimal"],
    )


def newform_from_dict(data):
    validate(data, NEWFORM_SCHEMA, "newform")
    extra = {k: data[k] for k in ("neben_conductor", "hecke_field_degree", "sturm_bound") if k in data}
    if "hecke_poly" in data:
        extra["hecke_poly"] = tuple(data["hecke_poly"])
    if "nonirreducible_primes" in data:
        extra["nonirreducible_primes"] = frozenset(data["nonirreducible_primes"])
    return NewformRecord(data["label"], data["level"], data["weight"], data["eigenvalues"], **extra)


def presentation_from_dict(data):
    validate(data, PRESENTATION_SCHEMA, "presentation")
    profile = PrecisionProfile(data["p"], data.get("p_prec", 12), data.get("t_prec", 24))
    return LambdaPresentation.from_literals(profile, data["matrix"])


def field_from_dict(data):
    validate(data, FIELD_SCHEMA, "field")
    return QuadField(data["D"])


def load_curve(path):
    return curve_from_dict(read_json(path))


def load_newforms(path):
    """One newform record or a list of them."""
    data = read_json(path)
    items = data if isinstance(data, list) else [data]
    return [newform_from_dict(d) for d in items]


def load_newform(path):
    forms = load_newforms(path)
    if len(forms) != 1:
        raise InputError(f"{path}: expected a single newform, found {len(forms)}")
    return forms[0]


def load_presentation(path):
    return presentation_from_dict(read_json(path))


def load_field(path):
    return field_from_dict(read_json(path))


def crosscheck_class_group(record):
    """Compare an externally ingested {"D", "h", "structure"} record with our enumeration."""
    validate(record, CLASS_GROUP_SCHEMA, "class-group record")
    table = enumerate_reduced_forms(QuadField(record["D"]))
    computed = {"h": table.h, "structure": table.structure()}
    match = computed["h"] == record["h"]
    if "structure" in record:
        match = match and sorted(record["structure"]) == computed["structure"]
    return {"D": record["D"], "ingested": record, "computed": computed, "match": match}


def certificate_from_dict(data):
    validate(data, CERTIFICATE_SCHEMA, "certificate")
    return Certificate.from_dict(data)


def timestamp_now():
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def dumps(obj):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(obj, path):
    Path(path).write_text(dumps(obj), encoding="utf-8")


def write_density_csv(report, path, p=3):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["prime", f"mod{p}", "splitting", "in_S1", "in_S2"])
        for ell, r, splitting, s1, s2 in report.rows:
            w.writerow([ell, r, splitting, int(s1), int(s2)])
