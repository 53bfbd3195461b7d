"""
Action documents: parsing, validation, canonical serialization,
and the moment map μ_T(x) = Σ t_i α_i.
"""

import hashlib
import json
import logging
from typing import Optional, Tuple

from pydantic import ValidationError

from app.models.action import ActionDocument, PointSample, RootDatum, WeightSystem
from app.models.errors import ActionValidationError, ParseError, RankMismatchError
from app.models.geometry import InnerProduct
from app.utils.rational import Vector, combine, format_vector, to_vector

logger = logging.getLogger("action")


def as_action_error(exc: ValidationError) -> ActionValidationError:
    first = exc.errors()[0]
    original = first.get("ctx", {}).get("error")
    if isinstance(original, ActionValidationError):
        return original
    field = ".".join(str(part) for part in first.get("loc", ())) or "document"
    message = str(original) if original is not None else first["msg"]
    return ActionValidationError(field, message)


def load_action(text: str) -> Tuple[WeightSystem, Optional[RootDatum]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ParseError("the action document must be a JSON object")

    try:
        doc = ActionDocument.model_validate(data)
        rank = doc.rank
        if doc.gram is None:
            ip = InnerProduct.identity(rank)
        else:
            ip = InnerProduct(gram=tuple(tuple(row) for row in doc.gram))
        ws = WeightSystem(
            rank=rank,
            weights=tuple(tuple(w) for w in doc.weights),
            ip=ip,
            labels=tuple(doc.labels) if doc.labels is not None else None,
        )
        rd = None
        if doc.roots is not None:
            rd = RootDatum(
                ip=ip,
                simple_roots=tuple(tuple(a) for a in doc.roots.simple),
                positive_roots=tuple(tuple(a) for a in doc.roots.positive),
            )
    except ValidationError as e:
        raise as_action_error(e) from e

    logger.debug(f"[Action] loaded rank {ws.rank} system with {len(ws.weights)} weights")
    return ws, rd


def serialize_action(ws: WeightSystem, rd: Optional[RootDatum] = None) -> str:
    """Canonical JSON text: sorted keys, compact separators, 'p/q' rationals."""
    doc = {
        "rank": ws.rank,
        "weights": [format_vector(w) for w in ws.weights],
        "gram": [format_vector(row) for row in ws.ip.gram],
    }
    if ws.labels is not None:
        doc["labels"] = list(ws.labels)
    if rd is not None:
        doc["roots"] = {
            "simple": [format_vector(a) for a in rd.simple_roots],
            "positive": [format_vector(a) for a in rd.positive_roots],
        }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def action_digest(ws: WeightSystem, rd: Optional[RootDatum] = None) -> str:
    return hashlib.sha256(serialize_action(ws, rd).encode("utf-8")).hexdigest()


def moment_value(ws: WeightSystem, p: PointSample) -> Vector:
    if len(p.masses) != len(ws.weights):
        raise RankMismatchError(f"{len(p.masses)} masses for {len(ws.weights)} weights")
    return combine(p.masses, ws.weights)


def chamber_membership(xi, rd: RootDatum) -> bool:
    xi = to_vector(xi)
    if len(xi) != rd.rank:
        raise RankMismatchError(f"vector of length {len(xi)} in a rank {rd.rank} system")
    return all(rd.ip.dot(xi, alpha) >= 0 for alpha in rd.simple_roots)
