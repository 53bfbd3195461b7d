"""
Command orchestration for the CLI: each command turns a loaded action
document plus its options into a Report. Payloads are built from
model_dump(mode="json"), so every rational is already a "p/q" string.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from app import __version__
from app.models.action import RootDatum, WeightSystem
from app.models.api import Report
from app.models.errors import (
    MissingRootDatumError,
    NonPositiveEpsilonError,
    ParseError,
    PlotRankError,
    StrictlySemistableError,
    UnknownBetaError,
    UnsupportedRootDatumError,
)
from app.models.implosion import ParabolicData
from app.models.strata import StratumIndex
from app.services.action import action_digest, as_action_error, chamber_membership
from app.services.cohomology import perfection_certificate, quotient_betti, semistable_series
from app.services.implosion import dominant_representative, face_data, in_sweep_cone, parabolic_roots
from app.services.plot import render_svg
from app.services.quotient import critical_quotient, epsilon_window, quotient_family, unstable_quotient
from app.services.strata import closure_relations, index_set, strata_partition, stratum_dimension
from app.utils.rational import format_rational, format_vector, parse_rational

logger = logging.getLogger("cli")


# ─── Option Parsing ─────────────────────────────────────

def parse_vector_option(text: str, name: str) -> List[Fraction]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    try:
        return [parse_rational(part) for part in body.split(",")]
    except ValueError as e:
        raise ParseError(f"--{name}: {e}") from e


def parse_index_list(text: Optional[str]) -> List[int]:
    if text is None or not text.strip():
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as e:
        raise ParseError(f"--sp: expected comma-separated integers, got {text!r}") from e


def parse_epsilon(text: str) -> Fraction:
    try:
        eps = parse_rational(text)
    except ValueError as e:
        raise NonPositiveEpsilonError(f"--epsilon: {e}") from e
    if eps <= 0:
        raise NonPositiveEpsilonError(f"--epsilon must be positive, got {format_rational(eps)}")
    return eps


def resolve_beta(selector: str, strata: List[StratumIndex], rank: int) -> StratumIndex:
    """
    '#k' is the 0-based index into the sorted index set. Otherwise the
    selector is a rational vector and must match a member exactly; for
    rank ≥ 2 a bare integer is read as an index.
    """
    text = selector.strip()
    as_index = text.startswith("#") or (rank > 1 and "," not in text and "[" not in text)
    if as_index:
        try:
            k = int(text.lstrip("#"))
        except ValueError as e:
            raise UnknownBetaError(selector, f"{selector!r} is neither an index nor a vector") from e
        if not 0 <= k < len(strata):
            raise UnknownBetaError(selector, f"index {k} is outside 0..{len(strata) - 1}")
        return strata[k]

    try:
        beta = tuple(parse_vector_option(text, "beta"))
    except ParseError as e:
        raise UnknownBetaError(selector, str(e)) from e
    if len(beta) != rank:
        raise UnknownBetaError(selector, f"beta {selector!r} does not have rank {rank}")
    match = next((si for si in strata if tuple(si.beta) == beta), None)
    if match is None:
        raise UnknownBetaError(selector)
    return match


# ─── Commands ───────────────────────────────────────────

class CommandService:
    @staticmethod
    def report(command: str, ws: WeightSystem, rd: Optional[RootDatum],
               arguments: Dict[str, Any], payload: Dict[str, Any]) -> Report:
        return Report(
            command=command,
            input_digest=action_digest(ws, rd),
            arguments=arguments,
            payload=payload,
            version=__version__,
        )

    @staticmethod
    def strata(ws: WeightSystem, rd: Optional[RootDatum], partition: bool = False,
               closure: bool = False) -> Dict[str, Any]:
        strata = index_set(ws, rd)
        logger.info(f"[CLI] strata: {len(strata)} members in the index set")
        payload: Dict[str, Any] = {
            "betas": [format_vector(si.beta) for si in strata],
            "index_set": [
                {**si.model_dump(mode="json"), "dimension": stratum_dimension(si, ws)}
                for si in strata
            ],
        }
        if partition:
            payload["partition"] = [
                {"support": list(s.indices), "beta": format_vector(beta)}
                for s, beta in strata_partition(ws).items()
            ]
        if closure:
            payload["closure"] = [
                {"from": format_vector(upper), "to": format_vector(lower)}
                for upper, lower in closure_relations(ws)
            ]
        return payload

    @staticmethod
    def betti(ws: WeightSystem, rd: Optional[RootDatum]) -> Dict[str, Any]:
        if rd is not None:
            raise UnsupportedRootDatumError("Betti numbers are computed for torus actions only")
        series = semistable_series(ws)
        quotient: Dict[str, Any]
        try:
            betti = quotient_betti(ws)
            quotient = {"empty": betti.is_zero, "betti": betti.model_dump(mode="json")}
        except StrictlySemistableError as e:
            quotient = {"strictly_semistable": list(e.support)}
        certificate = perfection_certificate(ws)
        logger.info(f"[CLI] betti: series {series.text}, perfection {certificate.equal}")
        return {
            "semistable_series": series.model_dump(mode="json"),
            "quotient": quotient,
            "perfection": certificate.model_dump(mode="json"),
        }

    @staticmethod
    def quotient(ws: WeightSystem, rd: Optional[RootDatum], beta: str,
                 epsilon: Optional[str] = None, family: bool = False, critical: bool = False) -> Dict[str, Any]:
        strata = index_set(ws, rd)
        si = resolve_beta(beta, strata, ws.rank)
        eps = parse_epsilon(epsilon) if epsilon is not None else None
        window = epsilon_window(si, ws)
        payload: Dict[str, Any] = {
            "stratum": si.model_dump(mode="json"),
            "window": window.model_dump(mode="json"),
        }
        if eps is not None:
            payload["report"] = unstable_quotient(si, ws, eps).model_dump(mode="json")
        if family:
            payload["family"] = [c.model_dump(mode="json") for c in quotient_family(si, ws)]
        if critical:
            payload["critical"] = critical_quotient(si, ws).model_dump(mode="json")
        logger.info(f"[CLI] quotient: beta {format_vector(si.beta)}, empty_for_all_eps {window.empty_for_all_eps}")
        return payload

    @staticmethod
    def implosion(ws: WeightSystem, rd: Optional[RootDatum], xi: str, sp: Optional[str] = None) -> Dict[str, Any]:
        if rd is None:
            raise MissingRootDatumError("the implosion command needs a root datum")
        try:
            pd = ParabolicData(rd=rd, sp=tuple(parse_index_list(sp)))
        except ValidationError as e:
            raise as_action_error(e) from e
        vector = parse_vector_option(xi, "xi")
        rep = dominant_representative(vector, pd)
        member = in_sweep_cone(vector, pd)
        face = face_data(rep.representative, pd) if member else None
        logger.info(f"[CLI] implosion: member {member}, word length {len(rep.word)}")
        return {
            "xi": format_vector(vector),
            "sp": list(pd.sp),
            "member": member,
            "in_chamber": chamber_membership(vector, rd),
            "representative": format_vector(rep.representative),
            "word": list(rep.word),
            "parabolic_roots": [format_vector(g) for g in parabolic_roots(pd)],
            "face": face.model_dump(mode="json") if face is not None else None,
        }

    @staticmethod
    def plot(ws: WeightSystem, rd: Optional[RootDatum], out: str, beta: Optional[str] = None) -> Dict[str, Any]:
        if ws.rank > 2:
            raise PlotRankError(f"plots need rank 1 or 2, got rank {ws.rank}")
        strata = index_set(ws, rd)
        chosen = resolve_beta(beta, strata, ws.rank) if beta is not None else None
        render_svg(ws, strata, out, chosen)
        return {
            "svg": out,
            "betas": [format_vector(si.beta) for si in strata],
            "beta": format_vector(chosen.beta) if chosen is not None else None,
        }
