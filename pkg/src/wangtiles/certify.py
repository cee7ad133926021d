"""The end-to-end certification pipeline.

Certifying a tile set T runs two marker-derivation steps, checks that the
twice-derived set is a color relabeling of T, composes the three morphisms
into a self-map, and verifies that self-map is primitive, expansive and
letter-recognizable, and that its 2x2 factor language exhausts the 2x2
patterns the solver admits.  Conclusions are only ever claimed from verified
premises; a failing step leaves the remaining flags false rather than
guessing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional, Sequence, Union

from . import __version__
from .core import WangTileSet, check_equivalence
from .derivation import Derivation, MarkerSet, derive, find_marker_candidates
from .morphism import (
    Morphism2d,
    Word2d,
    check_recognizability_criterion,
    compose,
    factors_2x2,
    incidence_matrix,
    is_primitive,
)
from .solver import patterns_with_surrounding

AUTO_DIRECTIONS = (2, 1)
AUTO_MAX_RADIUS = 3

Plan = Union[str, Sequence[tuple[int, int]]]


@dataclass
class Step:
    claim: str
    evidence: dict
    status: str  # "pass" | "fail"

    def as_dict(self) -> dict:
        return {"claim": self.claim, "evidence": self.evidence, "status": self.status}


@dataclass
class Certificate:
    subject: str
    steps: list[Step] = field(default_factory=list)
    self_similar: bool = False
    aperiodic: bool = False
    minimal: bool = False
    started: str = ""
    finished: str = ""

    def all_verified(self) -> bool:
        return self.self_similar and self.aperiodic and self.minimal

    def to_json(self) -> str:
        doc = {
            "subject": self.subject,
            "steps": [s.as_dict() for s in self.steps],
            "conclusion": {
                "selfSimilar": self.self_similar,
                "aperiodic": self.aperiodic,
                "minimal": self.minimal,
            },
            "timestamps": {"started": self.started, "finished": self.finished},
            "toolVersion": __version__,
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _derivation_key(d: Derivation) -> tuple:
    return (d.singles, d.fusions)


def _auto_step(T: WangTileSet) -> Optional[tuple[MarkerSet, int, Derivation]]:
    """First stabilizing derivation, trying e2 then e1 with radii 1..3.

    A derivation stabilizes when raising the radius by one no longer changes
    the singles or the fusion pairs.
    """
    for direction in AUTO_DIRECTIONS:
        for radius in range(1, AUTO_MAX_RADIUS + 1):
            for markers in find_marker_candidates(T, direction, radius):
                d = derive(T, markers, radius)
                d_next = derive(T, markers, radius + 1)
                if _derivation_key(d) == _derivation_key(d_next):
                    return markers, radius, d
    return None


def _planned_step(T: WangTileSet, direction: int, radius: int) -> Optional[tuple[MarkerSet, int, Derivation]]:
    candidates = find_marker_candidates(T, direction, radius)
    if not candidates:
        return None
    markers = candidates[0]
    return markers, radius, derive(T, markers, radius)


def certify(T: WangTileSet, subject: str = "tileset", plan: Plan = "auto") -> Certificate:
    """Run the certification pipeline; never raises on well-formed input."""
    cert = Certificate(subject=subject, started=_now())

    if plan == "auto":
        step_specs: list[Optional[tuple[int, int]]] = [None, None]
    else:
        step_specs = list(plan)  # type: ignore[arg-type]
        if len(step_specs) != 2:
            raise ValueError("a certification plan needs exactly two derivation steps")

    derivations: list[Derivation] = []
    current = T
    for k, spec in enumerate(step_specs, start=1):
        try:
            found = _auto_step(current) if spec is None else _planned_step(current, *spec)
        except ValueError as e:  # e.g. colliding derived tiles on degenerate input
            found = None
            error: Optional[str] = str(e)
        else:
            error = None
        if found is None:
            evidence: dict = {"plan": "auto" if spec is None else list(spec)}
            if error:
                evidence["error"] = error
            cert.steps.append(
                Step(
                    claim=f"derivation step {k}: a verified marker set exists",
                    evidence=evidence,
                    status="fail",
                )
            )
            cert.finished = _now()
            return cert
        markers, radius, d = found
        recognizable = check_recognizability_criterion(
            d.morphism, set(markers.tile_indices), markers.direction, "right"
        )
        cert.steps.append(
            Step(
                claim=f"derivation step {k}: markers verified and morphism recognizable",
                evidence={
                    "direction": markers.direction,
                    "radius": radius,
                    "markers": sorted(markers.tile_indices),
                    "derivedSize": len(d.derived),
                    "singles": list(d.singles),
                    "fusions": [list(p) for p in d.fusions],
                    "recognizabilityCriterion": recognizable,
                },
                status="pass" if recognizable and not d.degenerate else "fail",
            )
        )
        if not recognizable or d.degenerate:
            cert.finished = _now()
            return cert
        derivations.append(d)
        current = d.derived

    eq = check_equivalence(T, current)
    cert.steps.append(
        Step(
            claim="twice-derived tile set is a color relabeling of the original",
            evidence=(
                {
                    "verticalBijection": eq.vertical,
                    "horizontalBijection": eq.horizontal,
                    "tileBijection": {str(k): v for k, v in sorted(eq.tile_map.items())},
                }
                if eq
                else {"equivalence": None}
            ),
            status="pass" if eq else "fail",
        )
    )
    if eq is None:
        cert.finished = _now()
        return cert

    relabeling = Morphism2d(
        T, current, tuple(Word2d.letter(eq.tile_map[i]) for i in range(len(T)))
    )
    omega = compose(compose(derivations[0].morphism, derivations[1].morphism), relabeling)
    exponent = is_primitive(incidence_matrix(omega))
    expansive = exponent is not None and any(im.shape == (2, 2) for im in omega.images)
    cert.steps.append(
        Step(
            claim="composed self-map is primitive and expansive",
            evidence={
                "primitivityExponent": exponent,
                "imageShapes": sorted({f"{a}x{b}" for a, b in (im.shape for im in omega.images)}),
            },
            status="pass" if expansive else "fail",
        )
    )
    if not expansive:
        cert.finished = _now()
        return cert

    cert.self_similar = True
    cert.aperiodic = True  # expansive + recognizable self-map onto-up-to-shift

    # The admissible pattern set over-approximates the shift language at any
    # radius, so equality at any radius licenses the conclusion; escalate a
    # little before giving up.
    factors = factors_2x2(omega)
    minimal = False
    evidence: dict = {"factorCount": len(factors)}
    for r in range(1, AUTO_MAX_RADIUS + 1):
        admitted = set(patterns_with_surrounding(T, (2, 2), r))
        evidence["admittedCount"] = len(admitted)
        evidence["radius"] = r
        if not factors <= admitted:
            break  # the factor language escaped the admissible set: give up
        if factors == admitted:
            minimal = True
            break
    cert.steps.append(
        Step(
            claim="2x2 factors of the self-map exhaust the admissible 2x2 patterns",
            evidence=evidence,
            status="pass" if minimal else "fail",
        )
    )
    cert.minimal = minimal
    cert.finished = _now()
    return cert
