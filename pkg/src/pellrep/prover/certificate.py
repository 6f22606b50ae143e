"""Certificate tree and its byte-stable JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from ..errors import MalformedCertificate
from ..realfield.precreal import PrecReal
from ..realfield.quad import QuadElement
from ..repdigits import SolutionRecord

STEP_KINDS = (
    "brute-force",
    "size-bound",
    "matveev",
    "weber",
    "reduction",
    "legendre",
    "external-lemma",
    "conclusion",
)
STATUSES = ("PROVED", "PROVED_CONDITIONAL", "FAILED")
THEOREMS = ("pell", "pell-lucas")


def encode(x: Any) -> Any:
    """Plain JSON data: ints stay ints, reals become {"lo", "hi"}, rationals "p/q"."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, PrecReal):
        return x.to_json()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QuadElement):
        return repr(x)
    if isinstance(x, SolutionRecord):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    raise TypeError(f"cannot encode {type(x).__name__}")


def is_real(doc: Any) -> bool:
    return isinstance(doc, dict) and set(doc) == {"lo", "hi"} and all(isinstance(v, str) for v in doc.values())


@dataclass
class Step:
    kind: str
    anchor: str
    inputs: dict
    outputs: dict
    precision_bits: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "anchor": self.anchor,
            "inputs": encode(self.inputs),
            "outputs": encode(self.outputs),
            "precision_bits": self.precision_bits,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Step":
        if not isinstance(doc, dict):
            raise MalformedCertificate("step must be an object")
        missing = {"kind", "anchor", "inputs", "outputs", "precision_bits"} - set(doc)
        if missing:
            raise MalformedCertificate(f"step lacks {sorted(missing)}")
        if doc["kind"] not in STEP_KINDS:
            raise MalformedCertificate(f"unknown step kind {doc['kind']!r}")
        if not isinstance(doc["anchor"], str):
            raise MalformedCertificate("anchor must be a string")
        if not isinstance(doc["inputs"], dict) or not isinstance(doc["outputs"], dict):
            raise MalformedCertificate("inputs and outputs must be objects")
        pb = doc["precision_bits"]
        if pb is not None and (not isinstance(pb, int) or isinstance(pb, bool) or pb < 1):
            raise MalformedCertificate("precision_bits must be a positive integer or null")
        return cls(doc["kind"], doc["anchor"], doc["inputs"], doc["outputs"], pb)


@dataclass
class Certificate:
    theorem: str
    status: str
    steps: list[Step]
    solution_set: list[SolutionRecord]
    metadata: dict = field(default_factory=dict)

    def step(self, anchor: str) -> Step:
        for s in self.steps:
            if s.anchor == anchor:
                return s
        raise KeyError(anchor)

    def steps_of(self, kind: str) -> list[Step]:
        return [s for s in self.steps if s.kind == kind]

    @property
    def value_set(self) -> list[int]:
        return sorted({r.value for r in self.solution_set})

    @property
    def final_ceiling(self) -> Optional[int]:
        concl = self.steps_of("conclusion")
        return concl[-1].outputs.get("k_ceiling") if concl else None

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "status": self.status,
            "steps": [s.to_json() for s in self.steps],
            "solution_set": [r.to_json() for r in self.solution_set],
            "metadata": encode(self.metadata),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, doc: Any) -> "Certificate":
        if not isinstance(doc, dict):
            raise MalformedCertificate("certificate must be an object")
        missing = {"theorem", "status", "steps", "solution_set", "metadata"} - set(doc)
        if missing:
            raise MalformedCertificate(f"certificate lacks {sorted(missing)}")
        if doc["theorem"] not in THEOREMS:
            raise MalformedCertificate(f"unknown theorem {doc['theorem']!r}")
        if doc["status"] not in STATUSES:
            raise MalformedCertificate(f"unknown status {doc['status']!r}")
        if not isinstance(doc["steps"], list) or not isinstance(doc["solution_set"], list):
            raise MalformedCertificate("steps and solution_set must be lists")
        if not isinstance(doc["metadata"], dict):
            raise MalformedCertificate("metadata must be an object")
        steps = [Step.from_json(s) for s in doc["steps"]]
        try:
            sols = [SolutionRecord.from_json(r) for r in doc["solution_set"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCertificate(f"bad solution record: {exc}") from exc
        return cls(doc["theorem"], doc["status"], steps, sols, doc["metadata"])

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedCertificate(f"not JSON: {exc}") from exc
        return cls.from_json(doc)
