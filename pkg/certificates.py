#!/usr/bin/env python3
"""
Chain Certificates
Replayable linkage chains and their independent verification
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from affine_even import check_prime
from errors import PreconditionViolated, WeightError
from linkage_moves import Move, apply_move, reverse_steps
from weights import ParityWeight, m_vector, omega_shape

logger = logging.getLogger(__name__)


@dataclass
class Certificate:
    """A start label, the moves taken from it, and the label they reach"""
    p: int
    start: ParityWeight
    steps: List[Move] = field(default_factory=list)
    end: Optional[ParityWeight] = None

    def __post_init__(self):
        if self.end is None:
            self.end = self.start

    def to_json(self) -> dict:
        return {"p": self.p,
                "start": self.start.to_json(),
                "steps": [move.to_json() for move in self.steps],
                "end": self.end.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        try:
            return cls(p=int(data["p"]),
                       start=ParityWeight.from_json(data["start"]),
                       steps=[Move.from_json(step) for step in data["steps"]],
                       end=ParityWeight.from_json(data["end"]))
        except (KeyError, TypeError, ValueError) as e:
            raise WeightError(f"malformed certificate: {e}")

    def trail(self, strict: bool = False) -> List[ParityWeight]:
        """Every label visited, start and end included"""
        labels = [self.start]
        for move in self.steps:
            labels.append(apply_move(labels[-1], move, self.p, strict))
        return labels


@dataclass
class CertificateVerdict:
    ok: bool
    failing_step: Optional[int] = None
    reason: Optional[str] = None

    def to_json(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {"ok": False, "failing_step": self.failing_step, "reason": self.reason}


def verify_certificate(certificate: Certificate, strict: bool = False) -> CertificateVerdict:
    """
    Replay a certificate from scratch.

    Every step re-derives dominance, d-values, eligibility (without the verdict memo)
    and Donkin predicates. A mismatch with the recorded end is reported at index
    len(steps); a certificate whose p is not an odd prime fails at step 0.
    """
    try:
        check_prime(certificate.p)
    except WeightError as e:
        return CertificateVerdict(False, 0, str(e))
    current = certificate.start
    for index, move in enumerate(certificate.steps):
        try:
            current = apply_move(current, move, certificate.p, strict, fresh=True)
        except PreconditionViolated as e:
            return CertificateVerdict(False, index, f"{move}: {e}")
        except WeightError as e:
            return CertificateVerdict(False, index, f"{move}: malformed step: {e}")
    if current != certificate.end:
        return CertificateVerdict(False, len(certificate.steps),
                                  f"replay ends at {current}, certificate claims {certificate.end}")
    return CertificateVerdict(True)


def concat(first: Certificate, second: Certificate) -> Certificate:
    if first.p != second.p or first.end != second.start:
        raise WeightError(f"cannot join a chain ending at {first.end} with one starting at {second.start}")
    return Certificate(first.p, first.start, first.steps + second.steps, second.end)


def reverse_certificate(certificate: Certificate, strict: bool = False) -> Certificate:
    end, backwards = reverse_steps(certificate.start, certificate.steps, certificate.p, strict)
    return Certificate(certificate.p, end, backwards, certificate.start)


def m_descent_audit(certificate: Certificate) -> bool:
    """The smallest m-vector along the chain belongs to an ω^a_0 or ω^a_{−1} label"""
    labels = certificate.trail()
    lowest = min(labels, key=lambda pw: m_vector(pw.weight))
    shape = omega_shape(lowest.weight)
    return shape is not None and shape[1] <= 1
