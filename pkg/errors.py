#!/usr/bin/env python3
"""
Error Types
Exception hierarchy shared by the weight, linkage, search and recipe modules
"""

from typing import Any, Optional


class PeriplecticError(Exception):
    """Base class for every error raised by this project"""


class WeightError(PeriplecticError, ValueError):
    """Malformed weight, bad index, rank mismatch or non-dominant input"""


class NotEligible(PeriplecticError):
    """Odd up moves were requested at a weight outside the eligibility set"""

    def __init__(self, weight, p: int, failing_pairs=None):
        self.weight = weight
        self.p = p
        self.failing_pairs = list(failing_pairs or [])
        super().__init__(f"{weight} is not eligible for odd moves at p={p} "
                         f"(failing pairs: {self.failing_pairs})")


class PreconditionViolated(PeriplecticError):
    """A move could not be applied; `check` names the failed test"""

    def __init__(self, check: str, detail: str):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}")

    def to_json(self) -> dict:
        return {"check": self.check, "detail": self.detail}


class BudgetExhausted(PeriplecticError):
    """The search expanded its node budget without reaching a representative"""

    def __init__(self, start, expanded: int, budget: int):
        self.start = start
        self.expanded = expanded
        self.budget = budget
        super().__init__(f"budget of {budget} nodes exhausted from {start} "
                         f"(expanded {expanded}); this says nothing about linkage")


class HypothesisViolated(PeriplecticError):
    """A recipe was invoked outside its hypotheses"""

    def __init__(self, recipe: str, clause: str):
        self.recipe = recipe
        self.clause = clause
        super().__init__(f"{recipe}: hypothesis violated: {clause}")


class ClaimFailed(PeriplecticError):
    """A recipe step did not satisfy the property its chain claims"""

    def __init__(self, recipe: str, step: int, claim: str, partial: Optional[Any] = None):
        self.recipe = recipe
        self.step = step
        self.claim = claim
        self.partial = partial
        super().__init__(f"{recipe}: claim failed at step {step}: {claim}")

    def to_json(self) -> dict:
        return {"recipe": self.recipe, "step": self.step, "claim": self.claim,
                "partial": self.partial.to_json() if self.partial is not None else None}


class CensusAssertionFailed(PeriplecticError):
    """Census assertions (four representatives, sector match) did not hold"""
