"""
The identity table of the algebra of preferences as a property suite

Each row holds an identity and its dual (· and ∨ swapped). Every identity
is instantiated with random atoms X, Y, Z on a random space and must hold
both as canonical equality and as exact equality of grid domains.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from prefcalc.algebra.expr import Atom, Complement, Conjunction, Disjunction, PreferenceExpr
from prefcalc.algebra.normalize import canonical_equal
from prefcalc.domain.oracle import domains_equal, eval_domain
from prefcalc.syntax.formatter import format_expr
from prefcalc.utils.config import config
from prefcalc.verification.generators import random_atom, random_space

logger = logging.getLogger(__name__)

Form = Callable[[Atom, Atom, Atom], PreferenceExpr]


def _and(*children: PreferenceExpr) -> PreferenceExpr:
    return Conjunction(children)


def _or(*children: PreferenceExpr) -> PreferenceExpr:
    return Disjunction(children)


def _not(child: PreferenceExpr) -> PreferenceExpr:
    return Complement(child)


@dataclass(frozen=True)
class Identity:
    """All forms must denote the same domain"""
    row: int
    dual: bool
    text: str
    forms: Tuple[Form, ...]

    @property
    def label(self) -> str:
        return f"{self.row}{'b' if self.dual else 'a'}"


IDENTITY_TABLE: Tuple[Identity, ...] = (
    Identity(1, False, "~~X = X",
             (lambda X, Y, Z: _not(_not(X)), lambda X, Y, Z: X)),
    Identity(1, True, "~~X = X",
             (lambda X, Y, Z: _not(_not(X)), lambda X, Y, Z: X)),
    Identity(2, False, "X·X = X",
             (lambda X, Y, Z: _and(X, X), lambda X, Y, Z: X)),
    Identity(2, True, "X∨X = X",
             (lambda X, Y, Z: _or(X, X), lambda X, Y, Z: X)),
    Identity(3, False, "X·Y = Y·X",
             (lambda X, Y, Z: _and(X, Y), lambda X, Y, Z: _and(Y, X))),
    Identity(3, True, "X∨Y = Y∨X",
             (lambda X, Y, Z: _or(X, Y), lambda X, Y, Z: _or(Y, X))),
    Identity(4, False, "~(X·Y) = ~X∨~Y",
             (lambda X, Y, Z: _not(_and(X, Y)), lambda X, Y, Z: _or(_not(X), _not(Y)))),
    Identity(4, True, "~(X∨Y) = ~X·~Y",
             (lambda X, Y, Z: _not(_or(X, Y)), lambda X, Y, Z: _and(_not(X), _not(Y)))),
    Identity(5, False, "(X·Y)·Z = X·(Y·Z) = X·Y·Z",
             (lambda X, Y, Z: _and(_and(X, Y), Z),
              lambda X, Y, Z: _and(X, _and(Y, Z)),
              lambda X, Y, Z: _and(X, Y, Z))),
    Identity(5, True, "(X∨Y)∨Z = X∨(Y∨Z) = X∨Y∨Z",
             (lambda X, Y, Z: _or(_or(X, Y), Z),
              lambda X, Y, Z: _or(X, _or(Y, Z)),
              lambda X, Y, Z: _or(X, Y, Z))),
    Identity(6, False, "(X∨Y)·Z = (X·Z)∨(Y·Z)",
             (lambda X, Y, Z: _and(_or(X, Y), Z), lambda X, Y, Z: _or(_and(X, Z), _and(Y, Z)))),
    Identity(6, True, "(X·Y)∨Z = (X∨Z)·(Y∨Z)",
             (lambda X, Y, Z: _or(_and(X, Y), Z), lambda X, Y, Z: _and(_or(X, Z), _or(Y, Z)))),
    Identity(7, False, "(X∨Y)·X = X",
             (lambda X, Y, Z: _and(_or(X, Y), X), lambda X, Y, Z: X)),
    Identity(7, True, "(X·Y)∨X = X",
             (lambda X, Y, Z: _or(_and(X, Y), X), lambda X, Y, Z: X)),
    Identity(8, False, "(X∨~X)·Y = Y",
             (lambda X, Y, Z: _and(_or(X, _not(X)), Y), lambda X, Y, Z: Y)),
    Identity(8, True, "(X·~X)∨Y = Y",
             (lambda X, Y, Z: _or(_and(X, _not(X)), Y), lambda X, Y, Z: Y)),
    Identity(9, False, "X∨~X∨Y = X∨~X",
             (lambda X, Y, Z: _or(X, _not(X), Y), lambda X, Y, Z: _or(X, _not(X)))),
    Identity(9, True, "X·~X·Y = X·~X",
             (lambda X, Y, Z: _and(X, _not(X), Y), lambda X, Y, Z: _and(X, _not(X)))),
)


@dataclass
class IdentityFailure:
    identity: str
    kind: str  # "canonical" or "domain"
    forms: List[str]

    def to_dict(self) -> Dict[str, Any]:
        return {"identity": self.identity, "kind": self.kind, "forms": list(self.forms)}


@dataclass
class IdentitySuiteResult:
    trials: int
    checks: int = 0
    failures: List[IdentityFailure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "checks": self.checks,
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
            "elapsed": self.elapsed,
        }


def check_identity(identity: Identity, X: Atom, Y: Atom, Z: Atom, space) -> Optional[IdentityFailure]:
    """First failing comparison of an identity instance, or None"""
    forms = [form(X, Y, Z) for form in identity.forms]
    rendered = [format_expr(f) for f in forms]
    first = forms[0]
    for other in forms[1:]:
        if not canonical_equal(first, other):
            return IdentityFailure(identity.text, "canonical", rendered)
        if not domains_equal(eval_domain(first, space), eval_domain(other, space)):
            return IdentityFailure(identity.text, "domain", rendered)
    return None


def run_identity_suite(
    attributes: int = 3,
    levels: int = 6,
    trials: int = 200,
    seed: Optional[int] = None,
) -> IdentitySuiteResult:
    """
    Check every identity on `trials` random instantiations

    Each trial draws a fresh space of 1..attributes attributes with 2..levels
    levels, then fresh atoms X, Y, Z for every identity.

    Args:
        attributes: Maximum number of attributes
        levels: Maximum levels per attribute
        trials: Instantiations per identity
        seed: Generator seed; defaults to PREFCALC_SEED

    Returns:
        IdentitySuiteResult
    """
    rng = np.random.default_rng(config.seed if seed is None else seed)
    result = IdentitySuiteResult(trials=trials)
    started = time.perf_counter()

    for trial in range(trials):
        space = random_space(rng, attributes, levels)
        for identity in IDENTITY_TABLE:
            X, Y, Z = (random_atom(rng, space) for _ in range(3))
            result.checks += 1
            failure = check_identity(identity, X, Y, Z, space)
            if failure is not None:
                logger.warning(f"identity {identity.label} failed ({failure.kind}): {failure.forms}")
                result.failures.append(failure)
        if (trial + 1) % 50 == 0:
            logger.debug(f"identity suite: {trial + 1}/{trials} trials")

    result.elapsed = time.perf_counter() - started
    logger.info(
        f"identity suite: {result.checks} checks, {len(result.failures)} failure(s) in {result.elapsed:.2f}s"
    )
    return result
