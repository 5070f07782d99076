"""Definiteness labels and the three-class projection used for scoring."""
from __future__ import annotations

import enum


class DefinitenessClass(enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    POSITIVE_SEMIDEFINITE = "positive_semidefinite"
    NEGATIVE_DEFINITE = "negative_definite"
    NEGATIVE_SEMIDEFINITE = "negative_semidefinite"
    INDEFINITE = "indefinite"
    UNCLASSIFIED = "unclassified"


class CanonicalClass(enum.Enum):
    """Coarse label actually scored: sign pattern of the spectrum."""

    POSITIVE = "positive"
    NEGATIVE = "negative"
    INDEFINITE = "indefinite"


# Semidefinite verdicts carry a "could sit exactly on zero" caveat, but for
# scoring they collapse onto the sign they exclude nothing from: PSD means no
# negative eigenvalue, NSD means no positive one.
_PROJECTION = {
    DefinitenessClass.POSITIVE_DEFINITE: CanonicalClass.POSITIVE,
    DefinitenessClass.POSITIVE_SEMIDEFINITE: CanonicalClass.POSITIVE,
    DefinitenessClass.NEGATIVE_DEFINITE: CanonicalClass.NEGATIVE,
    DefinitenessClass.NEGATIVE_SEMIDEFINITE: CanonicalClass.NEGATIVE,
    DefinitenessClass.INDEFINITE: CanonicalClass.INDEFINITE,
}


def canonical(label: DefinitenessClass) -> CanonicalClass | None:
    """Project a five-way verdict onto the scored three-class label.

    UNCLASSIFIED has no projection and returns None; it never matches a
    ground-truth label and therefore always scores as a miss.
    """
    return _PROJECTION.get(label)
