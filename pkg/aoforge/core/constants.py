from __future__ import annotations

from django.db.models import TextChoices

# The root of G_r is stored as vertex n+1 and serialized as this label.
ROOT_LABEL = "r"


class ComplexKind(TextChoices):
    Z = "Z", "Graphical zonotope complex"
    Y = "Y", "Complex resolving the artinianized acyclic-orientation ideal"
    X = "X", "Complex resolving the tree ideal"


class IdealKind(TextChoices):
    A = "A", "Ideal of acyclic orientations"
    T = "T", "Tree ideal"


class ErrorExitCode:
    VERDICT_FAILED = 1
    USAGE = 2


class ChainKind(TextChoices):
    CS = "CS", "Card shuffling"
    ELR = "ELR", "Edge label reversal"
    SL = "SL", "Sliding label"
    CR = "CR", "Cover reversal"
    IR = "IR", "Interval reversal"
