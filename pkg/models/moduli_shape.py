"""
Moduli shapes: formal products of symmetric powers of points and curves.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple


class ShapeBase(str, Enum):
    """Isomorphism type of the moduli space of a single stable component."""
    EMPTY = "Empty"
    POINT = "Point"
    PROJ_LINE = "ProjLine"
    RATIONAL_CURVE = "RationalCurve"


@dataclass(frozen=True)
class ShapeFactor:
    """S^power(base); a rational curve may carry the conjectural P^1 flag."""
    base: ShapeBase
    power: int = 1
    conjectural_projective_line: bool = False

    def __post_init__(self):
        if self.power < 1:
            raise ValueError("Symmetric power must be at least 1")
        if self.base == ShapeBase.EMPTY:
            raise ValueError("Empty is not a factor; use ModuliShape.empty()")


@dataclass(frozen=True)
class ModuliShape:
    """
    Product of symmetric powers, with its normal form.

    Normalization: S^m(Point) = Point, S^m(ProjLine) = P^m, and a rational
    curve flagged as conjecturally P^1 normalizes like ProjLine while marking
    the whole shape conjectural. Point factors drop out of nonempty products.
    """
    factors: Tuple[ShapeFactor, ...] = ()
    is_empty: bool = False

    @classmethod
    def empty(cls) -> 'ModuliShape':
        return cls(factors=(), is_empty=True)

    @classmethod
    def point(cls) -> 'ModuliShape':
        return cls(factors=())

    @property
    def normalized(self) -> Optional[Tuple[int, ...]]:
        """Projective-space dimensions (descending); () for Point, None for Empty."""
        if self.is_empty:
            return None
        dims: List[int] = []
        for f in self.factors:
            if f.base == ShapeBase.POINT:
                continue
            if f.base == ShapeBase.RATIONAL_CURVE and not f.conjectural_projective_line:
                raise ValueError("Symmetric powers of an unidentified rational curve do not normalize")
            dims.append(f.power)
        return tuple(sorted(dims, reverse=True))

    @property
    def is_conjectural(self) -> bool:
        return any(f.base == ShapeBase.RATIONAL_CURVE for f in self.factors)

    @property
    def is_normalizable(self) -> bool:
        return all(f.base != ShapeBase.RATIONAL_CURVE or f.conjectural_projective_line
                   for f in self.factors)

    @property
    def kind(self) -> str:
        if self.is_empty:
            return "Empty"
        if not self.normalized:
            return "Point"
        return "Product"

    @property
    def dimension(self) -> Optional[int]:
        normalized = self.normalized
        return None if normalized is None else sum(normalized)

    def is_single_projective_space(self) -> bool:
        normalized = self.normalized
        return normalized is not None and len(normalized) <= 1

    def text(self) -> str:
        if self.is_empty:
            return "Empty"
        normalized = self.normalized
        if not normalized:
            return "Point"
        rendered = " x ".join(f"P^{m}" for m in normalized)
        return rendered + (" (conjectural)" if self.is_conjectural else "")

    def to_dict(self) -> Dict[str, object]:
        return {
            'kind': self.kind,
            'normalized': None if self.is_empty else list(self.normalized),
            'text': self.text(),
            'conjectural': self.is_conjectural,
            'factors': [
                {'base': f.base.value, 'power': f.power,
                 'conjectural_projective_line': f.conjectural_projective_line}
                for f in self.factors
            ],
        }

    def __str__(self) -> str:
        return self.text()
