"""
Module documents: a prime, a dimension per vertex and a matrix per arrow.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from core.errors import MalformedDocument
from models.algebra import BoundQuiverAlgebra
from models.explicit_module import ExplicitModule
from serialization.algebra_serializer import parse_json, validation_message


class ModuleDocument(BaseModel):
    """Structural schema of a module document."""
    prime: int = Field(..., gt=1, description="Field characteristic")
    dims: Dict[str, int] = Field(..., description="Vertex to dimension")
    matrices: Dict[str, List[List[int]]] = Field(default_factory=dict,
                                                  description="Arrow to d(head) x d(tail) matrix, row-major")
    label: str = Field("", description="Optional display name")

    @field_validator('dims')
    @classmethod
    def validate_dims(cls, v: Dict[str, int]) -> Dict[str, int]:
        """Dimensions are nonnegative."""
        for vertex, dim in v.items():
            if dim < 0:
                raise ValueError(f"Dimension at vertex {vertex} is negative")
        return v


class ModuleSerializer:
    """Serializer for explicit modules over a fixed algebra."""

    def to_dict(self, module: ExplicitModule) -> Dict[str, Any]:
        return {
            'prime': module.prime,
            'dims': module.dims,
            'matrices': {a: module.matrix(a).tolist() for a in module.algebra.arrow_ids},
            'label': module.label,
        }

    def from_dict(self, algebra: BoundQuiverAlgebra, data: Any) -> ExplicitModule:
        """
        Build a module over the algebra.

        Raises:
            MalformedDocument: On missing or mistyped fields
            UnknownVertex: If dims name an undeclared vertex
            InvalidModule: On shape mismatches or nonvanishing relations
        """
        if not isinstance(data, dict):
            raise MalformedDocument("Module document must be a JSON object")
        try:
            document = ModuleDocument.model_validate(data)
        except ValidationError as e:
            raise MalformedDocument(validation_message(e))
        return ExplicitModule(algebra, document.dims, document.matrices, document.prime,
                              label=document.label)

    def to_json(self, module: ExplicitModule, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(module), indent=indent)

    def from_json(self, algebra: BoundQuiverAlgebra, json_str: str) -> ExplicitModule:
        return self.from_dict(algebra, parse_json(json_str))

    def save_to_file(self, module: ExplicitModule, filepath: str) -> None:
        Path(filepath).write_text(self.to_json(module) + "\n", encoding="utf-8")

    def load_from_file(self, algebra: BoundQuiverAlgebra, filepath: str) -> ExplicitModule:
        """
        Raises:
            FileNotFoundError: If file doesn't exist
        """
        path = Path(filepath)
        if not path.exists():
            raise FileNotFoundError(f"File not found: {filepath}")
        return self.from_json(algebra, path.read_text(encoding="utf-8"))
