"""
Algebra serializer module.
Reads and writes bound quiver algebras as versioned JSON documents.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from core.errors import (DuplicateId, DuplicateRelation, MalformedDocument, NonComposableRelation, ParseError,
                         UnknownArrow, UnknownVertex)
from models.algebra import BoundQuiverAlgebra


class ArrowDocument(BaseModel):
    """One arrow: id, tail vertex, head vertex."""
    id: str = Field(..., min_length=1, description="Arrow id")
    tail: str = Field(..., min_length=1, description="Source vertex")
    head: str = Field(..., min_length=1, description="Target vertex")


class AlgebraDocument(BaseModel):
    """Structural schema of an algebra document; references are checked by the models."""
    version: Optional[str] = Field(None, description="Document format version")
    name: str = Field("", description="Display name")
    vertices: List[str] = Field(..., description="Vertex ids in declared order")
    arrows: List[ArrowDocument] = Field(default_factory=list, description="Arrows")
    relations: List[List[str]] = Field(default_factory=list,
                                       description="Generators as [first, second] in traversal order")

    @field_validator('relations')
    @classmethod
    def validate_relation_length(cls, v: List[List[str]]) -> List[List[str]]:
        """Every relation is a path of length two."""
        for relation in v:
            if len(relation) != 2:
                raise ValueError(f"Relation {relation} must list exactly two arrow ids")
        return v


def validation_message(error: ValidationError) -> str:
    """First pydantic error as 'field.path: message'."""
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get('loc', ()))
    return f"{location}: {first.get('msg', 'invalid value')}" if location else first.get('msg', 'invalid value')


def parse_json(json_str: str) -> Any:
    """json.loads with line/column diagnostics."""
    try:
        return json.loads(json_str)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"Invalid JSON: {e.msg}", line=e.lineno, column=e.colno)


def reference_path(document: AlgebraDocument, error: ParseError) -> Optional[str]:
    """JSON path of the value a reference error is about, if it can be found."""
    if isinstance(error, UnknownVertex):
        for i, arrow in enumerate(document.arrows):
            for end in ('tail', 'head'):
                if getattr(arrow, end) == error.vertex:
                    return f"arrows[{i}].{end}"
    elif isinstance(error, UnknownArrow):
        for i, relation in enumerate(document.relations):
            if error.arrow in relation:
                return f"relations[{i}][{relation.index(error.arrow)}]"
    elif isinstance(error, DuplicateId):
        ids = document.vertices if error.kind == "vertex" else [a.id for a in document.arrows]
        section = "vertices" if error.kind == "vertex" else "arrows"
        repeats = [i for i, x in enumerate(ids) if x == error.identifier]
        if len(repeats) > 1:
            return f"{section}[{repeats[1]}]" + ("" if error.kind == "vertex" else ".id")
    elif isinstance(error, (NonComposableRelation, DuplicateRelation)):
        matches = [i for i, r in enumerate(document.relations) if tuple(r) == error.pair]
        if matches:
            return f"relations[{matches[-1]}]"
    return None


class AlgebraSerializer:
    """Serializer for bound quiver algebras."""

    CURRENT_VERSION = "1.0"
    SUPPORTED_VERSIONS = {"1.0"}

    def to_dict(self, algebra: BoundQuiverAlgebra) -> Dict[str, Any]:
        """
        Convert an algebra to its canonical document.

        Vertices and arrows keep their declared order; relations come in
        canonical (sorted) order.
        """
        return {
            'version': self.CURRENT_VERSION,
            'name': algebra.name,
            'vertices': list(algebra.vertices),
            'arrows': [{'id': a.id, 'tail': a.tail, 'head': a.head} for a in algebra.arrows],
            'relations': [[first, second] for first, second in algebra.relations],
        }

    def from_dict(self, data: Any) -> BoundQuiverAlgebra:
        """
        Create an algebra from a document.

        Raises:
            MalformedDocument: Unsupported version or missing/mistyped fields
            UnknownVertex, UnknownArrow, NonComposableRelation, DuplicateId,
            DuplicateRelation: On bad references, with the JSON path of the
                offending value in the message and in `path`
        """
        if not isinstance(data, dict):
            raise MalformedDocument("Algebra document must be a JSON object")
        try:
            document = AlgebraDocument.model_validate(data)
        except ValidationError as e:
            raise MalformedDocument(validation_message(e))

        version = document.version or self.CURRENT_VERSION
        if version not in self.SUPPORTED_VERSIONS:
            raise MalformedDocument(f"Unsupported version: {version}")

        try:
            return BoundQuiverAlgebra.from_lists(
                document.vertices,
                [(a.id, a.tail, a.head) for a in document.arrows],
                [(r[0], r[1]) for r in document.relations],
                name=document.name,
            )
        except ParseError as e:
            path = reference_path(document, e)
            raise e.at(path) if path else e

    def to_json(self, algebra: BoundQuiverAlgebra, indent: Optional[int] = 2) -> str:
        """Canonical printer."""
        return json.dumps(self.to_dict(algebra), indent=indent)

    def from_json(self, json_str: str) -> BoundQuiverAlgebra:
        """
        Parse an algebra document.

        Raises:
            MalformedDocument: With line and column when the JSON is not well-formed
        """
        return self.from_dict(parse_json(json_str))

    def canonical_hash(self, algebra: BoundQuiverAlgebra) -> str:
        """SHA-256 of the compact canonical document."""
        compact = json.dumps(self.to_dict(algebra), separators=(",", ":"), sort_keys=True)
        return hashlib.sha256(compact.encode("utf-8")).hexdigest()

    def save_to_file(self, algebra: BoundQuiverAlgebra, filepath: str) -> None:
        """Write the canonical document to a file."""
        Path(filepath).write_text(self.to_json(algebra) + "\n", encoding="utf-8")

    def load_from_file(self, filepath: str) -> BoundQuiverAlgebra:
        """
        Load an algebra document from a file.

        Raises:
            FileNotFoundError: If file doesn't exist
            MalformedDocument: If file contains invalid data
        """
        path = Path(filepath)
        if not path.exists():
            raise FileNotFoundError(f"File not found: {filepath}")
        return self.from_json(path.read_text(encoding="utf-8"))
