"""
Catalog of bundled algebras.
Each entry is a JSON algebra document under catalog/data/.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

from core.errors import UnknownCatalogEntry
from models.algebra import BoundQuiverAlgebra
from serialization.algebra_serializer import AlgebraSerializer, parse_json

DATA_DIR = Path(__file__).parent / "data"


class Catalog:
    """Lookup of bundled algebra documents by name."""

    def __init__(self, data_dir: Optional[Path] = None, serializer: Optional[AlgebraSerializer] = None):
        self.data_dir = Path(data_dir) if data_dir is not None else DATA_DIR
        self.serializer = serializer or AlgebraSerializer()
        self._loaded: Dict[str, BoundQuiverAlgebra] = {}

    def names(self) -> List[str]:
        """Entry names in sorted order."""
        return sorted(path.stem for path in self.data_dir.glob("*.json"))

    def __contains__(self, name: str) -> bool:
        return (self.data_dir / f"{name}.json").is_file()

    def path(self, name: str) -> Path:
        """
        Raises:
            UnknownCatalogEntry: If no document has this name
        """
        if name not in self:
            raise UnknownCatalogEntry(name)
        return self.data_dir / f"{name}.json"

    def document(self, name: str) -> Dict[str, Any]:
        """The raw document of an entry."""
        return parse_json(self.path(name).read_text(encoding="utf-8"))

    def load(self, name: str) -> BoundQuiverAlgebra:
        """Parse an entry; parsed algebras are kept for the catalog's lifetime."""
        if name not in self._loaded:
            self._loaded[name] = self.serializer.from_dict(self.document(name))
        return self._loaded[name]

    def load_all(self) -> List[BoundQuiverAlgebra]:
        return [self.load(name) for name in self.names()]

    def summary(self, name: str) -> Dict[str, Any]:
        """Name, sizes and strongest class of an entry."""
        algebra = self.load(name)
        report = algebra.report
        if report.is_gentle:
            strongest = "gentle"
        elif report.is_string:
            strongest = "string"
        elif report.is_disjoint_chain:
            strongest = "disjoint-chain"
        elif report.is_quadratic_monomial:
            strongest = "quadratic monomial"
        else:
            strongest = "unsupported"
        return {
            'name': name,
            'vertices': len(algebra.vertices),
            'arrows': len(algebra.arrows),
            'relations': len(algebra.relations),
            'class': strongest,
        }
