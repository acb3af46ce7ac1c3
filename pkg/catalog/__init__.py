"""
Bundled algebra documents.
"""

from .catalog import Catalog

__all__ = ['Catalog']
