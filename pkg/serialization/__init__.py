"""
Serialization module for algebras, modules and reports.
Provides the JSON document formats read and written by the CLI.
"""

from .algebra_serializer import AlgebraDocument, AlgebraSerializer
from .module_serializer import ModuleDocument, ModuleSerializer
from .report_serializer import AnalysisReport, ReportSerializer

__all__ = ['AlgebraDocument', 'AlgebraSerializer', 'ModuleDocument', 'ModuleSerializer',
           'AnalysisReport', 'ReportSerializer']
