"""Model-file language: parsing, building and printing."""

from .diagnostics import Diagnostic, ModelError
from .model import Model, check_model, parse_model
from .parser import parse_document
from .printer import print_document

__all__ = ["Diagnostic", "Model", "ModelError", "check_model", "parse_document", "parse_model",
           "print_document"]
