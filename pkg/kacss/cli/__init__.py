from .dot import export_dot
from .main import build_parser, main

__all__ = ["build_parser", "export_dot", "main"]
