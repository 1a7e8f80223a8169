from .rational import Rational, format_fraction, to_fraction

__all__ = ["Rational", "format_fraction", "to_fraction"]
