from .file_utils import read_text_file_to_string, write_text_file

__all__ = ["read_text_file_to_string", "write_text_file"]
