from pathlib import Path
from typing import Union

from kacss.errors import InstanceFormatError


def read_text_file_to_string(file_path: Union[str, Path]) -> str:
    "Attempts to read a text file and return its contents as a string."
    try:
        path = Path(file_path) if isinstance(file_path, str) else file_path
        return path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise InstanceFormatError(f"File not found: {file_path}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise InstanceFormatError(f"Error while reading file {file_path}: {str(e)}") from e


def write_text_file(file_path: Union[str, Path], content: str) -> None:
    """Writes `content` as UTF-8 with Unix newlines, creating parent directories as needed."""
    path = Path(file_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(content)
