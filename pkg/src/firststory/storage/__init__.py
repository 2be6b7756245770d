"""Stream and verdict file storage."""

from firststory.storage.stream_files import read_stream, read_verdicts, write_stream, write_verdicts

__all__ = ["read_stream", "read_verdicts", "write_stream", "write_verdicts"]
