from .formatting import format_percentage, format_table, format_value, frame_to_text


__all__ = ["format_percentage", "format_table", "format_value", "frame_to_text"]
