"""
Utility functions for output filename generation.
"""
from pathlib import Path


def safe_stem(text: str, fallback: str = "function") -> str:
    """
    Reduce arbitrary text (expression, catalog call, file name) to a safe file stem.

    Args:
        text: Source text.
        fallback: Stem used when nothing survives.

    Returns:
        Alphanumerics, '-' and '_' only; other runs collapse to one '_'.
    """
    stem = Path(text).stem if text.endswith(".json") else text
    out = []
    for ch in stem:
        if ch.isalnum() or ch in ("-", "_"):
            out.append(ch)
        elif out and out[-1] != "_":
            out.append("_")
    return "".join(out).strip("_")[:64] or fallback


def level_csv_name(label: str, kind: str, level: int) -> str:
    return f"{safe_stem(label)}_{kind}_level{level}.csv"


def result_json_name(label: str, kind: str) -> str:
    return f"{safe_stem(label)}_{kind}.json"


def check_json_name(label: str, prop: str) -> str:
    return f"{safe_stem(label)}_check_{prop}.json"


def scenario_json_name(scenario: str) -> str:
    return f"verify_{safe_stem(scenario)}.json"


def build_report_filename(scenario: str) -> str:
    """Name of the DOCX attachment for a scenario report."""
    return f"verify_{safe_stem(scenario)}_report.docx"
