"""
Filename sanitization for report files.

Report names are derived from command echoes (subcommand plus key arguments),
which may contain commas, spaces and other characters that do not belong in a
file name.
"""

import re


def sanitize_report_name(name: str, max_length: int = 80) -> str:
    """
    Reduce a free-form report name to a safe file stem.

    Examples:
        >>> sanitize_report_name("stability d=5 n=2,2,2")
        'stability_d-5_n-2-2-2'

        >>> sanitize_report_name("")
        'report'
    """
    if not name:
        return "report"

    safe = name.replace("=", "-").replace(",", "-")
    # Only allow alphanumeric, hyphens, and underscores
    safe = re.sub(r'[^a-zA-Z0-9\-_]', '_', safe)
    safe = re.sub(r'_+', '_', safe)
    safe = re.sub(r'-+', '-', safe)
    safe = safe.strip('_-')

    if not safe:
        safe = "report"
    if len(safe) > max_length:
        safe = safe[:max_length].strip('_-')
    return safe


def create_report_filename(name: str, extension: str) -> str:
    """File name for a report in the given format"""
    safe_extension = re.sub(r'[^a-zA-Z0-9]', '', extension or '') or 'json'
    return f"{sanitize_report_name(name)}.{safe_extension.lower()}"
