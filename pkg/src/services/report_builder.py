"""
Scenario reports as Markdown, and Markdown to DOCX with python-docx.

The DOCX converter understands the subset render_markdown emits:
headings, pipe tables, fenced code blocks, '-' list items and paragraphs.
"""
import io
import json
import logging
from typing import List, Union

from docx import Document
from docx.enum.style import WD_STYLE_TYPE
from docx.oxml import OxmlElement
from docx.oxml.ns import qn
from docx.shared import Pt
from docx.table import Table

from src.schemas import CheckReportModel, ScreenerReportModel, TheoremReportModel

logger = logging.getLogger(__name__)

ReportModel = Union[TheoremReportModel, ScreenerReportModel]


# ---------------------------------------------------------------------------
# Markdown
# ---------------------------------------------------------------------------

def _cell(value) -> str:
    if value is None:
        return ""
    text = value if isinstance(value, str) else json.dumps(value)
    return text.replace("|", "\\|")


def _hypothesis_table(hypotheses: dict) -> List[str]:
    lines = [
        "| Check | Property | Strict | Verdict | Tolerance | Margin |",
        "|---|---|---|---|---|---|",
    ]
    for name, report in hypotheses.items():
        lines.append(
            f"| {_cell(name)} | {report.property} | {'yes' if report.strict else 'no'} | "
            f"{report.verdict} | {_cell(report.tolerance)} | {_cell(report.margin)} |"
        )
    return lines


def _witness_blocks(hypotheses: dict) -> List[str]:
    lines: List[str] = []
    for name, report in hypotheses.items():
        if report.witness is None:
            continue
        lines.append(f"### Witness: {name}")
        lines.append("")
        lines.append(f"{report.witness.relation}")
        lines.append("")
        lines.append("```json")
        lines.append(report.witness.model_dump_json(indent=2))
        lines.append("```")
        lines.append("")
    return lines


def render_markdown(report: ReportModel) -> str:
    """
    Render a scenario report: heading, verdict, hypothesis table,
    consequence table, notes and failing witnesses.
    """
    lines: List[str] = []
    if isinstance(report, ScreenerReportModel):
        lines.append("# Screener report")
        lines.append("")
        lines.append(f"Subject: {report.subject}")
        lines.append("")
        lines.append(f"Conclusion: **{report.conclusion}**" + (f" (branch {report.branch})" if report.branch else ""))
        lines.append("")
        lines.append("## Hypotheses")
        lines.append("")
        lines.extend(_hypothesis_table(report.hypotheses))
        lines.append("")
        if report.branches:
            lines.append("## Branches")
            lines.append("")
            for branch, conditions in report.branches.items():
                held = ", ".join(f"{name}: {'yes' if ok else 'no'}" for name, ok in conditions.items())
                lines.append(f"- {branch}: {held}")
            lines.append("")
    else:
        lines.append(f"# Scenario {report.theorem}")
        lines.append("")
        lines.append(f"Subject: {report.subject}")
        lines.append("")
        lines.append(f"Verdict: **{report.verdict}**")
        lines.append("")
        if report.hypotheses:
            lines.append("## Hypotheses")
            lines.append("")
            lines.extend(_hypothesis_table(report.hypotheses))
            lines.append("")
        if report.consequences:
            lines.append("## Consequences")
            lines.append("")
            lines.append("| Consequence | Holds | Deviation | Bound | Detail |")
            lines.append("|---|---|---|---|---|")
            for check in report.consequences:
                lines.append(
                    f"| {_cell(check.name)} | {'yes' if check.holds else 'no'} | {_cell(check.deviation)} | "
                    f"{_cell(check.bound)} | {_cell(check.detail)} |"
                )
            lines.append("")
        if report.values:
            lines.append("## Values")
            lines.append("")
            lines.append("```json")
            lines.append(json.dumps(report.values, indent=2))
            lines.append("```")
            lines.append("")

    if report.notes:
        lines.append("## Notes")
        lines.append("")
        lines.extend(f"- {note}" for note in report.notes)
        lines.append("")
    lines.extend(_witness_blocks(report.hypotheses))
    return "\n".join(lines).rstrip() + "\n"


# ---------------------------------------------------------------------------
# DOCX
# ---------------------------------------------------------------------------

def build_docx_document(markdown_text: str) -> bytes:
    """
    Convert Markdown to a DOCX document.

    Args:
        markdown_text: Markdown produced by render_markdown.

    Returns:
        bytes: DOCX file content.
    """
    document = Document()
    ensure_code_style(document)
    lines = markdown_text.splitlines()
    index = 0

    while index < len(lines):
        line = lines[index]
        stripped = line.strip()

        if not stripped:
            index += 1
            continue

        if stripped.startswith("#"):
            level = min(len(stripped) - len(stripped.lstrip("#")), 5)
            document.add_heading(stripped.lstrip("#").strip() or line, level=level)
            index += 1
            continue

        if stripped.startswith("|") and stripped.endswith("|"):
            block: List[str] = []
            while index < len(lines) and lines[index].strip().startswith("|"):
                block.append(lines[index])
                index += 1
            add_table_from_markdown(document, block)
            continue

        if stripped.startswith("```"):
            code_lines: List[str] = []
            index += 1
            while index < len(lines) and not lines[index].strip().startswith("```"):
                code_lines.append(lines[index])
                index += 1
            add_code_block(document, "\n".join(code_lines).strip())
            index += 1
            continue

        if stripped.startswith("- "):
            document.add_paragraph(stripped[2:].strip(), style="List Bullet")
            index += 1
            continue

        add_paragraph_with_bold(document, stripped)
        index += 1

    buffer = io.BytesIO()
    document.save(buffer)
    buffer.seek(0)
    logger.debug(f"Built DOCX from {len(lines)} Markdown lines")
    return buffer.getvalue()


def add_paragraph_with_bold(document: Document, text: str) -> None:
    """Paragraph where **...** spans become bold runs."""
    paragraph = document.add_paragraph()
    for position, part in enumerate(text.split("**")):
        if part:
            paragraph.add_run(part).bold = position % 2 == 1


def _split_row(raw_line: str) -> List[str]:
    cells = []
    current = ""
    body = raw_line.strip().strip("|")
    i = 0
    while i < len(body):
        if body[i] == "\\" and i + 1 < len(body) and body[i + 1] == "|":
            current += "|"
            i += 2
            continue
        if body[i] == "|":
            cells.append(current.strip())
            current = ""
        else:
            current += body[i]
        i += 1
    cells.append(current.strip())
    return cells


def add_table_from_markdown(document: Document, table_lines: List[str]) -> None:
    """
    Add a bordered table built from Markdown pipe-table lines.

    Args:
        document: docx.Document instance.
        table_lines: Table lines including the header and separator rows.
    """
    rows: List[List[str]] = []
    for position, raw_line in enumerate(table_lines):
        cells = _split_row(raw_line)
        if position == 1 and all(set(cell) <= {"-", ":", " "} for cell in cells):
            continue
        rows.append(cells)
    if not rows:
        return

    columns = len(rows[0])
    table = document.add_table(rows=len(rows), cols=columns)
    try:
        table.style = "Table Grid"
    except (KeyError, ValueError):
        pass
    apply_table_borders(table)
    for row_index, values in enumerate(rows):
        for col_index in range(columns):
            table.rows[row_index].cells[col_index].text = values[col_index] if col_index < len(values) else ""


def ensure_code_style(document: Document) -> None:
    try:
        document.styles["Code"]
    except KeyError:
        style = document.styles.add_style("Code", WD_STYLE_TYPE.PARAGRAPH)
        style.font.name = "Courier New"
        style.font.size = Pt(9)
        style.paragraph_format.space_before = Pt(6)
        style.paragraph_format.space_after = Pt(6)
        style.paragraph_format.left_indent = Pt(12)
        shading = OxmlElement("w:shd")
        shading.set(qn("w:fill"), "F5F5F5")
        shading.set(qn("w:val"), "clear")
        style.element.get_or_add_pPr().append(shading)


def add_code_block(document: Document, code_text: str) -> None:
    """Monospaced shaded paragraph; one line break per source line."""
    paragraph = document.add_paragraph(style="Code")
    code_lines = code_text.splitlines() or [""]
    for position, code_line in enumerate(code_lines):
        run = paragraph.add_run(code_line)
        if position < len(code_lines) - 1:
            run.add_break()


def apply_table_borders(table: Table) -> None:
    """Force single-line borders so that every viewer draws the grid."""
    tbl = table._tbl
    tbl_props = tbl.tblPr
    if tbl_props is None:
        tbl_props = OxmlElement("w:tblPr")
        tbl.append(tbl_props)
    existing = tbl_props.find(qn("w:tblBorders"))
    if existing is not None:
        tbl_props.remove(existing)
    borders = OxmlElement("w:tblBorders")
    for border_name in ("top", "bottom", "left", "right", "insideH", "insideV"):
        element = OxmlElement(f"w:{border_name}")
        element.set(qn("w:val"), "single")
        element.set(qn("w:sz"), "8")
        element.set(qn("w:space"), "0")
        element.set(qn("w:color"), "000000")
        borders.append(element)
    tbl_props.append(borders)


def report_docx(report: ReportModel) -> bytes:
    return build_docx_document(render_markdown(report))


def check_summary_line(report: CheckReportModel) -> str:
    """One-line human summary of a check, used by the CLI."""
    line = f"{report.property}{' (strict)' if report.strict else ''}: {report.verdict}"
    if report.witness is not None:
        line += f" [{report.witness.relation}, slack {report.witness.slack}]"
    return line
