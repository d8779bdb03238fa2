import io

from docx import Document

from src.schemas import check_report_model, scenario_model
from src.services.catalog import catalog_get
from src.services.funcspec import parse_expr
from src.services.grid import make_grid_spec
from src.services.props import check_superadditive
from src.services.report_builder import build_docx_document, check_summary_line, render_markdown, report_docx
from src.services.theorems import screen_pair, verify_fixed_point
from tests.conftest import catalog_grid


def _fixed_point(name, step, count, exact=True):
    return scenario_model(verify_fixed_point(catalog_get(name).body, make_grid_spec(step, count, 1), exact=exact))


class TestMarkdown:
    def test_theorem_report(self):
        text = render_markdown(_fixed_point("power(2)", 1, 4))
        assert text.startswith("# Scenario fixed-point\n")
        assert "Verdict: **consistent**" in text
        assert "## Consequences" in text
        assert "| A = A^* | yes | 0 |" in text

    def test_failed_hypotheses_show_witnesses(self):
        text = render_markdown(_fixed_point("example1_A", 1, 40))
        assert "Verdict: **hypotheses-not-met**" in text
        assert "## Consequences" not in text
        assert "### Witness: " in text
        assert "```json" in text

    def test_screener_report(self):
        report = screen_pair(parse_expr("x1/(1+x1)", 1), parse_expr("x1^2+x1", 1), make_grid_spec("0.25", 16, 1))
        text = render_markdown(scenario_model(report))
        assert text.startswith("# Screener report\n")
        assert "Conclusion: **obstruction-found** (branch concave-f)" in text
        assert "## Branches" in text


class TestDocx:
    def test_markdown_subset(self):
        markdown = "\n".join(
            [
                "# Title",
                "",
                "| a | b |",
                "|---|---|",
                "| 1 | x\\|y |",
                "",
                "```json",
                '{"k": 1}',
                "```",
                "- item",
                "Plain **bold** tail",
            ]
        )
        document = Document(io.BytesIO(build_docx_document(markdown)))
        paragraphs = document.paragraphs
        assert paragraphs[0].text == "Title"
        assert paragraphs[0].style.name == "Heading 1"
        assert len(document.tables) == 1
        table = document.tables[0]
        assert len(table.rows) == 2
        assert table.cell(1, 1).text == "x|y"
        styles = [p.style.name for p in paragraphs]
        assert "Code" in styles
        assert "List Bullet" in styles
        last = paragraphs[-1]
        assert [run.bold for run in last.runs] == [False, True, False]

    def test_report_is_a_zip(self):
        data = report_docx(_fixed_point("power(2)", 1, 4))
        assert data[:2] == b"PK"
        headings = [p.text for p in Document(io.BytesIO(data)).paragraphs if p.style.name.startswith("Heading")]
        assert headings[0] == "Scenario fixed-point"


def test_check_summary_line():
    model = check_report_model(check_superadditive(catalog_grid("skew_quadratic", count=4)))
    line = check_summary_line(model)
    assert line.startswith("super: fails [")
    assert line.endswith("slack 2]")
