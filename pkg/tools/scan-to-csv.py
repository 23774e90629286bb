from collections.abc import Generator
from typing import Any
import logging

from dify_plugin import Tool
from dify_plugin.config.logger_format import plugin_logger_handler
from dify_plugin.entities.tool import ToolInvokeMessage

from qsphere.axioms import bound_scan, classical_limit_scan
from qsphere.config import parse_list, tool_config
from qsphere.errors import QSphereError
from qsphere.reports import SCAN_FIELDS, rows_to_csv, scan_rows

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
logger.addHandler(plugin_logger_handler)

SCANS = ("bound", "limit")


class ScanToCsvTool(Tool):
    """
    Boundedness scan (norms of [D, pi(x)] over a list of shells) or classical-limit scan
    (deviations from the q = 1 sphere over a list of q values) as a downloadable CSV.
    """

    def _invoke(self, tool_parameters: dict[str, Any]) -> Generator[ToolInvokeMessage]:
        kind = str(tool_parameters.get("scan") or "bound").strip().lower()
        filename = str(tool_parameters.get("filename") or "").strip()

        if kind not in SCANS:
            yield self.create_text_message(f"Unknown scan type: {kind}")
            yield self.create_json_message({"error": "config_error", "detail": f"scan must be one of {', '.join(SCANS)}"})
            return

        try:
            rows = self._run(kind, tool_parameters)
        except QSphereError as e:
            logger.warning("scan-to-csv rejected parameters: %s", e)
            yield self.create_text_message(f"Scan not run: {e}")
            yield self.create_json_message({"error": e.code, "detail": str(e)})
            return

        csv_content = rows_to_csv(rows, SCAN_FIELDS[kind])

        if not filename:
            filename = f"{kind}-scan"
        if not filename.lower().endswith(".csv"):
            filename += ".csv"

        yield self.create_blob_message(
            blob=csv_content.encode("utf-8"),
            meta={"mime_type": "text/csv", "filename": filename},
        )
        yield self.create_text_message(f"CSV file '{filename}' generated with {len(rows)} rows ({kind} scan).")

    def _run(self, kind: str, tool_parameters: dict[str, Any]) -> list[dict]:
        credentials = self.runtime.credentials
        if kind == "bound":
            shells_list = parse_list("shells", tool_parameters.get("shells") or "8,12,16", int)
            config = tool_config(tool_parameters, credentials, shells=max(shells_list))
            config.preflight()
            return scan_rows("bound", bound_scan(config.ctx, config.dirac_params, shells_list, config.margin))

        qs = parse_list("q", tool_parameters.get("q") or "0.9,0.99,0.999", float)
        configs = [tool_config(tool_parameters, credentials, q=q) for q in qs]
        for config in configs:
            config.preflight()
        base = configs[0]
        base.truncation.interior_mask()
        rows = classical_limit_scan(qs, base.truncation, base.dirac_params, tolerance=base.tolerance)
        return scan_rows("limit", rows)
