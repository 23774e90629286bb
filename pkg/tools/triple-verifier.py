from collections.abc import Generator
from typing import Any
import logging

from dify_plugin import Tool
from dify_plugin.config.logger_format import plugin_logger_handler
from dify_plugin.entities.tool import ToolInvokeMessage

from qsphere.axioms import run_suite
from qsphere.config import tool_config
from qsphere.errors import QSphereError
from qsphere.reports import suite_document

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
logger.addHandler(plugin_logger_handler)


class TripleVerifierTool(Tool):
    """
    Runs every named check of the spectral triple at one (q, shells, z, p) point and
    returns the same JSON document as ``qsphere verify``.
    """

    def _invoke(self, tool_parameters: dict[str, Any]) -> Generator[ToolInvokeMessage]:
        try:
            config = tool_config(tool_parameters, self.runtime.credentials)
            config.preflight()
            trunc = config.truncation
            trunc.interior_mask()
            reports = run_suite(
                config.ctx,
                trunc,
                config.dirac_params,
                config.effective_p,
                tolerance=config.tolerance,
                assert_j_equivariance=config.assert_j_equivariance,
            )
        except QSphereError as e:
            logger.warning("triple-verifier rejected parameters: %s", e)
            yield self.create_text_message(f"Verification not run: {e}")
            yield self.create_json_message({"error": e.code, "detail": str(e)})
            return

        document = suite_document(config, reports)
        summary = document["summary"]
        logger.info("triple-verifier q=%s shells=%d: %d/%d passed",
                    config.q, config.shells, summary["passed"], summary["total"])

        text = (
            f"{summary['passed']}/{summary['total']} checks passed "
            f"(q={config.q:g}, shells={config.shells}, p={config.effective_p:g}, z={config.z:g})"
        )
        if summary["failed"]:
            text += "\nFailed: " + ", ".join(summary["failed"])
        yield self.create_text_message(text)
        yield self.create_json_message(document)
