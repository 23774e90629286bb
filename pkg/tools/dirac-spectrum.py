from collections.abc import Generator
from typing import Any
import logging

from dify_plugin import Tool
from dify_plugin.config.logger_format import plugin_logger_handler
from dify_plugin.entities.tool import ToolInvokeMessage

from qsphere.axioms import spectrum_table
from qsphere.config import tool_config
from qsphere.errors import QSphereError
from qsphere.reports import spectrum_rows

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
logger.addHandler(plugin_logger_handler)


class DiracSpectrumTool(Tool):
    def _invoke(self, tool_parameters: dict[str, Any]) -> Generator[ToolInvokeMessage]:
        try:
            config = tool_config(tool_parameters, self.runtime.credentials)
            config.preflight()
            rows = spectrum_rows(spectrum_table(config.ctx, config.truncation, config.dirac_params))
        except QSphereError as e:
            logger.warning("dirac-spectrum rejected parameters: %s", e)
            yield self.create_text_message(f"Spectrum not computed: {e}")
            yield self.create_json_message({"error": e.code, "detail": str(e)})
            return

        worst = max(row["deviation"] for row in rows)
        yield self.create_text_message(
            f"{len(rows)} eigenvalue groups for q={config.q:g}, shells={config.shells}; "
            f"largest deviation from +-|z|[l+1/2]: {worst:.3e}"
        )
        yield self.create_json_message({"config": config.to_dict(), "spectrum": rows})
