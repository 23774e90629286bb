from collections.abc import Generator
from typing import Any
import logging

from dify_plugin import Tool
from dify_plugin.config.logger_format import plugin_logger_handler
from dify_plugin.entities.tool import ToolInvokeMessage

from qsphere.config import tool_config
from qsphere.errors import QSphereError
from qsphere.operators import OPERATOR_NAMES, AntilinearOp, build_triple, named_operator
from qsphere.reports import sha256_hex, triplets_text

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)
logger.addHandler(plugin_logger_handler)


class OperatorExportTool(Tool):
    """Exports one operator of the truncated triple as 'row col re im' triplets."""

    def _invoke(self, tool_parameters: dict[str, Any]) -> Generator[ToolInvokeMessage]:
        name = str(tool_parameters.get("operator") or "D").strip()
        if name not in OPERATOR_NAMES:
            yield self.create_text_message(f"Unknown operator: {name}")
            yield self.create_json_message(
                {"error": "config_error", "detail": f"operator must be one of {', '.join(OPERATOR_NAMES)}"}
            )
            return

        try:
            config = tool_config(tool_parameters, self.runtime.credentials)
            config.preflight()
            triple = build_triple(config.ctx, config.truncation, config.dirac_params, config.effective_p)
            op = named_operator(triple, name)
        except QSphereError as e:
            logger.warning("operator-export rejected parameters: %s", e)
            yield self.create_text_message(f"Export failed: {e}")
            yield self.create_json_message({"error": e.code, "detail": str(e)})
            return

        text, count = triplets_text(op)
        payload = text.encode("utf-8")
        filename = f"{name}-q{config.q:g}-s{config.shells}.txt"

        yield self.create_blob_message(blob=payload, meta={"mime_type": "text/plain", "filename": filename})
        yield self.create_json_message(
            {
                "operator": name,
                "dim": op.dim,
                "nonzeros": count,
                "sha256": sha256_hex(payload),
                # J entries are the matrix M of psi -> M conj(psi)
                "antilinear": isinstance(op, AntilinearOp),
                "config": config.to_dict(),
            }
        )
