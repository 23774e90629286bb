from typing import Any

from dify_plugin import ToolProvider
from dify_plugin.errors.tool import ToolProviderCredentialValidationError

from qsphere.config import plugin_settings


class QSphereTripleProvider(ToolProvider):

    def _validate_credentials(self, credentials: dict[str, Any]) -> None:
        # both settings are optional; blank values fall back to the library defaults
        try:
            plugin_settings(credentials)
        except Exception as e:
            raise ToolProviderCredentialValidationError(str(e))
