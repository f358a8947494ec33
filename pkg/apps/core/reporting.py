"""
Renderizado determinista de reportes (JSON, CSV, tabla en terminal)
"""
import json

import pandas as pd
from rest_framework.renderers import JSONRenderer


class SortedJSONRenderer(JSONRenderer):
    """JSONRenderer de DRF con llaves ordenadas e indentación fija"""

    def render(self, data, accepted_media_type=None, renderer_context=None):
        if data is None:
            return b''
        payload = json.dumps(
            data,
            cls=self.encoder_class,
            ensure_ascii=self.ensure_ascii,
            allow_nan=not self.strict,
            indent=2,
            sort_keys=True,
        )
        return payload.encode()


def render_json(data) -> str:
    """Mismos datos → mismos bytes; la semilla fija el resto."""
    return SortedJSONRenderer().render(data).decode() + '\n'


def render_table(frame: pd.DataFrame, fmt: str) -> str:
    """
    Emite un DataFrame en el formato pedido

    Args:
        frame: tabla de resultados
        fmt: 'tty' | 'json' | 'csv'
    """
    if fmt == 'csv':
        return frame.to_csv(index=False)
    if fmt == 'json':
        records = frame.astype(object).where(pd.notna(frame), None)
        return render_json(records.to_dict(orient='records'))
    if frame.empty:
        return '(tabla vacía)\n'
    return frame.to_string(index=False) + '\n'
