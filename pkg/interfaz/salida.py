# interfaz/salida.py
"""Escritores de resultados: JSON (reales con repr, que recupera el mismo double) y CSV con 17 cifras."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import sys
from typing import Any, List, Optional, Sequence

import numpy as np

from logica.errores import ErrorNumerico

log = logging.getLogger(__name__)


def normalizar(valor: Any) -> Any:
    """Convierte tipos de numpy, tuplas y complejos en tipos JSON."""
    if isinstance(valor, dict):
        return {str(k): normalizar(v) for k, v in valor.items()}
    if isinstance(valor, (list, tuple)):
        return [normalizar(v) for v in valor]
    if isinstance(valor, np.ndarray):
        return normalizar(valor.tolist())
    if isinstance(valor, (bool, np.bool_)):
        return bool(valor)
    if isinstance(valor, (int, np.integer)):
        return int(valor)
    if isinstance(valor, (float, np.floating)):
        return float(valor)
    if isinstance(valor, complex):
        return [valor.real, valor.imag]
    return valor


def comprobar_finitos(doc: Any, ruta: str = "$") -> None:
    if isinstance(doc, dict):
        for k, v in doc.items():
            comprobar_finitos(v, f"{ruta}.{k}")
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            comprobar_finitos(v, f"{ruta}[{i}]")
    elif isinstance(doc, float) and not math.isfinite(doc):
        raise ErrorNumerico(f"valor no finito {doc!r} en la salida", ruta)


def numero(x: float) -> str:
    return format(x, ".17g")


def a_json(doc: Any) -> str:
    """Documento JSON determinista; NaN o infinito en cualquier punto => ErrorNumerico con su ruta."""
    doc = normalizar(doc)
    comprobar_finitos(doc)
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def a_csv(encabezado: Sequence[str], filas: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    escritor = csv.writer(buffer, lineterminator="\n")
    escritor.writerow(encabezado)
    for i, fila in enumerate(filas):
        celdas: List[str] = []
        for j, v in enumerate(fila):
            if isinstance(v, (float, np.floating)):
                if not math.isfinite(v):
                    raise ErrorNumerico("valor no finito en la salida CSV", f"fila {i}, columna {encabezado[j]}")
                celdas.append(numero(float(v)))
            else:
                celdas.append("" if v is None else str(v))
        escritor.writerow(celdas)
    return buffer.getvalue()


def emitir(texto: str, ruta: Optional[str] = None) -> None:
    if ruta is None or ruta == "-":
        sys.stdout.write(texto)
        return
    with open(ruta, "w", encoding="utf-8", newline="") as fh:
        fh.write(texto)
    log.info("salida escrita en %s", ruta)
