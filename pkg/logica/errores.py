# logica/errores.py
"""Jerarquía de errores del proyecto.

Cada error lleva su ``codigo_salida`` para que la línea de comandos
traduzca la excepción en un código de salida sin tablas adicionales:
2 = entrada, 3 = numérico, 4 = compuerta de consistencia.
"""
from __future__ import annotations

from typing import Optional


class ErrorGeometria(Exception):
    codigo_salida: int = 3


# ---------------- Entrada (2) ----------------
class ErrorEntrada(ErrorGeometria):
    codigo_salida = 2


class ErrorSintaxis(ErrorEntrada):
    def __init__(self, mensaje: str, desplazamiento: int):
        super().__init__(f"{mensaje} (byte {desplazamiento})")
        self.desplazamiento = desplazamiento


class ErrorIdentificador(ErrorSintaxis):
    pass


class ErrorExponente(ErrorSintaxis):
    pass


class ErrorDimension(ErrorEntrada):
    pass


class ErrorTipoZeta(ErrorEntrada):
    pass


# ---------------- Numéricos (3) ----------------
class ErrorNumerico(ErrorGeometria):
    codigo_salida = 3

    def __init__(self, mensaje: str, ubicacion: Optional[str] = None):
        texto = mensaje if ubicacion is None else f"{mensaje} en {ubicacion}"
        super().__init__(texto)
        self.ubicacion = ubicacion


class ErrorDominio(ErrorNumerico):
    pass


# ---------------- Compuertas de consistencia (4) ----------------
class ErrorConsistencia(ErrorGeometria):
    codigo_salida = 4


class ErrorNoAutoadjunto(ErrorConsistencia):
    pass


class ErrorPolinomioMinimo(ErrorConsistencia):
    pass


class ErrorNoLagrangiano(ErrorConsistencia):
    pass


class ErrorTestigo(ErrorConsistencia):
    pass


class ErrorBend(ErrorConsistencia):
    pass


class ErrorDegenerado(ErrorConsistencia):
    pass
