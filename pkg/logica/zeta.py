# logica/zeta.py
"""Números ζ-complejos a + ζb con ζ² ∈ {-1, 0, +1} y los residuos ζ-Laplace / ζ-Cauchy-Riemann.

Convención de Cauchy-Riemann: u_x = -ζ² v_y, u_y = ζ² v_x. Para ζ² = +1 la
convención habitual de los números dobles (u_x = v_y) se obtiene cambiando v por -v.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

from scipy.special import comb

from logica.errores import ErrorDimension, ErrorTipoZeta
from logica.expresion import Expresion, evaluar_jet

log = logging.getLogger(__name__)


class TipoZeta(Enum):
    MENOS = -1   # ℂ₋, números complejos
    CERO = 0     # ℂ₀, números duales
    MAS = 1      # ℂ₊, números dobles

    @property
    def zeta2(self) -> int:
        return self.value

    @property
    def nombre(self) -> str:
        """Nombre externo (CLI y JSON)."""
        return {TipoZeta.MENOS: "minus", TipoZeta.CERO: "zero", TipoZeta.MAS: "plus"}[self]

    @property
    def algebra(self) -> str:
        return {TipoZeta.MENOS: "C-", TipoZeta.CERO: "C0", TipoZeta.MAS: "C+"}[self]

    @classmethod
    def desde_texto(cls, texto: str) -> "TipoZeta":
        clave = (texto or "").strip().lower()
        for tipo in cls:
            if clave in (tipo.nombre, tipo.name.lower()):
                return tipo
        raise ErrorTipoZeta(f"tipo ζ desconocido {texto!r} (minus|zero|plus)")


@dataclass(frozen=True)
class NumeroZeta:
    re: float
    im: float
    tipo: TipoZeta

    def _comprobar(self, otro: "NumeroZeta") -> None:
        if otro.tipo is not self.tipo:
            raise ErrorTipoZeta(f"operación entre tipos distintos: {self.tipo.nombre} y {otro.tipo.nombre}")

    def __add__(self, otro: "NumeroZeta") -> "NumeroZeta":
        self._comprobar(otro)
        return NumeroZeta(self.re + otro.re, self.im + otro.im, self.tipo)

    def __sub__(self, otro: "NumeroZeta") -> "NumeroZeta":
        self._comprobar(otro)
        return NumeroZeta(self.re - otro.re, self.im - otro.im, self.tipo)

    def __mul__(self, otro: "NumeroZeta") -> "NumeroZeta":
        return multiplicar(self, otro)

    def __pow__(self, k: int) -> "NumeroZeta":
        return potencia(self, k)

    @classmethod
    def uno(cls, tipo: TipoZeta) -> "NumeroZeta":
        return cls(1.0, 0.0, tipo)

    def como_tupla(self) -> Tuple[float, float]:
        return (self.re, self.im)


def multiplicar(a: NumeroZeta, b: NumeroZeta) -> NumeroZeta:
    a._comprobar(b)
    z2 = a.tipo.zeta2
    return NumeroZeta(a.re * b.re + z2 * a.im * b.im, a.re * b.im + a.im * b.re, a.tipo)


def potencia(z: NumeroZeta, k: int) -> NumeroZeta:
    if k < 0:
        raise ErrorDimension(f"exponente negativo {k}")
    resultado = NumeroZeta.uno(z.tipo)
    for _ in range(k):
        resultado = multiplicar(resultado, z)
    return resultado


def factorial_fraccionario(s: int, l: int) -> float:
    """(s + 1/l)! := (1 + 1/l)(2 + 1/l)...(s + 1/l); vale 1 para s = 0."""
    if s < 0 or l < 2:
        raise ErrorDimension(f"factorial fraccionario fuera de rango (s={s}, l={l})")
    return math.prod(j + 1.0 / l for j in range(1, s + 1))


def partes_potencia(k: int, tipo: TipoZeta) -> Tuple[List[float], List[float]]:
    """Coeficientes de Re (x+ζy)^k e Im (x+ζy)^k; el índice r corresponde a x^r y^(k-r)."""
    re = [0.0] * (k + 1)
    im = [0.0] * (k + 1)
    z2 = tipo.zeta2
    for j in range(k + 1):
        c = float(comb(k, j, exact=True))
        if j % 2 == 0:
            re[k - j] = c * z2 ** (j // 2)
        else:
            im[k - j] = c * z2 ** (j // 2)
    return re, im


# ---------------- Residuos ----------------
def _punto_plano(punto: Sequence[float]) -> Tuple[float, float]:
    if len(punto) != 2:
        raise ErrorDimension("los residuos ζ se evalúan en puntos (x1, x2)")
    return float(punto[0]), float(punto[1])


def residuo_laplace_zeta(f: Expresion, punto: Sequence[float], tipo: TipoZeta) -> float:
    """f_xx - ζ² f_yy en el punto."""
    jet = evaluar_jet(f, _punto_plano(punto), 2)
    return jet.derivada((2, 0)) - tipo.zeta2 * jet.derivada((0, 2))


def residuo_cauchy_riemann(u: Expresion, v: Expresion, punto: Sequence[float],
                           tipo: TipoZeta) -> Tuple[float, float]:
    """(u_x + ζ² v_y, u_y - ζ² v_x); ambos nulos si u + ζv es ζ-holomorfa."""
    punto = _punto_plano(punto)
    ju = evaluar_jet(u, punto, 1)
    jv = evaluar_jet(v, punto, 1)
    z2 = tipo.zeta2
    return (ju.derivada((1, 0)) + z2 * jv.derivada((0, 1)),
            ju.derivada((0, 1)) - z2 * jv.derivada((1, 0)))
