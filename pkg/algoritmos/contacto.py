# algoritmos/contacto.py
"""Estructura de contacto en la carta de Darboux (x1, x2, u, p1, p2), ω = du - p1 dx1 - p2 dx2.

Los campos vectoriales se manejan como listas de cinco jets en el orden de
coordenadas (∂x1, ∂x2, ∂u, ∂p1, ∂p2); los conmutadores se calculan con
aritmética de jets.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Protocol, Sequence, Tuple

import numpy as np

from logica.configuracion import TOLERANCIAS
from logica.errores import ErrorDimension, ErrorNumerico
from logica.expresion import Expresion, evaluar, evaluar_jet
from logica.jet import Jet

log = logging.getLogger(__name__)

VARIABLES: Tuple[str, ...] = ("x1", "x2", "u", "p1", "p2")
X1, X2, U, P1, P2 = range(5)


# ---------------- Tipos ----------------
@dataclass(frozen=True)
class PuntoDarboux:
    x1: float
    x2: float
    u: float
    p1: float
    p2: float

    def __post_init__(self):
        if not all(np.isfinite(v) for v in self.como_tupla()):
            raise ErrorNumerico("punto de Darboux con coordenadas no finitas", str(self.como_tupla()))

    def como_tupla(self) -> Tuple[float, float, float, float, float]:
        return (self.x1, self.x2, self.u, self.p1, self.p2)

    @classmethod
    def desde(cls, valores: Sequence[float]) -> "PuntoDarboux":
        if len(valores) != 5:
            raise ErrorDimension(f"un punto de Darboux tiene 5 coordenadas, llegaron {len(valores)}")
        return cls(*(float(v) for v in valores))


@dataclass(frozen=True)
class ValorCampo:
    """Componentes en (∂x1, ∂x2, ∂u, ∂p1, ∂p2) en un punto."""
    componentes: Tuple[float, float, float, float, float]
    punto: PuntoDarboux

    def __post_init__(self):
        if len(self.componentes) != 5:
            raise ErrorDimension("un campo en la carta tiene 5 componentes")
        if not all(np.isfinite(c) for c in self.componentes):
            raise ErrorNumerico("campo con componentes no finitas", str(self.punto.como_tupla()))

    def como_array(self) -> np.ndarray:
        return np.array(self.componentes, dtype=float)

    def __sub__(self, otro: "ValorCampo") -> "ValorCampo":
        return ValorCampo(tuple(np.subtract(self.componentes, otro.componentes)), self.punto)


@dataclass(frozen=True)
class CartaContacto:
    n: int = 2
    variables: Tuple[str, ...] = VARIABLES

    def __post_init__(self):
        if self.n != 2:
            raise ErrorDimension("solo se admite la carta de Darboux con n = 2")

    def marco(self, pt: PuntoDarboux) -> np.ndarray:
        """Columnas e1 = ∂x1 + p1∂u, e2 = ∂x2 + p2∂u, e3 = ∂p1, e4 = ∂p2."""
        E = np.zeros((5, 4))
        E[X1, 0] = 1.0
        E[U, 0] = pt.p1
        E[X2, 1] = 1.0
        E[U, 1] = pt.p2
        E[P1, 2] = 1.0
        E[P2, 3] = 1.0
        return E

    def desde_marco(self, pt: PuntoDarboux, coordenadas: Sequence[float]) -> ValorCampo:
        return ValorCampo(tuple(self.marco(pt) @ np.asarray(coordenadas, dtype=float)), pt)

    def campos_marco(self) -> Tuple["CampoMarco", ...]:
        """Los campos de ``marco`` como objetos con ``jets(base, orden)``."""
        return tuple(CampoMarco(i) for i in range(2 * self.n))

    def base(self, pt: PuntoDarboux) -> Tuple[float, ...]:
        """Coordenadas de ``pt`` en el orden de ``variables``."""
        return tuple(float(getattr(pt, v)) for v in self.variables)

    def comprobar(self, e: Expresion) -> Expresion:
        if tuple(e.variables) != self.variables:
            raise ErrorDimension(f"la expresión usa las variables {e.variables}, la carta {self.variables}")
        return e


# ---------------- Campos como jets ----------------
class CampoVectorial(Protocol):
    def jets(self, base: Sequence[float], orden: int) -> List[Jet]:
        ...


def _coordenada(base: Sequence[float], orden: int, i: int) -> Jet:
    return Jet.coordenada(base, orden, i)


@dataclass(frozen=True)
class CampoExpresiones:
    componentes: Tuple[Expresion, ...]

    def __post_init__(self):
        if len(self.componentes) != 5:
            raise ErrorDimension("un campo necesita 5 expresiones")

    def jets(self, base, orden):
        return [evaluar_jet(e, base, orden) for e in self.componentes]


@dataclass(frozen=True)
class CampoContacto:
    """X_ν generado por la función ν."""
    nu: Expresion

    def jets(self, base, orden):
        return campo_contacto_jets(evaluar_jet(self.nu, base, orden + 1))


@dataclass(frozen=True)
class CampoMarco:
    indice: int   # 0..3 -> e1..e4

    def jets(self, base, orden):
        cero = Jet.constante(base, orden, 0.0)
        uno = Jet.constante(base, orden, 1.0)
        salida = [cero] * 5
        if self.indice == 0:
            salida[X1], salida[U] = uno, _coordenada(base, orden, P1)
        elif self.indice == 1:
            salida[X2], salida[U] = uno, _coordenada(base, orden, P2)
        elif self.indice == 2:
            salida[P1] = uno
        elif self.indice == 3:
            salida[P2] = uno
        else:
            raise ErrorDimension(f"el marco tiene 4 campos, índice {self.indice}")
        return salida


MARCO = CartaContacto().campos_marco()


def campo_contacto_jets(nu: Jet) -> List[Jet]:
    """X_ν = (-ν_p1, -ν_p2, ν - p1ν_p1 - p2ν_p2, ν_x1 + p1ν_u, ν_x2 + p2ν_u); orden K-1."""
    d = [nu.derivada_parcial(i) for i in range(5)]
    orden = nu.orden - 1
    v = nu.truncar(orden)
    p1 = _coordenada(nu.base, orden, P1)
    p2 = _coordenada(nu.base, orden, P2)
    return [-d[P1], -d[P2], v - p1 * d[P1] - p2 * d[P2], d[X1] + p1 * d[U], d[X2] + p2 * d[U]]


def corchete_campos(X: Sequence[Jet], Y: Sequence[Jet]) -> List[Jet]:
    """[X, Y]^k = X(Y^k) - Y(X^k); baja el orden en uno."""
    n = len(X)
    return [sum(X[j] * Y[k].derivada_parcial(j) - Y[j] * X[k].derivada_parcial(j) for j in range(n))
            for k in range(n)]


def forma_contacto_jets(Z: Sequence[Jet]) -> Jet:
    orden = min(z.orden for z in Z)
    base = Z[0].base
    return Z[U] - _coordenada(base, orden, P1) * Z[X1] - _coordenada(base, orden, P2) * Z[X2]


def _valor(Z: Sequence[Jet], pt: PuntoDarboux) -> ValorCampo:
    return ValorCampo(tuple(z.valor for z in Z), pt)


# ---------------- Operaciones ----------------
def valor_forma_contacto(pt: PuntoDarboux, Z: ValorCampo) -> float:
    c = Z.componentes
    return c[U] - pt.p1 * c[X1] - pt.p2 * c[X2]


def gram_curvatura(carta: CartaContacto, pt: PuntoDarboux) -> np.ndarray:
    """R(e_i, e_j) = -dω(e_i, e_j) = ω([e_i, e_j]) sobre el marco de 𝒟."""
    base = carta.base(pt)
    jets = [campo.jets(base, 1) for campo in carta.campos_marco()]
    m = len(jets)
    G = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            G[i, j] = forma_contacto_jets(corchete_campos(jets[i], jets[j])).valor
    return G


def campo_contacto(carta: CartaContacto, nu: Expresion, pt: PuntoDarboux) -> ValorCampo:
    return _valor(CampoContacto(carta.comprobar(nu)).jets(carta.base(pt), 0), pt)


def campo_como_objeto(Z) -> CampoVectorial:
    if isinstance(Z, (list, tuple)):
        return CampoExpresiones(tuple(Z))
    return Z


def defecto_campo_contacto(carta: CartaContacto, Z, puntos: Iterable[PuntoDarboux]) -> float:
    """Máximo de |ω([e_i, Z])| sobre el marco y los puntos."""
    campo = campo_como_objeto(Z)
    if isinstance(campo, CampoExpresiones):
        for e in campo.componentes:
            carta.comprobar(e)
    elif isinstance(campo, CampoContacto):
        carta.comprobar(campo.nu)
    marco = carta.campos_marco()
    peor = 0.0
    for pt in puntos:
        base = carta.base(pt)
        jz = campo.jets(base, 1)
        for e in marco:
            valor = forma_contacto_jets(corchete_campos(e.jets(base, 1), jz)).valor
            peor = max(peor, abs(valor))
    return peor


def es_campo_contacto(carta: CartaContacto, Z, puntos: Iterable[PuntoDarboux],
                      tol: float = TOLERANCIAS.consistencia) -> bool:
    """``Z``: cinco expresiones o cualquier objeto con ``jets(base, orden)``."""
    defecto = defecto_campo_contacto(carta, Z, puntos)
    log.debug("defecto de campo de contacto %.3e (tol %.1e)", defecto, tol)
    return defecto <= tol


def corchete_lagrange_jet(mu: Jet, nu: Jet) -> Jet:
    """{μ, ν} = ω([X_μ, X_ν]) como jet de orden K - 2."""
    return forma_contacto_jets(corchete_campos(campo_contacto_jets(mu), campo_contacto_jets(nu)))


def corchete_lagrange(carta: CartaContacto, mu: Expresion, nu: Expresion, pt: PuntoDarboux) -> float:
    base = carta.base(pt)
    return corchete_lagrange_jet(evaluar_jet(carta.comprobar(mu), base, 2),
                                 evaluar_jet(carta.comprobar(nu), base, 2)).valor


def valor_generatriz(nu: Expresion, pt: PuntoDarboux) -> float:
    return evaluar(nu, pt.como_tupla())
