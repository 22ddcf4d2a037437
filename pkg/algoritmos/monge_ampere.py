# algoritmos/monge_ampere.py
"""Ecuaciones de Monge-Ampère clásicas

    N(u_xx u_yy - u_xy²) + A u_xx + B u_xy + C u_yy + D = 0

sobre la carta de Darboux: discriminante, tipo, operador 𝔄 sobre 𝒟, residuo E
de una solución candidata y defecto de 𝔄-invariancia del levantamiento L_f.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algoritmos.contacto import VARIABLES, CartaContacto, PuntoDarboux, ValorCampo, gram_curvatura
from algoritmos.simplectico import (EspacioSimplectico, ResultadoClasificacion,
                                    clasificar_dim4, producto_jordan)
from logica.configuracion import TOLERANCIAS, Tolerancias
from logica.errores import ErrorConsistencia, ErrorDegenerado, ErrorDimension, ErrorGeometria
from logica.expresion import Expresion, analizar, evaluar, evaluar_jet
from logica.zeta import TipoZeta

log = logging.getLogger(__name__)

VARIABLES_SOLUCION = ("x1", "x2")
CARTA = CartaContacto()

Coeficientes = Tuple[float, float, float, float, float]


# ---------------- Tipos ----------------
class TipoEcuacion(Enum):
    ELIPTICA = "elliptic"
    PARABOLICA = "parabolic"
    HIPERBOLICA = "hyperbolic"

    @property
    def tipo_zeta(self) -> TipoZeta:
        return {TipoEcuacion.ELIPTICA: TipoZeta.MENOS,
                TipoEcuacion.PARABOLICA: TipoZeta.CERO,
                TipoEcuacion.HIPERBOLICA: TipoZeta.MAS}[self]


@dataclass(frozen=True)
class EcuacionMA:
    N: Expresion
    A: Expresion
    B: Expresion
    C: Expresion
    D: Expresion

    def __post_init__(self):
        for nombre in "NABCD":
            if getattr(self, nombre).variables != VARIABLES:
                raise ErrorDimension(f"el coeficiente {nombre} no está escrito en {VARIABLES}")

    @classmethod
    def desde_textos(cls, N: str = "0", A: str = "0", B: str = "0", C: str = "0", D: str = "0") -> "EcuacionMA":
        return cls(*(analizar(t, VARIABLES) for t in (N, A, B, C, D)))

    @classmethod
    def constante(cls, N: float, A: float, B: float, C: float, D: float) -> "EcuacionMA":
        return cls.desde_textos(*(repr(float(v)) for v in (N, A, B, C, D)))

    def coeficientes(self, pt: PuntoDarboux) -> Coeficientes:
        punto = pt.como_tupla()
        return tuple(evaluar(e, punto) for e in (self.N, self.A, self.B, self.C, self.D))


@dataclass(frozen=True)
class SolucionCandidata:
    f: Expresion

    def __post_init__(self):
        if self.f.variables != VARIABLES_SOLUCION:
            raise ErrorDimension(f"la solución candidata debe escribirse en {VARIABLES_SOLUCION}")

    @classmethod
    def desde_texto(cls, texto: str) -> "SolucionCandidata":
        return cls(analizar(texto, VARIABLES_SOLUCION))

    def hessiana(self, base: Sequence[float]) -> Tuple[float, float, float]:
        jet = evaluar_jet(self.f, base, 2)
        return jet.derivada((2, 0)), jet.derivada((1, 1)), jet.derivada((0, 2))


# ---------------- Álgebra del operador ----------------
def matriz_A(N: float, A: float, B: float, C: float, D: float) -> np.ndarray:
    return np.array([
        [B, -2 * A, 0.0, -2 * N],
        [2 * C, -B, 2 * N, 0.0],
        [0.0, 2 * D, B, 2 * C],
        [-2 * D, 0.0, -2 * A, -B],
    ], dtype=float)


def discriminante_coeficientes(N: float, A: float, B: float, C: float, D: float) -> float:
    return B * B - 4 * A * C + 4 * N * D


def tipo_por_discriminante(delta: float, banda: float) -> TipoEcuacion:
    if delta < -banda:
        return TipoEcuacion.ELIPTICA
    if delta > banda:
        return TipoEcuacion.HIPERBOLICA
    return TipoEcuacion.PARABOLICA


# ---------------- Operaciones ----------------
def levantar_punto(f: SolucionCandidata, base: Sequence[float]) -> PuntoDarboux:
    """(x1, x2, f, f_x1, f_x2) en la base."""
    jet = evaluar_jet(f.f, base, 1)
    return PuntoDarboux(float(base[0]), float(base[1]), jet.valor, jet.derivada((1, 0)), jet.derivada((0, 1)))


def discriminante(eq: EcuacionMA, pt: PuntoDarboux) -> float:
    return discriminante_coeficientes(*eq.coeficientes(pt))


def clasificar(eq: EcuacionMA, pt: PuntoDarboux, tol: Tolerancias = TOLERANCIAS) -> TipoEcuacion:
    delta = discriminante(eq, pt)
    tipo = tipo_por_discriminante(delta, tol.banda_parabolica)
    log.debug("Δ = %.17g en %s -> %s", delta, pt.como_tupla(), tipo.value)
    return tipo


def operador_A(eq: EcuacionMA, pt: PuntoDarboux) -> np.ndarray:
    """Matriz de 𝔄 en el marco (e1, e2, e3, e4) de 𝒟."""
    return matriz_A(*eq.coeficientes(pt))


def residuo(eq: EcuacionMA, f: SolucionCandidata, base: Sequence[float]) -> float:
    """E = N(f11 f22 - f12²) + A f11 + B f12 + C f22 + D en el levantamiento de la base."""
    f11, f12, f22 = f.hessiana(base)
    N, A, B, C, D = eq.coeficientes(levantar_punto(f, base))
    return N * (f11 * f22 - f12 * f12) + A * f11 + B * f12 + C * f22 + D


def marco_tangente(eq: EcuacionMA, f: SolucionCandidata, base: Sequence[float]) -> Tuple[ValorCampo, ValorCampo]:
    """Z1 = ∂x1 + p1∂u + f11∂p1 + f12∂p2, Z2 = ∂x2 + p2∂u + f12∂p1 + f22∂p2."""
    pt = levantar_punto(f, base)
    f11, f12, f22 = f.hessiana(base)
    z1 = CARTA.desde_marco(pt, (1.0, 0.0, f11, f12))
    z2 = CARTA.desde_marco(pt, (0.0, 1.0, f12, f22))
    return z1, z2


@dataclass(frozen=True)
class ResultadoInvariancia:
    defecto: float             # máx. norma de la parte de 𝔄Z_i fuera de T L_f
    desviacion: float          # máx. desviación de las identidades de 𝔄Z1 y 𝔄Z2
    residuo: float             # E
    coeficientes_Z1: Tuple[float, float]
    coeficientes_Z2: Tuple[float, float]

    def como_dict(self) -> dict:
        return {
            "residual": self.residuo,
            "defect": self.defecto,
            "decomposition_deviation": self.desviacion,
            "AZ1_in_frame": list(self.coeficientes_Z1),
            "AZ2_in_frame": list(self.coeficientes_Z2),
        }


def defecto_invariancia(eq: EcuacionMA, f: SolucionCandidata, base: Sequence[float]) -> ResultadoInvariancia:
    """Descompone 𝔄Z_i = a Z1 + b Z2 + (vertical) con la parte vertical en span{∂p1, ∂p2}.

    Identidades que deben cumplirse con independencia de E:
      𝔄Z1 = (B - 2N f12) Z1 + 2(C + N f11) Z2 - 2E ∂p2
      𝔄Z2 = -2(A + N f22) Z1 + (2N f12 - B) Z2 + 2E ∂p1
    """
    pt = levantar_punto(f, base)
    N, A, B, C, D = eq.coeficientes(pt)
    f11, f12, f22 = f.hessiana(base)
    E = N * (f11 * f22 - f12 * f12) + A * f11 + B * f12 + C * f22 + D
    M = matriz_A(N, A, B, C, D)
    z1 = np.array([1.0, 0.0, f11, f12])
    z2 = np.array([0.0, 1.0, f12, f22])
    dp1 = np.array([0.0, 0.0, 1.0, 0.0])
    dp2 = np.array([0.0, 0.0, 0.0, 1.0])

    defectos = []
    coeficientes = []
    for z in (z1, z2):
        imagen = M @ z
        a, b = imagen[0], imagen[1]
        vertical = imagen - a * z1 - b * z2
        defectos.append(float(np.linalg.norm(vertical)))
        coeficientes.append((float(a), float(b)))

    esperado1 = (B - 2 * N * f12) * z1 + 2 * (C + N * f11) * z2 - 2 * E * dp2
    esperado2 = -2 * (A + N * f22) * z1 + (2 * N * f12 - B) * z2 + 2 * E * dp1
    desviacion = max(float(np.max(np.abs(M @ z1 - esperado1))), float(np.max(np.abs(M @ z2 - esperado2))))
    return ResultadoInvariancia(max(defectos), desviacion, E, coeficientes[0], coeficientes[1])


@dataclass(frozen=True, eq=False)
class AlgebraBasica:
    identidad: np.ndarray
    generador: np.ndarray
    clasificacion: ResultadoClasificacion
    residuo_jordan: float

    @property
    def tipo_zeta(self) -> Optional[TipoZeta]:
        return self.clasificacion.tipo_zeta

    def como_dict(self) -> dict:
        return {
            "generators": [self.identidad.tolist(), self.generador.tolist()],
            "jordan_closure_residual": self.residuo_jordan,
            "classification": self.clasificacion.como_dict(),
        }


def algebra_basica(eq: EcuacionMA, pt: PuntoDarboux, tol: Tolerancias = TOLERANCIAS) -> AlgebraBasica:
    """span{I, 𝔄} y su clasificación respecto de la forma de curvatura."""
    M = operador_A(eq, pt)
    if float(np.max(np.abs(M))) == 0.0:
        raise ErrorDegenerado("𝔄 es escalar: todos los coeficientes se anulan en el punto")
    I = np.eye(4)
    cuadrado = producto_jordan(M, M)
    sistema = np.column_stack([I.ravel(), M.ravel()])
    coef, *_ = np.linalg.lstsq(sistema, cuadrado.ravel(), rcond=None)
    residuo_jordan = float(np.max(np.abs(cuadrado - coef[0] * I - coef[1] * M)))
    escala = 1.0 + float(np.max(np.abs(M))) ** 2
    if residuo_jordan > tol.ecuacion_estructura * escala:
        raise ErrorConsistencia(f"span{{I, 𝔄}} no es cerrado por el producto de Jordan ({residuo_jordan:.3e})")
    sp = EspacioSimplectico(gram_curvatura(CARTA, pt))
    clasificacion = clasificar_dim4(sp, M, tol)
    return AlgebraBasica(I, M, clasificacion, residuo_jordan)


# ---------------- Transformación de Legendre parcial ----------------
# Φ(x1, x2, u, p1, p2) = (p1, x2, u - x1 p1, -x1, p2) conserva ω.
# Sobre 𝒟: e1 -> -e3', e2 -> e2', e3 -> e1', e4 -> e4'.
_T_LEGENDRE = np.array([
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])


def legendre_parcial(pt: PuntoDarboux) -> PuntoDarboux:
    return PuntoDarboux(pt.p1, pt.x2, pt.u - pt.x1 * pt.p1, -pt.x1, pt.p2)


def coeficientes_desde_matriz(M: np.ndarray, tol: float = TOLERANCIAS.consistencia) -> Coeficientes:
    """Lee (N, A, B, C, D) de una matriz con la forma de 𝔄."""
    N = -M[0, 3] / 2
    A = -M[0, 1] / 2
    B = M[0, 0]
    C = M[1, 0] / 2
    D = M[2, 1] / 2
    reconstruida = matriz_A(N, A, B, C, D)
    desviacion = float(np.max(np.abs(reconstruida - M)))
    if desviacion > tol * (1.0 + float(np.max(np.abs(M)))):
        raise ErrorConsistencia(f"la matriz no tiene la forma de un operador de Monge-Ampère ({desviacion:.3e})")
    return (float(N), float(A), float(B), float(C), float(D))


@dataclass(frozen=True)
class ResultadoLegendre:
    punto: PuntoDarboux
    coeficientes: Coeficientes
    discriminante: float
    tipo: TipoEcuacion


def transformar_legendre(eq: EcuacionMA, pt: PuntoDarboux, tol: Tolerancias = TOLERANCIAS) -> ResultadoLegendre:
    """Coeficientes de la ecuación transformada en Φ(pt) y su tipo."""
    M = operador_A(eq, pt)
    transformada = _T_LEGENDRE @ M @ np.linalg.inv(_T_LEGENDRE)
    coef = coeficientes_desde_matriz(transformada, tol.consistencia)
    delta = discriminante_coeficientes(*coef)
    return ResultadoLegendre(legendre_parcial(pt), coef, delta, tipo_por_discriminante(delta, tol.banda_parabolica))


# ---------------- Clasificación por regiones ----------------
@dataclass(frozen=True)
class EjeMalla:
    variable: str
    minimo: float
    maximo: float
    cuenta: int

    def valores(self) -> List[float]:
        if self.cuenta <= 0:
            return []
        if self.cuenta == 1:
            return [self.minimo]
        paso = (self.maximo - self.minimo) / (self.cuenta - 1)
        return [self.minimo + i * paso for i in range(self.cuenta)]

    def como_dict(self) -> dict:
        return {"variable": self.variable, "min": self.minimo, "max": self.maximo, "count": self.cuenta}


@dataclass(frozen=True)
class EspecMalla:
    ejes: Tuple[EjeMalla, EjeMalla]
    fijos: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.ejes) != 2:
            raise ErrorDimension("la malla tiene exactamente dos ejes")
        nombres = [e.variable for e in self.ejes] + list(self.fijos)
        for nombre in nombres:
            if nombre not in VARIABLES:
                raise ErrorDimension(f"variable de malla desconocida {nombre!r}")
        if self.ejes[0].variable == self.ejes[1].variable:
            raise ErrorDimension("los dos ejes de la malla deben ser variables distintas")

    @classmethod
    def por_defecto(cls) -> "EspecMalla":
        return cls((EjeMalla("x1", -1.0, 1.0, 5), EjeMalla("x2", -1.0, 1.0, 5)))

    def punto(self, a: float, b: float) -> PuntoDarboux:
        valores = {v: 0.0 for v in VARIABLES}
        valores.update(self.fijos)
        valores[self.ejes[0].variable] = a
        valores[self.ejes[1].variable] = b
        return PuntoDarboux.desde([valores[v] for v in VARIABLES])

    def como_dict(self) -> dict:
        return {"axes": [e.como_dict() for e in self.ejes],
                "fixed": {v: self.fijos[v] for v in VARIABLES if v in self.fijos}}


@dataclass(frozen=True)
class CeldaRegion:
    indice: Tuple[int, int]
    punto: PuntoDarboux
    delta: Optional[float]
    tipo: str                  # "elliptic" | "parabolic" | "hyperbolic" | "band" | "error"
    error: Optional[str] = None

    def como_dict(self) -> dict:
        salida = {"index": list(self.indice), "point": list(self.punto.como_tupla()),
                  "delta": self.delta, "type": self.tipo}
        if self.error is not None:
            salida["error"] = self.error
        return salida


@dataclass(frozen=True)
class ResultadoRegion:
    malla: EspecMalla
    banda: float
    celdas: Tuple[CeldaRegion, ...]

    @property
    def fraccion_errores(self) -> float:
        if not self.celdas:
            return 0.0
        return sum(1 for c in self.celdas if c.tipo == "error") / len(self.celdas)

    def conteo(self) -> Dict[str, int]:
        salida: Dict[str, int] = {}
        for c in self.celdas:
            salida[c.tipo] = salida.get(c.tipo, 0) + 1
        return dict(sorted(salida.items()))

    def como_dict(self) -> dict:
        grid = self.malla.como_dict()
        grid["band"] = self.banda
        return {"grid": grid, "counts": self.conteo(), "cells": [c.como_dict() for c in self.celdas]}


def clasificar_region(eq: EcuacionMA, malla: EspecMalla, tol: Tolerancias = TOLERANCIAS) -> ResultadoRegion:
    """Clasifica celda a celda en orden de filas; los fallos se registran por celda."""
    banda = tol.banda_parabolica
    celdas: List[CeldaRegion] = []
    for i, a in enumerate(malla.ejes[0].valores()):
        for j, b in enumerate(malla.ejes[1].valores()):
            pt = malla.punto(a, b)
            try:
                delta = discriminante(eq, pt)
            except ErrorGeometria as e:
                log.warning("celda (%d, %d) sin clasificar: %s", i, j, e)
                celdas.append(CeldaRegion((i, j), pt, None, "error", str(e)))
                continue
            tipo = "band" if abs(delta) <= banda else tipo_por_discriminante(delta, banda).value
            celdas.append(CeldaRegion((i, j), pt, delta, tipo))
    log.info("región clasificada: %d celdas", len(celdas))
    return ResultadoRegion(malla, banda, tuple(celdas))
