# algoritmos/r_variedades.py
"""Ecuación ζ-Laplace prolongada en J^k y las R-variedades singulares L_{k,l}^ζ.

Carta de jets: (x, y, u_{p,q}) con p + q ≤ k; los u_{p,q} se ordenan por grado
y, dentro de cada grado, por p decreciente.

Parametrización (a, b) = (u_{k,0}, u_{k-1,1}), z = a + ζb, F = (k + 1/l)!:

    x + ζ³y = z^l / F^l
    u_{k-r,0} + ζ u_{k-r-1,1} ~ z^(lr+1) / ((r + 1/l)! F^(lr)),   r = 0..k
    u_{p,q} = ζ² u_{p+2,q-2},                                    q ≥ 2

Con ``lectura_literal`` se usa x + ζy = z^k / F.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from algoritmos.bends import PolinomioHomogeneo, forma_normal, polinomio_desde_vector_fibra
from logica.configuracion import SEMILLA_POR_DEFECTO, TOLERANCIAS, Tolerancias
from logica.errores import ErrorConsistencia, ErrorDegenerado, ErrorEntrada, ErrorNumerico, ErrorTipoZeta
from logica.jet import multi_indices
from logica.subespacios import distancia_subespacios, rango
from logica.zeta import NumeroZeta, TipoZeta, factorial_fraccionario, potencia

log = logging.getLogger(__name__)

Indice = Tuple[int, int]


# ---------------- Tipos ----------------
def indices_jet(k: int) -> Tuple[Indice, ...]:
    return multi_indices(2, k)


@dataclass(frozen=True)
class PuntoCartaJet:
    x: float
    y: float
    orden: int
    valores: Mapping[Indice, float]
    inconsistencias: Tuple[Indice, ...] = ()

    def __post_init__(self):
        faltan = [i for i in indices_jet(self.orden) if i not in self.valores]
        if faltan:
            raise ErrorEntrada(f"punto de la carta de jets incompleto, faltan {faltan}")
        numeros = [self.x, self.y, *self.valores.values()]
        if not all(math.isfinite(v) for v in numeros):
            raise ErrorNumerico("punto de la carta de jets con valores no finitos")

    def u(self, p: int, q: int) -> float:
        return self.valores[(p, q)]

    def vector(self) -> np.ndarray:
        """[x, y, u_{p,q} en orden graduado]."""
        return np.array([self.x, self.y] + [self.valores[i] for i in indices_jet(self.orden)])

    @classmethod
    def desde_vector(cls, orden: int, v: Sequence[float]) -> "PuntoCartaJet":
        indices = indices_jet(orden)
        if len(v) != len(indices) + 2:
            raise ErrorEntrada(f"vector de longitud {len(v)} para una carta de orden {orden}")
        return cls(float(v[0]), float(v[1]), orden, {i: float(c) for i, c in zip(indices, v[2:])})

    def con_valor(self, indice: Indice, valor: float) -> "PuntoCartaJet":
        valores = dict(self.valores)
        valores[indice] = valor
        return PuntoCartaJet(self.x, self.y, self.orden, valores, self.inconsistencias)


@dataclass(frozen=True)
class EspecRVariedad:
    k: int
    l: int
    tipo: TipoZeta
    lectura_literal: bool = False
    permitir_parabolico: bool = False

    def __post_init__(self):
        if self.k < 2:
            raise ErrorEntrada(f"k debe ser >= 2, llegó {self.k}")
        if self.l < 2:
            raise ErrorEntrada(f"l debe ser un entero > 1, llegó {self.l}")
        if self.tipo is TipoZeta.CERO and not self.permitir_parabolico:
            raise ErrorTipoZeta("el caso parabólico requiere permitir_parabolico")

    @property
    def usa_lectura_literal(self) -> bool:
        return self.lectura_literal or self.tipo is TipoZeta.CERO

    def como_dict(self) -> dict:
        return {"k": self.k, "l": self.l, "kind": self.tipo.nombre,
                "formula": "literal" if self.usa_lectura_literal else "corrected"}


# ---------------- Ecuación prolongada y vectores ν ----------------
def residuos_prolongados(pt: PuntoCartaJet, tipo: TipoZeta) -> List[float]:
    """u_{2+r,s} - ζ² u_{r,s+2} para r + s ≤ k - 2."""
    if pt.orden < 2:
        return []
    return [pt.u(2 + r, s) - tipo.zeta2 * pt.u(r, s + 2) for r, s in indices_jet(pt.orden - 2)]


@dataclass(frozen=True)
class VectoresNu:
    nu1: Dict[Indice, float]
    nu2: Dict[Indice, float]
    polinomio1: PolinomioHomogeneo
    polinomio2: PolinomioHomogeneo
    coincide_forma_normal: bool
    coincide_intercambiada: bool

    def como_dict(self) -> dict:
        def componentes(nu):
            return [{"index": list(i), "value": v} for i, v in sorted(nu.items()) if v != 0.0]

        return {"nu1": componentes(self.nu1), "nu2": componentes(self.nu2),
                "polynomials": [self.polinomio1.texto(), self.polinomio2.texto()],
                "matches_normal_form": self.coincide_forma_normal,
                "matches_swapped_normal_form": self.coincide_intercambiada}


def vectores_nu(k: int, tipo: TipoZeta, tol: Tolerancias = TOLERANCIAS) -> VectoresNu:
    """ν1 = Σ ζ^{2r} ∂/∂u_{2r,k-2r}, ν2 = Σ ζ^{2r} ∂/∂u_{2r+1,k-2r-1}."""
    if k < 2:
        raise ErrorEntrada("k debe ser >= 2")
    nu1 = {(r, k - r): 0.0 for r in range(k + 1)}
    nu2 = dict(nu1)
    for r in range(k // 2 + 1):
        nu1[(2 * r, k - 2 * r)] = float(tipo.zeta2 ** r)
    for r in range((k - 1) // 2 + 1):
        nu2[(2 * r + 1, k - 2 * r - 1)] = float(tipo.zeta2 ** r)
    p1 = polinomio_desde_vector_fibra(k, nu1)
    p2 = polinomio_desde_vector_fibra(k, nu2)
    imagen = np.column_stack([p1.vector(), p2.vector()])
    normal = forma_normal(k, tipo)
    directo = distancia_subespacios(imagen, normal.matriz_base()) <= tol.angulo_subespacio
    intercambiada = np.column_stack([normal.q1.intercambiar().vector(), normal.q2.intercambiar().vector()])
    cruzado = distancia_subespacios(imagen, intercambiada) <= tol.angulo_subespacio
    if tipo is not TipoZeta.CERO and not directo:
        raise ErrorConsistencia(f"las imágenes de ν no generan la forma normal (k={k}, {tipo.nombre})")
    return VectoresNu(nu1, nu2, p1, p2, directo, cruzado)


# ---------------- Puntos de L_{k,l} ----------------
def _proyeccion(spec: EspecRVariedad, z: NumeroZeta) -> Tuple[float, float]:
    F = factorial_fraccionario(spec.k, spec.l)
    if spec.usa_lectura_literal:
        w = potencia(z, spec.k)
        return w.re / F, w.im / F
    w = potencia(z, spec.l)
    escala = F ** spec.l
    # ζ³ = ζ² ζ
    return w.re / escala, spec.tipo.zeta2 * w.im / escala


def punto_lkl(spec: EspecRVariedad, params: Sequence[float], tol: Tolerancias = TOLERANCIAS) -> PuntoCartaJet:
    a, b = (float(v) for v in params)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ErrorNumerico("parámetros no finitos", f"({a}, {b})")
    k, l, tipo = spec.k, spec.l, spec.tipo
    z = NumeroZeta(a, b, tipo)
    F = factorial_fraccionario(k, l)
    x, y = _proyeccion(spec, z)

    valores: Dict[Indice, float] = {}
    for r in range(k + 1):
        G = potencia(z, l * r + 1)
        denominador = factorial_fraccionario(r, l) * F ** (l * r)
        valores[(k - r, 0)] = G.re / denominador
        if k - r - 1 >= 0:
            valores[(k - r - 1, 1)] = G.im / denominador
    for q in range(2, k + 1):
        for p in range(k - q + 1):
            valores[(p, q)] = tipo.zeta2 * valores[(p + 2, q - 2)]

    pt = PuntoCartaJet(x, y, k, valores)
    residuos = residuos_prolongados(pt, tipo)
    escala = 1.0 + max(abs(v) for v in valores.values())
    malos = [(2 + r, s) for (r, s), res in zip(indices_jet(k - 2), residuos) if abs(res) > tol.consistencia * escala]
    if malos:
        if tipo is TipoZeta.CERO:
            log.warning("L_{%d,%d} parabólico: %d componentes incompatibles con la ecuación prolongada", k, l, len(malos))
            return PuntoCartaJet(x, y, k, valores, tuple(malos))
        raise ErrorConsistencia(f"sustitución inconsistente en u_{malos[0]}")
    return pt


def jacobiano_proyeccion(spec: EspecRVariedad, params: Sequence[float]) -> np.ndarray:
    """∂(x, y)/∂(a, b) exacto: multiplicación por la derivada ζ-holomorfa."""
    z = NumeroZeta(float(params[0]), float(params[1]), spec.tipo)
    F = factorial_fraccionario(spec.k, spec.l)
    if spec.usa_lectura_literal:
        c = potencia(z, spec.k - 1)
        factor, signo_y = spec.k / F, 1.0
    else:
        c = potencia(z, spec.l - 1)
        factor, signo_y = spec.l / F ** spec.l, float(spec.tipo.zeta2)
    cr, ci = c.re * factor, c.im * factor
    return np.array([[cr, spec.tipo.zeta2 * ci], [signo_y * ci, signo_y * cr]])


def vectores_tangentes(spec: EspecRVariedad, params: Sequence[float], h: float = TOLERANCIAS.paso_h,
                       normalizar: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """Diferencias centrales de punto_lkl en a y en b (disposición de PuntoCartaJet.vector)."""
    if h <= 0:
        raise ErrorEntrada("el paso h debe ser positivo")
    a, b = (float(v) for v in params)
    ta = (punto_lkl(spec, (a + h, b)).vector() - punto_lkl(spec, (a - h, b)).vector()) / (2 * h)
    tb = (punto_lkl(spec, (a, b + h)).vector() - punto_lkl(spec, (a, b - h)).vector()) / (2 * h)
    if normalizar:
        ta = ta / (np.linalg.norm(ta) or 1.0)
        tb = tb / (np.linalg.norm(tb) or 1.0)
    return ta, tb


def defecto_tangencia_en(pt: PuntoCartaJet, tangentes: Sequence[np.ndarray]) -> float:
    """máx |t[u_{p,q}] - u_{p+1,q} t[x] - u_{p,q+1} t[y]| para p + q ≤ k - 1."""
    posicion = {indice: 2 + i for i, indice in enumerate(indices_jet(pt.orden))}
    peor = 0.0
    for t in tangentes:
        for p, q in indices_jet(pt.orden - 1):
            valor = t[posicion[(p, q)]] - pt.u(p + 1, q) * t[0] - pt.u(p, q + 1) * t[1]
            peor = max(peor, abs(float(valor)))
    return peor


def defecto_tangencia_cartan(spec: EspecRVariedad, params: Sequence[float],
                             h: float = TOLERANCIAS.paso_h) -> float:
    if math.hypot(*params) < 10 * h:
        raise ErrorDegenerado("parámetros demasiado cerca del punto singular")
    return defecto_tangencia_en(punto_lkl(spec, params), vectores_tangentes(spec, params, h))


def cociente_richardson(spec: EspecRVariedad, params: Sequence[float], h: float = 1e-3) -> float:
    """defecto(h/2) / defecto(h); ≈ 1/4 para diferencias centrales."""
    grueso = defecto_tangencia_cartan(spec, params, h)
    fino = defecto_tangencia_cartan(spec, params, h / 2)
    return fino / grueso if grueso > 0 else 0.0


# ---------------- Punto singular y bend ----------------
def _rango_jacobiano(J: np.ndarray, tol: float) -> int:
    if not np.any(J):
        return 0
    return rango(J, tol)


def _parte_superior(spec: EspecRVariedad, t: np.ndarray) -> Dict[Indice, float]:
    indices = indices_jet(spec.k)
    return {i: float(t[2 + n]) for n, i in enumerate(indices) if sum(i) == spec.k}


def _parte_inferior(spec: EspecRVariedad, t: np.ndarray) -> float:
    indices = indices_jet(spec.k)
    valores = [abs(t[0]), abs(t[1])] + [abs(t[2 + n]) for n, i in enumerate(indices) if sum(i) < spec.k]
    return float(max(valores))


@dataclass(frozen=True)
class ReporteSingular:
    spec: EspecRVariedad
    radio: float
    muestras: int
    rango_origen: int
    rango_minimo_anillo: int
    parametros_singulares: Tuple[Tuple[float, float], ...]
    rango_minimo_cono_nulo: int
    bend: Tuple[PolinomioHomogeneo, PolinomioHomogeneo]
    angulo_forma_normal: float
    angulo_forma_intercambiada: float
    nucleo_vertical: bool
    punto_singular_unico: bool
    fallos: Tuple[str, ...] = ()
    inconsistencias: Tuple[Indice, ...] = field(default=())

    def como_dict(self) -> dict:
        return {
            "spec": self.spec.como_dict(),
            "radius": self.radio,
            "samples": self.muestras,
            "origin_rank": self.rango_origen,
            "ring_min_rank": self.rango_minimo_anillo,
            "singular_params": [list(p) for p in self.parametros_singulares],
            "null_cone_min_rank": self.rango_minimo_cono_nulo,
            "bend": {
                "span": [self.bend[0].texto(), self.bend[1].texto()],
                "angle_to_normal_form": self.angulo_forma_normal,
                "angle_to_swapped_normal_form": self.angulo_forma_intercambiada,
                "kernel_is_vertical": self.nucleo_vertical,
            },
            "unique_singular_point": self.punto_singular_unico,
            "failures": list(self.fallos),
            "inconsistencies": [list(i) for i in self.inconsistencias],
        }


def reporte_punto_singular(spec: EspecRVariedad, radio: float = 0.1, muestras: int = 16,
                           semilla: int = SEMILLA_POR_DEFECTO, tol: Tolerancias = TOLERANCIAS) -> ReporteSingular:
    """Rango de la proyección a (x, y) cerca del origen y bend en el origen."""
    if radio <= 0:
        raise ErrorEntrada("el radio debe ser positivo")
    rng = np.random.default_rng(semilla)
    fallos: List[str] = []

    rango_origen = _rango_jacobiano(jacobiano_proyeccion(spec, (0.0, 0.0)), tol.rango)
    if spec.tipo is not TipoZeta.CERO and rango_origen != 0:
        fallos.append(f"rango {rango_origen} en el origen")

    angulos = rng.uniform(0.0, 2 * np.pi, size=muestras)
    radios = radio * (1.0 + rng.random(size=muestras))
    anillo = [(float(r * np.cos(t)), float(r * np.sin(t))) for r, t in zip(radios, angulos)]
    cono = [(s * r, e * s * r) for r in (radio, 2 * radio) for s in (1.0, -1.0) for e in (1.0, -1.0)]

    singulares = []
    rango_anillo = 2
    for p in anillo:
        rg = _rango_jacobiano(jacobiano_proyeccion(spec, p), tol.rango)
        rango_anillo = min(rango_anillo, rg)
        if rg < 2:
            singulares.append(p)
    rango_cono = 2
    for p in cono:
        rg = _rango_jacobiano(jacobiano_proyeccion(spec, p), tol.rango)
        rango_cono = min(rango_cono, rg)
        if rg < 2:
            singulares.append(p)
    if rango_anillo < 2:
        fallos.append("la proyección es singular en puntos del anillo")
    if rango_cono < 2:
        fallos.append("la proyección es singular sobre el cono nulo a = ±b")

    ta, tb = vectores_tangentes(spec, (0.0, 0.0), tol.paso_h)
    h = tol.paso_h
    vertical = max(_parte_inferior(spec, ta), _parte_inferior(spec, tb)) <= 10 * h * h
    if not vertical:
        fallos.append("el núcleo de la proyección no es vertical en el origen")
    q1 = polinomio_desde_vector_fibra(spec.k, _parte_superior(spec, ta))
    q2 = polinomio_desde_vector_fibra(spec.k, _parte_superior(spec, tb))
    imagen = np.column_stack([q1.vector(), q2.vector()])
    normal = forma_normal(spec.k, spec.tipo)
    angulo = distancia_subespacios(imagen, normal.matriz_base())
    intercambiada = np.column_stack([normal.q1.intercambiar().vector(), normal.q2.intercambiar().vector()])
    angulo_cruzado = distancia_subespacios(imagen, intercambiada)
    if spec.tipo is not TipoZeta.CERO and angulo > 1e-8:
        fallos.append(f"el bend en el origen se aparta de la forma normal ({angulo:.3e} rad)")

    unico = rango_origen == 0 and not singulares
    inconsistencias = punto_lkl(spec, (radio, radio / 2), tol).inconsistencias
    log.info("reporte L_{%d,%d}^%s: %d fallos", spec.k, spec.l, spec.tipo.nombre, len(fallos))
    return ReporteSingular(spec, radio, muestras, rango_origen, rango_anillo, tuple(singulares), rango_cono,
                           (q1, q2), angulo, angulo_cruzado, vertical, unico, tuple(fallos), inconsistencias)


# ---------------- Barridos ----------------
def muestrear_parametros(muestras: int, semilla: int = SEMILLA_POR_DEFECTO,
                         radio: float = 1.0) -> List[Tuple[float, float]]:
    rng = np.random.default_rng(semilla)
    return [(float(a), float(b)) for a, b in rng.uniform(-radio, radio, size=(muestras, 2))]


def nube_puntos(spec: EspecRVariedad, muestras: int, semilla: int = SEMILLA_POR_DEFECTO,
                radio: float = 1.0) -> List[Tuple[Tuple[float, float], PuntoCartaJet]]:
    return [(p, punto_lkl(spec, p)) for p in muestrear_parametros(muestras, semilla, radio)]


def encabezado_nube(k: int) -> List[str]:
    return ["a", "b", "x", "y"] + [f"u_{{{p},{q}}}" for p, q in indices_jet(k)]


def filas_nube(nube: Sequence[Tuple[Tuple[float, float], PuntoCartaJet]]) -> List[List[float]]:
    return [[a, b] + pt.vector().tolist() for (a, b), pt in nube]


@dataclass(frozen=True)
class ReporteVerificacion:
    spec: EspecRVariedad
    muestras: int
    residuo_maximo: float
    defecto_maximo: float
    cociente: Optional[float]

    def como_dict(self) -> dict:
        return {"spec": self.spec.como_dict(), "samples": self.muestras,
                "max_prolonged_residual": self.residuo_maximo,
                "max_cartan_defect": self.defecto_maximo,
                "richardson_ratio": self.cociente}


def verificar_rvariedad(spec: EspecRVariedad, muestras: int = 100, semilla: int = SEMILLA_POR_DEFECTO,
                        h: float = TOLERANCIAS.paso_h) -> ReporteVerificacion:
    """Pertenencia a la ecuación prolongada y tangencia de Cartan sobre parámetros sembrados."""
    residuo = 0.0
    defecto = 0.0
    for p in muestrear_parametros(muestras, semilla):
        pt = punto_lkl(spec, p)
        residuo = max([residuo] + [abs(r) for r in residuos_prolongados(pt, spec.tipo)])
        if math.hypot(*p) >= 10 * h:
            defecto = max(defecto, defecto_tangencia_en(pt, vectores_tangentes(spec, p, h)))
    cociente = cociente_richardson(spec, (0.5, 0.3)) if spec.tipo is not TipoZeta.CERO else None
    return ReporteVerificacion(spec, muestras, residuo, defecto, cociente)
