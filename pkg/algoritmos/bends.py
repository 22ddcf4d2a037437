# algoritmos/bends.py
"""Bends en el espacio P_{k,2} de polinomios homogéneos de grado k en (x, y).

Un subespacio S = span{q1, q2} de P_{k,2} es un bend cuando existen f, g en
P_{k+1,2}, g no proporcional a f, con f_x, f_y base de S y g_x, g_y en S.
Entonces g_x = α f_x + β f_y, g_y = γ f_x + δ f_y y

    γ f_xx + (δ - α) f_xy - β f_yy = 0,

que es (α f_x + β f_y)_y = (γ f_x + δ f_y)_x escrita en f.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from logica.configuracion import TOLERANCIAS, Tolerancias
from logica.errores import ErrorBend, ErrorDegenerado, ErrorEntrada, ErrorTestigo
from logica.expresion import Expresion, analizar, evaluar, evaluar_jet
from logica.subespacios import forma_escalonada, mismo_subespacio, nucleo, rango
from logica.zeta import TipoZeta, partes_potencia

log = logging.getLogger(__name__)

VARIABLES_PLANO = ("x", "y")

Matriz2x2 = Tuple[float, float, float, float]


# ---------------- Polinomios homogéneos ----------------
@dataclass(frozen=True)
class PolinomioHomogeneo:
    """Coeficiente de x^r y^(k-r) en la posición r."""
    grado: int
    coeficientes: Tuple[float, ...]

    def __post_init__(self):
        if self.grado < 0 or len(self.coeficientes) != self.grado + 1:
            raise ErrorEntrada(f"un polinomio de grado {self.grado} tiene {self.grado + 1} coeficientes")
        object.__setattr__(self, "coeficientes", tuple(float(c) for c in self.coeficientes))

    @classmethod
    def desde_vector(cls, v: Sequence[float]) -> "PolinomioHomogeneo":
        return cls(len(v) - 1, tuple(v))

    @classmethod
    def desde_expresion(cls, e: Expresion, grado: int, tol: float = 1e-9) -> "PolinomioHomogeneo":
        """Coeficientes leídos del jet en el origen; la expresión debe ser homogénea de ese grado."""
        if e.variables != VARIABLES_PLANO:
            raise ErrorEntrada(f"los polinomios de un bend se escriben en {VARIABLES_PLANO}")
        jet = evaluar_jet(e, (0.0, 0.0), grado)
        coef = [jet.coeficiente((r, grado - r)) for r in range(grado + 1)]
        p = cls(grado, tuple(coef))
        escala = max(1.0, p.norma())
        bajos = [abs(jet.coeficiente(a)) for a in jet.multi_indices() if sum(a) < grado]
        if bajos and max(bajos) > tol * escala:
            raise ErrorEntrada(f"la expresión {e} no es homogénea de grado {grado}")
        for punto in ((0.7, -1.3), (1.9, 0.4)):
            if abs(evaluar(e, punto) - p.evaluar(*punto)) > tol * escala * 10:
                raise ErrorEntrada(f"la expresión {e} no es homogénea de grado {grado}")
        return p

    @classmethod
    def analizar(cls, texto: str, grado: int) -> "PolinomioHomogeneo":
        return cls.desde_expresion(analizar(texto, VARIABLES_PLANO), grado)

    def vector(self) -> np.ndarray:
        return np.array(self.coeficientes)

    def norma(self) -> float:
        return float(np.max(np.abs(self.coeficientes))) if self.coeficientes else 0.0

    def derivada_x(self) -> "PolinomioHomogeneo":
        return PolinomioHomogeneo.desde_vector(matriz_dx(self.grado) @ self.vector())

    def derivada_y(self) -> "PolinomioHomogeneo":
        return PolinomioHomogeneo.desde_vector(matriz_dy(self.grado) @ self.vector())

    def intercambiar(self) -> "PolinomioHomogeneo":
        """x <-> y."""
        return PolinomioHomogeneo(self.grado, tuple(reversed(self.coeficientes)))

    def evaluar(self, x: float, y: float) -> float:
        k = self.grado
        return float(sum(c * x ** r * y ** (k - r) for r, c in enumerate(self.coeficientes)))

    def escalar(self, t: float) -> "PolinomioHomogeneo":
        return PolinomioHomogeneo(self.grado, tuple(t * c for c in self.coeficientes))

    def __add__(self, otro: "PolinomioHomogeneo") -> "PolinomioHomogeneo":
        if otro.grado != self.grado:
            raise ErrorEntrada("suma de polinomios de grados distintos")
        return PolinomioHomogeneo(self.grado, tuple(np.add(self.coeficientes, otro.coeficientes)))

    def texto(self) -> str:
        k = self.grado
        terminos = []
        for r in range(k, -1, -1):
            c = self.coeficientes[r]
            if c == 0.0:
                continue
            factores = [f"{c:.17g}"]
            if r:
                factores.append("x" if r == 1 else f"x^{r}")
            if k - r:
                factores.append("y" if k - r == 1 else f"y^{k - r}")
            terminos.append("*".join(factores))
        return " + ".join(terminos).replace("+ -", "- ") if terminos else "0"

    def __str__(self) -> str:
        return self.texto()


def matriz_dx(grado: int) -> np.ndarray:
    """∂/∂x: P_grado -> P_(grado-1)."""
    M = np.zeros((max(grado, 0), grado + 1))
    for r in range(1, grado + 1):
        M[r - 1, r] = r
    return M


def matriz_dy(grado: int) -> np.ndarray:
    M = np.zeros((max(grado, 0), grado + 1))
    for r in range(grado):
        M[r, r] = grado - r
    return M


def polinomio_desde_vector_fibra(k: int, componentes: Mapping[Tuple[int, int], float]) -> PolinomioHomogeneo:
    """∂/∂u_{r,s} <-> x^r y^s / (r! s!), con r + s = k."""
    coef = []
    for r in range(k + 1):
        clave = (r, k - r)
        if clave not in componentes:
            raise ErrorEntrada(f"falta la componente u_{clave}")
        coef.append(componentes[clave] / (math.factorial(r) * math.factorial(k - r)))
    return PolinomioHomogeneo(k, tuple(coef))


# ---------------- Subespacios ----------------
@dataclass(frozen=True, eq=False)
class SubespacioBend:
    grado: int
    q1: PolinomioHomogeneo
    q2: PolinomioHomogeneo
    testigo: Optional[Tuple[PolinomioHomogeneo, PolinomioHomogeneo]] = None
    matriz: Optional[Matriz2x2] = None
    tipo: Optional[TipoZeta] = None

    def matriz_base(self) -> np.ndarray:
        return np.column_stack([self.q1.vector(), self.q2.vector()])

    def mismo_que(self, otro: "SubespacioBend", tol: float = TOLERANCIAS.angulo_subespacio) -> bool:
        return self.grado == otro.grado and mismo_subespacio(self.matriz_base(), otro.matriz_base(), tol)

    def como_dict(self) -> dict:
        salida = {"k": self.grado, "span": [self.q1.texto(), self.q2.texto()],
                  "span_coefficients": [list(self.q1.coeficientes), list(self.q2.coeficientes)]}
        if self.testigo is not None:
            salida["witness"] = {"f": self.testigo[0].texto(), "g": self.testigo[1].texto()}
        if self.matriz is not None:
            salida["matrix"] = list(self.matriz)
        if self.tipo is not None:
            salida["kind"] = self.tipo.nombre
        return salida


def espacio_primitivas(S: np.ndarray, tol: float = TOLERANCIAS.rango) -> np.ndarray:
    """Base escalonada de {h ∈ P_(k+1): h_x, h_y ∈ S}; S con columnas en P_k. Filas = polinomios."""
    k = S.shape[0] - 1
    Q = nucleo(S.T, tol)                    # complemento ortogonal de S
    if Q.shape[1] == 0:
        restricciones = np.zeros((0, k + 2))
    else:
        restricciones = np.vstack([Q.T @ matriz_dx(k + 1), Q.T @ matriz_dy(k + 1)])
    if restricciones.shape[0] == 0:
        P = np.eye(k + 2)
    else:
        P = nucleo(restricciones, tol)
    if P.shape[1] == 0:
        return np.zeros((0, k + 2))
    return forma_escalonada(P.T, tol)


def _derivadas_independientes(h: np.ndarray, tol: float) -> bool:
    k1 = len(h) - 1
    return rango(np.column_stack([matriz_dx(k1) @ h, matriz_dy(k1) @ h]), tol) == 2


def _candidatos(b1: np.ndarray, b2: np.ndarray) -> List[np.ndarray]:
    return [b1, b2, b1 + b2, b1 - b2, b1 + 2 * b2, 2 * b1 + b2]


def _elegir_testigo(base: np.ndarray, tol: float) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    if base.shape[0] < 2:
        return None
    b1, b2 = base[0], base[1]
    for f in _candidatos(b1, b2):
        if not _derivadas_independientes(f, tol):
            continue
        for g in base:
            if rango(np.column_stack([f, g]), tol) == 2:
                return f, g
    return None


def es_bend(k: int, q1: PolinomioHomogeneo, q2: PolinomioHomogeneo,
            tol: Tolerancias = TOLERANCIAS) -> Tuple[bool, Optional[Tuple[PolinomioHomogeneo, PolinomioHomogeneo]]]:
    if q1.grado != k or q2.grado != k:
        raise ErrorEntrada(f"los generadores deben tener grado {k}")
    if k < 1:
        raise ErrorEntrada("el grado de un bend debe ser >= 1")
    S = np.column_stack([q1.vector(), q2.vector()])
    if rango(S, tol.rango) != 2:
        raise ErrorEntrada("q1 y q2 son linealmente dependientes")
    base = espacio_primitivas(S, tol.rango)
    testigo = _elegir_testigo(base, tol.rango)
    log.debug("k=%d: dim de primitivas %d, testigo %s", k, base.shape[0], testigo is not None)
    if testigo is None:
        return False, None
    f, g = testigo
    return True, (PolinomioHomogeneo.desde_vector(f), PolinomioHomogeneo.desde_vector(g))


def residuo_ecuacion_estructura(f: PolinomioHomogeneo, matriz: Matriz2x2) -> float:
    """Máx. coeficiente de γ f_xx + (δ - α) f_xy - β f_yy."""
    alfa, beta, gamma, delta = matriz
    fx, fy = f.derivada_x(), f.derivada_y()
    combinacion = (gamma * fx.derivada_x().vector() + (delta - alfa) * fx.derivada_y().vector()
                   - beta * fy.derivada_y().vector())
    return float(np.max(np.abs(combinacion))) if combinacion.size else 0.0


def matriz_estructura(testigo: Tuple[PolinomioHomogeneo, PolinomioHomogeneo],
                      tol: Tolerancias = TOLERANCIAS) -> Matriz2x2:
    """(α, β, γ, δ) con g_x = α f_x + β f_y, g_y = γ f_x + δ f_y."""
    f, g = testigo
    if f.grado != g.grado:
        raise ErrorTestigo("f y g deben tener el mismo grado")
    escala = max(1.0, f.norma(), g.norma())
    if rango(np.column_stack([f.vector(), g.vector()]), tol.rango) != 2:
        raise ErrorTestigo("g es proporcional a f")
    F = np.column_stack([f.derivada_x().vector(), f.derivada_y().vector()])
    if rango(F, tol.rango) != 2:
        raise ErrorTestigo("f_x y f_y no son independientes")
    gx, gy = g.derivada_x().vector(), g.derivada_y().vector()
    (alfa, beta), *_ = np.linalg.lstsq(F, gx, rcond=None)
    (gamma, delta), *_ = np.linalg.lstsq(F, gy, rcond=None)
    residuo = max(float(np.max(np.abs(F @ [alfa, beta] - gx))), float(np.max(np.abs(F @ [gamma, delta] - gy))))
    if residuo > tol.ecuacion_estructura * escala * f.grado ** 2:
        raise ErrorTestigo(f"g_x o g_y no están en span{{f_x, f_y}} (residuo {residuo:.3e})")
    matriz = tuple(_limpiar(float(v), tol.ecuacion_estructura) for v in (alfa, beta, gamma, delta))
    residuo2 = residuo_ecuacion_estructura(f, matriz)
    escala2 = escala * (1.0 + max(abs(v) for v in matriz)) * f.grado ** 2
    if residuo2 > tol.ecuacion_estructura * escala2:
        raise ErrorBend(f"la ecuación de estructura no se anula (residuo {residuo2:.3e})")
    return matriz


def _limpiar(v: float, tol: float) -> float:
    return 0.0 if abs(v) <= tol else v


@dataclass(frozen=True, eq=False)
class ResultadoBend:
    tipo: TipoZeta
    invariante: float                 # c con B² = c I
    generador: Optional[np.ndarray]   # B / sqrt(|c|) cuando c ≠ 0, B si c = 0


def clasificar_bend(matriz: Matriz2x2, tol: Tolerancias = TOLERANCIAS) -> ResultadoBend:
    alfa, beta, gamma, delta = matriz
    M = np.array([[alfa, beta], [gamma, delta]], dtype=float)
    B = M - (alfa + delta) / 2.0 * np.eye(2)
    escala = max(1.0, float(np.max(np.abs(M))))
    if float(np.max(np.abs(B))) <= tol.rango * escala:
        raise ErrorDegenerado("la matriz de estructura es escalar")
    c = ((alfa - delta) / 2.0) ** 2 + beta * gamma
    banda = tol.banda_parabolica * escala ** 2
    if c < -banda:
        return ResultadoBend(TipoZeta.MENOS, c, B / math.sqrt(-c))
    if c > banda:
        return ResultadoBend(TipoZeta.MAS, c, B / math.sqrt(c))
    return ResultadoBend(TipoZeta.CERO, c, B)


def analizar_bend(k: int, q1: PolinomioHomogeneo, q2: PolinomioHomogeneo,
                  tol: Tolerancias = TOLERANCIAS) -> Optional[SubespacioBend]:
    """Bend completo (testigo, matriz, tipo) o None si el subespacio no es un bend."""
    ok, testigo = es_bend(k, q1, q2, tol)
    if not ok:
        return None
    matriz = matriz_estructura(testigo, tol)
    tipo = clasificar_bend(matriz, tol).tipo
    return SubespacioBend(k, q1, q2, testigo, matriz, tipo)


def forma_normal(k: int, tipo: TipoZeta) -> SubespacioBend:
    """Span(Re z^k, Im z^k), z = x + ζy."""
    if k < 2:
        raise ErrorEntrada("las formas normales están definidas para k >= 2")
    re, im = partes_potencia(k, tipo)
    return SubespacioBend(k, PolinomioHomogeneo(k, tuple(re)), PolinomioHomogeneo(k, tuple(im)), tipo=tipo)


def prolongar_bend(b: SubespacioBend, tol: Tolerancias = TOLERANCIAS) -> SubespacioBend:
    """{h ∈ P_(k+1): h_x, h_y ∈ b}, que debe ser de nuevo un bend de dimensión 2."""
    S = b.matriz_base()
    if analizar_bend(b.grado, b.q1, b.q2, tol) is None:
        raise ErrorBend("el subespacio de partida no es un bend")
    base = espacio_primitivas(S, tol.rango)
    if base.shape[0] != 2:
        raise ErrorBend(f"el espacio prolongado tiene dimensión {base.shape[0]} en lugar de 2")
    q1 = PolinomioHomogeneo.desde_vector(base[0])
    q2 = PolinomioHomogeneo.desde_vector(base[1])
    prolongado = analizar_bend(b.grado + 1, q1, q2, tol)
    if prolongado is None:
        raise ErrorBend("el espacio prolongado no es un bend")
    return prolongado


def contar_tipos(bends: Sequence[SubespacioBend]) -> Dict[str, int]:
    salida: Dict[str, int] = {}
    for b in bends:
        if b.tipo is not None:
            salida[b.tipo.nombre] = salida.get(b.tipo.nombre, 0) + 1
    return salida
