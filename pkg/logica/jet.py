# logica/jet.py
"""Jets: desarrollos de Taylor truncados en varias variables.

El coeficiente guardado para el multiíndice α es ∂^α f(base) / α!.
Los multiíndices se ordenan por grado y, dentro de cada grado, por primera
componente decreciente: (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from logica.errores import ErrorDimension, ErrorDominio

log = logging.getLogger(__name__)

MultiIndice = Tuple[int, ...]
Escalar = Union[int, float]


# ---------------- Tablas de multiíndices ----------------
def _composiciones(grado: int, n: int):
    if n == 1:
        yield (grado,)
        return
    for primero in range(grado, -1, -1):
        for resto in _composiciones(grado - primero, n - 1):
            yield (primero,) + resto


@lru_cache(maxsize=None)
def multi_indices(n: int, orden: int) -> Tuple[MultiIndice, ...]:
    """Multiíndices con |α| ≤ orden en orden graduado."""
    salida: List[MultiIndice] = []
    for grado in range(orden + 1):
        salida.extend(_composiciones(grado, n))
    return tuple(salida)


@lru_cache(maxsize=None)
def _posiciones(n: int, orden: int) -> Dict[MultiIndice, int]:
    return {alfa: i for i, alfa in enumerate(multi_indices(n, orden))}


@lru_cache(maxsize=None)
def _tabla_producto(n: int, orden: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    indices = multi_indices(n, orden)
    pos = _posiciones(n, orden)
    ii, jj, kk = [], [], []
    for i, a in enumerate(indices):
        for j, b in enumerate(indices):
            if sum(a) + sum(b) > orden:
                continue
            ii.append(i)
            jj.append(j)
            kk.append(pos[tuple(x + y for x, y in zip(a, b))])
    return np.array(ii, dtype=int), np.array(jj, dtype=int), np.array(kk, dtype=int)


@lru_cache(maxsize=None)
def _pares_por_destino(n: int, orden: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
    """Para la división: pares (i, j) con i ≠ 0 que aportan a cada posición."""
    ii, jj, kk = _tabla_producto(n, orden)
    total = len(multi_indices(n, orden))
    pares = []
    for k in range(total):
        sel = (kk == k) & (ii != 0)
        pares.append((ii[sel], jj[sel]))
    return tuple(pares)


def _factorial_multi(alfa: Sequence[int]) -> float:
    return float(math.prod(math.factorial(a) for a in alfa))


# ---------------- Jet ----------------
class Jet:
    """Jet de orden ``orden`` de una función de ``n`` variables en ``base``."""

    __slots__ = ("base", "orden", "coeficientes")

    def __init__(self, base: Sequence[float], orden: int, coeficientes: np.ndarray):
        self.base = tuple(float(b) for b in base)
        self.orden = int(orden)
        coef = np.array(coeficientes, dtype=float)
        if coef.shape != (len(multi_indices(len(self.base), self.orden)),):
            raise ErrorDimension(
                f"tabla de coeficientes de tamaño {coef.shape} para n={len(self.base)}, K={self.orden}")
        coef.flags.writeable = False
        self.coeficientes = coef

    # ---- Constructores ----
    @classmethod
    def constante(cls, base: Sequence[float], orden: int, valor: float) -> "Jet":
        coef = np.zeros(len(multi_indices(len(base), orden)))
        coef[0] = valor
        return cls(base, orden, coef)

    @classmethod
    def coordenada(cls, base: Sequence[float], orden: int, i: int) -> "Jet":
        n = len(base)
        coef = np.zeros(len(multi_indices(n, orden)))
        coef[0] = base[i]
        if orden >= 1:
            unidad = tuple(1 if j == i else 0 for j in range(n))
            coef[_posiciones(n, orden)[unidad]] = 1.0
        return cls(base, orden, coef)

    # ---- Consultas ----
    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def valor(self) -> float:
        return float(self.coeficientes[0])

    def multi_indices(self) -> Tuple[MultiIndice, ...]:
        return multi_indices(self.n, self.orden)

    def coeficiente(self, alfa: Sequence[int]) -> float:
        alfa = tuple(int(a) for a in alfa)
        if len(alfa) != self.n or sum(alfa) > self.orden or min(alfa) < 0:
            raise ErrorDimension(f"multiíndice {alfa} fuera del jet (n={self.n}, K={self.orden})")
        return float(self.coeficientes[_posiciones(self.n, self.orden)[alfa]])

    def derivada(self, alfa: Sequence[int]) -> float:
        """∂^α f en la base."""
        return self.coeficiente(alfa) * _factorial_multi(alfa)

    # ---- Orden ----
    def truncar(self, orden: int) -> "Jet":
        if orden > self.orden:
            raise ErrorDimension(f"no se puede subir el orden {self.orden} -> {orden}")
        total = len(multi_indices(self.n, orden))
        return Jet(self.base, orden, self.coeficientes[:total])

    def derivada_parcial(self, i: int) -> "Jet":
        """Jet de ∂f/∂x_i, de orden K-1."""
        if self.orden < 1:
            raise ErrorDimension("un jet de orden 0 no tiene derivadas")
        destino = multi_indices(self.n, self.orden - 1)
        pos = _posiciones(self.n, self.orden)
        coef = np.empty(len(destino))
        for k, alfa in enumerate(destino):
            mas = tuple(a + (1 if j == i else 0) for j, a in enumerate(alfa))
            coef[k] = (alfa[i] + 1) * self.coeficientes[pos[mas]]
        return Jet(self.base, self.orden - 1, coef)

    # ---- Aritmética ----
    def _alinear(self, otro: Union["Jet", Escalar]) -> Tuple["Jet", "Jet"]:
        if not isinstance(otro, Jet):
            return self, Jet.constante(self.base, self.orden, float(otro))
        if otro.base != self.base:
            raise ErrorDimension("jets con bases distintas")
        orden = min(self.orden, otro.orden)
        a = self if self.orden == orden else self.truncar(orden)
        b = otro if otro.orden == orden else otro.truncar(orden)
        return a, b

    def __add__(self, otro):
        a, b = self._alinear(otro)
        return Jet(a.base, a.orden, a.coeficientes + b.coeficientes)

    __radd__ = __add__

    def __sub__(self, otro):
        a, b = self._alinear(otro)
        return Jet(a.base, a.orden, a.coeficientes - b.coeficientes)

    def __rsub__(self, otro):
        a, b = self._alinear(otro)
        return Jet(a.base, a.orden, b.coeficientes - a.coeficientes)

    def __neg__(self):
        return Jet(self.base, self.orden, -self.coeficientes)

    def __mul__(self, otro):
        a, b = self._alinear(otro)
        ii, jj, kk = _tabla_producto(a.n, a.orden)
        salida = np.zeros(len(a.coeficientes))
        np.add.at(salida, kk, a.coeficientes[ii] * b.coeficientes[jj])
        return Jet(a.base, a.orden, salida)

    __rmul__ = __mul__

    def __truediv__(self, otro):
        a, b = self._alinear(otro)
        b0 = b.coeficientes[0]
        if b0 == 0.0:
            raise ErrorDominio("división por un jet con término constante nulo (polo)")
        pares = _pares_por_destino(a.n, a.orden)
        q = np.zeros(len(a.coeficientes))
        q[0] = a.coeficientes[0] / b0
        for k in range(1, len(q)):
            ii, jj = pares[k]
            q[k] = (a.coeficientes[k] - np.dot(b.coeficientes[ii], q[jj])) / b0
        return Jet(a.base, a.orden, q)

    def __rtruediv__(self, otro):
        return Jet.constante(self.base, self.orden, float(otro)) / self

    # ---- Composición con funciones de una variable ----
    def componer(self, coeficientes_taylor: Sequence[float]) -> "Jet":
        """f∘g con f dada por sus coeficientes de Taylor en g(base) (Horner)."""
        h = self - self.coeficientes[0]
        resultado = Jet.constante(self.base, self.orden, coeficientes_taylor[self.orden])
        for m in range(self.orden - 1, -1, -1):
            resultado = resultado * h + coeficientes_taylor[m]
        return resultado

    def __repr__(self) -> str:
        return f"Jet(base={self.base}, orden={self.orden}, coef={self.coeficientes.tolist()})"


# ---------------- Coeficientes de Taylor de las funciones elementales ----------------
def taylor_funcion(nombre: str, x0: float, orden: int) -> List[float]:
    """Coeficientes f^(m)(x0)/m!, m = 0..orden, de sin, cos, exp, ln y sqrt."""
    if nombre == "exp":
        e = math.exp(x0)
        return [e / math.factorial(m) for m in range(orden + 1)]
    if nombre in ("sin", "cos"):
        s, c = math.sin(x0), math.cos(x0)
        ciclo = [s, c, -s, -c] if nombre == "sin" else [c, -s, -c, s]
        return [ciclo[m % 4] / math.factorial(m) for m in range(orden + 1)]
    if nombre == "ln":
        if x0 <= 0.0:
            raise ErrorDominio(f"ln de un valor no positivo ({x0!r})")
        return [math.log(x0)] + [(-1.0) ** (m + 1) / (m * x0 ** m) for m in range(1, orden + 1)]
    if nombre == "sqrt":
        if x0 < 0.0 or (x0 == 0.0 and orden >= 1):
            raise ErrorDominio(f"sqrt fuera de dominio o no derivable ({x0!r})")
        coef = [math.sqrt(x0)]
        binomio = 1.0
        for m in range(1, orden + 1):
            binomio *= (0.5 - (m - 1)) / m
            coef.append(binomio * x0 ** (0.5 - m))
        return coef
    raise ErrorDominio(f"función desconocida {nombre!r}")
