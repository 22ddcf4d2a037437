# algoritmos/simplectico.py
"""Álgebra lineal simpléctica: operadores autoadjuntos, producto de Jordan y
clasificación en dimensión 4 (escalar, elíptico, hiperbólico, parabólico)."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from logica.configuracion import TOLERANCIAS, Tolerancias
from logica.errores import (ErrorDegenerado, ErrorDimension, ErrorEntrada,
                            ErrorNoAutoadjunto, ErrorNoLagrangiano,
                            ErrorPolinomioMinimo)
from logica.subespacios import (base_columnas, nucleo, rango,
                                vectores_singulares_mayores,
                                vectores_singulares_menores)
from logica.zeta import TipoZeta

log = logging.getLogger(__name__)


# ---------------- Espacio ----------------
@dataclass(frozen=True, eq=False)
class EspacioSimplectico:
    """Espacio de dimensión 2n con forma ⟨v, w⟩ = vᵀ J w."""
    J: np.ndarray

    def __post_init__(self):
        J = np.array(self.J, dtype=float)
        if J.ndim != 2 or J.shape[0] != J.shape[1] or J.shape[0] == 0 or J.shape[0] % 2:
            raise ErrorDimension(f"la matriz de Gram debe ser cuadrada de orden par, llegó {J.shape}")
        if not np.array_equal(J.T, -J):
            raise ErrorEntrada("la matriz de Gram no es antisimétrica")
        escala = max(1.0, float(np.max(np.abs(J))))
        if abs(np.linalg.det(J / escala)) <= 1e-12:
            raise ErrorDegenerado("la forma es degenerada")
        J.flags.writeable = False
        object.__setattr__(self, "J", J)

    @property
    def dimension(self) -> int:
        return self.J.shape[0]

    @property
    def n(self) -> int:
        return self.dimension // 2

    def forma(self, v: Sequence[float], w: Sequence[float]) -> float:
        return float(np.asarray(v, dtype=float) @ self.J @ np.asarray(w, dtype=float))

    def gram(self, X: np.ndarray, Y: Optional[np.ndarray] = None) -> np.ndarray:
        """Matriz ⟨x_i, y_j⟩ entre las columnas de X e Y."""
        X = np.asarray(X, dtype=float)
        Y = X if Y is None else np.asarray(Y, dtype=float)
        return X.T @ self.J @ Y

    def comprobar_operador(self, A: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=float)
        if A.shape != self.J.shape:
            raise ErrorDimension(f"operador {A.shape} sobre un espacio de dimensión {self.dimension}")
        return A


def espacio_estandar(n: int) -> EspacioSimplectico:
    """J[i, n+i] = 1, J[n+i, i] = -1."""
    if n < 1:
        raise ErrorDimension("n debe ser >= 1")
    J = np.zeros((2 * n, 2 * n))
    for i in range(n):
        J[i, n + i] = 1.0
        J[n + i, i] = -1.0
    return EspacioSimplectico(J)


# ---------------- Operadores ----------------
def es_autoadjunto(sp: EspacioSimplectico, A: np.ndarray, tol: float = TOLERANCIAS.autoadjunto) -> bool:
    A = sp.comprobar_operador(A)
    return float(np.max(np.abs(A.T @ sp.J - sp.J @ A))) <= tol


def producto_jordan(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ErrorDimension(f"producto de Jordan entre {A.shape} y {B.shape}")
    return 0.5 * (A @ B + B @ A)


def subespacio_ciclico(sp: EspacioSimplectico, A: np.ndarray, v: Sequence[float],
                       tol: float = TOLERANCIAS.rango) -> np.ndarray:
    """Base ortonormal de Span{A^k v}; columnas."""
    A = sp.comprobar_operador(A)
    v = np.asarray(v, dtype=float)
    if v.shape != (sp.dimension,):
        raise ErrorDimension(f"vector de dimensión {v.shape} en un espacio de dimensión {sp.dimension}")
    norma = np.linalg.norm(v)
    if norma == 0.0:
        raise ErrorEntrada("el subespacio cíclico de un vector nulo no está definido")
    columnas = [v / norma]
    for _ in range(sp.dimension - 1):
        siguiente = A @ columnas[-1]
        norma = np.linalg.norm(siguiente)
        if norma == 0.0:
            break
        columnas.append(siguiente / norma)
    return base_columnas(np.column_stack(columnas), tol)


def operador_suma_directa(F: np.ndarray) -> np.ndarray:
    """F ⊕ F*: bloque diagonal diag(F, Fᵀ), autoadjunto para el J estándar."""
    F = np.asarray(F, dtype=float)
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise ErrorDimension(f"F debe ser cuadrada, llegó {F.shape}")
    n = F.shape[0]
    A = np.zeros((2 * n, 2 * n))
    A[:n, :n] = F
    A[n:, n:] = F.T
    return A


def simplectica_aleatoria(rng: np.random.Generator, n: int, escala: float = 0.3) -> np.ndarray:
    """S = exp(J H) con H simétrica: SᵀJS = J."""
    J = espacio_estandar(n).J
    H = rng.normal(size=(2 * n, 2 * n)) * escala
    return expm(J @ (H + H.T) / 2)


def autoadjunto_aleatorio(rng: np.random.Generator, n: int = 2, conjugar: bool = True) -> np.ndarray:
    """S⁻¹ (F ⊕ Fᵀ) S con F gaussiana y S simpléctica aleatoria."""
    A = operador_suma_directa(rng.normal(size=(n, n)))
    if not conjugar:
        return A
    S = simplectica_aleatoria(rng, n)
    return np.linalg.solve(S, A @ S)


# ---------------- Planos ----------------
def _como_columnas(vectores) -> np.ndarray:
    M = np.asarray(vectores, dtype=float)
    if M.ndim != 2:
        raise ErrorDimension("se esperaba una lista de vectores")
    return M


def es_lagrangiano(sp: EspacioSimplectico, plano, tol: float = TOLERANCIAS.rango) -> bool:
    """``plano``: matriz cuyas columnas generan el subespacio."""
    X = _como_columnas(plano)
    if X.shape[0] != sp.dimension:
        raise ErrorDimension(f"vectores de dimensión {X.shape[0]} en un espacio de dimensión {sp.dimension}")
    if rango(X) != X.shape[1]:
        raise ErrorEntrada("los vectores del plano son linealmente dependientes")
    if X.shape[1] != sp.n:
        return False
    Q, _ = np.linalg.qr(X)
    return float(np.max(np.abs(sp.gram(Q)))) <= tol


def nilpotente_desde_lagrangiano(sp: EspacioSimplectico, W, U, tol: Tolerancias = TOLERANCIAS,
                                 exigir_no_lagrangiano: bool = False) -> np.ndarray:
    """Operador autoadjunto B con B² = 0 y Ker B = W, construido a partir de un
    complemento U: B(u + w) = h(u) con h(u) en ℓ_u = u^⊥ ∩ W.

    La construcción no necesita que U sea no lagrangiano; con
    ``exigir_no_lagrangiano`` se rechaza un U lagrangiano.
    """
    if sp.dimension != 4:
        raise ErrorDimension("la construcción es para dimensión 4")
    W = _como_columnas(W)
    U = _como_columnas(U)
    if W.shape != (4, 2) or U.shape != (4, 2):
        raise ErrorDimension("W y U deben ser planos dados por dos columnas")
    if not es_lagrangiano(sp, W, tol.rango):
        raise ErrorNoLagrangiano("W no es lagrangiano")
    if rango(np.column_stack([W, U]), tol.rango) != 4:
        raise ErrorDegenerado("U no es complementario a W")
    if es_lagrangiano(sp, U, tol.rango):
        if exigir_no_lagrangiano:
            raise ErrorDegenerado("U es lagrangiano")
        log.debug("U lagrangiano: la construcción sigue siendo válida")

    Wq, _ = np.linalg.qr(W)
    m = []
    for i in range(2):
        fila = U[:, i] @ sp.J @ Wq
        c = nucleo(fila[None, :], tol.rango)
        if c.shape[1] != 1:
            raise ErrorDegenerado("ℓ_u no es una recta")
        m.append(Wq @ c[:, 0])
    denominador = sp.forma(U[:, 0], m[1])
    if abs(denominador) <= tol.rango:
        raise ErrorDegenerado("ℓ_u1 y ℓ_u2 coinciden")
    b = sp.forma(m[0], U[:, 1]) / denominador
    # B sobre la base (u1, u2, w1, w2): columnas imagen (m1, b m2, 0, 0)
    P = np.column_stack([U, W])
    imagenes = np.column_stack([m[0], b * m[1], np.zeros(4), np.zeros(4)])
    return imagenes @ np.linalg.inv(P)


# ---------------- Clasificación ----------------
class TipoOperador(Enum):
    ESCALAR = "scalar"
    ELIPTICO = "elliptic"
    HIPERBOLICO = "hyperbolic"
    PARABOLICO = "parabolic"

    @property
    def tipo_zeta(self) -> Optional[TipoZeta]:
        return {TipoOperador.ELIPTICO: TipoZeta.MENOS,
                TipoOperador.PARABOLICO: TipoZeta.CERO,
                TipoOperador.HIPERBOLICO: TipoZeta.MAS}.get(self)


@dataclass(frozen=True, eq=False)
class ResultadoClasificacion:
    tipo: TipoOperador
    polinomio_minimo: Tuple[float, ...]      # coeficientes mónicos, grado decreciente
    valores_propios: Tuple[complex, ...]
    discriminante: Optional[float] = None
    generador: Optional[np.ndarray] = None   # B con B² ∈ {-I, 0, I}
    planos_propios: Optional[Tuple[np.ndarray, np.ndarray]] = None
    W: Optional[np.ndarray] = None
    imagen: Optional[np.ndarray] = None

    @property
    def estructura_compleja(self) -> Optional[np.ndarray]:
        return self.generador if self.tipo is TipoOperador.ELIPTICO else None

    @property
    def tipo_zeta(self) -> Optional[TipoZeta]:
        return self.tipo.tipo_zeta

    def como_dict(self) -> dict:
        def matriz(M):
            return None if M is None else np.asarray(M).tolist()

        return {
            "type": self.tipo.value,
            "algebra": None if self.tipo_zeta is None else self.tipo_zeta.algebra,
            "minimal_polynomial": list(self.polinomio_minimo),
            "eigenvalues": [[float(z.real), float(z.imag)] for z in self.valores_propios],
            "discriminant": self.discriminante,
            "generator": matriz(self.generador),
            "eigenplanes": None if self.planos_propios is None else [matriz(P) for P in self.planos_propios],
            "lagrangian_plane": matriz(self.W),
            "image": matriz(self.imagen),
        }


def clasificar_dim4(sp: EspacioSimplectico, A: np.ndarray, tol: Tolerancias = TOLERANCIAS) -> ResultadoClasificacion:
    if sp.dimension != 4:
        raise ErrorDimension("la clasificación está definida en dimensión 4")
    A = sp.comprobar_operador(A)
    escala = max(1.0, float(np.max(np.abs(A))))
    if not es_autoadjunto(sp, A, tol.autoadjunto * escala):
        raise ErrorNoAutoadjunto("el operador no es autoadjunto respecto de la forma")
    I = np.eye(4)

    centro = float(np.trace(A)) / 4.0
    if float(np.max(np.abs(A - centro * I))) <= tol.rango * escala:
        log.debug("operador escalar %.17g", centro)
        return ResultadoClasificacion(TipoOperador.ESCALAR, (1.0, -centro), (complex(centro),))

    # A² = a A + b I  =>  t² + p t + q con p = -a, q = -b
    A2 = A @ A
    sistema = np.column_stack([A.ravel(), I.ravel()])
    (a, b), *_ = np.linalg.lstsq(sistema, A2.ravel(), rcond=None)
    residuo = float(np.max(np.abs(A2 - a * A - b * I)))
    if residuo > tol.consistencia * escala ** 2:
        raise ErrorPolinomioMinimo(f"A² no está en span{{I, A}} (residuo {residuo:.3e})")
    p, q = -float(a), -float(b)
    d = p * p - 4.0 * q
    banda = tol.banda_parabolica * escala ** 2
    c = -p / 2.0
    log.debug("polinomio mínimo t² + %.6g t + %.6g, discriminante %.6g (banda %.1e)", p, q, d, banda)

    if d < -banda:
        radio = np.sqrt(-d) / 2.0
        B = (A - c * I) / radio
        return ResultadoClasificacion(TipoOperador.ELIPTICO, (1.0, p, q),
                                      (complex(c, radio), complex(c, -radio)), d, B)
    if d > banda:
        raiz = np.sqrt(d) / 2.0
        l1, l2 = c + raiz, c - raiz
        planos = (vectores_singulares_menores(A - l1 * I, 2), vectores_singulares_menores(A - l2 * I, 2))
        return ResultadoClasificacion(TipoOperador.HIPERBOLICO, (1.0, p, q), (complex(l1), complex(l2)), d,
                                      (A - c * I) / raiz, planos_propios=planos)
    N = A - c * I
    W = vectores_singulares_menores(N, 2)
    imagen = vectores_singulares_mayores(N, 2)
    return ResultadoClasificacion(TipoOperador.PARABOLICO, (1.0, p, q), (complex(c), complex(c)), d, N,
                                  W=W, imagen=imagen)
