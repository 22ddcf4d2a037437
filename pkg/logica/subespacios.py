# logica/subespacios.py
"""Utilidades de subespacios: bases ortonormales, núcleos y ángulos principales."""
from __future__ import annotations

import numpy as np
from scipy.linalg import null_space, subspace_angles

from logica.configuracion import TOLERANCIAS


def orientar(base: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Cambia el signo de cada columna para que su primera entrada no nula sea positiva."""
    base = np.array(base, dtype=float, copy=True)
    if base.ndim == 1:
        base = base[:, None]
    for j in range(base.shape[1]):
        col = base[:, j]
        escala = max(1.0, float(np.max(np.abs(col))) if col.size else 1.0)
        for x in col:
            if abs(x) > tol * escala:
                if x < 0:
                    base[:, j] = -col
                break
    return base


def rango(M: np.ndarray, tol: float = TOLERANCIAS.rango) -> int:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def base_columnas(M: np.ndarray, tol: float = TOLERANCIAS.rango) -> np.ndarray:
    """Base ortonormal (orientada) del espacio columna de M."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((M.shape[0], 0))
    r = int(np.sum(s > tol * s[0]))
    return orientar(U[:, :r])


def nucleo(M: np.ndarray, tol: float = TOLERANCIAS.rango) -> np.ndarray:
    return orientar(null_space(np.atleast_2d(M), rcond=tol))


def vectores_singulares_menores(M: np.ndarray, cuantos: int) -> np.ndarray:
    """Los ``cuantos`` vectores singulares derechos de menor valor singular, como columnas."""
    _, _, Vh = np.linalg.svd(np.asarray(M, dtype=float))
    return orientar(Vh[-cuantos:][::-1].T)


def vectores_singulares_mayores(M: np.ndarray, cuantos: int) -> np.ndarray:
    """Los ``cuantos`` vectores singulares izquierdos de mayor valor singular."""
    U, _, _ = np.linalg.svd(np.asarray(M, dtype=float))
    return orientar(U[:, :cuantos])


def distancia_subespacios(A: np.ndarray, B: np.ndarray) -> float:
    """Mayor ángulo principal entre los espacios columna de A y B (π/2 si las dimensiones difieren)."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if rango(A) != rango(B):
        return float(np.pi / 2)
    return float(np.max(subspace_angles(A, B)))


def mismo_subespacio(A: np.ndarray, B: np.ndarray, tol: float = TOLERANCIAS.angulo_subespacio) -> bool:
    return distancia_subespacios(A, B) <= tol


def forma_escalonada(filas: np.ndarray, tol: float = TOLERANCIAS.rango) -> np.ndarray:
    """Forma escalonada reducida de las filas (pivotes en columnas crecientes), sin filas nulas."""
    M = np.array(filas, dtype=float, copy=True)
    if M.size == 0:
        return M
    escala = max(1.0, float(np.max(np.abs(M))))
    fila = 0
    for col in range(M.shape[1]):
        if fila == M.shape[0]:
            break
        k = fila + int(np.argmax(np.abs(M[fila:, col])))
        if abs(M[k, col]) <= tol * escala:
            continue
        M[[fila, k]] = M[[k, fila]]
        M[fila] /= M[fila, col]
        for otra in range(M.shape[0]):
            if otra != fila and M[otra, col] != 0.0:
                M[otra] -= M[otra, col] * M[fila]
        fila += 1
    M = M[:fila]
    M[np.abs(M) <= tol * escala] = 0.0
    return M
