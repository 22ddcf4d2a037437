# test_simplectico.py
import numpy as np
import pytest

from algoritmos.simplectico import (EspacioSimplectico, TipoOperador, autoadjunto_aleatorio, clasificar_dim4,
                                    es_autoadjunto, es_lagrangiano, espacio_estandar,
                                    nilpotente_desde_lagrangiano, operador_suma_directa, producto_jordan,
                                    simplectica_aleatoria, subespacio_ciclico)
from logica.errores import (ErrorDegenerado, ErrorDimension, ErrorEntrada, ErrorNoAutoadjunto,
                            ErrorNoLagrangiano)
from logica.subespacios import base_columnas, mismo_subespacio, nucleo, rango
from logica.zeta import TipoZeta

I4 = np.eye(4)
ROTACION = np.array([[0.0, -1.0], [1.0, 0.0]])
NILPOTENTE = np.array([[0.0, 1.0], [0.0, 0.0]])
REFLEXION = np.diag([1.0, -1.0])


@pytest.fixture
def sp():
    return espacio_estandar(2)


def _conjugado(rng, F):
    S = simplectica_aleatoria(rng, 2)
    return np.linalg.solve(S, operador_suma_directa(F) @ S)


# ---------------- Espacio ----------------
def test_espacio_estandar_de_dimension_dos():
    assert np.array_equal(espacio_estandar(1).J, [[0.0, 1.0], [-1.0, 0.0]])


def test_j_estandar_al_cuadrado(sp):
    assert np.array_equal(sp.J @ sp.J, -I4)


@pytest.mark.parametrize("J, error", [
    (np.array([[0.0, 1.0], [1.0, 0.0]]), ErrorEntrada),
    (np.zeros((3, 3)), ErrorDimension),
    (np.zeros((2, 2)), ErrorDegenerado),
])
def test_formas_invalidas(J, error):
    with pytest.raises(error):
        EspacioSimplectico(J)


def test_simplectica_aleatoria_preserva_la_forma(sp, rng):
    S = simplectica_aleatoria(rng, 2)
    assert np.allclose(S.T @ sp.J @ S, sp.J, atol=1e-12)


# ---------------- Autoadjuntos ----------------
def test_escalares_son_autoadjuntos_y_j_no(sp):
    assert es_autoadjunto(sp, 2.5 * I4)
    assert not es_autoadjunto(sp, sp.J)


def test_dimension_del_operador(sp):
    with pytest.raises(ErrorDimension):
        es_autoadjunto(sp, np.eye(3))


def test_producto_jordan_con_la_identidad(rng):
    A = autoadjunto_aleatorio(rng)
    assert np.allclose(producto_jordan(A, I4), A)


def test_producto_jordan_es_cerrado(sp, rng):
    for _ in range(500):
        A = autoadjunto_aleatorio(rng)
        B = autoadjunto_aleatorio(rng)
        C = producto_jordan(A, B)
        escala = 1.0 + float(np.max(np.abs(A))) * float(np.max(np.abs(B)))
        assert es_autoadjunto(sp, C, 1e-9 * escala)


def test_suma_directa(sp):
    assert np.array_equal(operador_suma_directa(np.eye(2)), I4)
    B = operador_suma_directa(NILPOTENTE)
    assert es_autoadjunto(sp, B)
    assert np.array_equal(B @ B, np.zeros((4, 4)))


# ---------------- Subespacios cíclicos y planos ----------------
def test_ciclico_de_la_identidad(sp):
    assert subespacio_ciclico(sp, I4, [1.0, 2.0, 0.0, -1.0]).shape == (4, 1)


def test_ciclico_de_vector_nulo(sp):
    with pytest.raises(ErrorEntrada):
        subespacio_ciclico(sp, I4, np.zeros(4))


def test_subespacios_ciclicos_son_isotropos(sp, rng):
    for _ in range(100):
        A = autoadjunto_aleatorio(rng)
        Q = subespacio_ciclico(sp, A, rng.normal(size=4))
        assert Q.shape[1] <= 2
        assert float(np.max(np.abs(sp.gram(Q)))) <= 1e-8


def test_nucleo_e_imagen_son_ortogonales(sp, rng):
    for _ in range(100):
        F = np.outer(rng.normal(size=2), rng.normal(size=2))
        A = _conjugado(rng, F)
        K = nucleo(A)
        Im = base_columnas(A)
        assert K.shape[1] == 2 and Im.shape[1] == 2
        assert float(np.max(np.abs(K.T @ sp.J @ Im))) <= 1e-9


@pytest.mark.parametrize("columnas, esperado", [
    ([[1, 0], [0, 1], [0, 0], [0, 0]], True),     # span{e1, e2}
    ([[1, 0], [0, 0], [0, 1], [0, 0]], False),    # span{e1, e3}
    ([[1], [0], [0], [0]], False),
])
def test_es_lagrangiano(sp, columnas, esperado):
    assert es_lagrangiano(sp, np.array(columnas, dtype=float)) is esperado


def test_lagrangiano_con_vectores_dependientes(sp):
    with pytest.raises(ErrorEntrada):
        es_lagrangiano(sp, np.array([[1, 2], [0, 0], [1, 2], [0, 0]], dtype=float))


# ---------------- Nilpotente desde un plano lagrangiano ----------------
W_ESTANDAR = np.array([[1, 0], [0, 1], [0, 0], [0, 0]], dtype=float)
U_ESTANDAR = np.array([[0, 0], [0, 0], [1, 0], [0, 1]], dtype=float)


def test_nilpotente_desde_lagrangiano(sp):
    B = nilpotente_desde_lagrangiano(sp, W_ESTANDAR, U_ESTANDAR)
    assert float(np.max(np.abs(B))) > 0.1
    assert np.allclose(B @ B, 0.0, atol=1e-12)
    assert es_autoadjunto(sp, B)
    assert mismo_subespacio(nucleo(B), W_ESTANDAR)
    res = clasificar_dim4(sp, I4 + B)
    assert res.tipo is TipoOperador.PARABOLICO
    assert mismo_subespacio(res.W, W_ESTANDAR)


def test_nilpotente_con_complemento_no_lagrangiano(sp):
    U = np.array([[0, 1], [0, 0], [1, 0], [0, 1]], dtype=float)
    B = nilpotente_desde_lagrangiano(sp, W_ESTANDAR, U, exigir_no_lagrangiano=True)
    assert es_autoadjunto(sp, B, 1e-10)
    assert np.allclose(B @ B, 0.0, atol=1e-12)
    assert mismo_subespacio(nucleo(B), W_ESTANDAR)


def test_nilpotente_exige_complemento_no_lagrangiano(sp):
    with pytest.raises(ErrorDegenerado):
        nilpotente_desde_lagrangiano(sp, W_ESTANDAR, U_ESTANDAR, exigir_no_lagrangiano=True)


def test_nilpotente_con_w_no_lagrangiano(sp):
    W = np.array([[1, 0], [0, 0], [0, 1], [0, 0]], dtype=float)
    with pytest.raises(ErrorNoLagrangiano):
        nilpotente_desde_lagrangiano(sp, W, U_ESTANDAR)


# ---------------- Clasificación ----------------
def test_escalar(sp):
    res = clasificar_dim4(sp, 3.0 * I4)
    assert res.tipo is TipoOperador.ESCALAR
    assert res.tipo_zeta is None


def test_no_autoadjunto(sp):
    with pytest.raises(ErrorNoAutoadjunto):
        clasificar_dim4(sp, sp.J)


def test_solo_en_dimension_cuatro():
    with pytest.raises(ErrorDimension):
        clasificar_dim4(espacio_estandar(1), np.eye(2))


def test_eliptico_da_estructura_compleja(sp, rng):
    for _ in range(50):
        res = clasificar_dim4(sp, _conjugado(rng, ROTACION))
        assert res.tipo is TipoOperador.ELIPTICO
        assert res.tipo_zeta is TipoZeta.MENOS
        assert np.allclose(res.estructura_compleja @ res.estructura_compleja, -I4, atol=1e-8)


def test_hiperbolico_con_planos_ortogonales(sp, rng):
    F = np.array([[2.0, 1.0], [0.0, -1.0]])
    for _ in range(50):
        res = clasificar_dim4(sp, _conjugado(rng, F))
        assert res.tipo is TipoOperador.HIPERBOLICO
        P1, P2 = res.planos_propios
        assert float(np.max(np.abs(sp.gram(P1, P2)))) <= 1e-8
        assert not es_lagrangiano(sp, P1, 1e-6)
        assert not es_lagrangiano(sp, P2, 1e-6)
        assert sorted(z.real for z in res.valores_propios) == pytest.approx([-1.0, 2.0])


def test_hiperbolico_estandar(sp):
    res = clasificar_dim4(sp, operador_suma_directa(REFLEXION))
    assert res.discriminante == pytest.approx(4.0)
    P1, P2 = res.planos_propios
    assert mismo_subespacio(P1, np.array([[1, 0], [0, 0], [0, 1], [0, 0]], dtype=float))
    assert mismo_subespacio(P2, np.array([[0, 0], [1, 0], [0, 0], [0, 1]], dtype=float))


def test_parabolico_con_plano_lagrangiano(sp, rng):
    F = np.array([[1.0, 1.0], [0.0, 1.0]])
    for _ in range(50):
        res = clasificar_dim4(sp, _conjugado(rng, F))
        assert res.tipo is TipoOperador.PARABOLICO
        assert es_lagrangiano(sp, res.W, 1e-7)
        assert mismo_subespacio(res.W, res.imagen, 1e-6)
        assert np.allclose(res.generador @ res.generador, 0.0, atol=1e-8)


@pytest.mark.parametrize("F, tipo", [(ROTACION, TipoOperador.ELIPTICO), (NILPOTENTE, TipoOperador.PARABOLICO),
                                     (REFLEXION, TipoOperador.HIPERBOLICO)])
@pytest.mark.parametrize("s, t", [(0.0, 1.0), (2.0, -3.0), (-1.5, 0.5)])
def test_forma_normal_s_mas_t_b(sp, rng, F, tipo, s, t):
    B = _conjugado(rng, F)
    res = clasificar_dim4(sp, s * I4 + t * B)
    assert res.tipo is tipo
    assert np.mean([z.real for z in res.valores_propios]) == pytest.approx(s, abs=1e-8)


def test_lagrangianos_que_cortan_w_en_una_recta_son_ciclicos(sp, rng):
    A = operador_suma_directa(np.array([[1.0, 1.0], [0.0, 1.0]]))
    W = clasificar_dim4(sp, A).W
    for _ in range(100):
        w = W @ rng.normal(size=2)
        complemento = nucleo((sp.J @ w)[None, :])
        v = complemento @ rng.normal(size=3)
        L = np.column_stack([w, v])
        assert es_lagrangiano(sp, L, 1e-9)
        assert rango(np.column_stack([L, A @ L]), 1e-9) == 2
