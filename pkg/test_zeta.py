# test_zeta.py
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from logica.errores import ErrorDimension, ErrorTipoZeta
from logica.expresion import analizar
from logica.zeta import (NumeroZeta, TipoZeta, factorial_fraccionario, multiplicar, partes_potencia,
                         potencia, residuo_cauchy_riemann, residuo_laplace_zeta)

VARS = ("x1", "x2")
TIPOS = list(TipoZeta)


def z(re, im, tipo):
    return NumeroZeta(re, im, tipo)


# ---------------- Aritmética ----------------
def test_cuadrado_dual():
    assert (z(1, 2, TipoZeta.CERO) ** 2).como_tupla() == (1.0, 4.0)


def test_cuadrado_complejo():
    assert (z(0, 1, TipoZeta.MENOS) * z(0, 1, TipoZeta.MENOS)).como_tupla() == (-1.0, 0.0)


def test_cubo_doble():
    assert potencia(z(1, 1, TipoZeta.MAS), 3).como_tupla() == (4.0, 4.0)


@pytest.mark.parametrize("tipo, esperado", [(TipoZeta.MENOS, (-2.0, 2.0)), (TipoZeta.CERO, (1.0, 3.0)),
                                            (TipoZeta.MAS, (4.0, 4.0))])
def test_cubo_en_uno_uno(tipo, esperado):
    assert potencia(z(1, 1, tipo), 3).como_tupla() == esperado


@pytest.mark.parametrize("tipo", TIPOS)
def test_potencia_cero_y_real(tipo):
    assert potencia(z(3, -2, tipo), 0).como_tupla() == (1.0, 0.0)
    assert potencia(z(2, 0, tipo), 5).como_tupla() == (32.0, 0.0)


def test_zeta_nilpotente_en_duales():
    assert potencia(z(0, 1, TipoZeta.CERO), 2).como_tupla() == (0.0, 0.0)


def test_tipos_mezclados():
    with pytest.raises(ErrorTipoZeta):
        multiplicar(z(1, 0, TipoZeta.MAS), z(1, 0, TipoZeta.MENOS))
    with pytest.raises(ErrorTipoZeta):
        z(1, 0, TipoZeta.CERO) + z(1, 0, TipoZeta.MAS)


def test_exponente_negativo():
    with pytest.raises(ErrorDimension):
        potencia(z(1, 1, TipoZeta.MENOS), -1)


def test_tipo_desde_texto():
    assert TipoZeta.desde_texto("Plus") is TipoZeta.MAS
    assert TipoZeta.desde_texto("cero") is TipoZeta.CERO
    assert TipoZeta.MENOS.nombre == "minus"
    with pytest.raises(ErrorTipoZeta):
        TipoZeta.desde_texto("quaternion")


_componente = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)


@given(st.sampled_from(TIPOS), _componente, _componente, _componente, _componente, _componente, _componente)
def test_producto_conmutativo_asociativo_con_unidad(tipo, a, b, c, d, e, f):
    x, y, w = z(a, b, tipo), z(c, d, tipo), z(e, f, tipo)
    assert np.allclose((x * y).como_tupla(), (y * x).como_tupla(), atol=1e-15)
    assert np.allclose(((x * y) * w).como_tupla(), (x * (y * w)).como_tupla(), atol=1e-12)
    assert (x * NumeroZeta.uno(tipo)).como_tupla() == x.como_tupla()


@given(st.sampled_from(TIPOS), st.floats(min_value=-1.4, max_value=1.4), st.floats(min_value=-1.4, max_value=1.4),
       st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=6))
def test_potencia_suma_de_exponentes(tipo, re, im, a, b):
    x = z(re, im, tipo)
    izquierda = potencia(x, a + b).como_tupla()
    derecha = (potencia(x, a) * potencia(x, b)).como_tupla()
    escala = max(1.0, *map(abs, izquierda))
    assert np.allclose(izquierda, derecha, rtol=0.0, atol=1e-12 * escala)


# ---------------- Factorial fraccionario ----------------
@pytest.mark.parametrize("s, l, esperado", [(0, 2, 1.0), (0, 7, 1.0), (2, 2, 3.75), (1, 3, 4 / 3)])
def test_factorial_fraccionario(s, l, esperado):
    assert factorial_fraccionario(s, l) == pytest.approx(esperado)


@pytest.mark.parametrize("s, l", [(-1, 2), (2, 1)])
def test_factorial_fraccionario_fuera_de_rango(s, l):
    with pytest.raises(ErrorDimension):
        factorial_fraccionario(s, l)


# ---------------- Partes de potencias ----------------
def test_partes_del_cuadrado_complejo():
    assert partes_potencia(2, TipoZeta.MENOS) == ([-1.0, 0.0, 1.0], [0.0, 2.0, 0.0])


@pytest.mark.parametrize("tipo", TIPOS)
@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_partes_coinciden_con_la_potencia(tipo, k, rng):
    re, im = partes_potencia(k, tipo)
    for _ in range(10):
        x, y = rng.uniform(-1, 1, size=2)
        w = potencia(z(x, y, tipo), k)
        assert sum(c * x ** r * y ** (k - r) for r, c in enumerate(re)) == pytest.approx(w.re, abs=1e-12)
        assert sum(c * x ** r * y ** (k - r) for r, c in enumerate(im)) == pytest.approx(w.im, abs=1e-12)


@pytest.mark.parametrize("tipo", TIPOS)
def test_partes_homogeneas(tipo, rng):
    k = 4
    for _ in range(10):
        x, y, t = rng.uniform(0.2, 1.5, size=3)
        base = potencia(z(x, y, tipo), k).como_tupla()
        escalada = potencia(z(t * x, t * y, tipo), k).como_tupla()
        assert np.allclose(escalada, np.multiply(base, t ** k), rtol=1e-12, atol=1e-11)


# ---------------- Residuos ----------------
@pytest.mark.parametrize("texto, tipo, esperado", [
    ("x1^2 - x2^2", TipoZeta.MENOS, 0.0),
    ("x1^2", TipoZeta.CERO, 2.0),
    ("x1*x2", TipoZeta.MENOS, 0.0),
    ("x1*x2", TipoZeta.CERO, 0.0),
    ("x1*x2", TipoZeta.MAS, 0.0),
    ("x1^2 + x2^2", TipoZeta.MAS, 0.0),
])
def test_residuo_laplace(texto, tipo, esperado):
    assert residuo_laplace_zeta(analizar(texto, VARS), (0.4, -1.1), tipo) == pytest.approx(esperado, abs=1e-12)


def test_residuo_cauchy_riemann_complejo():
    u = analizar("x1^2 - x2^2", VARS)
    v = analizar("2*x1*x2", VARS)
    assert residuo_cauchy_riemann(u, v, (1.0, 2.0), TipoZeta.MENOS) == pytest.approx((0.0, 0.0))


@pytest.mark.parametrize("tipo", TIPOS)
def test_residuo_cauchy_riemann_constantes(tipo):
    u = analizar("3", VARS)
    v = analizar("-2", VARS)
    assert residuo_cauchy_riemann(u, v, (0.5, 0.5), tipo) == (0.0, 0.0)


def test_no_holomorfa_en_duales():
    u = analizar("x1", VARS)
    v = analizar("0", VARS)
    assert residuo_cauchy_riemann(u, v, (0.3, 0.3), TipoZeta.CERO) == pytest.approx((1.0, 0.0))


@pytest.mark.parametrize("u_texto, v_texto, tipo", [
    ("x1^2 - x2^2", "2*x1*x2", TipoZeta.MENOS),
    ("x1*x2 + x1", "x1^2/2 - x2^2/2 - x2", TipoZeta.MAS),
    ("4", "x1^2 + x2", TipoZeta.CERO),
])
def test_cauchy_riemann_implica_laplace(u_texto, v_texto, tipo, rng):
    u = analizar(u_texto, VARS)
    v = analizar(v_texto, VARS)
    for _ in range(100):
        p = tuple(rng.uniform(-2, 2, size=2))
        assert np.max(np.abs(residuo_cauchy_riemann(u, v, p, tipo))) <= 1e-9
        assert abs(residuo_laplace_zeta(u, p, tipo)) <= 1e-9
