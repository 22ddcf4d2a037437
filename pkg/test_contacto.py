# test_contacto.py
import itertools

import numpy as np
import pytest

from algoritmos.contacto import (MARCO, VARIABLES, CampoContacto, CampoExpresiones, CartaContacto,
                                 PuntoDarboux, ValorCampo, campo_contacto, corchete_lagrange,
                                 corchete_lagrange_jet, defecto_campo_contacto, es_campo_contacto,
                                 gram_curvatura, valor_forma_contacto, valor_generatriz)
from logica.errores import ErrorDimension, ErrorNumerico
from logica.expresion import analizar, evaluar_jet

CARTA = CartaContacto()
J_CURVATURA = np.array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=float)
ORIGEN = PuntoDarboux(0.0, 0.0, 0.0, 0.0, 0.0)


def expr(texto):
    return analizar(texto, VARIABLES)


def punto_aleatorio(rng):
    return PuntoDarboux.desde(rng.uniform(-1, 1, size=5))


def polinomio_aleatorio(rng, grado=2):
    """Texto de un polinomio con coeficientes enteros pequeños en las cinco variables."""
    terminos = []
    for d in range(grado + 1):
        for mono in itertools.combinations_with_replacement(VARIABLES, d):
            c = int(rng.integers(-3, 4))
            if c:
                terminos.append("*".join([f"({c})", *mono]))
    return " + ".join(terminos) or "0"


# ---------------- Forma de contacto ----------------
def test_forma_en_du():
    pt = PuntoDarboux(1.0, 2.0, 3.0, 4.0, 5.0)
    assert valor_forma_contacto(pt, ValorCampo((0, 0, 1, 0, 0), pt)) == 1.0


def test_marco_en_la_distribucion(rng):
    for _ in range(10):
        pt = punto_aleatorio(rng)
        for j in range(4):
            Z = CARTA.desde_marco(pt, np.eye(4)[j])
            assert valor_forma_contacto(pt, Z) == 0.0


def test_forma_en_dx1():
    pt = PuntoDarboux(0.0, 0.0, 0.0, 3.0, 0.0)
    assert valor_forma_contacto(pt, ValorCampo((1, 0, 0, 0, 0), pt)) == -3.0


def test_base_en_el_orden_de_la_carta():
    assert CARTA.base(PuntoDarboux(1.0, 2.0, 3.0, 4.0, 5.0)) == (1.0, 2.0, 3.0, 4.0, 5.0)


def test_campos_del_marco_coinciden_con_la_matriz(rng):
    for _ in range(10):
        pt = punto_aleatorio(rng)
        base = CARTA.base(pt)
        columnas = [[j.valor for j in campo.jets(base, 0)] for campo in CARTA.campos_marco()]
        assert np.array_equal(np.column_stack(columnas), CARTA.marco(pt))


def test_expresion_en_otro_orden_de_variables():
    nu = analizar("x1", ("p1", "p2", "u", "x1", "x2"))
    with pytest.raises(ErrorDimension):
        campo_contacto(CARTA, nu, ORIGEN)
    with pytest.raises(ErrorDimension):
        corchete_lagrange(CARTA, expr("u"), nu, ORIGEN)
    with pytest.raises(ErrorDimension):
        es_campo_contacto(CARTA, CampoContacto(nu), [ORIGEN])


def test_punto_invalido():
    with pytest.raises(ErrorDimension):
        PuntoDarboux.desde([0.0, 1.0])
    with pytest.raises(ErrorNumerico):
        PuntoDarboux(0.0, float("nan"), 0.0, 0.0, 0.0)


# ---------------- Curvatura ----------------
def test_gram_de_curvatura_constante(rng):
    for _ in range(10):
        G = gram_curvatura(CARTA, punto_aleatorio(rng))
        assert np.allclose(G, J_CURVATURA, atol=1e-14)


def test_gram_antisimetrica_e_invertible():
    G = gram_curvatura(CARTA, ORIGEN)
    assert G[0, 2] == -1.0 and G[0, 1] == 0.0
    assert np.array_equal(G.T, -G)
    assert abs(np.linalg.det(G)) == pytest.approx(1.0)


# ---------------- Campos de contacto ----------------
@pytest.mark.parametrize("nu, esperado", [
    ("1", (0.0, 0.0, 1.0, 0.0, 0.0)),
    ("p1", (-1.0, 0.0, 0.0, 0.0, 0.0)),
    ("u", (0.0, 0.0, 0.7, 0.2, -0.3)),
])
def test_campo_contacto_ejemplos(nu, esperado):
    pt = PuntoDarboux(0.5, 1.5, 0.7, 0.2, -0.3)
    assert campo_contacto(CARTA, expr(nu), pt).componentes == pytest.approx(esperado)


def test_du_es_de_contacto(rng):
    puntos = [punto_aleatorio(rng) for _ in range(5)]
    assert es_campo_contacto(CARTA, [expr(t) for t in ("0", "0", "1", "0", "0")], puntos)


def test_dp1_no_es_de_contacto(rng):
    puntos = [punto_aleatorio(rng) for _ in range(5)]
    Z = CampoExpresiones(tuple(expr(t) for t in ("0", "0", "0", "1", "0")))
    assert not es_campo_contacto(CARTA, Z, puntos)
    assert defecto_campo_contacto(CARTA, Z, puntos) == pytest.approx(1.0)


def test_marco_no_es_de_contacto():
    assert not es_campo_contacto(CARTA, MARCO[0], [ORIGEN])


def test_campo_necesita_cinco_componentes():
    with pytest.raises(ErrorDimension):
        CampoExpresiones((expr("1"),))


def test_campos_generados_son_de_contacto(rng):
    for _ in range(20):
        nu = expr(polinomio_aleatorio(rng, 3))
        puntos = [punto_aleatorio(rng) for _ in range(3)]
        assert es_campo_contacto(CARTA, CampoContacto(nu), puntos, 1e-9)


def test_forma_recupera_la_generatriz(rng):
    for _ in range(100):
        nu = expr(polinomio_aleatorio(rng))
        pt = punto_aleatorio(rng)
        X = campo_contacto(CARTA, nu, pt)
        assert valor_forma_contacto(pt, X) == pytest.approx(valor_generatriz(nu, pt), abs=1e-10)


def test_campo_de_un_producto_difiere_en_la_distribucion(rng):
    for _ in range(20):
        h = polinomio_aleatorio(rng)
        nu = polinomio_aleatorio(rng)
        pt = punto_aleatorio(rng)
        X_h_nu = campo_contacto(CARTA, expr(f"({h}) * ({nu})"), pt).como_array()
        X_nu = campo_contacto(CARTA, expr(nu), pt).como_array()
        diferencia = ValorCampo(tuple(X_h_nu - valor_generatriz(expr(h), pt) * X_nu), pt)
        assert abs(valor_forma_contacto(pt, diferencia)) <= 1e-10 * (1.0 + np.max(np.abs(X_h_nu)))


# ---------------- Corchete de Lagrange ----------------
def test_corchete_de_uno_con_u(rng):
    for _ in range(5):
        assert corchete_lagrange(CARTA, expr("1"), expr("u"), punto_aleatorio(rng)) == pytest.approx(1.0)


def test_corchete_de_x1_con_p1(rng):
    # X_x1 = x1∂u + ∂p1, X_p1 = -∂x1, [X_x1, X_p1] = ∂u
    assert corchete_lagrange(CARTA, expr("x1"), expr("p1"), ORIGEN) == 1.0
    for _ in range(5):
        assert corchete_lagrange(CARTA, expr("x1"), expr("p1"), punto_aleatorio(rng)) == pytest.approx(1.0)


def test_corchete_consigo_mismo(rng):
    mu = expr(polinomio_aleatorio(rng))
    assert corchete_lagrange(CARTA, mu, mu, punto_aleatorio(rng)) == pytest.approx(0.0, abs=1e-12)


def test_corchete_antisimetrico_y_lineal(rng):
    for _ in range(30):
        mu, nu1, nu2 = (polinomio_aleatorio(rng) for _ in range(3))
        a, b = rng.uniform(-2, 2, size=2)
        pt = punto_aleatorio(rng)
        directo = corchete_lagrange(CARTA, expr(mu), expr(nu1), pt)
        inverso = corchete_lagrange(CARTA, expr(nu1), expr(mu), pt)
        assert directo == pytest.approx(-inverso, abs=1e-10)
        combinado = corchete_lagrange(CARTA, expr(mu), expr(f"({float(a)!r})*({nu1}) + ({float(b)!r})*({nu2})"), pt)
        otro = corchete_lagrange(CARTA, expr(mu), expr(nu2), pt)
        assert combinado == pytest.approx(a * directo + b * otro, abs=1e-10 * (1 + abs(combinado)))


def test_identidad_de_jacobi(rng):
    for _ in range(20):
        base = tuple(rng.uniform(-1, 1, size=5))
        f, g, h = (evaluar_jet(expr(polinomio_aleatorio(rng)), base, 4) for _ in range(3))
        suma = (corchete_lagrange_jet(f, corchete_lagrange_jet(g, h))
                + corchete_lagrange_jet(g, corchete_lagrange_jet(h, f))
                + corchete_lagrange_jet(h, corchete_lagrange_jet(f, g)))
        assert abs(suma.valor) <= 1e-8
