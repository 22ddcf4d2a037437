# test_expresion.py
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from logica.errores import (ErrorDimension, ErrorDominio, ErrorExponente,
                            ErrorIdentificador, ErrorSintaxis)
from logica.expresion import (Bin, Expresion, Llamada, Neg, Num, Pot, Var, analizar,
                              derivada, evaluar, evaluar_jet, imprimir)
from logica.jet import Jet, multi_indices

VARS = ("x1", "x2")


# ---------------- Análisis y evaluación ----------------
def test_evalua_polinomio():
    e = analizar("x1^2 - x2^2", VARS)
    assert evaluar(e, (3.0, 1.0)) == 8.0


def test_menos_unario_abarca_la_potencia():
    e = analizar("-x^2", ("x",))
    assert evaluar(e, (3.0,)) == -9.0


def test_precedencia_y_asociatividad():
    e = analizar("8/2/2 - 1 - 1 + 2*3^2", ("x",))
    assert evaluar(e, (0.0,)) == 2.0 - 2.0 + 18.0


def test_funciones_elementales():
    e = analizar("sin(x)^2 + cos(x)^2 + exp(ln(2)) + sqrt(9)", ("x",))
    assert evaluar(e, (0.7,)) == pytest.approx(6.0, abs=1e-14)


def test_exponente_negativo():
    e = analizar("x^-2", ("x",))
    assert evaluar(e, (2.0,)) == 0.25


@pytest.mark.parametrize("texto, punto", [("x1^-1", (0.0, 1.0)), ("(x1^2)^-1", (1e-200, 0.0)),
                                          ("x2 + 3*x1^-3", (-0.0, 2.0))])
def test_potencia_negativa_de_cero(texto, punto):
    e = analizar(texto, VARS)
    with pytest.raises(ErrorDominio):
        evaluar(e, punto)
    with pytest.raises(ErrorDominio):
        evaluar_jet(e, punto, 1)


@pytest.mark.parametrize("texto, desplazamiento", [("1+", 2), ("", 0), ("(x1", 3), ("x1 $ 2", 3)])
def test_error_de_sintaxis_lleva_desplazamiento(texto, desplazamiento):
    with pytest.raises(ErrorSintaxis) as info:
        analizar(texto, VARS)
    assert info.value.desplazamiento == desplazamiento
    assert f"byte {desplazamiento}" in str(info.value)


def test_identificador_desconocido():
    with pytest.raises(ErrorIdentificador) as info:
        analizar("x1 + z", VARS)
    assert info.value.desplazamiento == 5


@pytest.mark.parametrize("texto", ["x1^1.5", "x1^x2"])
def test_exponente_no_entero(texto):
    with pytest.raises(ErrorExponente):
        analizar(texto, VARS)


@pytest.mark.parametrize("texto, punto", [("ln(x1)", (0.0, 1.0)), ("sqrt(x1)", (-1.0, 0.0)),
                                          ("1/x2", (1.0, 0.0)), ("x1^-1", (0.0, 1.0))])
def test_errores_de_dominio(texto, punto):
    with pytest.raises(ErrorDominio):
        evaluar(analizar(texto, VARS), punto)


def test_dimension_del_punto():
    with pytest.raises(ErrorDimension):
        evaluar(analizar("x1", VARS), (1.0,))


# ---------------- Jets ----------------
def test_orden_de_multi_indices():
    assert multi_indices(2, 2) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def test_jet_de_un_producto():
    jet = evaluar_jet(analizar("x1*x2 + x1^3", VARS), (1.0, 2.0), 3)
    assert jet.valor == 3.0
    assert jet.derivada((1, 0)) == pytest.approx(5.0)
    assert jet.derivada((1, 1)) == pytest.approx(1.0)
    assert jet.derivada((3, 0)) == pytest.approx(6.0)
    assert jet.derivada((0, 2)) == 0.0


def test_jet_coordenada_y_constante():
    x = Jet.coordenada((0.5, -1.0), 2, 1)
    c = Jet.constante((0.5, -1.0), 2, 4.0)
    producto = x * c
    assert producto.valor == -4.0
    assert producto.derivada((0, 1)) == 4.0


@pytest.mark.parametrize("texto", ["sin(x1*x2)", "exp(x1)/(1 + x2^2)", "ln(2 + x1) * sqrt(3 + x2)",
                                   "cos(x1 - x2)^3"])
def test_jet_contra_diferencias_finitas(texto):
    e = analizar(texto, VARS)
    p = np.array([0.3, -0.4])
    h1, h2 = 1e-5, 1e-4
    jet = evaluar_jet(e, p, 2)
    for i, alfa in enumerate([(1, 0), (0, 1)]):
        d = np.eye(2)[i]
        fd = (evaluar(e, p + h1 * d) - evaluar(e, p - h1 * d)) / (2 * h1)
        assert jet.derivada(alfa) == pytest.approx(fd, rel=1e-6, abs=1e-8)
    fd_xy = (evaluar(e, p + h2 * np.array([1, 1])) - evaluar(e, p + h2 * np.array([1, -1]))
             - evaluar(e, p + h2 * np.array([-1, 1])) + evaluar(e, p - h2 * np.array([1, 1]))) / (4 * h2 ** 2)
    assert jet.derivada((1, 1)) == pytest.approx(fd_xy, rel=1e-5, abs=1e-6)


def test_derivada_directa():
    e = analizar("x1^4", VARS)
    assert derivada(e, (2.0, 0.0), (2, 0)) == pytest.approx(48.0)


def test_jet_fuera_de_dominio():
    with pytest.raises(ErrorDominio):
        evaluar_jet(analizar("ln(x1)", VARS), (-1.0, 0.0), 2)


_acotados = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False, allow_infinity=False)

_hojas_suaves = st.one_of(_acotados.map(Num), st.sampled_from([Var("x1", 0), Var("x2", 1)]))


def _compuestos_suaves(hijos):
    return st.one_of(
        hijos.map(Neg),
        st.builds(Bin, st.sampled_from("+-*"), hijos, hijos),
        st.builds(Pot, hijos, st.integers(min_value=0, max_value=3)),
        st.builds(Llamada, st.sampled_from(["sin", "cos", "exp"]), hijos),
    )


@given(st.recursive(_hojas_suaves, _compuestos_suaves, max_leaves=8), st.tuples(_acotados, _acotados))
def test_jet_de_orden_cero_es_la_evaluacion(raiz, punto):
    e = Expresion(raiz, VARS)
    try:
        valor = evaluar(e, punto)
    except ErrorDominio:
        assume(False)
    assert evaluar_jet(e, punto, 0).valor == valor


_tabla = st.lists(st.floats(min_value=-1.0, max_value=1.0, allow_nan=False), min_size=10, max_size=10)


def _jet(coef):
    return Jet((0.3, -0.2), 3, np.array(coef))


def _cerca(x, y, cota):
    return np.all(np.abs(x.coeficientes - y.coeficientes) <= 1e-14 * (1.0 + cota.coeficientes))


@given(_tabla, _tabla, _tabla)
def test_suma_y_producto_de_jets_conmutan_y_asocian(a, b, c):
    a, b, c = _jet(a), _jet(b), _jet(c)
    ma, mb, mc = (_jet(np.abs(j.coeficientes)) for j in (a, b, c))
    cota_suma = ma + mb + mc
    cota_producto = (ma * mb) * mc
    assert _cerca(a + b, b + a, cota_suma)
    assert _cerca((a + b) + c, a + (b + c), cota_suma)
    assert _cerca(a * b, b * a, ma * mb)
    assert _cerca((a * b) * c, a * (b * c), cota_producto)


def test_jet_de_la_exponencial_en_el_origen():
    jet = evaluar_jet(analizar("exp(x1)", VARS), (0.0, 0.0), 3)
    assert [jet.coeficiente((k, 0)) for k in range(4)] == pytest.approx([1.0, 1.0, 0.5, 1.0 / 6.0], abs=1e-15)
    assert jet.coeficiente((1, 1)) == 0.0
    assert jet.coeficiente((0, 3)) == 0.0


@given(_acotados)
def test_jet_de_la_exponencial(x0):
    jet = evaluar_jet(analizar("exp(x1)", VARS), (x0, 0.5), 3)
    esperado = [math.exp(x0) / math.factorial(k) for k in range(4)]
    assert [jet.coeficiente((k, 0)) for k in range(4)] == pytest.approx(esperado, rel=1e-14)


# ---------------- Impresión canónica ----------------
def test_impresion_parentizada():
    e = analizar("-x1^2 + 2*x2", VARS)
    assert imprimir(e) == "((-(x1^2)) + (2.0 * x2))"


_hojas = st.one_of(
    st.floats(min_value=0.0, max_value=1e6, allow_nan=False, allow_infinity=False).map(abs).map(Num),
    st.sampled_from([Var("x1", 0), Var("x2", 1)]),
)


def _compuestos(hijos):
    return st.one_of(
        hijos.map(Neg),
        st.builds(Bin, st.sampled_from("+-*/"), hijos, hijos),
        st.builds(Pot, hijos, st.integers(min_value=-3, max_value=4)),
        st.builds(Llamada, st.sampled_from(["sin", "cos", "exp", "ln", "sqrt"]), hijos),
    )


@given(st.recursive(_hojas, _compuestos, max_leaves=12))
def test_imprimir_y_analizar_reproducen_el_arbol(raiz):
    e = Expresion(raiz, VARS)
    assert analizar(imprimir(e), VARS) == e


def test_expresion_se_puede_evaluar_como_metodo():
    e = analizar("x1 + x2", VARS)
    assert e.evaluar((1.0, 2.0)) == 3.0
    assert math.isclose(e.jet((1.0, 2.0), 1).derivada((0, 1)), 1.0)
