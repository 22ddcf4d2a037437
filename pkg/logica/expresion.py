# logica/expresion.py
"""Mini-lenguaje de expresiones para coeficientes, soluciones y funciones generatrices.

Gramática (descenso recursivo)::

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | base ("^" entero)?
    base   := numero | ident | ident "(" expr ")" | "(" expr ")"

El menos unario abarca un factor completo, así que ``-x^2`` es ``-(x^2)``.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple, Union

from logica.errores import (ErrorDimension, ErrorDominio, ErrorExponente,
                            ErrorIdentificador, ErrorSintaxis)
from logica.jet import Jet, taylor_funcion

log = logging.getLogger(__name__)

FUNCIONES = ("sin", "cos", "exp", "ln", "sqrt")

_FUNCIONES_FLOTANTES = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "ln": math.log,
    "sqrt": math.sqrt,
}


# ---------------- Nodos ----------------
@dataclass(frozen=True)
class Num:
    valor: float


@dataclass(frozen=True)
class Var:
    nombre: str
    indice: int


@dataclass(frozen=True)
class Neg:
    arg: "Nodo"


@dataclass(frozen=True)
class Bin:
    op: str          # "+", "-", "*", "/"
    izq: "Nodo"
    der: "Nodo"


@dataclass(frozen=True)
class Pot:
    base: "Nodo"
    exponente: int


@dataclass(frozen=True)
class Llamada:
    funcion: str
    arg: "Nodo"

Nodo = Union[Num, Var, Neg, Bin, Pot, Llamada]


@dataclass(frozen=True)
class Expresion:
    raiz: Nodo
    variables: Tuple[str, ...]

    def evaluar(self, punto: Sequence[float]) -> float:
        return evaluar(self, punto)

    def jet(self, base: Sequence[float], orden: int) -> Jet:
        return evaluar_jet(self, base, orden)

    def __str__(self) -> str:
        return imprimir(self)


# ---------------- Tokens ----------------
_NUMERO = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_IDENT = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*")
_SIMBOLOS = {"+": "+", "-": "-", "−": "-", "*": "*", "/": "/", "^": "^", "(": "(", ")": ")"}


@dataclass(frozen=True)
class _Token:
    tipo: str        # "num", "ident", "op", "fin"
    texto: str
    byte: int


def _byte(texto: str, i: int) -> int:
    return len(texto[:i].encode("utf-8"))


def _tokenizar(texto: str) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    while i < len(texto):
        c = texto[i]
        if c.isspace():
            i += 1
            continue
        m = _NUMERO.match(texto, i)
        if m and (c.isdigit() or c == "."):
            tokens.append(_Token("num", m.group(0), _byte(texto, i)))
            i = m.end()
            continue
        m = _IDENT.match(texto, i)
        if m:
            tokens.append(_Token("ident", m.group(0), _byte(texto, i)))
            i = m.end()
            continue
        if c in _SIMBOLOS:
            tokens.append(_Token("op", _SIMBOLOS[c], _byte(texto, i)))
            i += 1
            continue
        raise ErrorSintaxis(f"carácter inesperado {c!r}", _byte(texto, i))
    tokens.append(_Token("fin", "", _byte(texto, len(texto))))
    return tokens


# ---------------- Parser ----------------
class _Parser:
    def __init__(self, texto: str, variables: Sequence[str]):
        self.tokens = _tokenizar(texto)
        self.pos = 0
        self.variables = tuple(variables)

    def actual(self) -> _Token:
        return self.tokens[self.pos]

    def avanzar(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def es_op(self, *ops: str) -> bool:
        tok = self.actual()
        return tok.tipo == "op" and tok.texto in ops

    def esperar(self, op: str) -> None:
        if not self.es_op(op):
            tok = self.actual()
            raise ErrorSintaxis(f"se esperaba {op!r} y llegó {tok.texto or 'fin de texto'!r}", tok.byte)
        self.avanzar()

    def expr(self) -> Nodo:
        nodo = self.term()
        while self.es_op("+", "-"):
            op = self.avanzar().texto
            nodo = Bin(op, nodo, self.term())
        return nodo

    def term(self) -> Nodo:
        nodo = self.factor()
        while self.es_op("*", "/"):
            op = self.avanzar().texto
            nodo = Bin(op, nodo, self.factor())
        return nodo

    def factor(self) -> Nodo:
        if self.es_op("-"):
            self.avanzar()
            return Neg(self.factor())
        nodo = self.base()
        if self.es_op("^"):
            self.avanzar()
            nodo = Pot(nodo, self.exponente())
        return nodo

    def exponente(self) -> int:
        signo = 1
        if self.es_op("-"):
            self.avanzar()
            signo = -1
        tok = self.actual()
        if tok.tipo != "num":
            raise ErrorExponente("el exponente de '^' debe ser un entero literal", tok.byte)
        if not tok.texto.isdigit():
            raise ErrorExponente(f"exponente no entero {tok.texto!r}", tok.byte)
        self.avanzar()
        return signo * int(tok.texto)

    def base(self) -> Nodo:
        tok = self.actual()
        if tok.tipo == "num":
            self.avanzar()
            return Num(float(tok.texto))
        if tok.tipo == "ident":
            self.avanzar()
            if tok.texto in FUNCIONES:
                if not self.es_op("("):
                    raise ErrorSintaxis(f"la función {tok.texto!r} requiere argumento entre paréntesis",
                                        self.actual().byte)
                self.avanzar()
                arg = self.expr()
                self.esperar(")")
                return Llamada(tok.texto, arg)
            if tok.texto not in self.variables:
                raise ErrorIdentificador(f"identificador desconocido {tok.texto!r}", tok.byte)
            return Var(tok.texto, self.variables.index(tok.texto))
        if self.es_op("("):
            self.avanzar()
            nodo = self.expr()
            self.esperar(")")
            return nodo
        raise ErrorSintaxis(f"se esperaba un operando y llegó {tok.texto or 'fin de texto'!r}", tok.byte)


def analizar(texto: str, variables: Sequence[str]) -> Expresion:
    """Convierte ``texto`` en un árbol sobre las variables declaradas."""
    if texto is None or not texto.strip():
        raise ErrorSintaxis("expresión vacía", 0)
    parser = _Parser(texto, variables)
    try:
        raiz = parser.expr()
        if parser.actual().tipo != "fin":
            tok = parser.actual()
            raise ErrorSintaxis(f"texto sobrante {tok.texto!r}", tok.byte)
    except ErrorSintaxis as e:
        log.debug("fallo de análisis en %r: %s", texto, e)
        raise
    return Expresion(raiz, tuple(variables))


# ---------------- Evaluación ----------------
def potencia_entera(base, n: int, uno):
    """Exponenciación binaria; la misma secuencia de operaciones para floats y jets."""
    if n < 0:
        return _dividir(uno, potencia_entera(base, -n, uno))
    resultado = uno
    factor = base
    while n:
        if n & 1:
            resultado = resultado * factor
        n >>= 1
        if n:
            factor = factor * factor
    return resultado


def _recorrer(nodo: Nodo, hoja: Callable, uno, funcion: Callable):
    match nodo:
        case Num() | Var():
            return hoja(nodo)
        case Neg(arg=arg):
            return -_recorrer(arg, hoja, uno, funcion)
        case Bin(op=op, izq=izq, der=der):
            a = _recorrer(izq, hoja, uno, funcion)
            b = _recorrer(der, hoja, uno, funcion)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            return _dividir(a, b)
        case Pot(base=base, exponente=n):
            return potencia_entera(_recorrer(base, hoja, uno, funcion), n, uno)
        case Llamada(funcion=nombre, arg=arg):
            return funcion(nombre, _recorrer(arg, hoja, uno, funcion))
    raise TypeError(f"nodo desconocido {nodo!r}")


def _dividir(a, b):
    if isinstance(b, float) and b == 0.0:
        raise ErrorDominio("división por cero")
    return a / b


def _funcion_flotante(nombre: str, x: float) -> float:
    if nombre == "ln" and x <= 0.0:
        raise ErrorDominio(f"ln de un valor no positivo ({x!r})")
    if nombre == "sqrt" and x < 0.0:
        raise ErrorDominio(f"sqrt de un valor negativo ({x!r})")
    try:
        return _FUNCIONES_FLOTANTES[nombre](x)
    except (OverflowError, ValueError) as e:
        raise ErrorDominio(f"{nombre}({x!r}): {e}") from e


def _comprobar_punto(e: Expresion, punto: Sequence[float]) -> Tuple[float, ...]:
    punto = tuple(float(v) for v in punto)
    if len(punto) != len(e.variables):
        raise ErrorDimension(f"punto de dimensión {len(punto)} para variables {e.variables}")
    return punto


def evaluar(e: Expresion, punto: Sequence[float]) -> float:
    """Evaluación en doble precisión; los errores de dominio se lanzan."""
    punto = _comprobar_punto(e, punto)

    def hoja(nodo):
        return nodo.valor if isinstance(nodo, Num) else punto[nodo.indice]

    try:
        valor = _recorrer(e.raiz, hoja, 1.0, _funcion_flotante)
    except (OverflowError, ZeroDivisionError) as err:
        raise ErrorDominio(f"desbordamiento o división por cero: {err}") from err
    if not math.isfinite(valor):
        raise ErrorDominio(f"resultado no finito ({valor!r})")
    return valor


def evaluar_jet(e: Expresion, base: Sequence[float], orden: int) -> Jet:
    """Jet de orden ``orden`` de la expresión en ``base``."""
    if orden < 0:
        raise ErrorDimension("el orden del jet debe ser >= 0")
    base = _comprobar_punto(e, base)
    uno = Jet.constante(base, orden, 1.0)

    def hoja(nodo):
        if isinstance(nodo, Num):
            return Jet.constante(base, orden, nodo.valor)
        return Jet.coordenada(base, orden, nodo.indice)

    def funcion(nombre: str, g: Jet) -> Jet:
        return g.componer(taylor_funcion(nombre, g.valor, orden))

    try:
        jet = _recorrer(e.raiz, hoja, uno, funcion)
    except (OverflowError, ZeroDivisionError) as err:
        raise ErrorDominio(f"desbordamiento o división por cero: {err}") from err
    if not all(math.isfinite(c) for c in jet.coeficientes):
        raise ErrorDominio("jet con coeficientes no finitos")
    return jet


def derivada(e: Expresion, punto: Sequence[float], alfa: Sequence[int]) -> float:
    return evaluar_jet(e, punto, sum(alfa)).derivada(alfa)


# ---------------- Impresión canónica ----------------
def _imprimir_nodo(nodo: Nodo) -> str:
    match nodo:
        case Num(valor=v):
            return repr(v)
        case Var(nombre=nombre):
            return nombre
        case Neg(arg=arg):
            return f"(-{_imprimir_nodo(arg)})"
        case Bin(op=op, izq=izq, der=der):
            return f"({_imprimir_nodo(izq)} {op} {_imprimir_nodo(der)})"
        case Pot(base=base, exponente=n):
            return f"({_imprimir_nodo(base)}^{n})"
        case Llamada(funcion=nombre, arg=arg):
            return f"{nombre}({_imprimir_nodo(arg)})"
    raise TypeError(f"nodo desconocido {nodo!r}")


def imprimir(e: Expresion) -> str:
    """Forma totalmente parentizada; ``analizar(imprimir(e))`` reproduce el árbol."""
    return _imprimir_nodo(e.raiz)

