# interfaz/configuracion_trabajo.py
from __future__ import annotations

import argparse
import logging
import math
from dataclasses import dataclass, field, fields
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from algoritmos.monge_ampere import EjeMalla, EspecMalla
from logica.configuracion import SEMILLA_POR_DEFECTO, TOLERANCIAS, Tolerancias
from logica.errores import ErrorDimension, ErrorEntrada
from logica.zeta import TipoZeta

log = logging.getLogger(__name__)

SUBCOMANDOS = ("classify", "verify", "bend", "contact", "rmanifold", "selfadjoint")
REPORTES_RVARIEDAD = ("singular", "points", "check", "nu")

# nombre externo -> campo de Tolerancias
_ALIAS_TOLERANCIA = {
    "rank": "rango",
    "band": "banda_parabolica",
    "selfadjoint": "autoadjunto",
    "structure": "ecuacion_estructura",
    "angle": "angulo_subespacio",
    "consistency": "consistencia",
    "step": "paso_h",
}


# ---------------- Lectores de texto ----------------
def _flotante(texto: str, que: str) -> float:
    try:
        valor = float(texto)
    except ValueError:
        raise ErrorEntrada(f"{que}: {texto!r} no es un número") from None
    if not math.isfinite(valor):
        raise ErrorEntrada(f"{que}: {texto!r} no es finito")
    return valor


def leer_tolerancias(entradas: Optional[Sequence[str]], base: Tolerancias = TOLERANCIAS) -> Tolerancias:
    """``--tol 1e-8`` fija la de consistencia; ``--tol band=1e-6`` cualquier otra."""
    cambios: Dict[str, float] = {}
    validos = {f.name for f in fields(Tolerancias)}
    for entrada in entradas or ():
        if "=" in entrada:
            nombre, valor = (s.strip() for s in entrada.split("=", 1))
        else:
            nombre, valor = "consistency", entrada.strip()
        campo = _ALIAS_TOLERANCIA.get(nombre, nombre)
        if campo not in validos:
            raise ErrorEntrada(f"tolerancia desconocida {nombre!r}")
        numero = _flotante(valor, f"tolerancia {nombre}")
        if numero <= 0:
            raise ErrorEntrada(f"la tolerancia {nombre} debe ser positiva")
        cambios[campo] = numero
    return base.con(**cambios) if cambios else base


def leer_vector(texto: str, n: Optional[int] = None, que: str = "vector") -> Tuple[float, ...]:
    valores = tuple(_flotante(s.strip(), que) for s in texto.split(",") if s.strip())
    if n is not None and len(valores) != n:
        raise ErrorDimension(f"{que}: se esperaban {n} componentes, llegaron {len(valores)}")
    return valores


def leer_matriz(texto: str, n: int = 4) -> np.ndarray:
    """Filas separadas por ';' y entradas por ','."""
    filas = [leer_vector(fila, n, "fila de la matriz") for fila in texto.split(";") if fila.strip()]
    if len(filas) != n:
        raise ErrorDimension(f"la matriz debe tener {n} filas, llegaron {len(filas)}")
    return np.array(filas, dtype=float)


def leer_asignaciones(texto: Optional[str]) -> Dict[str, str]:
    salida: Dict[str, str] = {}
    if not texto:
        return salida
    for parte in texto.split(","):
        if not parte.strip():
            continue
        if "=" not in parte:
            raise ErrorEntrada(f"se esperaba variable=valor y llegó {parte!r}")
        nombre, valor = (s.strip() for s in parte.split("=", 1))
        salida[nombre] = valor
    return salida


def leer_malla(texto: Optional[str], fijos: Optional[str] = None) -> EspecMalla:
    """``"x1=-1:1:5,x2=-1:1:5"``; ``None`` o ``"default"`` da la malla por defecto."""
    valores_fijos = {k: _flotante(v, f"valor fijo de {k}") for k, v in leer_asignaciones(fijos).items()}
    if texto is None or texto.strip() == "default":
        por_defecto = EspecMalla.por_defecto()
        return EspecMalla(por_defecto.ejes, valores_fijos)
    ejes: List[EjeMalla] = []
    for nombre, rango in leer_asignaciones(texto).items():
        partes = rango.split(":")
        if len(partes) != 3:
            raise ErrorEntrada(f"eje {nombre!r}: se esperaba minimo:maximo:cuenta")
        minimo = _flotante(partes[0], f"mínimo de {nombre}")
        maximo = _flotante(partes[1], f"máximo de {nombre}")
        try:
            cuenta = int(partes[2])
        except ValueError:
            raise ErrorEntrada(f"eje {nombre!r}: la cuenta debe ser entera") from None
        if cuenta < 1:
            raise ErrorEntrada(f"eje {nombre!r}: la cuenta debe ser >= 1")
        ejes.append(EjeMalla(nombre, minimo, maximo, cuenta))
    if len(ejes) != 2:
        raise ErrorDimension(f"la malla necesita dos ejes, llegaron {len(ejes)}")
    return EspecMalla((ejes[0], ejes[1]), valores_fijos)


# ---------------- Configuración ----------------
@dataclass(frozen=True, eq=False)
class ConfiguracionTrabajo:
    subcomando: str
    coeficientes: Dict[str, str] = field(default_factory=dict)
    solucion: Optional[str] = None
    malla: Optional[EspecMalla] = None
    fraccion_errores: float = 0.0
    legendre: bool = False
    muestras: int = 50
    tipo: Optional[TipoZeta] = None
    k: Optional[int] = None
    l: Optional[int] = None
    q1: Optional[str] = None
    q2: Optional[str] = None
    forma_normal: bool = False
    prolongar: bool = False
    nu: Optional[str] = None
    mu: Optional[str] = None
    campo: Optional[Tuple[str, ...]] = None
    punto: Optional[Tuple[float, ...]] = None
    matriz: Optional[np.ndarray] = None
    forma: Optional[np.ndarray] = None
    reporte: str = "singular"
    radio: Optional[float] = None
    lectura_literal: bool = False
    permitir_parabolico: bool = False
    tolerancias: Tolerancias = TOLERANCIAS
    semilla: int = SEMILLA_POR_DEFECTO
    salida: Optional[str] = None
    formato: str = "json"
    verbosidad: int = 0

    def __post_init__(self):
        if self.subcomando not in SUBCOMANDOS:
            raise ErrorEntrada(f"subcomando desconocido {self.subcomando!r}")
        faltan = [nombre for nombre in self._requeridos() if getattr(self, nombre) is None]
        if faltan:
            raise ErrorEntrada(f"{self.subcomando}: faltan {', '.join(faltan)}")
        if self.formato == "csv" and not (self.subcomando == "classify"
                                          or (self.subcomando == "rmanifold" and self.reporte == "points")):
            raise ErrorEntrada("--format csv solo está disponible para classify y rmanifold --report points")
        if self.muestras < 1:
            raise ErrorEntrada("--samples debe ser >= 1")
        if not 0.0 <= self.fraccion_errores <= 1.0:
            raise ErrorEntrada("--max-error-fraction debe estar en [0, 1]")

    def _requeridos(self) -> Tuple[str, ...]:
        if self.subcomando == "verify":
            return ("solucion",)
        if self.subcomando == "bend":
            return ("k", "tipo") if self.forma_normal else ("k", "q1", "q2")
        if self.subcomando == "contact":
            return ("punto",) if self.campo is not None else ("nu", "punto")
        if self.subcomando == "rmanifold":
            return ("k", "tipo") if self.reporte == "nu" else ("k", "l", "tipo")
        if self.subcomando == "selfadjoint":
            return ("matriz",)
        return ()

    @classmethod
    def desde_argumentos(cls, ns: argparse.Namespace) -> "ConfiguracionTrabajo":
        def g(nombre, defecto=None):
            return getattr(ns, nombre, defecto)

        tipo = g("kind")
        campo = g("field")
        return cls(
            subcomando=ns.subcomando,
            coeficientes={c: g(c, "0") for c in "NABCD"},
            solucion=g("f"),
            malla=leer_malla(g("grid"), g("fixed")) if ns.subcomando == "classify" else None,
            fraccion_errores=g("max_error_fraction", 0.0),
            legendre=bool(g("legendre", False)),
            muestras=g("samples", 50),
            tipo=None if tipo is None else TipoZeta.desde_texto(tipo),
            k=g("k"),
            l=g("l"),
            q1=g("q1"),
            q2=g("q2"),
            forma_normal=bool(g("normal_form", False)),
            prolongar=bool(g("prolong", False)),
            nu=g("nu"),
            mu=g("mu"),
            campo=None if campo is None else tuple(s.strip() for s in campo.split(";")),
            punto=None if g("point") is None else leer_vector(g("point"), None, "punto"),
            matriz=None if g("matrix") is None else leer_matriz(g("matrix")),
            forma=None if g("form") is None else leer_matriz(g("form")),
            reporte=g("report", "singular"),
            radio=g("radius"),
            lectura_literal=bool(g("literal", False)),
            permitir_parabolico=bool(g("allow_parabolic", False)),
            tolerancias=leer_tolerancias(ns.tol),
            semilla=ns.seed,
            salida=ns.out,
            formato=ns.format,
            verbosidad=ns.verbose,
        )
