# interfaz/cli.py
"""Línea de comandos: classify, verify, bend, contact, rmanifold, selfadjoint.

Códigos de salida: 0 correcto, 1 verificación fallida, 2 entrada,
3 numérico, 4 compuerta de consistencia.
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from algoritmos.bends import PolinomioHomogeneo, analizar_bend, forma_normal, prolongar_bend
from algoritmos.contacto import (VARIABLES, CampoContacto, CampoExpresiones, CartaContacto, PuntoDarboux,
                                 campo_contacto, corchete_lagrange, defecto_campo_contacto, gram_curvatura,
                                 valor_forma_contacto, valor_generatriz)
from algoritmos.monge_ampere import (EcuacionMA, SolucionCandidata, algebra_basica,
                                     clasificar, clasificar_region, defecto_invariancia, discriminante,
                                     levantar_punto, transformar_legendre)
from algoritmos.r_variedades import (EspecRVariedad, encabezado_nube, filas_nube, nube_puntos,
                                     reporte_punto_singular, vectores_nu, verificar_rvariedad)
from algoritmos.simplectico import EspacioSimplectico, clasificar_dim4, espacio_estandar
from interfaz.configuracion_trabajo import REPORTES_RVARIEDAD, ConfiguracionTrabajo
from interfaz.salida import a_csv, a_json, emitir
from logica.configuracion import SEMILLA_POR_DEFECTO
from logica.errores import ErrorGeometria
from logica.expresion import analizar, imprimir

log = logging.getLogger(__name__)

SALIDA_OK = 0
SALIDA_VERIFICACION = 1


@dataclass
class Resultado:
    codigo: int
    documento: Any
    tabla: Optional[Tuple[List[str], List[List[Any]]]] = None


# ---------------- Parser ----------------
def construir_parser() -> argparse.ArgumentParser:
    comun = argparse.ArgumentParser(add_help=False)
    comun.add_argument("--tol", action="append", metavar="[NOMBRE=]VALOR",
                       help="tolerancia (rank, band, selfadjoint, structure, angle, consistency, step)")
    comun.add_argument("--seed", type=int, default=SEMILLA_POR_DEFECTO)
    comun.add_argument("--out", default=None, help="fichero de salida (stdout por defecto)")
    comun.add_argument("--format", choices=("json", "csv"), default="json")
    comun.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="monge-ampere",
                                     description="Ecuaciones de Monge-Ampère, bends y R-variedades.")
    sub = parser.add_subparsers(dest="subcomando", required=True)

    def coeficientes(p):
        for c in "NABCD":
            p.add_argument(f"--{c}", default="0", help=f"coeficiente {c}(x1, x2, u, p1, p2)")

    p = sub.add_parser("classify", parents=[comun], help="clasificación por regiones")
    coeficientes(p)
    p.add_argument("--grid", default=None, help='p. ej. "x1=-1:1:5,x2=-1:1:5"')
    p.add_argument("--fixed", default=None, help='p. ej. "u=0.5,p1=0"')
    p.add_argument("--max-error-fraction", dest="max_error_fraction", type=float, default=0.0)
    p.add_argument("--legendre", action="store_true", help="añade la transformación de Legendre parcial por celda")

    p = sub.add_parser("verify", parents=[comun], help="residuo y 𝔄-invariancia de una solución candidata")
    coeficientes(p)
    p.add_argument("--f", required=True, help="solución candidata f(x1, x2)")
    p.add_argument("--samples", type=int, default=50)

    p = sub.add_parser("bend", parents=[comun], help="análisis de bends en P_{k,2}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q1", default=None)
    p.add_argument("--q2", default=None)
    p.add_argument("--normal-form", dest="normal_form", action="store_true")
    p.add_argument("--kind", default=None, choices=("minus", "zero", "plus"))
    p.add_argument("--prolong", action="store_true")

    p = sub.add_parser("contact", parents=[comun], help="campos de contacto y corchete de Lagrange")
    p.add_argument("--nu", default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--field", default=None, help="cinco expresiones separadas por ';'")
    p.add_argument("--point", required=True, help="x1,x2,u,p1,p2")

    p = sub.add_parser("rmanifold", parents=[comun], help="R-variedades L_{k,l}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--kind", required=True, choices=("minus", "zero", "plus"))
    p.add_argument("--report", choices=REPORTES_RVARIEDAD, default="singular")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--literal", action="store_true", help="usa x + ζy = z^k / (k + 1/l)!")
    p.add_argument("--allow-parabolic", dest="allow_parabolic", action="store_true")

    p = sub.add_parser("selfadjoint", parents=[comun], help="clasificación de un operador autoadjunto 4×4")
    p.add_argument("--matrix", required=True, help="filas separadas por ';'")
    p.add_argument("--form", default=None, help="matriz de la forma simpléctica (estándar por defecto)")
    return parser


# ---------------- Subcomandos ----------------
def _ecuacion(cfg: ConfiguracionTrabajo) -> EcuacionMA:
    return EcuacionMA.desde_textos(**cfg.coeficientes)


def _texto_ecuacion(eq: EcuacionMA) -> dict:
    return {c: imprimir(getattr(eq, c)) for c in "NABCD"}


def cmd_classify(cfg: ConfiguracionTrabajo) -> Resultado:
    eq = _ecuacion(cfg)
    region = clasificar_region(eq, cfg.malla, cfg.tolerancias)
    doc = {"equation": _texto_ecuacion(eq)}
    doc.update(region.como_dict())
    if cfg.legendre:
        transformadas = []
        for celda in region.celdas:
            if celda.tipo == "error":
                transformadas.append(None)
                continue
            t = transformar_legendre(eq, celda.punto, cfg.tolerancias)
            transformadas.append({"index": list(celda.indice), "point": list(t.punto.como_tupla()),
                                  "coefficients": list(t.coeficientes), "delta": t.discriminante,
                                  "type": t.tipo.value})
        doc["legendre"] = transformadas
    codigo = SALIDA_OK
    if region.fraccion_errores > cfg.fraccion_errores:
        log.warning("fracción de celdas fallidas %.3f > %.3f", region.fraccion_errores, cfg.fraccion_errores)
        codigo = 3
    encabezado = ["i", "j"] + list(VARIABLES) + ["delta", "type"]
    filas = [[c.indice[0], c.indice[1], *c.punto.como_tupla(), c.delta, c.tipo] for c in region.celdas]
    return Resultado(codigo, doc, (encabezado, filas))


def cmd_verify(cfg: ConfiguracionTrabajo) -> Resultado:
    eq = _ecuacion(cfg)
    f = SolucionCandidata.desde_texto(cfg.solucion)
    rng = np.random.default_rng(cfg.semilla)
    muestras = []
    for base in rng.uniform(-1.0, 1.0, size=(cfg.muestras, 2)):
        base = (float(base[0]), float(base[1]))
        r = defecto_invariancia(eq, f, base)
        fila = {"point": list(base)}
        fila.update(r.como_dict())
        muestras.append(fila)
    residuo = max(abs(m["residual"]) for m in muestras)
    defecto = max(m["defect"] for m in muestras)
    desviacion = max(m["decomposition_deviation"] for m in muestras)
    tol = cfg.tolerancias.consistencia
    aprobado = residuo <= tol and defecto <= 10 * tol
    primero = levantar_punto(f, tuple(muestras[0]["point"]))
    doc = {
        "equation": _texto_ecuacion(eq),
        "solution": imprimir(f.f),
        "samples": muestras,
        "max_residual": residuo,
        "max_defect": defecto,
        "max_decomposition_deviation": desviacion,
        "first_point_type": clasificar(eq, primero, cfg.tolerancias).value,
        "first_point_delta": discriminante(eq, primero),
        "basic_algebra": algebra_basica(eq, primero, cfg.tolerancias).clasificacion.como_dict()["algebra"],
        "passed": aprobado,
    }
    log.info("verify: residuo %.3e, defecto %.3e", residuo, defecto)
    return Resultado(SALIDA_OK if aprobado else SALIDA_VERIFICACION, doc)


def cmd_bend(cfg: ConfiguracionTrabajo) -> Resultado:
    if cfg.forma_normal:
        b = forma_normal(cfg.k, cfg.tipo)
        b = analizar_bend(b.grado, b.q1, b.q2, cfg.tolerancias)
    else:
        q1 = PolinomioHomogeneo.analizar(cfg.q1, cfg.k)
        q2 = PolinomioHomogeneo.analizar(cfg.q2, cfg.k)
        b = analizar_bend(cfg.k, q1, q2, cfg.tolerancias)
    if b is None:
        return Resultado(SALIDA_OK, {"is_bend": False, "k": cfg.k})
    doc = {"is_bend": True}
    doc.update(b.como_dict())
    if cfg.prolongar:
        doc["prolongation"] = prolongar_bend(b, cfg.tolerancias).como_dict()
    return Resultado(SALIDA_OK, doc)


def cmd_contact(cfg: ConfiguracionTrabajo) -> Resultado:
    carta = CartaContacto()
    pt = PuntoDarboux.desde(cfg.punto)
    doc = {"point": list(pt.como_tupla()), "curvature_gram": gram_curvatura(carta, pt)}
    if cfg.campo is not None:
        campo = CampoExpresiones(tuple(analizar(t, VARIABLES) for t in cfg.campo))
        defecto = defecto_campo_contacto(carta, campo, [pt])
        doc["field_defect"] = defecto
        doc["is_contact_field"] = defecto <= cfg.tolerancias.consistencia
    if cfg.nu is not None:
        nu = analizar(cfg.nu, VARIABLES)
        Z = campo_contacto(carta, nu, pt)
        doc["generating_function"] = valor_generatriz(nu, pt)
        doc["field"] = list(Z.componentes)
        doc["contact_form"] = valor_forma_contacto(pt, Z)
        doc["contact_defect"] = defecto_campo_contacto(carta, CampoContacto(nu), [pt])
        if cfg.mu is not None:
            mu = analizar(cfg.mu, VARIABLES)
            doc["bracket"] = corchete_lagrange(carta, mu, nu, pt)
    return Resultado(SALIDA_OK, doc)


def cmd_rmanifold(cfg: ConfiguracionTrabajo) -> Resultado:
    tol = cfg.tolerancias
    if cfg.reporte == "nu":
        return Resultado(SALIDA_OK, vectores_nu(cfg.k, cfg.tipo, tol).como_dict())
    spec = EspecRVariedad(cfg.k, cfg.l, cfg.tipo, cfg.lectura_literal, cfg.permitir_parabolico)
    if cfg.reporte == "singular":
        radio = 0.1 if cfg.radio is None else cfg.radio
        return Resultado(SALIDA_OK, reporte_punto_singular(spec, radio, 16, cfg.semilla, tol).como_dict())
    if cfg.reporte == "points":
        radio = 1.0 if cfg.radio is None else cfg.radio
        nube = nube_puntos(spec, cfg.muestras, cfg.semilla, radio)
        encabezado = encabezado_nube(cfg.k)
        filas = filas_nube(nube)
        doc = {"spec": spec.como_dict(), "header": encabezado, "rows": filas}
        return Resultado(SALIDA_OK, doc, (encabezado, filas))
    reporte = verificar_rvariedad(spec, cfg.muestras, cfg.semilla, tol.paso_h)
    doc = reporte.como_dict()
    aprobado = reporte.residuo_maximo <= tol.consistencia and (
        reporte.cociente is None or 0.2 <= reporte.cociente <= 0.3)
    doc["passed"] = aprobado
    return Resultado(SALIDA_OK if aprobado else SALIDA_VERIFICACION, doc)


def cmd_selfadjoint(cfg: ConfiguracionTrabajo) -> Resultado:
    sp = espacio_estandar(2) if cfg.forma is None else EspacioSimplectico(cfg.forma)
    return Resultado(SALIDA_OK, clasificar_dim4(sp, cfg.matriz, cfg.tolerancias).como_dict())


COMANDOS = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "bend": cmd_bend,
    "contact": cmd_contact,
    "rmanifold": cmd_rmanifold,
    "selfadjoint": cmd_selfadjoint,
}


# ---------------- Entrada ----------------
def configurar_logging(verbosidad: int) -> None:
    nivel = logging.WARNING if verbosidad <= 0 else logging.INFO if verbosidad == 1 else logging.DEBUG
    logging.basicConfig(level=nivel, stream=sys.stderr, force=True,
                        format="%(levelname)s %(name)s: %(message)s")


def ejecutar(argv: Optional[Sequence[str]] = None) -> int:
    parser = construir_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configurar_logging(ns.verbose)
    try:
        cfg = ConfiguracionTrabajo.desde_argumentos(ns)
        log.info("%s: inicio", cfg.subcomando)
        resultado = COMANDOS[cfg.subcomando](cfg)
        if cfg.formato == "csv" and resultado.tabla is not None:
            texto = a_csv(*resultado.tabla)
        else:
            texto = a_json(resultado.documento)
        emitir(texto, cfg.salida)
    except ErrorGeometria as e:
        log.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return e.codigo_salida
    log.info("%s: fin con código %d", cfg.subcomando, resultado.codigo)
    return resultado.codigo


def main() -> int:
    return ejecutar(sys.argv[1:])
