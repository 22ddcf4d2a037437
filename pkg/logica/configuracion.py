# logica/configuracion.py
from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerancias:
    """Umbrales numéricos compartidos por todos los módulos."""
    rango: float = 1e-10             # valores singulares relativos
    banda_parabolica: float = 1e-9   # |Δ| o |d| dentro de la banda => parabólico
    autoadjunto: float = 1e-10
    ecuacion_estructura: float = 1e-10
    angulo_subespacio: float = 1e-9
    consistencia: float = 1e-9
    paso_h: float = 1e-4

    def con(self, **cambios) -> "Tolerancias":
        return replace(self, **cambios)


TOLERANCIAS = Tolerancias()

SEMILLA_POR_DEFECTO = 42
