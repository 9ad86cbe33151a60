from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from src.components import linear as la
from src.components.algebra import DEFAULT_PATH_CAP, Algebra, QuiverPresentation, path_algebra
from src.components.errors import InputError
from src.components.graded import GradedFreeModule, GradedMap, TensorTower, build_tower
from src.components.linear import FieldSpec, Matrix
from src.components.modules import Bimodule, RightModule


PathLike = Union[str, Path]


def load_json(path: PathLike) -> Any:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Instance file not found at {path}")
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, position=f"{path}:{exc.lineno}:{exc.colno}") from exc


def save_json(payload: Any, path: PathLike, indent: int = 2) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=indent, sort_keys=True) + "\n", encoding="utf-8")


# --- algebras -----------------------------------------------------------------


def algebra_from_json(raw: Dict, *, path_cap: int = DEFAULT_PATH_CAP, name: str = "", source: str = "") -> Algebra:
    if not isinstance(raw, dict):
        raise InputError("An algebra description must be a JSON object", position=source or None)
    field = FieldSpec.from_json(raw.get("field", "Q"))
    name = raw.get("name", name)
    if "mult" not in raw:
        if "quiver" not in raw:
            raise InputError("An algebra needs either 'quiver' or 'mult'", position=source or None)
        return path_algebra(QuiverPresentation.from_json(raw["quiver"]), field, cap=path_cap, name=name)
    try:
        basis = [str(b) for b in raw["basis"]]
        mult = {(int(i), int(j)): list(coords) for i, j, coords in raw["mult"]}
        unit = list(raw["unit"])
        idempotents = [list(e) for e in raw.get("idempotents", [unit])]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Malformed structure constants: {exc}", position=source or None) from exc
    return Algebra.from_structure_constants(field, basis, mult, unit, idempotents, name=name)


def load_algebra(ref: str, *, path_cap: int = DEFAULT_PATH_CAP, field: Optional[FieldSpec] = None) -> Algebra:
    """A catalog name or a path to an algebra file."""
    from src.data.catalog import CATALOG, catalog_algebra

    if ref in CATALOG:
        return catalog_algebra(ref, field or FieldSpec(), path_cap=path_cap)
    raw = load_json(ref)
    if field is not None and isinstance(raw, dict):
        raw = {**raw, "field": field.to_json()}
    return algebra_from_json(raw, path_cap=path_cap, name=Path(ref).stem, source=str(ref))


# --- modules ------------------------------------------------------------------


def _matrices(field: FieldSpec, raw: List, dim: int, what: str, source: str) -> tuple:
    try:
        return tuple(la.matrix(field, rows, dim) if rows else la.zeros(field, dim, dim) for rows in raw)
    except (TypeError, ValueError) as exc:
        raise InputError(f"Malformed {what}: {exc}", position=source or None) from exc


def module_from_json(a: Algebra, raw: Dict, *, name: str = "", source: str = "") -> RightModule:
    try:
        dim = int(raw["dim"])
        action = raw["action"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Malformed module description: {exc}", position=source or None) from exc
    right = _matrices(a.field, action, dim, "action", source)
    name = raw.get("name", name)
    if "left_action" in raw:
        left = _matrices(a.field, raw["left_action"], dim, "left action", source)
        module: RightModule = Bimodule(a, dim, right, name, left)
    else:
        module = RightModule(a, dim, right, name)
    module.validate()
    return module


def module_to_json(m: RightModule) -> Dict:
    f = m.field
    payload: Dict[str, Any] = {
        "name": m.name,
        "dim": m.dim,
        "action": [la.format_matrix(f, x) for x in m.action],
    }
    if isinstance(m, Bimodule):
        payload["left_action"] = [la.format_matrix(f, x) for x in m.left_action]
    return payload


def load_module(a: Algebra, ref: str) -> RightModule:
    """A path to a module file, or one of ``regular``, ``dual``, ``top``, ``bar``, ``free:R``, ``S<i>``, ``P<i>``, ``I<i>``."""
    from src.data.catalog import named_module

    module = named_module(a, ref)
    if module is not None:
        return module
    return module_from_json(a, load_json(ref), name=Path(ref).stem, source=str(ref))


# --- graded maps --------------------------------------------------------------


def graded_map_from_json(
    raw: Dict,
    *,
    tower: Optional[TensorTower] = None,
    cap: Optional[int] = None,
    path_cap: int = DEFAULT_PATH_CAP,
    gldim_bound: int = 4,
    source: str = "",
) -> GradedMap:
    """``{"tower": {"algebra", "sigma", "cap"}, "source_degrees", "target_degrees", "entries": [[j, i, power, coords]]}``.

    ``cap`` raises the tower cap declared in the file.
    """
    try:
        spec = raw["tower"]
        source_degrees = tuple(int(d) for d in raw["source_degrees"])
        target_degrees = tuple(int(d) for d in raw["target_degrees"])
        entries_raw = raw.get("entries", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Malformed graded map: {exc}", position=source or None) from exc
    if tower is None:
        a = load_algebra(spec["algebra"], path_cap=path_cap)
        sigma = load_module(a, spec["sigma"])
        if not isinstance(sigma, Bimodule):
            raise InputError("The tower needs a bimodule", position=source or None)
        tower = build_tower(sigma, max(int(spec["cap"]), cap or 0), gldim_bound)
    field = tower.algebra.field
    entries: Dict[tuple, Matrix] = {}
    for item in entries_raw:
        try:
            j, i, power, coords = int(item[0]), int(item[1]), int(item[2]), list(item[3])
        except (IndexError, TypeError, ValueError) as exc:
            raise InputError(f"Malformed graded map entry {item!r}", position=source or None) from exc
        if not (0 <= i < len(source_degrees) and 0 <= j < len(target_degrees)):
            raise InputError(f"Entry ({j}, {i}) names a missing generator", position=source or None)
        if power != source_degrees[i] - target_degrees[j]:
            raise InputError(f"Entry ({j}, {i}) declares degree {power}, expected {source_degrees[i] - target_degrees[j]}", position=source or None)
        entries[(j, i)] = la.vector(field, coords)
    return GradedMap(GradedFreeModule(tower, source_degrees), GradedFreeModule(tower, target_degrees), entries)


def graded_map_to_json(f: GradedMap, tower_ref: Dict) -> Dict:
    field = f.source.tower.algebra.field
    entries = []
    for (j, i), x in sorted(f.entries.items()):
        power = f.source.degrees[i] - f.target.degrees[j]
        entries.append([j, i, power, [field.format(v) for v in la.entries(x)[0]]])
    return {
        "tower": tower_ref,
        "source_degrees": list(f.source.degrees),
        "target_degrees": list(f.target.degrees),
        "entries": entries,
    }


def load_graded_map(ref: str, *, cap: Optional[int] = None, path_cap: int = DEFAULT_PATH_CAP, gldim_bound: int = 4) -> GradedMap:
    return graded_map_from_json(load_json(ref), cap=cap, path_cap=path_cap, gldim_bound=gldim_bound, source=str(ref))
