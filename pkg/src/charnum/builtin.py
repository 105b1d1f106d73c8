"""Bundled manifests for the named manifolds and their generators."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable

from .errors import ManifestError
from .graded import PontryaginNumbers
from .manifolds import (DATA_DIR, RingModel, kervaire_milnor_model, load_manifest, m1_m2_numbers,
                        m3_model, n8_model, numbers_manifest, op2_model)


def _m1() -> dict:
    return numbers_manifest("M1", m1_m2_numbers()[0])


def _m2() -> dict:
    return numbers_manifest("M2", m1_m2_numbers()[1])


def _m4() -> dict:
    from .bh import m4_model

    return m4_model().to_json()


GENERATORS: dict[str, Callable[[], dict]] = {
    "M1": _m1,
    "M2": _m2,
    "M3": lambda: m3_model().to_json(),
    "M4": _m4,
    "M0_8": lambda: kervaire_milnor_model(2).to_json(),
    "OP2": lambda: op2_model().to_json(),
    "N8": lambda: n8_model().to_json(),
}

ROOT_DATA = "f4_spin9_roots.json"


def bundled_path(name: str) -> Path:
    return DATA_DIR / f"{name}.json"


def manifest_text(data: dict) -> str:
    return json.dumps(data, indent=1, sort_keys=False) + "\n"


def write_bundled(directory: Path = DATA_DIR) -> list[Path]:
    """Regenerate every bundled manifest from the constructions."""
    from .bh import f4_spin9_roots

    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, gen in GENERATORS.items():
        path = directory / f"{name}.json"
        path.write_text(manifest_text(gen()), encoding="utf-8")
        written.append(path)
    path = directory / ROOT_DATA
    path.write_text(manifest_text(f4_spin9_roots().to_json()), encoding="utf-8")
    written.append(path)
    return written


def resolve_manifold(name_or_path: str) -> RingModel | PontryaginNumbers:
    """A built-in name (M1, ..., N8) or a path to a manifest file."""
    if name_or_path in GENERATORS:
        path = bundled_path(name_or_path)
        if not path.exists():
            raise ManifestError(f"bundled manifest {path.name} is missing")
        return load_manifest(path)
    path = Path(name_or_path)
    if not path.exists():
        raise ManifestError(f"{name_or_path!r} is neither a built-in manifold "
                            f"({', '.join(GENERATORS)}) nor an existing file")
    return load_manifest(path)


if __name__ == "__main__":
    for p in write_bundled():
        print(p)
