"""
cache.py - Cache persistente de valores de caracteres
Unipotent Modules Project - Fase 4

Um arquivo append-only por (n, q, modo de K), com registros
"elemento TAB λ TAB valor". Registros finais corrompidos (sem quebra de linha ou
impossíveis de interpretar) são truncados na carga.
"""

import logging
import threading
from pathlib import Path
from typing import Dict, Optional, Tuple

from src.fields.coeff_field import CoeffFieldSpec, KScalar, format_kscalar, parse_kscalar
from src.linalg.fq_linalg import FqMatrix, format_matrix

logger = logging.getLogger(__name__)


class CharacterStore:
    """Leitura concorrente, escrita serializada por lock."""

    def __init__(self, cache_dir: str, n: int, q: int, coeff: CoeffFieldSpec):
        self.coeff = coeff
        self.path = Path(cache_dir) / f"characters_n{n}_q{q}_{coeff.label}.tsv"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._values: Dict[Tuple[str, str], KScalar] = {}
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        raw = self.path.read_bytes()
        good = 0
        for line in raw.splitlines(keepends=True):
            if not line.endswith(b"\n"):
                break
            try:
                element, shape, value = line.decode("utf-8").rstrip("\n").split("\t")
                self._values[(element, shape)] = parse_kscalar(self.coeff, value)
            except (ValueError, UnicodeDecodeError, IndexError):
                break
            good += len(line)
        if good < len(raw):
            logger.warning(f"Cache {self.path.name}: truncando {len(raw) - good} bytes corrompidos")
            with open(self.path, "r+b") as fh:
                fh.truncate(good)
        logger.info(f"Cache {self.path.name}: {len(self._values)} valores carregados")

    def __len__(self) -> int:
        return len(self._values)

    def get(self, g: FqMatrix, shape: str) -> Optional[KScalar]:
        return self._values.get((format_matrix(g), shape))

    def put(self, g: FqMatrix, shape: str, value: KScalar) -> None:
        key = (format_matrix(g), shape)
        with self._lock:
            if key in self._values:
                return
            self._values[key] = value
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(f"{key[0]}\t{key[1]}\t{format_kscalar(value)}\n")
