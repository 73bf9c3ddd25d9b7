"""
storage.py — Camada de persistência (SQLite) para o cache de polinômios de Ehrhart.
"""
from __future__ import annotations
import sqlite3, pathlib
from datetime import datetime, timezone
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

DB_PATH = "data/ehrhart.db"

SCHEMA = """
PRAGMA journal_mode=WAL;
CREATE TABLE IF NOT EXISTS ehrhart (
  weights TEXT PRIMARY KEY, coeffs TEXT NOT NULL, created_at TEXT
);
"""

def _utcnow_iso(): return datetime.now(timezone.utc).isoformat(timespec="seconds")

def _key(weights: Sequence[int]) -> str:
    # ponto (sem pesos) vira string vazia
    return ",".join(str(int(w)) for w in weights)

class EhrhartStore:
    def __init__(self, db_path: str = DB_PATH) -> None:
        self.db_path = db_path
        pathlib.Path(self.db_path).parent.mkdir(parents=True, exist_ok=True)
        with self._conn() as con:
            con.executescript(SCHEMA)
    def _conn(self):
        con = sqlite3.connect(self.db_path, timeout=30, isolation_level=None)
        con.row_factory = sqlite3.Row
        return con
    def get(self, weights: Sequence[int]) -> Optional[List[Fraction]]:
        with self._conn() as con:
            row = con.execute("SELECT coeffs FROM ehrhart WHERE weights=?", (_key(weights),)).fetchone()
        return [Fraction(c) for c in str(row["coeffs"]).split(" ")] if row else None
    def put(self, weights: Sequence[int], coeffs: Sequence[Fraction]) -> None:
        with self._conn() as con:
            con.execute(
                """
                INSERT INTO ehrhart (weights, coeffs, created_at) VALUES (?, ?, ?)
                ON CONFLICT(weights) DO NOTHING
                """,
                (_key(weights), " ".join(str(c) for c in coeffs), _utcnow_iso()),
            )
    def count(self) -> int:
        with self._conn() as con:
            row = con.execute("SELECT COUNT(*) AS n FROM ehrhart").fetchone()
        return int(row["n"])
    def items(self) -> List[Tuple[Tuple[int, ...], List[Fraction]]]:
        with self._conn() as con:
            rows = con.execute("SELECT weights, coeffs FROM ehrhart ORDER BY weights").fetchall()
        out = []
        for r in rows:
            key = tuple(int(x) for x in str(r["weights"]).split(",") if x != "")
            out.append((key, [Fraction(c) for c in str(r["coeffs"]).split(" ")]))
        return out
