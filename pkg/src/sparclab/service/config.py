"""Service configuration with environment overrides (SPARCLAB_*)."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

from ..solver import DEFAULT_ANSWER_SET_CAP, DEFAULT_TIMEOUT_SEC, MAX_TIMEOUT_SEC


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8728
    data_dir: Path = Path("./sparclab-data")
    default_timeout_sec: float = DEFAULT_TIMEOUT_SEC
    max_timeout_sec: float = MAX_TIMEOUT_SEC
    max_concurrent_solves: int = 8
    answer_set_cap: int = DEFAULT_ANSWER_SET_CAP
    session_ttl_sec: float = 24 * 3600.0
    max_program_bytes: int = 512 * 1024

    @classmethod
    def from_env(cls, env: dict | None = None) -> "ServiceConfig":
        env = os.environ if env is None else env
        cfg = cls()

        def get(name, cast, current):
            raw = env.get(f"SPARCLAB_{name}")
            return current if raw is None else cast(raw)

        return cls(
            host=get("HOST", str, cfg.host),
            port=get("PORT", int, cfg.port),
            data_dir=Path(get("DATA_DIR", str, str(cfg.data_dir))),
            default_timeout_sec=get("DEFAULT_TIMEOUT", float, cfg.default_timeout_sec),
            max_timeout_sec=min(get("MAX_TIMEOUT", float, cfg.max_timeout_sec), MAX_TIMEOUT_SEC),
            max_concurrent_solves=get("MAX_CONCURRENT", int, cfg.max_concurrent_solves),
            answer_set_cap=get("ANSWER_SET_CAP", int, cfg.answer_set_cap),
            session_ttl_sec=get("SESSION_TTL", float, cfg.session_ttl_sec),
            max_program_bytes=get("MAX_PROGRAM_BYTES", int, cfg.max_program_bytes),
        )

    def with_data_dir(self, data_dir) -> "ServiceConfig":
        return replace(self, data_dir=Path(data_dir))

    def with_listen(self, host: str, port: int) -> "ServiceConfig":
        return replace(self, host=host, port=port)
