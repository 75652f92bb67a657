from __future__ import annotations

import logging
from typing import ClassVar, final

try:
    # Pydantic v2
    from pydantic import AliasChoices, Field, model_validator
except ImportError:  # pragma: no cover
    from pydantic import Field

    AliasChoices = None  # type: ignore[assignment]
    model_validator = None  # type: ignore[assignment]

from pydantic_settings import BaseSettings, SettingsConfigDict


_CACHE_PATH_VALIDATION_ALIAS = (
    AliasChoices("GWRECON_CACHE", "CACHE_PATH") if AliasChoices is not None else "GWRECON_CACHE"
)


@final
class Settings(BaseSettings):
    model_config: ClassVar[SettingsConfigDict] = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        populate_by_name=True,
        extra="ignore",
    )

    log_level: str = "INFO"

    # 不变量缓存文件（JSON）；为空表示不使用缓存，每次重新计算
    cache_path: str = Field(default="", validation_alias=_CACHE_PATH_VALIDATION_ALIAS)

    # symgroup 枚举规模上限
    cycle_type_bound: int = 20
    oracle_points_bound: int = 12
    identity_sums_bound: int = 9

    # fixedloci / ledgers
    census_max_degree: int = 10
    ledger_max_degree: int = 12
    transfer_max_degree: int = 8

    # Localization oracle: G(k,N) with n markings in degree d.
    oracle_max_points: int = 8
    oracle_max_degree: int = 3
    oracle_max_N: int = 6
    oracle_weight_seed: int = 20240607

    quantum_max_k: int = 3
    quantum_max_N: int = 8
    km_max_degree: int = 6

    # Relation audits: test monomials per (relation, signature), κ factors per monomial.
    audit_grid_limit: int = 12
    audit_max_kappa: int = 3

    if model_validator is not None:

        @model_validator(mode="after")
        def _validate_bounds(self) -> "Settings":  # pyright: ignore[reportUnusedFunction]
            errors: list[str] = []

            if logging.getLevelName(self.log_level.strip().upper()) == (
                f"Level {self.log_level.strip().upper()}"
            ):
                errors.append("LOG_LEVEL must be a logging level name")

            positive = (
                "cycle_type_bound",
                "oracle_points_bound",
                "identity_sums_bound",
                "census_max_degree",
                "ledger_max_degree",
                "transfer_max_degree",
                "oracle_max_points",
                "oracle_max_degree",
                "quantum_max_k",
                "quantum_max_N",
                "km_max_degree",
                "audit_grid_limit",
            )
            for name in positive:
                if int(getattr(self, name)) <= 0:
                    errors.append(f"{name.upper()} must be positive")

            if self.oracle_max_N < 4:
                errors.append("ORACLE_MAX_N must be at least 4")
            if self.audit_max_kappa < 0:
                errors.append("AUDIT_MAX_KAPPA must be non-negative")

            if errors:
                raise ValueError("Invalid gwrecon settings: " + "; ".join(errors))
            return self


settings = Settings()
