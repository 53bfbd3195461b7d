from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache

class Settings(BaseSettings):
    LOG_LEVEL: str = "INFO"

    # ─── Enumeration Guards ─────────────────────────────
    # Supports are enumerated exhaustively; refuse above this many weights.
    ENUMERATION_LIMIT: int = 20
    # Largest W^(P) the brute-force sweep enumerator will build.
    WEYL_GROUP_LIMIT: int = 100000

    # ─── Descent Oracle ─────────────────────────────────
    DESCENT_STEP: float = 1e-2
    DESCENT_TOL: float = 1e-9
    DESCENT_MAX_STEPS: int = 1000000

    # ─── Output ─────────────────────────────────────────
    OUTPUT_FORMAT: str = "json"
    PLOT_SIZE_INCHES: float = 6.0

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

@lru_cache
def get_settings():
    return Settings()
