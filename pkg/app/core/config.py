import os
from pydantic_settings import BaseSettings, SettingsConfigDict

file_path = os.path.dirname(__file__)
prj_path = os.path.join(file_path, "../..")
PROJECT_PATH = os.path.abspath(prj_path)


class Settings(BaseSettings):
    PROJECT_NAME: str = "caygen"
    PROJECT_VERSION: str = "0.1.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"

    # Cayley graphs are materialized only up to this many vertices (7! = 5040)
    MAX_VERTICES: int = 5040
    # automorphism / isomorphism search refuses larger graphs
    MAX_SEARCH_VERTICES: int = 1000
    MAX_GROUP_ORDER: int = 200_000

    MAX_ORACLE_DEGREE: int = 5
    MAX_STABILIZER_DEGREE: int = 5
    MAX_CONNECTIVITY_DEGREE: int = 4
    MAX_ENUMERATION_DEGREE: int = 7
    FAST_ENUMERATION_DEGREE: int = 5

    SEED: int = 0

    model_config = SettingsConfigDict(
        env_prefix="CAYGEN_",
        env_file=os.path.join(PROJECT_PATH, ".env"),
        extra="ignore",
    )


settings = Settings()
