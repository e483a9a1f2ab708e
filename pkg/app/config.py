from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Base used when --p / --q are omitted
    default_p: int = 3
    default_q: int = 2

    # Reference (naive) search is only run below this many loop iterations
    reference_budget: int = 10_000_000
    # ...and only when its estimated bit-operations stay below this
    reference_work_budget: int = 25_000_000_000
    # No table with more entries than this is ever materialized, --force or not
    max_table_entries: int = 1_000_000

    # cmp_pow tries bounded comparison first above this many bits of product
    exact_pow_bits: int = 32_768

    # Randomized sweeps
    sweep_samples: int = 200
    sweep_seed: int = 0
    sweep_cap: int = 5_000

    # Output
    table_dir: str = "."
    log_level: str = "INFO"

    class Config:
        env_prefix = "LNS_"
        env_file = ".env"
        env_file_encoding = "utf-8"


settings = Settings()
