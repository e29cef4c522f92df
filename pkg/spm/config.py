from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Loads environment variables (and an optional .env file) for configuration.
    """
    SPM_BUDGET: int = 10_000_000  # max nodes interned by a single construction
    SPM_LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(env_file='.env', extra='ignore')


settings = Settings()
