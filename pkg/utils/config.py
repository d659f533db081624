"""
Configuration management for the deep-hole toolkit.
Loads work budgets and runtime options from environment variables.
"""
from typing import Literal
from dotenv import load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables
load_dotenv()


class Settings(BaseSettings):
    """Toolkit settings loaded from environment (prefix DEEPHOLE_)."""

    model_config = SettingsConfigDict(
        env_prefix="DEEPHOLE_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Exhaustive work budgets
    codeword_enumeration_budget: int = 10**7  # q^k codewords
    subset_interpolation_budget: int = 10**7  # C(n, k+1) position subsets
    census_budget: int = 10**7  # q^n received words
    point_search_budget: int = 10**8  # q^(k+1) candidate points
    symbolic_term_budget: int = 10**6  # terms per intermediate coefficient
    reduction_budget: int = 10**6  # C(|A|, s) subsets and q^(s-1) codewords
    scan_budget: int = 10**8  # q^vars points for counts and smoothness scans

    # Experiment defaults
    census_sample_size: int = 10
    default_seed: int = 0
    default_variant: Literal["published", "corrected"] = "corrected"
    random_search_attempts: int = 10_000

    # Execution
    jobs: int = 1
    log_level: str = "WARNING"


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance."""
    return settings
