from pydantic_settings import BaseSettings, SettingsConfigDict

from pydantic import Field, model_validator


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        validate_default=True,
        extra="ignore",
    )

    # Diagnostics on standard error
    REVIVAL_LOG: str = Field(
        default="info",
        pattern="^(error|info|debug)$",
        description="Diagnostic verbosity on stderr (error, info, debug)",
    )

    # Logging configuration
    LOG_TO_FILE: bool = Field(default=False, description="Enable file logging")
    LOG_FILE_PATH: str = Field(
        default="logs", description="Directory path for log files"
    )
    LOG_FILE_NAME: str = Field(default="revival.log", description="Log file name")
    LOG_MAX_BYTES: int = Field(
        default=10_485_760, description="Maximum log file size in bytes (10MB)"
    )
    LOG_BACKUP_COUNT: int = Field(
        default=5, description="Number of backup log files to keep"
    )
    LOG_JSON_FORMAT: bool = Field(
        default=True,
        description="Use JSON format for file logs",
    )

    # Numerical tolerances
    NODE_TOLERANCE_FACTOR: float = Field(
        default=1e-9,
        description="Node rejection radius as a fraction of the node spacing 2*pi/k",
    )
    POLE_TOLERANCE: float = Field(
        default=1e-9, description="Absolute distance to a kernel pole that is rejected"
    )
    CUSP_ZERO_TOLERANCE: float = Field(
        default=1e-12,
        description="Trig factors below this magnitude classify a node as cusp-free",
    )
    KERNEL_SERIES_TOLERANCE: float = Field(
        default=1e-12,
        description="Largest admissible final term of a truncated kernel series",
    )

    # Command line defaults
    DEFAULT_GRID_POINTS: int = Field(
        default=1001, description="Grid points for tabulation commands"
    )
    DEFAULT_NMODES: int = Field(
        default=100_000, description="Fourier modes for series evaluation"
    )
    CSV_SIGNIFICANT_DIGITS: int = Field(
        default=17, description="Significant digits written to CSV files"
    )

    # Verification suite
    VERIFY_SEED: int = Field(
        default=20240101, description="Seed for randomly sampled verification points"
    )
    VERIFY_SAMPLE_POINTS: int = Field(
        default=200, description="Random points per index in the polylog oracle check"
    )

    @model_validator(mode="after")
    def validate_numerics(self):
        """Validate tolerances and output settings."""
        for name in (
            "NODE_TOLERANCE_FACTOR",
            "POLE_TOLERANCE",
            "CUSP_ZERO_TOLERANCE",
            "KERNEL_SERIES_TOLERANCE",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

        if self.DEFAULT_GRID_POINTS < 2:
            raise ValueError("DEFAULT_GRID_POINTS must be at least 2")

        if self.DEFAULT_NMODES < 1:
            raise ValueError("DEFAULT_NMODES must be at least 1")

        if not 1 <= self.CSV_SIGNIFICANT_DIGITS <= 17:
            raise ValueError("CSV_SIGNIFICANT_DIGITS must lie between 1 and 17")

        if self.VERIFY_SAMPLE_POINTS < 1:
            raise ValueError("VERIFY_SAMPLE_POINTS must be at least 1")

        return self


# Create a single instance to be used throughout the application
settings = Settings()
