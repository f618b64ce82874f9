import configparser
import logging

_SECTION = "morse_sequences"


class Settings:
    _LOG_LEVEL = "INFO"  # expects to be set by config
    _JOBS = 1  # expects to be set by config
    _DEBUG_CHECKS = False  # expects to be set by config

    @staticmethod
    def log_level() -> int:
        level = logging.getLevelName(Settings._LOG_LEVEL.upper())
        # getLevelName returns a string for unknown names
        return level if isinstance(level, int) else logging.INFO

    @staticmethod
    def jobs() -> int:
        return Settings._JOBS

    @staticmethod
    def debug_checks() -> bool:
        return Settings._DEBUG_CHECKS


def inject_config_dependencies(config: configparser.ConfigParser):
    """
    Copy the [morse_sequences] section of a configuration into Settings. Missing keys keep
    their current values.
    """
    if not config.has_section(_SECTION):
        return
    cf = config[_SECTION]
    Settings._LOG_LEVEL = cf.get("LOG_LEVEL", Settings._LOG_LEVEL)
    jobs = cf.getint("JOBS", Settings._JOBS)
    if jobs < 1:
        raise ValueError(f"JOBS must be at least 1, got {jobs}")
    Settings._JOBS = jobs
    Settings._DEBUG_CHECKS = cf.getboolean("DEBUG_CHECKS", Settings._DEBUG_CHECKS)


def read_config(path: str) -> configparser.ConfigParser:
    """
    Read an INI configuration file. A missing file yields an empty configuration.
    """
    config = configparser.ConfigParser()
    config.read(path)
    return config
