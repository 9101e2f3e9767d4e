import os
from dotenv import load_dotenv
from from_root import from_root
from src.constants import *
from typing import Dict, Any, List, Optional
from dataclasses import dataclass, field
from src.exception import BudgetExceeded, ConfigError
from src.utils.main_utils import read_yaml_file, read_json_file

load_dotenv()


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError as e:
        raise ConfigError(f"environment variable {name} must be an integer, got {value!r}") from e


def load_audit_defaults() -> Dict[str, Any]:
    """
    Load the default audit settings from ``config/audit.yaml``.

    Returns:
        Dict[str, Any]: Parsed settings, empty when the file is absent.
    """
    filepath = os.path.join(from_root(), AUDIT_CONFIG_FILEPATH)
    if not os.path.exists(filepath):
        return {}
    return read_yaml_file(filepath) or {}


@dataclass(frozen=True)
class BudgetConfig:
    """
    Enumeration caps shared by every exhaustive operation.

    Attributes:
        max_field_q (int): Largest field order accepted by field construction.
        max_space_q (int): Largest q for exhaustive audits over P^3(F_q).
        max_points (int): Largest number of projective points enumerated at once.
    """

    max_field_q: int = field(default_factory=lambda: _env_int(MAX_FIELD_Q_ENV, MAX_FIELD_Q))
    max_space_q: int = field(default_factory=lambda: _env_int(MAX_SPACE_Q_ENV, MAX_SPACE_Q))
    max_points: int = field(default_factory=lambda: _env_int(MAX_POINTS_ENV, MAX_POINTS))

    def check_field(self, q: int) -> None:
        if q > self.max_field_q:
            raise BudgetExceeded(f"field order {q} exceeds max_field_q={self.max_field_q}")

    def check_space(self, q: int) -> None:
        if q > self.max_space_q:
            raise BudgetExceeded(f"q={q} exceeds max_space_q={self.max_space_q} for P^3 audits")

    def check_points(self, count: int) -> None:
        if count > self.max_points:
            raise BudgetExceeded(f"{count} points exceed max_points={self.max_points}")

    @classmethod
    def from_mapping(cls, data: Optional[Dict[str, Any]]) -> "BudgetConfig":
        """
        Build a budget from a mapping, falling back to the environment defaults.

        Args:
            data (Optional[Dict[str, Any]]): Keys among max_field_q, max_space_q, max_points.

        Returns:
            BudgetConfig: The budget.

        Raises:
            ConfigError: On unknown keys or non-positive values.
        """
        data = dict(data or {})
        unknown = set(data) - {"max_field_q", "max_space_q", "max_points"}
        if unknown:
            raise ConfigError(f"unknown budget keys: {sorted(unknown)}")
        for key, value in data.items():
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"budget value {key} must be a positive integer")
        return cls(**data)

    @classmethod
    def from_defaults(cls, overrides: Optional[Dict[str, Any]] = None) -> "BudgetConfig":
        """
        Budget from ``config/audit.yaml``, then the ``AUDIT_MAX_*`` environment
        variables, then ``overrides``, each layer winning over the previous one.

        Raises:
            ConfigError: On unknown keys or non-positive values.
        """
        data: Dict[str, Any] = dict(load_audit_defaults().get("budget") or {})
        for key, env in (
            ("max_field_q", MAX_FIELD_Q_ENV),
            ("max_space_q", MAX_SPACE_Q_ENV),
            ("max_points", MAX_POINTS_ENV),
        ):
            if os.getenv(env):
                data[key] = _env_int(env, 0)
        if overrides is not None and not isinstance(overrides, dict):
            raise ConfigError("budget must be a mapping")
        data.update(overrides or {})
        return cls.from_mapping(data)


DEFAULT_BUDGET: BudgetConfig = BudgetConfig()


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n
    while n % p == 0:
        n //= p
    return n == 1


@dataclass
class AuditConfig:
    """
    Configuration of one audit run.

    Attributes:
        q_list (List[int]): Field orders to audit.
        surfaces (List[str]): Catalog names or inline form text.
        checks (List[str]): Subset of the known checks.
        budget (BudgetConfig): Enumeration caps.
        output_path (Optional[str]): Where to save the JSON report.
        seed (int): Seed for random sampling.
        random_samples (int): Random alternating matrices per field.
        workers (int): Process count for plane censuses.
    """

    q_list: List[int] = field(default_factory=list)
    surfaces: List[str] = field(default_factory=list)
    checks: List[str] = field(default_factory=list)
    budget: BudgetConfig = field(default_factory=BudgetConfig)
    output_path: Optional[str] = None
    seed: int = RANDOM_SEED
    random_samples: int = RANDOM_SAMPLES
    workers: int = 1

    def __post_init__(self) -> None:
        """
        Validate the run configuration.

        Raises:
            ConfigError: When a field order, check or surface is invalid.
        """
        if not self.q_list:
            raise ConfigError("q_list must not be empty")
        for q in self.q_list:
            if not isinstance(q, int) or not is_prime_power(q):
                raise ConfigError(f"q={q!r} is not a prime power")

        unknown = [c for c in self.checks if c not in ALL_CHECKS]
        if unknown:
            raise ConfigError(f"unknown checks: {unknown}")

        if self.workers < 1:
            raise ConfigError("workers must be at least 1")

        if CHECK_QUADRIC_CENSUS in self.checks:
            outside = [q for q in self.q_list if q not in QUADRIC_CENSUS_FIELDS]
            if outside:
                raise ConfigError(
                    f"quadric_census permitted only for q in {QUADRIC_CENSUS_FIELDS}, got {outside}"
                )

        needs_space = {CHECK_BOUNDS, CHECK_SECTIONS, CHECK_LINES, CHECK_TANGENCY, CHECK_ALTFORM}
        if needs_space & set(self.checks):
            for q in self.q_list:
                if q > self.budget.max_space_q:
                    raise ConfigError(
                        f"q={q} exceeds max_space_q={self.budget.max_space_q} for the selected checks"
                    )

        surface_checks = {CHECK_BOUNDS, CHECK_SECTIONS, CHECK_LINES, CHECK_TANGENCY}
        if surface_checks & set(self.checks) and not self.surfaces:
            raise ConfigError("surface checks selected but no surfaces given")

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> "AuditConfig":
        """
        Build a run configuration over the defaults from ``config/audit.yaml``.

        Args:
            data (Dict[str, Any]): Parsed JSON run configuration.

        Returns:
            AuditConfig: The validated configuration.

        Raises:
            ConfigError: On unknown keys or invalid values.
        """
        if not isinstance(data, dict):
            raise ConfigError("run configuration must be a JSON object")

        known = {
            "q_list",
            "surfaces",
            "checks",
            "budget",
            "output_path",
            "seed",
            "random_samples",
            "workers",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")

        defaults: Dict[str, Any] = load_audit_defaults()
        merged: Dict[str, Any] = {**defaults.get("run", {}), **data}
        budget = BudgetConfig.from_defaults(data.get("budget"))

        return cls(
            q_list=list(merged.get("q_list", [])),
            surfaces=list(merged.get("surfaces", [])),
            checks=list(merged.get("checks", [CHECK_BOUNDS, CHECK_SECTIONS])),
            budget=budget,
            output_path=merged.get("output_path"),
            seed=int(merged.get("seed", RANDOM_SEED)),
            random_samples=int(merged.get("random_samples", RANDOM_SAMPLES)),
            workers=int(merged.get("workers", 1)),
        )

    @classmethod
    def from_json_file(cls, filepath: str) -> "AuditConfig":
        return cls.from_mapping(read_json_file(filepath))
