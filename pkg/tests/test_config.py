import pytest
from src.constants import MAX_FIELD_Q
from src.entity import config_entity
from src.entity.config_entity import AuditConfig, BudgetConfig, is_prime_power
from src.exception import BudgetExceeded, ConfigError


def test_is_prime_power():
    assert [n for n in range(1, 30) if is_prime_power(n)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29,
    ]


class TestBudget:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("AUDIT_MAX_FIELD_Q", raising=False)
        assert BudgetConfig().max_field_q == MAX_FIELD_Q

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("AUDIT_MAX_FIELD_Q", "8")
        budget = BudgetConfig()
        assert budget.max_field_q == 8
        with pytest.raises(BudgetExceeded):
            budget.check_field(9)

    def test_invalid_environment(self, monkeypatch):
        monkeypatch.setenv("AUDIT_MAX_SPACE_Q", "many")
        with pytest.raises(ConfigError):
            BudgetConfig()

    @pytest.mark.parametrize("data", [{"max_points": 0}, {"max_field_q": "64"}, {"max_depth": 3}])
    def test_from_mapping_rejects(self, data):
        with pytest.raises(ConfigError):
            BudgetConfig.from_mapping(data)

    def test_layers_of_defaults(self, monkeypatch):
        defaults = {"budget": {"max_space_q": 4, "max_points": 500}}
        monkeypatch.setattr(config_entity, "load_audit_defaults", lambda: defaults)
        monkeypatch.delenv("AUDIT_MAX_POINTS", raising=False)
        monkeypatch.setenv("AUDIT_MAX_SPACE_Q", "8")
        assert BudgetConfig.from_defaults().max_space_q == 8
        assert BudgetConfig.from_defaults().max_points == 500
        assert BudgetConfig.from_defaults({"max_space_q": 3}).max_space_q == 3
        with pytest.raises(ConfigError):
            BudgetConfig.from_defaults([3])

    def test_run_configuration_uses_the_layers(self, monkeypatch):
        monkeypatch.setattr(
            config_entity, "load_audit_defaults", lambda: {"budget": {"max_space_q": 2}}
        )
        monkeypatch.delenv("AUDIT_MAX_SPACE_Q", raising=False)
        with pytest.raises(ConfigError):
            AuditConfig.from_mapping({"q_list": [3], "surfaces": ["hyperbolic"], "checks": ["bounds"]})

    def test_checks(self):
        budget = BudgetConfig(max_field_q=16, max_space_q=4, max_points=100)
        budget.check_space(4)
        with pytest.raises(BudgetExceeded):
            budget.check_space(5)
        with pytest.raises(BudgetExceeded):
            budget.check_points(101)


class TestAuditConfig:
    def test_valid(self):
        config = AuditConfig(q_list=[2, 3], surfaces=["hyperbolic"], checks=["bounds", "sections"])
        assert config.workers == 1

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"q_list": []},
            {"q_list": [6]},
            {"q_list": [2], "checks": ["everything"]},
            {"q_list": [4], "checks": ["quadric_census"]},
            {"q_list": [2], "checks": ["sections"]},
            {"q_list": [2], "surfaces": ["hyperbolic"], "checks": ["bounds"], "workers": 0},
            {"q_list": [32], "surfaces": ["hyperbolic"], "checks": ["lines"]},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ConfigError):
            AuditConfig(**kwargs)

    def test_degree_gate_needs_no_surfaces(self):
        assert AuditConfig(q_list=[49], checks=["degree_gate"]).checks == ["degree_gate"]

    def test_from_mapping_merges_defaults(self):
        config = AuditConfig.from_mapping({"q_list": [3], "surfaces": ["hyperbolic"]})
        assert config.checks == ["bounds", "sections"]
        assert config.seed == 42

    def test_from_mapping_rejects_unknown_keys(self):
        with pytest.raises(ConfigError):
            AuditConfig.from_mapping({"q_list": [2], "verbose": True})
        with pytest.raises(ConfigError):
            AuditConfig.from_mapping([2, 3])
