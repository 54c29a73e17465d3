"""Small shared vocabulary: curve case tags and the infinite-multiplicity marker."""

import enum


class CaseTag(enum.Enum):
    """Canonical form of the defining conic equation.

    I   : y^2 + rho*x^2 + sigma = 0            (characteristic != 2)
    II  : y^2 + rho*x^2 + sigma = 0            (characteristic 2)
    III : y^2 + rho*x^2 + x + sigma = 0        (characteristic 2)
    IV  : y^2 + x*y + rho*x^2 + sigma = 0      (characteristic 2)
    """

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"

    def __str__(self):
        return self.value


class _Omega:
    """Countably infinite count/multiplicity marker (serialized as "omega")."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "omega"

    def __eq__(self, other):
        return isinstance(other, _Omega)

    def __hash__(self):
        return hash("omega")


OMEGA = _Omega()

#: Valuation of the zero element.
INFINITE_VALUATION = float("inf")
