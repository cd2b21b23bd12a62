"""Built-in verification suite for the worked examples at (x_1..x_d)^2 and (x^2 y)."""
from dataclasses import dataclass

from .families import (CertificateVerdict, FlatnessVerdict, certify_reduced,
                       example1_catalog, family_germ, flat_limit,
                       flatness_report, integrality_criterion, smoothing_chain,
                       specialize, split_off_family)
from .groebner import Ideal, ideal_equal, intersect
from .hilbtangent import (is_singular_point, square_of_maximal,
                          tangent_dimension, validate_hom)
from .poly import RingContext
from .quotient import colength, monomial_primary_decomposition, support_points


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def passed(self):
        return self.expected == self.actual


@dataclass
class SuiteResult:
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {
            "passed": self.passed,
            "checks": [{"name": c.name, "expected": c.expected, "actual": c.actual,
                        "pass": c.passed} for c in self.checks],
        }


def _ideal_text(I):
    return "(" + ", ".join(str(g) for g in I.groebner()) + ")"


def _points_text(points):
    return [["(" + ", ".join(str(c) for c in p) + ")", m] for p, m in points]


def _colength_checks():
    for d in range(1, 7):
        yield Check(f"colength_m2_d{d}", d + 1, colength(square_of_maximal(d)))


def _tangent_checks():
    for d in range(2, 6):
        yield Check(f"tangent_dim_m2_d{d}", d * d * (d + 1) // 2, tangent_dimension(square_of_maximal(d)))
    yield Check("singular_m2_d2", False, is_singular_point(square_of_maximal(2)))
    yield Check("singular_m2_d3", True, is_singular_point(square_of_maximal(3)))


def _catalog_checks():
    I = square_of_maximal(3)
    catalog = example1_catalog()
    reports = [flatness_report(F) for F in catalog]
    constant = sum(r.verdict == FlatnessVerdict.CONSTANT and r.generic_colength == 4 for r in reports)
    yield Check("catalog_constant_colength4_families", 18, constant)
    valid = sum(validate_hom(I, family_germ(F)) for F in catalog)
    yield Check("catalog_valid_germs", 18, valid)
    cert = certify_reduced(I, catalog)
    yield Check("catalog_germ_rank", 18, cert.germ_rank)
    yield Check("catalog_certificate", CertificateVerdict.CERTIFIED.value, cert.verdict.value)


def _x2y_checks():
    R = RingContext(["x", "y"])
    I = Ideal.parse(R, "x^2*y")
    comps = monomial_primary_decomposition(I)
    yield Check("x2y_components", ["(x^2)", "(y)"], [_ideal_text(c.ideal) for c in comps])
    meet = comps[0].ideal
    for c in comps[1:]:
        meet = intersect(meet, c.ideal)
    yield Check("x2y_intersection_recovers", True, ideal_equal(meet, I))
    origin = (0, 0)
    for label, text, verdict in (("y", "y", "INTEGRAL"), ("x2", "x^2", "NOT_INTEGRAL")):
        rep = integrality_criterion(Ideal.parse(R, text), origin)
        yield Check(f"x2y_criterion_{label}", verdict, rep.verdict.value)
        yield Check(f"x2y_cotangent_dims_{label}", [1, 1] if label == "y" else [2, 1],
                    [rep.cotangent_dim, rep.reduced_cotangent_dim])


def _smoothing_checks():
    chain2 = smoothing_chain(square_of_maximal(2))
    yield Check("smoothing_d2_steps", 1, len(chain2.steps))
    yield Check("smoothing_d2_generic_colengths", [3], [s.report.generic_colength for s in chain2.steps])
    yield Check("smoothing_d2_flat_limit", "(y, x^3)", _ideal_text(flat_limit(chain2.steps[0].family, 0)))
    yield Check("smoothing_d2_terminal", ["CONSTANT", 3],
                [chain2.terminal_report.verdict.value, chain2.terminal_report.generic_colength])
    chain3 = smoothing_chain(square_of_maximal(3))
    yield Check("smoothing_d3_steps", 2, len(chain3.steps))
    yield Check("smoothing_d3_generic_colengths", [4, 4], [s.report.generic_colength for s in chain3.steps])
    yield Check("smoothing_d3_flat_limit_colengths", [4, 4],
                [colength(flat_limit(s.family, 0)) for s in chain3.steps])
    t = chain3.terminal
    pts = support_points(specialize(t, {t.parameters[0]: 1}))
    yield Check("smoothing_d3_terminal_points", [1, 1, 1, 1], [m for _, m in pts])


def _split_off_checks():
    F = split_off_family(3, 3)
    yield Check("split_off_3_3_base", True, ideal_equal(F.base, square_of_maximal(3)))
    pts = support_points(specialize(F, {"alpha3": 1}))
    yield Check("split_off_3_3_support", [["(0, 0, 0)", 1], ["(0, 0, 1)", 3]], _points_text(pts))


def worked_examples_suite(overrides=None):
    """Run every check; ``overrides`` maps check names to replacement expected values."""
    overrides = overrides or {}
    checks = []
    for group in (_colength_checks, _tangent_checks, _catalog_checks,
                  _x2y_checks, _smoothing_checks, _split_off_checks):
        checks.extend(group())
    for c in checks:
        if c.name in overrides:
            c.expected = overrides[c.name]
    unknown = set(overrides) - {c.name for c in checks}
    if unknown:
        raise KeyError(f"unknown check name(s): {', '.join(sorted(unknown))}")
    return SuiteResult(checks)
