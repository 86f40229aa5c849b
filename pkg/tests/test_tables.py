"""Exhaustive sweeps of the embedded decision tables against reference copies.

The reference matrices below are typed out independently of the data files
the engine loads; the sweeps must agree cell for cell.
"""

from __future__ import annotations

import itertools

import pytest

from sora_engine.engine import (
    ARC_ORDER,
    SAIL_ORDER,
    ArcResult,
    CategoryCReferral,
    GrcResult,
    apply_ground_mitigations,
    apply_air_mitigations,
    determine_sail,
    initial_arc,
    intrinsic_grc,
)
from sora_engine.model import (
    AirframeKind,
    AirspaceClass,
    AirspaceContext,
    AltitudeBand,
    AreaKind,
    AirspaceEnvironment,
    MitigationClaim,
    MitigationKind,
    OperationalScenario,
    OverflownArea,
    Robustness,
    RobustnessLevel,
    SightMode,
    UavSpec,
)

# --- reference copies -------------------------------------------------------

# (sight, area) -> [1m, 3m, 8m, >8m]; None marks a not-assessable cell
GRC_REFERENCE = {
    ("VLOS", "controlled-ground-area"): [1, 2, 3, 4],
    ("BVLOS", "controlled-ground-area"): [1, 2, 3, 4],
    ("VLOS", "sparsely-populated"): [2, 3, 4, 5],
    ("BVLOS", "sparsely-populated"): [3, 4, 5, 6],
    ("VLOS", "populated"): [4, 5, 6, 8],
    ("BVLOS", "populated"): [5, 6, 8, 10],
    ("VLOS", "assembly-of-people"): [7, None, None, None],
    ("BVLOS", "assembly-of-people"): [8, None, None, None],
}

# robustness level -> delta, per mitigation
M1_DELTAS = {"none": 0, "low": -1, "medium": -2, "high": -4}
M2_DELTAS = {"none": 0, "low": 0, "medium": -1, "high": -2}
M3_DELTAS = {"none": 1, "low": 1, "medium": 0, "high": -1}
M3_ABSENT = 1

# AEC -> (density rating, initial ARC)
ARC_REFERENCE = {
    1: (5, "ARC-d"),
    2: (5, "ARC-d"),
    3: (5, "ARC-d"),
    4: (3, "ARC-c"),
    5: (3, "ARC-c"),
    6: (3, "ARC-c"),
    7: (3, "ARC-c"),
    8: (3, "ARC-c"),
    9: (2, "ARC-c"),
    10: (1, "ARC-b"),
    11: (1, "ARC-b"),
    12: (1, "ARC-a"),
}

# final GRC row -> SAIL per ARC column a..d; rows keyed by the highest GRC they cover
SAIL_REFERENCE = [
    (2, ["I", "II", "IV", "VI"]),
    (3, ["II", "II", "IV", "VI"]),
    (4, ["III", "III", "IV", "VI"]),
    (5, ["IV", "IV", "IV", "VI"]),
    (6, ["V", "V", "V", "VI"]),
    (7, ["VI", "VI", "VI", "VI"]),
]

# representative inputs that pin each size/energy column
DIMENSION_FOR_COLUMN = [0.5, 2.0, 5.0, 12.0]
ENERGY_FOR_COLUMN = [100.0, 10_000.0, 500_000.0, 2_000_000.0]


def uav_for_column(col: int) -> UavSpec:
    return UavSpec(
        label="sweep",
        airframe_kind=AirframeKind.MULTICOPTER,
        max_dimension=DIMENSION_FOR_COLUMN[col],
        mass_takeoff_max=1.0,
        v_cruise=0.0,
        v_terminal=1.0,
    )


def uav_for_energy(col: int) -> UavSpec:
    speed = (2.0 * ENERGY_FOR_COLUMN[col]) ** 0.5
    return UavSpec(
        label="sweep",
        airframe_kind=AirframeKind.MULTICOPTER,
        max_dimension=0.5,
        mass_takeoff_max=1.0,
        v_cruise=0.0,
        v_terminal=speed,
    )


def consistent_airspaces() -> list[AirspaceContext]:
    contexts = []
    for band, cls, controlled, env, area, tmz, atypical in itertools.product(
        AltitudeBand, AirspaceClass, (True, False), AirspaceEnvironment, AreaKind, (True, False), (True, False)
    ):
        if cls in (AirspaceClass.B, AirspaceClass.C, AirspaceClass.D) and not controlled:
            continue
        contexts.append(
            AirspaceContext(
                altitude_band=band,
                airspace_class=cls,
                controlled=controlled,
                environment=env,
                area_kind=area,
                mode_s_veil_or_tmz=tmz,
                atypical_segregated=atypical,
            )
        )
    return contexts


def ground_claim(kind: MitigationKind, level: str) -> MitigationClaim:
    robustness = Robustness(level)
    return MitigationClaim(
        kind=kind,
        robustness=RobustnessLevel(robustness, robustness),
        evidence_refs=() if robustness is Robustness.NONE else ("sweep/ref",),
    )


class TestGrcTableSweep:
    def test_every_cell_matches_the_reference(self):
        cells_checked = 0
        na_cells = 0
        for (sight, area), expected_row in GRC_REFERENCE.items():
            scenario = OperationalScenario(SightMode(sight), OverflownArea(area))
            for col, expected in enumerate(expected_row):
                by_dimension = intrinsic_grc(uav_for_column(col), scenario)
                assert by_dimension.intrinsic == expected, (sight, area, col)
                by_energy = intrinsic_grc(uav_for_energy(col), scenario)
                assert by_energy.intrinsic == expected, (sight, area, col, "energy")
                cells_checked += 1
                if expected is None:
                    na_cells += 1
                    assert by_dimension.na_cell is not None
        # 7 printed rows x 4 columns = 28 cells; the shared CGA row is
        # exercised under both sight modes, and both assembly rows carry
        # three not-assessable cells each
        assert cells_checked == 32
        assert na_cells == 6

    def test_column_monotonicity(self):
        for expected_row in GRC_REFERENCE.values():
            values = [v for v in expected_row if v is not None]
            assert values == sorted(values)

    def test_row_monotonicity_down_the_printed_rows(self):
        printed_order = [
            ("VLOS", "controlled-ground-area"),
            ("VLOS", "sparsely-populated"),
            ("BVLOS", "sparsely-populated"),
            ("VLOS", "populated"),
            ("BVLOS", "populated"),
            ("VLOS", "assembly-of-people"),
            ("BVLOS", "assembly-of-people"),
        ]
        for col in range(4):
            column = [GRC_REFERENCE[key][col] for key in printed_order]
            values = [v for v in column if v is not None]
            assert values == sorted(values), col


class TestGroundMitigationSweep:
    def test_all_robustness_combinations_for_all_intrinsic_values(self):
        levels = ["none", "low", "medium", "high"]
        combos_checked = 0
        for intrinsic_value in range(1, 11):
            intrinsic = GrcResult(intrinsic=intrinsic_value, size_column="3m", energy_joules=1.0)
            for l1, l2, l3 in itertools.product(levels, repeat=3):
                expected = max(
                    intrinsic_value + M1_DELTAS[l1] + M2_DELTAS[l2] + M3_DELTAS[l3], 1
                )
                result = apply_ground_mitigations(
                    intrinsic,
                    (
                        ground_claim(MitigationKind.M1_STRATEGIC_GROUND, l1),
                        ground_claim(MitigationKind.M2_IMPACT_REDUCTION, l2),
                        ground_claim(MitigationKind.M3_ERP, l3),
                    ),
                )
                assert result.final == expected, (intrinsic_value, l1, l2, l3)
                assert result.category_c_referral == (expected > 7)
                combos_checked += 1
        assert combos_checked == 10 * 4**3

    def test_no_claims_always_costs_one(self):
        for intrinsic_value in range(1, 11):
            intrinsic = GrcResult(intrinsic=intrinsic_value, size_column="3m", energy_joules=1.0)
            result = apply_ground_mitigations(intrinsic, ())
            assert result.final == intrinsic_value + M3_ABSENT


class TestArcTableSweep:
    def test_totality_over_consistent_contexts(self):
        contexts = consistent_airspaces()
        assert len(contexts) > 500
        for context in contexts:
            result = initial_arc(context)
            density, arc = ARC_REFERENCE[result.aec]
            assert result.density_rating == density
            assert result.initial == arc
            assert initial_arc(context) == result

    def test_all_twelve_aecs_reachable(self):
        seen = set()
        for context in consistent_airspaces():
            seen.add(initial_arc(context).aec)
        assert seen == set(range(1, 13))

    def test_constructive_reference_rows(self):
        def ctx(**kw):
            base = dict(
                altitude_band=AltitudeBand.BELOW_400FT,
                airspace_class=AirspaceClass.G,
                controlled=False,
                environment=AirspaceEnvironment.NON_AIRPORT,
                area_kind=AreaKind.RURAL,
                mode_s_veil_or_tmz=False,
                atypical_segregated=False,
            )
            base.update(kw)
            return AirspaceContext(**base)

        mid = AltitudeBand.ABOVE_400FT_BELOW_FL600
        constructive = {
            1: ctx(environment=AirspaceEnvironment.AIRPORT_HELIPORT, airspace_class=AirspaceClass.C, controlled=True),
            2: ctx(altitude_band=mid, mode_s_veil_or_tmz=True),
            3: ctx(altitude_band=mid, airspace_class=AirspaceClass.D, controlled=True),
            4: ctx(altitude_band=mid, area_kind=AreaKind.URBAN),
            5: ctx(altitude_band=mid),
            6: ctx(environment=AirspaceEnvironment.AIRPORT_HELIPORT, airspace_class=AirspaceClass.G),
            7: ctx(mode_s_veil_or_tmz=True),
            8: ctx(airspace_class=AirspaceClass.E, controlled=True),
            9: ctx(area_kind=AreaKind.URBAN),
            10: ctx(),
            11: ctx(altitude_band=AltitudeBand.ABOVE_FL600),
            12: ctx(atypical_segregated=True),
        }
        for aec, context in constructive.items():
            result = initial_arc(context)
            assert result.aec == aec, (aec, result)
            density, arc = ARC_REFERENCE[aec]
            assert (result.density_rating, result.initial) == (density, arc)


class TestSailTableSweep:
    def arc(self, residual: str) -> ArcResult:
        return ArcResult(aec=1, density_rating=5, initial="ARC-d", residual=residual)

    def grc(self, final: int) -> GrcResult:
        return GrcResult(intrinsic=min(final, 10), size_column="3m", energy_joules=1.0, final=final)

    def expected_sail(self, final: int, col: int) -> str:
        for grc_max, row in SAIL_REFERENCE:
            if final <= grc_max:
                return row[col]
        raise AssertionError("unreachable")

    def test_every_cell_matches_the_reference(self):
        cells = set()
        for final in range(1, 8):
            for col, residual in enumerate(ARC_ORDER):
                result = determine_sail(self.grc(final), self.arc(residual))
                assert result.sail == self.expected_sail(final, col), (final, residual)
                row_key = next(g for g, _ in SAIL_REFERENCE if final <= g)
                cells.add((row_key, col))
        assert len(cells) == 24

    def test_category_c_row(self):
        for residual in ARC_ORDER:
            with pytest.raises(CategoryCReferral):
                determine_sail(self.grc(8), self.arc(residual))

    def test_monotone_in_grc_for_fixed_arc(self):
        for col, residual in enumerate(ARC_ORDER):
            ranks = [
                SAIL_ORDER.index(determine_sail(self.grc(final), self.arc(residual)).sail)
                for final in range(1, 8)
            ]
            assert ranks == sorted(ranks), residual

    def test_monotone_in_arc_for_fixed_grc(self):
        for final in range(1, 8):
            ranks = [
                SAIL_ORDER.index(determine_sail(self.grc(final), self.arc(residual)).sail)
                for residual in ARC_ORDER
            ]
            assert ranks == sorted(ranks), final

    def test_column_d_is_constant_six(self):
        for final in range(1, 8):
            assert determine_sail(self.grc(final), self.arc("ARC-d")).sail == "VI"


class TestArcOrderingProperties:
    def test_residual_never_exceeds_initial(self):
        airport = AirspaceContext(
            altitude_band=AltitudeBand.BELOW_400FT,
            airspace_class=AirspaceClass.C,
            controlled=True,
            environment=AirspaceEnvironment.AIRPORT_HELIPORT,
            area_kind=AreaKind.URBAN,
        )
        claims = tuple(
            MitigationClaim(
                kind=MitigationKind.AIR_OPERATIONAL_RESTRICTION,
                robustness=RobustnessLevel(Robustness.HIGH, Robustness.HIGH),
                evidence_refs=("r",),
            )
            for _ in range(2)
        )
        initial = initial_arc(airport)
        residual = apply_air_mitigations(initial, claims, airport)
        assert ARC_ORDER.index(residual.residual) <= ARC_ORDER.index(initial.initial)
