"""
cyclicweights - Usage Examples
Walks through the library API from field arithmetic to the weight tables
"""

from cyclicweights import (
    ClaimValidator,
    CodeFamily,
    Genus2CurveParams,
    JSONReporter,
    MarkdownReporter,
    dual_weight_set,
    generator_poly,
    genus2_point_count,
    get_field,
    min_distance_C,
    mn_simple_exists,
    predict_weight_set,
    reproduce_tables,
    weil_ap_check,
    x_points,
)
from cyclicweights.numtheory import intervals


def example_1_field_and_codes():
    """Example 1: fields and generator polynomials"""
    print("\n" + "=" * 60)
    print("EXAMPLE 1: Fields and generator polynomials")
    print("=" * 60)

    spec = get_field(6)
    alpha = spec.alpha
    print(f"GF(2^6) modulo {spec.modulus_hex}, alpha^63 = {(alpha ** 63).hex()}")
    for family in CodeFamily:
        g = generator_poly(family, spec)
        print(f"  {family.value:8s} deg g = {g.degree}")


def example_2_dual_weights():
    """Example 2: enumerated against predicted dual weights"""
    print("\n" + "=" * 60)
    print("EXAMPLE 2: Dual weights at m = 7")
    print("=" * 60)

    spec = get_field(7)
    observed = sorted(dual_weight_set(spec))
    report = predict_weight_set(7)
    bounds = intervals(7)
    print(f"I = {list(bounds.I)}, J = {list(bounds.J)}")
    print(f"observed nonzero weights: {[w for w in observed if w]}")
    print(f"weights in I but outside J: {report.extras()}")
    print(report.to_dataframe().head(10).to_string(index=False))


def example_3_witnesses():
    """Example 3: Maisner-Nart witnesses for single traces"""
    print("\n" + "=" * 60)
    print("EXAMPLE 3: Simple Jacobian witnesses")
    print("=" * 60)

    for a1 in (35, -37, -41):
        witness = mn_simple_exists(7, a1)
        if witness is None:
            print(f"  a1={a1}: no simple witness")
        else:
            print(f"  a1={a1}: a2={witness.a2}, Delta={witness.delta_Z}, delta={witness.delta_2adic}")


def example_4_curve_and_distance():
    """Example 4: points of X, the Weil bound and the minimum distance"""
    print("\n" + "=" * 60)
    print("EXAMPLE 4: Minimum distance of C")
    print("=" * 60)

    for m in (5, 6, 7):
        spec = get_field(m)
        points = x_points(spec)
        check = weil_ap_check(spec, points=points)
        result = min_distance_C(spec)
        print(f"  m={m}: N={points.count}, good={points.good_count}, "
              f"Weil margin={check.margin}, d={result.d} ({result.method})")

    spec = get_field(5)
    record = genus2_point_count(Genus2CurveParams(spec.alpha, spec.one, spec.alpha ** 3), spec)
    print(f"  genus-2 curve over GF(2^5): N={record.N}, codeword weight {record.weight}")


def example_5_tables_and_reports():
    """Example 5: reproduce the weight tables and report on them"""
    print("\n" + "=" * 60)
    print("EXAMPLE 5: Weight tables")
    print("=" * 60)

    validator = ClaimValidator("weight tables")
    rows = reproduce_tables()
    for row in rows:
        validator.expect_table_row(row)

    payload = {"rows": [row.to_dict() for row in rows]}
    print(JSONReporter(payload, validator.get_results()["results"]).generate()[:400] + "...")
    print(MarkdownReporter(validator.to_dataframe()[["context", "passed", "message"]]).generate())

    if validator.is_valid():
        print("✓ All table rows reproduced")
    else:
        for fail in validator.get_failed_validations():
            print(f"  - {fail['message']}")


def main():
    """Run all examples"""
    example_1_field_and_codes()
    example_2_dual_weights()
    example_3_witnesses()
    example_4_curve_and_distance()
    example_5_tables_and_reports()


if __name__ == "__main__":
    main()
