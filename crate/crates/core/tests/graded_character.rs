//! Degree distributions against graded characters of KR tensor products.
//!
//! In type A the tensor product of single columns `B^{i₁,1} ⊗ ⋯` has graded
//! character `Σ_ν K_{ν', μ}(q) s_ν`, with `μ` the column heights and `K` the
//! Kostka-Foulkes polynomials; shapes with more than `n + 1` rows vanish.
//! The expected counts below are `Σ_ν [q^k] K_{ν',μ}(q) · dim V(ν)`, worked
//! out by hand.

use std::collections::BTreeMap;

use qbruhat::degree::DegreeCalculator;
use qbruhat::qls::enumerate_hat;
use qbruhat::Context;

fn distribution(t: &str, l: &str) -> BTreeMap<i64, usize> {
    let ctx = Context::parse(t, l).unwrap();
    let calc = DegreeCalculator::new(&ctx);
    let mut out = BTreeMap::new();
    for p in enumerate_hat(&ctx).unwrap() {
        *out.entry(calc.degree(&p).unwrap()).or_insert(0) += 1;
    }
    out
}

#[test]
fn a1_two_boxes() {
    // μ = (1,1): K_{(1,1)} = 1 → s_2 (dim 3); K_{(2)} = q → s_{11} (dim 1)
    assert_eq!(distribution("A1", "2"), BTreeMap::from([(-1, 1), (0, 3)]));
}

#[test]
fn a1_three_boxes() {
    // μ = (1,1,1): s_3 at 1; s_{21} at q + q²
    assert_eq!(distribution("A1", "3"), BTreeMap::from([(-2, 2), (-1, 2), (0, 4)]));
}

#[test]
fn a2_adjoint() {
    // μ = (2,1): s_{21} (dim 8) at 1; s_{111} (dim 1) at q
    assert_eq!(distribution("A2", "1,1"), BTreeMap::from([(-1, 1), (0, 8)]));
}

#[test]
fn a2_two_one() {
    // μ = (2,1,1): s_{31} (15) at 1; s_{22} (6) at q; s_{211} (3) at q + q²;
    // s_{1111} at q³ vanishes for sl3
    assert_eq!(distribution("A2", "2,1"), BTreeMap::from([(-2, 3), (-1, 9), (0, 15)]));
}

#[test]
fn single_columns_have_degree_zero() {
    for (t, l) in [("A3", "0,1,0"), ("A2", "0,1"), ("C2", "1,0"), ("G2", "0,1")] {
        let d = distribution(t, l);
        assert_eq!(d.keys().copied().collect::<Vec<_>>(), vec![0], "{t} {l}");
    }
}

#[test]
fn sizes_match_dimensions() {
    // products of fundamental module dimensions
    let total = |t, l| distribution(t, l).values().sum::<usize>();
    assert_eq!(total("C2", "1,1"), 20);
    assert_eq!(total("B2", "1,0"), 5);
    assert_eq!(total("A3", "1,0,1"), 16);
}
