use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use qbruhat::affine_oracle::Oracle;
use qbruhat::degree::DegreeCalculator;
use qbruhat::qls::{self, enumerate, enumerate_hat, evaluate, validate, QlsPath, Variant};
use qbruhat::{Context, EdgeKind, Rational, TieBreak};

struct Shape {
    ctx: Context,
    hat: Vec<QlsPath>,
}

const NAMES: [(&str, &str); 6] = [
    ("A1", "2"),
    ("A2", "2,1"),
    ("A2", "1,1"),
    ("C2", "1,1"),
    ("B2", "0,2"),
    ("G2", "1,0"),
];

fn shapes() -> &'static [Shape] {
    static SHAPES: OnceLock<Vec<Shape>> = OnceLock::new();
    SHAPES.get_or_init(|| {
        NAMES
            .iter()
            .map(|(t, l)| {
                let ctx = Context::parse(t, l).unwrap();
                let hat = enumerate_hat(&ctx).unwrap().into_iter().collect();
                Shape { ctx, hat }
            })
            .collect()
    })
}

fn shape_and_path() -> impl Strategy<Value = (usize, usize)> {
    (0..NAMES.len()).prop_flat_map(|s| (Just(s), 0..shapes()[s].hat.len()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hat_paths_revalidate((s, i) in shape_and_path()) {
        let sh = &shapes()[s];
        let p = &sh.hat[i];
        prop_assert!(validate(&sh.ctx, p, Variant::Hat).unwrap());
        prop_assert!(validate(&sh.ctx, p, Variant::Tilde).unwrap());
    }

    #[test]
    fn degree_matches_lift((s, i) in shape_and_path()) {
        let sh = &shapes()[s];
        let p = &sh.hat[i];
        let calc = DegreeCalculator::new(&sh.ctx);
        let d = calc.degree(p).unwrap();
        prop_assert!(d <= 0);
        let lift = calc.lift(p).unwrap();
        prop_assert_eq!(lift.endpoint_delta().unwrap(), -d);
        let one = Rational::from_int(1);
        prop_assert_eq!(lift.endpoint_finite(&sh.ctx).unwrap(), evaluate(&sh.ctx, p, &one).unwrap());
        let rev = DegreeCalculator::with_tie_break(&sh.ctx, TieBreak::Reverse);
        prop_assert_eq!(rev.degree(p).unwrap(), d);
    }

    #[test]
    fn lift_passes_oracle((s, i) in shape_and_path()) {
        let sh = &shapes()[s];
        let lift = DegreeCalculator::new(&sh.ctx).lift(&sh.hat[i]).unwrap();
        let oracle = Oracle::new(&sh.ctx, 12);
        prop_assert!(oracle.verify_ls_path(&lift).unwrap());
    }

    #[test]
    fn corrupting_a_delta_fails((s, i) in shape_and_path(), k in 0usize..4, bump in prop_oneof![Just(-1i64), Just(1)]) {
        let sh = &shapes()[s];
        let lift = DegreeCalculator::new(&sh.ctx).lift(&sh.hat[i]).unwrap();
        prop_assume!(k < lift.weights.len());
        let mut deltas: Vec<i64> = lift.weights.iter().map(|w| w.delta).collect();
        deltas[k] += bump;
        let bad = lift.with_deltas(&deltas);
        let oracle = Oracle::new(&sh.ctx, 12);
        prop_assert!(!oracle.verify_ls_path(&bad).unwrap());
    }

    #[test]
    fn literal_and_record_roundtrip((s, i) in shape_and_path()) {
        let sh = &shapes()[s];
        let p = &sh.hat[i];
        let lit = p.to_literal(&sh.ctx);
        prop_assert_eq!(&QlsPath::parse_literal(&sh.ctx, &lit).unwrap(), p);
        let json = serde_json::to_string(&p.to_record(&sh.ctx)).unwrap();
        let back: qls::PathRecord = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&QlsPath::from_record(&sh.ctx, &back).unwrap(), p);
    }

    #[test]
    fn endpoints_are_integral((s, i) in shape_and_path()) {
        let sh = &shapes()[s];
        let p = &sh.hat[i];
        prop_assert!(evaluate(&sh.ctx, p, &Rational::zero()).unwrap().is_zero());
        let end = evaluate(&sh.ctx, p, &Rational::from_int(1)).unwrap();
        prop_assert!(end.0.iter().all(|c| c.is_integer()));
    }

    #[test]
    fn projection_lands_in_cosets(s in 0..NAMES.len(), word in prop::collection::vec(0usize..8, 0..12)) {
        let ctx = &shapes()[s].ctx;
        let g = ctx.group();
        let word: Vec<usize> = word.iter().map(|i| i % g.rank()).collect();
        let w = g.from_word(&word);
        let rep = ctx.cosets().project(w);
        let x = ctx.cosets().element(rep);
        prop_assert!(g.length(x) <= g.length(w));
        prop_assert_eq!(g.act(x, ctx.lambda()), g.act(w, ctx.lambda()));
    }
}

#[test]
fn validation_agrees_with_enumeration() {
    for (k, sh) in shapes().iter().enumerate().take(4) {
        let hat: BTreeSet<_> = sh.hat.iter().cloned().collect();
        let loose = enumerate(&sh.ctx, Variant::Unconstrained, qls::PATH_CAP).unwrap();
        // in A1 every edge pairs to 2 with Λ = 2ϖ₁, so nothing is filtered
        if k > 0 {
            assert!(loose.len() > hat.len(), "{:?}", NAMES[k]);
        }
        assert!(hat.is_subset(&loose));
        for p in &loose {
            assert_eq!(validate(&sh.ctx, p, Variant::Hat).unwrap(), hat.contains(p));
        }
    }
}

#[test]
fn graph_is_strongly_connected() {
    for sh in shapes() {
        let g = sh.ctx.graph();
        for x in 0..g.num_vertices() {
            for y in 0..g.num_vertices() {
                let p = g.shortest_path(x, y, TieBreak::Forward);
                assert!(g.is_valid_path(&p));
                assert_eq!(p.len(), g.directed_distance(x, y));
            }
        }
    }
}

#[test]
fn bruhat_edges_raise_length() {
    for sh in shapes() {
        let g = sh.ctx.graph();
        let group = sh.ctx.group();
        let len = |r| group.length(sh.ctx.cosets().element(r));
        for e in g.edges() {
            match e.kind {
                EdgeKind::Bruhat => assert_eq!(len(e.target), len(e.source) + 1),
                EdgeKind::Quantum => assert!(len(e.target) < len(e.source) + 1),
            }
        }
    }
}
