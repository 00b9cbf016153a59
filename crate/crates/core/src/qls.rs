//! Quantum Lakshmibai-Seshadri paths.
//!
//! A path `η = (x₁, …, x_s ; 0 = σ₀ < σ₁ < ⋯ < σ_s = 1)` with
//! `x_k ∈ W₀ᴶ`, `x_k ≠ x_{k+1}`, such that each `(x_{k+1} → x_k)` is joined
//! by a directed σ_k-path. The *hat* variant additionally asks for one of
//! length `ℓ(x_k ⇐ x_{k+1})`; the *tilde* variant only for existence.
//!
//! Every turning time `σ_k` lies in [`sigma_candidates`]: a σ-path with at
//! least one edge has some label β with `σ⟨Λ, β∨⟩ ∈ ℤ`, so the reduced
//! denominator of σ divides `⟨Λ, β∨⟩`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::pair;
use crate::error::{Error, Result};
use crate::qbg::{sigma_admissible, TieBreak};
use crate::scalar::{ExactInt, Frac, FracVector};
use crate::weyl::RepId;
use crate::{Context, Rational};

/// Default cap on the number of enumerated paths.
pub const PATH_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QlsPath {
    directions: Vec<RepId>,
    times: Vec<Rational>,
}

impl QlsPath {
    /// Checks the shape constraints (not the σ-path condition).
    pub fn new(directions: Vec<RepId>, times: Vec<Rational>) -> Result<Self> {
        let invalid = |m: &str| Err(Error::InvalidPath(m.to_string()));
        if directions.is_empty() {
            return invalid("no directions");
        }
        if times.len() != directions.len() + 1 {
            return invalid("need one more time than directions");
        }
        if times[0] != Frac::zero() || *times.last().unwrap() != Frac::one() {
            return invalid("times must start at 0 and end at 1");
        }
        if times.windows(2).any(|t| t[0] >= t[1]) {
            return invalid("times must increase strictly");
        }
        if directions.windows(2).any(|d| d[0] == d[1]) {
            return invalid("consecutive directions must differ");
        }
        Ok(QlsPath { directions, times })
    }

    /// The straight line path `(x ; 0, 1)`.
    pub fn straight(x: RepId) -> Self {
        QlsPath { directions: vec![x], times: vec![Frac::zero(), Frac::one()] }
    }

    pub fn directions(&self) -> &[RepId] {
        &self.directions
    }

    pub fn times(&self) -> &[Rational] {
        &self.times
    }

    /// Number of directions `s`.
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Segments `(x_{p+1}, x_p, σ_p)` for `p = 1..s-1`.
    pub fn segments(&self) -> impl Iterator<Item = (RepId, RepId, Rational)> + '_ {
        (1..self.directions.len()).map(move |p| {
            (self.directions[p], self.directions[p - 1], self.times[p])
        })
    }

    /// `"x;x;x|σ,σ,σ"` with reduced words.
    pub fn to_literal(&self, ctx: &Context) -> String {
        let dirs: Vec<String> = self.directions.iter().map(|&x| ctx.rep_word(x)).collect();
        let times: Vec<String> = self.times.iter().map(|t| t.to_string()).collect();
        format!("{}|{}", dirs.join(";"), times.join(","))
    }

    /// Parses the literal form, e.g. `"r2;r2 r1;r1|0,1/2,2/3,1"`.
    pub fn parse_literal(ctx: &Context, s: &str) -> Result<Self> {
        let (dirs, times) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing '|' in path literal {s:?}")))?;
        let directions = dirs
            .split(';')
            .map(|w| ctx.parse_rep(w))
            .collect::<Result<Vec<_>>>()?;
        let times = times
            .split(',')
            .map(|t| t.parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        QlsPath::new(directions, times)
    }

    pub fn to_record(&self, ctx: &Context) -> PathRecord {
        PathRecord {
            dirs: self.directions.iter().map(|&x| ctx.rep_word(x)).collect(),
            times: self.times.clone(),
        }
    }

    pub fn from_record(ctx: &Context, rec: &PathRecord) -> Result<Self> {
        let directions = rec
            .dirs
            .iter()
            .map(|w| ctx.parse_rep(w))
            .collect::<Result<Vec<_>>>()?;
        QlsPath::new(directions, rec.times.clone())
    }
}

/// JSON form of a path: `{"dirs": ["s1", ...], "times": ["0", "1/2", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub dirs: Vec<String>,
    pub times: Vec<Rational>,
}

impl fmt::Display for QlsPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.directions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "x{x}")?;
        }
        write!(f, ";")?;
        for (i, t) in self.times.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// Which defining condition a segment must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// A directed σ-path of length `ℓ(x_k ⇐ x_{k+1})`.
    Hat,
    /// Any directed σ-path.
    Tilde,
    /// No σ condition, only `x_k ≠ x_{k+1}` with times in the candidate set.
    Unconstrained,
}

/// All `a/b ∈ (0,1)` in lowest terms with `b | ⟨Λ, β∨⟩` for some edge label β.
pub fn sigma_candidates(ctx: &Context) -> Vec<Rational> {
    let rs = ctx.root_system();
    let mut values: BTreeSet<i64> = BTreeSet::new();
    for e in ctx.graph().edges() {
        values.insert(pair(ctx.lambda(), rs.coroot(e.label)));
    }
    let mut out = BTreeSet::new();
    for &m in &values {
        for a in 1..m {
            out.insert(Rational::new(a, m).expect("m > 1"));
        }
    }
    out.into_iter().collect()
}

/// Per-σ shortest admissible distances, `table[y][x] = ` length of a shortest
/// σ-path from `y` to `x`.
struct SigmaTable {
    dist: Vec<Vec<Option<usize>>>,
}

impl SigmaTable {
    fn new(ctx: &Context, sigma: &Rational) -> Self {
        let g = ctx.graph();
        let rs = ctx.root_system();
        let n = g.num_vertices();
        let dist = (0..n)
            .map(|y| {
                let mut d = vec![None; n];
                d[y] = Some(0);
                let mut queue = VecDeque::from([y]);
                while let Some(v) = queue.pop_front() {
                    let dv = d[v].unwrap();
                    for e in g.out_edges(v) {
                        if d[e.target].is_none()
                            && sigma_admissible(rs, sigma, ctx.lambda(), e.label)
                        {
                            d[e.target] = Some(dv + 1);
                            queue.push_back(e.target);
                        }
                    }
                }
                d
            })
            .collect();
        SigmaTable { dist }
    }
}

struct Enumerator<'a> {
    ctx: &'a Context,
    sigmas: Vec<Rational>,
    // ok[σ][x][y]: segment from y to x allowed at σ
    ok: Vec<Vec<Vec<bool>>>,
    count: AtomicUsize,
    cap: usize,
}

impl<'a> Enumerator<'a> {
    fn new(ctx: &'a Context, variant: Variant, cap: usize) -> Self {
        let sigmas = sigma_candidates(ctx);
        let n = ctx.num_reps();
        let g = ctx.graph();
        let ok = sigmas
            .iter()
            .map(|s| {
                let table = SigmaTable::new(ctx, s);
                (0..n)
                    .map(|x| {
                        (0..n)
                            .map(|y| {
                                x != y
                                    && match variant {
                                        Variant::Hat => {
                                            table.dist[y][x] == Some(g.directed_distance(x, y))
                                        }
                                        Variant::Tilde => table.dist[y][x].is_some(),
                                        Variant::Unconstrained => true,
                                    }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Enumerator { ctx, sigmas, ok, count: AtomicUsize::new(0), cap }
    }

    fn run(&self) -> Result<BTreeSet<QlsPath>> {
        let parts: Vec<Result<Vec<QlsPath>>> = (0..self.ctx.num_reps())
            .into_par_iter()
            .map(|x1| {
                let mut out = Vec::new();
                let mut dirs = vec![x1];
                let mut times = vec![Frac::zero()];
                self.extend(&mut dirs, &mut times, 0, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut set = BTreeSet::new();
        for part in parts {
            set.extend(part?);
        }
        Ok(set)
    }

    fn extend(
        &self,
        dirs: &mut Vec<RepId>,
        times: &mut Vec<Rational>,
        next_sigma: usize,
        out: &mut Vec<QlsPath>,
    ) -> Result<()> {
        if self.count.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(Error::CapExceeded { what: "quantum LS paths", cap: self.cap });
        }
        let mut full = times.clone();
        full.push(Frac::one());
        out.push(QlsPath { directions: dirs.clone(), times: full });

        let x = *dirs.last().unwrap();
        for si in next_sigma..self.sigmas.len() {
            for y in 0..self.ctx.num_reps() {
                if !self.ok[si][x][y] {
                    continue;
                }
                dirs.push(y);
                times.push(self.sigmas[si]);
                self.extend(dirs, times, si + 1, out)?;
                dirs.pop();
                times.pop();
            }
        }
        Ok(())
    }
}

/// Enumerates all paths of the given variant. Fails once more than `cap`
/// paths have been produced.
pub fn enumerate(ctx: &Context, variant: Variant, cap: usize) -> Result<BTreeSet<QlsPath>> {
    Enumerator::new(ctx, variant, cap).run()
}

/// The hat-variant quantum LS paths of shape λ.
pub fn enumerate_hat(ctx: &Context) -> Result<BTreeSet<QlsPath>> {
    enumerate(ctx, Variant::Hat, PATH_CAP)
}

/// The tilde-variant quantum LS paths of shape λ.
pub fn enumerate_tilde(ctx: &Context) -> Result<BTreeSet<QlsPath>> {
    enumerate(ctx, Variant::Tilde, PATH_CAP)
}

/// Re-checks the defining condition segment by segment, searching σ-paths
/// directly in the graph rather than through the enumeration tables.
pub fn validate(ctx: &Context, path: &QlsPath, variant: Variant) -> Result<bool> {
    if path.directions.iter().any(|&x| x >= ctx.num_reps()) {
        return Ok(false);
    }
    if QlsPath::new(path.directions.clone(), path.times.clone()).is_err() {
        return Ok(false);
    }
    for (y, x, sigma) in path.segments() {
        let found = ctx.graph().sigma_path(
            ctx.root_system(),
            x,
            y,
            &sigma,
            ctx.lambda(),
            TieBreak::Forward,
        )?;
        let pass = match (variant, found) {
            (Variant::Unconstrained, _) => true,
            (_, None) => false,
            (Variant::Tilde, Some(_)) => true,
            (Variant::Hat, Some(p)) => p.is_shortest,
        };
        if !pass {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `η(t) = Σ_{l<k} (σ_l - σ_{l-1}) x_lΛ + (t - σ_{k-1}) x_kΛ` for
/// `σ_{k-1} ≤ t ≤ σ_k`, computed exactly over `I`.
pub fn evaluate_in<I: ExactInt>(
    ctx: &Context,
    path: &QlsPath,
    t: &Frac<I>,
) -> Result<FracVector<I>> {
    if *t < Frac::zero() || *t > Frac::one() {
        return Err(Error::TimeOutOfRange(t.to_string()));
    }
    let times: Vec<Frac<I>> = path.times.iter().map(cast).collect::<Result<_>>()?;
    let mut v = FracVector::zero(ctx.root_system().rank());
    for (k, &x) in path.directions.iter().enumerate() {
        let (lo, hi) = (times[k], times[k + 1]);
        if *t <= lo {
            break;
        }
        let upto = if *t < hi { *t } else { hi };
        v.add_scaled(&upto.checked_sub(&lo)?, &ctx.rep_weight(x).0)?;
    }
    Ok(v)
}

/// [`evaluate_in`] over `i64`.
pub fn evaluate(ctx: &Context, path: &QlsPath, t: &Rational) -> Result<crate::RationalVector> {
    evaluate_in(ctx, path, t)
}

fn cast<I: ExactInt>(q: &Rational) -> Result<Frac<I>> {
    let n = I::from_i64(q.numer()).ok_or(Error::Overflow)?;
    let d = I::from_i64(q.denom()).ok_or(Error::Overflow)?;
    Frac::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn lit(ctx: &Context, s: &str) -> QlsPath {
        QlsPath::parse_literal(ctx, s).unwrap()
    }

    #[test]
    fn candidates() {
        let ctx = Context::parse("A2", "2,1").unwrap();
        assert_eq!(sigma_candidates(&ctx), vec![q(1, 3), q(1, 2), q(2, 3)]);
        let ctx = Context::parse("A2", "1,0").unwrap();
        assert!(sigma_candidates(&ctx).is_empty());
        let ctx = Context::parse("A2", "3,0").unwrap();
        assert_eq!(sigma_candidates(&ctx), vec![q(1, 3), q(2, 3)]);
    }

    #[test]
    fn structural_checks() {
        assert!(QlsPath::new(vec![0, 1], vec![q(0, 1), q(1, 2), q(1, 1)]).is_ok());
        assert!(QlsPath::new(vec![0, 0], vec![q(0, 1), q(1, 2), q(1, 1)]).is_err());
        assert!(QlsPath::new(vec![0, 1], vec![q(0, 1), q(1, 1)]).is_err());
        assert!(QlsPath::new(vec![0, 1], vec![q(0, 1), q(1, 1), q(1, 1)]).is_err());
        assert!(QlsPath::new(vec![0, 1], vec![q(1, 3), q(1, 2), q(1, 1)]).is_err());
        assert!(QlsPath::new(vec![], vec![q(0, 1)]).is_err());
    }

    #[test]
    fn examples_are_hat_paths() {
        let ctx = Context::parse("A2", "2,1").unwrap();
        let hat = enumerate_hat(&ctx).unwrap();
        for s in [
            "r2;r2 r1;r1|0,1/2,2/3,1",
            "r1;e;r1 r2 r1|0,1/2,2/3,1",
            "e;r1 r2 r1;r1 r2|0,1/3,1/2,1",
        ] {
            let p = lit(&ctx, s);
            assert!(hat.contains(&p), "{s}");
            assert!(validate(&ctx, &p, Variant::Hat).unwrap());
        }
        for x in 0..ctx.num_reps() {
            assert!(hat.contains(&QlsPath::straight(x)));
        }
    }

    #[test]
    fn non_member_rejected() {
        let ctx = Context::parse("A2", "2,1").unwrap();
        // σ = 1/3 does not admit the α1 edge r2r1 -> r2
        let p = lit(&ctx, "r2;r2 r1|0,1/3,1");
        assert!(!validate(&ctx, &p, Variant::Tilde).unwrap());
        assert!(validate(&ctx, &p, Variant::Unconstrained).unwrap());
        assert!(!enumerate_hat(&ctx).unwrap().contains(&p));
    }

    #[test]
    fn fundamental_shape_has_only_straight_paths() {
        let ctx = Context::parse("A2", "1,0").unwrap();
        let hat = enumerate_hat(&ctx).unwrap();
        assert_eq!(hat.len(), 3);
        assert!(hat.iter().all(|p| p.len() == 1));
        assert_eq!(enumerate_tilde(&ctx).unwrap(), hat);
    }

    #[test]
    fn cap_exceeded() {
        let ctx = Context::parse("A2", "2,1").unwrap();
        assert!(matches!(
            enumerate(&ctx, Variant::Hat, 5),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn literal_and_record_roundtrip() {
        let ctx = Context::parse("A2", "2,1").unwrap();
        let p = lit(&ctx, "e;r1 r2 r1;r1 r2|0,1/3,1/2,1");
        assert_eq!(p.to_literal(&ctx), "e;s1 s2 s1;s1 s2|0,1/3,1/2,1");
        assert_eq!(lit(&ctx, &p.to_literal(&ctx)), p);
        let rec = p.to_record(&ctx);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"dirs":["e","s1 s2 s1","s1 s2"],"times":["0","1/3","1/2","1"]}"#);
        let back: PathRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(QlsPath::from_record(&ctx, &back).unwrap(), p);
        assert!(QlsPath::parse_literal(&ctx, "e;r1").is_err());
        assert!(QlsPath::parse_literal(&ctx, "e|0,x").is_err());
    }

    #[test]
    fn evaluation() {
        let ctx = Context::parse("A2", "2,1").unwrap();
        let lam = ctx.lambda().clone();
        let straight = QlsPath::straight(ctx.parse_rep("e").unwrap());
        let v = evaluate(&ctx, &straight, &q(2, 7)).unwrap();
        assert_eq!(v.0, vec![q(4, 7), q(2, 7)]);
        let eta3 = lit(&ctx, "e;r1 r2 r1;r1 r2|0,1/3,1/2,1");
        assert!(evaluate(&ctx, &eta3, &q(0, 1)).unwrap().is_zero());
        // (1/3)Λ + (1/6) w0Λ + (1/2) r1r2Λ with w0Λ = (-1,-2), r1r2Λ = (-3, 2)
        let g = ctx.group();
        let r1r2 = g.act(g.from_word(&[0, 1]), &lam);
        assert_eq!(r1r2.0, vec![-3, 2]);
        let v = evaluate(&ctx, &eta3, &q(1, 1)).unwrap();
        assert_eq!(v.0, vec![q(-1, 1), q(1, 1)]);
        assert!(evaluate(&ctx, &eta3, &q(3, 2)).is_err());
        // generic width
        let wide = evaluate_in::<i128>(&ctx, &eta3, &Frac::new(1, 1).unwrap()).unwrap();
        assert_eq!(wide.0[1], Frac::new(1, 1).unwrap());
    }
}
