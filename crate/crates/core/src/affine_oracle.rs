//! Verification in the affine orbit `Wλ ⊂ W₀λ + ℤδ`.
//!
//! Elements are `xλ + nδ`, stored as `(x ∈ W₀ᴶ, n)`. The order is the one
//! generated by raising reflections `μ ↦ r_ξ μ` with `⟨μ, ξ∨⟩ < 0`. Covers
//! only use `ξ ∈ Δ₀⁺ ⊔ {δ - γ | γ ∈ Δ₀⁺}`, and every saturated chain is made
//! of covers, so searching over these candidates computes the order and
//! `dist` exactly.
//!
//! Affine reflections on level-zero weights: `α₀∨ = c - θ∨` gives
//! `(δ - γ)∨ = c' - γ∨` with `c'` a multiple of `c`, and `⟨μ, c⟩ = 0`, so
//!
//! ```text
//! r_{δ-γ} μ = μ + ⟨μ, γ∨⟩ (δ - γ) = r_γ μ + ⟨μ, γ∨⟩ δ.
//! ```
//!
//! Along a raising step the δ-coefficient never decreases, and the finite
//! part strictly rises in dominance when it stays constant, so the search
//! graph is acyclic and a target with coefficient `n` bounds the search to
//! coefficients `≤ n`.
//!
//! Searches are confined to the slice `|n| ≤ window`; an endpoint outside it
//! makes the answer [`Error::Inconclusive`].
//!
//! The oracle reads only root data and the orbit `W₀Λ`; it never consults
//! the quantum Bruhat graph.

use std::collections::HashSet;

use dashmap::DashMap;
use serde::Serialize;

use crate::cartan::{pair, Root, Weight};
use crate::degree::AffineLsPath;
use crate::error::{Error, Result};
use crate::qbg::EdgeKind;
use crate::weyl::RepId;
use crate::{Context, Rational};

/// `xλ + nδ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineOrbitElement {
    pub finite: RepId,
    pub delta: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// `ξ = γ`.
    Finite,
    /// `ξ = δ - γ`.
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RaisingStep {
    pub kind: StepKind,
    /// `γ ∈ Δ₀⁺`, as a positive root index.
    pub gamma: usize,
    pub from: AffineOrbitElement,
    pub to: AffineOrbitElement,
    /// `⟨from, ξ∨⟩ < 0`.
    pub pairing: i64,
}

/// Outcome of checking one lifted path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathReport {
    pub dirs: Vec<String>,
    pub times: Vec<Rational>,
    pub deltas: Vec<i64>,
    pub status: Verdict,
    /// 1-based index `k` of the first failing pair `(ν_k, ν_{k+1})`.
    pub failing_pair: Option<usize>,
    pub reason: Option<String>,
    pub window: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub upper: AffineOrbitElement,
    pub lower: AffineOrbitElement,
    pub detail: String,
}

/// Result of matching covers in a δ-slice against graph edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub window: i64,
    pub covers_checked: usize,
    pub edges_checked: usize,
    /// Edge instances whose upper element falls outside the slice.
    pub outside_slice: usize,
    pub mismatches: Vec<Mismatch>,
    pub inconclusive: Vec<(AffineOrbitElement, AffineOrbitElement)>,
}

impl CoverReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub struct Oracle<'a> {
    ctx: &'a Context,
    window: i64,
    // longest chain length from .0 down to .1
    memo: DashMap<(AffineOrbitElement, AffineOrbitElement), Option<usize>>,
}

impl<'a> Oracle<'a> {
    pub fn new(ctx: &'a Context, window: i64) -> Self {
        Oracle { ctx, window: window.max(0), memo: DashMap::new() }
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    fn in_window(&self, mu: &AffineOrbitElement) -> bool {
        mu.delta.abs() <= self.window
    }

    fn check_window(&self, mu: &AffineOrbitElement) -> Result<()> {
        if self.in_window(mu) {
            Ok(())
        } else {
            Err(Error::Inconclusive { window: self.window })
        }
    }

    /// All raising steps out of `μ`.
    pub fn raising_steps(&self, mu: &AffineOrbitElement) -> Vec<RaisingStep> {
        let rs = self.ctx.root_system();
        let v = self.ctx.rep_weight(mu.finite);
        let mut out = Vec::new();
        for gamma in 0..rs.num_positive_roots() {
            let p = pair(v, rs.coroot(gamma));
            if p == 0 {
                continue;
            }
            let image = rs.reflect_weight(v, gamma);
            let finite = self
                .ctx
                .rep_of_weight(&image)
                .expect("W0Λ is closed under reflections");
            let (kind, to, pairing) = if p < 0 {
                (StepKind::Finite, AffineOrbitElement { finite, delta: mu.delta }, p)
            } else {
                (StepKind::Affine, AffineOrbitElement { finite, delta: mu.delta + p }, -p)
            };
            out.push(RaisingStep { kind, gamma, from: *mu, to, pairing });
        }
        out
    }

    /// Maximal length of a raising chain from `μ` down to `ν`; `None` when
    /// `μ ≱ ν`.
    pub fn dist(&self, mu: &AffineOrbitElement, nu: &AffineOrbitElement) -> Result<Option<usize>> {
        self.check_window(mu)?;
        self.check_window(nu)?;
        Ok(self.longest(mu, nu))
    }

    fn longest(&self, mu: &AffineOrbitElement, nu: &AffineOrbitElement) -> Option<usize> {
        if mu == nu {
            return Some(0);
        }
        if mu.delta > nu.delta {
            return None;
        }
        if let Some(v) = self.memo.get(&(*mu, *nu)) {
            return *v;
        }
        let best = self
            .raising_steps(mu)
            .into_iter()
            .filter(|s| s.to.delta <= nu.delta)
            .filter_map(|s| self.longest(&s.to, nu).map(|d| d + 1))
            .max();
        self.memo.insert((*mu, *nu), best);
        best
    }

    /// `μ ⋗ ν`.
    pub fn is_cover(&self, mu: &AffineOrbitElement, nu: &AffineOrbitElement) -> Result<bool> {
        Ok(self.dist(mu, nu)? == Some(1))
    }

    /// Whether a chain of covers `μ = μ₀ ⋗ ⋯ ⋗ μₙ = ν` exists with
    /// `σ⟨μ_{k-1}, ξ_k∨⟩ ∈ ℤ_{<0}` at every step.
    pub fn verify_sigma_chain(
        &self,
        mu: &AffineOrbitElement,
        nu: &AffineOrbitElement,
        sigma: &Rational,
    ) -> Result<bool> {
        self.check_window(mu)?;
        self.check_window(nu)?;
        if mu == nu {
            return Ok(false);
        }
        let mut dead = HashSet::new();
        Ok(self.sigma_search(mu, nu, sigma, &mut dead))
    }

    fn sigma_search(
        &self,
        cur: &AffineOrbitElement,
        nu: &AffineOrbitElement,
        sigma: &Rational,
        dead: &mut HashSet<AffineOrbitElement>,
    ) -> bool {
        if cur == nu {
            return true;
        }
        if dead.contains(cur) {
            return false;
        }
        for s in self.raising_steps(cur) {
            if s.to.delta > nu.delta || !sigma.scales_to_integer(s.pairing) {
                continue;
            }
            if self.longest(cur, &s.to) != Some(1) || self.longest(&s.to, nu).is_none() {
                continue;
            }
            if self.sigma_search(&s.to, nu, sigma, dead) {
                return true;
            }
        }
        dead.insert(*cur);
        false
    }

    /// Whether the lift is an LS path: `ν₁ > ν₂ > ⋯ > ν_s` with a σ_k-chain
    /// for each consecutive pair, and `ν₁` has δ-coefficient 0.
    pub fn verify_ls_path(&self, lift: &AffineLsPath) -> Result<bool> {
        Ok(self.check_lift(lift)?.is_none())
    }

    // Some((k, reason)) on the first failing pair
    fn check_lift(&self, lift: &AffineLsPath) -> Result<Option<(usize, String)>> {
        let first = lift.weights[0];
        self.check_window(&first)?;
        if first.delta != 0 {
            return Ok(Some((0, "first weight has nonzero δ-coefficient".into())));
        }
        for k in 0..lift.weights.len().saturating_sub(1) {
            let (a, b) = (&lift.weights[k], &lift.weights[k + 1]);
            match self.dist(a, b)? {
                Some(d) if d >= 1 => {}
                _ => return Ok(Some((k + 1, "consecutive weights are not strictly ordered".into()))),
            }
            if !self.verify_sigma_chain(a, b, &lift.times[k + 1])? {
                return Ok(Some((k + 1, format!("no {}-chain", lift.times[k + 1]))));
            }
        }
        Ok(None)
    }

    pub fn report(&self, lift: &AffineLsPath) -> PathReport {
        let ctx = self.ctx;
        let (status, failing_pair, reason) = match self.check_lift(lift) {
            Ok(None) => (Verdict::Pass, None, None),
            Ok(Some((k, why))) => (Verdict::Fail, Some(k), Some(why)),
            Err(e) => (Verdict::Inconclusive, None, Some(e.to_string())),
        };
        PathReport {
            dirs: lift.weights.iter().map(|w| ctx.rep_word(w.finite)).collect(),
            times: lift.times.clone(),
            deltas: lift.weights.iter().map(|w| w.delta).collect(),
            status,
            failing_pair,
            reason,
            window: self.window,
        }
    }

    /// Orbit elements with `|n| ≤ window`; `n` runs over `gℤ`, `g = gcd m_j`.
    pub fn slice(&self) -> Vec<AffineOrbitElement> {
        let g = self.ctx.shape().delta_step();
        let lo = -(self.window / g) * g;
        let mut out = Vec::new();
        for finite in 0..self.ctx.num_reps() {
            let mut n = lo;
            while n <= self.window {
                out.push(AffineOrbitElement { finite, delta: n });
                n += g;
            }
        }
        out
    }

    /// Matches every cover in the slice against an edge of the parabolic
    /// quantum Bruhat graph, and every edge against a cover.
    pub fn covers_to_edges(&self) -> CoverReport {
        let ctx = self.ctx;
        let rs = ctx.root_system();
        let group = ctx.group();
        let graph = ctx.graph();
        let parabolic = ctx.shape().parabolic();
        let mut report = CoverReport { window: self.window, ..Default::default() };

        for mu in self.slice() {
            for step in self.raising_steps(&mu) {
                let nu = step.to;
                if !self.in_window(&nu) {
                    continue;
                }
                match self.is_cover(&mu, &nu) {
                    Ok(true) => {}
                    Ok(false) => continue,
                    Err(_) => {
                        report.inconclusive.push((mu, nu));
                        continue;
                    }
                }
                report.covers_checked += 1;
                // β = w⁻¹ξ (finite) or w⁻¹(ξ - δ) = -w⁻¹γ (affine), w = cl(ν)
                let w_inv = group.inverse(ctx.cosets().element(nu.finite));
                let (beta, neg) = group.act_on_root(rs, w_inv, step.gamma);
                let neg = match step.kind {
                    StepKind::Finite => neg,
                    StepKind::Affine => !neg,
                };
                let expected = match step.kind {
                    StepKind::Finite => EdgeKind::Bruhat,
                    StepKind::Affine => EdgeKind::Quantum,
                };
                let problem = if neg {
                    Some("β is a negative root".to_string())
                } else if rs.in_parabolic(beta, parabolic) {
                    Some("β lies in the parabolic subsystem".to_string())
                } else {
                    match graph.edge(nu.finite, beta) {
                        None => Some(format!("no edge with label {beta} out of {}", nu.finite)),
                        Some(e) if e.kind != expected => Some(format!("edge kind {:?}", e.kind)),
                        Some(e) if e.target != mu.finite => Some("edge target differs".into()),
                        Some(_) => None,
                    }
                };
                if let Some(detail) = problem {
                    report.mismatches.push(Mismatch { upper: mu, lower: nu, detail });
                }
            }
        }

        for e in graph.edges() {
            let w = ctx.cosets().element(e.source);
            let (alpha, neg) = group.act_on_root(rs, w, e.label);
            let m = i64::from(e.kind == EdgeKind::Quantum);
            for nu in self.slice().into_iter().filter(|n| n.finite == e.source) {
                report.edges_checked += 1;
                if m == 0 && neg {
                    report.mismatches.push(Mismatch {
                        upper: nu,
                        lower: nu,
                        detail: "Bruhat edge with wβ negative".into(),
                    });
                    continue;
                }
                // μ = r_ξ ν with ξ = wβ + mδ
                let v = ctx.rep_weight(nu.finite);
                let sign = if neg { -1 } else { 1 };
                let p = sign * pair(v, rs.coroot(alpha));
                let image = rs.reflect_weight(v, alpha);
                let mu = AffineOrbitElement {
                    finite: ctx.rep_of_weight(&image).expect("orbit closed"),
                    delta: nu.delta - m * p,
                };
                if !self.in_window(&mu) {
                    report.outside_slice += 1;
                    continue;
                }
                let detail = if mu.finite != e.target {
                    Some("reflected weight is not the edge target".to_string())
                } else {
                    match self.is_cover(&mu, &nu) {
                        Ok(true) => None,
                        Ok(false) => Some("edge does not lift to a cover".to_string()),
                        Err(_) => {
                            report.inconclusive.push((mu, nu));
                            None
                        }
                    }
                };
                if let Some(detail) = detail {
                    report.mismatches.push(Mismatch { upper: mu, lower: nu, detail });
                }
            }
        }
        report
    }

    /// `ν - μ` in affine simple-root coordinates `(c₀; c₁, …, c_n)`,
    /// using `δ = α₀ + θ`.
    pub fn difference_in_simple_roots(
        &self,
        mu: &AffineOrbitElement,
        nu: &AffineOrbitElement,
    ) -> Option<Vec<i64>> {
        let rs = self.ctx.root_system();
        let diff: Weight = self.ctx.rep_weight(nu.finite).sub(self.ctx.rep_weight(mu.finite));
        let finite: Root = weight_to_root(rs.cartan_matrix(), &diff)?;
        let c0 = nu.delta - mu.delta;
        let theta = rs.root(rs.highest_root());
        let mut out = vec![c0];
        out.extend(finite.0.iter().zip(&theta.0).map(|(d, t)| d + c0 * t));
        Some(out)
    }
}

/// Solves `Σ c_i α_i = w` for integer `c`, if a solution exists.
#[allow(clippy::needless_range_loop)]
fn weight_to_root(cartan: &[Vec<i64>], w: &Weight) -> Option<Root> {
    // w_j = Σ_i c_i cartan[i][j]: solve Aᵀ c = w by exact elimination
    let n = cartan.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut row: Vec<Rational> = (0..n).map(|i| Rational::from_int(cartan[i][j])).collect();
            row.push(Rational::from_int(w.0[j]));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col];
        for k in col..=n {
            m[col][k] = div(&m[col][k], &p)?;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for k in col..=n {
                    let t = f.checked_mul(&m[col][k]).ok()?;
                    m[r][k] = m[r][k].checked_sub(&t).ok()?;
                }
            }
        }
    }
    m.iter().map(|row| row[n].to_integer()).collect::<Option<Vec<_>>>().map(Root)
}

fn div(a: &Rational, b: &Rational) -> Option<Rational> {
    let inv = Rational::new(b.denom(), b.numer()).ok()?;
    a.checked_mul(&inv).ok()
}
