//! The degree function and the affine lift of a quantum LS path.
//!
//! For `η = (x₁, …, x_s ; σ)` pick, for each `p`, a shortest directed
//! σ_p-path `d_p` from `x_{p+1}` to `x_p`. Then
//!
//! ```text
//! Deg(η) = -Σ_{p=1}^{s-1} (1 - σ_p) ⟨Λ, wt(d_p)⟩
//! ```
//!
//! and the lift is `ν̃_p = x_p λ + (Σ_{u<p} ⟨Λ, wt(d_u)⟩) δ`. Deg is computed
//! from the formula; the lift exists so [`crate::affine_oracle`] can certify
//! it independently.

use dashmap::DashMap;
use serde::Serialize;

use crate::affine_oracle::AffineOrbitElement;
use crate::cartan::{pair, Weight};
use crate::error::{Error, Result};
use crate::qbg::{DirectedPath, EdgeKind, TieBreak};
use crate::qls::QlsPath;
use crate::scalar::Frac;
use crate::weyl::RepId;
use crate::{Context, Rational, RationalVector};

/// One segment `x_p ⇐ x_{p+1}` of a quantum LS path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentData {
    pub index: usize,
    pub source: RepId,
    pub target: RepId,
    pub sigma: Rational,
    /// A shortest σ-admissible path from `source` to `target`.
    pub path: DirectedPath,
    /// `⟨Λ, wt(path)⟩`.
    pub energy: i64,
}

/// A positive real root `α + mδ` with `α` a finite root and `m ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineRoot {
    /// Index of `±α` among the positive roots.
    pub root: usize,
    pub negative: bool,
    pub delta: i64,
}

/// The chain `μ̃₀ ⋗ μ̃₁ ⋗ ⋯ ⋗ μ̃_n` obtained from one segment's directed path,
/// with `μ̃_k = r_{ξ_k} μ̃_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentChain {
    pub elements: Vec<AffineOrbitElement>,
    pub roots: Vec<AffineRoot>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLsPath {
    pub weights: Vec<AffineOrbitElement>,
    pub times: Vec<Rational>,
    pub chains: Vec<SegmentChain>,
}

impl AffineLsPath {
    /// δ-coefficient of `π̃(1) = Σ (σ_p - σ_{p-1}) ν̃_p`. Always a
    /// nonnegative integer for a genuine lift.
    pub fn endpoint_delta(&self) -> Result<i64> {
        let mut total = Rational::zero();
        for (p, nu) in self.weights.iter().enumerate() {
            let dt = self.times[p + 1].checked_sub(&self.times[p])?;
            total = total.checked_add(&dt.checked_mul_int(nu.delta)?)?;
        }
        match total.to_integer() {
            Some(k) if k >= 0 => Ok(k),
            _ => Err(Error::Invariant(format!("endpoint delta {total} is not a nonnegative integer"))),
        }
    }

    /// Classical part of `π̃(1)`.
    pub fn endpoint_finite(&self, ctx: &Context) -> Result<RationalVector> {
        let mut v = RationalVector::zero(ctx.root_system().rank());
        for (p, nu) in self.weights.iter().enumerate() {
            let dt = self.times[p + 1].checked_sub(&self.times[p])?;
            v.add_scaled(&dt, &ctx.rep_weight(nu.finite).0)?;
        }
        Ok(v)
    }

    /// The same path with every weight's δ-coefficient replaced.
    pub fn with_deltas(&self, deltas: &[i64]) -> Self {
        let mut out = self.clone();
        for (nu, &d) in out.weights.iter_mut().zip(deltas) {
            nu.delta = d;
        }
        out
    }
}

/// Degree computations over one [`Context`], with segment energies cached
/// per `(x_{p+1}, x_p, σ_p)`.
pub struct DegreeCalculator<'a> {
    ctx: &'a Context,
    tie: TieBreak,
    cache: DashMap<(RepId, RepId, Rational), i64>,
}

impl<'a> DegreeCalculator<'a> {
    pub fn new(ctx: &'a Context) -> Self {
        Self::with_tie_break(ctx, TieBreak::Forward)
    }

    pub fn with_tie_break(ctx: &'a Context, tie: TieBreak) -> Self {
        DegreeCalculator { ctx, tie, cache: DashMap::new() }
    }

    pub fn context(&self) -> &Context {
        self.ctx
    }

    fn shortest_sigma_path(&self, source: RepId, target: RepId, sigma: &Rational) -> Result<DirectedPath> {
        if source == target {
            return Ok(DirectedPath::empty(target));
        }
        let found = self.ctx.graph().sigma_path(
            self.ctx.root_system(),
            target,
            source,
            sigma,
            self.ctx.lambda(),
            self.tie,
        )?;
        match found {
            Some(sp) if sp.is_shortest => Ok(sp.path),
            _ => Err(Error::NotHatSegment {
                source_rep: source,
                target_rep: target,
                sigma: sigma.to_string(),
            }),
        }
    }

    /// Energy data for the segment from `source = x_{p+1}` to `target = x_p`.
    pub fn segment_energy(
        &self,
        source: RepId,
        target: RepId,
        sigma: &Rational,
    ) -> Result<SegmentData> {
        let path = self.shortest_sigma_path(source, target, sigma)?;
        let energy = pair(self.ctx.lambda(), &path.weight(self.ctx.root_system()));
        debug_assert!(energy >= 0);
        Ok(SegmentData { index: 0, source, target, sigma: *sigma, path, energy })
    }

    fn energy(&self, source: RepId, target: RepId, sigma: &Rational) -> Result<i64> {
        let key = (source, target, *sigma);
        if let Some(e) = self.cache.get(&key) {
            return Ok(*e);
        }
        let e = self.segment_energy(source, target, sigma)?.energy;
        // a racing insert must agree
        let stored = *self.cache.entry(key).or_insert(e);
        if stored != e {
            return Err(Error::Invariant("segment energy cache diverged".into()));
        }
        Ok(e)
    }

    pub fn segments(&self, path: &QlsPath) -> Result<Vec<SegmentData>> {
        path.segments()
            .enumerate()
            .map(|(i, (y, x, sigma))| {
                let mut seg = self.segment_energy(y, x, &sigma)?;
                seg.index = i + 1;
                Ok(seg)
            })
            .collect()
    }

    /// Per-segment energies `⟨Λ, wt(d_p)⟩`, from the cache.
    pub fn energies(&self, path: &QlsPath) -> Result<Vec<i64>> {
        path.segments()
            .map(|(y, x, sigma)| self.energy(y, x, &sigma))
            .collect()
    }

    /// `Deg(η)`; errors if some segment has no shortest σ-path.
    pub fn degree(&self, path: &QlsPath) -> Result<i64> {
        let energies = self.energies(path)?;
        let mut total = Rational::zero();
        for ((_, _, sigma), e) in path.segments().zip(&energies) {
            let weight = Frac::one().checked_sub(&sigma)?;
            total = total.checked_add(&weight.checked_mul_int(*e)?)?;
        }
        let k = total
            .to_integer()
            .ok_or_else(|| Error::Invariant(format!("degree sum {total} is not an integer")))?;
        Ok(-k)
    }

    /// The affine lift `π̃_η` together with the cover chains of each segment.
    pub fn lift(&self, path: &QlsPath) -> Result<AffineLsPath> {
        let ctx = self.ctx;
        let rs = ctx.root_system();
        let group = ctx.group();
        let dirs = path.directions();

        let mut weights = vec![AffineOrbitElement { finite: dirs[0], delta: 0 }];
        let mut chains = Vec::new();
        let mut offset = 0i64;
        for (y, x, sigma) in path.segments() {
            let d = self.shortest_sigma_path(y, x, &sigma)?;
            let mut cur = AffineOrbitElement { finite: x, delta: offset };
            let mut elements = vec![cur];
            let mut roots = Vec::new();
            let mut quantum_sum = 0i64;
            // walk x = w₀ ← w₁ ← ⋯ ← wₙ = y
            for k in 1..d.vertices.len() {
                let w_k = d.vertices[k];
                let beta = d.labels[k - 1];
                let kind = d.kinds[k - 1];
                let (root, negative) = group.act_on_root(rs, ctx.cosets().element(w_k), beta);
                let xi = AffineRoot {
                    root,
                    negative,
                    delta: i64::from(kind == EdgeKind::Quantum),
                };
                if xi.delta == 0 && negative {
                    return Err(Error::Invariant(format!("Bruhat step gives a negative root at {k}")));
                }
                cur = reflect(ctx, &cur, &xi)?;
                if cur.finite != w_k {
                    return Err(Error::Invariant("lifted chain left the expected coset".into()));
                }
                if kind == EdgeKind::Quantum {
                    quantum_sum += pair(ctx.lambda(), rs.coroot(beta));
                }
                if cur.delta != offset + quantum_sum {
                    return Err(Error::Invariant("lifted chain disagrees with the δ bookkeeping".into()));
                }
                elements.push(cur);
                roots.push(xi);
            }
            offset += pair(ctx.lambda(), &d.weight(rs));
            let next = AffineOrbitElement { finite: y, delta: offset };
            if cur != next {
                return Err(Error::Invariant("lifted chain does not end at the next weight".into()));
            }
            weights.push(next);
            chains.push(SegmentChain { elements, roots });
        }
        Ok(AffineLsPath { weights, times: path.times().to_vec(), chains })
    }
}

/// `r_ξ μ` for level-zero `μ` and `ξ = α + mδ`:
/// finite part `r_α μ`, δ-coefficient `n - m⟨μ, α∨⟩`.
fn reflect(ctx: &Context, mu: &AffineOrbitElement, xi: &AffineRoot) -> Result<AffineOrbitElement> {
    let rs = ctx.root_system();
    let v: &Weight = ctx.rep_weight(mu.finite);
    let sign = if xi.negative { -1 } else { 1 };
    let p = sign * pair(v, rs.coroot(xi.root));
    let image = rs.reflect_weight(v, xi.root);
    let finite = ctx
        .rep_of_weight(&image)
        .ok_or_else(|| Error::Invariant("reflection left the orbit".into()))?;
    Ok(AffineOrbitElement { finite, delta: mu.delta - xi.delta * p })
}
