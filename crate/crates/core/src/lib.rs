//! Parabolic quantum Bruhat graphs, quantum Lakshmibai-Seshadri paths and
//! the degree function on them, for untwisted affine types.
//!
//! The pipeline for a level-zero dominant weight `λ = Σ m_i ϖ_i`:
//!
//! 1. [`cartan`]: finite root data and the shape `(Λ = cl(λ), J)`.
//! 2. [`weyl`]: the finite Weyl group and the representatives `W₀ᴶ`.
//! 3. [`qbg`]: the parabolic quantum Bruhat graph on `W₀ᴶ`.
//! 4. [`qls`]: quantum LS paths of shape λ.
//! 5. [`degree`]: `Deg(η) = -Σ (1 - σ_p) ⟨Λ, wt(d_p)⟩` and the affine lift.
//! 6. [`affine_oracle`]: an independent check in the affine orbit `Wλ`.
//!
//! [`Context`] bundles steps 1–3 for one weight.

pub mod affine_oracle;
pub mod cartan;
pub mod degree;
pub mod error;
pub mod qbg;
pub mod qls;
pub mod scalar;
pub mod weyl;

use std::collections::HashMap;

pub use cartan::{Coroot, FiniteType, LevelZeroShape, Root, RootSystem, Weight};
pub use error::{Error, Result};
pub use qbg::{DirectedPath, EdgeKind, Pqbg, TieBreak};
pub use qls::QlsPath;
pub use scalar::{ExactInt, Frac, FracVector};
pub use weyl::{CosetSystem, RepId, WeylGroup};

/// Exact rational with `i64` parts.
pub type Rational = Frac<i64>;
/// Rational vector in the fundamental-weight basis.
pub type RationalVector = FracVector<i64>;

/// Everything derived from a Cartan type and a level-zero dominant weight.
#[derive(Debug)]
pub struct Context {
    root_system: RootSystem,
    group: WeylGroup,
    shape: LevelZeroShape,
    cosets: CosetSystem,
    graph: Pqbg,
    rep_weights: Vec<Weight>,
    weight_index: HashMap<Weight, RepId>,
}

impl Context {
    pub fn new(finite_type: FiniteType, multiplicities: &[u32]) -> Result<Self> {
        Self::with_group_cap(finite_type, multiplicities, weyl::GROUP_CAP)
    }

    pub fn with_group_cap(
        finite_type: FiniteType,
        multiplicities: &[u32],
        group_cap: usize,
    ) -> Result<Self> {
        let root_system = RootSystem::new(finite_type);
        let shape = LevelZeroShape::new(&root_system, multiplicities)?;
        let group = WeylGroup::with_cap(&root_system, group_cap)?;
        let cosets = CosetSystem::new(&group, shape.parabolic());
        let graph = Pqbg::new(&root_system, &group, &cosets);
        let rep_weights: Vec<Weight> = cosets
            .reps()
            .iter()
            .map(|&w| group.act(w, shape.classical()))
            .collect();
        let weight_index: HashMap<Weight, RepId> = rep_weights
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        if weight_index.len() != rep_weights.len() {
            return Err(Error::Invariant("W^J -> W0·Λ is not injective".into()));
        }
        Ok(Context { root_system, group, shape, cosets, graph, rep_weights, weight_index })
    }

    /// `Context::parse("A2", "2,1")`.
    pub fn parse(type_name: &str, lambda: &str) -> Result<Self> {
        Self::new(type_name.parse()?, &cartan::parse_multiplicities(lambda)?)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn shape(&self) -> &LevelZeroShape {
        &self.shape
    }

    pub fn cosets(&self) -> &CosetSystem {
        &self.cosets
    }

    pub fn graph(&self) -> &Pqbg {
        &self.graph
    }

    /// `Λ = cl(λ)`.
    pub fn lambda(&self) -> &Weight {
        self.shape.classical()
    }

    pub fn num_reps(&self) -> usize {
        self.cosets.len()
    }

    /// `xΛ` for a representative `x`.
    pub fn rep_weight(&self, rep: RepId) -> &Weight {
        &self.rep_weights[rep]
    }

    /// The representative `x` with `xΛ = w`, if `w ∈ W₀Λ`.
    pub fn rep_of_weight(&self, w: &Weight) -> Option<RepId> {
        self.weight_index.get(w).copied()
    }

    pub fn rep_word(&self, rep: RepId) -> String {
        self.group.word_string(self.cosets.element(rep))
    }

    /// Parses a word and requires it to name an element of `W₀ᴶ`.
    pub fn parse_rep(&self, word: &str) -> Result<RepId> {
        let w = self.group.from_word(&weyl::parse_word(word, self.root_system.rank())?);
        self.cosets
            .rep_id(w)
            .ok_or_else(|| Error::NotMinimalRep(word.trim().to_string()))
    }
}
