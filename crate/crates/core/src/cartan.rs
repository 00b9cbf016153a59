//! Finite root data of the classical part of an untwisted affine type.
//!
//! Coordinates: roots in the simple-root basis, coroots in the simple-coroot
//! basis, weights in the fundamental-weight basis. With these choices
//! `⟨λ, h⟩` is a plain dot product and a root converts to a weight through
//! the rows of the pairing matrix.
//!
//! Node numbering follows the Kac tables for the untwisted affine diagrams.
//! Indices are 0-based internally and printed 1-based.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Cartan type such as `A2` or `C3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteType {
    family: Family,
    rank: usize,
}

impl FiniteType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        // rank is capped at 8 overall
        if ok && rank <= 8 {
            Ok(FiniteType { family, rank })
        } else {
            Err(Error::InvalidType { family: family.letter(), rank })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of the Weyl group, from the closed formulas per family.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// `cartan[i][j] = ⟨α_i, α_j∨⟩`.
    fn pairing_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let simple_bond = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        // ⟨α_long, α_short∨⟩ = -k, ⟨α_short, α_long∨⟩ = -1
        let multi_bond = |a: &mut Vec<Vec<i64>>, long: usize, short: usize, k: i64| {
            a[long][short] = -k;
            a[short][long] = -1;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| simple_bond(&mut a, i, i + 1)),
            Family::B => {
                (0..n - 2).for_each(|i| simple_bond(&mut a, i, i + 1));
                multi_bond(&mut a, n - 2, n - 1, 2);
            }
            Family::C => {
                (0..n - 2).for_each(|i| simple_bond(&mut a, i, i + 1));
                multi_bond(&mut a, n - 1, n - 2, 2);
            }
            Family::D => {
                (0..n - 2).for_each(|i| simple_bond(&mut a, i, i + 1));
                simple_bond(&mut a, n - 3, n - 1);
            }
            Family::E => {
                // chain 1..n-1, node n hangs off node 3 (E6, E7) or node 5 (E8)
                (0..n - 2).for_each(|i| simple_bond(&mut a, i, i + 1));
                let branch = if n == 8 { 4 } else { 2 };
                simple_bond(&mut a, branch, n - 1);
            }
            Family::F => {
                simple_bond(&mut a, 0, 1);
                multi_bond(&mut a, 1, 2, 2);
                simple_bond(&mut a, 2, 3);
            }
            Family::G => multi_bond(&mut a, 0, 1, 3),
        }
        a
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for FiniteType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadTypeName(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse::<usize>().map_err(|_| bad())?;
        FiniteType::new(family, rank)
    }
}

macro_rules! lattice_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub struct $name(pub Vec<i64>);

        impl $name {
            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn scale(&self, k: i64) -> Self {
                $name(self.0.iter().map(|a| a * k).collect())
            }

            pub fn neg(&self) -> Self {
                self.scale(-1)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    };
}

lattice_vector!(
    /// Element of the root lattice, simple-root coordinates.
    Root
);
lattice_vector!(
    /// Element of the coroot lattice, simple-coroot coordinates.
    Coroot
);
lattice_vector!(
    /// Element of the finite weight lattice, fundamental-weight coordinates.
    Weight
);

impl Root {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && !self.is_zero()
    }
}

/// `⟨w, h⟩` for a weight in fundamental-weight coordinates and a coroot in
/// simple-coroot coordinates.
pub fn pair(w: &Weight, c: &Coroot) -> i64 {
    w.0.iter().zip(&c.0).map(|(a, b)| a * b).sum()
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    finite_type: FiniteType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    positive_coroots: Vec<Coroot>,
    root_weights: Vec<Weight>,
    highest_root: usize,
    rho: Weight,
    // ω-coordinates of every root, positive or negative -> (index, is_negative)
    weight_lookup: HashMap<Weight, (usize, bool)>,
}

impl RootSystem {
    /// Generates the positive roots and coroots by closing the simple
    /// (root, coroot) pairs under the simple reflections.
    pub fn new(finite_type: FiniteType) -> Self {
        let n = finite_type.rank();
        let cartan = finite_type.pairing_matrix();

        let mut seen: HashSet<Root> = HashSet::new();
        let mut all: Vec<(Root, Coroot)> = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            queue.push_back((Root(e.clone()), Coroot(e)));
        }
        while let Some((root, coroot)) = queue.pop_front() {
            if !seen.insert(root.clone()) {
                continue;
            }
            #[allow(clippy::needless_range_loop)]
            for j in 0..n {
                // s_j β = β - ⟨β, α_j∨⟩ α_j ; s_j β∨ = β∨ - ⟨α_j, β∨⟩ α_j∨
                let b_pair: i64 = (0..n).map(|i| root.0[i] * cartan[i][j]).sum();
                let c_pair: i64 = (0..n).map(|i| coroot.0[i] * cartan[j][i]).sum();
                let mut r = root.clone();
                r.0[j] -= b_pair;
                let mut c = coroot.clone();
                c.0[j] -= c_pair;
                if !seen.contains(&r) {
                    queue.push_back((r, c));
                }
            }
            all.push((root, coroot));
        }

        let mut positive: Vec<(Root, Coroot)> =
            all.into_iter().filter(|(r, _)| r.is_positive()).collect();
        positive.sort_by(|(a, _), (b, _)| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));

        let (positive_roots, positive_coroots): (Vec<Root>, Vec<Coroot>) =
            positive.into_iter().unzip();
        let root_weights: Vec<Weight> = positive_roots
            .iter()
            .map(|r| root_to_weight(&cartan, r))
            .collect();
        let highest_root = positive_roots.len() - 1;

        let two_rho = positive_roots
            .iter()
            .fold(Root::zero(n), |acc, r| acc.add(r));
        let rho_w = root_to_weight(&cartan, &two_rho);
        let rho = Weight(rho_w.0.iter().map(|c| c / 2).collect());

        let mut weight_lookup = HashMap::new();
        for (i, w) in root_weights.iter().enumerate() {
            weight_lookup.insert(w.clone(), (i, false));
            weight_lookup.insert(w.neg(), (i, true));
        }

        RootSystem {
            finite_type,
            cartan,
            positive_roots,
            positive_coroots,
            root_weights,
            highest_root,
            rho,
            weight_lookup,
        }
    }

    pub fn finite_type(&self) -> FiniteType {
        self.finite_type
    }

    pub fn rank(&self) -> usize {
        self.finite_type.rank()
    }

    /// `⟨α_i, α_j∨⟩`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Coroot] {
        &self.positive_coroots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn root(&self, idx: usize) -> &Root {
        &self.positive_roots[idx]
    }

    pub fn coroot(&self, idx: usize) -> &Coroot {
        &self.positive_coroots[idx]
    }

    /// The positive root `idx` in fundamental-weight coordinates.
    pub fn root_weight(&self, idx: usize) -> &Weight {
        &self.root_weights[idx]
    }

    /// Index of θ in [`Self::positive_roots`].
    pub fn highest_root(&self) -> usize {
        self.highest_root
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Simple root `i` has index `i` among the positive roots.
    pub fn simple_root(&self, i: usize) -> usize {
        debug_assert!(self.positive_roots[i].height() == 1 && self.positive_roots[i].0[i] == 1);
        i
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Weight(v)
    }

    /// Looks up a root (of either sign) given in fundamental-weight
    /// coordinates; returns the positive root index and whether it was negative.
    pub fn find_root(&self, w: &Weight) -> Option<(usize, bool)> {
        self.weight_lookup.get(w).copied()
    }

    /// `r_β(w) = w - ⟨w, β∨⟩β`.
    pub fn reflect_weight(&self, w: &Weight, beta: usize) -> Weight {
        let k = pair(w, &self.positive_coroots[beta]);
        w.sub(&self.root_weights[beta].scale(k))
    }

    /// Whether the positive root is supported on the node set `j`.
    pub fn in_parabolic(&self, beta: usize, parabolic: &[usize]) -> bool {
        self.positive_roots[beta]
            .0
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || parabolic.contains(&i))
    }

    pub fn root_to_weight(&self, r: &Root) -> Weight {
        root_to_weight(&self.cartan, r)
    }
}

fn root_to_weight(cartan: &[Vec<i64>], r: &Root) -> Weight {
    let n = cartan.len();
    Weight(
        (0..n)
            .map(|j| (0..n).map(|i| r.0[i] * cartan[i][j]).sum())
            .collect(),
    )
}

/// Shape data of a level-zero dominant weight `λ = Σ m_i ϖ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelZeroShape {
    multiplicities: Vec<u32>,
    classical: Weight,
    parabolic: Vec<usize>,
}

impl LevelZeroShape {
    pub fn new(rs: &RootSystem, multiplicities: &[u32]) -> Result<Self> {
        if multiplicities.len() != rs.rank() {
            return Err(Error::RankMismatch { expected: rs.rank(), got: multiplicities.len() });
        }
        if multiplicities.iter().all(|&m| m == 0) {
            return Err(Error::ZeroWeight);
        }
        // ⟨ϖ_i, α_j∨⟩ = δ_ij, so cl(λ) has the multiplicities as coordinates
        let classical = Weight(multiplicities.iter().map(|&m| i64::from(m)).collect());
        let parabolic = (0..rs.rank())
            .filter(|&j| pair(&classical, &Coroot(unit(rs.rank(), j))) == 0)
            .collect();
        Ok(LevelZeroShape { multiplicities: multiplicities.to_vec(), classical, parabolic })
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// `Λ = cl(λ)`.
    pub fn classical(&self) -> &Weight {
        &self.classical
    }

    /// `J = { j : ⟨Λ, α_j∨⟩ = 0 }`, 0-based and sorted.
    pub fn parabolic(&self) -> &[usize] {
        &self.parabolic
    }

    /// `gcd_j m_j`. The δ-coefficients occurring in the affine orbit of λ
    /// form the lattice `g ℤ`.
    pub fn delta_step(&self) -> i64 {
        self.multiplicities
            .iter()
            .fold(0i64, |g, &m| g.gcd(&i64::from(m)))
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Parses `"2,1"` into multiplicities.
pub fn parse_multiplicities(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad multiplicity {t:?} in {s:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> RootSystem {
        RootSystem::new(name.parse().unwrap())
    }

    #[test]
    fn type_validation() {
        for bad in ["A0", "B1", "C1", "D3", "E5", "E9", "F3", "G3", "X2", "A", "A9"] {
            assert!(bad.parse::<FiniteType>().is_err(), "{bad}");
        }
        for good in ["A1", "A8", "B2", "C3", "D4", "E6", "E8", "F4", "G2"] {
            assert_eq!(good.parse::<FiniteType>().unwrap().to_string(), good);
        }
    }

    #[test]
    fn a2_roots() {
        let r = rs("A2");
        let roots: Vec<_> = r.positive_roots().iter().map(|x| x.0.clone()).collect();
        assert_eq!(roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(r.root(r.highest_root()).0, vec![1, 1]);
    }

    #[test]
    fn a1_roots() {
        let r = rs("A1");
        assert_eq!(r.num_positive_roots(), 1);
        assert_eq!(r.highest_root(), 0);
    }

    #[test]
    fn c2_roots() {
        let r = rs("C2");
        assert_eq!(r.num_positive_roots(), 4);
        assert_eq!(r.root(r.highest_root()).0, vec![2, 1]);
        // θ long: θ∨ = α1∨ + α2∨
        assert_eq!(r.coroot(r.highest_root()).0, vec![1, 1]);
    }

    #[test]
    fn positive_root_counts() {
        // n(n+1)/2, n², n², n(n-1), 36, 63, 120, 24, 6
        let expect = [
            ("A3", 6), ("A4", 10), ("B3", 9), ("C3", 9), ("D4", 12), ("D5", 20),
            ("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24), ("G2", 6),
        ];
        for (t, n) in expect {
            assert_eq!(rs(t).num_positive_roots(), n, "{t}");
        }
    }

    #[test]
    fn highest_root_is_unique_max_height() {
        for t in ["A3", "B3", "C3", "D4", "E6", "E7", "E8", "F4", "G2"] {
            let r = rs(t);
            let h = r.root(r.highest_root()).height();
            let at_max = r.positive_roots().iter().filter(|x| x.height() == h).count();
            assert_eq!(at_max, 1, "{t}");
        }
        // Kac marks
        assert_eq!(rs("G2").root(rs("G2").highest_root()).0, vec![2, 3]);
        assert_eq!(rs("F4").root(rs("F4").highest_root()).0, vec![2, 3, 4, 2]);
        assert_eq!(rs("E6").root(rs("E6").highest_root()).0, vec![1, 2, 3, 2, 1, 2]);
    }

    #[test]
    fn rho_pairs_to_one_on_simple_coroots() {
        for t in ["A2", "B3", "C2", "D4", "F4", "G2", "E6"] {
            let r = rs(t);
            assert!(r.rho().0.iter().all(|&c| c == 1), "{t}");
            for (b, c) in r.positive_roots().iter().zip(r.positive_coroots()) {
                let p = pair(r.rho(), c);
                assert!(p >= 1);
                assert_eq!(p == 1, b.height() == 1, "{t} {b}");
            }
        }
    }

    #[test]
    fn pairing_matrix_matches_simple_data() {
        for t in ["A3", "B2", "C3", "G2", "F4"] {
            let r = rs(t);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let w = r.root_weight(r.simple_root(i));
                    assert_eq!(pair(w, r.coroot(r.simple_root(j))), r.cartan(i, j));
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let r = rs("A2");
        let lam = Weight(vec![2, 1]);
        assert_eq!(pair(&lam, r.coroot(r.highest_root())), 3);
        assert_eq!(pair(&lam, r.coroot(0)), 2);
        assert_eq!(pair(&lam, &Coroot::zero(2)), 0);
    }

    #[test]
    fn reflection_examples() {
        let r = rs("A2");
        let lam = Weight(vec![2, 1]);
        let once = r.reflect_weight(&lam, 0);
        assert_eq!(once.0, vec![-2, 3]);
        assert_eq!(once, lam.sub(&r.root_weight(0).scale(2)));
        assert_eq!(r.reflect_weight(&once, 0), lam);
        assert_eq!(r.reflect_weight(&Weight::zero(2), 2), Weight::zero(2));
    }

    #[test]
    fn reflections_are_involutions() {
        for t in ["A3", "B3", "C3", "G2", "D4"] {
            let r = rs(t);
            let n = r.rank();
            let samples: Vec<Weight> = (0..20)
                .map(|k| Weight((0..n).map(|i| ((k * 7 + i * 3) % 9) as i64 - 4).collect()))
                .collect();
            for w in &samples {
                for b in 0..r.num_positive_roots() {
                    assert_eq!(&r.reflect_weight(&r.reflect_weight(w, b), b), w);
                }
            }
        }
    }

    #[test]
    fn shapes() {
        let r = rs("A2");
        let s = LevelZeroShape::new(&r, &[2, 1]).unwrap();
        assert_eq!(s.classical().0, vec![2, 1]);
        assert!(s.parabolic().is_empty());
        assert_eq!(LevelZeroShape::new(&r, &[1, 0]).unwrap().parabolic(), &[1]);
        let a3 = rs("A3");
        assert_eq!(LevelZeroShape::new(&a3, &[0, 1, 0]).unwrap().parabolic(), &[0, 2]);
        assert_eq!(LevelZeroShape::new(&r, &[0, 0]), Err(Error::ZeroWeight));
        assert!(matches!(LevelZeroShape::new(&r, &[1]), Err(Error::RankMismatch { .. })));
        assert_eq!(LevelZeroShape::new(&a3, &[2, 0, 4]).unwrap().delta_step(), 2);
    }

    #[test]
    fn multiplicity_parsing() {
        assert_eq!(parse_multiplicities("2, 1").unwrap(), vec![2, 1]);
        assert!(parse_multiplicities("2,-1").is_err());
        assert!(parse_multiplicities("").is_err());
    }
}
