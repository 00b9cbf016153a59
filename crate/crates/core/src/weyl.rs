//! The finite Weyl group, its lengths and minimal coset representatives.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::fmt;

use crate::cartan::{pair, RootSystem, Weight};
use crate::error::{Error, Result};

/// Group orders above this log a warning.
pub const GROUP_WARN: usize = 10_000;
/// Default hard cap on `|W₀|`.
pub const GROUP_CAP: usize = 40_000;

/// Dense index into a [`WeylGroup`].
pub type ElementId = usize;

#[derive(Clone, Debug)]
pub struct WeylElement {
    pub id: ElementId,
    /// Row-major action on fundamental-weight coordinates.
    pub action: Vec<i64>,
    pub length: usize,
    /// Reduced word in BFS discovery order (not ShortLex).
    pub reduced_word: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
    index: HashMap<Vec<i64>, ElementId>,
    right: Vec<Vec<ElementId>>,
    inverse: Vec<ElementId>,
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

impl WeylGroup {
    pub fn new(rs: &RootSystem) -> Result<Self> {
        Self::with_cap(rs, GROUP_CAP)
    }

    /// Breadth-first enumeration from the identity by right multiplication
    /// with simple reflections; BFS depth is the length.
    pub fn with_cap(rs: &RootSystem, cap: usize) -> Result<Self> {
        let n = rs.rank();
        let order = rs.finite_type().weyl_order();
        if order > cap as u128 {
            return Err(Error::GroupTooLarge { cap });
        }
        if order > GROUP_WARN as u128 {
            log::warn!("enumerating a Weyl group of order {order}");
        }
        let generators: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                // (s_i λ)_j = λ_j - λ_i ⟨α_i, α_j∨⟩
                let mut m = identity(n);
                for j in 0..n {
                    m[j * n + i] -= rs.cartan(i, j);
                }
                m
            })
            .collect();

        let mut elements = vec![WeylElement {
            id: 0,
            action: identity(n),
            length: 0,
            reduced_word: vec![],
        }];
        let mut index = HashMap::from([(identity(n), 0)]);
        let mut right: Vec<Vec<ElementId>> = vec![vec![usize::MAX; n]];
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (i, g) in generators.iter().enumerate() {
                let m = mat_mul(n, &elements[w].action, g);
                let id = match index.get(&m) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id >= cap {
                            return Err(Error::GroupTooLarge { cap });
                        }
                        let mut word = elements[w].reduced_word.clone();
                        word.push(i);
                        elements.push(WeylElement {
                            id,
                            action: m.clone(),
                            length: elements[w].length + 1,
                            reduced_word: word,
                        });
                        index.insert(m, id);
                        right.push(vec![usize::MAX; n]);
                        queue.push_back(id);
                        id
                    }
                };
                right[w][i] = id;
            }
        }

        let inverse = elements
            .iter()
            .map(|e| {
                let mut v = 0;
                for &i in e.reduced_word.iter().rev() {
                    v = right[v][i];
                }
                v
            })
            .collect();

        Ok(WeylGroup { rank: n, elements, index, right, inverse })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &WeylElement {
        &self.elements[id]
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn length(&self, id: ElementId) -> usize {
        self.elements[id].length
    }

    /// `w · s_i`.
    pub fn mul_simple(&self, w: ElementId, i: usize) -> ElementId {
        self.right[w][i]
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.inverse[w]
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.elements[b]
            .reduced_word
            .iter()
            .fold(a, |acc, &i| self.right[acc][i])
    }

    pub fn longest(&self) -> ElementId {
        self.elements.len() - 1
    }

    /// Element for a word in the simple reflections (need not be reduced).
    pub fn from_word(&self, word: &[usize]) -> ElementId {
        word.iter().fold(0, |acc, &i| self.right[acc][i])
    }

    pub fn find_by_action(&self, action: &[i64]) -> Option<ElementId> {
        self.index.get(action).copied()
    }

    /// The reflection `r_β` for a positive root index.
    pub fn reflection(&self, rs: &RootSystem, beta: usize) -> ElementId {
        // r_β λ = λ - ⟨λ, β∨⟩ β, i.e. M = I - β_ω ⊗ β∨
        let n = self.rank;
        let bw = rs.root_weight(beta);
        let bc = rs.coroot(beta);
        let mut m = identity(n);
        for j in 0..n {
            for k in 0..n {
                m[j * n + k] -= bw.0[j] * bc.0[k];
            }
        }
        self.index[&m]
    }

    pub fn act(&self, w: ElementId, v: &Weight) -> Weight {
        let n = self.rank;
        let a = &self.elements[w].action;
        Weight((0..n).map(|j| (0..n).map(|k| a[j * n + k] * v.0[k]).sum()).collect())
    }

    /// `w β` for a positive root `β`, as (positive root index, is_negative).
    pub fn act_on_root(&self, rs: &RootSystem, w: ElementId, beta: usize) -> (usize, bool) {
        rs.find_root(&self.act(w, rs.root_weight(beta)))
            .expect("Weyl group permutes the roots")
    }

    /// Number of positive roots sent to negative roots; equals the length.
    pub fn inversion_count(&self, rs: &RootSystem, w: ElementId) -> usize {
        // w β < 0 ⟺ ⟨w⁻¹ρ, β∨⟩ < 0
        let winv_rho = self.act(self.inverse(w), rs.rho());
        rs.positive_coroots()
            .iter()
            .filter(|c| pair(&winv_rho, c) < 0)
            .count()
    }

    pub fn word_string(&self, w: ElementId) -> String {
        format_word(&self.elements[w].reduced_word)
    }
}

/// `"e"` for the empty word, otherwise `"s1 s2 s1"`.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter()
            .map(|i| format!("s{}", i + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parses words like `"s1 s2"`, `"r2 r1"`, `"r1r2"`, `"1 2"` or `"e"`.
/// Returns 0-based generator indices.
pub fn parse_word(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad Weyl group word {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let mut word = Vec::new();
    for token in s.split_whitespace() {
        if token == "e" {
            continue;
        }
        let mut chars = token.chars().peekable();
        while let Some(c) = chars.next() {
            let d = match c {
                's' | 'r' => chars.next().ok_or_else(bad)?,
                d => d,
            };
            let i = d.to_digit(10).ok_or_else(bad)? as usize;
            if i == 0 || i > rank {
                return Err(bad());
            }
            word.push(i - 1);
        }
    }
    Ok(word)
}

/// Minimal-length coset representatives `W₀ᴶ` and the projection `⌊·⌋_J`.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    parabolic: Vec<usize>,
    reps: Vec<ElementId>,
    rep_of_element: Vec<Option<usize>>,
    projection: Vec<usize>,
}

/// Index into [`CosetSystem::reps`].
pub type RepId = usize;

impl CosetSystem {
    pub fn new(group: &WeylGroup, parabolic: &[usize]) -> Self {
        let mut parabolic = parabolic.to_vec();
        parabolic.sort_unstable();
        parabolic.dedup();

        let is_min = |w: ElementId| {
            parabolic
                .iter()
                .all(|&j| group.length(group.mul_simple(w, j)) > group.length(w))
        };
        // group ids are in nondecreasing length order already
        let reps: Vec<ElementId> = (0..group.len()).filter(|&w| is_min(w)).collect();
        let mut rep_of_element = vec![None; group.len()];
        for (r, &w) in reps.iter().enumerate() {
            rep_of_element[w] = Some(r);
        }
        let projection = (0..group.len())
            .map(|w| {
                let mut cur = w;
                // strip right descents in J until minimal
                'outer: loop {
                    for &j in &parabolic {
                        let next = group.mul_simple(cur, j);
                        if group.length(next) < group.length(cur) {
                            cur = next;
                            continue 'outer;
                        }
                    }
                    break;
                }
                rep_of_element[cur].expect("descent reduction ends at a minimal rep")
            })
            .collect();
        CosetSystem { parabolic, reps, rep_of_element, projection }
    }

    pub fn parabolic(&self) -> &[usize] {
        &self.parabolic
    }

    pub fn reps(&self) -> &[ElementId] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn element(&self, rep: RepId) -> ElementId {
        self.reps[rep]
    }

    /// The rep id of a group element that is itself a minimal representative.
    pub fn rep_id(&self, w: ElementId) -> Option<RepId> {
        self.rep_of_element[w]
    }

    /// `⌊w⌋_J` as a rep id.
    pub fn project(&self, w: ElementId) -> RepId {
        self.projection[w]
    }
}

impl fmt::Display for CosetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W^J with J = {{")?;
        for (i, j) in self.parabolic.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", j + 1)?;
        }
        write!(f, "}}, {} representatives", self.reps.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn setup(t: &str) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::new(t.parse().unwrap());
        let g = WeylGroup::new(&rs).unwrap();
        (rs, g)
    }

    #[test]
    fn a2_group() {
        let (_, g) = setup("A2");
        let lengths: Vec<_> = g.elements().iter().map(|e| e.length).collect();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(g.word_string(g.longest()), "s1 s2 s1");
        assert_eq!(g.from_word(&[1, 0, 1]), g.longest());
    }

    #[test]
    fn small_groups() {
        let (_, a1) = setup("A1");
        assert_eq!(a1.len(), 2);
        let (_, c2) = setup("C2");
        assert_eq!(c2.len(), 8);
        assert_eq!(c2.length(c2.longest()), 4);
    }

    #[test]
    fn orders_match_formula() {
        for t in ["A1", "A3", "A4", "B3", "C3", "D4", "G2", "F4"] {
            let (rs, g) = setup(t);
            assert_eq!(g.len() as u128, rs.finite_type().weyl_order(), "{t}");
            assert_eq!(g.length(g.longest()), rs.num_positive_roots(), "{t}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let rs = RootSystem::new("E6".parse().unwrap());
        assert_eq!(WeylGroup::new(&rs).unwrap_err(), Error::GroupTooLarge { cap: GROUP_CAP });
        let a3 = RootSystem::new("A3".parse().unwrap());
        assert!(WeylGroup::with_cap(&a3, 10).is_err());
    }

    #[test]
    fn lengths_are_inversion_counts_and_words_reduce() {
        for t in ["A3", "B3", "C2", "G2", "D4"] {
            let (rs, g) = setup(t);
            for e in g.elements() {
                assert_eq!(e.length, g.inversion_count(&rs, e.id), "{t}");
                assert_eq!(e.reduced_word.len(), e.length);
                assert_eq!(g.from_word(&e.reduced_word), e.id);
                assert_eq!(g.mul(e.id, g.inverse(e.id)), g.identity());
            }
        }
    }

    #[test]
    fn root_closure_matches_orbit_of_simple_roots() {
        // second pass: W-orbit of the simple roots, in weight coordinates
        for t in ["A3", "B3", "C3", "G2", "F4", "D4"] {
            let (rs, g) = setup(t);
            let mut orbit = HashSet::new();
            for e in g.elements() {
                for i in 0..rs.rank() {
                    orbit.insert(g.act(e.id, rs.root_weight(rs.simple_root(i))));
                }
            }
            assert_eq!(orbit.len(), 2 * rs.num_positive_roots(), "{t}");
            for w in &orbit {
                assert!(rs.find_root(w).is_some());
            }
        }
    }

    #[test]
    fn reflections_match_words() {
        let (rs, g) = setup("A2");
        assert_eq!(g.reflection(&rs, 0), g.from_word(&[0]));
        assert_eq!(g.reflection(&rs, 2), g.longest());
    }

    #[test]
    fn coset_examples() {
        let (_, g) = setup("A2");
        let full = CosetSystem::new(&g, &[]);
        assert_eq!(full.len(), 6);
        assert!((0..6).all(|w| full.element(full.project(w)) == w));

        let cs = CosetSystem::new(&g, &[1]);
        let words: Vec<_> = cs.reps().iter().map(|&w| g.word_string(w)).collect();
        assert_eq!(words, vec!["e", "s1", "s2 s1"]);
        // ⌊r2⌋ = e, ⌊r1 r2⌋ = r1
        assert_eq!(cs.element(cs.project(g.from_word(&[1]))), g.identity());
        assert_eq!(cs.element(cs.project(g.from_word(&[0, 1]))), g.from_word(&[0]));

        let top = CosetSystem::new(&g, &[0, 1]);
        assert_eq!(top.reps(), &[g.identity()]);
        assert_eq!(full.project(g.longest()), full.rep_id(g.longest()).unwrap());
    }

    #[test]
    fn coset_invariants_exhaustive() {
        for t in ["A2", "A3", "B3", "C3", "G2"] {
            let (rs, g) = setup(t);
            let n = rs.rank();
            for mask in 0u32..(1 << n) {
                let j: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let cs = CosetSystem::new(&g, &j);
                let sub = (0..g.len())
                    .filter(|&x| g.element(x).reduced_word.iter().all(|i| j.contains(i)))
                    .collect::<Vec<_>>();
                assert_eq!(cs.len() * sub.len(), g.len(), "{t} {j:?}");

                // oracle: the coset of w is determined by w·Λ_J, Λ_J = Σ_{i∉J} ω_i
                let lam_j = Weight((0..n).map(|i| i64::from(!j.contains(&i))).collect());
                let mut best: HashMap<Weight, ElementId> = HashMap::new();
                for e in g.elements() {
                    let key = g.act(e.id, &lam_j);
                    let cur = best.entry(key).or_insert(e.id);
                    if g.length(e.id) < g.length(*cur) {
                        *cur = e.id;
                    }
                }
                for e in g.elements() {
                    let p = cs.element(cs.project(e.id));
                    assert_eq!(p, best[&g.act(e.id, &lam_j)]);
                    assert!(g.length(p) <= e.length);
                    assert_eq!(g.length(p) == e.length, cs.rep_id(e.id).is_some());
                    // idempotent
                    assert_eq!(cs.project(p), cs.project(e.id));
                    // p⁻¹ w ∈ W_J
                    let q = g.mul(g.inverse(p), e.id);
                    assert!(sub.contains(&q));
                }
                for &w in cs.reps() {
                    for &x in &sub {
                        assert_eq!(g.length(g.mul(w, x)), g.length(w) + g.length(x));
                    }
                }
            }
        }
    }

    #[test]
    fn reps_inject_into_orbit() {
        let (rs, g) = setup("A3");
        let shape = crate::cartan::LevelZeroShape::new(&rs, &[0, 1, 0]).unwrap();
        let cs = CosetSystem::new(&g, shape.parabolic());
        let images: HashSet<_> = cs.reps().iter().map(|&w| g.act(w, shape.classical())).collect();
        assert_eq!(images.len(), cs.len());
        assert_eq!(cs.len(), 6);
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("s1 s2 s1", 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("r2 r1", 2).unwrap(), vec![1, 0]);
        assert_eq!(parse_word("r1r2", 2).unwrap(), vec![0, 1]);
        assert_eq!(parse_word("e", 2).unwrap(), Vec::<usize>::new());
        assert!(parse_word("s3", 2).is_err());
        assert!(parse_word("x1", 2).is_err());
        assert!(parse_word("", 2).is_err());
        assert_eq!(format_word(&[0, 1]), "s1 s2");
        assert_eq!(format_word(&[]), "e");
    }
}
