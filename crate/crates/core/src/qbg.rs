//! The parabolic quantum Bruhat graph on `W₀ᴶ`.
//!
//! An edge `w --β--> ⌊w r_β⌋` exists for `β ∈ Δ₀⁺ \ Δ₀,J⁺` when either
//! `ℓ(⌊w r_β⌋) = ℓ(w) + 1` (Bruhat) or
//! `ℓ(⌊w r_β⌋) = ℓ(w) - 2⟨ρ - ρ_J, β∨⟩ + 1` (quantum).
//!
//! Paths are stored in the orientation used for σ-paths: a path from `y` to
//! `x` is `x = w₀ ← w₁ ← ⋯ ← wₙ = y`, where step `k` is the edge
//! `w_k --β_k--> w_{k-1}`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cartan::{pair, Coroot, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::scalar::Frac;
use crate::weyl::{CosetSystem, RepId, WeylGroup};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Bruhat,
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QbgEdge {
    pub source: RepId,
    pub target: RepId,
    /// Index of `β` among the positive roots.
    pub label: usize,
    pub kind: EdgeKind,
}

/// Neighbour choice when several shortest continuations exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Smallest `(target, label)` first.
    #[default]
    Forward,
    /// Largest `(target, label)` first.
    Reverse,
}

/// A directed path `x = w₀ ← w₁ ← ⋯ ← wₙ = y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedPath {
    pub vertices: Vec<RepId>,
    pub labels: Vec<usize>,
    pub kinds: Vec<EdgeKind>,
}

impl DirectedPath {
    pub fn empty(at: RepId) -> Self {
        DirectedPath { vertices: vec![at], labels: vec![], kinds: vec![] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `x`, the end of the path.
    pub fn head(&self) -> RepId {
        self.vertices[0]
    }

    /// `y`, the start of the path.
    pub fn tail(&self) -> RepId {
        *self.vertices.last().unwrap()
    }

    /// Builds from edges listed in walking order, `y` first.
    fn from_walk(start: RepId, walk: &[QbgEdge]) -> Self {
        let mut vertices = vec![start];
        vertices.extend(walk.iter().map(|e| e.target));
        vertices.reverse();
        DirectedPath {
            vertices,
            labels: walk.iter().rev().map(|e| e.label).collect(),
            kinds: walk.iter().rev().map(|e| e.kind).collect(),
        }
    }

    /// `wt(d) = Σ β_k∨` over quantum steps.
    pub fn weight(&self, rs: &RootSystem) -> Coroot {
        self.labels
            .iter()
            .zip(&self.kinds)
            .filter(|(_, &k)| k == EdgeKind::Quantum)
            .fold(Coroot::zero(rs.rank()), |acc, (&b, _)| acc.add(rs.coroot(b)))
    }
}

/// A σ-path search result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPath {
    pub path: DirectedPath,
    /// The path length equals the unrestricted directed distance.
    pub is_shortest: bool,
}

#[derive(Clone, Debug)]
pub struct Pqbg {
    num_vertices: usize,
    edges: Vec<QbgEdge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
    labels: Vec<usize>,
    two_rho_j: Weight,
    // dist[y][x] = ℓ(x ⇐ y)
    dist: Vec<Vec<usize>>,
}

impl Pqbg {
    pub fn new(rs: &RootSystem, group: &WeylGroup, cosets: &CosetSystem) -> Self {
        let parabolic = cosets.parabolic();
        let n = rs.rank();
        let labels: Vec<usize> = (0..rs.num_positive_roots())
            .filter(|&b| !rs.in_parabolic(b, parabolic))
            .collect();
        let two_rho_j = (0..rs.num_positive_roots())
            .filter(|&b| rs.in_parabolic(b, parabolic))
            .fold(Weight::zero(n), |acc, b| acc.add(rs.root_weight(b)));
        let two_rho = rs.rho().scale(2);
        let reflections: Vec<_> = (0..rs.num_positive_roots())
            .map(|b| group.reflection(rs, b))
            .collect();

        let mut edges = Vec::new();
        for (source, &w) in cosets.reps().iter().enumerate() {
            let lw = group.length(w) as i64;
            for &b in &labels {
                let target = cosets.project(group.mul(w, reflections[b]));
                let lt = group.length(cosets.element(target)) as i64;
                // 2⟨ρ - ρ_J, β∨⟩ ≥ 2 off J, so the two cases are exclusive
                let drop = pair(&two_rho.sub(&two_rho_j), rs.coroot(b));
                let bruhat = lt == lw + 1;
                let quantum = lt == lw - drop + 1;
                assert!(!(bruhat && quantum), "edge kinds overlap at ({source}, {b})");
                let kind = if bruhat {
                    EdgeKind::Bruhat
                } else if quantum {
                    EdgeKind::Quantum
                } else {
                    continue;
                };
                edges.push(QbgEdge { source, target, label: b, kind });
            }
        }

        let nv = cosets.len();
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source].push(i);
            in_edges[e.target].push(i);
        }
        for list in out_edges.iter_mut().chain(in_edges.iter_mut()) {
            list.sort_by_key(|&i| (edges[i].target, edges[i].source, edges[i].label));
        }

        let mut g = Pqbg {
            num_vertices: nv,
            edges,
            out_edges,
            in_edges,
            labels,
            two_rho_j,
            dist: vec![],
        };
        g.dist = (0..nv).map(|y| g.bfs_from(y, |_| true)).map(|d| {
            d.into_iter().map(|x| x.expect("quantum Bruhat graph is strongly connected")).collect()
        }).collect();
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[QbgEdge] {
        &self.edges
    }

    pub fn out_edges(&self, v: RepId) -> impl Iterator<Item = &QbgEdge> + '_ {
        self.out_edges[v].iter().map(|&i| &self.edges[i])
    }

    pub fn in_edges(&self, v: RepId) -> impl Iterator<Item = &QbgEdge> + '_ {
        self.in_edges[v].iter().map(|&i| &self.edges[i])
    }

    pub fn edge(&self, source: RepId, label: usize) -> Option<&QbgEdge> {
        self.out_edges(source).find(|e| e.label == label)
    }

    /// The admissible labels `Δ₀⁺ \ Δ₀,J⁺`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// `2ρ_J` (ρ_J itself may be half-integral).
    pub fn two_rho_j(&self) -> &Weight {
        &self.two_rho_j
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// `ℓ(x ⇐ y)`: length of a shortest directed path from `y` to `x`.
    pub fn directed_distance(&self, x: RepId, y: RepId) -> usize {
        self.dist[y][x]
    }

    fn bfs_from(&self, y: RepId, allowed: impl Fn(&QbgEdge) -> bool) -> Vec<Option<usize>> {
        let mut d = vec![None; self.num_vertices];
        d[y] = Some(0);
        let mut queue = VecDeque::from([y]);
        while let Some(v) = queue.pop_front() {
            let dv = d[v].unwrap();
            for e in self.out_edges(v).filter(|e| allowed(e)) {
                if d[e.target].is_none() {
                    d[e.target] = Some(dv + 1);
                    queue.push_back(e.target);
                }
            }
        }
        d
    }

    // distances to x along allowed edges, by BFS over reversed edges
    fn bfs_to(&self, x: RepId, allowed: &impl Fn(&QbgEdge) -> bool) -> Vec<Option<usize>> {
        let mut d = vec![None; self.num_vertices];
        d[x] = Some(0);
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            let dv = d[v].unwrap();
            for e in self.in_edges(v).filter(|e| allowed(e)) {
                if d[e.source].is_none() {
                    d[e.source] = Some(dv + 1);
                    queue.push_back(e.source);
                }
            }
        }
        d
    }

    fn shortest_in(
        &self,
        x: RepId,
        y: RepId,
        tie: TieBreak,
        allowed: impl Fn(&QbgEdge) -> bool,
    ) -> Option<DirectedPath> {
        let to_x = self.bfs_to(x, &allowed);
        let mut remaining = to_x[y]?;
        let mut walk = Vec::with_capacity(remaining);
        let mut cur = y;
        while remaining > 0 {
            let mut step = self
                .out_edges(cur)
                .filter(|e| allowed(e) && to_x[e.target] == Some(remaining - 1));
            // out-edge lists are sorted by (target, label)
            let e = match tie {
                TieBreak::Forward => step.next(),
                TieBreak::Reverse => step.last(),
            }
            .expect("BFS layer has a predecessor");
            walk.push(*e);
            cur = e.target;
            remaining -= 1;
        }
        Some(DirectedPath::from_walk(y, &walk))
    }

    /// A shortest directed path from `y` to `x`.
    pub fn shortest_path(&self, x: RepId, y: RepId, tie: TieBreak) -> DirectedPath {
        self.shortest_in(x, y, tie, |_| true)
            .expect("quantum Bruhat graph is strongly connected")
    }

    /// Shortest directed σ-path from `y` to `x`: every label satisfies
    /// `σ⟨Λ, β∨⟩ ∈ ℤ`.
    pub fn sigma_path(
        &self,
        rs: &RootSystem,
        x: RepId,
        y: RepId,
        sigma: &Rational,
        lambda: &Weight,
        tie: TieBreak,
    ) -> Result<Option<SigmaPath>> {
        check_sigma(sigma)?;
        let allowed = |e: &QbgEdge| sigma_admissible(rs, sigma, lambda, e.label);
        Ok(self.shortest_in(x, y, tie, allowed).map(|path| SigmaPath {
            is_shortest: path.len() == self.directed_distance(x, y),
            path,
        }))
    }

    /// All simple directed paths from `y` to `x` of length at most
    /// `max_len`, in DFS order. Errors once more than `cap` are found.
    pub fn all_paths_up_to(
        &self,
        x: RepId,
        y: RepId,
        max_len: usize,
        cap: usize,
    ) -> Result<Vec<DirectedPath>> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.num_vertices];
        let mut walk = Vec::new();
        on_path[y] = true;
        self.dfs_paths(x, y, y, max_len, cap, &mut on_path, &mut walk, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_paths(
        &self,
        x: RepId,
        start: RepId,
        cur: RepId,
        budget: usize,
        cap: usize,
        on_path: &mut [bool],
        walk: &mut Vec<QbgEdge>,
        out: &mut Vec<DirectedPath>,
    ) -> Result<()> {
        if cur == x {
            if out.len() >= cap {
                return Err(Error::CapExceeded { what: "directed paths", cap });
            }
            out.push(DirectedPath::from_walk(start, walk));
            return Ok(());
        }
        if budget == 0 {
            return Ok(());
        }
        for e in self.out_edges(cur) {
            if on_path[e.target] {
                continue;
            }
            on_path[e.target] = true;
            walk.push(*e);
            self.dfs_paths(x, start, e.target, budget - 1, cap, on_path, walk, out)?;
            walk.pop();
            on_path[e.target] = false;
        }
        Ok(())
    }

    /// Whether a path's steps are edges of this graph with the stated kinds.
    pub fn is_valid_path(&self, p: &DirectedPath) -> bool {
        p.vertices.len() == p.labels.len() + 1
            && p.kinds.len() == p.labels.len()
            && (0..p.labels.len()).all(|k| {
                self.edge(p.vertices[k + 1], p.labels[k])
                    .is_some_and(|e| e.target == p.vertices[k] && e.kind == p.kinds[k])
            })
    }

    /// DOT rendering. Solid arrows are Bruhat edges, dashed arrows quantum
    /// edges; labels read `β (coords) [⟨Λ, β∨⟩]`.
    pub fn to_dot(
        &self,
        rs: &RootSystem,
        group: &WeylGroup,
        cosets: &CosetSystem,
        lambda: &Weight,
    ) -> String {
        let mut s = String::from("digraph pqbg {\n  rankdir=BT;\n");
        for v in 0..self.num_vertices {
            let _ = writeln!(s, "  v{v} [label=\"{}\"];", group.word_string(cosets.element(v)));
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Bruhat => "solid",
                EdgeKind::Quantum => "dashed",
            };
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"{} {} [{}]\", style={}];",
                e.source,
                e.target,
                root_name(rs, e.label),
                rs.root(e.label),
                pair(lambda, rs.coroot(e.label)),
                style
            );
        }
        s.push_str("}\n");
        s
    }
}

/// `a1`, `a2`, … for simple roots, `theta` for the highest root, else `b<idx>`.
pub fn root_name(rs: &RootSystem, beta: usize) -> String {
    if beta == rs.highest_root() && rs.rank() > 1 {
        "theta".to_string()
    } else if rs.root(beta).height() == 1 {
        format!("a{}", beta + 1)
    } else {
        format!("b{}", beta + 1)
    }
}

pub(crate) fn check_sigma(sigma: &Rational) -> Result<()> {
    if *sigma <= Frac::zero() || *sigma >= Frac::one() {
        return Err(Error::SigmaOutOfRange(sigma.to_string()));
    }
    Ok(())
}

/// `σ⟨Λ, β∨⟩ ∈ ℤ`, decided by exact multiplication.
pub fn sigma_admissible(rs: &RootSystem, sigma: &Rational, lambda: &Weight, beta: usize) -> bool {
    let p = pair(lambda, rs.coroot(beta));
    sigma
        .checked_mul_int(p)
        .map(|v| v.is_integer())
        .unwrap_or(false)
}
