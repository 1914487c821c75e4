//! The enhanced power graph: vertices are the non-identity elements of a
//! group, with an edge between two vertices exactly when they generate a
//! cyclic subgroup. Equivalently (and how we build it), the graph is the
//! union of cliques over the maximal cyclic subgroups.

use crate::bitset::ElemSet;
use crate::group::Group;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EpGraphError {
    #[error("the trivial group has no enhanced power graph (empty vertex set)")]
    TrivialGroup,
}

/// Enhanced power graph of a group of order `n`.
///
/// Adjacency rows are indexed by element id `1..n`; row 0 exists but stays
/// empty (the identity is not a vertex). The relation is irreflexive and
/// symmetric.
pub struct EpGraph {
    n: usize,
    adj: Vec<ElemSet>,
}

/// How a universal-vertex subgroup was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KMethod {
    /// Universal vertices of the graph, plus the identity.
    Universal,
    /// Intersection of the maximal cyclic subgroups.
    Intersection,
}

/// The universal-vertex subgroup K(G) as computed by one method.
#[derive(Clone, Debug)]
pub struct KResult {
    pub members: ElemSet,
    pub order: usize,
    pub method: KMethod,
    /// Set for the trivial group, where "universal vertices of the graph"
    /// is vacuous and K is the whole group by convention.
    pub trivial_convention: bool,
}

/// Graph diameter; `Infinite` for disconnected graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn is_two(&self) -> bool {
        matches!(self, Diameter::Finite(2))
    }
}

impl std::fmt::Display for Diameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Diameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            Diameter::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// The distinct maximal cyclic subgroups of `g`, ordered by
/// (order, member list).
pub fn maximal_cyclic_subgroups(g: &Group) -> Vec<ElemSet> {
    let mut cyclics: Vec<ElemSet> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for a in 0..g.order() {
        let sub = g.cyclic_subgroup(a);
        if seen.insert(sub.to_vec()) {
            cyclics.push(sub);
        }
    }
    let mut maximal: Vec<ElemSet> = cyclics
        .iter()
        .filter(|c| {
            !cyclics
                .iter()
                .any(|other| other.len() > c.len() && c.is_subset_of(other))
        })
        .cloned()
        .collect();
    maximal.sort_by_key(|a| (a.len(), a.to_vec()));
    maximal
}

impl EpGraph {
    /// Builds the graph as a union of cliques over the maximal cyclic
    /// subgroups: two non-identity elements are adjacent iff some maximal
    /// cyclic subgroup contains both (a cyclic subgroup always sits inside a
    /// maximal one).
    pub fn build(g: &Group) -> Result<EpGraph, EpGraphError> {
        if g.order() < 2 {
            return Err(EpGraphError::TrivialGroup);
        }
        let n = g.order();
        let mut adj = vec![ElemSet::empty(n); n];
        for sub in maximal_cyclic_subgroups(g) {
            let members: Vec<usize> = sub.iter().filter(|&x| x != 0).collect();
            for &x in &members {
                for &y in &members {
                    if x != y {
                        adj[x].insert(y);
                    }
                }
            }
        }
        Ok(EpGraph { n, adj })
    }

    /// Number of vertices (group order minus the identity).
    pub fn vertex_count(&self) -> usize {
        self.n - 1
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..self.n
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        x != y && self.adj[x].contains(y)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as ascending (u, v) pairs with u < v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> ElemSet {
        let mut out = ElemSet::empty(self.n);
        for v in self.vertices() {
            if self.degree(v) == self.vertex_count() - 1 {
                out.insert(v);
            }
        }
        out
    }

    /// Max over vertex pairs of the BFS distance; `Infinite` when the graph
    /// is disconnected, 0 for a single vertex.
    pub fn diameter(&self) -> Diameter {
        let mut best = 0usize;
        for start in self.vertices() {
            let mut visited = ElemSet::empty(self.n);
            visited.insert(start);
            let mut frontier = ElemSet::empty(self.n);
            frontier.insert(start);
            let mut depth = 0usize;
            let mut reached = 1usize;
            loop {
                let mut next = ElemSet::empty(self.n);
                for v in frontier.iter() {
                    next.union_with(&self.adj[v]);
                }
                next.difference_with(&visited);
                if next.is_empty() {
                    break;
                }
                depth += 1;
                reached += next.len();
                visited.union_with(&next);
                frontier = next;
            }
            if reached < self.vertex_count() {
                return Diameter::Infinite;
            }
            best = best.max(depth);
        }
        Diameter::Finite(best)
    }
}

/// Computes K(G): the universal-vertex subgroup.
///
/// `Universal` scans the built graph for vertices adjacent to everything;
/// `Intersection` intersects the maximal cyclic subgroups without touching
/// adjacency. The two must agree on every group; tests cross-validate.
pub fn k_subgroup(g: &Group, method: KMethod) -> KResult {
    if g.order() == 1 {
        return KResult {
            members: g.full_set(),
            order: 1,
            method,
            trivial_convention: true,
        };
    }
    let members = match method {
        KMethod::Universal => {
            let graph = EpGraph::build(g).expect("non-trivial group");
            let mut m = graph.universal_vertices();
            m.insert(0);
            m
        }
        KMethod::Intersection => {
            let mut m = g.full_set();
            for sub in maximal_cyclic_subgroups(g) {
                m.intersect_with(&sub);
            }
            m
        }
    };
    KResult {
        order: members.len(),
        members,
        method,
        trivial_convention: false,
    }
}

/// Prime divisors of |K(G)| predicted purely structurally: primes with a
/// unique, central subgroup of that order. No graph is built.
pub fn k_prime_divisors_structural(g: &Group) -> Vec<usize> {
    g.unique_central_prime_divisors()
}

/// Options for DOT export.
#[derive(Clone, Copy, Debug)]
pub struct DotOptions {
    /// Render universal vertices with a doubled border.
    pub highlight_universal: bool,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions {
            highlight_universal: true,
        }
    }
}

/// Deterministic DOT rendering: vertices ascending by id (labeled with id
/// and element order), then edges ascending, one per line.
pub fn export_dot(graph: &EpGraph, g: &Group, options: &DotOptions) -> String {
    use std::fmt::Write;
    let universal = graph.universal_vertices();
    let mut out = String::new();
    let name = g.name().replace('\\', "\\\\").replace('"', "\\\"");
    writeln!(out, "graph \"Delta({name})\" {{").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in graph.vertices() {
        let style = if options.highlight_universal && universal.contains(v) {
            ", peripheries=2"
        } else {
            ""
        };
        writeln!(out, "  v{v} [label=\"{v} o{}\"{style}];", g.elem_order(v)).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  v{u} -- v{v};").unwrap();
    }
    out.push_str("}\n");
    out
}
