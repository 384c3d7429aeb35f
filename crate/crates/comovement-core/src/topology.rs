//! Network topologies for the variable nodes.
//!
//! Frozen influence nodes are not part of the topology: they are implicit
//! neighbors of every variable node, whatever the graph between the
//! variable nodes looks like. A sparser graph therefore amplifies the
//! external influence, captured by the rescale factor `f = (N-1)/k_av`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error("topology needs at least one node")]
    NoNodes,
    #[error("regular graph degree must be in 1..={max}, got {degree}")]
    BadDegree { degree: u32, max: u32 },
    #[error("regular graph needs an even number of edge endpoints (degree * nodes), got {degree} * {n_nodes}")]
    OddStubCount { degree: u32, n_nodes: usize },
    #[error("edge list line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("self-loop on node {node}")]
    SelfLoop { node: u32 },
    #[error("duplicate edge ({a}, {b})")]
    DuplicateEdge { a: u32, b: u32 },
    #[error("edge endpoint {node} out of range for {n_nodes} nodes")]
    NodeOutOfRange { node: u32, n_nodes: usize },
    #[error("node {node} has degree 0 (disconnected from all neighbors)")]
    IsolatedNode { node: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopologyKind {
    /// Complete graph on the variable nodes.
    Full,
    /// Random regular graph with the given degree.
    RegularRandom { degree: u32 },
    /// Arbitrary simple undirected graph from an explicit edge list.
    EdgeList,
}

/// Validated undirected graph between the variable nodes.
#[derive(Debug, Clone)]
pub struct Topology {
    kind: TopologyKind,
    n_nodes: usize,
    /// CSR adjacency; `None` for the full graph, where neighbors are implicit.
    offsets: Option<Vec<usize>>,
    neighbors: Vec<u32>,
}

impl Topology {
    pub fn full(n_nodes: usize) -> Result<Self, TopologyError> {
        if n_nodes == 0 {
            return Err(TopologyError::NoNodes);
        }
        Ok(Self {
            kind: TopologyKind::Full,
            n_nodes,
            offsets: None,
            neighbors: Vec::new(),
        })
    }

    /// Random `degree`-regular graph on `n_nodes` nodes.
    ///
    /// Starts from a circulant graph and randomizes it with double-edge
    /// swaps, which keeps every degree exactly `degree`. Deterministic for
    /// a given seed.
    pub fn regular_random(n_nodes: usize, degree: u32, seed: u64) -> Result<Self, TopologyError> {
        if n_nodes == 0 {
            return Err(TopologyError::NoNodes);
        }
        let max = (n_nodes - 1) as u32;
        if degree == 0 || degree > max {
            return Err(TopologyError::BadDegree { degree, max });
        }
        if (degree as usize * n_nodes) % 2 != 0 {
            return Err(TopologyError::OddStubCount { degree, n_nodes });
        }

        let n = n_nodes as u32;
        let mut edges: BTreeSet<(u32, u32)> = BTreeSet::new();
        // Circulant start: offsets 1..=degree/2, plus the diameter for odd degree.
        for i in 0..n {
            for j in 1..=(degree / 2) {
                edges.insert(ordered(i, (i + j) % n));
            }
        }
        if degree % 2 == 1 {
            // n is even here by the stub-count check.
            for i in 0..n / 2 {
                edges.insert(ordered(i, i + n / 2));
            }
        }

        let mut list: Vec<(u32, u32)> = edges.iter().copied().collect();
        let mut rng = rng::seeded(seed);
        // ~10 accepted-or-rejected swap proposals per edge mixes the graph well.
        let proposals = list.len() * 10;
        for _ in 0..proposals {
            let i = rng.random_range(0..list.len());
            let j = rng.random_range(0..list.len());
            if i == j {
                continue;
            }
            let (a, b) = list[i];
            let (c, d) = list[j];
            let (x, y) = if rng.random::<bool>() { (c, d) } else { (d, c) };
            // Proposed rewiring: (a,b),(x,y) -> (a,x),(b,y).
            if a == x || b == y {
                continue;
            }
            let e1 = ordered(a, x);
            let e2 = ordered(b, y);
            if edges.contains(&e1) || edges.contains(&e2) {
                continue;
            }
            edges.remove(&ordered(a, b));
            edges.remove(&ordered(c, d));
            edges.insert(e1);
            edges.insert(e2);
            list[i] = e1;
            list[j] = e2;
        }

        Self::from_normalized_edges(TopologyKind::RegularRandom { degree }, n_nodes, &list)
    }

    /// Build from an explicit undirected edge list (each pair listed once).
    pub fn from_edges(n_nodes: usize, edges: &[(u32, u32)]) -> Result<Self, TopologyError> {
        if n_nodes == 0 {
            return Err(TopologyError::NoNodes);
        }
        let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(TopologyError::SelfLoop { node: a });
            }
            for node in [a, b] {
                if node as usize >= n_nodes {
                    return Err(TopologyError::NodeOutOfRange { node, n_nodes });
                }
            }
            let e = ordered(a, b);
            if !seen.insert(e) {
                return Err(TopologyError::DuplicateEdge { a: e.0, b: e.1 });
            }
            list.push(e);
        }
        Self::from_normalized_edges(TopologyKind::EdgeList, n_nodes, &list)
    }

    /// Parse the plain-text edge-list format: one `i j` pair per line,
    /// 0-indexed, whitespace separated, undirected, each pair listed once.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse_edge_list(text: &str, n_nodes: usize) -> Result<Self, TopologyError> {
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let a = parse_endpoint(fields.next(), line)?;
            let b = parse_endpoint(fields.next(), line)?;
            if let Some(extra) = fields.next() {
                return Err(TopologyError::Parse {
                    line,
                    reason: format!("unexpected trailing field {extra:?}"),
                });
            }
            if a == b {
                return Err(TopologyError::Parse {
                    line,
                    reason: format!("self-loop on node {a}"),
                });
            }
            edges.push((a, b));
        }
        Self::from_edges(n_nodes, &edges)
    }

    fn from_normalized_edges(
        kind: TopologyKind,
        n_nodes: usize,
        edges: &[(u32, u32)],
    ) -> Result<Self, TopologyError> {
        let mut degree = vec![0usize; n_nodes];
        for &(a, b) in edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        if let Some(node) = degree.iter().position(|&d| d == 0) {
            return Err(TopologyError::IsolatedNode { node: node as u32 });
        }
        let mut offsets = Vec::with_capacity(n_nodes + 1);
        offsets.push(0usize);
        let mut acc = 0usize;
        for &d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor: Vec<usize> = offsets[..n_nodes].to_vec();
        let mut neighbors = vec![0u32; acc];
        for &(a, b) in edges {
            neighbors[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
            neighbors[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        Ok(Self {
            kind,
            n_nodes,
            offsets: Some(offsets),
            neighbors,
        })
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn is_full(&self) -> bool {
        self.offsets.is_none()
    }

    /// Average degree of the variable nodes; `N - 1` for the full graph.
    pub fn k_av(&self) -> f64 {
        match &self.offsets {
            None => (self.n_nodes - 1) as f64,
            Some(offsets) => {
                let total = *offsets.last().expect("offsets non-empty");
                total as f64 / self.n_nodes as f64
            }
        }
    }

    /// External-influence amplification factor `f = (N-1)/k_av`.
    ///
    /// Exactly 1 for the full graph.
    pub fn rescale_factor(&self) -> f64 {
        if self.is_full() {
            1.0
        } else {
            (self.n_nodes - 1) as f64 / self.k_av()
        }
    }

    pub fn degree(&self, node: usize) -> usize {
        match &self.offsets {
            None => self.n_nodes - 1,
            Some(offsets) => offsets[node + 1] - offsets[node],
        }
    }

    /// Neighbor list of `node`; empty for the full graph, where every other
    /// node is implicitly a neighbor.
    pub fn neighbors(&self, node: usize) -> &[u32] {
        match &self.offsets {
            None => &[],
            Some(offsets) => &self.neighbors[offsets[node]..offsets[node + 1]],
        }
    }
}

fn ordered(a: u32, b: u32) -> (u32, u32) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn parse_endpoint(field: Option<&str>, line: usize) -> Result<u32, TopologyError> {
    let field = field.ok_or(TopologyError::Parse {
        line,
        reason: "expected two node indices".to_string(),
    })?;
    field.parse::<u32>().map_err(|_| TopologyError::Parse {
        line,
        reason: format!("invalid node index {field:?}"),
    })
}
