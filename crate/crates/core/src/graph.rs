//! Simple unweighted graphs with dense node ids and an optional word table.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{LexnetError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Directedness {
    Directed,
    Undirected,
}

impl Directedness {
    pub fn is_directed(self) -> bool {
        self == Directedness::Directed
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Directedness::Directed => "directed",
            Directedness::Undirected => "undirected",
        }
    }
}

impl fmt::Display for Directedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A simple graph: no self-loops, no parallel links.
///
/// Undirected links are stored once in the link list and appear in the
/// adjacency of both endpoints.
#[derive(Debug, Clone)]
pub struct LexNetwork {
    directedness: Directedness,
    out_adj: Vec<Vec<NodeId>>,
    // directed graphs only
    in_adj: Vec<Vec<NodeId>>,
    link_keys: HashSet<u64>,
    links: Vec<(NodeId, NodeId)>,
    labels: Vec<Option<String>>,
    interner: HashMap<String, NodeId>,
}

impl LexNetwork {
    pub fn new(directedness: Directedness) -> Self {
        LexNetwork {
            directedness,
            out_adj: Vec::new(),
            in_adj: Vec::new(),
            link_keys: HashSet::new(),
            links: Vec::new(),
            labels: Vec::new(),
            interner: HashMap::new(),
        }
    }

    /// `n` unlabeled nodes and no links.
    pub fn with_nodes(directedness: Directedness, n: usize) -> Self {
        let mut g = LexNetwork::new(directedness);
        g.out_adj = vec![Vec::new(); n];
        if directedness.is_directed() {
            g.in_adj = vec![Vec::new(); n];
        }
        g.labels = vec![None; n];
        g
    }

    pub fn directedness(&self) -> Directedness {
        self.directedness
    }

    pub fn is_directed(&self) -> bool {
        self.directedness.is_directed()
    }

    /// Node count N.
    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    /// Link count K; an undirected link counts once.
    pub fn k(&self) -> usize {
        self.links.len()
    }

    pub fn add_node(&mut self, label: Option<&str>) -> Result<NodeId> {
        let id = NodeId(self.n() as u32);
        if let Some(label) = label {
            if self.interner.contains_key(label) {
                return Err(LexnetError::DuplicateLabel(label.to_owned()));
            }
            self.interner.insert(label.to_owned(), id);
        }
        self.out_adj.push(Vec::new());
        if self.is_directed() {
            self.in_adj.push(Vec::new());
        }
        self.labels.push(label.map(str::to_owned));
        Ok(id)
    }

    /// Returns the node carrying `label`, creating it if needed.
    pub fn intern(&mut self, label: &str) -> NodeId {
        match self.interner.get(label) {
            Some(&id) => id,
            None => self.add_node(Some(label)).expect("label checked absent"),
        }
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.interner.get(label).copied()
    }

    pub fn label(&self, node: NodeId) -> Option<&str> {
        self.labels.get(node.index()).and_then(|l| l.as_deref())
    }

    fn check(&self, node: NodeId) -> Result<()> {
        if node.index() < self.n() {
            Ok(())
        } else {
            Err(LexnetError::NodeOutOfRange { node, n: self.n() })
        }
    }

    fn key(&self, u: NodeId, v: NodeId) -> u64 {
        let (a, b) = if self.is_directed() || u <= v { (u, v) } else { (v, u) };
        (u64::from(a.0) << 32) | u64::from(b.0)
    }

    /// Adds `u -> v` (or `{u, v}`). Returns false for self-loops and links that
    /// already exist.
    pub fn add_link(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v || !self.link_keys.insert(self.key(u, v)) {
            return Ok(false);
        }
        self.out_adj[u.index()].push(v);
        if self.is_directed() {
            self.in_adj[v.index()].push(u);
            self.links.push((u, v));
        } else {
            self.out_adj[v.index()].push(u);
            self.links.push((u.min(v), u.max(v)));
        }
        Ok(true)
    }

    pub fn has_link(&self, u: NodeId, v: NodeId) -> bool {
        self.link_keys.contains(&self.key(u, v))
    }

    /// Links in insertion order. Undirected links are reported as `(min, max)`.
    pub fn links(&self) -> &[(NodeId, NodeId)] {
        &self.links
    }

    /// Successors; all neighbors for undirected graphs.
    pub fn out_neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.out_adj[node.index()]
    }

    /// Predecessors; all neighbors for undirected graphs.
    pub fn in_neighbors(&self, node: NodeId) -> &[NodeId] {
        if self.is_directed() {
            &self.in_adj[node.index()]
        } else {
            &self.out_adj[node.index()]
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.n() as u32).map(NodeId)
    }

    /// Same node set and labels; `{u, v}` is a link iff `u -> v` or `v -> u` was.
    /// An undirected graph is returned unchanged.
    pub fn to_undirected(&self) -> LexNetwork {
        if !self.is_directed() {
            return self.clone();
        }
        let mut g = LexNetwork::with_nodes(Directedness::Undirected, self.n());
        g.labels = self.labels.clone();
        g.interner = self.interner.clone();
        for &(u, v) in &self.links {
            g.add_link(u, v).expect("node ids come from the source graph");
        }
        g
    }

    fn node_name(&self, node: NodeId) -> String {
        match self.label(node) {
            Some(l) => l.to_owned(),
            None => node.0.to_string(),
        }
    }

    /// CSV edge list with header `source,target`, one row per link, labels
    /// quoted. Unlabeled nodes are written as their numeric id.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(b"source,target\n").map_err(csv::Error::from)?;
        let mut writer = csv::WriterBuilder::new()
            .quote_style(csv::QuoteStyle::Always)
            .has_headers(false)
            .from_writer(out);
        for &(u, v) in &self.links {
            writer.write_record([self.node_name(u), self.node_name(v)])?;
        }
        writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Reads an edge list written by [`LexNetwork::write_edge_list`] (or any
    /// `source,target` CSV). Nodes are interned in order of first appearance;
    /// self-loops and repeated rows are ignored.
    pub fn read_edge_list<R: Read>(input: R, directedness: Directedness) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
        let mut g = LexNetwork::new(directedness);
        for record in reader.records() {
            let record = record?;
            if record.len() < 2 {
                return Err(csv::Error::from(std::io::Error::new(
                    std::io::ErrorKind::InvalidData,
                    "edge list rows need a source and a target",
                ))
                .into());
            }
            let u = g.intern(&record[0]);
            let v = g.intern(&record[1]);
            g.add_link(u, v)?;
        }
        Ok(g)
    }
}
