//! Vietoris-Rips filtrations stored in a simplex tree.
//!
//! A simplex enters the filtration at the length of its longest edge. Edges
//! longer than `max_edge_length` and simplices above `max_dimension` are never
//! stored.

use std::fmt;
use std::io::Write;

use crate::error::{Error, Result};
use crate::pointcloud::DistanceMatrix;

/// A simplex as a strictly increasing list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        let len = vertices.len();
        vertices.dedup();
        if vertices.is_empty() || vertices.len() != len {
            return Err(Error::InvalidParameter(
                "a simplex needs at least one vertex and no repeats".into(),
            ));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Node {
    vertex: u32,
    parent: u32,
    first_child: u32,
    n_children: u32,
    dim: u32,
    filtration: f64,
}

/// Trie of filtered simplices.
///
/// Node `v` for `v < n_vertices` is the vertex `v`; the children of every node
/// are stored contiguously and sorted by vertex.
#[derive(Debug, Clone)]
pub struct SimplexTree {
    nodes: Vec<Node>,
    n_vertices: usize,
    max_edge_length: f64,
    max_dimension: usize,
    counts: Vec<usize>,
}

/// Builds the Rips filtration of `dm` truncated at `max_edge_length` and
/// `max_dimension`.
pub fn build_rips(dm: &DistanceMatrix, max_edge_length: f64, max_dimension: usize) -> Result<SimplexTree> {
    if max_dimension < 1 {
        return Err(Error::InvalidParameter("max_dimension must be at least 1".into()));
    }
    if max_edge_length.is_nan() || max_edge_length <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "max_edge_length must be positive, got {max_edge_length}"
        )));
    }
    let n = dm.len();
    if n >= NO_PARENT as usize {
        return Err(Error::InvalidParameter(format!("too many points ({n})")));
    }
    let mut tree = SimplexTree {
        nodes: Vec::with_capacity(n),
        n_vertices: n,
        max_edge_length,
        max_dimension,
        counts: vec![0; max_dimension + 1],
    };
    for v in 0..n as u32 {
        tree.nodes.push(Node {
            vertex: v,
            parent: NO_PARENT,
            first_child: 0,
            n_children: 0,
            dim: 0,
            filtration: 0.0,
        });
    }
    tree.counts[0] = n;

    let mut path = Vec::with_capacity(max_dimension + 1);
    for v in 0..n {
        let upper: Vec<u32> = ((v + 1)..n)
            .filter(|&w| dm.get(v, w) <= max_edge_length)
            .map(|w| w as u32)
            .collect();
        path.push(v as u32);
        tree.expand(dm, v as u32, &upper, &mut path);
        path.pop();
    }
    Ok(tree)
}

impl SimplexTree {
    /// Adds every candidate as a child of `node`, then recurses with the
    /// candidates that are adjacent to each child.
    fn expand(&mut self, dm: &DistanceMatrix, node: u32, candidates: &[u32], path: &mut Vec<u32>) {
        let parent = &self.nodes[node as usize];
        let dim = parent.dim + 1;
        if candidates.is_empty() || dim as usize > self.max_dimension {
            return;
        }
        let parent_filtration = parent.filtration;
        let first = self.nodes.len() as u32;
        for &w in candidates {
            let reach = path
                .iter()
                .map(|&u| dm.get(u as usize, w as usize))
                .fold(parent_filtration, f64::max);
            self.nodes.push(Node {
                vertex: w,
                parent: node,
                first_child: 0,
                n_children: 0,
                dim,
                filtration: reach,
            });
        }
        let node = &mut self.nodes[node as usize];
        node.first_child = first;
        node.n_children = candidates.len() as u32;
        self.counts[dim as usize] += candidates.len();

        if dim as usize == self.max_dimension {
            return;
        }
        for (offset, &w) in candidates.iter().enumerate() {
            let next: Vec<u32> = candidates[offset + 1..]
                .iter()
                .copied()
                .filter(|&x| dm.get(w as usize, x as usize) <= self.max_edge_length)
                .collect();
            path.push(w);
            self.expand(dm, first + offset as u32, &next, path);
            path.pop();
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn max_edge_length(&self) -> f64 {
        self.max_edge_length
    }

    pub fn max_dimension(&self) -> usize {
        self.max_dimension
    }

    /// Total number of stored simplices.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn simplex_count(&self, dimension: usize) -> usize {
        self.counts.get(dimension).copied().unwrap_or(0)
    }

    pub fn filtration_of(&self, vertices: &[usize]) -> Option<f64> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vertices.len() {
            return None;
        }
        let key: Vec<u32> = sorted.iter().map(|&v| u32::try_from(v).ok()).collect::<Option<_>>()?;
        self.find(&key).map(|id| self.nodes[id as usize].filtration)
    }

    /// Node id of the simplex with the given increasing vertex list.
    pub(crate) fn find(&self, vertices: &[u32]) -> Option<u32> {
        let (&first, rest) = vertices.split_first()?;
        if first as usize >= self.n_vertices {
            return None;
        }
        let mut id = first;
        for &v in rest {
            let node = &self.nodes[id as usize];
            let lo = node.first_child as usize;
            let children = &self.nodes[lo..lo + node.n_children as usize];
            let pos = children.binary_search_by(|c| c.vertex.cmp(&v)).ok()?;
            id = (lo + pos) as u32;
        }
        Some(id)
    }

    pub(crate) fn vertices_of(&self, id: u32, out: &mut Vec<u32>) {
        out.clear();
        let mut cur = id;
        while cur != NO_PARENT {
            let node = &self.nodes[cur as usize];
            out.push(node.vertex);
            cur = node.parent;
        }
        out.reverse();
    }

    pub(crate) fn dim_of(&self, id: u32) -> usize {
        self.nodes[id as usize].dim as usize
    }

    pub(crate) fn filtration_at(&self, id: u32) -> f64 {
        self.nodes[id as usize].filtration
    }

    fn simplex(&self, id: u32) -> Simplex {
        let mut buf = Vec::new();
        self.vertices_of(id, &mut buf);
        Simplex(buf.into_iter().map(|v| v as usize).collect())
    }

    /// Node ids in lexicographic order of their vertex lists.
    fn preorder(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack: Vec<u32> = (0..self.n_vertices as u32).rev().collect();
        while let Some(id) = stack.pop() {
            out.push(id);
            let node = &self.nodes[id as usize];
            stack.extend((node.first_child..node.first_child + node.n_children).rev());
        }
        out
    }

    /// Node ids sorted by filtration value, then dimension, then
    /// lexicographic vertex order. Faces always precede their cofaces.
    pub(crate) fn filtration_order(&self) -> Vec<u32> {
        let mut lex_rank = vec![0u32; self.nodes.len()];
        for (rank, id) in self.preorder().into_iter().enumerate() {
            lex_rank[id as usize] = rank as u32;
        }
        let mut ids: Vec<u32> = (0..self.nodes.len() as u32).collect();
        ids.sort_unstable_by(|&a, &b| {
            let (na, nb) = (&self.nodes[a as usize], &self.nodes[b as usize]);
            na.filtration
                .total_cmp(&nb.filtration)
                .then(na.dim.cmp(&nb.dim))
                .then(lex_rank[a as usize].cmp(&lex_rank[b as usize]))
        });
        ids
    }

    pub fn simplices_in_filtration_order(&self) -> Vec<(Simplex, f64)> {
        self.filtration_order()
            .into_iter()
            .map(|id| (self.simplex(id), self.filtration_at(id)))
            .collect()
    }

    /// All simplices in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Simplex, f64)> + '_ {
        self.preorder().into_iter().map(move |id| (self.simplex(id), self.filtration_at(id)))
    }

    /// Edges sorted by filtration order, as `(u, v, length)`.
    pub fn edges_in_filtration_order(&self) -> Vec<(usize, usize, f64)> {
        let mut edges: Vec<(usize, usize, f64)> = self
            .nodes
            .iter()
            .filter(|n| n.dim == 1)
            .map(|n| (n.parent as usize, n.vertex as usize, n.filtration))
            .collect();
        edges.sort_unstable_by(|a, b| {
            a.2.total_cmp(&b.2).then((a.0, a.1).cmp(&(b.0, b.1)))
        });
        edges
    }

    /// One simplex per line, `v0 v1 ... vk<TAB>filtration`, in filtration order.
    pub fn write_dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (simplex, value) in self.simplices_in_filtration_order() {
            writeln!(out, "{simplex}\t{}", crate::output::float17(value))?;
        }
        Ok(())
    }
}
