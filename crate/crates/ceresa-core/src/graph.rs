//! Metric graphs, fundamental cycle bases, polarisation matrices, and the
//! Abel-Jacobi embedding of a graph into its Jacobian torus as a framed
//! polyhedral 1-cycle.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::chains::{FramedCell, FramedChain};
use crate::exterior::ExteriorElement;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Oriented metric edge: `from -> to` with a positive length.
#[derive(Debug, Clone)]
pub struct Edge {
    pub name: String,
    pub from: usize,
    pub to: usize,
    pub length: Scalar,
}

/// Connected metric graph with a designated basepoint (and optionally a
/// second one, used by the Ceresa construction). Edge lengths are scalars
/// over the shared variable list `var_names`.
#[derive(Debug, Clone)]
pub struct MetricGraph {
    pub vertex_names: Vec<String>,
    pub var_names: Vec<String>,
    pub edges: Vec<Edge>,
    pub basepoint: usize,
    pub basepoint2: Option<usize>,
}

/// Fundamental cycle basis: `genus` rows of signed edge incidences. Row i
/// is the flow of the cycle closed by the i-th non-tree edge, which carries
/// coefficient +1 in its own row and 0 elsewhere.
#[derive(Debug, Clone)]
pub struct CycleBasis {
    /// genus x num_edges signed incidence matrix
    pub cycles: Vec<Vec<i64>>,
    /// tree membership flag per edge, from the listed-order spanning tree
    pub tree: Vec<bool>,
}

impl CycleBasis {
    pub fn genus(&self) -> usize {
        self.cycles.len()
    }

    /// Direction vector of an edge in the Jacobian: its signed incidence in
    /// each basis cycle.
    pub fn d_vector(&self, edge: usize) -> Vec<i64> {
        self.cycles.iter().map(|c| c[edge]).collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl MetricGraph {
    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.num_vertices()
    }

    pub fn is_connected(&self) -> bool {
        let nv = self.num_vertices();
        if nv == 0 {
            return false;
        }
        let mut uf = UnionFind::new(nv);
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        let root = uf.find(0);
        (1..nv).all(|v| uf.find(v) == root)
    }

    /// Spanning tree in listed edge order: an edge enters the tree iff its
    /// endpoints are not yet connected by earlier edges.
    fn spanning_tree(&self) -> Vec<bool> {
        let mut uf = UnionFind::new(self.num_vertices());
        self.edges
            .iter()
            .map(|e| uf.union(e.from, e.to))
            .collect()
    }

    /// Adjacency over tree edges: for each vertex, (edge index, neighbor,
    /// +1 if leaving along the edge orientation).
    fn tree_adjacency(&self, tree: &[bool]) -> Vec<Vec<(usize, usize, i64)>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (i, e) in self.edges.iter().enumerate() {
            if tree[i] {
                adj[e.from].push((i, e.to, 1));
                adj[e.to].push((i, e.from, -1));
            }
        }
        adj
    }

    /// Signed tree path from `src` to `dst`: list of (edge index, sign)
    /// where sign +1 means the edge is traversed along its orientation.
    fn tree_path(
        adj: &[Vec<(usize, usize, i64)>],
        src: usize,
        dst: usize,
    ) -> Vec<(usize, i64)> {
        // parent pointers by breadth-first search from src
        let mut prev: Vec<Option<(usize, usize, i64)>> = vec![None; adj.len()];
        let mut visited = vec![false; adj.len()];
        let mut queue = alloc::collections::VecDeque::new();
        visited[src] = true;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            if v == dst {
                break;
            }
            for &(e, w, s) in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    prev[w] = Some((v, e, s));
                    queue.push_back(w);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = dst;
        while cur != src {
            let (p, e, s) = prev[cur].expect("tree path exists in a spanning tree");
            path.push((e, s));
            cur = p;
        }
        path.reverse();
        path
    }

    /// Fundamental cycle basis from the listed-order spanning tree. Cycle i
    /// closes the i-th non-tree edge, traversed positively.
    pub fn cycle_basis(&self) -> Result<CycleBasis> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let tree = self.spanning_tree();
        let adj = self.tree_adjacency(&tree);
        let m = self.edges.len();
        let mut cycles = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if tree[i] {
                continue;
            }
            let mut row = vec![0i64; m];
            row[i] = 1;
            // close up through the tree from head back to tail
            for (te, sign) in Self::tree_path(&adj, e.to, e.from) {
                row[te] += sign;
            }
            cycles.push(row);
        }
        debug_assert_eq!(cycles.len(), self.genus());
        Ok(CycleBasis { cycles, tree })
    }

    /// Polarisation matrix `Q_ij = sum_e l(e) (c_i)_e (c_j)_e`.
    pub fn polarisation_matrix(&self, basis: &CycleBasis) -> Vec<Vec<Scalar>> {
        let g = basis.genus();
        let nvars = self.nvars();
        let mut q = vec![vec![Scalar::zero(nvars); g]; g];
        for (idx, e) in self.edges.iter().enumerate() {
            for i in 0..g {
                let ci = basis.cycles[i][idx];
                if ci == 0 {
                    continue;
                }
                for j in 0..g {
                    let cj = basis.cycles[j][idx];
                    if cj == 0 {
                        continue;
                    }
                    let contrib = e.length.scale(
                        &num_rational::BigRational::from_integer(num_bigint::BigInt::from(
                            ci * cj,
                        )),
                    );
                    q[i][j] = &q[i][j] + &contrib;
                }
            }
        }
        q
    }

    /// Displacement of an edge under the Abel-Jacobi map: `l(e) * d_e`.
    pub fn displacement(&self, basis: &CycleBasis, edge: usize) -> Vec<Scalar> {
        let d = basis.d_vector(edge);
        d.iter()
            .map(|&c| &self.edges[edge].length * &Scalar::from_int(c, 0))
            .collect()
    }

    /// Abel-Jacobi positions of all vertices with `origin` at zero, walking
    /// the spanning tree.
    pub fn vertex_positions(&self, basis: &CycleBasis, origin: usize) -> Vec<Vec<Scalar>> {
        let g = basis.genus();
        let nvars = self.nvars();
        let adj = self.tree_adjacency(&basis.tree);
        let mut pos = vec![vec![Scalar::zero(nvars); g]; self.num_vertices()];
        let mut visited = vec![false; self.num_vertices()];
        let mut queue = alloc::collections::VecDeque::new();
        visited[origin] = true;
        queue.push_back(origin);
        while let Some(v) = queue.pop_front() {
            for &(e, w, s) in &adj[v] {
                if visited[w] {
                    continue;
                }
                visited[w] = true;
                let disp = self.displacement(basis, e);
                pos[w] = pos[v]
                    .iter()
                    .zip(&disp)
                    .map(|(p, d)| if s > 0 { p + d } else { p - d })
                    .collect();
                queue.push_back(w);
            }
        }
        pos
    }

    /// Abel-Jacobi image as a tautologically framed 1-cycle, together with
    /// the vertex position table. Each edge becomes a segment from the
    /// tail's position with spanning vector `l(e) * d_e` and framing the
    /// primitive direction `d_e`. Edges lying in no basis cycle collapse
    /// to points and are omitted.
    pub fn abel_jacobi_cycle_from(
        &self,
        basis: &CycleBasis,
        origin: usize,
    ) -> Result<(FramedChain, Vec<Vec<Scalar>>)> {
        let g = basis.genus();
        let pos = self.vertex_positions(basis, origin);
        let mut cells = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            let d = basis.d_vector(i);
            if d.iter().all(|&c| c == 0) {
                continue;
            }
            let span = self.displacement(basis, i);
            let framing_vec: Vec<Scalar> = d.iter().map(|&c| Scalar::from_int(c, 0)).collect();
            cells.push(FramedCell {
                base: pos[e.from].clone(),
                spans: vec![span],
                weight: 1,
                framing: ExteriorElement::from_vector(g, &framing_vec),
                factors: Some(vec![vec![d]]),
            });
        }
        let q = self.polarisation_matrix(basis);
        let lattice = (0..g)
            .map(|col| (0..g).map(|row| q[row][col].clone()).collect())
            .collect();
        Ok((FramedChain::new(g, 1, 1, cells, lattice), pos))
    }

    /// Abel-Jacobi cycle based at the graph's designated basepoint.
    pub fn abel_jacobi_cycle(&self, basis: &CycleBasis) -> Result<(FramedChain, Vec<Vec<Scalar>>)> {
        self.abel_jacobi_cycle_from(basis, self.basepoint)
    }

    /// True iff the graph, after suppressing all 2-valent vertices, is the
    /// complete simple graph on 4 vertices.
    pub fn is_k4(&self) -> bool {
        // endpoints only; lengths are irrelevant to the shape test
        let mut pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| (e.from, e.to))
            .collect();
        loop {
            let nv = self.num_vertices();
            let mut deg = vec![0usize; nv];
            for &(a, b) in &pairs {
                deg[a] += 1;
                deg[b] += 1;
            }
            // a suppressible vertex has exactly two incidences via two
            // distinct non-loop edges
            let target = (0..nv).find(|&v| {
                deg[v] == 2 && pairs.iter().filter(|&&(a, b)| a == v || b == v).all(|&(a, b)| a != b)
            });
            let Some(v) = target else { break };
            let incident: Vec<usize> = pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i)
                .collect();
            if incident.len() != 2 {
                break; // degree 2 via a single doubled edge: not suppressible
            }
            let other = |i: usize| {
                let (a, b) = pairs[i];
                if a == v { b } else { a }
            };
            let (x, y) = (other(incident[0]), other(incident[1]));
            pairs.remove(incident[1]);
            pairs.remove(incident[0]);
            pairs.push((x, y));
        }
        let mut active: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        active.sort_unstable();
        active.dedup();
        if active.len() != 4 || pairs.len() != 6 {
            return false;
        }
        let mut norm: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        norm.sort_unstable();
        if norm.iter().any(|&(a, b)| a == b) {
            return false;
        }
        norm.dedup();
        norm.len() == 6
    }

    /// Index of the edge joining `a` and `b` (either orientation), for
    /// simple graphs.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.from == a && e.to == b) || (e.from == b && e.to == a))
    }

    /// Displacement along the unique edge joining `a` and `b`, read in the
    /// direction `a -> b` regardless of how the edge is oriented in the
    /// file.
    pub fn displacement_between(
        &self,
        basis: &CycleBasis,
        a: usize,
        b: usize,
    ) -> Result<Vec<Scalar>> {
        let idx = self
            .edge_between(a, b)
            .ok_or_else(|| Error::BadLayout(format!("no edge joins vertices {a} and {b}")))?;
        let disp = self.displacement(basis, idx);
        if self.edges[idx].from == a {
            Ok(disp)
        } else {
            Ok(disp.iter().map(|s| -s).collect())
        }
    }
}
