//! First homology and intersection pairing of covers of P¹.
//!
//! Cell structure: lift the star joining a base point c to the branch
//! points b₁, …, b_k in order. Vertices are the points P_t over c (one per
//! sheet t) and one point Q over b_i for each cycle of g_i. The lift of the
//! arc to b_i on sheet t is the edge (t, i) from P_t to Q_{i, cycle of t}.
//! The complement of the star is a disk; its lift on sheet s is the face
//! F_s with boundary Σ_i (t_{i−1}, i) − (t_i, i), where t₀ = s and
//! t_i = g_i⁻¹(t_{i−1}). The walk closes because g₁⋯g_k = id.
//!
//! Rotation at Q: the half-edge after (u, i) is (g_i(u), i).
//! Rotation at P_t: the half-edge after (t, i+1) is (t, i), indices mod k.
//! Faces are exactly the orbits of "leave by the predecessor of arrival",
//! so the rotation system realizes the surface with coherent orientation.
//!
//! A basis of H₁ comes from a tree–cotree decomposition: a spanning forest
//! T, a dual spanning forest avoiding T, and the 2g leftover edges, whose
//! fundamental cycles in T form a Z-basis.

use std::collections::VecDeque;

use num_bigint::BigInt;
use serde::Serialize;

use crate::corr::FiberMatrix;
use crate::cover::CoverModel;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A 1-chain: one coefficient per edge, edge index `i * degree + t`.
pub type Chain = Vec<i64>;

#[derive(Clone, Copy, Debug)]
struct HalfEdge {
    edge: usize,
    tail: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyModel {
    #[serde(skip)]
    pub cover: CoverModel,
    /// Number of connected components of the cover.
    pub components: usize,
    /// Total genus Σ g(component).
    pub genus: usize,
    /// Basis cycles as dense edge chains.
    pub basis: Vec<Chain>,
    /// Component index of each basis cycle.
    pub basis_component: Vec<usize>,
    /// Intersection numbers of basis cycles; alternating and unimodular.
    pub gram: IntMatrix,
    #[serde(skip)]
    cells: Cells,
    #[serde(skip)]
    reduction: Reduction,
}

#[derive(Clone, Debug, Default)]
struct Cells {
    degree: usize,
    vertex_count: usize,
    /// (tail vertex, head vertex) per edge.
    ends: Vec<(usize, usize)>,
    /// Counterclockwise half-edge order at each vertex.
    rotation: Vec<Vec<HalfEdge>>,
    /// Face boundaries as (edge, ±1).
    faces: Vec<Vec<(usize, i64)>>,
    /// The faces on the positive and negative side of each edge.
    face_pos: Vec<usize>,
    face_neg: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
struct Reduction {
    /// Leftover edges, one per basis element.
    leftover: Vec<usize>,
    /// Per face: the cotree edge to its parent and its sign in ∂F, or None at roots.
    parent: Vec<Option<(usize, usize, i64)>>,
    /// Faces ordered so that parents precede children.
    order: Vec<usize>,
}

fn build_cells(cover: &CoverModel) -> Cells {
    let d = cover.degree();
    let k = cover.perms.len();
    let mut vertex_count = d;
    // q_vertex[i][t]: the vertex over b_i containing sheet t.
    let mut q_vertex = vec![vec![usize::MAX; d]; k];
    let mut rotation: Vec<Vec<HalfEdge>> = (0..d)
        .map(|t| {
            (0..k)
                .rev()
                .map(|i| HalfEdge {
                    edge: i * d + t,
                    tail: true,
                })
                .collect()
        })
        .collect();
    for (i, g) in cover.perms.iter().enumerate() {
        for start in 0..d {
            if q_vertex[i][start] != usize::MAX {
                continue;
            }
            let v = vertex_count;
            vertex_count += 1;
            let mut around = Vec::new();
            let mut u = start;
            while q_vertex[i][u] == usize::MAX {
                q_vertex[i][u] = v;
                around.push(HalfEdge {
                    edge: i * d + u,
                    tail: false,
                });
                u = g[u];
            }
            rotation.push(around);
        }
    }
    let mut ends = vec![(0, 0); k * d];
    for i in 0..k {
        for t in 0..d {
            ends[i * d + t] = (t, q_vertex[i][t]);
        }
    }
    let inverses: Vec<Vec<usize>> = cover
        .perms
        .iter()
        .map(|g| {
            let mut inv = vec![0; d];
            for (x, &y) in g.iter().enumerate() {
                inv[y] = x;
            }
            inv
        })
        .collect();
    let mut faces = Vec::with_capacity(d);
    let mut face_pos = vec![usize::MAX; k * d];
    let mut face_neg = vec![usize::MAX; k * d];
    for s in 0..d {
        let mut boundary = Vec::with_capacity(2 * k);
        let mut t = s;
        for (i, inv) in inverses.iter().enumerate() {
            let next = inv[t];
            boundary.push((i * d + t, 1));
            boundary.push((i * d + next, -1));
            face_pos[i * d + t] = s;
            face_neg[i * d + next] = s;
            t = next;
        }
        debug_assert_eq!(t, s, "product relation fails on sheets");
        faces.push(boundary);
    }
    Cells {
        degree: d,

        vertex_count,
        ends,
        rotation,
        faces,
        face_pos,
        face_neg,
    }
}

impl Cells {
    fn edge_count(&self) -> usize {
        self.ends.len()
    }

    fn boundary(&self, z: &[i64]) -> Vec<i64> {
        let mut b = vec![0i64; self.vertex_count];
        for (e, &c) in z.iter().enumerate() {
            if c != 0 {
                let (t, h) = self.ends[e];
                b[t] -= c;
                b[h] += c;
            }
        }
        b
    }

    /// Algebraic intersection number, by pushing `a` off to its left.
    fn intersection(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut total = 0i64;
        for around in &self.rotation {
            if around.iter().all(|h| b[h.edge] == 0) {
                continue;
            }
            let mut prefix = 0i64;
            for h in around {
                let alpha = if h.tail { a[h.edge] } else { -a[h.edge] };
                let beta = if h.tail { b[h.edge] } else { -b[h.edge] };
                // The pushed copy of a leaves on the counterclockwise side of
                // a tail half-edge and the clockwise side of a head half-edge.
                if h.tail {
                    total += beta * prefix;
                    prefix += alpha;
                } else {
                    prefix += alpha;
                    total += beta * prefix;
                }
            }
        }
        total
    }

    fn tree_cotree(&self) -> (Vec<usize>, Reduction) {
        let e_count = self.edge_count();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for (e, &(t, h)) in self.ends.iter().enumerate() {
            incident[t].push(e);
            incident[h].push(e);
        }
        let mut in_tree = vec![false; e_count];
        let mut seen = vec![false; self.vertex_count];
        let mut component = vec![0usize; self.vertex_count];
        let mut count = 0;
        for root in 0..self.vertex_count {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            component[root] = count;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &e in &incident[v] {
                    let (t, h) = self.ends[e];
                    let w = if t == v { h } else { t };
                    if !seen[w] {
                        seen[w] = true;
                        component[w] = count;
                        in_tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }

        let f_count = self.faces.len();
        let mut dual: Vec<Vec<usize>> = vec![Vec::new(); f_count];
        for e in 0..e_count {
            if !in_tree[e] && self.face_pos[e] != self.face_neg[e] {
                dual[self.face_pos[e]].push(e);
                dual[self.face_neg[e]].push(e);
            }
        }
        let mut in_cotree = vec![false; e_count];
        let mut parent = vec![None; f_count];
        let mut visited = vec![false; f_count];
        let mut order = Vec::with_capacity(f_count);
        for root in 0..f_count {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            order.push(root);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                for &e in &dual[f] {
                    let (p, m) = (self.face_pos[e], self.face_neg[e]);
                    let g = if p == f { m } else { p };
                    if !visited[g] {
                        visited[g] = true;
                        in_cotree[e] = true;
                        let sign = if p == g { 1 } else { -1 };
                        parent[g] = Some((f, e, sign));
                        order.push(g);
                        queue.push_back(g);
                    }
                }
            }
        }
        let leftover = (0..e_count)
            .filter(|&e| !in_tree[e] && !in_cotree[e])
            .collect();
        (
            component,
            Reduction {
                leftover,
                parent,
                order,
            },
        )
    }

    /// Tree path chain from vertex `from` to vertex `to` (same component).
    fn tree_paths(&self, in_tree: &[bool]) -> TreePaths {
        let mut parent_edge = vec![usize::MAX; self.vertex_count];
        let mut depth = vec![0usize; self.vertex_count];
        let mut parent = vec![usize::MAX; self.vertex_count];
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for (e, &(t, h)) in self.ends.iter().enumerate() {
            if in_tree[e] {
                incident[t].push(e);
                incident[h].push(e);
            }
        }
        let mut seen = vec![false; self.vertex_count];
        for root in 0..self.vertex_count {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &e in &incident[v] {
                    let (t, h) = self.ends[e];
                    let w = if t == v { h } else { t };
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = v;
                        parent_edge[w] = e;
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        TreePaths {
            parent,
            parent_edge,
            depth,
        }
    }
}

struct TreePaths {
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
}

impl TreePaths {
    /// Adds the tree path from `from` to `to` into `chain`.
    fn add_path(&self, cells: &Cells, chain: &mut [i64], from: usize, to: usize) {
        let (mut a, mut b) = (from, to);
        // Walk up from both ends to the common ancestor.
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let e = self.parent_edge[a];
                // traverse a → parent(a)
                chain[e] += if cells.ends[e].0 == a { 1 } else { -1 };
                a = self.parent[a];
            } else {
                let e = self.parent_edge[b];
                // traverse parent(b) → b
                chain[e] += if cells.ends[e].1 == b { 1 } else { -1 };
                b = self.parent[b];
            }
        }
    }
}

impl HomologyModel {
    /// Homology of a connected cover of P¹.
    pub fn build(cover: &CoverModel) -> Result<HomologyModel> {
        check_base(cover)?;
        cover.require_connected()?;
        Self::build_disjoint(cover)
    }

    /// Homology of a possibly disconnected cover of P¹, as the direct sum of
    /// its components' homology.
    pub fn build_disjoint(cover: &CoverModel) -> Result<HomologyModel> {
        check_base(cover)?;
        if !cover.relation_holds() {
            return Err(Error::RelationViolated {
                product: "label permutations".into(),
            });
        }
        let cells = build_cells(cover);
        let (vertex_component, reduction) = cells.tree_cotree();
        let components = vertex_component.iter().copied().max().map_or(0, |m| m + 1);
        let mut in_tree = vec![true; cells.edge_count()];
        for &e in &reduction.leftover {
            in_tree[e] = false;
        }
        for &(_, e, _) in reduction.parent.iter().flatten() {
            in_tree[e] = false;
        }
        let paths = cells.tree_paths(&in_tree);
        let mut basis = Vec::with_capacity(reduction.leftover.len());
        let mut basis_component = Vec::with_capacity(reduction.leftover.len());
        for &e in &reduction.leftover {
            let mut z = vec![0i64; cells.edge_count()];
            z[e] = 1;
            let (t, h) = cells.ends[e];
            paths.add_path(&cells, &mut z, h, t);
            debug_assert!(cells.boundary(&z).iter().all(|&x| x == 0));
            basis.push(z);
            basis_component.push(vertex_component[t]);
        }
        let r = basis.len();
        let mut gram = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in i + 1..r {
                let x = cells.intersection(&basis[i], &basis[j]);
                gram[(i, j)] = BigInt::from(x);
                gram[(j, i)] = BigInt::from(-x);
            }
        }
        let genus = r / 2;
        let model = HomologyModel {
            cover: cover.clone(),
            components,
            genus,
            basis,
            basis_component,
            gram,
            cells,
            reduction,
        };
        model.check_invariants()?;
        Ok(model)
    }

    fn check_invariants(&self) -> Result<()> {
        let r = self.rank();
        if !r.is_multiple_of(2) {
            return Err(Error::Internal(format!("odd first Betti number {r}")));
        }
        let chi = self.cells.vertex_count as i64 - self.cells.edge_count() as i64
            + self.cells.faces.len() as i64;
        if chi != 2 * self.components as i64 - r as i64 {
            return Err(Error::Internal(format!(
                "Euler characteristic {chi} disagrees with rank {r} on {} components",
                self.components
            )));
        }
        if r > 0 && !self.gram.determinant().magnitude().eq(&1u32.into()) {
            return Err(Error::Internal(
                "intersection form is not unimodular".into(),
            ));
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> usize {
        self.cells.degree
    }

    /// Edge index of the lift of arc `i` on sheet `t`.
    pub fn edge(&self, sheet: usize, arc: usize) -> usize {
        arc * self.cells.degree + sheet
    }

    pub fn edge_count(&self) -> usize {
        self.cells.edge_count()
    }

    pub fn is_cycle(&self, z: &[i64]) -> bool {
        self.cells.boundary(z).iter().all(|&x| x == 0)
    }

    /// Boundary chain of the face over sheet `s`.
    pub fn face_boundary(&self, s: usize) -> Chain {
        let mut z = vec![0i64; self.edge_count()];
        for &(e, c) in &self.cells.faces[s] {
            z[e] += c;
        }
        z
    }

    pub fn intersection(&self, a: &[i64], b: &[i64]) -> i64 {
        self.cells.intersection(a, b)
    }

    /// Coordinates of a cycle in the basis.
    pub fn coordinates(&self, z: &[i64]) -> Result<Vec<i64>> {
        if z.len() != self.edge_count() || !self.is_cycle(z) {
            return Err(Error::Internal("chain is not a cycle".into()));
        }
        let red = &self.reduction;
        let mut cum = vec![0i64; self.cells.faces.len()];
        for &f in &red.order {
            if let Some((p, e, sign)) = red.parent[f] {
                cum[f] = cum[p] + z[e] * sign;
            }
        }
        Ok(red
            .leftover
            .iter()
            .map(|&e| z[e] - cum[self.cells.face_pos[e]] + cum[self.cells.face_neg[e]])
            .collect())
    }

    /// Basis cycles as columns of an E × 2g matrix.
    pub fn basis_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.edge_count(), self.rank(), |e, j| self.basis[j][e])
    }

    /// The chain Σ_j coeffs[j] · basis[j].
    pub fn chain_of(&self, coeffs: &[BigInt]) -> Result<Chain> {
        let mut z = vec![0i64; self.edge_count()];
        for (j, c) in coeffs.iter().enumerate() {
            let c: i64 = c
                .try_into()
                .map_err(|_| Error::Internal("coefficient overflow".into()))?;
            if c != 0 {
                for (e, x) in self.basis[j].iter().enumerate() {
                    z[e] += c * x;
                }
            }
        }
        Ok(z)
    }
}

fn check_base(cover: &CoverModel) -> Result<()> {
    if cover.datum.base_genus != 0 {
        return Err(Error::Unsupported(format!(
            "homology over a base of genus {} (only P¹ is supported)",
            cover.datum.base_genus
        )));
    }
    Ok(())
}

/// The integer map on H₁ induced by a fiber correspondence from `src` to `dst`.
///
/// Returns a 2g_dst × 2g_src matrix acting on coordinate columns. Edge (s, i)
/// maps to Σ_t M[s][t] (t, i); equivariance is checked first.
pub fn induced_map(src: &HomologyModel, dst: &HomologyModel, m: &FiberMatrix) -> Result<IntMatrix> {
    let (sc, dc) = (&src.cover, &dst.cover);
    if sc.datum != dc.datum {
        return Err(Error::Domain(
            "covers come from different monodromy data".into(),
        ));
    }
    if m.src != sc.orbit || m.dst != dc.orbit || m.n != sc.datum.n {
        return Err(Error::Domain(format!(
            "fiber matrix {:?}→{:?} does not match covers {:?}→{:?}",
            m.src, m.dst, sc.orbit, dc.orbit
        )));
    }
    let n = sc.datum.n;
    let rows: Vec<usize> = sc
        .labels
        .iter()
        .map(|l| m.src.index_of(l, n).expect("canonical label"))
        .collect();
    let cols: Vec<usize> = dc
        .labels
        .iter()
        .map(|l| m.dst.index_of(l, n).expect("canonical label"))
        .collect();
    // Restricted to the covers' labels, the matrix must not leave dst.
    for (s, &r) in rows.iter().enumerate() {
        let leaves = (0..m.entries.cols())
            .filter(|c| !cols.contains(c))
            .any(|c| m.entries[(r, c)] != BigInt::from(0));
        if leaves {
            return Err(Error::Domain(format!(
                "correspondence sends sheet {} outside the target cover",
                sc.labels[s]
            )));
        }
    }
    let sub = m.entries.submatrix(&rows, &cols);
    let local: Vec<Vec<i64>> = sub.to_i64_rows();
    for (i, (ps, pd)) in sc.perms.iter().zip(&dc.perms).enumerate() {
        for s in 0..local.len() {
            for t in 0..cols.len() {
                if local[s][t] != local[ps[s]][pd[t]] {
                    return Err(Error::NotEquivariant(format!(
                        "entry ({}, {}) changes under generator {}",
                        sc.labels[s],
                        dc.labels[t],
                        i + 1
                    )));
                }
            }
        }
    }
    let (ds, dd) = (src.degree(), dst.degree());
    let k = sc.perms.len();
    let mut out = IntMatrix::zeros(dst.rank(), src.rank());
    for (j, z) in src.basis.iter().enumerate() {
        let mut image = vec![0i64; dst.edge_count()];
        for i in 0..k {
            for s in 0..ds {
                let c = z[i * ds + s];
                if c == 0 {
                    continue;
                }
                for t in 0..dd {
                    let w = local[s][t];
                    if w != 0 {
                        image[i * dd + t] += c * w;
                    }
                }
            }
        }
        let coords = dst.coordinates(&image)?;
        for (r, x) in coords.into_iter().enumerate() {
            out[(r, j)] = BigInt::from(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{induce, random_simple, MonodromyDatum};
    use crate::lattice;
    use crate::weyl::{reflection, OrbitKind, Root};
    use proptest::prelude::*;

    fn hyperelliptic(branch: usize) -> HomologyModel {
        let e = reflection(Root::short(1), 1).unwrap();
        let d = MonodromyDatum::genus0(1, vec![e; branch]);
        HomologyModel::build(&induce(&d, OrbitKind::Vector).unwrap()).unwrap()
    }

    fn check_model(h: &HomologyModel) {
        let g = &h.gram;
        assert_eq!(g, &-&g.transpose());
        if h.rank() > 0 {
            assert_eq!(g.determinant().magnitude(), &1u32.into());
        }
        // Pairing-based coordinates agree with tree–cotree coordinates.
        let ginv_t = lattice::coordinates(&g.transpose(), &IntMatrix::identity(h.rank())).unwrap();
        for z in &h.basis {
            let pairings: Vec<BigInt> = h
                .basis
                .iter()
                .map(|b| BigInt::from(h.intersection(b, z)))
                .collect();
            let via_gram = ginv_t.transpose().mul_vec(&pairings);
            let via_tree: Vec<BigInt> = h
                .coordinates(z)
                .unwrap()
                .into_iter()
                .map(BigInt::from)
                .collect();
            assert_eq!(via_gram, via_tree);
        }
        // Boundaries pair trivially with everything and have zero coordinates.
        for s in 0..h.degree() {
            let f = h.face_boundary(s);
            assert!(h.coordinates(&f).unwrap().iter().all(|&x| x == 0));
            for z in &h.basis {
                assert_eq!(h.intersection(&f, z), 0);
                assert_eq!(h.intersection(z, &f), 0);
            }
        }
    }

    #[test]
    fn double_covers() {
        let h = hyperelliptic(4);
        assert_eq!(h.rank(), 2);
        assert_eq!(h.gram.determinant(), BigInt::from(1));
        check_model(&h);
        let h = hyperelliptic(6);
        assert_eq!(h.rank(), 4);
        check_model(&h);
        assert_eq!(hyperelliptic(2).rank(), 0);
    }

    #[test]
    fn b3_spinor_rank() {
        let d = random_simple(3, 4, 6, 1).unwrap();
        let h = HomologyModel::build(&induce(&d, OrbitKind::Spinor).unwrap()).unwrap();
        assert_eq!(h.rank(), 14);
        check_model(&h);
    }

    #[test]
    fn refuses_disconnected_and_positive_genus() {
        let d = random_simple(3, 0, 10, 1).unwrap();
        let x = induce(&d, OrbitKind::Spinor).unwrap();
        assert!(matches!(
            HomologyModel::build(&x),
            Err(Error::Disconnected { .. })
        ));
        let h = HomologyModel::build_disjoint(&x).unwrap();
        assert_eq!(h.components, 2);
        check_model(&h);
        let w = reflection(Root::short(1), 2).unwrap();
        let g1 = MonodromyDatum {
            n: 2,
            base_genus: 1,
            gens: vec![w, w],
            handles: vec![(w, w)],
        };
        let c = induce(&g1, OrbitKind::Vector).unwrap();
        assert!(matches!(
            HomologyModel::build(&c),
            Err(Error::Unsupported(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn gram_is_alternating_and_unimodular(
            n in 2usize..5,
            half_s in 1usize..3,
            extra_l in 0usize..3,
            seed in any::<u64>(),
            kind in prop::sample::select(OrbitKind::ALL.to_vec()),
        ) {
            let (ds, dl) = (2 * half_s, 2 * n + 2 * extra_l);
            let d = random_simple(n, ds, dl, seed).unwrap();
            let c = induce(&d, kind).unwrap();
            prop_assume!(c.degree() <= 16);
            let h = HomologyModel::build(&c).unwrap();
            prop_assert_eq!(h.genus, c.genus().unwrap());
            check_model(&h);
        }
    }
}
