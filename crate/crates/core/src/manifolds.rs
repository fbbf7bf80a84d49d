//! Closed oriented 3-manifolds presented by plumbing forests: vertices are
//! framed unknots, edges are single positive clasps. Linking matrices, exact
//! signatures, spin^d / Z_d-cohomology structure enumeration, standard
//! constructors and the blow-down move of the plumbing calculus.

use crate::snf::{self, CongruenceSolutions, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateId(String),
    #[error("edge references unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {0:?} - {1:?}")]
    DuplicateEdge(String, String),
    #[error("the graph contains a cycle; plumbing presentations must be forests")]
    HasCycle,
    #[error("spin^d structures need an even modulus, got d = {0}")]
    ModulusParity(u64),
    #[error("lens space parameters must satisfy 0 < q < p with gcd(p,q) = 1")]
    BadLensParameters,
    #[error("vertex {0:?} cannot be blown down: {1}")]
    NotBlowdownable(String, String),
    #[error("blow-down would create a cycle")]
    WouldCreateCycle,
}

/// A framed forest presenting a closed oriented 3-manifold by surgery.
/// The empty forest presents S^3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingForest {
    vertices: Vec<Vertex>,
    edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub framing: i64,
}

impl PlumbingForest {
    pub fn new(
        vertices: Vec<(String, i64)>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, ManifoldError> {
        let f = PlumbingForest {
            vertices: vertices
                .into_iter()
                .map(|(id, framing)| Vertex { id, framing })
                .collect(),
            edges,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn empty() -> Self {
        PlumbingForest { vertices: vec![], edges: vec![] }
    }

    /// A linear chain v0 - v1 - ... with the given framings.
    pub fn chain(framings: &[i64]) -> Self {
        let vertices = framings
            .iter()
            .enumerate()
            .map(|(i, &f)| Vertex { id: format!("v{i}"), framing: f })
            .collect();
        let edges = (1..framings.len())
            .map(|i| (format!("v{}", i - 1), format!("v{i}")))
            .collect();
        PlumbingForest { vertices, edges }
    }

    pub fn from_json(text: &str) -> Result<Self, ManifoldError> {
        let f: PlumbingForest = serde_json::from_str(text).map_err(|e| {
            ManifoldError::UnknownVertex(format!("invalid manifold JSON: {e}"))
        })?;
        f.validate()?;
        Ok(f)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| serde_json::json!({
                "id": v.id, "framing": v.framing,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b)| serde_json::json!([a, b])).collect::<Vec<_>>(),
        })
    }

    pub fn validate(&self) -> Result<(), ManifoldError> {
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id.clone()) {
                return Err(ManifoldError::DuplicateId(v.id.clone()));
            }
        }
        let mut seen_edges = BTreeSet::new();
        for (a, b) in &self.edges {
            if a == b {
                return Err(ManifoldError::SelfLoop(a.clone()));
            }
            for id in [a, b] {
                if !ids.contains(id) {
                    return Err(ManifoldError::UnknownVertex(id.clone()));
                }
            }
            let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            if !seen_edges.insert(key) {
                return Err(ManifoldError::DuplicateEdge(a.clone(), b.clone()));
            }
        }
        // forest check: union-find
        let index: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for (a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, index[a.as_str()]), find(&mut parent, index[b.as_str()]));
            if ra == rb {
                return Err(ManifoldError::HasCycle);
            }
            parent[ra] = rb;
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn degree(&self, id: &str) -> usize {
        self.edges.iter().filter(|(a, b)| a == id || b == id).count()
    }

    /// Vertex order is insertion order; diagonal carries the framings,
    /// off-diagonal entries are 1 exactly on edges.
    pub fn linking_matrix(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut a = vec![vec![BigInt::zero(); n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            a[i][i] = BigInt::from(v.framing);
        }
        for (x, y) in &self.edges {
            let i = self.vertex_index(x).unwrap();
            let j = self.vertex_index(y).unwrap();
            a[i][j] = BigInt::from(1);
            a[j][i] = BigInt::from(1);
        }
        a
    }

    /// Negates all framings. For a forest this presents the
    /// orientation-reversed manifold: reversing the orientation of the
    /// vertices in one bipartition class restores all edge clasps to +1.
    pub fn mirror(&self) -> Self {
        PlumbingForest {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex { id: v.id.clone(), framing: -v.framing })
                .collect(),
            edges: self.edges.clone(),
        }
    }

    /// Signs (+1/-1) of a 2-coloring of each tree, +1 on the lexicographically
    /// least vertex id of each component. Used to transport structure vectors
    /// to the mirrored presentation.
    pub fn bipartition_signs(&self) -> Vec<i64> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in &self.edges {
            let i = self.vertex_index(a).unwrap();
            let j = self.vertex_index(b).unwrap();
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| self.vertices[i].id.cmp(&self.vertices[j].id));
        let mut sign = vec![0i64; n];
        for root in order {
            if sign[root] != 0 {
                continue;
            }
            sign[root] = 1;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if sign[w] == 0 {
                        sign[w] = -sign[v];
                        stack.push(w);
                    }
                }
            }
        }
        sign
    }

    /// Concatenation; presents the connected sum. Colliding ids in the second
    /// operand get a `'` suffix until unique.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut ids: BTreeSet<String> = self.vertices.iter().map(|v| v.id.clone()).collect();
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        let mut vertices = self.vertices.clone();
        for v in &other.vertices {
            let mut id = v.id.clone();
            while ids.contains(&id) {
                id.push('\'');
            }
            ids.insert(id.clone());
            rename.insert(v.id.clone(), id.clone());
            vertices.push(Vertex { id, framing: v.framing });
        }
        let mut edges = self.edges.clone();
        for (a, b) in &other.edges {
            edges.push((rename[a].clone(), rename[b].clone()));
        }
        PlumbingForest { vertices, edges }
    }

    /// Blows down a ±1-framed vertex of degree <= 2. Neighbors lose the
    /// framing of the removed vertex; the two neighbors of a degree-2 vertex
    /// become clasped, which stays inside the plumbing calculus only for
    /// framing -1 (a +1 vertex between two strands would leave a -1 clasp).
    pub fn blow_down(&self, id: &str) -> Result<Self, ManifoldError> {
        let vi = self
            .vertex_index(id)
            .ok_or_else(|| ManifoldError::UnknownVertex(id.to_string()))?;
        let framing = self.vertices[vi].framing;
        if framing != 1 && framing != -1 {
            return Err(ManifoldError::NotBlowdownable(
                id.to_string(),
                format!("framing {framing} is not ±1"),
            ));
        }
        let neighbors: Vec<String> = self
            .edges
            .iter()
            .filter_map(|(a, b)| {
                if a == id {
                    Some(b.clone())
                } else if b == id {
                    Some(a.clone())
                } else {
                    None
                }
            })
            .collect();
        if neighbors.len() > 2 {
            return Err(ManifoldError::NotBlowdownable(
                id.to_string(),
                format!("degree {} exceeds 2", neighbors.len()),
            ));
        }
        if neighbors.len() == 2 && framing == 1 {
            return Err(ManifoldError::NotBlowdownable(
                id.to_string(),
                "a +1 vertex with two neighbors leaves a -1 clasp".to_string(),
            ));
        }
        let mut vertices: Vec<Vertex> = self
            .vertices
            .iter()
            .filter(|v| v.id != id)
            .cloned()
            .collect();
        for v in vertices.iter_mut() {
            if neighbors.contains(&v.id) {
                v.framing -= framing;
            }
        }
        let mut edges: Vec<(String, String)> = self
            .edges
            .iter()
            .filter(|(a, b)| a != id && b != id)
            .cloned()
            .collect();
        if neighbors.len() == 2 {
            edges.push((neighbors[0].clone(), neighbors[1].clone()));
        }
        let out = PlumbingForest { vertices, edges };
        match out.validate() {
            Ok(()) => Ok(out),
            Err(ManifoldError::HasCycle) => Err(ManifoldError::WouldCreateCycle),
            Err(e) => Err(e),
        }
    }
}

/// L(p, q) as the linear chain -a_1, ..., -a_k from the negative continued
/// fraction p/q = a_1 - 1/(a_2 - ...) with all a_i >= 2.
pub fn lens_space(p: u64, q: u64) -> Result<PlumbingForest, ManifoldError> {
    if q == 0 || q >= p || num_integer::gcd(p, q) != 1 {
        return Err(ManifoldError::BadLensParameters);
    }
    let mut framings = Vec::new();
    let (mut p, mut q) = (p as i64, q as i64);
    while q > 0 {
        let a = (p + q - 1) / q; // ceil(p/q)
        framings.push(-a);
        let next_p = q;
        let next_q = a * q - p;
        p = next_p;
        q = next_q;
    }
    Ok(PlumbingForest::chain(&framings))
}

/// The E8 plumbing: all framings -2 on the E8 tree (a chain of seven with one
/// extra vertex attached to the fifth). Presents the Poincare sphere.
pub fn e8_sphere() -> PlumbingForest {
    let vertices: Vec<(String, i64)> = (1..=8).map(|i| (format!("v{i}"), -2)).collect();
    let mut edges: Vec<(String, String)> = (1..7)
        .map(|i| (format!("v{i}"), format!("v{}", i + 1)))
        .collect();
    edges.push(("v5".to_string(), "v8".to_string()));
    PlumbingForest::new(vertices, edges).unwrap()
}

/// A single 0-framed vertex: S^1 x S^2.
pub fn s1_x_s2() -> PlumbingForest {
    PlumbingForest::chain(&[0])
}

/// Exact signature of a symmetric integer matrix: number of positive minus
/// number of negative eigenvalues, via Descartes' rule on the characteristic
/// polynomial (exact for real-rooted polynomials).
pub fn signature(a: &IntMatrix) -> i64 {
    let n = a.len();
    if n == 0 {
        return 0;
    }
    let coeffs = char_poly(a);
    let pos = descartes_positive(&coeffs);
    let neg = {
        let flipped: Vec<BigRational> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        descartes_positive(&flipped)
    };
    pos - neg
}

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier, coefficients
/// lowest degree first.
fn char_poly(a: &IntMatrix) -> Vec<BigRational> {
    let n = a.len();
    let ar: Vec<Vec<BigRational>> = a
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::from_integer(BigInt::from(1));
    let mut m = vec![vec![BigRational::zero(); n]; n]; // M_0 = 0 -> start with A
    let mut c_prev = BigRational::from_integer(BigInt::from(1));
    for k in 1..=n {
        // M_k = A * (M_{k-1} + c_{k-1} I)
        let mut mk = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for l in 0..n {
                    let mut t = m[l][j].clone();
                    if l == j {
                        t += &c_prev;
                    }
                    acc += &ar[i][l] * t;
                }
                mk[i][j] = acc;
            }
        }
        let trace: BigRational = (0..n).map(|i| mk[i][i].clone()).fold(BigRational::zero(), |a, b| a + b);
        let ck = -trace / BigRational::from_integer(BigInt::from(k as i64));
        coeffs[n - k] = ck.clone();
        m = mk;
        c_prev = ck;
    }
    coeffs
}

fn descartes_positive(coeffs: &[BigRational]) -> i64 {
    let mut last = 0i8;
    let mut variations = 0i64;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let s = if c.is_positive() { 1i8 } else { -1i8 };
        if last != 0 && s != last {
            variations += 1;
        }
        last = s;
    }
    variations
}

/// The kind of mod-d structure carried by a surgery presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureKind {
    /// Solutions of sum_j L_ij c_j ≡ (d/2) L_ii (mod d).
    SpinD,
    /// The mod-d kernel of the linking matrix.
    Cohomology,
}

/// A residue vector solving the characteristic equations (spin^d) or lying in
/// the mod-d kernel of the linking matrix (a Z_d cohomology class).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Structure {
    pub kind: StructureKind,
    pub values: BTreeMap<String, u64>,
}

impl PartialOrd for StructureKind {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StructureKind {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        fn rank(k: &StructureKind) -> u8 {
            match k {
                StructureKind::SpinD => 0,
                StructureKind::Cohomology => 1,
            }
        }
        rank(self).cmp(&rank(other))
    }
}

impl Structure {
    pub fn residues(&self, forest: &PlumbingForest) -> Vec<u64> {
        forest
            .vertices()
            .iter()
            .map(|v| *self.values.get(&v.id).unwrap_or(&0))
            .collect()
    }

    pub fn from_residues(forest: &PlumbingForest, kind: StructureKind, residues: &[u64]) -> Self {
        let values = forest
            .vertices()
            .iter()
            .zip(residues.iter())
            .map(|(v, &r)| (v.id.clone(), r))
            .collect();
        Structure { kind, values }
    }

    /// Componentwise sum mod d (the affine action of a cohomology class).
    pub fn shifted_by(&self, h: &Structure, d: u64) -> Structure {
        let values = self
            .values
            .iter()
            .map(|(id, &v)| (id.clone(), (v + h.values.get(id).copied().unwrap_or(0)) % d))
            .collect();
        Structure { kind: self.kind, values }
    }
}

/// All structures of the given kind, via the Smith normal form solver. The
/// affine data (base + kernel generators) is preserved alongside the full
/// enumeration.
pub fn structures(
    forest: &PlumbingForest,
    d: u64,
    kind: StructureKind,
) -> Result<(Vec<Structure>, CongruenceSolutions), ManifoldError> {
    if kind == StructureKind::SpinD && d % 2 != 0 {
        return Err(ManifoldError::ModulusParity(d));
    }
    let a = forest.linking_matrix();
    let b: Vec<BigInt> = match kind {
        StructureKind::SpinD => forest
            .vertices()
            .iter()
            .map(|v| BigInt::from(d as i64 / 2 * v.framing))
            .collect(),
        StructureKind::Cohomology => vec![BigInt::zero(); forest.len()],
    };
    let sols = snf::solve_mod(&a, &b, d);
    let list = sols
        .all
        .iter()
        .map(|c| Structure::from_residues(forest, kind, c))
        .collect();
    Ok((list, sols))
}

/// Checks one residue vector against the defining congruences.
pub fn structure_is_valid(forest: &PlumbingForest, s: &Structure, d: u64) -> bool {
    let a = forest.linking_matrix();
    let c = s.residues(forest);
    if c.iter().any(|&x| x >= d) {
        return false;
    }
    let n = forest.len();
    for i in 0..n {
        let mut acc = BigInt::zero();
        for j in 0..n {
            acc += &a[i][j] * BigInt::from(c[j]);
        }
        let rhs = match s.kind {
            StructureKind::SpinD => BigInt::from(d as i64 / 2 * forest.vertices()[i].framing),
            StructureKind::Cohomology => BigInt::zero(),
        };
        if !((acc - rhs) % BigInt::from(d)).is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles;

    #[test]
    fn linking_matrix_examples() {
        let c = PlumbingForest::chain(&[3, 1]);
        assert_eq!(c.linking_matrix(), snf::int_matrix(&[vec![3, 1], vec![1, 1]]));
        let single = PlumbingForest::chain(&[5]);
        assert_eq!(single.linking_matrix(), snf::int_matrix(&[vec![5]]));
        assert_eq!(PlumbingForest::empty().linking_matrix(), Vec::<Vec<BigInt>>::new());
    }

    #[test]
    fn validation_errors() {
        let dup = PlumbingForest::new(
            vec![("a".into(), 0), ("a".into(), 1)],
            vec![],
        );
        assert_eq!(dup.unwrap_err(), ManifoldError::DuplicateId("a".into()));
        let cyc = PlumbingForest::new(
            vec![("a".into(), 0), ("b".into(), 0), ("c".into(), 0)],
            vec![("a".into(), "b".into()), ("b".into(), "c".into()), ("c".into(), "a".into())],
        );
        assert_eq!(cyc.unwrap_err(), ManifoldError::HasCycle);
        let unknown = PlumbingForest::new(vec![("a".into(), 0)], vec![("a".into(), "x".into())]);
        assert_eq!(unknown.unwrap_err(), ManifoldError::UnknownVertex("x".into()));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&snf::int_matrix(&[vec![1]])), 1);
        assert_eq!(signature(&snf::int_matrix(&[vec![0]])), 0);
        assert_eq!(signature(&snf::int_matrix(&[vec![2, 1], vec![1, 2]])), 2);
        assert_eq!(signature(&e8_sphere().linking_matrix()), -8);
        assert_eq!(signature(&PlumbingForest::chain(&[3, 1]).linking_matrix()), 2);
    }

    #[test]
    fn signature_matches_ldlt_oracle() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=5);
            let mut a = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..=i {
                    let v = rng.gen_range(-3..=3);
                    a[i][j] = v;
                    a[j][i] = v;
                }
            }
            let m = snf::int_matrix(&a);
            assert_eq!(signature(&m), oracles::signature_by_elimination(&m), "{a:?}");
        }
    }

    #[test]
    fn signature_mirror_and_permutation() {
        let f = e8_sphere();
        assert_eq!(
            signature(&f.mirror().linking_matrix()),
            -signature(&f.linking_matrix())
        );
        // permuting vertices leaves the signature alone
        let c = PlumbingForest::new(
            vec![("b".into(), -2), ("a".into(), 3), ("c".into(), 1)],
            vec![("b".into(), "a".into()), ("a".into(), "c".into())],
        )
        .unwrap();
        let c2 = PlumbingForest::new(
            vec![("c".into(), 1), ("a".into(), 3), ("b".into(), -2)],
            vec![("b".into(), "a".into()), ("a".into(), "c".into())],
        )
        .unwrap();
        assert_eq!(signature(&c.linking_matrix()), signature(&c2.linking_matrix()));
    }

    #[test]
    fn lens_space_chains() {
        assert_eq!(lens_space(2, 1).unwrap(), PlumbingForest::chain(&[-2]));
        assert_eq!(lens_space(5, 2).unwrap(), PlumbingForest::chain(&[-3, -2]));
        assert_eq!(lens_space(7, 1).unwrap(), PlumbingForest::chain(&[-7]));
        assert!(lens_space(4, 2).is_err());
        assert!(lens_space(3, 3).is_err());
        assert_eq!(
            PlumbingForest::chain(&[-2]).mirror(),
            PlumbingForest::chain(&[2])
        );
    }

    #[test]
    fn lens_space_determinant_is_p() {
        for (p, q) in [(5u64, 2u64), (7, 3), (8, 3), (11, 4), (12, 5)] {
            let f = lens_space(p, q).unwrap();
            let a = f.linking_matrix();
            let coeffs = {
                // |det| = |H_1|, read off the constant coefficient of char poly
                let c = super::char_poly(&a);
                c[0].clone()
            };
            let det = coeffs.numer().abs();
            assert_eq!(det, BigInt::from(p), "L({p},{q})");
        }
    }

    #[test]
    fn blow_down_examples() {
        // chain(3,1): removing the +1 leaf leaves a single vertex (2)
        let f = PlumbingForest::chain(&[3, 1]);
        let g = f.blow_down("v1").unwrap();
        assert_eq!(g, PlumbingForest::new(vec![("v0".into(), 2)], vec![]).unwrap());
        // isolated +1 vertex blows down to the empty forest
        let one = PlumbingForest::chain(&[1]);
        assert_eq!(one.blow_down("v0").unwrap(), PlumbingForest::empty());
        // chain(-2,-1,-2): middle blow-down joins the neighbors at framing -1
        let f = PlumbingForest::chain(&[-2, -1, -2]);
        let g = f.blow_down("v1").unwrap();
        assert_eq!(
            g,
            PlumbingForest::new(
                vec![("v0".into(), -1), ("v2".into(), -1)],
                vec![("v0".into(), "v2".into())],
            )
            .unwrap()
        );
        // signature changes by -framing
        assert_eq!(
            signature(&g.linking_matrix()),
            signature(&f.linking_matrix()) + 1
        );
        // degree-2 blow-down of a +1 vertex is out of calculus
        let bad = PlumbingForest::chain(&[-2, 1, -2]);
        assert!(matches!(
            bad.blow_down("v1"),
            Err(ManifoldError::NotBlowdownable(_, _))
        ));
        // framing != ±1
        assert!(matches!(
            PlumbingForest::chain(&[3]).blow_down("v0"),
            Err(ManifoldError::NotBlowdownable(_, _))
        ));
    }

    #[test]
    fn structure_examples() {
        // [[0]], d=2, spin: both residues
        let f = s1_x_s2();
        let (list, _) = structures(&f, 2, StructureKind::SpinD).unwrap();
        assert_eq!(list.len(), 2);
        // [[1]], d=2, spin: c = 1
        let f = PlumbingForest::chain(&[1]);
        let (list, _) = structures(&f, 2, StructureKind::SpinD).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].values["v0"], 1);
        // E8 at d=2: exactly the all-zero structure
        let (list, _) = structures(&e8_sphere(), 2, StructureKind::SpinD).unwrap();
        assert_eq!(list.len(), 1);
        assert!(list[0].values.values().all(|&v| v == 0));
        // odd modulus rejected for spin
        assert_eq!(
            structures(&f, 3, StructureKind::SpinD).unwrap_err(),
            ManifoldError::ModulusParity(3)
        );
    }

    #[test]
    fn structures_match_brute_force() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(1..=4);
            let framings: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            // random forest on n vertices: attach vertex i to a previous one or not
            let mut vertices = Vec::new();
            let mut edges = Vec::new();
            for (i, &fr) in framings.iter().enumerate() {
                vertices.push((format!("v{i}"), fr));
                if i > 0 && rng.gen_bool(0.6) {
                    let j = rng.gen_range(0..i);
                    edges.push((format!("v{j}"), format!("v{i}")));
                }
            }
            let f = PlumbingForest::new(vertices, edges).unwrap();
            for d in [2u64, 4] {
                for kind in [StructureKind::SpinD, StructureKind::Cohomology] {
                    let (list, _) = structures(&f, d, kind).unwrap();
                    let got: Vec<Vec<u64>> = list.iter().map(|s| s.residues(&f)).collect();
                    let a = f.linking_matrix();
                    let b: Vec<BigInt> = match kind {
                        StructureKind::SpinD => f
                            .vertices()
                            .iter()
                            .map(|v| BigInt::from(d as i64 / 2 * v.framing))
                            .collect(),
                        StructureKind::Cohomology => vec![BigInt::zero(); f.len()],
                    };
                    let expected = oracles::brute_solve(&a, &b, d).unwrap();
                    assert_eq!(got, expected, "forest {f:?} d={d} kind={kind:?}");
                    for s in &list {
                        assert!(structure_is_valid(&f, s, d));
                    }
                }
            }
        }
    }

    #[test]
    fn spin_structures_nonempty_and_counted() {
        // for even d a spin^d structure always exists, and the count equals
        // the number of kernel elements
        for f in [
            s1_x_s2(),
            e8_sphere(),
            lens_space(4, 1).unwrap(),
            lens_space(12, 5).unwrap(),
            PlumbingForest::chain(&[1, 1]),
        ] {
            for d in [2u64, 4] {
                let (spin, _) = structures(&f, d, StructureKind::SpinD).unwrap();
                let (ker, _) = structures(&f, d, StructureKind::Cohomology).unwrap();
                assert!(!spin.is_empty());
                assert_eq!(spin.len(), ker.len());
            }
        }
    }

    #[test]
    fn disjoint_union_renames() {
        let a = PlumbingForest::chain(&[1, 2]);
        let b = PlumbingForest::chain(&[3]);
        let u = a.disjoint_union(&b);
        assert_eq!(u.len(), 3);
        assert_eq!(u.vertices()[2].id, "v0'");
        u.validate().unwrap();
    }

    #[test]
    fn json_round_trip() {
        let f = e8_sphere();
        let text = serde_json::to_string(&f.to_json()).unwrap();
        let back = PlumbingForest::from_json(&text).unwrap();
        assert_eq!(f, back);
        assert!(PlumbingForest::from_json("{\"vertices\":[],\"edges\":[[\"a\",\"b\"]]}").is_err());
    }
}
