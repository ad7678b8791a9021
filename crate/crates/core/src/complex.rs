//! Abstract simplicial complexes on dense integer vertex ids.
//!
//! A complex stores its simplices per dimension in sorted order plus a hash
//! index for membership tests. Complexes are immutable once built; every
//! constructor returns the downward closure of its input.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::{Error, Result};

/// A simplex given by its strictly increasing vertex list.
///
/// The empty list is the unique (−1)-simplex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<u32>,
}

impl Simplex {
    /// Builds a simplex from an arbitrary vertex list; sorts and rejects
    /// duplicates.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedSimplex(format!(
                "repeated vertex in {vertices:?}"
            )));
        }
        Ok(Self { vertices })
    }

    /// The unique (−1)-simplex.
    pub fn empty() -> Self {
        Self { vertices: Vec::new() }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// Dimension; −1 for the empty simplex.
    pub fn dim(&self) -> i32 {
        self.vertices.len() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Codimension-one faces, in the order "drop i-th vertex".
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.vertices.len()).map(move |i| {
            let mut v = self.vertices.clone();
            v.remove(i);
            Simplex { vertices: v }
        })
    }

    /// Whether `self` contains every vertex of `other`.
    pub fn contains(&self, other: &Simplex) -> bool {
        other
            .vertices
            .iter()
            .all(|v| self.vertices.binary_search(v).is_ok())
    }

    /// Union of two disjoint simplices; error if they share a vertex.
    pub fn union(&self, other: &Simplex) -> Result<Simplex> {
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices);
        Simplex::new(v)
    }
}

/// f-vector of a complex, `f[k]` = number of k-simplices; `f(-1) = 1` by
/// convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn f(&self, k: i32) -> usize {
        if k == -1 {
            1
        } else {
            self.0.get(k as usize).copied().unwrap_or(0)
        }
    }
}

/// A finite abstract simplicial complex, downward closed by construction.
///
/// `X_0` may be a strict subset of `{0..n_vertices-1}`; the empty complex is
/// represented by having no simplices at all.
#[derive(Debug, Clone)]
pub struct SimplicialComplex {
    n_vertices: usize,
    by_dim: Vec<Vec<Simplex>>,
    index: HashSet<Simplex>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.by_dim == other.by_dim
    }
}
impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Downward closure of the given simplices.
    ///
    /// Idempotent: closing an already-closed simplex set returns the same
    /// complex. Vertex ids must lie below `n_vertices`.
    pub fn close(maximal: &[Simplex], n_vertices: usize) -> Result<Self> {
        let mut index: HashSet<Simplex> = HashSet::new();
        let mut stack: Vec<Simplex> = Vec::new();
        for s in maximal {
            if let Some(&v) = s.vertices().iter().max() {
                if v as usize >= n_vertices {
                    return Err(Error::Domain(format!(
                        "vertex {v} out of range (n_vertices = {n_vertices})"
                    )));
                }
            }
            if !s.is_empty() && index.insert(s.clone()) {
                stack.push(s.clone());
            }
        }
        while let Some(s) = stack.pop() {
            if s.dim() >= 1 {
                for f in s.facets() {
                    if index.insert(f.clone()) {
                        stack.push(f);
                    }
                }
            }
        }
        let top = index.iter().map(|s| s.dim()).max().unwrap_or(-1);
        let mut by_dim = vec![Vec::new(); (top + 1).max(0) as usize];
        for s in &index {
            by_dim[s.dim() as usize].push(s.clone());
        }
        for level in &mut by_dim {
            level.sort_unstable();
        }
        Ok(Self { n_vertices, by_dim, index })
    }

    /// The complex with no simplices.
    pub fn empty(n_vertices: usize) -> Self {
        Self { n_vertices, by_dim: Vec::new(), index: HashSet::new() }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Dimension of the complex; −1 when empty.
    pub fn dim(&self) -> i32 {
        self.by_dim.len() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Sorted k-simplices; empty slice outside the stored range.
    pub fn simplices(&self, k: i32) -> &[Simplex] {
        if k < 0 {
            return &[];
        }
        self.by_dim.get(k as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains(s)
    }

    /// Number of k-simplices.
    pub fn count(&self, k: i32) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.by_dim.iter().map(Vec::len).collect())
    }

    /// Link of `tau`: all simplices disjoint from `tau` whose union with
    /// `tau` lies in the complex. `lk(∅) = X`. Errors if `tau` is neither
    /// empty nor a simplex of the complex.
    pub fn link(&self, tau: &Simplex) -> Result<SimplicialComplex> {
        if tau.is_empty() {
            return Ok(self.clone());
        }
        if !self.contains(tau) {
            return Err(Error::Domain(format!(
                "link of {:?}: not a simplex of the complex",
                tau.vertices()
            )));
        }
        let mut members = Vec::new();
        for level in &self.by_dim {
            for s in level {
                if s.vertices().iter().any(|v| tau.vertices().contains(v)) {
                    continue;
                }
                let u = s.union(tau)?;
                if self.contains(&u) {
                    members.push(s.clone());
                }
            }
        }
        // Already downward closed: a face of a link member is a link member.
        SimplicialComplex::close(&members, self.n_vertices)
    }

    /// k-skeleton: all simplices of dimension ≤ k.
    pub fn skeleton(&self, k: i32) -> SimplicialComplex {
        let keep = self.by_dim.iter().take((k + 1).max(0) as usize);
        let by_dim: Vec<Vec<Simplex>> = keep.cloned().collect();
        let index = by_dim.iter().flatten().cloned().collect();
        SimplicialComplex { n_vertices: self.n_vertices, by_dim, index }
    }

    /// Whether every simplex is a face of some D-simplex.
    pub fn is_pure(&self, d: i32) -> bool {
        if self.dim() != d {
            return false;
        }
        for k in 0..d {
            for s in self.simplices(k) {
                let covered = self
                    .simplices(k + 1)
                    .iter()
                    .any(|t| t.contains(s));
                if !covered {
                    return false;
                }
            }
        }
        true
    }

    /// Enumerates the maximal k-simplices (those not contained in any
    /// (k+1)-simplex).
    pub fn maximal_simplices(&self, k: i32) -> Vec<Simplex> {
        self.simplices(k)
            .iter()
            .filter(|s| !self.simplices(k + 1).iter().any(|t| t.contains(s)))
            .cloned()
            .collect()
    }
}

/// Smallest complex containing the given maximal simplices.
pub fn make_complex(maximal: &[Simplex], n_vertices: usize) -> Result<SimplicialComplex> {
    SimplicialComplex::close(maximal, n_vertices)
}

/// Clique complex of a graph: every clique of the 1-skeleton becomes a
/// simplex. Errors unless `g` has dimension ≤ 1.
pub fn clique_complex(g: &SimplicialComplex) -> Result<SimplicialComplex> {
    if g.dim() > 1 {
        return Err(Error::Domain(format!(
            "clique complex input must be a graph, got dimension {}",
            g.dim()
        )));
    }
    let vertices: Vec<u32> = g.simplices(0).iter().map(|s| s.vertices()[0]).collect();
    let adjacent = |a: u32, b: u32| -> bool {
        g.contains(&Simplex { vertices: vec![a.min(b), a.max(b)] })
    };
    // Grow cliques dimension by dimension; each (k+1)-clique extends a
    // k-clique by a vertex adjacent to all of its members.
    let mut cliques: Vec<Vec<u32>> = vertices.iter().map(|&v| vec![v]).collect();
    let mut all: Vec<Simplex> = cliques
        .iter()
        .map(|c| Simplex { vertices: c.clone() })
        .collect();
    while !cliques.is_empty() {
        let mut next = Vec::new();
        for c in &cliques {
            let last = *c.last().unwrap();
            for &v in vertices.iter().filter(|&&v| v > last) {
                if c.iter().all(|&u| adjacent(u, v)) {
                    let mut bigger = c.clone();
                    bigger.push(v);
                    next.push(bigger);
                }
            }
        }
        all.extend(next.iter().map(|c| Simplex { vertices: c.clone() }));
        cliques = next;
    }
    SimplicialComplex::close(&all, g.n_vertices())
}

/// Result of [`pure_dimensionalize`]: the pure D-dimensional complex together
/// with the cone vertices it introduced.
#[derive(Debug, Clone)]
pub struct PureDimensionalized {
    pub complex: SimplicialComplex,
    /// Fresh vertex id → the maximal (D−1)-simplex it cones off.
    pub cone_vertices: HashMap<u32, Simplex>,
}

/// Makes a complex pure D-dimensional without changing its (D−1)-th Betti
/// number: every maximal (D−1)-simplex is coned off by a fresh vertex, and
/// the result is generated by the D-simplices plus those cones.
pub fn pure_dimensionalize(x: &SimplicialComplex, d: i32) -> Result<PureDimensionalized> {
    if d < 1 {
        return Err(Error::Domain("pure_dimensionalize requires D ≥ 1".into()));
    }
    if x.dim() < d - 1 {
        return Err(Error::Domain(format!(
            "pure_dimensionalize: dim X = {} < D−1 = {}",
            x.dim(),
            d - 1
        )));
    }
    let mut generators: Vec<Simplex> = x.simplices(d).to_vec();
    let mut cone_vertices = HashMap::new();
    let mut fresh = x.n_vertices() as u32;
    for sigma in x.maximal_simplices(d - 1) {
        let mut v = sigma.vertices().to_vec();
        v.push(fresh);
        generators.push(Simplex::new(v)?);
        cone_vertices.insert(fresh, sigma);
        fresh += 1;
    }
    let complex = SimplicialComplex::close(&generators, fresh as usize)?;
    Ok(PureDimensionalized { complex, cone_vertices })
}

/// Serializes a complex in the text format: a header `n <n_vertices>`,
/// then one simplex per line as space-separated vertex ids, dimension by
/// dimension in sorted order.
pub fn to_text(x: &SimplicialComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n {}", x.n_vertices());
    for k in 0..=x.dim() {
        for s in x.simplices(k) {
            let words: Vec<String> = s.vertices().iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", words.join(" "));
        }
    }
    out
}

/// Parses the text format produced by [`to_text`].
pub fn from_text(text: &str) -> Result<SimplicialComplex> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing header line".into()))?;
    let n_vertices = header
        .strip_prefix("n ")
        .and_then(|s| s.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
    let mut simplices = Vec::new();
    for line in lines {
        let vertices: std::result::Result<Vec<u32>, _> =
            line.split_whitespace().map(str::parse).collect();
        let vertices = vertices.map_err(|e| Error::Parse(format!("bad line {line:?}: {e}")))?;
        simplices.push(Simplex::new(vertices)?);
    }
    SimplicialComplex::close(&simplices, n_vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn simplex_rejects_duplicates() {
        assert!(Simplex::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn closure_of_triangle() {
        let x = make_complex(&[s(&[0, 1, 2])], 3).unwrap();
        assert_eq!(x.f_vector(), FVector(vec![3, 3, 1]));
        // idempotent
        let all: Vec<Simplex> = (0..=x.dim()).flat_map(|k| x.simplices(k).to_vec()).collect();
        let again = make_complex(&all, 3).unwrap();
        assert_eq!(x, again);
    }

    #[test]
    fn closure_of_nothing_and_singletons() {
        let x = make_complex(&[], 3).unwrap();
        assert!(x.is_empty());
        assert_eq!(x.f_vector(), FVector(vec![]));
        let y = make_complex(&[s(&[0]), s(&[1]), s(&[2])], 3).unwrap();
        assert_eq!(y.f_vector(), FVector(vec![3]));
    }

    #[test]
    fn hollow_triangle() {
        let x = make_complex(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 3).unwrap();
        assert_eq!(x.f_vector(), FVector(vec![3, 3]));
    }

    #[test]
    fn link_of_vertex_in_solid_triangle() {
        let x = make_complex(&[s(&[0, 1, 2])], 3).unwrap();
        let lk = x.link(&s(&[0])).unwrap();
        let expected = make_complex(&[s(&[1, 2])], 3).unwrap();
        assert_eq!(lk, expected);
    }

    #[test]
    fn link_of_empty_is_identity() {
        let x = make_complex(&[s(&[0, 1, 2]), s(&[2, 3])], 4).unwrap();
        assert_eq!(x.link(&Simplex::empty()).unwrap(), x);
    }

    #[test]
    fn link_of_edge_in_hollow_triangle_is_empty() {
        let x = make_complex(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 3).unwrap();
        let lk = x.link(&s(&[0, 1])).unwrap();
        assert!(lk.is_empty());
    }

    #[test]
    fn link_of_shared_edge_is_two_isolated_vertices() {
        // Brute-force oracle: σ with τ∩σ=∅ and τ∪σ∈X are exactly {2} and {3}.
        let x = make_complex(&[s(&[0, 1, 2]), s(&[0, 1, 3])], 4).unwrap();
        let lk = x.link(&s(&[0, 1])).unwrap();
        assert_eq!(lk.simplices(0), &[s(&[2]), s(&[3])]);
        assert_eq!(lk.dim(), 0);
    }

    #[test]
    fn link_of_missing_simplex_errors() {
        let x = make_complex(&[s(&[0, 1])], 3).unwrap();
        assert!(x.link(&s(&[0, 2])).is_err());
    }

    #[test]
    fn skeleton_examples() {
        let solid = make_complex(&[s(&[0, 1, 2])], 3).unwrap();
        let hollow = make_complex(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 3).unwrap();
        assert_eq!(solid.skeleton(1), hollow);
        assert_eq!(solid.skeleton(5), solid);
        let tetra = make_complex(&[s(&[0, 1, 2, 3])], 4).unwrap();
        assert_eq!(tetra.skeleton(2).f_vector(), FVector(vec![4, 6, 4]));
    }

    #[test]
    fn clique_complex_examples() {
        let k3 = make_complex(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 3).unwrap();
        let solid = make_complex(&[s(&[0, 1, 2])], 3).unwrap();
        assert_eq!(clique_complex(&k3).unwrap(), solid);

        let path = make_complex(&[s(&[0, 1]), s(&[1, 2])], 3).unwrap();
        assert_eq!(clique_complex(&path).unwrap(), path);

        // Brute-force oracle for K4: every vertex subset is a clique.
        let k4_edges: Vec<Simplex> = (0..4u32)
            .flat_map(|a| ((a + 1)..4).map(move |b| Simplex::new(vec![a, b]).unwrap()))
            .collect();
        let k4 = make_complex(&k4_edges, 4).unwrap();
        let cl = clique_complex(&k4).unwrap();
        assert_eq!(cl.f_vector(), FVector(vec![4, 6, 4, 1]));
    }

    #[test]
    fn pure_dimensionalize_examples() {
        let edge = make_complex(&[s(&[0, 1])], 2).unwrap();
        let p = pure_dimensionalize(&edge, 1).unwrap();
        assert_eq!(p.complex, edge);
        assert!(p.cone_vertices.is_empty());

        let solid = make_complex(&[s(&[0, 1, 2])], 3).unwrap();
        let p = pure_dimensionalize(&solid, 2).unwrap();
        assert_eq!(p.complex, solid);

        let hollow = make_complex(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 3).unwrap();
        let p = pure_dimensionalize(&hollow, 2).unwrap();
        assert_eq!(p.cone_vertices.len(), 3);
        assert!(p.complex.is_pure(2));
        assert_eq!(p.complex.f_vector(), FVector(vec![6, 9, 3]));

        let low = make_complex(&[s(&[0])], 1).unwrap();
        assert!(pure_dimensionalize(&low, 2).is_err());
    }

    #[test]
    fn pure_dimensionalize_drops_stray_low_simplices() {
        // An isolated vertex below D−1 is not generated by X_D ∪ cones.
        let x = make_complex(&[s(&[0, 1, 2]), s(&[4])], 5).unwrap();
        let p = pure_dimensionalize(&x, 2).unwrap();
        assert!(!p.complex.contains(&s(&[4])));
        assert!(p.complex.is_pure(2));
    }

    #[test]
    fn text_round_trip() {
        let x = make_complex(&[s(&[0, 1, 2]), s(&[2, 3]), s(&[4])], 6).unwrap();
        let y = from_text(&to_text(&x)).unwrap();
        assert_eq!(x, y);
        let empty = SimplicialComplex::empty(4);
        assert_eq!(from_text(&to_text(&empty)).unwrap(), empty);
    }

    #[test]
    fn downward_closure_always_holds() {
        // every facet of every simplex is present
        let x = make_complex(&[s(&[0, 2, 4, 6]), s(&[1, 3, 5]), s(&[0, 7])], 8).unwrap();
        for k in 1..=x.dim() {
            for simplex in x.simplices(k) {
                for f in simplex.facets() {
                    assert!(x.contains(&f));
                }
            }
        }
    }
}
