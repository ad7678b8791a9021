//! Weighted cochain spaces on pure D-dimensional complexes.
//!
//! For a pure D-dimensional complex, `m(σ)` counts the D-simplices containing
//! σ (with `m(∅) = #X_D`). Cochains live on ascending-vertex representatives;
//! summing the paper inner product over all `(k+1)!` orderings of a simplex
//! cancels its `1/(k+1)!` prefactor, so on representatives
//! `(φ,ψ) = Σ_σ m(σ)φ(σ)ψ(σ)`. Rescaling coordinates by `sqrt(m(σ))` turns
//! every Laplacian into an ordinary symmetric matrix with the same spectrum.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::complex::{Simplex, SimplicialComplex};
use crate::{Error, Result};

/// Eigenvalues below this count as zero when reading Betti numbers off a
/// Laplacian kernel.
pub const HARMONIC_TOL: f64 = 1e-8;

/// A cochain of degree `k`, stored on the ascending representatives of the
/// k-simplices (a single scalar for `k = −1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub k: i32,
    pub values: Vec<f64>,
}

impl Cochain {
    pub fn zeros(k: i32, len: usize) -> Self {
        Self { k, values: vec![0.0; len] }
    }

    pub fn scalar(value: f64) -> Self {
        Self { k: -1, values: vec![value] }
    }
}

/// Sorts a tuple and reports the permutation sign, or `None` on repeats.
pub fn sort_sign(tuple: &[u32]) -> Option<(Vec<u32>, f64)> {
    let mut v = tuple.to_vec();
    let mut sign = 1.0;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            match v[j].cmp(&v[i]) {
                std::cmp::Ordering::Less => {
                    v.swap(i, j);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    Some((v, sign))
}

/// A pure D-dimensional complex with its simplex weights and index maps.
#[derive(Debug, Clone)]
pub struct WeightedCochainSpace {
    complex: SimplicialComplex,
    d: i32,
    m: HashMap<Simplex, usize>,
    pos: Vec<HashMap<Simplex, usize>>,
}

impl WeightedCochainSpace {
    /// Builds the space; errors unless the complex is pure D-dimensional.
    pub fn new(complex: SimplicialComplex, d: i32) -> Result<Self> {
        if d < 1 {
            return Err(Error::Domain("cochain space needs D ≥ 1".into()));
        }
        if !complex.is_pure(d) {
            return Err(Error::Domain(format!(
                "cochain space needs a pure {d}-dimensional complex"
            )));
        }
        let mut m: HashMap<Simplex, usize> = HashMap::new();
        for top in complex.simplices(d) {
            let verts = top.vertices();
            for mask in 1u32..(1 << verts.len()) {
                let sub: Vec<u32> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                *m.entry(Simplex::new(sub).unwrap()).or_insert(0) += 1;
            }
        }
        let pos = (0..=d)
            .map(|k| {
                complex
                    .simplices(k)
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Ok(Self { complex, d, m, pos })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    /// Number of D-simplices containing `s`; `m(∅) = #X_D`.
    pub fn m(&self, s: &Simplex) -> usize {
        if s.is_empty() {
            self.complex.count(self.d)
        } else {
            self.m.get(s).copied().unwrap_or(0)
        }
    }

    pub fn dim_k(&self, k: i32) -> usize {
        if k == -1 {
            1
        } else {
            self.complex.count(k)
        }
    }

    fn index(&self, k: i32, s: &Simplex) -> Option<usize> {
        self.pos.get(k as usize)?.get(s).copied()
    }

    /// Evaluates a cochain on an arbitrarily ordered tuple (alternating).
    pub fn eval_ordered(&self, phi: &Cochain, tuple: &[u32]) -> f64 {
        debug_assert_eq!(tuple.len() as i32 - 1, phi.k);
        if phi.k == -1 {
            return phi.values[0];
        }
        let Some((sorted, sign)) = sort_sign(tuple) else {
            return 0.0;
        };
        match self.index(phi.k, &Simplex::new(sorted).unwrap()) {
            Some(i) => sign * phi.values[i],
            None => 0.0,
        }
    }

    /// Verifies `Σ_{σ ⊃ τ, dim σ = k+1} m(σ) = (D−k)·m(τ)` for every τ of
    /// every dimension (equivalently the ordered form with its (k+2)! factor).
    pub fn weight_identity_holds(&self) -> bool {
        for k in -1..self.d {
            let taus: Vec<Simplex> = if k == -1 {
                vec![Simplex::empty()]
            } else {
                self.complex.simplices(k).to_vec()
            };
            for tau in taus {
                let sum: usize = self
                    .complex
                    .simplices(k + 1)
                    .iter()
                    .filter(|s| s.contains(&tau))
                    .map(|s| self.m(s))
                    .sum();
                if sum != (self.d - k) as usize * self.m(&tau) {
                    return false;
                }
            }
        }
        true
    }
}

/// Paper inner product: `Σ_σ m(σ)φ(σ)ψ(σ)` on representatives for `k ≥ 0`,
/// `#X_D·φψ` for `k = −1`.
pub fn inner_product(space: &WeightedCochainSpace, phi: &Cochain, psi: &Cochain) -> Result<f64> {
    if phi.k != psi.k || phi.values.len() != psi.values.len() {
        return Err(Error::DimensionMismatch(format!(
            "inner product of degrees {} and {}",
            phi.k, psi.k
        )));
    }
    if phi.k == -1 {
        return Ok(space.complex.count(space.d) as f64 * phi.values[0] * psi.values[0]);
    }
    Ok(space
        .complex
        .simplices(phi.k)
        .iter()
        .zip(phi.values.iter().zip(&psi.values))
        .map(|(s, (a, b))| space.m(s) as f64 * a * b)
        .sum())
}

pub fn norm_squared(space: &WeightedCochainSpace, phi: &Cochain) -> f64 {
    inner_product(space, phi, phi).expect("same cochain")
}

/// Coboundary `d_k: C^k → C^{k+1}`; `d_{−1}` is the constant extension.
pub fn coboundary(space: &WeightedCochainSpace, phi: &Cochain) -> Cochain {
    let k = phi.k;
    if k >= space.d {
        return Cochain::zeros(k + 1, 0);
    }
    if k == -1 {
        return Cochain { k: 0, values: vec![phi.values[0]; space.dim_k(0)] };
    }
    let values = space
        .complex
        .simplices(k + 1)
        .iter()
        .map(|t| {
            t.facets()
                .enumerate()
                .map(|(i, f)| {
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    sign * phi.values[space.index(k, &f).unwrap()]
                })
                .sum()
        })
        .collect();
    Cochain { k: k + 1, values }
}

/// Adjoint `δ_{k+1}: C^{k+1} → C^k` of `d_k` with respect to the weighted
/// inner products: `δ_{k+1}ψ(σ) = Σ_v m(vσ)/m(σ)·ψ(vσ)`.
pub fn adjoint(space: &WeightedCochainSpace, psi: &Cochain) -> Result<Cochain> {
    if psi.k < 0 {
        return Err(Error::Domain("adjoint needs a cochain of degree ≥ 0".into()));
    }
    let k = psi.k - 1;
    if k == -1 {
        let total: f64 = space
            .complex
            .simplices(0)
            .iter()
            .zip(&psi.values)
            .map(|(v, x)| space.m(v) as f64 * x)
            .sum();
        return Ok(Cochain::scalar(total / space.complex.count(space.d) as f64));
    }
    let values = space
        .complex
        .simplices(k)
        .iter()
        .map(|sigma| {
            let m_sigma = space.m(sigma) as f64;
            let mut acc = 0.0;
            for v in space.complex.simplices(0) {
                let v_id = v.vertices()[0];
                if sigma.vertices().contains(&v_id) {
                    continue;
                }
                let mut tuple = Vec::with_capacity(sigma.vertices().len() + 1);
                tuple.push(v_id);
                tuple.extend_from_slice(sigma.vertices());
                let (sorted, sign) = sort_sign(&tuple).unwrap();
                let union = Simplex::new(sorted).unwrap();
                if let Some(idx) = space.index(k + 1, &union) {
                    acc += space.m(&union) as f64 / m_sigma * sign * psi.values[idx];
                }
            }
            acc
        })
        .collect();
    Ok(Cochain { k, values })
}

/// Matrix of `d_k` in the orthonormal coordinates `u_σ = sqrt(m(σ))·φ(σ)`
/// (degree −1 uses `sqrt(#X_D)`), so adjoints become plain transposes.
pub fn coboundary_matrix_orthonormal(space: &WeightedCochainSpace, k: i32) -> DMatrix<f64> {
    let rows = if k + 1 > space.d { 0 } else { space.dim_k(k + 1) };
    let cols = space.dim_k(k);
    let mut mat = DMatrix::<f64>::zeros(rows, cols);
    if rows == 0 {
        return mat;
    }
    if k == -1 {
        let root = (space.complex.count(space.d) as f64).sqrt();
        for (i, v) in space.complex.simplices(0).iter().enumerate() {
            mat[(i, 0)] = (space.m(v) as f64).sqrt() / root;
        }
        return mat;
    }
    for (r, t) in space.complex.simplices(k + 1).iter().enumerate() {
        let mt = (space.m(t) as f64).sqrt();
        for (i, f) in t.facets().enumerate() {
            let c = space.index(k, &f).unwrap();
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            mat[(r, c)] = sign * mt / (space.m(&f) as f64).sqrt();
        }
    }
    mat
}

/// Laplacian `L_k = δ_{k+1}d_k + d_{k−1}δ_k` as a symmetric matrix in the
/// orthonormal basis, together with its sorted spectrum.
pub fn laplacian_matrix(space: &WeightedCochainSpace, k: i32) -> Result<(DMatrix<f64>, Vec<f64>)> {
    if !(0..=space.d).contains(&k) {
        return Err(Error::Domain(format!("laplacian_matrix needs 0 ≤ k ≤ D, got {k}")));
    }
    let up = coboundary_matrix_orthonormal(space, k);
    let down = coboundary_matrix_orthonormal(space, k - 1);
    let l = up.transpose() * &up + &down * down.transpose();
    let mut eig: Vec<f64> = l.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok((l, eig))
}

/// Betti number as the kernel dimension of `L_k` (eigenvalues below
/// [`HARMONIC_TOL`]).
pub fn harmonic_betti(space: &WeightedCochainSpace, k: i32) -> Result<usize> {
    let (_, eig) = laplacian_matrix(space, k)?;
    Ok(eig.iter().filter(|&&l| l < HARMONIC_TOL).count())
}

/// The localization `φ_τ(η) = φ(τη)` of a (D−1)-cochain at an ordered
/// (D−2)-simplex, as a 0-cochain on the link of τ with its inherited weights.
#[derive(Debug, Clone)]
pub struct LocalCochain {
    /// Link vertices, ascending.
    pub vertices: Vec<u32>,
    /// `φ_τ` on those vertices.
    pub values: Vec<f64>,
    /// `m_τ(v) = m(τ ∪ {v})` per vertex.
    pub m_vertex: Vec<usize>,
    /// Link edges as index pairs into `vertices`, with `m_τ(edge)`.
    pub edges: Vec<(usize, usize, usize)>,
    /// `m(τ)` of the base simplex.
    pub m_tau: usize,
}

impl LocalCochain {
    /// `‖φ_τ‖²_τ = Σ_v m_τ(v)·φ_τ(v)²`.
    pub fn norm_squared(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.m_vertex)
            .map(|(x, &m)| m as f64 * x * x)
            .sum()
    }

    /// `‖d_0^τ φ_τ‖²_τ` over the link edges.
    pub fn coboundary_norm_squared(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(a, b, m)| {
                let diff = self.values[b] - self.values[a];
                m as f64 * diff * diff
            })
            .sum()
    }

    /// `‖π_1^τ φ_τ‖²_τ`: squared norm of the projection onto constants.
    pub fn constant_projection_norm_squared(&self) -> f64 {
        let weighted_sum: f64 = self
            .values
            .iter()
            .zip(&self.m_vertex)
            .map(|(x, &m)| m as f64 * x)
            .sum();
        let total: f64 = self.m_vertex.iter().map(|&m| m as f64).sum();
        if total == 0.0 {
            0.0
        } else {
            weighted_sum * weighted_sum / total
        }
    }
}

/// Localizes `phi ∈ C^{D−1}(X)` at the ordered (D−2)-simplex `tau`.
pub fn localize(space: &WeightedCochainSpace, phi: &Cochain, tau: &[u32]) -> Result<LocalCochain> {
    if phi.k != space.d - 1 {
        return Err(Error::DimensionMismatch(format!(
            "localize needs a (D−1)-cochain, got degree {}",
            phi.k
        )));
    }
    let (sorted, _) = sort_sign(tau)
        .ok_or_else(|| Error::MalformedSimplex(format!("repeated vertex in {tau:?}")))?;
    let tau_simplex = Simplex::new(sorted)?;
    if !tau_simplex.is_empty() && !space.complex.contains(&tau_simplex) {
        return Err(Error::Domain(format!("{tau:?} is not a simplex of the complex")));
    }
    let link = space.complex.link(&tau_simplex)?;
    let vertices: Vec<u32> = link.simplices(0).iter().map(|s| s.vertices()[0]).collect();
    let vertex_pos: HashMap<u32, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut values = Vec::with_capacity(vertices.len());
    let mut m_vertex = Vec::with_capacity(vertices.len());
    for &v in &vertices {
        let mut tuple = tau.to_vec();
        tuple.push(v);
        values.push(space.eval_ordered(phi, &tuple));
        let union = tau_simplex.union(&Simplex::new(vec![v])?)?;
        m_vertex.push(space.m(&union));
    }
    let edges = link
        .simplices(1)
        .iter()
        .map(|e| {
            let a = vertex_pos[&e.vertices()[0]];
            let b = vertex_pos[&e.vertices()[1]];
            let union = tau_simplex.union(e).unwrap();
            (a, b, space.m(&union))
        })
        .collect();
    Ok(LocalCochain {
        vertices,
        values,
        m_vertex,
        edges,
        m_tau: space.m(&tau_simplex),
    })
}

/// Residuals of the three localization identities for one cochain:
/// `D·‖φ‖² = Σ_τ ‖φ_τ‖²`, the coboundary-norm identity, and the
/// constant-projection formula `‖π_1^τφ_τ‖² = (m(τ)/2)((δ_{D−1}φ)(τ))²`
/// (the sums over ordered τ collapse onto ascending representatives).
pub fn localization_residuals(space: &WeightedCochainSpace, phi: &Cochain) -> Result<[f64; 3]> {
    let d = space.d;
    let taus: Vec<Simplex> = if d == 1 {
        vec![Simplex::empty()]
    } else {
        space.complex.simplices(d - 2).to_vec()
    };
    let delta_phi = adjoint(space, phi)?;
    let mut sum_norm = 0.0;
    let mut sum_codiff = 0.0;
    let mut max_proj_residual: f64 = 0.0;
    for tau in &taus {
        let local = localize(space, phi, tau.vertices())?;
        sum_norm += local.norm_squared();
        sum_codiff +=
            local.coboundary_norm_squared() - (1.0 - 1.0 / f64::from(d)) * local.norm_squared();
        let lhs = local.constant_projection_norm_squared();
        let delta_at_tau = if tau.is_empty() {
            delta_phi.values[0]
        } else {
            space.eval_ordered(&delta_phi, tau.vertices())
        };
        let rhs = local.m_tau as f64 / 2.0 * delta_at_tau * delta_at_tau;
        max_proj_residual = max_proj_residual.max((lhs - rhs).abs());
    }
    let norm = norm_squared(space, phi);
    let d_norm = norm_squared(space, &coboundary(space, phi));
    let r1 = (f64::from(d) * norm - sum_norm).abs();
    let r2 = (d_norm - sum_codiff).abs();
    Ok([r1, r2, max_proj_residual])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::make_complex;
    use crate::homology::{betti, BettiMode};
    use crate::rng;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn space(maximal: &[Simplex], n: usize, d: i32) -> WeightedCochainSpace {
        WeightedCochainSpace::new(make_complex(maximal, n).unwrap(), d).unwrap()
    }

    fn random_cochain(space: &WeightedCochainSpace, k: i32, seed: u64) -> Cochain {
        let values = (0..space.dim_k(k))
            .map(|i| rng::uniform(seed, i as u64) * 2.0 - 1.0)
            .collect();
        Cochain { k, values }
    }

    fn all_subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for rest in all_subsets(n, k - 1) {
                if rest.iter().all(|&r| r > first) {
                    let mut v = vec![first];
                    v.extend(rest);
                    out.push(v);
                }
            }
        }
        out
    }

    fn random_pure(seed: u64, n: u32, d: i32) -> WeightedCochainSpace {
        let mut picked = Vec::new();
        for (idx, sub) in all_subsets(n, d as usize + 1).into_iter().enumerate() {
            if rng::uniform(seed, idx as u64) < 0.4 {
                picked.push(Simplex::new(sub).unwrap());
            }
        }
        if picked.is_empty() {
            picked.push(Simplex::new((0..=d as u32).collect()).unwrap());
        }
        WeightedCochainSpace::new(make_complex(&picked, n as usize).unwrap(), d).unwrap()
    }

    #[test]
    fn rejects_non_pure_input() {
        let x = make_complex(&[s(&[0, 1, 2]), s(&[3, 4])], 5).unwrap();
        assert!(WeightedCochainSpace::new(x, 2).is_err());
    }

    #[test]
    fn weight_identity_on_random_spaces() {
        for seed in 0..20 {
            assert!(random_pure(seed, 6, 2).weight_identity_holds(), "seed {seed}");
        }
        for seed in 20..30 {
            assert!(random_pure(seed, 6, 3).weight_identity_holds(), "seed {seed}");
        }
    }

    #[test]
    fn inner_product_examples() {
        // pure 2-complex with a lone triangle: indicator norm² = m(σ) = 1
        let sp = space(&[s(&[0, 1, 2]), s(&[2, 3, 4])], 5, 2);
        let mut phi = Cochain::zeros(2, sp.dim_k(2));
        phi.values[0] = 1.0;
        assert_eq!(norm_squared(&sp, &phi), sp.m(&s(&[0, 1, 2])) as f64);

        let zero = Cochain::zeros(2, sp.dim_k(2));
        assert_eq!(norm_squared(&sp, &zero), 0.0);

        // degree −1: (φ,ψ) = #X_D·φψ
        let a = Cochain::scalar(3.0);
        let b = Cochain::scalar(0.5);
        assert_eq!(inner_product(&sp, &a, &b).unwrap(), 2.0 * 3.0 * 0.5);

        let mismatched = Cochain::zeros(1, sp.dim_k(1));
        assert!(inner_product(&sp, &phi, &mismatched).is_err());
    }

    #[test]
    fn coboundary_of_constant_and_edges() {
        let sp = space(&[s(&[0, 1])], 2, 1);
        let d_const = coboundary(&sp, &Cochain::scalar(2.5));
        assert_eq!(d_const.values, vec![2.5, 2.5]);

        // d of a 0-cochain on an edge is the difference of endpoint values
        let phi = Cochain { k: 0, values: vec![1.0, 4.0] };
        let d_phi = coboundary(&sp, &phi);
        assert_eq!(d_phi.values, vec![3.0]);
    }

    #[test]
    fn coboundary_squares_to_zero() {
        for seed in 0..10 {
            let sp = random_pure(seed, 7, 2);
            for k in -1..2 {
                let phi = random_cochain(&sp, k, seed * 31 + (k + 2) as u64);
                let dd = coboundary(&sp, &coboundary(&sp, &phi));
                let norm = if dd.values.is_empty() { 0.0 } else { norm_squared(&sp, &dd) };
                assert!(norm < 1e-20, "seed {seed} k {k}: ‖ddφ‖² = {norm}");
            }
        }
    }

    #[test]
    fn adjointness_residual_is_tiny() {
        for seed in 0..10 {
            let sp = random_pure(seed, 6, 2);
            for k in -1..2 {
                let phi = random_cochain(&sp, k, seed * 101 + 7);
                let psi = random_cochain(&sp, k + 1, seed * 101 + 8);
                let lhs = inner_product(&sp, &coboundary(&sp, &phi), &psi).unwrap();
                let rhs = inner_product(&sp, &phi, &adjoint(&sp, &psi).unwrap()).unwrap();
                assert!((lhs - rhs).abs() < 1e-10, "seed {seed} k {k}: {lhs} vs {rhs}");
            }
        }
        // δ of the zero cochain is zero
        let sp = space(&[s(&[0, 1, 2])], 3, 2);
        let z = adjoint(&sp, &Cochain::zeros(2, 1)).unwrap();
        assert!(z.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn up_laplacian_of_graph_is_averaging_laplacian() {
        // pure 1-complex without isolated vertices: L_0^up = 𝓛[G]
        let g = make_complex(&[s(&[0, 1]), s(&[1, 2]), s(&[2, 3]), s(&[0, 2])], 4).unwrap();
        let sp = WeightedCochainSpace::new(g.clone(), 1).unwrap();
        let phi = random_cochain(&sp, 0, 99);
        let up = adjoint(&sp, &coboundary(&sp, &phi)).unwrap();
        // 𝓛[G]φ(v) = φ(v) − (1/deg v)Σ_{u∼v} φ(u)
        for (i, v) in g.simplices(0).iter().enumerate() {
            let vid = v.vertices()[0];
            let neighbors: Vec<u32> = g
                .simplices(1)
                .iter()
                .filter(|e| e.vertices().contains(&vid))
                .map(|e| e.vertices().iter().copied().find(|&u| u != vid).unwrap())
                .collect();
            let avg: f64 = neighbors
                .iter()
                .map(|&u| {
                    let j = g.simplices(0).iter().position(|t| t.vertices()[0] == u).unwrap();
                    phi.values[j]
                })
                .sum::<f64>()
                / neighbors.len() as f64;
            let expected = phi.values[i] - avg;
            assert!((up.values[i] - expected).abs() < 1e-12);
        }
        // and the orthonormal matrix has the same spectrum as 𝓛[G]
        let up_mat = coboundary_matrix_orthonormal(&sp, 0);
        let l_up = up_mat.transpose() * up_mat;
        let mut eig: Vec<f64> = l_up.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let reference = crate::spectral::laplacian_spectrum(&g).unwrap().eigenvalues;
        for (a, b) in eig.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn up_laplacian_matches_explicit_formula_on_full_simplex() {
        // δ_D d_{D−1} on the full simplex: all m = 1
        let d = 2;
        let sp = space(&[s(&[0, 1, 2])], 3, d);
        let phi = random_cochain(&sp, d - 1, 5);
        let up = adjoint(&sp, &coboundary(&sp, &phi)).unwrap();
        for (idx, sigma) in sp.complex().simplices(d - 1).iter().enumerate() {
            let mut expected = f64::from(sp.d() - (d - 1)) * phi.values[idx];
            for v in sp.complex().simplices(0) {
                let vid = v.vertices()[0];
                if sigma.vertices().contains(&vid) {
                    continue;
                }
                let mut vsigma = vec![vid];
                vsigma.extend_from_slice(sigma.vertices());
                let (union, _) = sort_sign(&vsigma).unwrap();
                let union = Simplex::new(union).unwrap();
                if !sp.complex().contains(&union) {
                    continue;
                }
                let m_ratio = sp.m(&union) as f64 / sp.m(sigma) as f64;
                for (i, _) in sigma.vertices().iter().enumerate() {
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    let mut tuple = vec![vid];
                    for (j, &w) in sigma.vertices().iter().enumerate() {
                        if j != i {
                            tuple.push(w);
                        }
                    }
                    expected -= sign * m_ratio * sp.eval_ordered(&phi, &tuple);
                }
            }
            assert!((up.values[idx] - expected).abs() < 1e-12, "σ #{idx}");
        }
    }

    #[test]
    fn laplacian_spectrum_is_nonnegative_with_positive_trace() {
        for seed in 0..6 {
            let sp = random_pure(seed, 6, 2);
            for k in 0..=2 {
                let (l, eig) = laplacian_matrix(&sp, k).unwrap();
                assert!(eig.iter().all(|&x| x > -1e-10));
                if sp.dim_k(k) > 0 {
                    assert!(l.trace() > 0.0);
                }
            }
        }
    }

    #[test]
    fn harmonic_betti_matches_rank_betti_on_fixtures() {
        let hollow = space(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 3, 1);
        assert_eq!(harmonic_betti(&hollow, 0).unwrap(), 0);
        assert_eq!(harmonic_betti(&hollow, 1).unwrap(), 1);

        let tetra_boundary = WeightedCochainSpace::new(
            make_complex(&[s(&[0, 1, 2, 3])], 4).unwrap().skeleton(2),
            2,
        )
        .unwrap();
        assert_eq!(harmonic_betti(&tetra_boundary, 2).unwrap(), 1);

        let solid = space(&[s(&[0, 1, 2])], 3, 2);
        assert_eq!(harmonic_betti(&solid, 1).unwrap(), 0);
    }

    #[test]
    fn harmonic_betti_matches_rank_betti_randomly() {
        for seed in 0..15 {
            let d = 1 + (seed % 3) as i32;
            let sp = random_pure(seed, 6, d);
            for k in 0..=d {
                let harmonic = harmonic_betti(&sp, k).unwrap();
                let rank = betti(sp.complex(), k, BettiMode::ExactRational);
                assert_eq!(harmonic, rank, "seed {seed} d {d} k {k}");
            }
        }
    }

    #[test]
    fn localization_identities() {
        for seed in 0..15 {
            let d = 1 + (seed % 3) as i32;
            let sp = random_pure(seed, 6, d);
            let phi = random_cochain(&sp, d - 1, seed + 1000);
            let [r1, r2, r3] = localization_residuals(&sp, &phi).unwrap();
            assert!(r1 < 1e-10, "seed {seed}: norm identity residual {r1}");
            assert!(r2 < 1e-10, "seed {seed}: coboundary identity residual {r2}");
            assert!(r3 < 1e-10, "seed {seed}: projection identity residual {r3}");
        }
    }

    #[test]
    fn localize_respects_orientation_of_tau() {
        let sp = random_pure(40, 6, 3);
        let phi = random_cochain(&sp, 2, 78);
        let tau = sp.complex().simplices(1)[0].vertices().to_vec();
        let fwd = localize(&sp, &phi, &tau).unwrap();
        let rev: Vec<u32> = tau.iter().rev().copied().collect();
        let bwd = localize(&sp, &phi, &rev).unwrap();
        assert!(!fwd.vertices.is_empty());
        for (a, b) in fwd.values.iter().zip(&bwd.values) {
            assert!((a + b).abs() < 1e-12);
        }
        // absent τ is a domain error
        let missing = s(&[0, 5]);
        if !sp.complex().contains(&missing) {
            assert!(localize(&sp, &phi, missing.vertices()).is_err());
        }
    }

    #[test]
    fn norm_inequality_audit() {
        // ‖φ‖² ≤ (1/λD)(2/(D−1)!·Σ_ordered ‖π_2^τφ_τ‖² + ‖δφ‖² + ‖dφ‖²)
        use nalgebra::SymmetricEigen;
        for seed in 0..8 {
            let d = 2 + (seed % 2) as i32;
            let sp = random_pure(seed + 60, 6, d);
            let phi = random_cochain(&sp, d - 1, seed + 2000);
            let alpha = 1.0 - 1.0 / f64::from(d);
            let mut lambda = f64::INFINITY;
            let mut pi2_sum = 0.0;
            for tau in sp.complex().simplices(d - 2) {
                let local = localize(&sp, &phi, tau.vertices()).unwrap();
                let n = local.vertices.len();
                let deg: Vec<f64> = local.m_vertex.iter().map(|&m| m as f64).collect();
                let mut b = DMatrix::<f64>::zeros(n, n);
                for i in 0..n {
                    b[(i, i)] = 1.0;
                }
                for &(i, j, m) in &local.edges {
                    b[(i, j)] -= m as f64 / (deg[i] * deg[j]).sqrt();
                    b[(j, i)] = b[(i, j)];
                }
                let eig = SymmetricEigen::new(b);
                let u: Vec<f64> = local
                    .values
                    .iter()
                    .zip(&deg)
                    .map(|(x, &m)| x * m.sqrt())
                    .collect();
                let total: f64 = deg.iter().sum();
                let c: Vec<f64> = deg.iter().map(|&m| (m / total).sqrt()).collect();
                let mut small = 0.0;
                for (idx, &l) in eig.eigenvalues.iter().enumerate() {
                    if l <= alpha + 1e-9 {
                        let dot: f64 = (0..n).map(|i| eig.eigenvectors[(i, idx)] * u[i]).sum();
                        small += dot * dot;
                    } else {
                        lambda = lambda.min(l - alpha);
                    }
                }
                let const_dot: f64 = u.iter().zip(&c).map(|(a, b)| a * b).sum();
                pi2_sum += (small - const_dot * const_dot).max(0.0);
            }
            assert!(lambda.is_finite() && lambda > 0.0);
            let lhs = norm_squared(&sp, &phi);
            let delta_norm = norm_squared(&sp, &adjoint(&sp, &phi).unwrap());
            let d_norm = norm_squared(&sp, &coboundary(&sp, &phi));
            // ordered sum = (D−1)! × sum over ascending representatives
            let rhs = (2.0 * pi2_sum + delta_norm + d_norm) / (lambda * f64::from(d));
            assert!(lhs <= rhs + 1e-9, "seed {seed}: {lhs} > {rhs}");
        }
    }
}
