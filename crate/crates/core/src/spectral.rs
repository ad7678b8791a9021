//! Averaging-matrix Laplacian spectra of graphs and the link-spectral upper
//! bound on Betti numbers.
//!
//! The Laplacian is `𝓛[G] = I − A[G]` where `A[G]` is the row-stochastic
//! averaging matrix (isolated vertices carry a self-loop). Its spectrum on the
//! non-isolated part equals that of the symmetric `I − D^{−1/2} W D^{−1/2}`,
//! which is what we hand to the eigensolver; each isolated vertex contributes
//! one zero eigenvalue directly.

use std::collections::HashMap;
use std::sync::Mutex;

use nalgebra::DMatrix;

use crate::complex::{Simplex, SimplicialComplex};
use crate::homology::{betti, BettiMode};
use crate::rng;
use crate::{Error, Result};

/// Comparison tolerance for eigenvalue counts (`γ`, zero multiplicity).
pub const EIG_TOL: f64 = 1e-9;

/// Hard cap on the closed-walk enumeration budget.
pub const WALK_BUDGET_L: u32 = 4;

/// Sorted Laplacian spectrum of a graph.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// All eigenvalues with multiplicity, ascending.
    pub eigenvalues: Vec<f64>,
}

impl SpectrumReport {
    /// Spectral gap `λ_2`; zero for the empty graph and single vertices.
    pub fn lambda2(&self) -> f64 {
        if self.eigenvalues.len() < 2 {
            0.0
        } else {
            self.eigenvalues[1]
        }
    }

    /// `γ(G;α)`: eigenvalues ≤ α (within tolerance), minus one. Zero on the
    /// empty graph.
    pub fn gamma(&self, alpha: f64) -> usize {
        if self.eigenvalues.is_empty() {
            return 0;
        }
        let count = self
            .eigenvalues
            .iter()
            .filter(|&&l| l <= alpha + EIG_TOL)
            .count();
        count.saturating_sub(1)
    }

    /// Multiplicity of the zero eigenvalue, i.e. the number of components.
    pub fn zero_multiplicity(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| l.abs() <= EIG_TOL).count()
    }
}

fn eigenvalues_from_adjacency(n: usize, neighbors: &[Vec<usize>]) -> Vec<f64> {
    let mut eigenvalues = Vec::with_capacity(n);
    let active: Vec<usize> = (0..n).filter(|&v| !neighbors[v].is_empty()).collect();
    // isolated vertices: a_vv = 1, so 𝓛 contributes an exact zero each
    eigenvalues.extend(std::iter::repeat(0.0).take(n - active.len()));
    if !active.is_empty() {
        let pos: HashMap<usize, usize> = active.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let m = active.len();
        let mut b = DMatrix::<f64>::zeros(m, m);
        for (i, &v) in active.iter().enumerate() {
            b[(i, i)] = 1.0;
            let dv = neighbors[v].len() as f64;
            for &w in &neighbors[v] {
                let j = pos[&w];
                let dw = neighbors[w].len() as f64;
                b[(i, j)] = -1.0 / (dv * dw).sqrt();
            }
        }
        let eig = b.symmetric_eigenvalues();
        eigenvalues.extend(eig.iter().copied());
    }
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigenvalues
}

/// Full Laplacian spectrum of a graph given as a complex of dimension ≤ 1.
pub fn laplacian_spectrum(g: &SimplicialComplex) -> Result<SpectrumReport> {
    if g.dim() > 1 {
        return Err(Error::Domain(format!(
            "laplacian_spectrum input must be a graph, got dimension {}",
            g.dim()
        )));
    }
    let vertices: Vec<u32> = g.simplices(0).iter().map(|s| s.vertices()[0]).collect();
    let pos: HashMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut neighbors = vec![Vec::new(); vertices.len()];
    for e in g.simplices(1) {
        let (a, b) = (pos[&e.vertices()[0]], pos[&e.vertices()[1]]);
        neighbors[a].push(b);
        neighbors[b].push(a);
    }
    Ok(SpectrumReport { eigenvalues: eigenvalues_from_adjacency(vertices.len(), &neighbors) })
}

/// `γ(G;α)` for a graph complex.
pub fn gamma_count(g: &SimplicialComplex, alpha: f64) -> Result<usize> {
    if alpha < 0.0 {
        return Err(Error::Domain("gamma_count needs α ≥ 0".into()));
    }
    Ok(laplacian_spectrum(g)?.gamma(alpha))
}

/// The link-spectral upper bound on `β_{D−1}` together with its per-simplex
/// breakdown.
#[derive(Debug, Clone)]
pub struct BettiUpperBound {
    pub bound: usize,
    /// `(τ, γ(lk(τ)^{(1)}; 1−1/D))` for every (D−2)-simplex τ.
    pub per_tau: Vec<(Simplex, usize)>,
}

fn tau_range(x: &SimplicialComplex, d: i32) -> Vec<Simplex> {
    if d == 1 {
        vec![Simplex::empty()]
    } else {
        x.simplices(d - 2).to_vec()
    }
}

/// Evaluates `Σ_{τ ∈ X_{D−2}} γ(lk_X(τ)^{(1)}; 1 − D^{−1})`, an upper bound
/// for `β_{D−1}(X)`. Vacuously zero when `X_{D−2}` is empty.
pub fn betti_upper_bound(x: &SimplicialComplex, d: i32) -> Result<BettiUpperBound> {
    if d < 1 {
        return Err(Error::Domain("betti_upper_bound needs D ≥ 1".into()));
    }
    let alpha = 1.0 - 1.0 / f64::from(d);
    let mut per_tau = Vec::new();
    let mut bound = 0usize;
    for tau in tau_range(x, d) {
        let link = x.link(&tau)?;
        let gamma = laplacian_spectrum(&link.skeleton(1))?.gamma(alpha);
        bound += gamma;
        per_tau.push((tau, gamma));
    }
    Ok(BettiUpperBound { bound, per_tau })
}

/// Spectral-gap sufficient condition for `β_{D−1}(X) = 0`: true iff
/// `λ_2[lk_X(τ)^{(1)}] > 1 − D^{−1}` for every (D−2)-simplex τ.
pub fn vanishing_check(x: &SimplicialComplex, d: i32) -> Result<bool> {
    if d < 1 {
        return Err(Error::Domain("vanishing_check needs D ≥ 1".into()));
    }
    let alpha = 1.0 - 1.0 / f64::from(d);
    for tau in tau_range(x, d) {
        let link = x.link(&tau)?;
        let lambda2 = laplacian_spectrum(&link.skeleton(1))?.lambda2();
        if lambda2 <= alpha + EIG_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `w_{2l}^{v,e}`: closed walks of length 2l on v unlabeled vertices using
/// exactly e distinct edges.
///
/// Enumerates one canonical representative per vertex-labeling class
/// (vertices numbered in first-appearance order), so no division is needed;
/// the result equals `#W_{2l}^{v,e}(K_v)/v!` exactly.
pub fn closed_walk_counts(l: u32, v: u32, e: u32) -> Result<u64> {
    if l == 0 || l > WALK_BUDGET_L {
        return Err(Error::ResourceBudget(format!(
            "closed-walk enumeration capped at l ≤ {WALK_BUDGET_L}, got {l}"
        )));
    }
    if v == 0 || e == 0 || v > 2 * l || e > 2 * l {
        return Err(Error::Domain(format!(
            "closed_walk_counts needs 1 ≤ v,e ≤ 2l, got v={v} e={e} l={l}"
        )));
    }
    Ok(walk_table(l, v).get(&e).copied().unwrap_or(0))
}

static WALK_CACHE: Mutex<Option<HashMap<(u32, u32), HashMap<u32, u64>>>> = Mutex::new(None);

fn walk_table(l: u32, v: u32) -> HashMap<u32, u64> {
    let mut guard = WALK_CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(t) = cache.get(&(l, v)) {
        return t.clone();
    }
    let mut by_edges = HashMap::new();
    let mut walk = vec![0u32];
    enumerate_walks(2 * l as usize, v, &mut walk, 1, 0u64, &mut by_edges);
    cache.insert((l, v), by_edges.clone());
    by_edges
}

fn edge_bit(a: u32, b: u32) -> u64 {
    let (lo, hi) = (a.min(b), a.max(b));
    1u64 << (hi * hi.wrapping_sub(1) / 2 + lo)
}

fn enumerate_walks(
    len: usize,
    v_target: u32,
    walk: &mut Vec<u32>,
    used: u32,
    edges: u64,
    out: &mut HashMap<u32, u64>,
) {
    let steps_left = len + 1 - walk.len();
    if used + (steps_left as u32) < v_target {
        return; // cannot reach v distinct vertices any more
    }
    if steps_left == 0 {
        if used == v_target && *walk.last().unwrap() == 0 {
            *out.entry(edges.count_ones()).or_insert(0) += 1;
        }
        return;
    }
    let current = *walk.last().unwrap();
    // existing vertices (closing step must land on 0)
    let candidates: u32 = if steps_left == 1 { 1 } else { used };
    for next in 0..candidates {
        if next == current {
            continue;
        }
        walk.push(next);
        enumerate_walks(len, v_target, walk, used, edges | edge_bit(current, next), out);
        walk.pop();
    }
    // a fresh vertex, numbered in first-appearance order
    if steps_left > 1 && used < v_target {
        let next = used;
        walk.push(next);
        enumerate_walks(len, v_target, walk, used + 1, edges | edge_bit(current, next), out);
        walk.pop();
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Moment-method bound on the expected number of averaging-matrix eigenvalues
/// ≥ α for the Erdős–Rényi graph `G(n,p)`.
pub fn er_eigencount_bound(n: usize, p: f64, alpha: f64, l: u32) -> Result<f64> {
    if n < 2 * l as usize {
        return Err(Error::Domain(format!(
            "er_eigencount_bound needs n ≥ 2l, got n={n} l={l}"
        )));
    }
    if !(p > 0.0 && p <= 1.0) || alpha <= 0.0 {
        return Err(Error::Domain("er_eigencount_bound needs p ∈ (0,1], α > 0".into()));
    }
    let two_l = 2 * l;
    let mut walk_sum = 0.0;
    for v in 1..=two_l {
        for e in 1..=two_l {
            if e + 1 < v {
                continue; // w vanishes below the tree bound
            }
            let w = closed_walk_counts(l, v, e)? as f64;
            walk_sum += w * (n as f64).powi(v as i32) * p.powi(e as i32);
        }
    }
    let denom = alpha.powi(two_l as i32)
        * ((n - 2 * l as usize + 1) as f64).powi(two_l as i32)
        * p.powi(two_l as i32);
    let first = factorial(two_l) / denom * walk_sum;
    let second = n as f64 * (1.0 - p).powi(n as i32 - 1) / alpha.powi(two_l as i32);
    Ok(first + second)
}

/// Samples `G(n,p)` as neighbor lists; all n vertices are present.
pub fn sample_er_neighbors(n: usize, p: f64, seed: u64) -> Vec<Vec<usize>> {
    let mut neighbors = vec![Vec::new(); n];
    for a in 0..n as u32 {
        for b in (a + 1)..n as u32 {
            if rng::uniform(seed, rng::simplex_stream(&[a, b])) < p {
                neighbors[a as usize].push(b as usize);
                neighbors[b as usize].push(a as usize);
            }
        }
    }
    neighbors
}

/// Laplacian spectrum of a sampled `G(n,p)` instance.
pub fn er_laplacian_spectrum(n: usize, p: f64, seed: u64) -> SpectrumReport {
    let neighbors = sample_er_neighbors(n, p, seed);
    SpectrumReport { eigenvalues: eigenvalues_from_adjacency(n, &neighbors) }
}

/// Empirical frequency of `λ_2[G(n,p)] > 1 − ε` over the given trials.
/// Purely a diagnostic probe.
pub fn spectral_gap_probe(n: usize, p: f64, eps: f64, trials: u32, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Domain("spectral_gap_probe needs trials ≥ 1".into()));
    }
    let mut hits = 0u32;
    for t in 0..trials {
        let report = er_laplacian_spectrum(n, p, rng::child_seed(seed, u64::from(t)));
        if report.lambda2() > 1.0 - eps {
            hits += 1;
        }
    }
    Ok(f64::from(hits) / f64::from(trials))
}

/// Outcome of [`audit_betti_bound`] on a single instance.
#[derive(Debug, Clone, Copy)]
pub struct BoundAudit {
    pub beta: usize,
    pub bound: usize,
    pub vanishing: bool,
    pub bound_ok: bool,
    pub vanishing_ok: bool,
}

/// Audits the link-spectral bound on one complex: the bound must dominate
/// `β_{D−1}`, and when the gap condition holds `β_{D−1}` must vanish.
pub fn audit_betti_bound(x: &SimplicialComplex, d: i32, mode: BettiMode) -> Result<BoundAudit> {
    let beta = betti(x, d - 1, mode);
    let bound = betti_upper_bound(x, d)?.bound;
    let vanishing = vanishing_check(x, d)?;
    Ok(BoundAudit {
        beta,
        bound,
        vanishing,
        bound_ok: beta <= bound,
        vanishing_ok: !vanishing || beta == 0,
    })
}
