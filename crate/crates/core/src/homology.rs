//! Reduced Betti numbers from boundary-matrix ranks.
//!
//! Ranks over ℝ equal ranks over ℚ, so fraction-free elimination over the
//! integers is the ground truth; elimination over GF(2³¹−1) is the fast path.
//! With the augmentation row on `∂_0`, `β_k = (f_k − rank ∂_k) − rank ∂_{k+1}`
//! and `β_0` comes out as the number of components minus one.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::{Simplex, SimplicialComplex};

/// Modulus of the prime-field backend.
pub const RANK_PRIME: u64 = 2_147_483_647; // 2^31 − 1

/// Which rank backend to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BettiMode {
    ExactRational,
    PrimeField,
}

/// Strategy interface for matrix-rank backends, keyed by name.
pub trait RankBackend: Send + Sync {
    fn name(&self) -> &'static str;
    fn rank(&self, m: &BoundaryMatrix) -> usize;
}

struct RationalBackend;
struct PrimeBackend;

impl RankBackend for RationalBackend {
    fn name(&self) -> &'static str {
        "exact_rational"
    }
    fn rank(&self, m: &BoundaryMatrix) -> usize {
        rank_bareiss(m)
    }
}

impl RankBackend for PrimeBackend {
    fn name(&self) -> &'static str {
        "prime_field"
    }
    fn rank(&self, m: &BoundaryMatrix) -> usize {
        rank_prime(m)
    }
}

/// Looks up a rank backend by its registered name.
pub fn rank_backend(name: &str) -> Option<Box<dyn RankBackend>> {
    match name {
        "exact_rational" => Some(Box::new(RationalBackend)),
        "prime_field" => Some(Box::new(PrimeBackend)),
        _ => None,
    }
}

impl BettiMode {
    pub fn backend(self) -> Box<dyn RankBackend> {
        match self {
            BettiMode::ExactRational => Box::new(RationalBackend),
            BettiMode::PrimeField => Box::new(PrimeBackend),
        }
    }
}

/// Sparse boundary matrix `∂_k`: rows are (k−1)-simplices (one augmentation
/// row for k = 0), columns are k-simplices, entries ±1 under the
/// ascending-vertex sign convention.
#[derive(Debug, Clone)]
pub struct BoundaryMatrix {
    pub k: i32,
    pub rows: usize,
    /// Per column: sorted `(row, sign)` pairs.
    pub columns: Vec<Vec<(usize, i8)>>,
}

/// Builds `∂_k` for `0 ≤ k ≤ dim X + 1`.
pub fn boundary_matrix(x: &SimplicialComplex, k: i32) -> BoundaryMatrix {
    assert!(k >= 0, "boundary_matrix needs k ≥ 0");
    if k == 0 {
        // augmentation to C_{-1}: a single all-ones row
        let columns = vec![vec![(0usize, 1i8)]; x.count(0)];
        return BoundaryMatrix { k, rows: 1, columns };
    }
    let rows_list = x.simplices(k - 1);
    let row_of: HashMap<&Simplex, usize> =
        rows_list.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let columns = x
        .simplices(k)
        .iter()
        .map(|s| {
            let mut col: Vec<(usize, i8)> = s
                .facets()
                .enumerate()
                .map(|(i, f)| {
                    let sign = if i % 2 == 0 { 1i8 } else { -1i8 };
                    (row_of[&f], sign)
                })
                .collect();
            col.sort_unstable_by_key(|&(r, _)| r);
            col
        })
        .collect();
    BoundaryMatrix { k, rows: rows_list.len(), columns }
}

fn rank_bareiss(m: &BoundaryMatrix) -> usize {
    let rows = m.rows;
    let cols = m.columns.len();
    if rows == 0 || cols == 0 {
        return 0;
    }
    // column order by sparsity, then dense fraction-free elimination
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by_key(|&c| m.columns[c].len());
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    for (j, &c) in order.iter().enumerate() {
        for &(r, s) in &m.columns[c] {
            a[r][j] = BigInt::from(s);
        }
    }
    let mut prev = BigInt::one();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows).max_by_key(|&i| {
            if a[i][col].is_zero() {
                None
            } else {
                Some(std::cmp::Reverse(a[i][col].abs()))
            }
        });
        let pivot = match pivot {
            Some(i) if !a[i][col].is_zero() => i,
            _ => continue,
        };
        a.swap(rank, pivot);
        let pivot_row = a[rank].clone();
        for i in (rank + 1)..rows {
            let lead = std::mem::replace(&mut a[i][col], BigInt::zero());
            for j in (col + 1)..cols {
                let num = &pivot_row[col] * &a[i][j] - &lead * &pivot_row[j];
                a[i][j] = num / &prev; // exact by the Sylvester identity
            }
        }
        prev = pivot_row[col].clone();
        rank += 1;
    }
    rank
}

fn rank_prime(m: &BoundaryMatrix) -> usize {
    let mut acc = PrimeRank::new();
    let mut order: Vec<usize> = (0..m.columns.len()).collect();
    order.sort_by_key(|&c| m.columns[c].len());
    for c in order {
        let col: Vec<(u32, u64)> = m.columns[c]
            .iter()
            .map(|&(r, s)| (r as u32, if s >= 0 { 1 } else { RANK_PRIME - 1 }))
            .collect();
        acc.add_column(col);
    }
    acc.rank()
}

/// Incremental column-echelon rank over GF(2³¹−1).
///
/// Columns are reduced against the pivots accumulated so far, so feeding the
/// columns of a growing matrix one at a time maintains its exact rank; this
/// is what the filtration engine leans on.
#[derive(Debug, Default, Clone)]
pub struct PrimeRank {
    basis: Vec<Vec<(u32, u64)>>,
    pivot_of_row: HashMap<u32, usize>,
}

#[inline]
fn p_mul(a: u64, b: u64) -> u64 {
    (a * b) % RANK_PRIME
}

#[inline]
fn p_sub(a: u64, b: u64) -> u64 {
    (a + RANK_PRIME - b) % RANK_PRIME
}

fn p_inv(a: u64) -> u64 {
    // Fermat
    let mut base = a % RANK_PRIME;
    let mut exp = RANK_PRIME - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = p_mul(acc, base);
        }
        base = p_mul(base, base);
        exp >>= 1;
    }
    acc
}

impl PrimeRank {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `col` against the echelon basis; returns whether the rank grew.
    /// Entries must be sorted by row with values in `[1, p−1]`.
    pub fn add_column(&mut self, mut col: Vec<(u32, u64)>) -> bool {
        loop {
            let Some(&(row, val)) = col.first() else {
                return false;
            };
            match self.pivot_of_row.get(&row) {
                Some(&b) => {
                    col = sub_scaled(&col, &self.basis[b], val);
                }
                None => {
                    // normalize pivot to 1
                    let inv = p_inv(val);
                    for e in &mut col {
                        e.1 = p_mul(e.1, inv);
                    }
                    self.pivot_of_row.insert(row, self.basis.len());
                    self.basis.push(col);
                    return true;
                }
            }
        }
    }
}

/// `a − factor·b` for sorted sparse columns with unit-pivot `b`.
fn sub_scaled(a: &[(u32, u64)], b: &[(u32, u64)], factor: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ra, va)), Some(&(rb, vb))) if ra == rb => {
                let v = p_sub(va, p_mul(factor, vb));
                if v != 0 {
                    out.push((ra, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ra, va)), Some(&(rb, _))) if ra < rb => {
                out.push((ra, va));
                i += 1;
            }
            (Some(_), Some(&(rb, vb))) => {
                let v = p_sub(0, p_mul(factor, vb));
                if v != 0 {
                    out.push((rb, v));
                }
                j += 1;
            }
            (Some(&(ra, va)), None) => {
                out.push((ra, va));
                i += 1;
            }
            (None, Some(&(rb, vb))) => {
                let v = p_sub(0, p_mul(factor, vb));
                if v != 0 {
                    out.push((rb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Reduced Betti numbers `β_0..β_kmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn betti(&self, k: i32) -> usize {
        if k < 0 {
            0
        } else {
            self.0.get(k as usize).copied().unwrap_or(0)
        }
    }
}

fn rank_of(x: &SimplicialComplex, k: i32, backend: &dyn RankBackend) -> usize {
    if k < 0 || x.count(k) == 0 {
        return 0;
    }
    if k == 0 {
        return 1; // augmentation row: rank 1 as soon as a vertex exists
    }
    backend.rank(&boundary_matrix(x, k))
}

/// The k-th reduced Betti number. `β_k(∅) = 0` for every k.
pub fn betti(x: &SimplicialComplex, k: i32, mode: BettiMode) -> usize {
    assert!(k >= 0, "betti needs k ≥ 0");
    if x.is_empty() {
        return 0;
    }
    let backend = mode.backend();
    let f_k = x.count(k);
    let r_k = rank_of(x, k, backend.as_ref());
    let r_k1 = rank_of(x, k + 1, backend.as_ref());
    let b = f_k as i64 - r_k as i64 - r_k1 as i64;
    debug_assert!(b >= 0, "negative Betti number");
    b as usize
}

/// Betti numbers for `k = 0..=k_max`, sharing one rank per boundary map.
pub fn betti_all(x: &SimplicialComplex, k_max: i32, mode: BettiMode) -> BettiVector {
    if x.is_empty() {
        return BettiVector(vec![0; (k_max + 1).max(0) as usize]);
    }
    let backend = mode.backend();
    let ranks: Vec<usize> = (0..=(k_max + 1))
        .map(|k| rank_of(x, k, backend.as_ref()))
        .collect();
    let v = (0..=k_max)
        .map(|k| {
            let b =
                x.count(k) as i64 - ranks[k as usize] as i64 - ranks[(k + 1) as usize] as i64;
            debug_assert!(b >= 0);
            b as usize
        })
        .collect();
    BettiVector(v)
}

/// Computes `β_k` in both modes and flags whether they agree.
pub fn betti_checked(x: &SimplicialComplex, k: i32) -> (usize, bool) {
    let exact = betti(x, k, BettiMode::ExactRational);
    let fast = betti(x, k, BettiMode::PrimeField);
    (exact, exact == fast)
}

/// Morse sandwich `f_k − f_{k+1} − f_{k−1} ≤ β_k ≤ f_k`, with `f_{−1} = 1`.
pub fn morse_sandwich_holds(x: &SimplicialComplex, k: i32, beta_k: usize) -> bool {
    let f = x.f_vector();
    let lower = f.f(k) as i64 - f.f(k + 1) as i64 - f.f(k - 1) as i64;
    lower <= beta_k as i64 && beta_k <= f.f(k)
}

/// Reduced Euler–Poincaré identity `Σ(−1)^k β_k = Σ(−1)^k f_k − 1` for
/// nonempty complexes.
pub fn euler_poincare_holds(x: &SimplicialComplex, betti: &BettiVector) -> bool {
    if x.is_empty() {
        return true;
    }
    debug_assert!(betti.0.len() as i32 > x.dim());
    let chi_b: i64 = betti
        .0
        .iter()
        .enumerate()
        .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    let chi_f: i64 = (0..=x.dim())
        .map(|k| {
            let f = x.count(k) as i64;
            if k % 2 == 0 {
                f
            } else {
                -f
            }
        })
        .sum();
    chi_b == chi_f - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::make_complex;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.to_vec()).unwrap()
    }

    fn complete_graph(n: u32) -> SimplicialComplex {
        let edges: Vec<Simplex> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| Simplex::new(vec![a, b]).unwrap()))
            .collect();
        make_complex(&edges, n as usize).unwrap()
    }

    #[test]
    fn boundary_matrix_shapes() {
        let hollow = make_complex(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 3).unwrap();
        let d1 = boundary_matrix(&hollow, 1);
        assert_eq!(d1.rows, 3);
        assert_eq!(d1.columns.len(), 3);
        for col in &d1.columns {
            assert_eq!(col.len(), 2);
            assert_eq!(col[0].1 + col[1].1, 0); // one +1, one −1
        }

        let solid = make_complex(&[s(&[0, 1, 2])], 3).unwrap();
        let d2 = boundary_matrix(&solid, 2);
        assert_eq!(d2.columns.len(), 1);
        let signs: Vec<i8> = d2.columns[0].iter().map(|&(_, s)| s).collect();
        assert_eq!(signs, vec![1, -1, 1]);
    }

    // ∂_k ∘ ∂_{k+1} = 0 as integer matrices
    fn boundary_squares_to_zero(x: &SimplicialComplex, k: i32) -> bool {
        let dk = boundary_matrix(x, k);
        let dk1 = boundary_matrix(x, k + 1);
        for col in &dk1.columns {
            let mut acc = vec![0i64; dk.rows];
            for &(mid, s1) in col {
                for &(r, s2) in &dk.columns[mid] {
                    acc[r] += i64::from(s1) * i64::from(s2);
                }
            }
            if acc.iter().any(|&v| v != 0) {
                return false;
            }
        }
        true
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let x = make_complex(&[s(&[0, 1, 2, 3]), s(&[2, 3, 4]), s(&[4, 5])], 6).unwrap();
        for k in 0..=x.dim() {
            assert!(boundary_squares_to_zero(&x, k), "k = {k}");
        }
    }

    #[test]
    fn betti_examples() {
        let two_edges = make_complex(&[s(&[0, 1]), s(&[2, 3])], 4).unwrap();
        assert_eq!(betti(&two_edges, 0, BettiMode::ExactRational), 1);

        let hollow = make_complex(&[s(&[0, 1]), s(&[1, 2]), s(&[0, 2])], 3).unwrap();
        assert_eq!(betti(&hollow, 1, BettiMode::ExactRational), 1);

        let tetra_boundary = make_complex(&[s(&[0, 1, 2, 3])], 4).unwrap().skeleton(2);
        assert_eq!(betti(&tetra_boundary, 2, BettiMode::PrimeField), 1);
    }

    #[test]
    fn betti_of_complete_graphs_matches_euler_oracle() {
        // graphs: β_1 = E − V + components (independent Euler-formula oracle)
        let k4 = complete_graph(4);
        assert_eq!(betti(&k4, 1, BettiMode::ExactRational), 6 - 4 + 1);
        let k5_skeleton = complete_graph(5);
        assert_eq!(betti(&k5_skeleton, 1, BettiMode::ExactRational), 10 - 5 + 1);
    }

    #[test]
    fn complete_skeleton_betti() {
        // complete (d−1)-skeleton on n vertices has β_{d−1} = C(n−1, d)
        let full = make_complex(&[s(&[0, 1, 2, 3, 4])], 5).unwrap();
        let skel = full.skeleton(1);
        assert_eq!(betti(&skel, 1, BettiMode::ExactRational), 6); // C(4,2)
        let skel2 = full.skeleton(2);
        assert_eq!(betti(&skel2, 2, BettiMode::ExactRational), 4); // C(4,3)
    }

    #[test]
    fn empty_complex_has_zero_betti() {
        let x = SimplicialComplex::empty(3);
        for k in 0..4 {
            assert_eq!(betti(&x, k, BettiMode::ExactRational), 0);
        }
    }

    #[test]
    fn betti_all_matches_per_k_calls() {
        let x = make_complex(
            &[s(&[0, 1, 2]), s(&[1, 2, 3]), s(&[3, 4]), s(&[5, 6]), s(&[0, 4, 6])],
            7,
        )
        .unwrap();
        let all = betti_all(&x, 3, BettiMode::ExactRational);
        for k in 0..=3 {
            assert_eq!(all.betti(k), betti(&x, k, BettiMode::ExactRational));
        }
        assert!(euler_poincare_holds(&x, &all));
        for k in 0..=3 {
            assert!(morse_sandwich_holds(&x, k, all.betti(k)));
        }
    }

    #[test]
    fn solid_triangle_is_acyclic() {
        let solid = make_complex(&[s(&[0, 1, 2])], 3).unwrap();
        assert_eq!(betti_all(&solid, 2, BettiMode::ExactRational), BettiVector(vec![0, 0, 0]));
        let hollow = solid.skeleton(1);
        assert_eq!(betti_all(&hollow, 1, BettiMode::ExactRational), BettiVector(vec![0, 1]));
    }

    #[test]
    fn modes_agree_on_small_random_corpus() {
        // corpus regenerated deterministically; the large 1000-instance run
        // lives in the acceptance suite
        use crate::rng::uniform;
        for inst in 0..60u64 {
            let n = 4 + (uniform(11, inst * 7) * 5.0) as usize; // 4..=8
            let mut maximal = Vec::new();
            for t in 0..6u64 {
                let mut verts = Vec::new();
                for v in 0..n as u32 {
                    if uniform(inst, t * 64 + u64::from(v)) < 0.45 {
                        verts.push(v);
                    }
                }
                verts.truncate(4);
                if !verts.is_empty() {
                    maximal.push(Simplex::new(verts).unwrap());
                }
            }
            let x = make_complex(&maximal, n).unwrap();
            for k in 0..=x.dim() {
                let (_, agree) = betti_checked(&x, k);
                assert!(agree, "instance {inst} k={k}");
            }
        }
    }
}
