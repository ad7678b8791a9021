//! Limiting constants of the lifetime-sum theory, computed by two
//! independent routes.
//!
//! The quadrature route integrates the limit density `h_d` (built from the
//! critical point `t_d*`, the threshold `c_d* = ψ_d(t_d*)`, and the root
//! `t_c` of `ψ_d(t) = c`). The series route evaluates the closed form in
//! Stirling numbers of the first kind and polylogarithms at `t_d*`, which for
//! d = 1 collapses to a combination of zeta values. Agreement of the two at
//! 1e−8 is the strongest desk-scale check in the crate.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::quad;
use crate::{Error, Result};

/// `ψ_d(t) = −log t / (1−t)^d` on (0,1).
pub fn psi(d: u32, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) || t == 0.0 {
        return Err(Error::Domain(format!("psi needs t ∈ (0,1), got {t}")));
    }
    Ok(psi_unchecked(d, t))
}

#[inline]
fn psi_unchecked(d: u32, t: f64) -> f64 {
    // −log t via log1p(t−1) near 1 (where t−1 is exact by Sterbenz) and via
    // ln directly below 0.5 (where ln itself has full relative precision)
    let w = 1.0 - t;
    let neg_log = if t >= 0.5 { -(t - 1.0).ln_1p() } else { -t.ln() };
    neg_log / w.powi(d as i32)
}

/// Critical point of the d-th limit density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub d: u32,
    /// Unique root in (0,1) of `(d+1)(1−t) + (1+dt)·log t = 0`; 1 for d = 1.
    pub t_star: f64,
    /// `c_d* = ψ_d(t_d*)`; 1 for d = 1.
    pub c_star: f64,
}

fn critical_residual(d: u32, t: f64) -> f64 {
    f64::from(d + 1) * (1.0 - t) + (1.0 + f64::from(d) * t) * t.ln()
}

static CRITICAL_CACHE: Mutex<Option<HashMap<u32, CriticalPoint>>> = Mutex::new(None);

/// Solves for `(t_d*, c_d*)` by bisection (cached per d).
pub fn critical_point(d: u32) -> Result<CriticalPoint> {
    if d == 0 {
        return Err(Error::Domain("critical_point needs d ≥ 1".into()));
    }
    if d == 1 {
        return Ok(CriticalPoint { d, t_star: 1.0, c_star: 1.0 });
    }
    let mut guard = CRITICAL_CACHE.lock().unwrap();
    let cache = guard.get_or_insert_with(HashMap::new);
    if let Some(&cp) = cache.get(&d) {
        return Ok(cp);
    }
    // residual is −∞ at 0+ and positive at 0.5 for every d ≥ 2
    let mut hi = 0.5;
    debug_assert!(critical_residual(d, hi) > 0.0);
    let mut lo = 0.25;
    while critical_residual(d, lo) >= 0.0 {
        lo *= 0.5;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if critical_residual(d, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t_star = 0.5 * (lo + hi);
    let cp = CriticalPoint { d, t_star, c_star: psi_unchecked(d, t_star) };
    cache.insert(d, cp);
    Ok(cp)
}

/// Smallest positive root of `ψ_d(t) = c` for `c ≥ c_d*` (where `ψ_d` is
/// decreasing on `(0, t_d*]`). Returns 0 when the root underflows f64
/// (c beyond ~745, where the density is numerically zero anyway).
pub fn t_c(d: u32, c: f64) -> Result<f64> {
    let cp = critical_point(d)?;
    if c < cp.c_star {
        return Err(Error::Domain(format!(
            "t_c needs c ≥ c_{d}* = {}, got {c}",
            cp.c_star
        )));
    }
    if c == cp.c_star {
        return Ok(cp.t_star);
    }
    // bracket: ψ(lo) > c ≥ ψ(hi), never evaluating at t = 1 itself
    let top = if d == 1 { 1.0 - 1e-16 } else { cp.t_star };
    if psi_unchecked(d, top) > c {
        return Ok(top);
    }
    // halve until ψ(lo) > c; the previous iterate bounds the root above,
    // keeping the bisection width proportional to the root's magnitude
    let mut hi = top;
    let mut lo = top * 0.5;
    while psi_unchecked(d, lo) <= c {
        hi = lo;
        lo *= 0.5;
        if lo < f64::MIN_POSITIVE {
            return Ok(0.0);
        }
    }
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if psi_unchecked(d, mid) > c {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Limiting d-th Betti density `g_d(c)`: zero below `c_d*`, then
/// `c·t_c(1−t_c)^d + c/(d+1)·(1−t_c)^{d+1} − (1−t_c)`.
pub fn g(d: u32, c: f64) -> Result<f64> {
    if c < 0.0 {
        return Err(Error::Domain("g needs c ≥ 0".into()));
    }
    let cp = critical_point(d)?;
    if c < cp.c_star {
        return Ok(0.0);
    }
    let t = t_c(d, c)?;
    let w = 1.0 - t;
    Ok(c * t * w.powi(d as i32) + c / f64::from(d + 1) * w.powi(d as i32 + 1) - w)
}

/// Limiting (d−1)-th Betti density `h_d(c) = 1 − c/(d+1) + g_d(c) ≥ 0`.
///
/// Above `c_d*` the affine and `g` parts cancel almost completely, so the
/// value is computed in the factored form
/// `t_c·(1 − c/(d+1)·Σ_j (1−t_c)^j (1−(1−t_c)^{d−j}))`, which is exact
/// algebraically and stays accurate as `t_c → 0`.
pub fn h(d: u32, c: f64) -> Result<f64> {
    if c < 0.0 {
        return Err(Error::Domain("h needs c ≥ 0".into()));
    }
    let cp = critical_point(d)?;
    if c < cp.c_star {
        return Ok(1.0 - c / f64::from(d + 1));
    }
    let t = t_c(d, c)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let w = 1.0 - t;
    let mut sum = 0.0;
    for j in 0..=d {
        // (1−t)^j · (1 − (1−t)^{d−j}), with the tail factor via expm1
        let head = w.powi(j as i32);
        let tail = -f64::from(d - j).mul_add(0.0, (f64::from(d - j) * w.ln()).exp_m1());
        sum += head * tail;
    }
    Ok((t * (1.0 - c / f64::from(d + 1) * sum)).max(0.0))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Upper integration limit used by the quadrature route.
pub fn default_upper_limit(d: u32) -> Result<f64> {
    Ok(1e4 * critical_point(d)?.c_star)
}

/// `I_{d−1}^{(α)} = (α/d!)∫_0^∞ h_d(s)s^{α−1} ds` by piecewise quadrature:
/// the head `[0, c_d*]` where `h` is affine is integrated analytically, the
/// tail adaptively on panels up to `upper` (default `1e4·c_d*`; the density
/// decays like `e^{−s}` so everything beyond ~`c*+80` is numerically zero).
pub fn i_quadrature_with_upper(d: u32, alpha: f64, upper: f64) -> Result<f64> {
    if d == 0 || alpha <= 0.0 {
        return Err(Error::Domain("I needs d ≥ 1 and α > 0".into()));
    }
    let cp = critical_point(d)?;
    let c_star = cp.c_star;
    let d_fact = factorial(d);
    let head = (c_star.powf(alpha)
        - alpha / (alpha + 1.0) * c_star.powf(alpha + 1.0) / f64::from(d + 1))
        / d_fact;
    // panel edges: unit steps across the decay region, then geometric
    let mut edges = vec![c_star];
    let mut t = c_star;
    while t < c_star + 80.0 && t < upper {
        t += 1.0;
        edges.push(t.min(upper));
    }
    while t < upper {
        t = (2.0 * t).min(upper);
        edges.push(t);
    }
    let mut tail = 0.0;
    for pair in edges.windows(2) {
        tail += quad::integrate(
            |s| h(d, s).unwrap() * s.powf(alpha - 1.0),
            pair[0],
            pair[1],
            1e-13,
        );
    }
    Ok(head + alpha / d_fact * tail)
}

static QUAD_CACHE: Mutex<Option<HashMap<(u32, u64), f64>>> = Mutex::new(None);

/// Quadrature route with the default upper limit, cached per `(d, α)`.
pub fn i_quadrature(d: u32, alpha: f64) -> Result<f64> {
    let key = (d, alpha.to_bits());
    if let Some(&v) = QUAD_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).get(&key) {
        return Ok(v);
    }
    let v = i_quadrature_with_upper(d, alpha, default_upper_limit(d)?)?;
    QUAD_CACHE.lock().unwrap().as_mut().unwrap().insert(key, v);
    Ok(v)
}

/// Riemann zeta at integer `s ≥ 2` by Euler–Maclaurin summation.
pub fn zeta(s: u32) -> Result<f64> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta needs s ≥ 2, got {s}")));
    }
    let s_f = f64::from(s);
    let n = 50u32;
    let n_f = f64::from(n);
    let mut sum = 0.0;
    for k in 1..n {
        sum += f64::from(k).powf(-s_f);
    }
    sum += n_f.powf(1.0 - s_f) / (s_f - 1.0);
    sum += 0.5 * n_f.powf(-s_f);
    // B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let coeffs = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];
    let mut poch = s_f; // s(s+1)…, grown two factors per term
    let mut power = n_f.powf(-s_f - 1.0);
    for (j, &c) in coeffs.iter().enumerate() {
        sum += c * poch * power;
        let m = 2 * j as u32 + 1;
        poch *= (s_f + f64::from(m)) * (s_f + f64::from(m) + 1.0);
        power /= n_f * n_f;
    }
    Ok(sum)
}

/// Polylogarithm `Li_s(x) = Σ_{k≥1} x^k/k^s` for integer order (any sign)
/// and `x ∈ [0,1)`; at `x = 1` only orders ≥ 2 are defined (zeta values).
pub fn polylog(s: i32, x: f64) -> Result<f64> {
    if x == 1.0 {
        if s >= 2 {
            return zeta(s as u32);
        }
        return Err(Error::Domain(format!("Li_{s}(1) diverges")));
    }
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("polylog needs x ∈ [0,1), got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    // Kahan-compensated series; terms are x^k·k^{−s}
    let mut sum = 0.0;
    let mut compensation = 0.0;
    let mut power = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..1_000_000u64 {
        power *= x;
        let term = power * (k as f64).powi(-s);
        let y = term - compensation;
        let t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
        if k > 8 && term < prev && term < 1e-18 * (1.0 + sum.abs()) {
            break;
        }
        prev = term;
    }
    Ok(sum)
}

/// Unsigned Stirling numbers of the first kind via the product recurrence
/// `x(x+1)⋯(x+n−1) = Σ_i [n i] x^i`.
pub fn stirling_first(n: u32, i: u32) -> Result<u128> {
    if n > 33 {
        return Err(Error::ResourceBudget(format!("stirling_first overflows u128 for n = {n}")));
    }
    if i > n {
        return Ok(0);
    }
    let mut row = vec![0u128; n as usize + 1];
    row[0] = 1; // [0 0] = 1
    for m in 1..=n as usize {
        let mut next = vec![0u128; n as usize + 1];
        for j in 1..=m {
            next[j] = (m as u128 - 1) * row[j] + row[j - 1];
        }
        row = next;
    }
    Ok(row[i as usize])
}

static SERIES_CACHE: Mutex<Option<HashMap<(u32, u32), f64>>> = Mutex::new(None);

/// Closed-form route for integer α: Stirling numbers and polylogarithms at
/// `t_d*`, plus the boundary term; for d = 1 the zeta-value reduction
/// `α·Σ_i [α−1 i]·ζ(α+2−i)`.
pub fn i_series(d: u32, alpha: u32) -> Result<f64> {
    if d == 0 || alpha == 0 {
        return Err(Error::Domain("I_series needs d ≥ 1 and α ≥ 1".into()));
    }
    let key = (d, alpha);
    if let Some(&v) = SERIES_CACHE.lock().unwrap().get_or_insert_with(HashMap::new).get(&key) {
        return Ok(v);
    }
    let value = if d == 1 {
        let mut sum = 0.0;
        for i in 0..alpha {
            let s1 = stirling_first(alpha - 1, i)? as f64;
            if s1 != 0.0 {
                sum += s1 * zeta(alpha + 2 - i)?;
            }
        }
        f64::from(alpha) * sum
    } else {
        let cp = critical_point(d)?;
        let t = cp.t_star;
        let log_term = -t.ln(); // −log t_d* > 0
        let da = d * alpha;
        let mut head = 0.0;
        for i in 0..da {
            let s1 = stirling_first(da - 1, i)? as f64;
            if s1 == 0.0 {
                continue;
            }
            let mut inner = 0.0;
            let mut log_pow_over_fact = 1.0; // (−log t)^j / j!
            for j in 0..=(alpha + 1) {
                if j > 0 {
                    log_pow_over_fact *= log_term / f64::from(j);
                }
                let order = alpha as i32 + 2 - i as i32 - j as i32;
                inner += log_pow_over_fact * polylog(order, t)?;
            }
            head += s1 * inner;
        }
        head *= factorial(alpha) / factorial(da - 1);
        let boundary = cp.c_star.powi(alpha as i32) * (log_term - (1.0 - t))
            / (f64::from(d) * f64::from(alpha + 1));
        (head + boundary) / factorial(d)
    };
    SERIES_CACHE.lock().unwrap().as_mut().unwrap().insert(key, value);
    Ok(value)
}

/// Both routes side by side, as emitted by the `constants` CLI command.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ConstantReport {
    pub d: u32,
    pub alpha: f64,
    pub quadrature: f64,
    /// Present when α is a positive integer.
    pub series: Option<f64>,
    pub discrepancy: Option<f64>,
    pub t_star: f64,
    pub c_star: f64,
}

pub fn constant_report(d: u32, alpha: f64) -> Result<ConstantReport> {
    let quadrature = i_quadrature(d, alpha)?;
    let series = if alpha.fract() == 0.0 && alpha >= 1.0 && alpha <= u32::MAX as f64 {
        Some(i_series(d, alpha as u32)?)
    } else {
        None
    };
    let cp = critical_point(d)?;
    Ok(ConstantReport {
        d,
        alpha,
        quadrature,
        series,
        discrepancy: series.map(|s| (s - quadrature).abs()),
        t_star: cp.t_star,
        c_star: cp.c_star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA_3: f64 = 1.202_056_903_159_594_2;

    #[test]
    fn psi_examples() {
        // ψ_1(t) → 1 as t → 1−
        for t in [0.999, 0.999999, 1.0 - 1e-12] {
            let v = psi(1, t).unwrap();
            assert!((v - 1.0).abs() < 2.0 * (1.0 - t), "ψ_1({t}) = {v}");
        }
        // ψ_2(0.5) = 4·log 2
        let v = psi(2, 0.5).unwrap();
        assert!((v - 4.0 * 2f64.ln()).abs() < 1e-14);
        assert!(psi(2, 0.0).is_err());
        assert!(psi(2, 1.0).is_err());
        assert!(psi(2, 1.5).is_err());
    }

    #[test]
    fn critical_points() {
        let cp1 = critical_point(1).unwrap();
        assert_eq!((cp1.t_star, cp1.c_star), (1.0, 1.0));
        for d in 2..=6 {
            let cp = critical_point(d).unwrap();
            assert!((0.0..1.0).contains(&cp.t_star));
            assert!(cp.c_star > 0.0);
            let residual = critical_residual(d, cp.t_star).abs();
            assert!(residual < 1e-12, "d={d}: residual {residual:e}");
            // ψ_d(t_d*) = c_d* by definition
            assert_eq!(psi(d, cp.t_star).unwrap(), cp.c_star);
        }
    }

    #[test]
    fn t_c_examples() {
        for d in 1..=3u32 {
            let cp = critical_point(d).unwrap();
            assert_eq!(t_c(d, cp.c_star).unwrap(), cp.t_star);
            assert!(t_c(d, cp.c_star - 0.01).is_err());
            for c in [cp.c_star + 0.1, 2.0 * cp.c_star, 5.0, 20.0, 100.0] {
                let t = t_c(d, c).unwrap();
                assert!(t <= cp.t_star);
                let residual = (psi(d, t).unwrap() - c).abs();
                assert!(residual < 1e-11, "d={d} c={c}: residual {residual:e}");
            }
        }
        // ψ_1 decreasing: t_c → 0 as c → ∞
        assert!(t_c(1, 1e3).unwrap() < 1e-300);
        assert_eq!(t_c(1, 1e4).unwrap(), 0.0);
    }

    #[test]
    fn g_examples() {
        for d in 1..=3u32 {
            let cp = critical_point(d).unwrap();
            assert_eq!(g(d, 0.0).unwrap(), 0.0);
            assert_eq!(g(d, cp.c_star * 0.99).unwrap(), 0.0);
            assert!(g(d, cp.c_star).unwrap().abs() < 1e-9);
            // nondecreasing on a probe grid (diagnostic)
            let mut prev = 0.0;
            for i in 0..40 {
                let c = cp.c_star + 0.25 * f64::from(i);
                let v = g(d, c).unwrap();
                assert!(v >= prev - 1e-12, "d={d} c={c}");
                prev = v;
            }
        }
    }

    #[test]
    fn h_examples() {
        for d in 1..=3u32 {
            let cp = critical_point(d).unwrap();
            assert_eq!(h(d, 0.0).unwrap(), 1.0);
            // affine below the threshold
            let c = cp.c_star * 0.7;
            assert_eq!(h(d, c).unwrap(), 1.0 - c / f64::from(d + 1));
            // h = 1 − c/(d+1) + g above it (moderate c keeps cancellation benign)
            for c in [cp.c_star + 0.3, cp.c_star + 2.0, 8.0] {
                let direct = 1.0 - c / f64::from(d + 1) + g(d, c).unwrap();
                let stable = h(d, c).unwrap();
                assert!((direct - stable).abs() < 1e-10, "d={d} c={c}");
                assert!(stable >= 0.0);
            }
        }
        assert!(h(1, 50.0).unwrap() < 1e-3);
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2).unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
        assert!((zeta(3).unwrap() - ZETA_3).abs() < 1e-12);
        assert!((zeta(4).unwrap() - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(16).unwrap() - 1.0000152822594086).abs() < 1e-14);
        assert!(zeta(1).is_err());
    }

    #[test]
    fn polylog_values() {
        // Li_1(x) = −log(1−x)
        let v = polylog(1, 0.3).unwrap();
        assert!((v + (1.0 - 0.3f64).ln()).abs() < 1e-12);
        // Li_0(x) = x/(1−x), Li_{−1}(x) = x/(1−x)²
        let x = 0.25;
        assert!((polylog(0, x).unwrap() - x / (1.0 - x)).abs() < 1e-14);
        assert!((polylog(-1, x).unwrap() - x / (1.0 - x) / (1.0 - x)).abs() < 1e-13);
        assert!((polylog(2, 1.0).unwrap() - zeta(2).unwrap()).abs() < 1e-15);
        assert!(polylog(1, 1.0).is_err());
        assert!(polylog(2, -0.1).is_err());
    }

    #[test]
    fn stirling_values() {
        // x(x+1)(x+2) = 2x + 3x² + x³
        assert_eq!(stirling_first(0, 0).unwrap(), 1);
        assert_eq!(stirling_first(3, 0).unwrap(), 0);
        assert_eq!(stirling_first(3, 1).unwrap(), 2);
        assert_eq!(stirling_first(3, 2).unwrap(), 3);
        assert_eq!(stirling_first(3, 3).unwrap(), 1);
        assert_eq!(stirling_first(4, 1).unwrap(), 6);
        assert_eq!(stirling_first(4, 2).unwrap(), 11);
        assert_eq!(stirling_first(5, 5).unwrap(), 1);
    }

    #[test]
    fn quadrature_hits_zeta_values_at_d1() {
        assert!((i_quadrature(1, 1.0).unwrap() - ZETA_3).abs() < 1e-8);
        assert!((i_quadrature(1, 2.0).unwrap() - 2.0 * ZETA_3).abs() < 1e-8);
        let expect = 3.0 * (zeta(3).unwrap() + zeta(4).unwrap());
        assert!((i_quadrature(1, 3.0).unwrap() - expect).abs() < 1e-8);
    }

    #[test]
    fn series_reproduces_zeta_combinations() {
        let z = |s: u32| zeta(s).unwrap();
        let cases = [
            (1u32, z(3)),
            (2, 2.0 * z(3)),
            (3, 3.0 * (z(3) + z(4))),
            (4, 4.0 * (z(3) + 3.0 * z(4) + 2.0 * z(5))),
            (5, 5.0 * (z(3) + 6.0 * z(4) + 11.0 * z(5) + 6.0 * z(6))),
        ];
        for (alpha, expect) in cases {
            let v = i_series(1, alpha).unwrap();
            assert!((v - expect).abs() < 1e-13 * expect, "α={alpha}: {v} vs {expect}");
        }
    }

    #[test]
    fn series_matches_displayed_low_dimension_forms() {
        // d = 2, α = 1 written out with Li_2 and logs
        let cp = critical_point(2).unwrap();
        let t = cp.t_star;
        let log_t = t.ln();
        let expect = 0.5
            * (polylog(2, t).unwrap()
                + log_t * (1.0 - t).ln()
                + t * log_t * log_t / (2.0 * (1.0 - t))
                + log_t * (log_t + (1.0 - t)) / (4.0 * (1.0 - t) * (1.0 - t)));
        let v = i_series(2, 1).unwrap();
        assert!((v - expect).abs() < 1e-10, "{v} vs {expect}");

        // d = 3, α = 1
        let cp = critical_point(3).unwrap();
        let t = cp.t_star;
        let log_t = t.ln();
        let w = 1.0 - t;
        let expect = (polylog(2, t).unwrap()
            + (log_t - 1.0) * w.ln()
            + t * log_t * (log_t - 2.0) / (2.0 * w)
            + t * log_t * log_t / (2.0 * w * w)
            + log_t * (log_t + w) / (3.0 * w * w * w))
            / 12.0;
        let v = i_series(3, 1).unwrap();
        assert!((v - expect).abs() < 1e-10, "{v} vs {expect}");
    }

    #[test]
    fn series_and_quadrature_agree() {
        for d in 1..=3u32 {
            for alpha in 1..=3u32 {
                let series = i_series(d, alpha).unwrap();
                let quadrature = i_quadrature(d, f64::from(alpha)).unwrap();
                assert!(
                    (series - quadrature).abs() < 1e-8,
                    "d={d} α={alpha}: series {series} vs quadrature {quadrature}"
                );
            }
        }
    }

    #[test]
    fn quadrature_tail_is_negligible() {
        for d in 1..=3u32 {
            let s = default_upper_limit(d).unwrap();
            let base = i_quadrature_with_upper(d, 1.0, s).unwrap();
            let doubled = i_quadrature_with_upper(d, 1.0, 2.0 * s).unwrap();
            assert!((base - doubled).abs() < 1e-12, "d={d}");
        }
    }

    #[test]
    fn fractional_alpha_has_quadrature_only() {
        let report = constant_report(2, 1.5).unwrap();
        assert!(report.series.is_none());
        assert!(report.quadrature.is_finite() && report.quadrature > 0.0);
        let report = constant_report(2, 2.0).unwrap();
        assert!(report.discrepancy.unwrap() < 1e-8);
    }
}
