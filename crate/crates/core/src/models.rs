//! Multi-parameter random simplicial complexes and weighted complex processes.
//!
//! The static model keeps each i-simplex whose facets all survived with
//! independent probability `p_i`. The process variant assigns each simplex an
//! appearance time `u_σ` drawn through the generalized inverse of the
//! distribution function `p_i(·)`, and filters by `w_σ = max{u_τ : τ ⊆ σ}`.
//! Presets live behind the [`ModelPreset`] trait in a name-keyed registry.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{make_complex, Simplex, SimplicialComplex};
use crate::quad;
use crate::rng;
use crate::stats::{self, binomial_coefficient};
use crate::{Error, Result};

/// Static multi-parameter `p = (p_0, …, p_{n−1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiParameter(pub Vec<f64>);

impl MultiParameter {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::BadModel("multi-parameter entries must lie in [0,1]".into()));
        }
        Ok(Self(p))
    }

    pub fn p(&self, i: usize) -> f64 {
        self.0.get(i).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The derived marginals: `q_k` is the probability a fixed k-simplex is
/// present, `r_k = q_{k+1}/q_k` with the 0/0 = 0 convention.
#[derive(Debug, Clone)]
pub struct DerivedParams {
    /// `q_k` for k = −1..=n−1 (index shifted by one).
    q: Vec<f64>,
    /// `r_k` for k = −1..=n−2 (index shifted by one).
    r: Vec<f64>,
}

impl DerivedParams {
    pub fn q(&self, k: i32) -> f64 {
        self.q.get((k + 1) as usize).copied().unwrap_or(0.0)
    }

    pub fn r(&self, k: i32) -> f64 {
        self.r.get((k + 1) as usize).copied().unwrap_or(0.0)
    }
}

/// Evaluates `q_k = Π p_i^{C(k+1,i+1)}` and `r_k = Π p_i^{C(k+1,i)}`.
pub fn derive_params(p: &MultiParameter) -> DerivedParams {
    let n = p.len();
    let mut q = Vec::with_capacity(n + 1);
    let mut r = Vec::with_capacity(n);
    q.push(1.0); // q_{−1}
    for k in 0..n as i32 {
        let mut acc = 1.0;
        for i in 0..=k {
            let exp = binomial_coefficient((k + 1) as usize, (i + 1) as usize);
            acc *= p.p(i as usize).powf(exp);
        }
        q.push(acc);
    }
    for k in -1..(n as i32 - 1) {
        let mut acc = 1.0;
        for i in 0..=(k + 1) {
            let exp = binomial_coefficient((k + 1) as usize, i as usize);
            acc *= p.p(i as usize).powf(exp);
        }
        r.push(acc);
    }
    DerivedParams { q, r }
}

/// One monotone right-continuous distribution function from the closed DSL.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ParamFn {
    /// `p(t) = c` for all t.
    Const { c: f64 },
    /// `p(t) = min(t^a, 1)`.
    Power { a: f64 },
    /// `p(t) = 1_{t ≥ t0}`.
    Step { t0: f64 },
}

impl ParamFn {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            ParamFn::Const { c } => c,
            ParamFn::Power { a } => t.powf(a).min(1.0),
            ParamFn::Step { t0 } => {
                if t >= t0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Generalized inverse `inf{t : p(t) ≥ u}`; +∞ when u exceeds sup p.
    pub fn inverse(&self, u: f64) -> f64 {
        match *self {
            ParamFn::Const { c } => {
                if u <= c {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            ParamFn::Power { a } => u.powf(1.0 / a),
            ParamFn::Step { t0 } => {
                if u <= 0.0 {
                    0.0
                } else {
                    t0
                }
            }
        }
    }

    /// Time after which the function is constant.
    pub fn saturation_time(&self) -> f64 {
        match *self {
            ParamFn::Const { .. } => 0.0,
            ParamFn::Power { .. } => 1.0,
            ParamFn::Step { t0 } => t0,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ParamFn::Const { c } if !(0.0..=1.0).contains(&c) => {
                Err(Error::BadModel(format!("const parameter {c} outside [0,1]")))
            }
            ParamFn::Power { a } if a <= 0.0 => {
                Err(Error::BadModel(format!("power exponent {a} must be positive")))
            }
            ParamFn::Step { t0 } if t0 < 0.0 => {
                Err(Error::BadModel(format!("step time {t0} must be non-negative")))
            }
            _ => Ok(()),
        }
    }
}

/// Time-dependent multi-parameter `p(·) = (p_0(·), …, p_{n−1}(·))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamFunctions(pub Vec<ParamFn>);

impl ParamFunctions {
    pub fn new(funcs: Vec<ParamFn>) -> Result<Self> {
        for f in &funcs {
            f.validate()?;
        }
        Ok(Self(funcs))
    }

    fn func(&self, i: usize) -> ParamFn {
        self.0.get(i).copied().unwrap_or(ParamFn::Const { c: 0.0 })
    }

    /// Static snapshot parameters `p(t)`.
    pub fn at(&self, t: f64, n: usize) -> MultiParameter {
        MultiParameter((0..n).map(|i| self.func(i).eval(t)).collect())
    }

    pub fn q_at(&self, k: i32, t: f64) -> f64 {
        let mut acc = 1.0;
        for i in 0..=k {
            let exp = binomial_coefficient((k + 1) as usize, (i + 1) as usize);
            acc *= self.func(i as usize).eval(t).powf(exp);
        }
        acc
    }

    pub fn r_at(&self, k: i32, t: f64) -> f64 {
        let mut acc = 1.0;
        for i in 0..=(k + 1) {
            let exp = binomial_coefficient((k + 1) as usize, i as usize);
            acc *= self.func(i as usize).eval(t).powf(exp);
        }
        acc
    }

    fn saturation_time(&self, k_hint: i32) -> f64 {
        self.0
            .iter()
            .take((k_hint + 2).max(1) as usize)
            .map(ParamFn::saturation_time)
            .fold(0.0, f64::max)
    }

    fn quadrature_breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .0
            .iter()
            .filter_map(|f| match *f {
                ParamFn::Power { .. } => Some(1.0),
                ParamFn::Step { t0 } => Some(t0),
                ParamFn::Const { .. } => None,
            })
            .collect();
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup();
        pts
    }

    /// `Q_k(t) = ∫_0^t q_k(s) ds` by adaptive quadrature split at the DSL
    /// breakpoints.
    pub fn q_integral(&self, k: i32, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        quad::integrate_with_breakpoints(
            |s| self.q_at(k, s),
            0.0,
            t,
            &self.quadrature_breakpoints(),
            1e-12,
        )
    }

    /// Generalized inverse `ř_k(u) = inf{t : r_k(t) > u}` by bisection on the
    /// monotone `r_k`; +∞ when `r_k` never exceeds u.
    pub fn r_check(&self, k: i32, u: f64) -> f64 {
        if u >= 1.0 {
            return f64::INFINITY;
        }
        let sat = self.saturation_time(k);
        if self.r_at(k, sat) <= u {
            return f64::INFINITY;
        }
        if self.r_at(k, 0.0) > u {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0, sat);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.r_at(k, mid) > u {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// `(Φ_k(u), Ψ_k(u)) = (Q_k(ř_k(u)), Q_k(ř_{k−1}(u)))` for u ∈ [0,1).
    pub fn phi_psi(&self, k: i32, u: f64) -> Result<(f64, f64)> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::Domain(format!("phi_psi needs u ∈ [0,1), got {u}")));
        }
        let phi = self.q_integral_at_check(k, self.r_check(k, u));
        let psi = self.q_integral_at_check(k, self.r_check(k - 1, u));
        Ok((phi, psi))
    }

    fn q_integral_at_check(&self, k: i32, t: f64) -> f64 {
        if t.is_infinite() {
            let sat = self.saturation_time(k);
            if self.q_at(k, sat) > 0.0 {
                return f64::INFINITY;
            }
            return self.q_integral(k, sat);
        }
        self.q_integral(k, t)
    }
}

/// A sampled weighted complex process: simplices up to the materialization
/// cap together with their appearance times.
#[derive(Debug, Clone)]
pub struct WeightedComplexProcess {
    pub n: usize,
    /// Highest materialized dimension (`k_max + 1`).
    pub max_dim: i32,
    /// Per dimension: `(simplex, u_σ, w_σ)`, sorted by simplex.
    pub levels: Vec<Vec<(Simplex, f64, f64)>>,
    pub seed: u64,
    /// Preset name this process was sampled from.
    pub model: String,
}

impl WeightedComplexProcess {
    /// Snapshot `X(t) = {σ : w_σ ≤ t}`; downward closed by weight monotonicity.
    pub fn snapshot(&self, t: f64) -> SimplicialComplex {
        let members: Vec<Simplex> = self
            .levels
            .iter()
            .flatten()
            .filter(|&&(_, _, w)| w <= t)
            .map(|(s, _, _)| s.clone())
            .collect();
        make_complex(&members, self.n).expect("snapshot members are valid")
    }

    pub fn weight_of(&self, s: &Simplex) -> Option<f64> {
        let level = self.levels.get(s.dim() as usize)?;
        level
            .binary_search_by(|(t, _, _)| t.cmp(s))
            .ok()
            .map(|i| level[i].2)
    }

    /// Every simplex of the given dimension, with weights.
    pub fn level(&self, dim: i32) -> &[(Simplex, f64, f64)] {
        self.levels.get(dim as usize).map(Vec::as_slice).unwrap_or(&[])
    }
}

fn enumerate_subsets(n: usize, size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(n: usize, size: usize, start: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        let remaining = size - current.len();
        for v in start..=(n as u32 - remaining as u32) {
            current.push(v);
            rec(n, size, v + 1, current, out);
            current.pop();
        }
    }
    if size <= n {
        rec(n, size, 0, &mut current, &mut out);
    }
    out
}

/// Samples the static model `X(n, p)`: dimension by dimension, each i-simplex
/// whose facets all survived is kept with probability `p_i`.
pub fn sample_static(n: usize, p: &MultiParameter, seed: u64) -> SimplicialComplex {
    let mut present: Vec<Simplex> = Vec::new();
    let mut previous: Vec<Vec<u32>> = vec![vec![]]; // level −1
    for dim in 0..n as i32 {
        let p_i = p.p(dim as usize);
        if previous.is_empty() || p_i == 0.0 {
            break;
        }
        let prev_set: HashSet<&[u32]> = previous.iter().map(Vec::as_slice).collect();
        let mut level: Vec<Vec<u32>> = Vec::new();
        for candidate in enumerate_subsets(n, dim as usize + 1) {
            // all facets must be present
            let mut facet = Vec::with_capacity(dim as usize);
            let all_in = (0..candidate.len()).all(|skip| {
                facet.clear();
                facet.extend(candidate.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
                dim == 0 || prev_set.contains(facet.as_slice())
            });
            if !all_in {
                continue;
            }
            if p_i >= 1.0 || rng::uniform(seed, rng::simplex_stream(&candidate)) < p_i {
                level.push(candidate);
            }
        }
        present.extend(level.iter().map(|v| Simplex::new(v.clone()).unwrap()));
        previous = level;
    }
    make_complex(&present, n).expect("sampled simplices are valid")
}

/// Samples a weighted complex process, materializing dimensions ≤ k_max+1.
pub fn sample_process(
    n: usize,
    pf: &ParamFunctions,
    k_max: i32,
    seed: u64,
    model: &str,
) -> Result<WeightedComplexProcess> {
    if k_max < 0 || (k_max + 1) as usize > n - 1 {
        return Err(Error::Domain(format!(
            "sample_process needs 0 ≤ k_max ≤ n−2, got k_max={k_max} n={n}"
        )));
    }
    let max_dim = k_max + 1;
    let mut levels: Vec<Vec<(Simplex, f64, f64)>> = Vec::with_capacity(max_dim as usize + 1);
    let mut prev_weights: HashMap<Vec<u32>, f64> = HashMap::new();
    for dim in 0..=max_dim {
        let func = pf.func(dim as usize);
        let mut level = Vec::new();
        let mut weights = HashMap::new();
        for verts in enumerate_subsets(n, dim as usize + 1) {
            let u = func.inverse(rng::uniform(seed, rng::simplex_stream(&verts)));
            let mut w = u;
            if dim > 0 {
                let mut facet = Vec::with_capacity(dim as usize);
                for skip in 0..verts.len() {
                    facet.clear();
                    facet.extend(verts.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
                    w = w.max(prev_weights[facet.as_slice()]);
                }
            }
            weights.insert(verts.clone(), w);
            level.push((Simplex::new(verts).unwrap(), u, w));
        }
        level.sort_by(|a, b| a.0.cmp(&b.0));
        levels.push(level);
        prev_weights = weights;
    }
    Ok(WeightedComplexProcess { n, max_dim, levels, seed, model: model.to_string() })
}

/// A registered model family: static parameters at a fixed probability and
/// the time-dependent parameter functions of its filtration.
pub trait ModelPreset: Send + Sync {
    /// Canonical name, e.g. `lm(2)`.
    fn name(&self) -> String;
    fn static_params(&self, n: usize, p: f64) -> Result<MultiParameter>;
    fn param_functions(&self, n: usize) -> Result<ParamFunctions>;
}

/// Linial–Meshulam family: complete (d−1)-skeleton, d-simplices at `p`.
/// Dimensions above d step in at t = 1, which saturates the filtration
/// without touching any lifetime below dimension d.
pub struct LinialMeshulam {
    pub d: usize,
}

impl ModelPreset for LinialMeshulam {
    fn name(&self) -> String {
        format!("lm({})", self.d)
    }

    fn static_params(&self, n: usize, p: f64) -> Result<MultiParameter> {
        if self.d + 1 > n {
            return Err(Error::BadModel(format!("lm({}) needs n > d", self.d)));
        }
        let mut v = vec![1.0; self.d];
        v.push(p);
        v.resize(n, 0.0);
        MultiParameter::new(v)
    }

    fn param_functions(&self, n: usize) -> Result<ParamFunctions> {
        let mut funcs = vec![ParamFn::Const { c: 1.0 }; self.d];
        funcs.push(ParamFn::Power { a: 1.0 });
        funcs.resize(n, ParamFn::Step { t0: 1.0 });
        ParamFunctions::new(funcs)
    }
}

/// d-flag family: complete (d−1)-skeleton, d-simplices at `p`, everything
/// above filled in as soon as its faces exist. `flag(1)` is the clique model.
pub struct Flag {
    pub d: usize,
}

impl ModelPreset for Flag {
    fn name(&self) -> String {
        format!("flag({})", self.d)
    }

    fn static_params(&self, n: usize, p: f64) -> Result<MultiParameter> {
        if self.d + 1 > n {
            return Err(Error::BadModel(format!("flag({}) needs n > d", self.d)));
        }
        let mut v = vec![1.0; self.d];
        v.push(p);
        v.resize(n, 1.0);
        MultiParameter::new(v)
    }

    fn param_functions(&self, n: usize) -> Result<ParamFunctions> {
        let mut funcs = vec![ParamFn::Const { c: 1.0 }; self.d];
        funcs.push(ParamFn::Power { a: 1.0 });
        funcs.resize(n, ParamFn::Const { c: 1.0 });
        ParamFunctions::new(funcs)
    }
}

/// User-described model: explicit parameter functions per dimension,
/// optionally with a separate static p-vector. Missing dimensions never
/// appear.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CustomModel {
    pub p_funcs: Vec<ParamFn>,
    #[serde(default)]
    pub static_p: Option<Vec<f64>>,
}

impl ModelPreset for CustomModel {
    fn name(&self) -> String {
        "custom".to_string()
    }

    fn static_params(&self, n: usize, p: f64) -> Result<MultiParameter> {
        let _ = p;
        let mut v = match &self.static_p {
            Some(v) => v.clone(),
            None => self.p_funcs.iter().map(|f| f.eval(1.0)).collect(),
        };
        if v.len() > n {
            return Err(Error::BadModel(format!(
                "custom static vector has {} entries for n = {n}",
                v.len()
            )));
        }
        v.resize(n, 0.0);
        MultiParameter::new(v)
    }

    fn param_functions(&self, n: usize) -> Result<ParamFunctions> {
        if self.p_funcs.len() > n {
            return Err(Error::BadModel(format!(
                "custom model has {} parameter functions for n = {n}",
                self.p_funcs.len()
            )));
        }
        let mut funcs = self.p_funcs.clone();
        funcs.resize(n, ParamFn::Const { c: 0.0 });
        ParamFunctions::new(funcs)
    }
}

type PresetBuilder = Box<dyn Fn(&str) -> Result<Box<dyn ModelPreset>> + Send + Sync>;

/// Name-keyed registry of model families. Strings like `lm(2)`, `flag(1)`,
/// `clique`, or `custom:{json}` select and parameterize a preset at runtime.
pub struct ModelRegistry {
    builders: Vec<(&'static str, PresetBuilder)>,
}

impl ModelRegistry {
    pub fn standard() -> Self {
        let mut registry = ModelRegistry { builders: Vec::new() };
        registry.register("lm", |arg| {
            let d = parse_dim_arg("lm", arg)?;
            Ok(Box::new(LinialMeshulam { d }))
        });
        registry.register("flag", |arg| {
            let d = parse_dim_arg("flag", arg)?;
            Ok(Box::new(Flag { d }))
        });
        registry.register("clique", |arg| {
            if !arg.is_empty() {
                return Err(Error::BadModel("clique takes no arguments".into()));
            }
            Ok(Box::new(Flag { d: 1 }))
        });
        registry.register("custom", |arg| {
            if arg.is_empty() {
                return Err(Error::BadModel(
                    "custom needs a JSON body: custom:{\"p_funcs\": […]}".into(),
                ));
            }
            let model: CustomModel = serde_json::from_str(arg)
                .map_err(|e| Error::BadModel(format!("custom model JSON: {e}")))?;
            model.param_functions(model.p_funcs.len().max(1))?;
            Ok(Box::new(model))
        });
        registry
    }

    pub fn register(
        &mut self,
        name: &'static str,
        builder: impl Fn(&str) -> Result<Box<dyn ModelPreset>> + Send + Sync + 'static,
    ) {
        self.builders.push((name, Box::new(builder)));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.builders.iter().map(|(n, _)| *n).collect()
    }

    /// Parses `name`, `name(arg)`, or `name:body` into a preset.
    pub fn parse(&self, spec: &str) -> Result<Box<dyn ModelPreset>> {
        let spec = spec.trim();
        let (name, arg) = if let Some((head, body)) = spec.split_once(':') {
            (head.trim(), body.trim().to_string())
        } else if let Some(open) = spec.find('(') {
            let close = spec
                .rfind(')')
                .ok_or_else(|| Error::BadModel(format!("unbalanced parentheses in {spec:?}")))?;
            (&spec[..open], spec[open + 1..close].trim().to_string())
        } else {
            (spec, String::new())
        };
        for (key, builder) in &self.builders {
            if *key == name {
                return builder(&arg);
            }
        }
        Err(Error::BadModel(format!(
            "unknown model {name:?}; registered: {:?}",
            self.names()
        )))
    }
}

fn parse_dim_arg(family: &str, arg: &str) -> Result<usize> {
    let d: usize = arg
        .trim()
        .parse()
        .map_err(|_| Error::BadModel(format!("{family} needs a dimension, e.g. {family}(2)")))?;
    if d == 0 {
        return Err(Error::BadModel(format!("{family} dimension must be ≥ 1")));
    }
    Ok(d)
}

/// Closure of a random set of D-simplices: a pure D-dimensional complex for
/// harmonic/localization test corpora.
pub fn random_pure_complex(n: usize, d: i32, density: f64, seed: u64) -> SimplicialComplex {
    let mut tops = Vec::new();
    for verts in enumerate_subsets(n, d as usize + 1) {
        if rng::uniform(seed, rng::simplex_stream(&verts)) < density {
            tops.push(Simplex::new(verts).unwrap());
        }
    }
    if tops.is_empty() {
        tops.push(Simplex::new((0..=d as u32).collect()).unwrap());
    }
    make_complex(&tops, n).expect("valid simplices")
}

/// Chi-square report from [`link_distribution_probe`].
#[derive(Debug, Clone, Copy)]
pub struct LinkProbeReport {
    pub conditioned_trials: usize,
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Conditioned on a fixed (k−1)-simplex τ being present, the number of link
/// vertices is Binomial(n−k, r_{k−1}); this probes that law by chi-square.
pub fn link_distribution_probe(
    n: usize,
    p: &MultiParameter,
    k: usize,
    trials: u32,
    seed: u64,
) -> Result<LinkProbeReport> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("link probe needs 1 ≤ k ≤ n, got {k}")));
    }
    let derived = derive_params(p);
    let q_tau = derived.q(k as i32 - 1);
    if q_tau <= 0.0 {
        return Err(Error::Domain("conditioning simplex has probability zero".into()));
    }
    let tau = Simplex::new((0..k as u32).collect())?;
    let r = derived.r(k as i32 - 1);
    let mut counts = vec![0f64; n - k + 1];
    let mut conditioned = 0usize;
    for t in 0..trials {
        let x = sample_static(n, p, rng::child_seed(seed, u64::from(t)));
        if !x.contains(&tau) {
            continue;
        }
        conditioned += 1;
        let link_vertices = (k as u32..n as u32)
            .filter(|&v| {
                let mut verts = tau.vertices().to_vec();
                verts.push(v);
                x.contains(&Simplex::new(verts).unwrap())
            })
            .count();
        counts[link_vertices] += 1.0;
    }
    if conditioned < 30 {
        return Err(Error::Inconclusive(format!(
            "only {conditioned} of {trials} trials satisfied the conditioning"
        )));
    }
    let expected: Vec<f64> = (0..=(n - k))
        .map(|j| conditioned as f64 * stats::binomial_pmf(n - k, r, j))
        .collect();
    let result = stats::chi_square_gof(&counts, &expected, 5.0)?;
    Ok(LinkProbeReport {
        conditioned_trials: conditioned,
        statistic: result.statistic,
        dof: result.dof,
        p_value: result.p_value,
    })
}
