//! The `(ε, d)` hidden-measurement spin model on a finite sample of the
//! sphere.
//!
//! A test `α(u, ε, d)` projects the state `p` onto the axis `u`, giving
//! `x = p·u`, and cuts an elastic stretched over `[d − ε, d + ε]` at a
//! uniformly random point `λ`. The outcome is ↑ when `λ < x`, so
//! `P(↑) = (x − (d − ε)) / 2ε` clamped to `[0, 1]`. For `ε = 0` the elastic
//! is a point; a state exactly at `x = d` then gets a fair coin.
//!
//! Eigensets are the closed caps `{p·u ≥ d + ε}` (↑ certain) and
//! `{p·u ≤ d − ε}` (↓ certain). Dot products are compared with an absolute
//! tolerance of [`DOT_TOL`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::classical::OperationalClassicalAnalysis;
use crate::closure::FiniteClosureSystem;
use crate::error::{Error, Result};
use crate::order::{enumerate_orthos, verify_ortho, Lattice, OrthoMap};
use crate::sps::{FiniteSps, TestPair};
use crate::stateset::{StateSet, MAX_STATES};
use crate::topological::{is_t_classical, topological_properties};

pub const DOT_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-12;

/// Trials per RNG stream. Fixed so results do not depend on thread count.
const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpherePoint([f64; 3]);

impl SpherePoint {
    /// Requires unit norm within [`NORM_TOL`].
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !n.is_finite() || (n - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidTestSpec(format!("({x}, {y}, {z}) has norm {n}, not 1")));
        }
        Ok(SpherePoint([x, y, z]))
    }

    /// Scales a non-zero vector to unit length.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidTestSpec(format!("cannot normalize ({x}, {y}, {z})")));
        }
        SpherePoint::new(x / n, y / n, z / n)
    }

    /// Polar angle `theta` from the z-axis and azimuth `phi`, in degrees.
    pub fn from_degrees(theta: f64, phi: f64) -> Self {
        let (t, f) = (theta.to_radians(), phi.to_radians());
        SpherePoint([t.sin() * f.cos(), t.sin() * f.sin(), t.cos()])
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        self.0.iter().zip(other.0).map(|(a, b)| a * b).sum()
    }

    pub fn antipode(&self) -> SpherePoint {
        SpherePoint(self.0.map(|c| -c))
    }

    pub fn approx_eq(&self, other: &SpherePoint) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| (a - b).abs() <= DOT_TOL)
    }
}

/// The test `α(u, ε, d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestSpec {
    pub u: SpherePoint,
    pub epsilon: f64,
    pub d: f64,
}

impl TestSpec {
    /// Requires `ε ∈ [0, 1]` and `d ∈ [−1 + ε, 1 − ε]`.
    pub fn new(u: SpherePoint, epsilon: f64, d: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::InvalidTestSpec(format!("epsilon {epsilon} outside [0, 1]")));
        }
        let bound = 1.0 - epsilon + NORM_TOL;
        if !d.is_finite() || d.abs() > bound {
            return Err(Error::InvalidTestSpec(format!(
                "d {d} outside [{}, {}]",
                -1.0 + epsilon,
                1.0 - epsilon
            )));
        }
        Ok(TestSpec { u, epsilon, d })
    }
}

/// Probability of the outcome ↑ for the state `p`.
pub fn outcome_probability(p: &SpherePoint, t: &TestSpec) -> f64 {
    let x = p.dot(&t.u);
    let (lo, hi) = (t.d - t.epsilon, t.d + t.epsilon);
    if t.epsilon == 0.0 {
        if (x - t.d).abs() <= DOT_TOL {
            0.5
        } else if x > t.d {
            1.0
        } else {
            0.0
        }
    } else if x >= hi {
        1.0
    } else if x <= lo {
        0.0
    } else {
        (x - lo) / (2.0 * t.epsilon)
    }
}

/// Runs `n` independent trials of `t` on `p` and returns the number of ↑
/// outcomes. Trials are grouped in fixed chunks, chunk `i` drawing from
/// stream `i` of a ChaCha generator seeded with `seed`, so the count is the
/// same for any thread count.
pub fn simulate(p: &SpherePoint, t: &TestSpec, n: u64, seed: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidTestSpec("trial count must be at least 1".into()));
    }
    let prob = outcome_probability(p, t);
    if prob == 1.0 {
        return Ok(n);
    }
    if prob == 0.0 {
        return Ok(0);
    }
    let x = p.dot(&t.u);
    let point_elastic = t.epsilon == 0.0;
    let lo = t.d - t.epsilon;
    let width = 2.0 * t.epsilon;
    let chunks = n.div_ceil(CHUNK);
    let ups = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let len = CHUNK.min(n - c * CHUNK);
            (0..len)
                .filter(|_| {
                    if point_elastic {
                        rng.random_bool(0.5)
                    } else {
                        let lambda = lo + width * rng.random::<f64>();
                        lambda < x
                    }
                })
                .count() as u64
        })
        .sum();
    Ok(ups)
}

/// `(up, down)` eigensets of `t` over `sample`, as closed caps.
pub fn eigensets(sample: &[SpherePoint], t: &TestSpec) -> (StateSet, StateSet) {
    let mut up = StateSet::EMPTY;
    let mut down = StateSet::EMPTY;
    for (i, p) in sample.iter().enumerate() {
        let x = p.dot(&t.u);
        if x >= t.d + t.epsilon - DOT_TOL {
            up = up.with(i);
        }
        if x <= t.d - t.epsilon + DOT_TOL {
            down = down.with(i);
        }
    }
    (up, down)
}

const PHI: f64 = 1.618_033_988_749_895;

fn normalized_all(raw: &[[f64; 3]]) -> Vec<SpherePoint> {
    raw.iter()
        .map(|v| SpherePoint::normalized(v[0], v[1], v[2]).expect("preset vectors are non-zero"))
        .collect()
}

/// The 12 vertices of the regular icosahedron, listed in antipodal pairs.
pub fn icosahedron() -> Vec<SpherePoint> {
    let mut raw = Vec::with_capacity(12);
    for (a, b) in [(1.0, PHI), (1.0, -PHI)] {
        for v in [[0.0, a, b], [a, b, 0.0], [b, 0.0, a]] {
            raw.push(v);
            raw.push(v.map(|c: f64| -c));
        }
    }
    normalized_all(&raw)
}

/// The 8 vertices of the cube, in antipodal pairs.
pub fn cube() -> Vec<SpherePoint> {
    let mut raw = Vec::with_capacity(8);
    for (y, z) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        let v = [1.0, y, z];
        raw.push(v);
        raw.push(v.map(|c: f64| -c));
    }
    normalized_all(&raw)
}

/// The 6 vertices of the octahedron, in antipodal pairs.
pub fn octahedron() -> Vec<SpherePoint> {
    normalized_all(&[
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ])
}

/// `n` Fibonacci-spiral points on the upper hemisphere, each followed by its
/// antipode (so `2n` points).
pub fn fibonacci(n: usize) -> Vec<SpherePoint> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        // z in (0, 1): only one hemisphere, the antipodes fill the other
        let z = 1.0 - (i as f64 + 0.5) / n as f64;
        let r = (1.0 - z * z).sqrt();
        let phi = golden * i as f64;
        let p = SpherePoint::normalized(r * phi.cos(), r * phi.sin(), z).expect("non-zero");
        out.push(p);
        out.push(p.antipode());
    }
    out
}

/// Named sample presets.
pub fn preset(name: &str) -> Option<Vec<SpherePoint>> {
    match name {
        "icosahedron" => Some(icosahedron()),
        "cube" => Some(cube()),
        "octahedron" => Some(octahedron()),
        _ => name
            .strip_prefix("fibonacci")
            .and_then(|k| k.trim_start_matches(['-', ':']).parse().ok())
            .filter(|&k: &usize| k > 0 && 2 * k <= MAX_STATES)
            .map(fibonacci),
    }
}

/// Index of the antipode of `sample[i]` within `sample`.
pub fn antipode_index(sample: &[SpherePoint], i: usize) -> Option<usize> {
    let a = sample[i].antipode();
    sample.iter().position(|q| q.approx_eq(&a))
}

/// Uniform grid over `[−(1 − ε), 1 − ε]` with `steps` intervals; a single
/// `0` when `steps` is 0 or the range is degenerate.
pub fn d_grid(epsilon: f64, steps: usize) -> Vec<f64> {
    let half = 1.0 - epsilon;
    if steps == 0 || half <= NORM_TOL {
        return vec![0.0];
    }
    (0..=steps)
        .map(|k| -half + 2.0 * half * k as f64 / steps as f64)
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SphereModelConfig {
    pub sample: Vec<SpherePoint>,
    pub directions: Vec<SpherePoint>,
    pub epsilon: f64,
    pub d_grid: Vec<f64>,
}

impl SphereModelConfig {
    /// Directions default to the sample itself.
    pub fn new(sample: Vec<SpherePoint>, epsilon: f64, d_steps: usize) -> Self {
        SphereModelConfig {
            directions: sample.clone(),
            sample,
            epsilon,
            d_grid: d_grid(epsilon, d_steps),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sample.is_empty() {
            return Err(Error::EmptySample);
        }
        if self.sample.len() > MAX_STATES {
            return Err(Error::TooManyStates(self.sample.len()));
        }
        if let Some(i) = (0..self.sample.len()).find(|&i| antipode_index(&self.sample, i).is_none()) {
            return Err(Error::InvalidTestSpec(format!(
                "sample is not antipodally closed: point {i} has no antipode"
            )));
        }
        if self.directions.is_empty() {
            return Err(Error::InvalidTestSpec("no test directions".into()));
        }
        for &d in &self.d_grid {
            TestSpec::new(self.directions[0], self.epsilon, d)?;
        }
        Ok(())
    }

    pub fn tests(&self) -> Vec<TestSpec> {
        self.directions
            .iter()
            .flat_map(|&u| {
                self.d_grid.iter().map(move |&d| TestSpec {
                    u,
                    epsilon: self.epsilon,
                    d,
                })
            })
            .collect()
    }

    pub fn state_names(&self) -> Vec<String> {
        (0..self.sample.len()).map(|i| format!("v{i}")).collect()
    }
}

/// The discretized model: closed family generated by all eigensets, and the
/// `(up, down)` test pairs (deduplicated, in order of first appearance).
pub fn build_model(c: &SphereModelConfig) -> Result<(FiniteSps, Vec<TestPair>)> {
    c.validate()?;
    let caps: Vec<(StateSet, StateSet)> = c.tests().iter().map(|t| eigensets(&c.sample, t)).collect();
    let generators: Vec<StateSet> = caps.iter().flat_map(|&(u, d)| [u, d]).collect();
    let closure = FiniteClosureSystem::saturate(c.state_names(), &generators)?;
    let s = FiniteSps::from_closure(&closure);
    let mut tests = Vec::new();
    for (up, down) in caps {
        let pair = TestPair {
            yes: s.property_of(up).expect("eigensets are generators"),
            no: s.property_of(down).expect("eigensets are generators"),
        };
        if !tests.contains(&pair) {
            tests.push(pair);
        }
    }
    Ok((s, tests))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrthoSearchOutcome {
    /// Exhaustive search found this many orthocomplementations.
    Searched(usize),
    /// The lattice exceeds the cap; no search was run.
    CapExceeded { size: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleWitness {
    /// Sample index of the direction `u`.
    pub direction: usize,
    /// The ↑-eigen-property of `α(u, 0, 0)`.
    pub a_u: usize,
    /// `close({−u})`.
    pub b_u: usize,
    pub join: usize,
    /// `|κ(a_u ∨ b_u)|`.
    pub join_size: usize,
    /// `|κ(a_u) ∪ κ(b_u)|`.
    pub union_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub n_states: usize,
    pub n_props: usize,
    pub witness: Option<CounterexampleWitness>,
    pub ortho_search: OrthoSearchOutcome,
    /// Whether `A ↦ {q | q·a < 0 for all a ∈ A}` is an orthocomplementation
    /// of the model lattice (`None` when it does not map properties to
    /// properties).
    pub antipodal_polarity_is_ortho: Option<bool>,
}

/// The polarity `A ↦ {q | q·a < −DOT_TOL for all a ∈ A}` as a map on
/// properties, if every image is a property.
pub fn antipodal_polarity(s: &FiniteSps, sample: &[SpherePoint]) -> Option<OrthoMap> {
    s.props()
        .iter()
        .map(|k| {
            let image: StateSet = (0..sample.len())
                .filter(|&q| k.iter().all(|a| sample[q].dot(&sample[a]) < -DOT_TOL))
                .collect();
            s.property_of(image)
        })
        .collect::<Option<Vec<_>>>()
        .map(OrthoMap::new)
}

/// Searches the `ε = d = 0` model over `sample` (directions = sample) for a
/// direction `u` whose ↑-eigenset `a_u` is operationally classical while
/// `κ(a_u ∨ b_u)` with `b_u = close({−u})` is strictly larger than
/// `κ(a_u) ∪ κ(b_u)`.
pub fn counterexample_eps0(sample: &[SpherePoint], cap: usize) -> Result<CounterexampleReport> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    for (i, p) in sample.iter().enumerate() {
        for (j, q) in sample.iter().enumerate() {
            if p.dot(q).abs() <= DOT_TOL {
                return Err(Error::DegenerateSample(format!(
                    "point {j} lies on the equator of direction {i}"
                )));
            }
        }
    }
    let config = SphereModelConfig::new(sample.to_vec(), 0.0, 0);
    let (s, tests) = build_model(&config)?;
    let cop = OperationalClassicalAnalysis::new(&s, &tests)?;

    let mut witness = None;
    for (i, u) in sample.iter().enumerate() {
        let t = TestSpec::new(*u, 0.0, 0.0)?;
        let (up, _) = eigensets(sample, &t);
        let a_u = s.property_of(up).expect("eigensets are properties");
        if !cop.contains(a_u) {
            continue;
        }
        let Some(anti) = antipode_index(sample, i) else {
            continue;
        };
        let b_set = s.close(StateSet::singleton(anti));
        let b_u = s.property_of(b_set).expect("closures are properties");
        let join = s.join(a_u, b_u);
        let union = s.kappa(a_u).union(b_set);
        if s.kappa(join) != union {
            witness = Some(CounterexampleWitness {
                direction: i,
                a_u,
                b_u,
                join,
                join_size: s.kappa(join).len(),
                union_size: union.len(),
            });
            break;
        }
    }

    let ortho_search = if s.n_props() > cap {
        OrthoSearchOutcome::CapExceeded { size: s.n_props(), cap }
    } else {
        OrthoSearchOutcome::Searched(enumerate_orthos(&s, cap)?.len())
    };
    let antipodal_polarity_is_ortho = antipodal_polarity(&s, sample).map(|m| verify_ortho(&s, &m).passed());
    Ok(CounterexampleReport {
        n_states: s.n_states(),
        n_props: s.n_props(),
        witness,
        ortho_search,
        antipodal_polarity_is_ortho,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    pub d_values: usize,
    pub n_props: usize,
    pub n_topological: usize,
    /// Unordered pairs of closed sets whose union is not closed.
    pub additivity_defect: usize,
    pub t_classical: bool,
}

/// One row per `ε` (which must be sorted descending), each built with
/// `d_steps` grid intervals.
pub fn epsilon_sweep(
    sample: &[SpherePoint],
    directions: &[SpherePoint],
    eps_list: &[f64],
    d_steps: usize,
) -> Result<Vec<SweepRow>> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if eps_list.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidTestSpec("epsilon list must be sorted descending".into()));
    }
    eps_list
        .iter()
        .map(|&epsilon| {
            let config = SphereModelConfig {
                sample: sample.to_vec(),
                directions: directions.to_vec(),
                epsilon,
                d_grid: d_grid(epsilon, d_steps),
            };
            let (s, _) = build_model(&config)?;
            Ok(SweepRow {
                epsilon,
                d_values: config.d_grid.len(),
                n_props: s.n_props(),
                n_topological: topological_properties(&s).len(),
                additivity_defect: s.closure_system().additivity_defect(),
                t_classical: is_t_classical(&s),
            })
        })
        .collect()
}
