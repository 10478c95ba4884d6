use nalgebra::{DMatrix, DVector};
use pillowcase_core::PillowcasePoint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::rep::{commutator_gap, letter_image, peripheral_point, relators_residual};
use crate::{GroupPresentation, Representation, SurepError, UnitQuaternion, Word};

/// Numerical settings shared by the sweep, the surgery search and the gluer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Accept a solution when every equation has `‖w − target‖ < tol`.
    pub tol: f64,
    /// Random starts per grid node.
    pub restarts: usize,
    pub seed: u64,
    /// Number of grid intervals on `[0, π]`.
    pub resolution: usize,
    /// Levenberg–Marquardt iterations per start.
    pub max_iterations: usize,
    /// Irreducibility gap required of glued witnesses.
    pub min_gap: f64,
    /// Solutions with a smaller gap are treated as reducible.
    pub irreducible_gap: f64,
    /// Forbid early cancellation in parallel searches.
    pub deterministic: bool,
    /// Worker cap; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Also sweep the longitude angle with `ρ(λ)` constrained.
    pub longitude_sweep: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-8,
            restarts: 20,
            seed: 0,
            resolution: 100,
            max_iterations: 200,
            min_gap: 0.1,
            irreducible_gap: 1e-4,
            deterministic: true,
            threads: None,
            longitude_sweep: true,
        }
    }
}

impl SolverConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, SurepError> {
        let cfg: SolverConfig = toml::from_str(text).map_err(|e| SurepError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SurepError> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(SurepError::Config(format!("tol must lie in (0, 1), got {}", self.tol)));
        }
        if self.restarts == 0 {
            return Err(SurepError::Config("restarts must be positive".into()));
        }
        if self.resolution < 2 {
            return Err(SurepError::Resolution(self.resolution));
        }
        if self.threads == Some(0) {
            return Err(SurepError::Config("threads must be positive".into()));
        }
        Ok(())
    }

    /// Runs `f` on a pool capped at `threads` workers.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.threads {
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
            None => f(),
        }
    }
}

/// A word required to equal a fixed quaternion.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub word: Word,
    pub target: UnitQuaternion,
}

/// Relators (words equal to 1) plus constraints, over `generators` unknowns.
#[derive(Debug, Clone)]
pub struct EquationSystem {
    pub generators: usize,
    equations: Vec<(Word, UnitQuaternion)>,
    relator_count: usize,
}

impl EquationSystem {
    pub fn new(generators: usize, relators: &[Word], constraints: &[Constraint]) -> Self {
        let mut equations: Vec<(Word, UnitQuaternion)> =
            relators.iter().map(|r| (r.clone(), UnitQuaternion::ONE)).collect();
        equations.extend(constraints.iter().map(|c| (c.word.clone(), c.target)));
        EquationSystem { generators, equations, relator_count: relators.len() }
    }

    pub fn relators(&self) -> impl Iterator<Item = &Word> {
        self.equations[..self.relator_count].iter().map(|(w, _)| w)
    }

    /// `max ‖w(x) − target‖` over all equations.
    pub fn residual(&self, x: &[UnitQuaternion]) -> f64 {
        self.equations
            .iter()
            .map(|(w, t)| crate::rep::eval_unchecked(x, w).dist(*t))
            .fold(0.0, f64::max)
    }

    fn evaluate(&self, x: &[UnitQuaternion], jac: Option<&mut DMatrix<f64>>) -> DVector<f64> {
        let mut r = DVector::zeros(4 * self.equations.len());
        let mut jac = jac;
        if let Some(j) = jac.as_deref_mut() {
            j.fill(0.0);
        }
        let basis = [UnitQuaternion::I, UnitQuaternion::J, UnitQuaternion::K];
        let mut prefix = Vec::new();
        let mut suffix = Vec::new();
        for (e, (word, target)) in self.equations.iter().enumerate() {
            let letters = word.letters();
            let len = letters.len();
            prefix.clear();
            prefix.push(UnitQuaternion::ONE);
            for &l in letters {
                let last = *prefix.last().unwrap();
                prefix.push(last.mul_raw(letter_image(x, l)));
            }
            let value = prefix[len];
            let row = 4 * e;
            r[row] = value.w - target.w;
            r[row + 1] = value.x - target.x;
            r[row + 2] = value.y - target.y;
            r[row + 3] = value.z - target.z;
            let Some(j) = jac.as_deref_mut() else { continue };
            suffix.clear();
            suffix.resize(len + 1, UnitQuaternion::ONE);
            for m in (0..len).rev() {
                suffix[m] = letter_image(x, letters[m]).mul_raw(suffix[m + 1]);
            }
            // right perturbation g → g·exp(δ): a letter g at position m
            // contributes P[m]·e·S[m], a letter g⁻¹ contributes −P[m−1]·e·S[m−1]
            for (m, &l) in letters.iter().enumerate() {
                let (g, pos) = Word::decode(l);
                for (k, &eb) in basis.iter().enumerate() {
                    let d = if pos {
                        prefix[m + 1].mul_raw(eb).mul_raw(suffix[m + 1])
                    } else {
                        -prefix[m].mul_raw(eb).mul_raw(suffix[m])
                    };
                    let col = 3 * g + k;
                    j[(row, col)] += d.w;
                    j[(row + 1, col)] += d.x;
                    j[(row + 2, col)] += d.y;
                    j[(row + 3, col)] += d.z;
                }
            }
        }
        r
    }

    fn max_block(&self, r: &DVector<f64>) -> f64 {
        (0..self.equations.len())
            .map(|e| (r[4 * e].powi(2) + r[4 * e + 1].powi(2) + r[4 * e + 2].powi(2) + r[4 * e + 3].powi(2)).sqrt())
            .fold(0.0, f64::max)
    }

    /// Levenberg–Marquardt on `(S³)^n` from `init`. Returns the final point
    /// and its residual; the caller decides acceptance.
    pub fn solve(&self, init: &[UnitQuaternion], tol: f64, max_iterations: usize) -> (Vec<UnitQuaternion>, f64) {
        let n = 3 * self.generators;
        let mut x = init.to_vec();
        if self.equations.is_empty() || n == 0 {
            let res = self.residual(&x);
            return (x, res);
        }
        let mut jac = DMatrix::zeros(4 * self.equations.len(), n);
        let mut r = self.evaluate(&x, Some(&mut jac));
        let mut cost = r.norm_squared();
        let mut lambda = 1e-3;
        let mut polish = 0;
        for _ in 0..max_iterations {
            let res = self.max_block(&r);
            if res < tol {
                // Gauss-Newton polish; torus-knot relators are degenerate
                // at irreducibles, so convergence there is only linear
                if polish == 0 {
                    lambda = 1e-12;
                }
                polish += 1;
                if (polish > 5 && res < POLISH_TOL) || polish > MAX_POLISH {
                    break;
                }
            }
            let jt = jac.transpose();
            let a = &jt * &jac;
            let g = &jt * &r;
            let mut accepted = false;
            while lambda < 1e12 {
                let mut m = a.clone();
                for i in 0..n {
                    m[(i, i)] += lambda;
                }
                let step = match m.clone().cholesky() {
                    Some(ch) => ch.solve(&g),
                    None => match m.lu().solve(&g) {
                        Some(s) => s,
                        None => {
                            lambda *= 4.0;
                            continue;
                        }
                    },
                };
                let trial: Vec<UnitQuaternion> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &q)| q * UnitQuaternion::exp([-step[3 * i], -step[3 * i + 1], -step[3 * i + 2]]))
                    .collect();
                let rt = self.evaluate(&trial, None);
                let ct = rt.norm_squared();
                if ct < cost {
                    x = trial;
                    r = self.evaluate(&x, Some(&mut jac));
                    cost = ct;
                    lambda = (lambda / 3.0).max(1e-15);
                    accepted = true;
                    break;
                }
                lambda *= 4.0;
            }
            if !accepted {
                break;
            }
        }
        let res = self.max_block(&r);
        (x, res)
    }
}

/// Residual aimed for after the tolerance is met.
const POLISH_TOL: f64 = 1e-13;
/// Cap on polishing iterations.
const MAX_POLISH: usize = 40;

/// A solver output with its invariants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    pub rep: Representation,
    pub residual: f64,
    pub gap: f64,
    pub point: PillowcasePoint,
}

impl Solution {
    pub(crate) fn from_rep(rep: Representation, residual: f64, pres: &GroupPresentation) -> Option<Self> {
        let point = peripheral_point(&rep, &pres.meridian, &pres.longitude).ok()?;
        let gap = commutator_gap(&rep.images);
        Some(Solution { rep, residual, gap, point })
    }

    /// Conjugation-invariant fingerprint: generator traces and pairwise
    /// product traces.
    pub fn fingerprint(&self) -> Vec<f64> {
        trace_fingerprint(&self.rep)
    }
}

pub(crate) fn trace_fingerprint(rep: &Representation) -> Vec<f64> {
    let im = &rep.images;
    let mut f: Vec<f64> = im.iter().map(|q| q.trace()).collect();
    for i in 0..im.len() {
        for j in i + 1..im.len() {
            f.push(im[i].mul_raw(im[j]).trace());
        }
    }
    f
}

pub(crate) fn same_class(a: &Solution, b: &Solution, tol: f64) -> bool {
    let (fa, fb) = (a.fingerprint(), b.fingerprint());
    fa.iter().zip(&fb).all(|(x, y)| (x - y).abs() < tol) && a.point.distance(&b.point) < 1e3 * tol
}

/// Pushes `s` unless an equivalent solution is present.
pub(crate) fn push_distinct(list: &mut Vec<Solution>, s: Solution) -> bool {
    if list.iter().any(|t| same_class(t, &s, 1e-6)) {
        return false;
    }
    list.push(s);
    true
}

pub(crate) fn node_rng(seed: u64, stream: u64, node: u64) -> ChaCha8Rng {
    // splitmix-style mixing keeps nearby nodes decorrelated
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ node.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Random-restart solve of `pres` with extra constraints; distinct
/// solutions with residual below `config.tol`.
pub fn solve_with_constraints(
    pres: &GroupPresentation,
    constraints: &[Constraint],
    config: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<Solution> {
    let sys = EquationSystem::new(pres.generator_count(), &pres.relators, constraints);
    let mut out = Vec::new();
    for _ in 0..config.restarts {
        let init: Vec<UnitQuaternion> = (0..pres.generator_count()).map(|_| UnitQuaternion::random(rng)).collect();
        let (x, res) = sys.solve(&init, config.tol, config.max_iterations);
        if res >= config.tol {
            continue;
        }
        let residual = relators_residual(&Representation::new(x.clone()), &pres.relators).max(res);
        if let Some(s) = Solution::from_rep(Representation::new(x), residual, pres) {
            push_distinct(&mut out, s);
        }
    }
    out
}

pub(crate) fn meridian_constraint(pres: &GroupPresentation, alpha: f64) -> Constraint {
    Constraint { word: pres.meridian.clone(), target: UnitQuaternion::exp_i(alpha) }
}

pub(crate) fn longitude_constraint(pres: &GroupPresentation, beta: f64) -> Constraint {
    Constraint { word: pres.longitude.clone(), target: UnitQuaternion::exp_i(beta) }
}

/// Representations with `ρ(μ) = e^{iα}`, deduplicated up to conjugation.
pub fn solve_at_meridian_angle(pres: &GroupPresentation, alpha: f64, config: &SolverConfig) -> Vec<Representation> {
    let mut rng = node_rng(config.seed, 0, alpha.to_bits());
    solve_with_constraints(pres, &[meridian_constraint(pres, alpha)], config, &mut rng)
        .into_iter()
        .map(|s| s.rep)
        .collect()
}

/// Refines `init` as a solution of `relators` plus `constraints`.
pub fn refine(
    generators: usize,
    relators: &[Word],
    constraints: &[Constraint],
    init: &Representation,
    config: &SolverConfig,
) -> (Representation, f64) {
    let sys = EquationSystem::new(generators, relators, constraints);
    let (x, res) = sys.solve(&init.images, config.tol, config.max_iterations);
    (Representation::new(x), res)
}
