//! Essential curves and Dehn-filling witnesses read off a pillowcase image.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use pillowcase_core::{essential_class, segment_lpi_crossings, wrap_pi, PillowcasePolyline, Segment, TWO_PI};
use rayon::prelude::*;
use serde::Serialize;

use crate::rep::{commutator_gap, peripheral_point, relators_residual};
use crate::solver::{refine, trace_fingerprint};
use pillowcase_core::PillowcasePoint;
use crate::{GroupPresentation, PillowcaseImage, Representation, SolverConfig, SurepError, Word};

/// Classes searched for, in order of preference.
const MAX_CLASS: i64 = 3;
/// Number of cycle roots tried.
const MAX_ROOTS: usize = 8;

struct Graph {
    // (neighbour, crossings with Lπ, length)
    adj: Vec<Vec<(usize, i64, f64)>>,
}

impl Graph {
    fn new(img: &PillowcaseImage) -> Self {
        let mut adj = vec![Vec::new(); img.points.len()];
        for e in &img.edges {
            let a = img.points[e.from].point.coords();
            let b = img.points[e.to].point.nearest_lift(a.0, a.1);
            let seg = Segment::new(a, b);
            if let Ok(w) = segment_lpi_crossings(&seg) {
                let len = seg.length();
                adj[e.from].push((e.to, w, len));
                adj[e.to].push((e.from, -w, len));
            }
        }
        Graph { adj }
    }

    /// Roots of non-tree edges closing cycles of nonzero class, shortest
    /// edge first.
    fn cycle_roots(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut phi: Vec<Option<i64>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            if phi[s].is_some() {
                continue;
            }
            phi[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, w, _) in &self.adj[u] {
                    if phi[v].is_none() {
                        phi[v] = Some(phi[u].unwrap() + w);
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
        }
        let mut closing: Vec<(i64, f64, usize)> = Vec::new();
        for u in 0..n {
            for &(v, w, len) in &self.adj[u] {
                let c = phi[u].unwrap() + w - phi[v].unwrap();
                if c > 0 && parent[v] != u && parent[u] != v {
                    closing.push((c, len, u));
                }
            }
        }
        closing.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)).then(x.2.cmp(&y.2)));
        let mut roots = Vec::new();
        for (_, _, u) in closing {
            if !roots.contains(&u) {
                roots.push(u);
                if roots.len() == MAX_ROOTS {
                    break;
                }
            }
        }
        roots
    }

    /// Shortest closed walk at `root` with class `target`, found by Dijkstra
    /// on the cover recording the class.
    fn shortest_cycle(&self, root: usize, target: i64) -> Option<(f64, Vec<usize>)> {
        let levels = (2 * MAX_CLASS + 1) as usize;
        let state = |v: usize, k: i64| v * levels + (k + MAX_CLASS) as usize;
        let n = self.adj.len() * levels;
        let mut dist = vec![f64::INFINITY; n];
        let mut prev = vec![usize::MAX; n];
        let start = state(root, 0);
        let goal = state(root, target);
        dist[start] = 0.0;
        let mut heap = BinaryHeap::from([(Reverse(Ordered(0.0)), start)]);
        while let Some((Reverse(d), s)) = heap.pop() {
            let d = d.0;
            if d > dist[s] {
                continue;
            }
            if s == goal {
                break;
            }
            let (u, k) = (s / levels, (s % levels) as i64 - MAX_CLASS);
            for &(v, w, len) in &self.adj[u] {
                let k2 = k + w;
                if k2.abs() > MAX_CLASS {
                    continue;
                }
                let t = state(v, k2);
                if d + len < dist[t] {
                    dist[t] = d + len;
                    prev[t] = s;
                    heap.push((Reverse(Ordered(d + len)), t));
                }
            }
        }
        if !dist[goal].is_finite() {
            return None;
        }
        let mut path = Vec::new();
        let mut s = goal;
        while s != start {
            path.push(s / levels);
            s = prev[s];
        }
        path.reverse();
        path.pop();
        path.insert(0, root);
        Some((dist[goal], path))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
struct Ordered(f64);

impl Eq for Ordered {}

impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// A closed curve in the image avoiding `P` and `Q` with nonzero class,
/// preferring class `±1` and then shorter curves.
pub fn extract_essential_curve(img: &PillowcaseImage) -> Option<PillowcasePolyline> {
    let graph = Graph::new(img);
    let roots = graph.cycle_roots();
    for target in 1..=MAX_CLASS {
        let best = roots
            .par_iter()
            .filter_map(|&r| graph.shortest_cycle(r, target))
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        if let Some((_, path)) = best {
            let curve = PillowcasePolyline::new(path.iter().map(|&i| img.points[i].point).collect(), true);
            if essential_class(&curve).map(|c| c != 0).unwrap_or(false) {
                return Some(curve);
            }
        }
    }
    None
}

/// An irreducible representation of the Dehn filling along `μ^p λ^q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurgeryWitness {
    pub rep: Representation,
    pub point: PillowcasePoint,
    /// Maximum over the knot relators and the filling relator.
    pub residual: f64,
    pub gap: f64,
}

/// The filling relator `μ^p λ^q`.
pub fn filling_relator(pres: &GroupPresentation, p: i64, q: i64) -> Word {
    pres.meridian.pow(p).concat(&pres.longitude.pow(q))
}

/// Image points seeding a search for witnesses on `pα + qβ ≡ 0 (mod 2π)`.
fn slope_seeds(img: &PillowcaseImage, p: i64, q: i64) -> Vec<usize> {
    let f = |x: (f64, f64)| p as f64 * x.0 + q as f64 * x.1;
    let usable = |i: usize| !img.points[i].reducible && img.points[i].witness.is_some();
    let mut seeds = Vec::new();
    for e in &img.edges {
        if !usable(e.from) && !usable(e.to) {
            continue;
        }
        let a = img.points[e.from].point.coords();
        let b = img.points[e.to].point.nearest_lift(a.0, a.1);
        let (fa, fb) = (f(a), f(b));
        let (lo, hi) = (fa.min(fb), fa.max(fb));
        let k = (lo / TWO_PI).ceil();
        if k * TWO_PI > hi {
            continue;
        }
        let t = if fb == fa { 0.0 } else { (k * TWO_PI - fa) / (fb - fa) };
        let pick = match (usable(e.from), usable(e.to)) {
            (true, true) => {
                if t <= 0.5 {
                    e.from
                } else {
                    e.to
                }
            }
            (true, false) => e.from,
            _ => e.to,
        };
        seeds.push(pick);
    }
    seeds.sort_unstable();
    seeds.dedup();
    seeds
}

/// Every distinct witness reached from the image's crossings with the slope
/// line, ordered by boundary point. Witnesses must have irreducibility gap
/// above `config.min_gap`.
pub fn surgery_representations(
    pres: &GroupPresentation,
    img: &PillowcaseImage,
    p: i64,
    q: i64,
    config: &SolverConfig,
) -> Result<Vec<SurgeryWitness>, SurepError> {
    if num_integer::gcd(p, q) != 1 {
        return Err(SurepError::InvalidSlope(p, q));
    }
    let mut relators = pres.relators.clone();
    relators.push(filling_relator(pres, p, q));
    let seeds = slope_seeds(img, p, q);
    let found: Vec<SurgeryWitness> = config.install(|| {
        seeds
            .par_iter()
            .filter_map(|&i| {
                let init = img.points[i].witness.as_ref()?;
                let (rep, _) = refine(pres.generator_count(), &relators, &[], init, config);
                let residual = relators_residual(&rep, &relators);
                let gap = commutator_gap(&rep.images);
                if residual >= config.tol || gap <= config.min_gap {
                    return None;
                }
                let point = peripheral_point(&rep, &pres.meridian, &pres.longitude).ok()?;
                let (x, y) = point.coords();
                (wrap_pi(p as f64 * x + q as f64 * y).abs() < 1e-6).then_some(SurgeryWitness { rep, point, residual, gap })
            })
            .collect()
    });
    let mut out: Vec<SurgeryWitness> = Vec::new();
    for w in found {
        let fw = trace_fingerprint(&w.rep);
        let duplicate = out.iter().any(|o| {
            o.point.distance(&w.point) < 1e-6
                && trace_fingerprint(&o.rep).iter().zip(&fw).all(|(a, b)| (a - b).abs() < 1e-6)
        });
        if !duplicate {
            out.push(w);
        }
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.point.coords(), b.point.coords());
        x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1))
    });
    Ok(out)
}

/// The first witness of [`surgery_representations`], if any.
pub fn find_surgery_representation(
    pres: &GroupPresentation,
    img: &PillowcaseImage,
    p: i64,
    q: i64,
    config: &SolverConfig,
) -> Result<Option<SurgeryWitness>, SurepError> {
    Ok(surgery_representations(pres, img, p, q, config)?.into_iter().next())
}
