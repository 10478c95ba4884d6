//! Pillowcase images of representation varieties.

use std::collections::HashSet;
use std::f64::consts::PI;

use petgraph::unionfind::UnionFind;
use pillowcase_core::{PillowcasePoint, PillowcasePolyline};
use rayon::prelude::*;
use serde::Serialize;

use crate::index::PointIndex;
use crate::reducible::reducible_curves;
use crate::rep::relators_residual;
use crate::solver::{
    longitude_constraint, meridian_constraint, node_rng, same_class, solve_with_constraints, Constraint, EquationSystem,
    Solution,
};
use crate::{GroupPresentation, Representation, SolverConfig, SurepError};

/// Bisection depth when a continuation step fails.
const MAX_BISECTION: u32 = 8;
/// Image samples must polish below this fraction of the tolerance.
const POLISHED_FRACTION: f64 = 1e-3;
/// Points of the same kind closer than this are merged.
const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    /// Consecutive samples of one continuation path.
    Track,
    /// Consecutive samples of an abelian family.
    Reducible,
    /// Nearby samples of different paths.
    Proximity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImageEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImagePoint {
    pub point: PillowcasePoint,
    /// `None` only for synthetic images.
    pub witness: Option<Representation>,
    pub irreducibility_gap: f64,
    pub residual: f64,
    pub reducible: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ImageDiagnostics {
    /// Grid nodes solved, over both sweeps.
    pub nodes: usize,
    /// Distinct irreducible solutions found at grid nodes.
    pub node_solutions: usize,
    /// Samples added by continuation.
    pub tracked_samples: usize,
    /// Irreducible points within two grid steps of `(0, 0)` or `(π, 0)`.
    pub corner_witnesses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PillowcaseImage {
    pub resolution: usize,
    pub points: Vec<ImagePoint>,
    pub edges: Vec<ImageEdge>,
    /// Maximal chains of non-proximity edges.
    pub arcs: Vec<PillowcasePolyline>,
    /// Point indices of each arc.
    pub arc_points: Vec<Vec<usize>>,
    /// Points without any edge.
    pub isolated: Vec<usize>,
    pub diagnostics: ImageDiagnostics,
}

impl PillowcaseImage {
    /// Grid step `π / resolution`.
    pub fn step(&self) -> f64 {
        PI / self.resolution as f64
    }

    pub fn irreducible_points(&self) -> impl Iterator<Item = (usize, &ImagePoint)> {
        self.points.iter().enumerate().filter(|(_, p)| !p.reducible)
    }

    /// A witness-free image whose points and edges are the given polylines.
    pub fn from_arcs(arcs: &[PillowcasePolyline], resolution: usize, reducible: bool) -> Self {
        let mut b = Builder::new(resolution);
        for arc in arcs {
            let ids: Vec<usize> = arc
                .vertices
                .iter()
                .map(|&point| {
                    b.add_point(ImagePoint {
                        point,
                        witness: None,
                        irreducibility_gap: if reducible { 0.0 } else { 1.0 },
                        residual: 0.0,
                        reducible,
                    })
                })
                .collect();
            b.add_path(&ids, arc.closed, if reducible { EdgeKind::Reducible } else { EdgeKind::Track });
        }
        b.finish(ImageDiagnostics::default())
    }

    /// Polylines of the whole image, one per arc.
    pub fn polylines(&self) -> &[PillowcasePolyline] {
        &self.arcs
    }
}

struct Builder {
    resolution: usize,
    points: Vec<ImagePoint>,
    reducible_index: PointIndex,
    irreducible_index: PointIndex,
    // global ids of the points in each index
    kind_ids: [Vec<usize>; 2],
    edges: Vec<ImageEdge>,
    seen: HashSet<(usize, usize)>,
}

impl Builder {
    fn new(resolution: usize) -> Self {
        let h = PI / resolution as f64;
        Builder {
            resolution,
            points: Vec::new(),
            reducible_index: PointIndex::new(h),
            irreducible_index: PointIndex::new(h),
            kind_ids: [Vec::new(), Vec::new()],
            edges: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn add_point(&mut self, p: ImagePoint) -> usize {
        let index = if p.reducible { &mut self.reducible_index } else { &mut self.irreducible_index };
        let ids = &mut self.kind_ids[p.reducible as usize];
        if let Some(i) = index.nearest(&p.point, MERGE_TOL) {
            return ids[i];
        }
        index.insert(p.point);
        ids.push(self.points.len());
        self.points.push(p);
        self.points.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize, kind: EdgeKind) {
        if a == b || !self.seen.insert((a.min(b), a.max(b))) {
            return;
        }
        self.edges.push(ImageEdge { from: a, to: b, kind });
    }

    fn add_path(&mut self, ids: &[usize], closed: bool, kind: EdgeKind) {
        for w in ids.windows(2) {
            self.add_edge(w[0], w[1], kind);
        }
        if closed && ids.len() > 2 {
            self.add_edge(ids[ids.len() - 1], ids[0], kind);
        }
    }

    fn add_proximity_edges(&mut self) {
        let r = 2.0 * PI / self.resolution as f64;
        let n = self.points.len();
        let mut uf = UnionFind::<usize>::new(n);
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        let mut all = PointIndex::new(r);
        for p in &self.points {
            all.insert(p.point);
        }
        let mut extra = Vec::new();
        for i in 0..n {
            if self.points[i].reducible {
                continue;
            }
            let ci = uf.find(i);
            let mut best: Vec<(usize, usize, f64)> = Vec::new();
            for j in all.within(&self.points[i].point, r) {
                let cj = uf.find(j);
                if cj == ci {
                    continue;
                }
                let d = self.points[i].point.distance(&self.points[j].point);
                match best.iter_mut().find(|(c, _, _)| *c == cj) {
                    Some(slot) if d < slot.2 => *slot = (cj, j, d),
                    Some(_) => {}
                    None => best.push((cj, j, d)),
                }
            }
            extra.extend(best.into_iter().map(|(_, j, _)| (i, j)));
        }
        for (i, j) in extra {
            self.add_edge(i, j, EdgeKind::Proximity);
        }
    }

    fn finish(mut self, mut diagnostics: ImageDiagnostics) -> PillowcaseImage {
        self.add_proximity_edges();
        let n = self.points.len();
        let mut adj = vec![Vec::new(); n];
        let mut degree = vec![0usize; n];
        for (k, e) in self.edges.iter().enumerate() {
            degree[e.from] += 1;
            degree[e.to] += 1;
            if e.kind != EdgeKind::Proximity {
                adj[e.from].push((e.to, k));
                adj[e.to].push((e.from, k));
            }
        }
        let isolated: Vec<usize> = (0..n).filter(|&i| degree[i] == 0).collect();
        let arc_points = decompose(&adj);
        let arcs = arc_points
            .iter()
            .map(|(ids, closed)| PillowcasePolyline::new(ids.iter().map(|&i| self.points[i].point).collect(), *closed))
            .collect();
        let r = 2.0 * PI / self.resolution as f64;
        let corners = [PillowcasePoint::new(0.0, 0.0), PillowcasePoint::new(PI, 0.0)];
        diagnostics.corner_witnesses = (0..n)
            .filter(|&i| !self.points[i].reducible && corners.iter().any(|c| c.distance(&self.points[i].point) < r))
            .collect();
        PillowcaseImage {
            resolution: self.resolution,
            points: self.points,
            edges: self.edges,
            arcs,
            arc_points: arc_points.into_iter().map(|(ids, _)| ids).collect(),
            isolated,
            diagnostics,
        }
    }
}

/// Splits a graph into maximal paths between vertices of degree other than
/// two, then the remaining cycles.
fn decompose(adj: &[Vec<(usize, usize)>]) -> Vec<(Vec<usize>, bool)> {
    let edge_count = adj.iter().flatten().map(|&(_, k)| k + 1).max().unwrap_or(0);
    let mut used = vec![false; edge_count];
    let mut out = Vec::new();
    let walk = |start: usize, first: (usize, usize), used: &mut Vec<bool>| -> Vec<usize> {
        let mut path = vec![start];
        let (mut cur, mut k) = first;
        loop {
            used[k] = true;
            path.push(cur);
            if adj[cur].len() != 2 || cur == start {
                break;
            }
            match adj[cur].iter().find(|&&(_, e)| !used[e]) {
                Some(&next) => {
                    cur = next.0;
                    k = next.1;
                }
                None => break,
            }
        }
        path
    };
    for v in 0..adj.len() {
        if adj[v].len() == 2 {
            continue;
        }
        for &step in &adj[v] {
            if !used[step.1] {
                out.push((walk(v, step, &mut used), false));
            }
        }
    }
    for v in 0..adj.len() {
        if let Some(&step) = adj[v].iter().find(|&&(_, e)| !used[e]) {
            let mut path = walk(v, step, &mut used);
            if path.last() == Some(&v) {
                path.pop();
            }
            out.push((path, true));
        }
    }
    out
}

#[derive(Clone, Copy)]
enum SweepKind {
    Meridian,
    Longitude,
}

struct Sweep<'a> {
    pres: &'a GroupPresentation,
    config: &'a SolverConfig,
    kind: SweepKind,
    h: f64,
    res: usize,
}

struct Chain {
    origin: (usize, usize),
    samples: Vec<Solution>,
    terminal: Option<(usize, usize)>,
}

impl Sweep<'_> {
    fn constraint(&self, t: f64) -> Constraint {
        match self.kind {
            SweepKind::Meridian => meridian_constraint(self.pres, t),
            SweepKind::Longitude => longitude_constraint(self.pres, t),
        }
    }

    fn stream(&self) -> u64 {
        match self.kind {
            SweepKind::Meridian => 1,
            SweepKind::Longitude => 2,
        }
    }

    /// Irreducible and well conditioned: near-singular solutions do not
    /// polish far below the tolerance and have unreliable boundary points.
    fn irreducible(&self, s: &Solution) -> bool {
        s.gap > self.config.irreducible_gap && s.residual < POLISHED_FRACTION * self.config.tol
    }

    fn node_solutions(&self) -> Vec<Vec<Solution>> {
        (0..=self.res)
            .into_par_iter()
            .map(|k| {
                let mut rng = node_rng(self.config.seed, self.stream(), k as u64);
                solve_with_constraints(self.pres, &[self.constraint(k as f64 * self.h)], self.config, &mut rng)
                    .into_iter()
                    .filter(|s| self.irreducible(s))
                    .collect()
            })
            .collect()
    }

    fn step_to(&self, from: &Solution, t: f64) -> Option<Solution> {
        let sys = EquationSystem::new(self.pres.generator_count(), &self.pres.relators, &[self.constraint(t)]);
        let (x, res) = sys.solve(&from.rep.images, self.config.tol, self.config.max_iterations);
        if res >= self.config.tol {
            return None;
        }
        let rep = Representation::new(x);
        let residual = relators_residual(&rep, &self.pres.relators).max(res);
        let s = Solution::from_rep(rep, residual, self.pres)?;
        (self.irreducible(&s) && s.point.distance(&from.point) < 2.0 * self.h).then_some(s)
    }

    /// Continues `from` at parameter `t0` to `t1`, bisecting failed steps.
    fn track(&self, from: &Solution, t0: f64, t1: f64, depth: u32, out: &mut Vec<Solution>) -> bool {
        if let Some(s) = self.step_to(from, t1) {
            out.push(s);
            return true;
        }
        if depth == 0 {
            return false;
        }
        let mid = 0.5 * (t0 + t1);
        if !self.track(from, t0, mid, depth - 1, out) {
            return false;
        }
        let last = out.last().cloned().expect("successful track leaves a sample");
        self.track(&last, mid, t1, depth - 1, out)
    }

    fn chain(&self, nodes: &[Vec<Solution>], origin: (usize, usize), forward: bool) -> Chain {
        let mut cur = nodes[origin.0][origin.1].clone();
        let mut k = origin.0;
        let mut samples = Vec::new();
        let mut terminal = None;
        loop {
            let next = if forward { k + 1 } else { k.wrapping_sub(1) };
            if next > self.res {
                break;
            }
            let before = samples.len();
            let ok = self.track(&cur, k as f64 * self.h, next as f64 * self.h, MAX_BISECTION, &mut samples);
            if !ok || samples.len() == before {
                break;
            }
            let end = samples.last().unwrap();
            if let Some(j) = nodes[next].iter().position(|s| same_class(s, end, 1e-6)) {
                samples.pop();
                terminal = Some((next, j));
                break;
            }
            cur = end.clone();
            k = next;
        }
        Chain { origin, samples, terminal }
    }

    fn run(&self) -> (Vec<Vec<Solution>>, Vec<Chain>) {
        let nodes = self.node_solutions();
        let origins: Vec<(usize, usize)> =
            nodes.iter().enumerate().flat_map(|(k, v)| (0..v.len()).map(move |i| (k, i))).collect();
        let mut chains: Vec<Chain> = origins.par_iter().map(|&o| self.chain(&nodes, o, true)).collect();
        let incoming: HashSet<(usize, usize)> = chains.iter().filter_map(|c| c.terminal).collect();
        let lonely: Vec<(usize, usize)> =
            origins.into_iter().filter(|o| o.0 > 0 && !incoming.contains(o)).collect();
        chains.extend(lonely.par_iter().map(|&o| self.chain(&nodes, o, false)).collect::<Vec<_>>());
        (nodes, chains)
    }
}

fn solution_point(s: &Solution) -> ImagePoint {
    ImagePoint {
        point: s.point,
        witness: Some(s.rep.clone()),
        irreducibility_gap: s.gap,
        residual: s.residual,
        reducible: false,
    }
}

/// Samples the image of the representation variety in the pillowcase.
///
/// Irreducible representations are found by random restarts at the grid
/// nodes `α = kπ/N` (and `β = kπ/N` when `config.longitude_sweep` is set)
/// and continued between nodes; abelian representations are enumerated
/// from the characters of `H1`.
pub fn sample_pillowcase_image(
    pres: &GroupPresentation,
    resolution: usize,
    config: &SolverConfig,
) -> Result<PillowcaseImage, SurepError> {
    if resolution < 2 {
        return Err(SurepError::Resolution(resolution));
    }
    config.validate()?;
    pres.validate().map_err(|e| SurepError::Config(e.to_string()))?;
    config.install(|| build_image(pres, resolution, config))
}

fn build_image(pres: &GroupPresentation, resolution: usize, config: &SolverConfig) -> Result<PillowcaseImage, SurepError> {
    let h = PI / resolution as f64;
    let mut b = Builder::new(resolution);
    let mut diagnostics = ImageDiagnostics::default();

    for curve in reducible_curves(pres, resolution) {
        let ids: Vec<usize> = curve
            .samples
            .into_iter()
            .map(|(point, rep)| {
                let residual = relators_residual(&rep, &pres.relators);
                b.add_point(ImagePoint { point, witness: Some(rep), irreducibility_gap: 0.0, residual, reducible: true })
            })
            .collect();
        b.add_path(&ids, curve.closed, EdgeKind::Reducible);
    }

    let mut kinds = vec![SweepKind::Meridian];
    if config.longitude_sweep {
        kinds.push(SweepKind::Longitude);
    }
    for kind in kinds {
        let sweep = Sweep { pres, config, kind, h, res: resolution };
        let (nodes, chains) = sweep.run();
        diagnostics.nodes += nodes.len();
        diagnostics.node_solutions += nodes.iter().map(Vec::len).sum::<usize>();
        let ids: Vec<Vec<usize>> =
            nodes.iter().map(|v| v.iter().map(|s| b.add_point(solution_point(s))).collect()).collect();
        for c in chains {
            diagnostics.tracked_samples += c.samples.len();
            let mut path = vec![ids[c.origin.0][c.origin.1]];
            path.extend(c.samples.iter().map(|s| b.add_point(solution_point(s))));
            if let Some((k, j)) = c.terminal {
                path.push(ids[k][j]);
            }
            b.add_path(&path, false, EdgeKind::Track);
        }
    }
    Ok(b.finish(diagnostics))
}

/// An image lifted to the cut-open pillowcase `[0, π] × R/2πZ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftedImage {
    /// `(α, β)` with `β ∈ [0, 2π)`.
    pub points: Vec<(f64, f64)>,
    pub arcs: Vec<Vec<(f64, f64)>>,
}

/// Points on `α ∈ {0, π}` with `β ≢ 0`, which obstruct the lift.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftViolation {
    pub indices: Vec<usize>,
    pub witnesses: Vec<ImagePoint>,
}

impl std::fmt::Display for LiftViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} image points lie on α ∈ {{0, π}} with β ≠ 0", self.indices.len())
    }
}

impl std::error::Error for LiftViolation {}

/// Tolerance for membership in the pillowcase edges and `L0`.
pub const LIFT_TOL: f64 = 1e-6;

/// Lifts the image to the cut-open pillowcase, failing when some point lies
/// on an edge `α ∈ {0, π}` away from `β = 0`.
pub fn lift_to_cut_open(img: &PillowcaseImage) -> Result<LiftedImage, LiftViolation> {
    let indices: Vec<usize> = (0..img.points.len())
        .filter(|&i| {
            let p = &img.points[i].point;
            p.on_edge(LIFT_TOL) && !p.on_l0(LIFT_TOL)
        })
        .collect();
    if !indices.is_empty() {
        let witnesses = indices.iter().map(|&i| img.points[i].clone()).collect();
        return Err(LiftViolation { indices, witnesses });
    }
    Ok(LiftedImage {
        points: img.points.iter().map(|p| p.point.coords()).collect(),
        arcs: img.arc_points.iter().map(|ids| ids.iter().map(|&i| img.points[i].point.coords()).collect()).collect(),
    })
}
