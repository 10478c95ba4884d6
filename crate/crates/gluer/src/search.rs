use std::sync::atomic::{AtomicBool, Ordering};

use pillowcase_core::{segment_intersections, wrap_pi, GluingMatrix, PillowcasePoint, Segment};
use rayon::prelude::*;
use serde::Serialize;
use surep::{
    align_boundary, boundary_angles, irreducibility_gap, refine, relator_residual, sample_pillowcase_image, PillowcaseImage,
    Representation, SolverConfig, UnitQuaternion, Word,
};

use crate::{GluerError, SplicedManifold};

/// A representation of the amalgamated group with non-abelian restrictions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GluedRepresentation {
    pub rep: Representation,
    /// Boundary point read on side 1.
    pub point: PillowcasePoint,
    /// Boundary point read on side 2.
    pub point2: PillowcasePoint,
    /// Maximum over every relator of the amalgamated presentation.
    pub residual: f64,
    pub gap1: f64,
    pub gap2: f64,
}

impl GluedRepresentation {
    pub fn gap(&self) -> f64 {
        self.gap1.min(self.gap2)
    }
}

/// One intersection candidate and the outcome of its joint solve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateRecord {
    /// Intersection point in side-1 coordinates.
    pub point: PillowcasePoint,
    /// Smaller of the two seed witnesses' irreducibility gaps.
    pub seed_gap: f64,
    pub residual: f64,
    pub gap1: f64,
    pub gap2: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchDiagnostics {
    pub resolution: usize,
    /// Crossings of image 1 with the transformed image 2.
    pub intersections: usize,
    /// Crossings dropped because `β ≡ 0` on both sides.
    pub excluded: usize,
    /// Candidates in the order tried.
    pub candidates: Vec<CandidateRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub found: Option<GluedRepresentation>,
    pub diagnostics: SearchDiagnostics,
}

// Planar segments of edges with a usable endpoint, with the witness chosen at
// each end of the segment.
struct WitnessedSegments {
    segments: Vec<Segment>,
    ends: Vec<[Option<usize>; 2]>,
}

fn witnessed_segments(img: &PillowcaseImage) -> WitnessedSegments {
    let usable = |i: usize| {
        let p = &img.points[i];
        (!p.reducible && p.witness.is_some()).then_some(i)
    };
    let mut out = WitnessedSegments { segments: Vec::new(), ends: Vec::new() };
    for e in &img.edges {
        let (u, v) = (usable(e.from), usable(e.to));
        if u.is_none() && v.is_none() {
            continue;
        }
        let a = img.points[e.from].point.coords();
        let b = img.points[e.to].point.nearest_lift(a.0, a.1);
        out.segments.push(Segment::new(a, b));
        out.ends.push([u, v]);
    }
    out
}

fn pick(ends: [Option<usize>; 2], t: f64) -> usize {
    match ends {
        [Some(u), Some(v)] => {
            if t <= 0.5 {
                u
            } else {
                v
            }
        }
        [Some(u), None] => u,
        [_, Some(v)] => v,
        [None, None] => unreachable!("segments keep a usable endpoint"),
    }
}

struct Candidate {
    point: PillowcasePoint,
    w1: usize,
    w2: usize,
    seed_gap: f64,
}

fn side2_point(g: &GluingMatrix, pt: PillowcasePoint) -> PillowcasePoint {
    g.inverse().transform(pt)
}

// Joins the two witnesses in a common gauge: both peripheral subgroups on the
// `i` axis, side 2 flipped by `j` when its angles match side 1 only up to sign.
fn seed(spliced: &SplicedManifold, r1: &Representation, r2: &Representation) -> Representation {
    let (p1, p2) = (&spliced.model1.presentation, &spliced.model2.presentation);
    let (s1, a1, b1) = align_boundary(r1, &p1.meridian, &p1.longitude);
    let (s2, a2, b2) = align_boundary(r2, &p2.meridian, &p2.longitude);
    let g = &spliced.gluing;
    let (x, y) = g.apply_lifted(a2, b2);
    let mismatch = |sign: f64| wrap_pi(a1 - sign * x).abs() + wrap_pi(b1 - sign * y).abs();
    let s2 = if mismatch(-1.0) < mismatch(1.0) { s2.conjugated(UnitQuaternion::J) } else { s2 };
    s1.join(&s2)
}

fn accept(spliced: &SplicedManifold, rep: Representation, config: &SolverConfig) -> (CandidateRecordParts, Option<GluedRepresentation>) {
    let residual = relator_residual(&rep, &spliced.amalgamated).unwrap_or(f64::INFINITY);
    let gap1 = irreducibility_gap(&rep.restrict(spliced.side1_generators()), &spliced.model1.presentation).unwrap_or(0.0);
    let gap2 = irreducibility_gap(&rep.restrict(spliced.side2_generators()), &spliced.model2.presentation).unwrap_or(0.0);
    let parts = CandidateRecordParts { residual, gap1, gap2 };
    if residual >= config.tol || gap1 <= config.min_gap || gap2 <= config.min_gap {
        return (parts, None);
    }
    let point = boundary_angles(&rep, &spliced.amalgamated).ok();
    let point2 = boundary_angles(&rep.restrict(spliced.side2_generators()), &spliced.model2.presentation).ok();
    match (point, point2) {
        (Some(point), Some(point2)) => (parts, Some(GluedRepresentation { rep, point, point2, residual, gap1, gap2 })),
        _ => (parts, None),
    }
}

struct CandidateRecordParts {
    residual: f64,
    gap1: f64,
    gap2: f64,
}

/// Searches the intersections of `img1` with the image of `img2` under the
/// gluing for a representation of the spliced manifold.
pub fn search_with_images(
    spliced: &SplicedManifold,
    img1: &PillowcaseImage,
    img2: &PillowcaseImage,
    config: &SolverConfig,
) -> Result<SearchOutcome, GluerError> {
    config.validate()?;
    let g = spliced.gluing;
    let first = witnessed_segments(img1);
    let second = witnessed_segments(img2);
    let transformed: Vec<Segment> = second
        .segments
        .iter()
        .map(|s| Segment::new(g.apply_lifted(s.start.0, s.start.1), g.apply_lifted(s.end.0, s.end.1)))
        .collect();
    let crossings = segment_intersections(&first.segments, &transformed);
    let tol0 = img1.step().max(img2.step());
    let mut excluded = 0;
    let mut candidates = Vec::new();
    for x in &crossings {
        if x.point.on_l0(tol0) && side2_point(&g, x.point).on_l0(tol0) {
            excluded += 1;
            continue;
        }
        let w1 = pick(first.ends[x.first.0], x.first.1);
        let w2 = pick(second.ends[x.second.0], x.second.1);
        let seed_gap = img1.points[w1].irreducibility_gap.min(img2.points[w2].irreducibility_gap);
        candidates.push(Candidate { point: x.point, w1, w2, seed_gap });
    }
    candidates.sort_by(|a, b| {
        b.seed_gap
            .total_cmp(&a.seed_gap)
            .then(a.point.alpha().total_cmp(&b.point.alpha()))
            .then(a.point.beta().total_cmp(&b.point.beta()))
    });
    candidates.dedup_by(|a, b| a.w1 == b.w1 && a.w2 == b.w2);

    let n = spliced.amalgamated.generator_count();
    let relators: Vec<Word> = spliced.amalgamated.relators.clone();
    let solve = |c: &Candidate| {
        let r1 = img1.points[c.w1].witness.as_ref().expect("usable witness");
        let r2 = img2.points[c.w2].witness.as_ref().expect("usable witness");
        let init = seed(spliced, r1, r2);
        let (rep, _) = refine(n, &relators, &[], &init, config);
        accept(spliced, rep, config)
    };
    let done = AtomicBool::new(false);
    let results: Vec<Option<(CandidateRecordParts, Option<GluedRepresentation>)>> = config.install(|| {
        candidates
            .par_iter()
            .map(|c| {
                if !config.deterministic && done.load(Ordering::Relaxed) {
                    return None;
                }
                let r = solve(c);
                if r.1.is_some() {
                    done.store(true, Ordering::Relaxed);
                }
                Some(r)
            })
            .collect()
    });
    let mut records = Vec::new();
    let mut found = None;
    for (c, r) in candidates.iter().zip(results) {
        let Some((parts, glued)) = r else { continue };
        records.push(CandidateRecord {
            point: c.point,
            seed_gap: c.seed_gap,
            residual: parts.residual,
            gap1: parts.gap1,
            gap2: parts.gap2,
            accepted: glued.is_some(),
        });
        if found.is_none() {
            found = glued;
        }
    }
    Ok(SearchOutcome {
        found,
        diagnostics: SearchDiagnostics {
            resolution: img1.resolution.max(img2.resolution),
            intersections: crossings.len(),
            excluded,
            candidates: records,
        },
    })
}

/// Samples both images at `config.resolution` and runs [`search_with_images`].
pub fn search_nonabelian_rep(spliced: &SplicedManifold, config: &SolverConfig) -> Result<SearchOutcome, GluerError> {
    let img1 = sample_pillowcase_image(&spliced.model1.presentation, config.resolution, config)?;
    let img2 = sample_pillowcase_image(&spliced.model2.presentation, config.resolution, config)?;
    search_with_images(spliced, &img1, &img2, config)
}
