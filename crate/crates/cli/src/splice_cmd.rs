use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use gluer::{search_with_images, splice, SearchDiagnostics};
use homology::{glue_homology, InvariantFactors};
use pillowcase_core::export::{render_svg, SvgLayer};
use pillowcase_core::GluingMatrix;
use serde::Serialize;
use surep::{sample_pillowcase_image, PillowcaseImage, SolverConfig};

use crate::{emit, input, io_failure, to_json, write_file, Failure, SpliceJob};

#[derive(Debug, Args)]
pub struct SpliceArgs {
    /// Job file: `{model1, model2, gluing, resolution, tol, seed}`.
    pub job: PathBuf,
    /// Draw image 1, the glued image 2 and the intersection candidates.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct SpliceReport {
    found: bool,
    model1: String,
    model2: String,
    gluing: GluingMatrix,
    homology: InvariantFactors,
    resolution: usize,
    /// One `[w, x, y, z]` quaternion per amalgamated generator.
    representation: Option<Vec<[f64; 4]>>,
    /// Boundary point `[α, β]` on side 1.
    point: Option<[f64; 2]>,
    /// Boundary point `[α, β]` on side 2.
    point2: Option<[f64; 2]>,
    residual: Option<f64>,
    gap1: Option<f64>,
    gap2: Option<f64>,
    diagnostics: SearchDiagnostics,
}

fn svg(img1: &PillowcaseImage, img2: &PillowcaseImage, g: &GluingMatrix, diag: &SearchDiagnostics) -> String {
    let mut side1 = SvgLayer::new("image 1", "#1f5fbf");
    side1.curves = img1.arcs.clone();
    let mut side2 = SvgLayer::new("glued image 2", "#d62728");
    side2.curves = img2.arcs.iter().map(|a| a.transformed(g.matrix())).collect();
    let mut tried = SvgLayer::new("candidates", "#000000");
    let mut accepted = SvgLayer::new("accepted", "#2ca02c");
    for c in &diag.candidates {
        if c.accepted {
            accepted.points.push(c.point);
        } else {
            tried.points.push(c.point);
        }
    }
    render_svg(&[side1, side2, tried, accepted])
}

pub fn run(args: &SpliceArgs, cfg: &SolverConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(&args.job).map_err(|e| io_failure(&args.job, e))?;
    let job = SpliceJob::from_json(&text)?;
    let m1 = job.model1.load()?;
    let m2 = job.model2.load()?;
    let g = job.gluing.resolve(&m1, &m2)?;
    let mut cfg = SolverConfig { resolution: job.resolution, ..cfg.clone() };
    if let Some(t) = job.tol {
        cfg.tol = t;
    }
    if let Some(s) = job.seed {
        cfg.seed = s;
    }
    cfg.validate().map_err(input)?;
    let spliced = splice(&m1, &m2, g).map_err(input)?;
    let img1 = sample_pillowcase_image(&m1.presentation, cfg.resolution, &cfg).map_err(input)?;
    let img2 = sample_pillowcase_image(&m2.presentation, cfg.resolution, &cfg).map_err(input)?;
    let outcome = search_with_images(&spliced, &img1, &img2, &cfg).map_err(input)?;
    if let Some(path) = &args.svg {
        write_file(path, &svg(&img1, &img2, &g, &outcome.diagnostics))?;
    }
    let found = outcome.found.as_ref();
    let report = SpliceReport {
        found: found.is_some(),
        model1: m1.name.clone(),
        model2: m2.name.clone(),
        gluing: g,
        homology: glue_homology(&m1, &m2, &g),
        resolution: cfg.resolution,
        representation: found.map(|f| f.rep.images.iter().map(|q| q.to_array()).collect()),
        point: found.map(|f| [f.point.alpha(), f.point.beta()]),
        point2: found.map(|f| [f.point2.alpha(), f.point2.beta()]),
        residual: found.map(|f| f.residual),
        gap1: found.map(|f| f.gap1),
        gap2: found.map(|f| f.gap2),
        diagnostics: outcome.diagnostics.clone(),
    };
    emit(out, &to_json(&report))?;
    Ok(if report.found { 0 } else { 1 })
}
