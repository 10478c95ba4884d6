use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use petgraph::unionfind::UnionFind;
use pillowcase_core::export::{polylines_to_csv, render_svg, SvgLayer};
use pillowcase_core::{essential_class, PillowcasePoint, PillowcasePolyline};
use serde::Serialize;
use surep::{extract_essential_curve, lift_to_cut_open, sample_pillowcase_image, PillowcaseImage, SolverConfig};

use crate::{emit, input, to_json, write_file, Failure};

#[derive(Debug, Args)]
pub struct ImageArgs {
    /// Built-in model name or model JSON path.
    pub model: String,
    #[arg(long)]
    pub resolution: Option<usize>,
    /// Write an SVG drawing here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Write the arcs as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Print the summary as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Serialize)]
struct CurveSummary {
    class: i64,
    vertices: usize,
}

#[derive(Debug, Serialize)]
struct ImageSummary {
    model: String,
    resolution: usize,
    points: usize,
    irreducible_points: usize,
    /// Connected components, irreducible and reducible counted apart.
    irreducible_components: usize,
    reducible_components: usize,
    /// Maximal unbranched pieces of the sampled graph.
    arcs: usize,
    isolated: usize,
    essential_curve: Option<CurveSummary>,
    /// Irreducible samples within two grid steps of `(0, 0)` or `(π, 0)`.
    corner_witnesses: Vec<PillowcasePoint>,
    /// Irreducible samples on the edges `α ∈ {0, π}` off `L0`.
    lift_violations: usize,
}

fn components(img: &PillowcaseImage, reducible: bool) -> usize {
    let mut uf = UnionFind::new(img.points.len());
    let keep = |i: usize| img.points[i].reducible == reducible;
    for e in &img.edges {
        if keep(e.from) && keep(e.to) {
            uf.union(e.from, e.to);
        }
    }
    let mut roots: Vec<usize> = (0..img.points.len()).filter(|&i| keep(i)).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

fn layers(img: &PillowcaseImage, curve: Option<&PillowcasePolyline>) -> Vec<SvgLayer> {
    let mut reducible = SvgLayer::new("reducible", "#888888");
    let mut irreducible = SvgLayer::new("irreducible", "#1f5fbf");
    for (arc, ids) in img.arcs.iter().zip(&img.arc_points) {
        if ids.iter().all(|&i| img.points[i].reducible) {
            reducible.curves.push(arc.clone());
        } else {
            irreducible.curves.push(arc.clone());
        }
    }
    irreducible.points = img.isolated.iter().map(|&i| img.points[i].point).collect();
    let mut out = vec![reducible, irreducible];
    if let Some(c) = curve {
        let mut l = SvgLayer::new("essential curve", "#d62728");
        l.curves.push(c.clone());
        out.push(l);
    }
    out
}

pub fn run(args: &ImageArgs, cfg: &SolverConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let model = crate::load_model(&args.model)?;
    let resolution = args.resolution.unwrap_or(cfg.resolution);
    let cfg = SolverConfig { resolution, ..cfg.clone() };
    let img = sample_pillowcase_image(&model.presentation, resolution, &cfg).map_err(input)?;
    let curve = extract_essential_curve(&img);
    let summary = ImageSummary {
        model: model.name.clone(),
        resolution,
        points: img.points.len(),
        irreducible_points: img.irreducible_points().count(),
        irreducible_components: components(&img, false),
        reducible_components: components(&img, true),
        arcs: img.arcs.len(),
        isolated: img.isolated.len(),
        essential_curve: curve.as_ref().map(|c| CurveSummary {
            class: essential_class(c).expect("extracted curves avoid P and Q"),
            vertices: c.len(),
        }),
        corner_witnesses: img.diagnostics.corner_witnesses.iter().map(|&i| img.points[i].point).collect(),
        lift_violations: lift_to_cut_open(&img).err().map_or(0, |v| v.indices.len()),
    };
    if let Some(path) = &args.svg {
        write_file(path, &render_svg(&layers(&img, curve.as_ref())))?;
    }
    if let Some(path) = &args.csv {
        write_file(path, &polylines_to_csv(&img.arcs))?;
    }
    if args.json {
        emit(out, &to_json(&summary))?;
    } else {
        let curve_line = match &summary.essential_curve {
            Some(c) => format!("essential curve: class {} with {} vertices", c.class, c.vertices),
            None => "essential curve: none".to_string(),
        };
        let text = format!(
            "model: {}\nresolution: {}\npoints: {} ({} irreducible)\ncomponents: {} irreducible, {} reducible\narc pieces: {}\nisolated points: {}\n{curve_line}\ncorner witnesses: {}\nlift violations: {}",
            summary.model,
            summary.resolution,
            summary.points,
            summary.irreducible_points,
            summary.irreducible_components,
            summary.reducible_components,
            summary.arcs,
            summary.isolated,
            summary.corner_witnesses.len(),
            summary.lift_violations,
        );
        emit(out, &text)?;
    }
    Ok(0)
}
