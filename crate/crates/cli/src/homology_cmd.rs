use std::io::Write;

use clap::{Args, Subcommand};
use homology::{
    enumerate_standard_tuples, filling_homology, glue_homology, seifert_h1, standard_form_reduce, HomologyError,
    InvariantFactors,
};
use pillowcase_core::GluingMatrix;
use serde::Serialize;

use crate::{emit, to_json, Failure, GluingSpec};

#[derive(Debug, Subcommand)]
pub enum HomologyCommand {
    /// H1 of two models glued along their boundaries.
    Glue {
        model1: String,
        model2: String,
        /// `swap`, `fiber-swap`, `sigma:P` or `a,b,p,c`.
        #[arg(long, allow_hyphen_values = true)]
        gluing: String,
        #[command(flatten)]
        format: Format,
    },
    /// H1 of the Dehn filling along μ^p λ^q.
    Fill {
        model: String,
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[command(flatten)]
        format: Format,
    },
    /// H1 of the Seifert space with fibers (a1, b1), (a2, b2), (a3, b3).
    Seifert {
        #[arg(num_args = 6, allow_negative_numbers = true, value_names = ["A1", "B1", "A2", "B2", "A3", "B3"])]
        data: Vec<i64>,
        #[command(flatten)]
        format: Format,
    },
    /// Reduce a gluing tuple (a, b, c) with prime p by boundary twists.
    StandardForm {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
        p: i64,
        /// Allow an orientation reversal, giving c ≤ p/2.
        #[arg(long)]
        reversal: bool,
        #[command(flatten)]
        format: Format,
    },
    /// The standard tuples for an odd prime p.
    Tuples {
        p: i64,
        #[command(flatten)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct Format {
    /// Print JSON.
    #[arg(long)]
    pub json: bool,
}

fn contract(e: HomologyError) -> Failure {
    match e {
        HomologyError::Parse(_) | HomologyError::ModelInvalid(_) | HomologyError::LetterOutOfRange { .. } => {
            Failure::Input(e.to_string())
        }
        _ => Failure::Contract(e.to_string()),
    }
}

#[derive(Serialize)]
struct GroupReport<'a> {
    invariant_factors: &'a InvariantFactors,
    group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    gluing: Option<GluingMatrix>,
}

fn group_text(f: &InvariantFactors) -> String {
    format!("H1 = {f}  [{}]", f.pretty())
}

fn report(out: &mut dyn Write, json: bool, f: &InvariantFactors, gluing: Option<GluingMatrix>) -> Result<(), Failure> {
    if json {
        emit(out, &to_json(&GroupReport { invariant_factors: f, group: f.to_string(), gluing }))
    } else {
        emit(out, &group_text(f))
    }
}

pub fn run(cmd: &HomologyCommand, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        HomologyCommand::Glue { model1, model2, gluing, format } => {
            let m1 = crate::load_model(model1)?;
            let m2 = crate::load_model(model2)?;
            let g = match GluingSpec::parse(gluing) {
                GluingSpec::Matrix { a, b, p, c } => {
                    GluingMatrix::new(a, b, p, c).map_err(|e| Failure::Contract(e.to_string()))?
                }
                named => named.resolve(&m1, &m2)?,
            };
            report(out, format.json, &glue_homology(&m1, &m2, &g), Some(g))?;
        }
        HomologyCommand::Fill { model, p, q, format } => {
            let m = crate::load_model(model)?;
            report(out, format.json, &filling_homology(&m, (*p, *q)).map_err(contract)?, None)?;
        }
        HomologyCommand::Seifert { data, format } => {
            let pairs: Vec<(i64, i64)> = data.chunks(2).map(|c| (c[0], c[1])).collect();
            let h = seifert_h1(&pairs).map_err(contract)?;
            if format.json {
                #[derive(Serialize)]
                struct SeifertReport<'a> {
                    invariant_factors: &'a InvariantFactors,
                    group: String,
                    order_formula: i64,
                }
                let r = SeifertReport { invariant_factors: &h.factors, group: h.factors.to_string(), order_formula: h.order_formula };
                emit(out, &to_json(&r))?;
            } else {
                emit(out, &format!("{}\norder formula: {}", group_text(&h.factors), h.order_formula))?;
            }
        }
        HomologyCommand::StandardForm { a, b, c, p, reversal, format } => {
            let r = standard_form_reduce(*a, *b, *c, *p, *reversal).map_err(contract)?;
            if format.json {
                emit(out, &to_json(&r))?;
            } else {
                let moves: Vec<String> = r.twist_moves.iter().map(|m| format!("side {} twist {}", m.side, m.twist)).collect();
                let trajectory: Vec<String> = r.trajectory().iter().map(|t| format!("{t:?}")).collect();
                let text = format!(
                    "standard form (a, b, c) = ({}, {}, {}) with p = {}\nmoves: {}\norientation reversed: {}\ntrajectory: {}",
                    r.a,
                    r.b,
                    r.c,
                    r.p,
                    if moves.is_empty() { "none".to_string() } else { moves.join(", ") },
                    r.orientation_reversed,
                    trajectory.join(" -> "),
                );
                emit(out, &text)?;
            }
        }
        HomologyCommand::Tuples { p, format } => {
            let tuples = enumerate_standard_tuples(*p).map_err(contract)?;
            if format.json {
                emit(out, &to_json(&tuples))?;
            } else {
                let lines: Vec<String> = tuples.iter().map(|t| format!("{t:?}")).collect();
                emit(out, &lines.join("\n"))?;
            }
        }
    }
    Ok(0)
}
