//! Abelian representations from the characters of `H1`.

use homology::abelianization;
use num_traits::{ToPrimitive, Zero};
use pillowcase_core::{canonicalize, PillowcasePoint, TWO_PI};

use crate::{GroupPresentation, Representation, UnitQuaternion};

/// A sampled one-parameter family of abelian representations.
#[derive(Debug, Clone)]
pub struct ReducibleCurve {
    pub samples: Vec<(PillowcasePoint, Representation)>,
    pub closed: bool,
}

// Torsion character combinations beyond this are not enumerated.
const MAX_TORSION_CHARACTERS: usize = 4096;

fn to_f64(v: &num_bigint::BigInt) -> f64 {
    v.to_f64().unwrap_or(0.0)
}

/// Characters `H1 → U(1)` restricted to a family covering every boundary
/// image, sampled finely enough for a grid of `resolution` intervals.
pub fn reducible_curves(pres: &GroupPresentation, resolution: usize) -> Vec<ReducibleCurve> {
    let ab = abelianization(pres);
    let coords = ab.presentation.coordinates();
    let n = pres.generator_count();
    let factors = coords.factors.clone();
    let gen_coords: Vec<Vec<f64>> = (0..n)
        .map(|g| {
            let mut e = vec![0i64; n];
            e[g] = 1;
            coords.project(&e).iter().map(to_f64).collect()
        })
        .collect();
    let ym: Vec<f64> = coords.project(&ab.meridian).iter().map(to_f64).collect();
    let yl: Vec<f64> = coords.project(&ab.longitude).iter().map(to_f64).collect();
    let free: Vec<usize> = (0..factors.len()).filter(|&i| factors[i].is_zero()).collect();
    let torsion: Vec<(usize, f64)> =
        (0..factors.len()).filter(|&i| !factors[i].is_zero()).map(|i| (i, to_f64(&factors[i]))).collect();

    // torsion classes, keeping one representative per boundary offset
    let mut offsets: Vec<(Vec<f64>, f64, f64)> = Vec::new();
    let mut combo = vec![0usize; torsion.len()];
    let mut count = 0;
    loop {
        let angle = |y: &[f64]| -> f64 {
            torsion.iter().zip(&combo).map(|(&(i, d), &k)| TWO_PI * k as f64 * y[i] / d).sum()
        };
        let (tm, tl) = (angle(&ym), angle(&yl));
        let p = canonicalize(tm, tl);
        if !offsets.iter().any(|(_, a, b)| canonicalize(*a, *b).distance(&p) < 1e-9) {
            let chars: Vec<f64> = gen_coords.iter().map(|y| angle(y)).collect();
            offsets.push((chars, tm, tl));
        }
        count += 1;
        if count >= MAX_TORSION_CHARACTERS {
            break;
        }
        let mut i = 0;
        while i < combo.len() {
            combo[i] += 1;
            if (combo[i] as f64) < torsion[i].1 {
                break;
            }
            combo[i] = 0;
            i += 1;
        }
        if i == combo.len() {
            break;
        }
    }

    // the boundary restricts the free part to multiples of one direction v
    let vm: Vec<f64> = free.iter().map(|&i| ym[i]).collect();
    let vl: Vec<f64> = free.iter().map(|&i| yl[i]).collect();
    let rank2 = (0..free.len()).any(|a| (0..free.len()).any(|b| (vm[a] * vl[b] - vm[b] * vl[a]).abs() > 0.5));
    let base: Vec<f64> = if vm.iter().any(|x| *x != 0.0) { vm.clone() } else { vl.clone() };
    let content = base.iter().fold(0i64, |g, &x| num_integer::gcd(g, x.round() as i64)).max(1) as f64;
    let v: Vec<f64> = base.iter().map(|x| x / content).collect();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let coef = |w: &[f64]| -> f64 {
        if vv == 0.0 {
            0.0
        } else {
            w.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / vv
        }
    };
    let (x, y) = (coef(&vm), coef(&vl));

    let rep_at = |theta: &[f64], chars: &[f64]| -> Representation {
        Representation::new(
            gen_coords
                .iter()
                .zip(chars)
                .map(|(yg, &c)| {
                    let f: f64 = free.iter().zip(theta).map(|(&i, t)| t * yg[i]).sum();
                    UnitQuaternion::exp_i(f + c)
                })
                .collect(),
        )
    };

    let mut out = Vec::new();
    for (chars, tm, tl) in &offsets {
        if free.is_empty() || vv == 0.0 {
            let theta = vec![0.0; free.len()];
            out.push(ReducibleCurve { samples: vec![(canonicalize(*tm, *tl), rep_at(&theta, chars))], closed: false });
            continue;
        }
        if rank2 {
            // boundary characters fill the pillowcase: sample a grid of the
            // first two free directions
            let m = 2 * resolution;
            for a in 0..m {
                let mut samples = Vec::new();
                for b in 0..m {
                    let mut theta = vec![0.0; free.len()];
                    theta[0] = TWO_PI * a as f64 / m as f64;
                    if free.len() > 1 {
                        theta[1] = TWO_PI * b as f64 / m as f64;
                    }
                    let rep = rep_at(&theta, chars);
                    let pm: f64 = free.iter().zip(&theta).map(|(&i, t)| t * ym[i]).sum::<f64>() + tm;
                    let pl: f64 = free.iter().zip(&theta).map(|(&i, t)| t * yl[i]).sum::<f64>() + tl;
                    samples.push((canonicalize(pm, pl), rep));
                }
                out.push(ReducibleCurve { samples, closed: true });
            }
            continue;
        }
        let steps = 2 * resolution * (x.abs().max(y.abs()).max(1.0).round() as usize);
        let samples = (0..steps)
            .map(|k| {
                let s = TWO_PI * k as f64 / steps as f64;
                let theta: Vec<f64> = v.iter().map(|c| s * c / vv).collect();
                (canonicalize(x * s + tm, y * s + tl), rep_at(&theta, chars))
            })
            .collect();
        out.push(ReducibleCurve { samples, closed: true });
    }
    out
}
