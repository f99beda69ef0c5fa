// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Small derivative-free minimizers and a log-log slope fit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One objective evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub x: Vec<f64>,
    pub value: f64,
}

/// Minimum found by a search, with every point it evaluated in order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub trace: Vec<Evaluation>,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Stops once the bracket is narrower than `xtol`; fails with
/// [`Error::OptimizerCap`] if that takes more than `max_iter` reductions.
/// The end points are evaluated too, so a minimum on the boundary is found.
pub fn golden_section<F>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<Minimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("bracket [{a}, {b}]")));
    }
    let mut trace = Vec::new();
    let mut eval = |x: f64, trace: &mut Vec<Evaluation>| -> Result<f64> {
        let value = f(x)?;
        trace.push(Evaluation { x: vec![x], value });
        Ok(value)
    };
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = eval(x1, &mut trace)?;
    let mut f2 = eval(x2, &mut trace)?;
    let mut iterations = 0;
    while hi - lo > xtol {
        if iterations == max_iter {
            return Err(Error::OptimizerCap(max_iter));
        }
        iterations += 1;
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = eval(x1, &mut trace)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = eval(x2, &mut trace)?;
        }
    }
    let fa = eval(a, &mut trace)?;
    let fb = eval(b, &mut trace)?;
    let (x, value) = [(x1, f1), (x2, f2), (a, fa), (b, fb)]
        .into_iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .expect("nonempty");
    Ok(Minimum {
        x: vec![x],
        value,
        iterations,
        trace,
    })
}

/// Settings for [`nelder_mead`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimplexOptions {
    /// Edge length of the initial simplex.
    pub step: f64,
    /// Stop when the spread of values across the simplex falls below this.
    pub ftol: f64,
    /// Stop when every vertex is within this distance of the best one.
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            step: 0.1,
            ftol: 1e-7,
            xtol: 1e-5,
            max_iter: 200,
        }
    }
}

/// Nelder–Mead simplex search. Every trial point goes through `project`
/// before evaluation, which keeps the simplex inside a feasible set.
pub fn nelder_mead<F, P>(mut f: F, mut project: P, x0: &[f64], opts: &SimplexOptions) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> Result<f64>,
    P: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let dim = x0.len();
    if dim == 0 {
        return Err(Error::InvalidArgument("empty starting point".into()));
    }
    let mut trace = Vec::new();
    let mut eval = |x: &[f64], trace: &mut Vec<Evaluation>| -> Result<(Vec<f64>, f64)> {
        let p = project(x)?;
        let value = f(&p)?;
        trace.push(Evaluation { x: p.clone(), value });
        Ok((p, value))
    };
    let mut simplex = vec![eval(x0, &mut trace)?];
    for k in 0..dim {
        let mut x = x0.to_vec();
        x[k] += opts.step;
        simplex.push(eval(&x, &mut trace)?);
    }
    let mut iterations = 0;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[dim].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| dist(x, &simplex[0].0))
            .fold(0.0, f64::max);
        if spread <= opts.ftol && size <= opts.xtol {
            break;
        }
        if iterations == opts.max_iter {
            return Err(Error::OptimizerCap(opts.max_iter));
        }
        iterations += 1;
        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|(x, _)| x[k]).sum::<f64>() / dim as f64)
            .collect();
        let worst = simplex[dim].clone();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let reflected = eval(&along(-1.0), &mut trace)?;
        if reflected.1 < simplex[0].1 {
            let expanded = eval(&along(-2.0), &mut trace)?;
            simplex[dim] = if expanded.1 < reflected.1 { expanded } else { reflected };
        } else if reflected.1 < simplex[dim - 1].1 {
            simplex[dim] = reflected;
        } else {
            let contracted = if reflected.1 < worst.1 {
                eval(&along(-0.5), &mut trace)?
            } else {
                eval(&along(0.5), &mut trace)?
            };
            if contracted.1 < worst.1.min(reflected.1) {
                simplex[dim] = contracted;
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> = best.iter().zip(&v.0).map(|(b, x)| b + 0.5 * (x - b)).collect();
                    *v = eval(&shrunk, &mut trace)?;
                }
            }
        }
    }
    let (x, value) = simplex.swap_remove(0);
    Ok(Minimum {
        x,
        value,
        iterations,
        trace,
    })
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidArgument("need at least two matching points".into()));
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0)) {
        return Err(Error::InvalidArgument("log-log fit needs positive data".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("all abscissae coincide".into()));
    }
    Ok(sxy / sxx)
}
