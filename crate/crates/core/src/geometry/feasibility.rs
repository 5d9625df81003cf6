//! Box-constrained linear feasibility.
//!
//! Decides whether `G·ξ = d` has a solution with every `ξ_j ∈ [-1, 1]`. This is
//! the only linear program the monitors need: zonotope intersection and point
//! membership both reduce to it.
//!
//! The solver is a dense phase-one primal simplex over bounded variables. Each
//! structural variable sits at one of its bounds while nonbasic, so the box
//! never adds rows; one artificial per equality row starts in the basis and the
//! sum of artificials is minimised. Entering and leaving choices follow
//! Bland's lowest-index rule, which rules out cycling.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

use super::FEASIBILITY_TOLERANCE;

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-12;

#[derive(Clone, Copy, PartialEq, Debug)]
enum Slot {
    Basic,
    Lower,
    Upper,
    /// Artificial that left the basis; pinned at zero.
    Retired,
}

/// Returns whether some `ξ ∈ [-1,1]^m` satisfies `g·ξ = d` up to
/// [`FEASIBILITY_TOLERANCE`], scaled by the magnitude of the data.
pub fn box_feasible(g: &DMatrix<f64>, d: &DVector<f64>) -> Result<bool> {
    let n = g.nrows();
    let m = g.ncols();
    if d.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.len(),
        });
    }
    if g.iter().chain(d.iter()).any(|v| !v.is_finite()) {
        return Err(Error::Numerical("non-finite feasibility data".into()));
    }
    let scale = g
        .iter()
        .chain(d.iter())
        .fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let tol = FEASIBILITY_TOLERANCE * scale;

    if m == 0 {
        return Ok(d.amax() <= tol);
    }

    let total = m + n;
    let lower = |j: usize| if j < m { -1.0 } else { 0.0 };
    let upper = |j: usize| if j < m { 1.0 } else { f64::INFINITY };

    // Row i is multiplied by sign[i] so that its artificial starts nonnegative.
    let mut tab = vec![0.0; n * total];
    let mut beta = vec![0.0; n];
    for i in 0..n {
        let residual = d[i] + (0..m).map(|j| g[(i, j)]).sum::<f64>();
        let sign = if residual < 0.0 { -1.0 } else { 1.0 };
        for j in 0..m {
            tab[i * total + j] = sign * g[(i, j)];
        }
        tab[i * total + m + i] = 1.0;
        beta[i] = sign * residual;
    }
    let mut basis: Vec<usize> = (m..total).collect();
    let mut slot = vec![Slot::Lower; total];
    slot[m..].fill(Slot::Basic);

    let max_iter = 64 * total + 1000;
    let mut iter = 0;
    loop {
        iter += 1;
        if iter > max_iter {
            return Err(Error::Numerical(format!(
                "simplex did not converge within {max_iter} pivots"
            )));
        }

        // Phase-one reduced cost of column j: c_j - sum over artificial basics.
        let reduced = |j: usize, tab: &[f64]| -> f64 {
            let c = if j >= m { 1.0 } else { 0.0 };
            let dual: f64 = (0..n)
                .filter(|&i| basis[i] >= m)
                .map(|i| tab[i * total + j])
                .sum();
            c - dual
        };

        let mut entering = None;
        for j in 0..total {
            let dir = match slot[j] {
                Slot::Lower => {
                    if reduced(j, &tab) < -COST_EPS {
                        1.0
                    } else {
                        continue;
                    }
                }
                Slot::Upper => {
                    if reduced(j, &tab) > COST_EPS {
                        -1.0
                    } else {
                        continue;
                    }
                }
                Slot::Basic | Slot::Retired => continue,
            };
            entering = Some((j, dir));
            break;
        }

        let Some((q, dir)) = entering else {
            break;
        };

        // Ratio test, bound flip of the entering variable included.
        let mut step = upper(q) - lower(q);
        let mut leave: Option<usize> = None;
        for i in 0..n {
            let alpha = dir * tab[i * total + q];
            let b = basis[i];
            let limit = if alpha > PIVOT_EPS {
                (beta[i] - lower(b)).max(0.0) / alpha
            } else if alpha < -PIVOT_EPS && upper(b).is_finite() {
                (upper(b) - beta[i]).max(0.0) / -alpha
            } else {
                continue;
            };
            if limit < step - PIVOT_EPS {
                step = limit;
                leave = Some(i);
            } else if limit <= step + PIVOT_EPS {
                step = step.min(limit);
                match leave {
                    Some(r) if basis[r] < b => {}
                    _ => leave = Some(i),
                }
            }
        }
        if !step.is_finite() {
            return Err(Error::Numerical("phase-one objective unbounded".into()));
        }

        for i in 0..n {
            beta[i] -= dir * tab[i * total + q] * step;
        }

        match leave {
            None => {
                slot[q] = if slot[q] == Slot::Lower {
                    Slot::Upper
                } else {
                    Slot::Lower
                };
            }
            Some(r) => {
                let out = basis[r];
                let alpha = dir * tab[r * total + q];
                slot[out] = if out >= m {
                    Slot::Retired
                } else if alpha > 0.0 {
                    Slot::Lower
                } else {
                    Slot::Upper
                };
                let start = if slot[q] == Slot::Lower {
                    lower(q)
                } else {
                    upper(q)
                };
                beta[r] = start + dir * step;
                basis[r] = q;
                slot[q] = Slot::Basic;
                pivot(&mut tab, n, total, r, q);
            }
        }
    }

    let mut xi = DVector::zeros(m);
    for j in 0..m {
        xi[j] = match slot[j] {
            Slot::Lower => -1.0,
            Slot::Upper => 1.0,
            _ => 0.0,
        };
    }
    let mut objective = 0.0;
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            xi[b] = beta[i].clamp(-1.0, 1.0);
        } else {
            objective += beta[i].max(0.0);
        }
    }
    if objective > tol {
        return Ok(false);
    }
    let residual = (g * &xi - d).amax();
    if residual <= tol {
        Ok(true)
    } else {
        Err(Error::Numerical(format!(
            "phase-one optimum {objective:e} inconsistent with residual {residual:e}"
        )))
    }
}

fn pivot(tab: &mut [f64], n: usize, total: usize, r: usize, q: usize) {
    let p = tab[r * total + q];
    for v in &mut tab[r * total..(r + 1) * total] {
        *v /= p;
    }
    for i in 0..n {
        if i == r {
            continue;
        }
        let f = tab[i * total + q];
        if f == 0.0 {
            continue;
        }
        for j in 0..total {
            tab[i * total + j] -= f * tab[r * total + j];
        }
    }
}
