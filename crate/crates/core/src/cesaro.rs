//! Averaging solver: running means of the power sequence of the uniform
//! distribution.
//!
//! Starting from the uniform vector `u`, the k-th iterate is the average
//! `v_k = (u + uP + ... + uP^(k-1)) / k`. One transition step moves `v_k`
//! by exactly `(uP^k - u) / k`, so its fixed-point defect is at most
//! `2 / k` no matter what `P` is: the averages settle at rate 1/k and the
//! first iterate whose measured residual drops to the target is returned.
//!
//! Because the defect decays like `c / k`, tight targets need k near
//! `c / eps`, which can run to billions of steps. The solver therefore
//! watches the power vector `uP^k`: once it revisits a previous value
//! bitwise, the whole power sequence repeats forever and every later
//! running sum is a closed-form combination of the orbit vectors. The
//! solver then jumps straight to the first step index whose projected
//! defect clears the target (with a small safety margin), materializes
//! the average there, and confirms the measured residual before
//! returning. The jump changes nothing observable beyond rounding-level
//! effects: the returned average is the same combination the loop would
//! have accumulated, and the reported residual is measured, not assumed.

use crate::error::{Error, Result};
use crate::matrix::{
    mul_into, ProbabilityVector, RowVector, StochasticMatrix,
    DEFAULT_VECTOR_SUM_TOL,
};
use crate::report::{SolveMethod, SolveReport};

/// Default residual target.
pub const DEFAULT_EPS: f64 = 1e-10;

/// Tolerance on the entry sum of every intermediate average.
pub const AVERAGE_SUM_TOL: f64 = 1e-12;

/// Observed agreement between the measured defect of `v_k` and its
/// telescoped form `(uP^k - u) / k`; used as slack when deciding whether
/// a measured check is worth running.
const TELESCOPE_SLACK: f64 = 5e-13;

/// Longest power-vector orbit the solver will store for fast-forwarding.
const ORBIT_CAP: u64 = 8192;

/// Default iteration cap: generous enough that the guaranteed stop at
/// `k = ceil(2 / eps)` is always inside it.
pub fn default_max_k(eps: f64) -> u64 {
    assert!(eps > 0.0, "residual target must be positive");
    let guaranteed = (2.0 / eps).ceil();
    10_000_000_u64.max(guaranteed as u64)
}

/// Worst-case fixed-point defect of the k-th average: `2 / k`.
pub fn residual_bound(k: u64) -> f64 {
    assert!(k >= 1, "averages start at k = 1");
    2.0 / k as f64
}

/// Progress of the averaging iteration after k steps.
///
/// `power_vec` is `uP^k`, `running_sum` is `u + uP + ... + uP^(k-1)` and
/// `average` is `running_sum / k`. The average stays a probability vector
/// at every step, and one transition moves it by `(power_vec - u) / k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CesaroState {
    k: u64,
    power_vec: RowVector,
    running_sum: RowVector,
    average: ProbabilityVector,
}

impl CesaroState {
    /// State at k = 1: the average is the uniform vector itself.
    pub fn start(p: &StochasticMatrix) -> Self {
        let u = ProbabilityVector::uniform(p.n());
        let power_vec =
            crate::matrix::vec_mat_mul(&RowVector::from(&u), p).expect("dimensions agree");
        CesaroState {
            k: 1,
            power_vec,
            running_sum: RowVector::from(&u),
            average: u,
        }
    }

    /// Number of vectors averaged so far.
    pub fn k(&self) -> u64 {
        self.k
    }

    /// `uP^k`.
    pub fn power_vec(&self) -> &RowVector {
        &self.power_vec
    }

    /// `u + uP + ... + uP^(k-1)`.
    pub fn running_sum(&self) -> &RowVector {
        &self.running_sum
    }

    /// `running_sum / k`.
    pub fn average(&self) -> &ProbabilityVector {
        &self.average
    }
}

/// Advances the average by one step: the current power vector joins the
/// running sum and the power vector takes one more transition.
pub fn step(state: &CesaroState, p: &StochasticMatrix) -> Result<CesaroState> {
    let n = p.n();
    if state.power_vec.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: state.power_vec.len(),
        });
    }
    let k = state.k + 1;
    let running_sum: Vec<f64> = state
        .running_sum
        .entries()
        .iter()
        .zip(state.power_vec.entries())
        .map(|(s, p)| s + p)
        .collect();
    let average: Vec<f64> = running_sum.iter().map(|s| s / k as f64).collect();
    let power_vec = crate::matrix::vec_mat_mul(&state.power_vec, p)?;
    Ok(CesaroState {
        k,
        power_vec,
        running_sum: RowVector::new(running_sum),
        average: ProbabilityVector::new(average, AVERAGE_SUM_TOL)?,
    })
}

/// Measured fixed-point defect of `rs / k`, written without allocating
/// the average separately.
fn measured_residual(rs: &[f64], k: u64, p: &StochasticMatrix, scratch: &mut [f64]) -> f64 {
    let kf = k as f64;
    let avg: Vec<f64> = rs.iter().map(|s| s / kf).collect();
    mul_into(&avg, p, scratch);
    scratch
        .iter()
        .zip(&avg)
        .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

fn success(
    rs: &[f64],
    k: u64,
    residual: f64,
) -> Result<(ProbabilityVector, SolveReport)> {
    let kf = k as f64;
    let avg: Vec<f64> = rs.iter().map(|s| s / kf).collect();
    let margin = avg.iter().copied().fold(f64::INFINITY, f64::min);
    let pi = ProbabilityVector::new(avg, DEFAULT_VECTOR_SUM_TOL)?;
    Ok((
        pi,
        SolveReport {
            method: SolveMethod::Cesaro,
            iterations: k,
            residual,
            positivity_margin: margin,
            kernel_dimension: None,
        },
    ))
}

/// Runs the averaging iteration until the measured residual of the
/// average reaches `eps`, returning that average and the step count.
///
/// Stops are decided on the measured residual; the telescoped form is
/// used only to skip measurements that provably cannot pass yet, and the
/// orbit fast-forward described in the module docs keeps tight targets
/// affordable. Fails with `MaxIterationsExceeded` if `max_k` averages
/// come and go without meeting the target, which the `2 / k` bound rules
/// out whenever `max_k >= ceil(2 / eps)`.
pub fn cesaro_solve(
    p: &StochasticMatrix,
    eps: f64,
    max_k: u64,
) -> Result<(ProbabilityVector, SolveReport)> {
    assert!(eps > 0.0, "residual target must be positive");
    assert!(max_k >= 1, "iteration cap must allow at least one average");
    let n = p.n();
    let u: Vec<f64> = vec![1.0 / n as f64; n];
    let mut pv = vec![0.0; n];
    mul_into(&u, p, &mut pv);
    let mut rs = u.clone();
    let mut k: u64 = 1;
    let mut scratch = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    // Bitwise revisit detection on the power vector.
    let mut snap = pv.clone();
    let mut snap_k: u64 = 1;
    let mut next_snap_k: u64 = 2;
    let mut jumping = true;

    loop {
        // Stop check for the current state k.
        let telescoped = pv
            .iter()
            .zip(&u)
            .fold(0.0f64, |m, (a, b): (&f64, &f64)| m.max((a - b).abs()))
            / k as f64;
        if telescoped <= eps + TELESCOPE_SLACK {
            let r = measured_residual(&rs, k, p, &mut scratch);
            if r <= eps {
                return success(&rs, k, r);
            }
        }
        if k == max_k {
            let r = measured_residual(&rs, k, p, &mut scratch);
            return Err(Error::MaxIterationsExceeded {
                iterations: k,
                residual: r,
            });
        }

        // Advance: rs gains uP^k, pv becomes uP^(k+1).
        for (s, x) in rs.iter_mut().zip(&pv) {
            *s += x;
        }
        mul_into(&pv, p, &mut tmp);
        std::mem::swap(&mut pv, &mut tmp);
        k += 1;

        if !jumping {
            continue;
        }
        // tmp still holds uP^(k-1): an equal pair one step apart means the
        // power sequence is frozen; otherwise compare against the snapshot.
        let period = if pv == tmp {
            Some(1)
        } else if pv == snap {
            Some(k - snap_k)
        } else {
            None
        };
        if k == next_snap_k {
            snap.copy_from_slice(&pv);
            snap_k = k;
            next_snap_k = next_snap_k.saturating_mul(2);
        }
        let Some(q) = period else {
            continue;
        };
        if q > ORBIT_CAP {
            continue;
        }

        // Collect one full orbit, still honoring stop checks along the way.
        let mut orbit: Vec<Vec<f64>> = Vec::with_capacity(q as usize);
        for _ in 0..q {
            let telescoped = pv
                .iter()
                .zip(&u)
                .fold(0.0f64, |m, (a, b): (&f64, &f64)| m.max((a - b).abs()))
                / k as f64;
            if telescoped <= eps + TELESCOPE_SLACK {
                let r = measured_residual(&rs, k, p, &mut scratch);
                if r <= eps {
                    return success(&rs, k, r);
                }
            }
            if k == max_k {
                let r = measured_residual(&rs, k, p, &mut scratch);
                return Err(Error::MaxIterationsExceeded {
                    iterations: k,
                    residual: r,
                });
            }
            orbit.push(pv.clone());
            for (s, x) in rs.iter_mut().zip(&pv) {
                *s += x;
            }
            mul_into(&pv, p, &mut tmp);
            std::mem::swap(&mut pv, &mut tmp);
            k += 1;
        }
        if pv != orbit[0] {
            // Deterministic arithmetic cannot reach here; never trust a
            // wrong orbit anyway.
            jumping = false;
            continue;
        }

        // From here the power sequence is exactly periodic: state k + m
        // sees power vector orbit[m mod q]. Find the first index in each
        // residue class whose projected defect clears the target with a
        // safety margin, then the smallest across classes.
        let eps_safe = eps - (1e-12_f64).min(eps / 2.0);
        let qq = q as u128;
        let base = k as u128;
        let mut kstar = u128::MAX;
        for (r, vec_r) in orbit.iter().enumerate() {
            let c = vec_r
                .iter()
                .zip(&u)
                .fold(0.0f64, |m, (a, b): (&f64, &f64)| m.max((a - b).abs()));
            let first_in_class = base + r as u128;
            let kmin = ((c / eps_safe).ceil() as u128).max(1);
            let kr = if kmin <= first_in_class {
                first_in_class
            } else {
                first_in_class + (kmin - first_in_class).div_ceil(qq) * qq
            };
            kstar = kstar.min(kr);
        }
        let target = kstar.min(max_k as u128) as u64;

        // Materialize rs at the target: whole orbits plus a partial one.
        let m = target - k;
        let full = (m / q) as f64;
        let rem = (m % q) as usize;
        for i in 0..n {
            let w: f64 = orbit.iter().map(|v| v[i]).sum();
            let partial: f64 = orbit[..rem].iter().map(|v| v[i]).sum();
            rs[i] += full * w + partial;
        }
        pv.copy_from_slice(&orbit[rem]);
        k = target;

        let r = measured_residual(&rs, k, p, &mut scratch);
        if r <= eps {
            return success(&rs, k, r);
        }
        if k == max_k {
            return Err(Error::MaxIterationsExceeded {
                iterations: k,
                residual: r,
            });
        }
        // Projection missed (margin-edge rounding); finish sequentially.
        jumping = false;
    }
}
