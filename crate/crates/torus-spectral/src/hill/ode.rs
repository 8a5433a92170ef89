//! Adaptive embedded Runge-Kutta stepping (Dormand-Prince 5(4)) for the
//! small fixed-size systems used by the shooting solvers.

use crate::error::{Error, Result};

const MAX_STEPS: usize = 2_000_000;

// Dormand-Prince 5(4) tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates `y' = f(x, y)` from `x0` to `x1 > x0`.
///
/// If `outputs` is nonempty it must be sorted increasing within `(x0, x1]`;
/// the integrator steps exactly onto each point and reports the state there
/// via `on_output(index, y)`. Returns the state at `x1`.
pub fn integrate<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    x0: f64,
    x1: f64,
    y0: [f64; N],
    rtol: f64,
    atol: f64,
    outputs: &[f64],
    on_output: &mut dyn FnMut(usize, &[f64; N]),
) -> Result<[f64; N]> {
    debug_assert!(x1 > x0);
    let span = x1 - x0;
    let mut x = x0;
    let mut y = y0;
    let mut h = span / 64.0;
    let h_min = span * 1e-14;
    let mut next_out = 0usize;

    let mut k = [[0.0f64; N]; 7];

    for _step in 0..MAX_STEPS {
        if x >= x1 {
            return Ok(y);
        }
        // cap the step at the next output point and the interval end
        let mut target = x1;
        let mut hit_output = false;
        if next_out < outputs.len() && outputs[next_out] <= x1 {
            target = outputs[next_out];
            hit_output = true;
        }
        if x + h >= target - 1e-15 * span {
            h = target - x;
        } else {
            hit_output = false;
        }
        if h < h_min {
            // an output point may coincide with the current x up to rounding
            if hit_output {
                on_output(next_out, &y);
                next_out += 1;
                continue;
            }
            return Err(Error::StepUnderflow(x));
        }

        k[0] = f(x, &y);
        for s in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[s] = f(x + C[s] * h, &ys);
        }

        let mut y5 = y;
        let mut y4 = y;
        for (s, ks) in k.iter().enumerate() {
            for i in 0..N {
                y5[i] += h * B5[s] * ks[i];
                y4[i] += h * B4[s] * ks[i];
            }
        }

        let mut err2 = 0.0;
        for i in 0..N {
            let sc = atol + rtol * y[i].abs().max(y5[i].abs());
            let e = (y5[i] - y4[i]) / sc;
            err2 += e * e;
        }
        let err = (err2 / N as f64).sqrt();

        if err <= 1.0 {
            x += h;
            y = y5;
            if hit_output {
                on_output(next_out, &y);
                next_out += 1;
            }
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
    }
    Err(Error::TooManySteps(MAX_STEPS))
}

/// Convenience wrapper without dense output.
pub fn integrate_to<const N: usize>(
    f: &dyn Fn(f64, &[f64; N]) -> [f64; N],
    x0: f64,
    x1: f64,
    y0: [f64; N],
    rtol: f64,
    atol: f64,
) -> Result<[f64; N]> {
    integrate(f, x0, x1, y0, rtol, atol, &[], &mut |_, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential() {
        let y = integrate_to(&|_, y: &[f64; 1]| [y[0]], 0.0, 1.0, [1.0], 1e-12, 1e-12).unwrap();
        assert!((y[0] - std::f64::consts::E).abs() < 1e-10);
    }

    #[test]
    fn harmonic_oscillator_and_outputs() {
        let f = |_: f64, y: &[f64; 2]| [y[1], -y[0]];
        let outs: Vec<f64> = (1..=8).map(|i| i as f64 / 8.0).collect();
        let mut got = Vec::new();
        let y = integrate(
            &f,
            0.0,
            1.0,
            [0.0, 1.0],
            1e-12,
            1e-12,
            &outs,
            &mut |i, y| got.push((i, y[0])),
        )
        .unwrap();
        assert!((y[0] - 1.0f64.sin()).abs() < 1e-10);
        assert_eq!(got.len(), 8);
        for (i, v) in got {
            let x = (i + 1) as f64 / 8.0;
            assert!((v - x.sin()).abs() < 1e-10, "at {x}");
        }
    }
}
