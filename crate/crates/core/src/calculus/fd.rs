//! Central finite differences with one level of Richardson extrapolation.

/// Central stencil `(offset, weight)` for an `m`-th derivative with unit step.
fn stencil(m: u8) -> &'static [(i32, f64)] {
    match m {
        0 => &[(0, 1.0)],
        1 => &[(-1, -0.5), (1, 0.5)],
        2 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
        3 => &[(-2, -0.5), (-1, 1.0), (1, -1.0), (2, 0.5)],
        4 => &[(-2, 1.0), (-1, -4.0), (0, 6.0), (1, -4.0), (2, 1.0)],
        5 => &[
            (-3, -0.5),
            (-2, 2.0),
            (-1, -2.5),
            (1, 2.5),
            (2, -2.0),
            (3, 0.5),
        ],
        _ => panic!("finite-difference order {m} not supported"),
    }
}

/// Base step for a partial of total order `k`. First derivatives use
/// `eps^(1/3)`; higher orders balance the `eps/h^k` rounding term against the
/// `h^4` remainder left after extrapolation.
fn base_step(k: usize) -> f64 {
    match k {
        0 | 1 => f64::EPSILON.cbrt(),
        _ => f64::EPSILON.powf(1.0 / (k as f64 + 4.0)),
    }
}

fn tensor_stencil(f: &dyn Fn(&[f64]) -> f64, point: &[f64], orders: &[u8], steps: &[f64]) -> f64 {
    let active: Vec<usize> = (0..orders.len()).filter(|&v| orders[v] > 0).collect();
    if active.is_empty() {
        return f(point);
    }
    let stencils: Vec<&[(i32, f64)]> = active.iter().map(|&v| stencil(orders[v])).collect();
    let mut idx = vec![0usize; active.len()];
    let mut p = point.to_vec();
    let mut acc = 0.0;
    loop {
        let mut w = 1.0;
        for (a, &v) in active.iter().enumerate() {
            let (off, wt) = stencils[a][idx[a]];
            p[v] = point[v] + off as f64 * steps[v];
            w *= wt;
        }
        acc += w * f(&p);
        // odometer increment
        let mut a = 0;
        loop {
            idx[a] += 1;
            if idx[a] < stencils[a].len() {
                break;
            }
            idx[a] = 0;
            a += 1;
            if a == active.len() {
                let scale: f64 = active
                    .iter()
                    .map(|&v| steps[v].powi(orders[v] as i32))
                    .product();
                return acc / scale;
            }
        }
    }
}

/// Mixed partial of `f` at `point` with per-coordinate orders `orders`.
pub fn fd_partial(f: &dyn Fn(&[f64]) -> f64, point: &[f64], orders: &[u8]) -> f64 {
    let k: usize = orders.iter().map(|&o| o as usize).sum();
    if k == 0 {
        return f(point);
    }
    let h = base_step(k);
    let steps: Vec<f64> = point.iter().map(|c| h * (1.0 + c.abs())).collect();
    let half: Vec<f64> = steps.iter().map(|s| 0.5 * s).collect();
    let coarse = tensor_stencil(f, point, orders, &steps);
    let fine = tensor_stencil(f, point, orders, &half);
    (4.0 * fine - coarse) / 3.0
}
