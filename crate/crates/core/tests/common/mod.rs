#![allow(dead_code)]

use nomacdrt::Params;

/// Trapezoid rule for `∫ f(x) dx` over `[lo, hi]` in the variable `u = ln x`,
/// with `n` panels.
pub fn trap_log<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, n: usize) -> f64 {
    let (ul, uh) = (lo.ln(), hi.ln());
    let h = (uh - ul) / n as f64;
    let g = |u: f64| {
        let x = u.exp();
        f(x) * x
    };
    let mut s = 0.5 * (g(ul) + g(uh));
    for i in 1..n {
        s += g(ul + i as f64 * h);
    }
    s * h
}

/// Uniform trapezoid rule over `[a, b]`.
pub fn trap<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = 0.5 * (f(a) + f(b));
    for i in 1..n {
        s += f(a + i as f64 * h);
    }
    s * h
}

/// Richardson-extrapolated log-grid trapezoid. Returns the value built from
/// `2n` and `4n` panels and its distance from the one built from `n` and `2n`.
pub fn trap_log_checked<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> (f64, f64) {
    let t = [n, 2 * n, 4 * n].map(|m| trap_log(&f, lo, hi, m));
    richardson(t)
}

pub fn trap_checked<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> (f64, f64) {
    let t = [n, 2 * n, 4 * n].map(|m| trap(&f, a, b, m));
    richardson(t)
}

fn richardson(t: [f64; 3]) -> (f64, f64) {
    let r1 = (4.0 * t[1] - t[0]) / 3.0;
    let r2 = (4.0 * t[2] - t[1]) / 3.0;
    (r2, (r2 - r1).abs())
}

/// `n` points spaced evenly in log between `lo` and `hi`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// `K1(z) = ∫_0^∞ e^{-z cosh t} cosh t dt` by uniform trapezoid.
pub fn k1_oracle(z: f64) -> f64 {
    let t_max = (800.0 / z + 1.0).acosh();
    trap(&|t: f64| (-z * t.cosh()).exp() * t.cosh(), 0.0, t_max, 20_000)
}

pub fn phi3_oracle(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let r = x.sqrt();
    r * k1_oracle(r)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Closed interval check `|a - b| <= k σ`.
pub fn within(a: f64, b: f64, sigma: f64, k: f64) -> bool {
    (a - b).abs() <= k * sigma
}

pub fn reference(db: f64) -> Params {
    Params::reference_db(db)
}
