//! Each SINR re-derived in isolation from the slot signal models and compared
//! with the library on fixed draws.

use nomacdrt::sinr::{sinr_ben1, sinr_ben2, sinr_proposed, Ben1Coeffs, Ben2Coeffs};
use nomacdrt::{Draw, Params};

struct Case {
    p: Params,
    d: Draw,
}

fn cases() -> Vec<Case> {
    let d0 = Draw {
        g_sun: 1.0,
        g_sr: 0.7,
        g_unr: 0.8,
        g_ruf: 1.0,
        g_unuf: 0.8,
    };
    let d1 = Draw {
        g_sun: 0.03,
        g_sr: 2.5,
        g_unr: 0.2,
        g_ruf: 0.4,
        g_unuf: 1.7,
    };
    let mut p1 = Params::reference_db(7.0);
    p1.a_s = 0.35;
    p1.a1_t2 = 0.8;
    p1.nu = 3.0;
    vec![
        Case {
            p: Params::reference(100.0),
            d: d0,
        },
        Case { p: p1, d: d1 },
    ]
}

fn close(a: f64, b: f64, what: &str) {
    assert!(((a - b) / b.abs().max(1e-300)).abs() < 1e-13, "{what}: {a} vs {b}");
}

// Proposed scheme, one function per SINR.
fn g_sq(p: &Params) -> f64 {
    let rs = p.nu * p.rho_u;
    p.rho_u / (rs * p.lambda_sr + 2.0 * p.rho_u * p.lambda_ruf + p.rho_u * p.lambda_run + 2.0)
}
fn a1_t3(p: &Params) -> f64 {
    g_sq(p) * p.a1_t2 * p.lambda_run * p.lambda_ruf / p.lambda_unuf
}
fn near_x1(p: &Params, d: &Draw) -> f64 {
    p.a_s * p.nu * p.rho_u * d.g_sun
}
fn relay_x1(p: &Params, d: &Draw) -> f64 {
    let rs = p.nu * p.rho_u;
    p.a_s * rs * d.g_sr / ((1.0 - p.a_s) * rs * d.g_sr + p.rho_u * d.g_ruf + 1.0)
}
fn relay_x2(p: &Params, d: &Draw) -> f64 {
    let rs = p.nu * p.rho_u;
    (1.0 - p.a_s) * rs * d.g_sr / (p.a_s * rs * d.g_sr + p.rho_u * d.g_ruf + 1.0)
}
fn bs_x3(p: &Params, d: &Draw) -> f64 {
    p.a1_t2 * p.rho_u * d.g_sun
}
fn relay_x3(p: &Params, d: &Draw) -> f64 {
    let jam = p.rho_u * (1.0 - p.a1_t2) * d.g_unr;
    p.rho_u * p.a1_t2 * d.g_unr / (jam + p.rho_u * d.g_ruf + 1.0)
}
fn relay_x4(p: &Params, d: &Draw) -> f64 {
    p.rho_u * d.g_ruf / (p.rho_u * d.g_unr + 1.0)
}
fn bs_x5(p: &Params, d: &Draw) -> f64 {
    let g2 = g_sq(p);
    let residual = g2 * d.g_sr * (p.rho_u * d.g_ruf + 2.0) + 1.0;
    (1.0 - a1_t3(p)) * p.rho_u * d.g_sun / residual
}
fn bs_x4(p: &Params, d: &Draw) -> f64 {
    let g2 = g_sq(p);
    g2 * p.rho_u * d.g_sr * d.g_ruf / (2.0 * g2 * d.g_sr + 1.0)
}
fn far_x2(p: &Params, d: &Draw, exact: bool) -> f64 {
    let g2 = g_sq(p);
    let rs = p.nu * p.rho_u;
    let w0 = if exact {
        let direct = (d.g_unuf * a1_t3(p) * p.rho_u).sqrt();
        let relayed = (g2 * d.g_ruf * d.g_unr * p.a1_t2 * p.rho_u).sqrt();
        (relayed - direct).powi(2)
    } else {
        0.0
    };
    g2 * (1.0 - p.a_s) * rs * d.g_sr * d.g_ruf / (g2 * d.g_ruf * (p.a_s * rs * d.g_sr + 2.0) + w0 + 1.0)
}

#[test]
fn proposed_matches_per_formula_oracle() {
    for c in cases() {
        let coeffs = c.p.derive().unwrap();
        for exact in [false, true] {
            let prof = sinr_proposed(&c.d, &c.p, &coeffs, exact);
            close(prof.legit[0], near_x1(&c.p, &c.d), "legit x1");
            close(prof.legit[1], far_x2(&c.p, &c.d, exact), "legit x2");
            close(prof.legit[2], bs_x3(&c.p, &c.d), "legit x3");
            close(prof.legit[3], bs_x4(&c.p, &c.d), "legit x4");
            close(prof.legit[4], bs_x5(&c.p, &c.d), "legit x5");
            close(prof.eve[0], relay_x1(&c.p, &c.d), "eve x1");
            close(prof.eve[1], relay_x2(&c.p, &c.d), "eve x2");
            close(prof.eve[2], relay_x3(&c.p, &c.d), "eve x3");
            close(prof.eve[3], relay_x4(&c.p, &c.d), "eve x4");
        }
    }
}

#[test]
fn reference_draw_values() {
    // ρ_U = 100, ρ_S = 200, G² = 100/422, a1_t3 = 50/422.
    let c = &cases()[0];
    let prof = sinr_proposed(&c.d, &c.p, &c.p.derive().unwrap(), false);
    let g2 = 100.0 / 422.0;
    close(prof.legit[0], 40.0, "legit x1");
    close(prof.eve[0], 28.0 / (112.0 + 100.0 + 1.0), "eve x1");
    close(prof.eve[3], 100.0 / 81.0, "eve x4");
    close(prof.legit[4], (1.0 - 50.0 / 422.0) * 100.0 / (g2 * 0.7 * 102.0 + 1.0), "legit x5");
}

fn ben1_oracle(p: &Params, d: &Draw) -> ([f64; 5], [f64; 4]) {
    let rs = p.nu * p.rho_u;
    let ru = p.rho_u;
    let (a, ab, a1) = (p.a_s, 1.0 - p.a_s, p.a1_t2);
    let g1 = ru / (rs * p.lambda_sr + ru * p.lambda_ruf + 1.0);
    let g2 = ru / (ru * p.lambda_run + ru * p.lambda_ruf + 1.0);
    let legit = [
        a * rs * d.g_sun,
        g1 * ab * rs * d.g_sr * d.g_ruf / (g1 * d.g_ruf * (a * rs * d.g_sr + 1.0) + 1.0),
        a1 * ru * d.g_sun,
        g2 * ru * d.g_sr * d.g_ruf / (g2 * d.g_sr + 1.0),
        ru * d.g_sun / (g2 * d.g_sr * (ru * d.g_ruf + 1.0) + 1.0),
    ];
    let eve = [relay_x1(p, d), relay_x2(p, d), relay_x3(p, d), relay_x4(p, d)];
    (legit, eve)
}

fn ben2_oracle(p: &Params, d: &Draw) -> ([f64; 5], [f64; 4]) {
    let rs = p.nu * p.rho_u;
    let ru = p.rho_u;
    let (a, ab) = (p.a_s, 1.0 - p.a_s);
    let gb = ru / (rs * p.lambda_sr + ru * p.lambda_run + ru * p.lambda_ruf + 2.0);
    let legit = [
        a * rs * d.g_sun,
        gb * ab * rs * d.g_sr * d.g_ruf / (gb * d.g_ruf * (a * rs * d.g_sr + ru * d.g_unr + 2.0) + 1.0),
        ru * d.g_sun,
        gb * ru * d.g_sr * d.g_ruf / (2.0 * gb * d.g_sr + 1.0),
        ru * d.g_sun / (gb * d.g_sr * (ru * d.g_ruf + 2.0) + 1.0),
    ];
    let eve = [
        a * rs * d.g_sr / (ab * rs * d.g_sr + 1.0),
        ab * rs * d.g_sr / (a * rs * d.g_sr + 1.0),
        ru * d.g_unr / (ru * d.g_ruf + 1.0),
        ru * d.g_ruf / (ru * d.g_unr + 1.0),
    ];
    (legit, eve)
}

#[test]
fn benchmarks_match_per_formula_oracle() {
    for c in cases() {
        let b1 = sinr_ben1(&c.d, &c.p, &Ben1Coeffs::new(&c.p));
        let (l1, e1) = ben1_oracle(&c.p, &c.d);
        let b2 = sinr_ben2(&c.d, &c.p, &Ben2Coeffs::new(&c.p));
        let (l2, e2) = ben2_oracle(&c.p, &c.d);
        for j in 0..5 {
            close(b1.legit[j], l1[j], "ben1 legit");
            close(b2.legit[j], l2[j], "ben2 legit");
        }
        for j in 0..4 {
            close(b1.eve[j], e1[j], "ben1 eve");
            close(b2.eve[j], e2[j], "ben2 eve");
        }
        assert_eq!(b1.slots, 4);
        assert_eq!(b2.slots, 3);
    }
}
