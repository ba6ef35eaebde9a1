use ncfrft::frft::{dft, frft_direct, frft_fast, idft};
use ncfrft::inversion::{InversionGrid, Scheme};
use ncfrft::models::CharacteristicModel;
use ncfrft::quadrature::{newton_cotes_weights, BigRational};
use ncfrft::Complex64;

use crate::{Failure, SelftestArgs};

const MAX_ORDER: usize = 12;
const FAULT: f64 = 1e-6;

// small-order rules as (numerators, common denominator)
const KNOWN: [(&[i64], i64); 6] = [
    (&[1, 1], 2),
    (&[1, 4, 1], 3),
    (&[3, 9, 9, 3], 8),
    (&[14, 64, 24, 64, 14], 45),
    (&[95, 375, 250, 250, 375, 95], 288),
    (&[41, 216, 27, 272, 27, 216, 41], 140),
];

struct Check {
    group: &'static str,
    name: String,
    value: f64,
    limit: f64,
}

impl Check {
    fn pass(&self) -> bool {
        self.value <= self.limit
    }
}

struct Table {
    checks: Vec<Check>,
    tol: Option<f64>,
}

impl Table {
    fn push(&mut self, group: &'static str, name: impl Into<String>, value: f64, limit: f64) {
        let limit = self.tol.unwrap_or(limit);
        self.checks.push(Check {
            group,
            name: name.into(),
            value,
            limit,
        });
    }

    fn exact(&mut self, group: &'static str, name: impl Into<String>, ok: bool) {
        self.checks.push(Check {
            group,
            name: name.into(),
            value: if ok { 0.0 } else { 1.0 },
            limit: 0.0,
        });
    }
}

// deterministic complex test vector
fn signal(len: usize, seed: u64) -> Vec<Complex64> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    (0..len).map(|_| Complex64::new(next(), next())).collect()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn max_norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

fn quadrature(t: &mut Table, fault: bool) -> Result<(), Failure> {
    for (i, (num, den)) in KNOWN.iter().enumerate() {
        let q = i + 1;
        let rule = newton_cotes_weights(q)?;
        let expected: Vec<BigRational> = num
            .iter()
            .map(|&n| BigRational::new(n.into(), (*den).into()))
            .collect();
        t.exact("quadrature", format!("Q={q} exact weights"), rule.weights() == expected.as_slice());
    }
    for q in 1..=MAX_ORDER {
        let rule = newton_cotes_weights(q)?;
        let mut w = rule.weights_f64().to_vec();
        if fault {
            w[0] += FAULT;
        }
        let sum: f64 = w.iter().sum();
        t.push("quadrature", format!("Q={q} weight sum"), (sum - q as f64).abs() / q as f64, 1e-13);
        let asym = (0..=q).map(|j| (w[j] - w[q - j]).abs()).fold(0.0, f64::max);
        t.push("quadrature", format!("Q={q} palindrome"), asym, 1e-15);
        // exact for degree Q, and Q+1 when Q is even
        let degree = if q % 2 == 0 { q + 1 } else { q };
        let mut worst = 0.0f64;
        for d in 0..=degree {
            let approx: f64 = w.iter().enumerate().map(|(j, wj)| wj * (j as f64).powi(d as i32)).sum();
            let exact = (q as f64).powi(d as i32 + 1) / (d as f64 + 1.0);
            worst = worst.max((approx - exact).abs() / exact);
        }
        t.push("quadrature", format!("Q={q} exact to degree {degree}"), worst, 1e-12);
    }
    Ok(())
}

fn frft(t: &mut Table) -> Result<(), Failure> {
    for (i, &len) in [8usize, 12, 64, 100].iter().enumerate() {
        let x = signal(len, i as u64);
        let scale = max_norm(&x) * len as f64;

        let back = idft(&dft(&x));
        t.push("frft", format!("L={len} round trip"), max_diff(&back, &x) / max_norm(&x), 1e-12);

        let e_in: f64 = x.iter().map(|v| v.norm_sqr()).sum();
        let e_out: f64 = dft(&x).iter().map(|v| v.norm_sqr()).sum::<f64>() / len as f64;
        t.push("frft", format!("L={len} Parseval"), (e_in - e_out).abs() / e_in, 1e-12);

        let alpha = Complex64::new(1.0 / len as f64, 0.0);
        let reduced = frft_fast(&x, alpha, 0.0)?;
        t.push("frft", format!("L={len} DFT reduction"), max_diff(&reduced, &dft(&x)) / scale, 1e-12);

        for (a, s) in [(1e-3, 0.0), (-0.37, 0.25), (0.01, 0.5)] {
            let alpha = Complex64::new(a, 0.0);
            let fast = frft_fast(&x, alpha, s)?;
            let slow = frft_direct(&x, alpha, s)?;
            t.push(
                "frft",
                format!("L={len} alpha={a} s={s} fast vs direct"),
                max_diff(&fast, &slow) / scale,
                1e-10,
            );
        }
    }
    Ok(())
}

fn inversion(t: &mut Table) -> Result<(), Failure> {
    let model = CharacteristicModel::preset("vg-star")?;
    let grid = InversionGrid::new(2, 512, 100.0, 40.0, 0.0)?;
    let peak_of = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);

    let weighted = Scheme::WeightedQn.run(&model, &grid)?;
    let integral = Scheme::Integral.run(&model, &grid)?;
    let w = weighted.density();
    let peak = peak_of(&w);
    t.push(
        "inversion",
        "vg-star weighted vs integral",
        diff(&w, &integral.density()) / peak,
        1e-9,
    );
    for q in [2usize, 5] {
        let grid = InversionGrid::new(q, 40, 100.0, 40.0, 0.0)?;
        let w = Scheme::WeightedQn.run(&model, &grid)?.density();
        let peak = peak_of(&w);
        for scheme in [Scheme::CompositeQn, Scheme::CompositeNq] {
            let c = scheme.run(&model, &grid)?.density();
            t.push("inversion", format!("Q={q} {scheme} vs weighted_qn"), diff(&c, &w) / peak, 1e-10);
        }
    }
    t.push("inversion", "vg-star mass", (weighted.mass() - 1.0).abs(), 1e-2);
    t.push("inversion", "vg-star imaginary part", weighted.imag_ratio(), 1e-8);
    Ok(())
}

pub fn run(args: &SelftestArgs) -> Result<(), Failure> {
    if let Some(tol) = args.tol {
        if !tol.is_finite() || tol <= 0.0 {
            return Err(Failure::Validation(format!("--tol must be positive, got {tol}")));
        }
    }
    let mut t = Table {
        checks: Vec::new(),
        tol: args.tol,
    };
    quadrature(&mut t, args.inject_fault)?;
    frft(&mut t)?;
    inversion(&mut t)?;

    let width = t.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &t.checks {
        println!(
            "{:<4} {:<10} {:<width$}  {:.3e} <= {:.1e}",
            if c.pass() { "PASS" } else { "FAIL" },
            c.group,
            c.name,
            c.value,
            c.limit
        );
    }
    let failed = t.checks.iter().filter(|c| !c.pass()).count();
    println!("{} checks, {} failed", t.checks.len(), failed);
    if failed > 0 {
        return Err(Failure::Tolerance(format!("{failed} self-test checks failed")));
    }
    Ok(())
}
