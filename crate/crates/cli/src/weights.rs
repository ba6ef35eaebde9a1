use std::fs::File;
use std::io::{BufWriter, Write};

use ncfrft::inversion::format_float;
use ncfrft::quadrature::{flatten_composite_weights, newton_cotes_weights, BigRational};

use crate::{Failure, WeightsArgs};

pub fn run(args: &WeightsArgs) -> Result<(), Failure> {
    let rule = newton_cotes_weights(args.q)?;
    let exact = rule.weights();
    let floats = rule.weights_f64();
    let joined: Vec<String> = exact.iter().map(|w| w.to_string()).collect();
    println!("Q={} weights: {}", args.q, joined.join(" "));
    println!("{:>3}  {:>28}  {:>24}", "j", "exact", "decimal");
    for (j, (w, f)) in exact.iter().zip(floats).enumerate() {
        println!("{j:>3}  {:>28}  {:>24}", w.to_string(), format_float(*f));
    }

    let (rows, values): (Vec<BigRational>, Vec<f64>) = match args.n {
        None => (exact.to_vec(), floats.to_vec()),
        Some(n) => {
            if n == 0 {
                return Err(ncfrft::Error::ZeroPanels.into());
            }
            let q = args.q;
            let mut flat: Vec<BigRational> = Vec::with_capacity(q * n + 1);
            for p in 0..n {
                for (j, w) in exact.iter().enumerate() {
                    if p > 0 && j == 0 {
                        let last = flat.last_mut().expect("previous panel");
                        *last = &*last + w;
                    } else {
                        flat.push(w.clone());
                    }
                }
            }
            let joined: Vec<String> = flat.iter().map(|w| w.to_string()).collect();
            println!("composite Q={q} N={n} (M={}): {}", q * n, joined.join(" "));
            (flat, flatten_composite_weights(q, n)?.into_values())
        }
    };

    if let Some(path) = &args.csv {
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "Q,j,numerator,denominator,float")?;
        for (j, (w, value)) in rows.iter().zip(&values).enumerate() {
            writeln!(
                out,
                "{},{},{},{},{}",
                args.q,
                j,
                w.numer(),
                w.denom(),
                format_float(*value)
            )?;
        }
        out.flush()?;
    }
    Ok(())
}
