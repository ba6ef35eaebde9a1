use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use ncfrft::inversion::{
    evaluate_schemes, format_float, CsvLayout, ErrorReport, InversionGrid, ReferencePolicy, Scheme,
};
use ncfrft::models::{presets, CharacteristicModel};

use crate::{Failure, RunArgs};

pub fn load_model(spec: &str) -> Result<CharacteristicModel, Failure> {
    let path = Path::new(spec);
    if !path.is_file() {
        return CharacteristicModel::preset(spec).map_err(|_| {
            Failure::Validation(format!(
                "'{spec}' is neither a preset ({}) nor a readable file",
                presets::NAMES.join(", ")
            ))
        });
    }
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("reading {}: {e}", path.display())))?;
    Ok(CharacteristicModel::from_json(&text)?)
}

struct Plan {
    model: CharacteristicModel,
    grids: Vec<InversionGrid>,
    schemes: Vec<Scheme>,
    policy: ReferencePolicy,
}

fn plan(args: &RunArgs, default_schemes: &[Scheme]) -> Result<Plan, Failure> {
    let model = load_model(&args.model)?;
    if args.q.is_empty() {
        return Err(Failure::Validation("no order Q given".into()));
    }
    let schemes = args.schemes.clone().unwrap_or_else(|| default_schemes.to_vec());
    if schemes.is_empty() {
        return Err(Failure::Validation("no schemes selected".into()));
    }
    if let Some(t) = args.tol {
        if !t.is_finite() || t <= 0.0 {
            return Err(Failure::Validation(format!("--tol must be positive, got {t}")));
        }
    }
    let grids = args
        .q
        .iter()
        .map(|&q| InversionGrid::new(q, args.n, args.a, args.span, args.s))
        .collect::<Result<Vec<_>, _>>()?;
    let policy = if args.oracle {
        ReferencePolicy::Oracle
    } else {
        ReferencePolicy::ClosedForm
    };
    Ok(Plan {
        model,
        grids,
        schemes,
        policy,
    })
}

fn summarize(out: &mut dyn Write, report: &ErrorReport, model: &CharacteristicModel) -> io::Result<()> {
    let g = &report.grid;
    writeln!(
        out,
        "grid Q={} N={} M={} a={} span={} s={} beta={} gamma={} delta={}",
        g.q(),
        g.n(),
        g.m(),
        g.a(),
        g.gamma() * g.m() as f64,
        g.shift(),
        format_float(g.beta()),
        format_float(g.gamma()),
        format_float(g.delta())
    )?;
    let k = g.nearest_output(model.location());
    for s in &report.samples {
        write!(
            out,
            "  {:<13} mass {}  imag/real {:.2e}  f(x={}) = {}",
            s.scheme().name(),
            format_float(s.mass()),
            s.imag_ratio(),
            format_float(g.output_node(k)),
            format_float(s.values()[k].re)
        )?;
        match report.error(s.scheme()) {
            Some(e) => writeln!(
                out,
                "  max_abs_error {}  mean_abs_error {}",
                format_float(e.max_abs),
                format_float(e.mean_abs)
            )?,
            None => writeln!(out)?,
        }
    }
    let peak = report.peak();
    for p in &report.pairwise {
        writeln!(
            out,
            "  {} - {}: max_abs {}  mean_abs {}  max/peak {:.3e}",
            p.first,
            p.second,
            format_float(p.max_abs),
            format_float(p.mean_abs),
            if peak > 0.0 { p.max_abs / peak } else { 0.0 }
        )?;
    }
    Ok(())
}

fn execute(args: &RunArgs, plan: Plan, layout: CsvLayout) -> Result<(), Failure> {
    let reports = plan
        .grids
        .iter()
        .map(|g| evaluate_schemes(&plan.model, g, &plan.schemes, plan.policy))
        .collect::<Result<Vec<_>, _>>()?;

    {
        let sink: Box<dyn Write> = match &args.out {
            Some(path) => Box::new(File::create(path)?),
            None => Box::new(io::stdout().lock()),
        };
        let mut sink = BufWriter::new(sink);
        for (i, r) in reports.iter().enumerate() {
            let layout = CsvLayout {
                header: i == 0,
                ..layout
            };
            r.write_csv(&mut sink, layout)?;
        }
        sink.flush()?;
    }

    // keep standard output clean when it carries the CSV
    let mut text: Box<dyn Write> = if args.out.is_some() {
        Box::new(io::stdout().lock())
    } else {
        Box::new(io::stderr().lock())
    };
    for r in &reports {
        summarize(&mut text, r, &plan.model)?;
    }
    text.flush()?;

    if let Some(tol) = args.tol {
        for r in &reports {
            let worst = r.max_relative_pair_difference();
            if worst > tol {
                return Err(Failure::Tolerance(format!(
                    "Q={}: pairwise difference {worst:.3e} of peak exceeds {tol:e}",
                    r.grid.q()
                )));
            }
        }
    }
    Ok(())
}

pub fn invert(args: &RunArgs) -> Result<(), Failure> {
    if args.q.len() != 1 {
        return Err(Failure::Validation(format!(
            "invert takes a single --q, got {}; use compare for several",
            args.q.len()
        )));
    }
    let plan = plan(args, &[Scheme::WeightedQn])?;
    let layout = CsvLayout {
        header: true,
        q_column: false,
        differences: false,
    };
    execute(args, plan, layout)
}

pub fn compare(args: &RunArgs) -> Result<(), Failure> {
    let plan = plan(args, &[Scheme::Integral, Scheme::Nonweighted, Scheme::WeightedQn])?;
    if plan.schemes.len() < 2 {
        return Err(Failure::Validation(format!(
            "compare needs at least two schemes, got {}",
            plan.schemes.len()
        )));
    }
    let layout = CsvLayout {
        header: true,
        q_column: true,
        differences: true,
    };
    execute(args, plan, layout)
}
