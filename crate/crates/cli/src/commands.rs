use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use hm_core::generators::{Family, FamilyParams};
use hm_core::genus_poly::{spectrum_report, SpectrumReport};
use hm_core::verify::{verify, VerifyConfig};
use hm_core::{
    add_pendant_vertex, bar_amalgamation, dual, euler_genus_polynomial, hmf, join, partial_dual,
    subdivide3, AmalgamationPicks, CornerRef, CountsBundle, EdgeSubset, Engine, EngineConfig,
    GenusPolynomial, Hypermap,
};
use serde::Serialize;

use crate::io::{read_map, write_text, CliResult};
use crate::{Command, Output, Threads};

pub fn run(cmd: Command) -> CliResult<ExitCode> {
    match cmd {
        Command::Info { input, json } => info(&read_map(&input)?, json)?,
        Command::Dual { input, out } => emit(&out, &dual(&read_map(&input)?)?)?,
        Command::Pdual { input, subset, out } => {
            let h = read_map(&input)?;
            let a = EdgeSubset::parse(&h, &subset)?;
            emit(&out, &partial_dual(&h, &a)?)?
        }
        Command::Poly {
            input,
            engine,
            orientable,
            threads,
            json,
        } => poly(&read_map(&input)?, engine, orientable, &threads, json)?,
        Command::Spectrum {
            input,
            orientable,
            threads,
            json,
        } => {
            let h = read_map(&input)?;
            let (p, _) = compute(&h, Engine::Formula, orientable, &threads)?;
            let r = spectrum_report(&p);
            if json {
                write_text(None, &format!("{}\n", serde_json::to_string_pretty(&r)?))?;
            } else {
                write_text(None, &spectrum_text(&r))?;
            }
        }
        Command::Gen {
            family,
            n,
            seed,
            out,
        } => {
            let family: Family = family.parse()?;
            let h = FamilyParams::new(family, n)?.with_seed(seed).generate()?;
            emit(&out, &h)?
        }
        Command::Join {
            first,
            second,
            at,
            at2,
            out,
        } => {
            let (h1, h2) = (read_map(&first)?, read_map(&second)?);
            let c1: CornerRef = at.parse()?;
            let c2: CornerRef = at2.parse()?;
            emit(&out, &join(&h1, &c1, &h2, &c2)?)?
        }
        Command::Amalgamate {
            first,
            second,
            at,
            at2,
            hyperedge,
            hyperedge2,
            out,
        } => {
            let (h1, h2) = (read_map(&first)?, read_map(&second)?);
            let p1 = AmalgamationPicks {
                hyperedge,
                ..AmalgamationPicks::parse(&at)?
            };
            let p2 = AmalgamationPicks {
                hyperedge: hyperedge2,
                ..AmalgamationPicks::parse(&at2)?
            };
            emit(&out, &bar_amalgamation(&h1, &p1, &h2, &p2)?)?
        }
        Command::Subdivide {
            input,
            hyperedge,
            out,
        } => emit(&out, &subdivide3(&read_map(&input)?, &hyperedge)?)?,
        Command::Pendant {
            input,
            hyperedge,
            at,
            out,
        } => emit(
            &out,
            &add_pendant_vertex(&read_map(&input)?, &hyperedge, at)?,
        )?,
        Command::Check {
            inputs,
            subset_cap,
            threads,
        } => return check(&inputs, subset_cap, &threads),
    }
    Ok(ExitCode::SUCCESS)
}

fn workers(t: &Threads) -> usize {
    t.threads
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .max(1)
}

fn emit(out: &Output, h: &Hypermap) -> CliResult<()> {
    write_text(out.path.as_deref(), &hmf::write(h))
}

#[derive(Serialize)]
struct InfoReport<'a> {
    labels: usize,
    vertices: Vec<&'a str>,
    hyperedges: Vec<&'a str>,
    #[serde(flatten)]
    counts: CountsBundle,
    #[serde(skip_serializing_if = "Option::is_none")]
    orientable_genus: Option<i64>,
}

fn info(h: &Hypermap, json: bool) -> CliResult<()> {
    let counts = h.counts();
    let report = InfoReport {
        labels: h.n_labels(),
        vertices: h.vertices().iter().map(|c| c.name.as_str()).collect(),
        hyperedges: h.hyperedges().iter().map(|c| c.name.as_str()).collect(),
        orientable_genus: h.orientable_genus().ok(),
        counts,
    };
    let text = if json {
        format!("{}\n", serde_json::to_string_pretty(&report)?)
    } else {
        let c = &report.counts;
        let orient = match report.orientable_genus {
            Some(g) => format!("orientable, genus {g}"),
            None if c.orientable => "orientable".to_string(),
            None => "non-orientable".to_string(),
        };
        format!(
            "labels      {}\nvertices    {}\nhyperedges  {}\nfaces       {}\nincidences  {}\ncomponents  {}\nchi         {}\neuler genus {}\n{orient}\n",
            report.labels, c.v, c.e, c.f, c.sum_n, c.c, c.chi, c.eps
        )
    };
    write_text(None, &text)
}

fn compute(
    h: &Hypermap,
    engine: Engine,
    orientable: bool,
    threads: &Threads,
) -> CliResult<(GenusPolynomial, u128)> {
    let cfg = EngineConfig::with_engine(engine).workers(workers(threads));
    let start = Instant::now();
    let p = if orientable {
        hm_core::orientable_genus_polynomial(h, &cfg)?
    } else {
        euler_genus_polynomial(h, &cfg)?
    };
    Ok((p, start.elapsed().as_millis()))
}

#[derive(Serialize)]
struct PolyReport {
    kind: &'static str,
    polynomial: GenusPolynomial,
    display: String,
    #[serde(flatten)]
    spectrum: SpectrumReport,
    engine: Engine,
    #[serde(skip_serializing_if = "Option::is_none")]
    engines_agree: Option<bool>,
    subsets: u64,
    elapsed_ms: u128,
}

fn poly(
    h: &Hypermap,
    engine: Engine,
    orientable: bool,
    threads: &Threads,
    json: bool,
) -> CliResult<()> {
    let (p, elapsed_ms) = compute(h, engine, orientable, threads)?;
    let report = PolyReport {
        kind: if orientable { "orientable" } else { "euler" },
        display: p.to_string(),
        spectrum: spectrum_report(&p),
        engine,
        engines_agree: (engine == Engine::Both).then_some(true),
        subsets: 1u64 << h.edge_count(),
        elapsed_ms,
        polynomial: p,
    };
    let text = if json {
        format!("{}\n", serde_json::to_string_pretty(&report)?)
    } else {
        let mut s = format!("{}\n", report.display);
        if report.engines_agree.is_some() {
            s.push_str("engines agree\n");
        }
        s
    };
    write_text(None, &text)
}

fn spectrum_text(r: &SpectrumReport) -> String {
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(", ");
    let mut s = format!("spectrum {{{}}}\n", list(&r.spectrum));
    for g in &r.gaps {
        s.push_str(&format!("gap {}..{} (size {})\n", g.from, g.to, g.size));
    }
    s.push_str(if r.interpolating {
        "interpolating\n"
    } else {
        "not interpolating\n"
    });
    s
}

fn check(
    inputs: &[std::path::PathBuf],
    subset_cap: usize,
    threads: &Threads,
) -> CliResult<ExitCode> {
    let cfg = VerifyConfig {
        subset_cap,
        workers: workers(threads),
        ..VerifyConfig::default()
    };
    let mut reports = Vec::new();
    for path in inputs {
        let h = read_map(path)?;
        reports.push(verify(&h, &display(path), &cfg)?);
    }
    let ok = reports.iter().all(|r| r.mandatory_passed());
    let body = serde_json::json!({ "passed": ok, "reports": reports });
    write_text(None, &format!("{}\n", serde_json::to_string_pretty(&body)?))?;
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn display(p: &Path) -> String {
    p.display().to_string()
}
