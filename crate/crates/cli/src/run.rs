use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::Context;
use manin_core::counting::{descent_counts, fast_counts, fit_q, FactorTable};
use manin_core::densities::{
    local_density_oracle, omega_infty_quadrature, peyre_constant_with, tau_product, PeyreBreakdown,
    PeyreOverrides,
};
use manin_core::linalg::to_f64;
use manin_core::Error;
use manin_core::surface::{brute_force_counts, CountRecord, CountingMethod};
use manin_core::toric::divisor::DivisorClassLattice;
use manin_core::toric::surface_fan::{self, ray_name, DIVISOR_LABELS};
use manin_core::toric::{
    alpha_volume, cox_hilbert_basis, frobenius_trace_pic, Fan2D, GaloisInvolution,
};

use crate::config::{
    Command, CompareArgs, CountArgs, DensityArgs, FanArgs, Format, InvolutionChoice, MethodChoice,
    OmegaChoice, PredictArgs, RunConfig, TauArgs,
};
use crate::report::{
    write_compare_csv, write_count_csv, write_json, CompareReport, CompareRow, CountReport, CoxReport,
    DensityReport, FanReport, OrbitReport, PredictReport,
};

/// Two counting engines returned different values. Always a bug.
#[derive(Debug)]
pub struct Disagreement(pub String);

impl std::fmt::Display for Disagreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "counting methods disagree: {}", self.0)
    }
}

impl std::error::Error for Disagreement {}

/// Runs the configured subcommand on a pool of the configured size and
/// writes the artifact to `--output` or stdout. Nothing is written when the
/// command fails.
pub fn run(config: &RunConfig) -> anyhow::Result<()> {
    let mut buf = Vec::new();
    run_to(config, &mut buf)?;
    match &config.global.output {
        Some(path) => {
            let mut f = BufWriter::new(
                File::create(path).with_context(|| format!("creating {}", path.display()))?,
            );
            f.write_all(&buf)?;
            f.flush()?;
        }
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(())
}

/// Same as [`run`] but into an arbitrary sink, ignoring `--output`.
pub fn run_to(config: &RunConfig, out: &mut dyn Write) -> anyhow::Result<()> {
    let workers = config
        .global
        .workers
        .map(|w| w as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .context("building worker pool")?;
    let mut buf = Vec::new();
    pool.install(|| dispatch(config, &mut buf))?;
    out.write_all(&buf)?;
    Ok(())
}

fn dispatch(config: &RunConfig, out: &mut dyn Write) -> anyhow::Result<()> {
    let format = config.global.format;
    match &config.command {
        Command::Count(args) => count(args, format.unwrap_or(Format::Csv), out),
        Command::Predict(args) => {
            let (breakdown, method) = predict(args)?;
            write_json(out, "predict", PredictReport { breakdown, omega_inf_method: method })
        }
        Command::Compare(args) => compare(args, format.unwrap_or(Format::Json), out),
        Command::Fan(args) => write_json(out, "fan", fan_report(args)?),
        Command::Density(DensityArgs { p, k }) => {
            let report = local_density_oracle(*p, *k)?;
            write_json(out, "density", DensityReport { report })
        }
        Command::Cox => {
            let ring = cox_hilbert_basis()?;
            let relation_strings = ring.relations.iter().map(|r| r.to_string()).collect();
            write_json(out, "cox", CoxReport { ring, relation_strings })
        }
    }
}

/// Counts for every bound in `bounds` by each requested method, failing if
/// any two methods disagree.
pub fn count_records(bounds: &[u64], method: MethodChoice) -> anyhow::Result<Vec<CountRecord>> {
    let Some(&max) = bounds.iter().max() else {
        return Ok(Vec::new());
    };
    if bounds.contains(&0) {
        return Err(Error::InvalidInput("height bounds must be positive".into()).into());
    }
    let methods: &[CountingMethod] = match method {
        MethodChoice::Brute => &[CountingMethod::Brute],
        MethodChoice::Fast => &[CountingMethod::Fast],
        MethodChoice::Descent => &[CountingMethod::Descent],
        MethodChoice::All => &[CountingMethod::Brute, CountingMethod::Fast, CountingMethod::Descent],
    };
    let mut per_method: Vec<Vec<CountRecord>> = Vec::new();
    for &m in methods {
        let start = std::time::Instant::now();
        let records = match m {
            CountingMethod::Fast => fast_counts(bounds, &FactorTable::new(max))?,
            CountingMethod::Brute | CountingMethod::Descent => {
                let cumulative = if m == CountingMethod::Brute {
                    brute_force_counts(max)
                } else {
                    descent_counts(max)?
                };
                let elapsed = start.elapsed().as_secs_f64();
                bounds
                    .iter()
                    .map(|&b| CountRecord {
                        bound: b,
                        count: cumulative[b as usize],
                        method: m,
                        elapsed_seconds: elapsed,
                    })
                    .collect()
            }
        };
        per_method.push(records);
    }
    for other in &per_method[1..] {
        for (a, b) in per_method[0].iter().zip(other) {
            if a.count != b.count {
                return Err(Disagreement(format!(
                    "B = {}: {} gives {}, {} gives {}",
                    a.bound, a.method, a.count, b.method, b.count
                ))
                .into());
            }
        }
    }
    Ok(per_method.into_iter().flatten().collect())
}

fn count(args: &CountArgs, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    let min = args.min_height.unwrap_or(args.max_height);
    if min == 0 || min > args.max_height {
        return Err(Error::InvalidInput("need 1 <= --min-height <= --max-height".into()).into());
    }
    let bounds: Vec<u64> = (min..=args.max_height).collect();
    let records = count_records(&bounds, args.method)?;
    match format {
        Format::Csv => write_count_csv(out, &records),
        Format::Json => write_json(out, "count", CountReport { records }),
    }
}

fn alpha_of_surface() -> anyhow::Result<manin_core::linalg::Q> {
    let dcl = DivisorClassLattice::with_labels(
        &surface_fan::resolved_fan(),
        &surface_fan::conjugation(),
        &DIVISOR_LABELS,
    )?;
    Ok(alpha_volume(&dcl)?)
}

fn tau_checked(args: &TauArgs) -> anyhow::Result<manin_core::densities::EulerProductResult> {
    if !(args.tol > 0.0) {
        return Err(Error::InvalidInput("--tol must be positive".into()).into());
    }
    Ok(tau_product(args.cutoff, args.tol)?)
}

pub fn predict(args: &PredictArgs) -> anyhow::Result<(PeyreBreakdown, String)> {
    let tau = tau_checked(&args.tau)?;
    let alpha = alpha_of_surface()?;
    let (omega_inf, method) = match args.omega {
        OmegaChoice::Closed => (None, "closed".to_string()),
        OmegaChoice::Quadrature => {
            let q = omega_infty_quadrature(args.omega_tol)?;
            (Some(q.value), format!("quadrature (tol {:e})", args.omega_tol))
        }
    };
    let breakdown = peyre_constant_with(&tau, &alpha, PeyreOverrides { omega_inf, pi4_cubed: None });
    Ok((breakdown, method))
}

pub fn compare_report(args: &CompareArgs) -> anyhow::Result<CompareReport> {
    if args.min_exp == 0 || args.min_exp > args.max_exp || args.max_exp > 40 {
        return Err(Error::InvalidInput("need 1 <= --min-exp <= --max-exp <= 40".into()).into());
    }
    let (breakdown, _) = predict(&PredictArgs {
        tau: args.tau.clone(),
        omega: OmegaChoice::Closed,
        omega_tol: 1e-6,
    })?;
    let bounds: Vec<u64> = (args.min_exp..=args.max_exp).map(|k| 1u64 << k).collect();
    let records = fast_counts(&bounds, &FactorTable::new(*bounds.last().unwrap()))?;
    let c = breakdown.c_estimate;
    let rows: Vec<CompareRow> = records.iter().map(|r| CompareRow::new(r.bound, r.count, c)).collect();
    let samples: Vec<(u64, u64)> = records.iter().map(|r| (r.bound, r.count)).collect();
    let fit = fit_q(&samples, Some(c))?;
    Ok(CompareReport { c_estimate: c, c_interval: breakdown.c_interval, rows, fit })
}

fn compare(args: &CompareArgs, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    let report = compare_report(args)?;
    match format {
        Format::Json => write_json(out, "compare", report),
        Format::Csv => {
            write_compare_csv(out, &report.rows)?;
            let fit_json = serde_json::to_string_pretty(&crate::report::Envelope {
                schema_version: crate::report::SCHEMA_VERSION,
                kind: "qfit",
                body: &report.fit,
            })?;
            match &args.fit_output {
                Some(path) => std::fs::write(path, fit_json + "\n")
                    .with_context(|| format!("writing {}", path.display()))?,
                None => eprintln!("{fit_json}"),
            }
            Ok(())
        }
    }
}

fn pairs(f: &Fan2D) -> Vec<(i64, i64)> {
    f.rays().iter().map(|r| r.as_pair()).collect()
}

pub fn fan_report(args: &FanArgs) -> anyhow::Result<FanReport> {
    let fan = match &args.fan_file {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?
            .parse::<Fan2D>()?,
        None => surface_fan::singular_fan(),
    };
    let g = match args.involution {
        InvolutionChoice::Swap => GaloisInvolution::swap(),
        InvolutionChoice::Identity => GaloisInvolution::identity(),
    };
    let resolved = fan.hj_resolve()?;
    let inserted = resolved.rays().iter().filter(|r| !fan.contains(r)).map(|r| r.as_pair()).collect();
    let dcl = if resolved == surface_fan::resolved_fan() && g == GaloisInvolution::swap() {
        DivisorClassLattice::with_labels(&resolved, &g, &DIVISOR_LABELS)?
    } else {
        DivisorClassLattice::new(&resolved, &g)?
    };
    let alpha = alpha_volume(&dcl)?;
    let orbits = dcl
        .orbits
        .iter()
        .enumerate()
        .map(|(i, o)| OrbitReport {
            label: format!("D{}", i + 1),
            rays: o.iter().map(|r| r.as_pair()).collect(),
            names: o.iter().map(|r| ray_name(r).unwrap_or("-").to_string()).collect(),
        })
        .collect();
    let mut polytope: Vec<String> = dcl.alpha_polytope.halfspaces.iter().map(|h| h.to_string()).collect();
    polytope.push(dcl.alpha_polytope.hyperplane.to_string());
    Ok(FanReport {
        rays: pairs(&fan),
        cone_indices: fan.cone_indices(),
        complete: fan.is_complete(),
        smooth: fan.is_smooth(),
        invariant: fan.is_invariant(&g),
        resolved_rays: pairs(&resolved),
        inserted_rays: inserted,
        resolved_smooth: resolved.is_smooth(),
        resolved_complete: resolved.is_complete(),
        picard_rank: dcl.picard_rank_invariant,
        picard_rank_geometric: dcl.picard_rank_geometric,
        frobenius_trace: frobenius_trace_pic(&resolved, &g)?,
        orbits,
        relations: dcl.eliminated.iter().map(|r| r.to_string()).collect(),
        anticanonical: dcl.anticanonical_display(),
        alpha_polytope: polytope,
        alpha_float: to_f64(&alpha),
        alpha: alpha.to_string(),
    })
}
