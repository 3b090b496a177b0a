use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use tfseg::certificate::{Certificate, Verdict, Witness};
use tfseg::construction::{probe_count_formula, total_weight_formula};
use tfseg::error::OracleError;
use tfseg::geometry::{
    build_representation, certify_representation, coordinate_bits, export_svg, replicate,
    SegmentFamily,
};
use tfseg::lp::{optimal_weighting_with, verify_weighting_optimal_with};
use tfseg::oracle::{
    certify_coloring_forcing, check_probe_hits_exhaustive, check_probe_hits_sampled,
    check_probes_independent, chromatic_number_with, is_triangle_free,
    max_weight_independent_set_with, DEFAULT_NODE_BUDGET,
};
use tfseg::rational::{format_q, q};
use tfseg::{blow_up, build_structure, build_tilde, Structure};

#[derive(Parser)]
#[command(name = "tfseg", version, about = "Triangle-free segment graphs with small independence ratio")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a level and write its structure as JSON
    Generate {
        #[command(flatten)]
        cfg: RunConfig,
        /// Also write the graph in DOT format
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run every applicable certificate for a level
    Verify {
        #[command(flatten)]
        cfg: RunConfig,
        /// Also solve the weighting LP
        #[arg(long)]
        lp: bool,
        /// Random maximal independent sets checked when exhaustive search is out of reach
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Build, optionally replicate, and certify the segment representation
    Geometry {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long)]
        replicate: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Optimal vertex weighting with its exact dual certificate
    Lp {
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Closed-form counts and measured independence ratios per level
    RatioTable {
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Write a level as JSON, DOT or SVG
    Export {
        #[command(flatten)]
        cfg: RunConfig,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        replicate: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

#[derive(Args)]
struct RunConfig {
    /// Level of the construction (default depends on the command)
    #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(1..))]
    k: Option<u32>,
    /// Use the completed level with one extra diagonal per probe
    #[arg(long)]
    tilde: bool,
    /// Output file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for sampled checks
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node budget of the independent set search
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    max_nodes: u64,
    /// Largest vertex count for exhaustive enumeration and coloring search
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
    exhaustive_cap: u64,
    /// Print machine-readable JSON to stdout
    #[arg(long)]
    json: bool,
}

impl RunConfig {
    fn level(&self, default: u32) -> u32 {
        self.k.unwrap_or(default)
    }

    fn cap(&self) -> usize {
        self.exhaustive_cap as usize
    }

    /// The plain level and, with `--tilde`, its completion.
    fn structures(&self, default: u32) -> Result<(Structure, Option<Structure>)> {
        let s = build_structure(self.level(default))?;
        let t = if self.tilde { Some(build_tilde(&s)?) } else { None };
        Ok((s, t))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate { cfg, dot } => generate(&cfg, dot.as_deref()),
        Command::Verify { cfg, lp, samples } => verify(&cfg, lp, samples),
        Command::Geometry { cfg, replicate, svg } => geometry(&cfg, replicate, svg.as_deref()),
        Command::Lp { cfg } => lp(&cfg),
        Command::RatioTable { cfg } => ratio_table(&cfg),
        Command::Export { cfg, format, replicate } => export(&cfg, format, replicate),
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn pow2_bound(k: u32) -> BigUint {
    probe_count_formula(k)
}

fn generate(cfg: &RunConfig, dot: Option<&Path>) -> Result<ExitCode> {
    let (s, t) = cfg.structures(3)?;
    let st = t.as_ref().unwrap_or(&s);
    let json = serde_json::to_string_pretty(&st.to_json())?;
    if let Some(path) = &cfg.out {
        write(path, &json)?;
    }
    if let Some(path) = dot {
        write(path, &st.to_dot())?;
    }
    if cfg.json {
        println!("{json}");
        return Ok(ExitCode::SUCCESS);
    }
    println!("level {}{}", st.k, if st.tilde { " (completed)" } else { "" });
    println!("{:<14}{:>14}{:>14}", "quantity", "constructed", "closed form");
    println!("{:<14}{:>14}{:>14}", "vertices", st.vertex_count(), "-");
    println!("{:<14}{:>14}{:>14}", "edges", st.graph.edge_count(), "-");
    println!(
        "{:<14}{:>14}{:>14}",
        "probes",
        s.probes.len(),
        probe_count_formula(s.k)
    );
    println!(
        "{:<14}{:>14}{:>14}",
        "total weight",
        st.weights.total(),
        total_weight_formula(st.k, st.tilde)
    );
    Ok(ExitCode::SUCCESS)
}

fn equality_check(name: &str, got: BigUint, want: BigUint) -> Certificate {
    let cert = if got == want {
        Certificate::pass(name)
    } else {
        Certificate::fail(name, Witness::Note(format!("constructed {got}, formula {want}")))
    };
    cert.with_bound("constructed", &got).with_bound("formula", &want)
}

fn mwis_bound_check(st: &Structure, budget: u64) -> Certificate {
    let start = Instant::now();
    let name = if st.tilde { "independence_bound_completed" } else { "independence_bound" };
    let bound = pow2_bound(st.k);
    match max_weight_independent_set_with(&st.graph, &st.weights, budget) {
        Ok((best, set, stats)) => {
            let cert = if BigUint::from(best) <= bound {
                Certificate::pass(name)
            } else {
                Certificate::fail(name, Witness::Vertices(set.members().to_vec()))
            };
            cert.with_bound("max_weight", best)
                .with_bound("bound", &bound)
                .with_bound("nodes", stats.nodes)
                .timed(start)
        }
        Err(e @ OracleError::BudgetExceeded { .. }) => Certificate::skipped(name, e.to_string()),
        Err(e) => Certificate::fail(name, Witness::Note(e.to_string())),
    }
}

fn verify(cfg: &RunConfig, with_lp: bool, samples: u64) -> Result<ExitCode> {
    let (s, t) = cfg.structures(4)?;
    let k = s.k;
    let mut certs = vec![
        equality_check("probe_count", BigUint::from(s.probes.len()), probe_count_formula(k)),
        equality_check("total_weight", s.weights.total(), total_weight_formula(k, false)),
        is_triangle_free(&s.graph),
        check_probes_independent(&s),
    ];
    certs.push(match check_probe_hits_exhaustive(&s, cfg.cap()) {
        Ok(cert) => cert,
        Err(OracleError::TooLargeForExhaustive { .. }) => {
            check_probe_hits_sampled(&s, samples, cfg.seed)
        }
        Err(e) => return Err(e.into()),
    });
    certs.push(certify_coloring_forcing(&s, k as usize, cfg.cap()));
    certs.push(mwis_bound_check(&s, cfg.max_nodes));

    if let Some(t) = &t {
        certs.push(equality_check(
            "total_weight_completed",
            t.weights.total(),
            total_weight_formula(k, true),
        ));
        let mut tri = is_triangle_free(&t.graph);
        tri.check = "triangle_free_completed".into();
        certs.push(tri);
        certs.push(mwis_bound_check(t, cfg.max_nodes));
        let start = Instant::now();
        certs.push(match chromatic_number_with(&t.graph, cfg.cap()) {
            Ok((chi, col)) => {
                let cert = if chi == k as usize + 1 {
                    Certificate::pass("chromatic_number_completed")
                } else {
                    Certificate::fail("chromatic_number_completed", Witness::Coloring(col.0))
                };
                cert.with_bound("chromatic_number", chi)
                    .with_bound("expected", k + 1)
                    .timed(start)
            }
            Err(e) => Certificate::skipped("chromatic_number_completed", e.to_string()),
        });
    }
    if with_lp {
        certs.extend(lp_checks(t.as_ref().unwrap_or(&s)));
    }
    report(cfg, &certs)
}

fn lp_checks(st: &Structure) -> Vec<Certificate> {
    let start = Instant::now();
    let res = match optimal_weighting_with(&st.graph, 30) {
        Ok(res) => res,
        Err(e) => return vec![Certificate::skipped("lp_optimal_ratio", e.to_string())],
    };
    let mut out = Vec::new();
    let dual = match res.verify(&st.graph) {
        Ok(()) => Certificate::pass("lp_dual_certificate"),
        Err(e) => Certificate::fail("lp_dual_certificate", Witness::Note(e.to_string())),
    };
    out.push(dual.with_bound("maximal_independent_sets", res.constraints.len()).timed(start));
    if st.tilde {
        let want = q(2, st.k as i64 + 3);
        let cert = if res.ratio == want {
            Certificate::pass("lp_optimal_ratio")
        } else {
            Certificate::fail("lp_optimal_ratio", Witness::Note(format!("expected {}", format_q(&want))))
        };
        out.push(cert.with_bound("ratio", format_q(&res.ratio)).with_bound("expected", format_q(&want)));
        out.push(match verify_weighting_optimal_with(&st.graph, &st.weights, 30) {
            Ok(c) => c,
            Err(e) => Certificate::skipped("weighting_optimal", e.to_string()),
        });
    } else {
        // The plain weighting is not claimed optimal; report the gap.
        out.push(
            Certificate::pass("lp_optimal_ratio").with_bound("ratio", format_q(&res.ratio)),
        );
    }
    out
}

fn report(cfg: &RunConfig, certs: &[Certificate]) -> Result<ExitCode> {
    let failed = certs.iter().any(|c| c.failed());
    if cfg.json {
        println!("{}", serde_json::to_string_pretty(certs)?);
    } else {
        for c in certs {
            let verdict = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "SKIPPED",
            };
            let bounds: Vec<String> = c.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let mode = if c.check.ends_with("_sampled") { " [sampled]" } else { "" };
            println!("{verdict:<8} {}{mode} {} ({} ms)", c.check, bounds.join(" "), c.millis);
            match (&c.verdict, &c.witness) {
                (Verdict::Skipped, Some(Witness::Note(reason))) => println!("         reason: {reason}"),
                (Verdict::Fail, Some(w)) => println!("         witness: {}", serde_json::to_string(w)?),
                _ => {}
            }
        }
        let count = |v| certs.iter().filter(|c| c.verdict == v).count();
        println!(
            "{} passed, {} failed, {} skipped",
            count(Verdict::Pass),
            count(Verdict::Fail),
            count(Verdict::Skipped)
        );
    }
    if let Some(path) = &cfg.out {
        write(path, &serde_json::to_string_pretty(certs)?)?;
    }
    Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

/// Representation of the selected level, replicated on request, together
/// with its certificate.
fn certified_family(st: &Structure, replicated: bool) -> Result<(SegmentFamily, Certificate)> {
    let f = build_representation(st)?;
    if replicated {
        let r = replicate(&f, &st.graph, &st.weights)?;
        let cert = certify_representation(&r, &blow_up(&st.graph, &st.weights).graph);
        Ok((r, cert))
    } else {
        let cert = certify_representation(&f, &st.graph);
        Ok((f, cert))
    }
}

fn geometry(cfg: &RunConfig, replicated: bool, svg: Option<&Path>) -> Result<ExitCode> {
    let (s, t) = cfg.structures(4)?;
    let st = t.as_ref().unwrap_or(&s);
    let (f, cert) = certified_family(st, replicated)?;
    if let Some(path) = &cfg.out {
        write(path, &serde_json::to_string_pretty(&f.to_json())?)?;
    }
    if let Some(path) = svg {
        write(path, &export_svg(&f))?;
    }
    let bound = pow2_bound(st.k);
    let total = st.weights.total();
    let ratio_bound = num_rational::BigRational::new(bound.clone().into(), total.clone().into());
    if cfg.json {
        let summary = serde_json::json!({
            "k": st.k,
            "tilde": st.tilde,
            "replicated": replicated,
            "segments": f.len(),
            "rectangles": f.rectangles().len(),
            "coordinate_bits": coordinate_bits(&f),
            "independence_bound": bound.to_string(),
            "total_weight": total.to_string(),
            "ratio_bound": format_q(&ratio_bound),
            "certificate": cert,
        });
        println!("{}", serde_json::to_string_pretty(&summary)?);
    } else {
        println!(
            "level {}{}{}: {} segments, {} probe rectangles, {} coordinate bits",
            st.k,
            if st.tilde { " completed" } else { "" },
            if replicated { " replicated" } else { "" },
            f.len(),
            f.rectangles().len(),
            coordinate_bits(&f)
        );
        println!(
            "independent sets weigh at most {bound} of {total}: ratio bound {}",
            format_q(&ratio_bound)
        );
        let verdict = if cert.passed() { "certified" } else { "REJECTED" };
        println!("representation {verdict} ({} ms)", cert.millis);
        if let Some(w) = &cert.witness {
            println!("witness: {}", serde_json::to_string(w)?);
        }
    }
    if !cert.passed() {
        bail!("segment family failed certification");
    }
    Ok(ExitCode::SUCCESS)
}

fn lp(cfg: &RunConfig) -> Result<ExitCode> {
    let (s, t) = cfg.structures(3)?;
    let st = t.as_ref().unwrap_or(&s);
    let res = optimal_weighting_with(&st.graph, 30)?;
    res.verify(&st.graph)?;
    let opt = verify_weighting_optimal_with(&st.graph, &st.weights, 30)?;
    let json = res.to_json();
    if let Some(path) = &cfg.out {
        write(path, &serde_json::to_string_pretty(&json)?)?;
    }
    if cfg.json {
        println!("{}", serde_json::to_string_pretty(&json)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "level {}{}: {} maximal independent sets",
        st.k,
        if st.tilde { " completed" } else { "" },
        res.constraints.len()
    );
    println!("optimal ratio {} (dual certificate verified)", format_q(&res.ratio));
    println!(
        "construction weighting achieves {}: {}",
        opt.bounds["achieved_ratio"],
        if opt.passed() { "optimal" } else { "not optimal" }
    );
    println!("weights: {}", json.weights.join(" "));
    for d in &json.dual {
        println!("dual {} on {:?}", d.multiplier, d.set);
    }
    Ok(ExitCode::SUCCESS)
}

fn ratio_table(cfg: &RunConfig) -> Result<ExitCode> {
    let top = cfg.level(5);
    let mut rows = Vec::new();
    for k in 1..=top {
        for tilde in [false, true] {
            let total = total_weight_formula(k, tilde);
            let bound = pow2_bound(k);
            let formula = q(2, k as i64 + if tilde { 3 } else { 1 });
            // Exact optimum where the search is cheap.
            let measured = if k <= 4 {
                let s = build_structure(k)?;
                let st = if tilde { build_tilde(&s)? } else { s };
                max_weight_independent_set_with(&st.graph, &st.weights, cfg.max_nodes)
                    .ok()
                    .map(|(w, _, _)| w)
            } else {
                None
            };
            rows.push(serde_json::json!({
                "k": k,
                "tilde": tilde,
                "n": total.to_string(),
                "bound": bound.to_string(),
                "ratio": format_q(&formula),
                "measured_max": measured,
            }));
        }
    }
    if cfg.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("{:>3} {:<9} {:>10} {:>10} {:>7} {:>10}", "k", "variant", "n", "bound", "ratio", "measured");
    for r in &rows {
        println!(
            "{:>3} {:<9} {:>10} {:>10} {:>7} {:>10}",
            r["k"],
            if r["tilde"] == true { "completed" } else { "plain" },
            r["n"].as_str().unwrap_or_default(),
            r["bound"].as_str().unwrap_or_default(),
            r["ratio"].as_str().unwrap_or_default(),
            r["measured_max"].as_u64().map_or("-".to_string(), |m| m.to_string()),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn export(cfg: &RunConfig, format: Format, replicated: bool) -> Result<ExitCode> {
    let (s, t) = cfg.structures(3)?;
    let st = t.as_ref().unwrap_or(&s);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&st.to_json())?,
        Format::Dot => st.to_dot(),
        Format::Svg => {
            let (f, cert) = certified_family(st, replicated)?;
            if !cert.passed() {
                bail!("segment family failed certification");
            }
            export_svg(&f)
        }
    };
    match &cfg.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
