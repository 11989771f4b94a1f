// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperlrc::construct::LocalCode;
use hyperlrc::io::{self, PlanFile, RunConfig};
use hyperlrc::tables::{self, TableId, Target};
use hyperlrc::verify::{self, Budget, Strategy, Verdict, VerifyOptions, VerifyReport};
use hyperlrc::{Error, Result};

#[derive(Parser)]
#[command(name = "hyperlrc", version, about = "Locally repairable codes from genus-2 curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code and write its generator matrix, groups and plan.
    Construct(ConstructArgs),
    /// Verify a code read from a matrix file and a groups file.
    Verify(VerifyArgs),
    /// Verify every admissible (ell, t) of a construction.
    Sweep(SweepArgs),
    /// Rebuild and verify a reference table (III, IV, V, VI, VII or all).
    Tables(TablesArgs),
    /// Erase-and-repair every coordinate of random codewords.
    RepairSim(RepairArgs),
}

#[derive(Args, Clone, Default)]
struct SpecArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Field: `q`, `p^m` or `p^m:c0,c1,..,cm`.
    #[arg(long)]
    field: Option<String>,
    /// Curve polynomial in x, e.g. `x5+x3+2x` or `x^6+x^3+2`.
    #[arg(long)]
    curve: Option<String>,
    /// Generator words, comma separated (e.g. `U` or `(UV)^2`).
    #[arg(long)]
    subgroup: Option<String>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Append the rescaled pole fiber (odd locality).
    #[arg(long)]
    extended: bool,
    /// Even construction: `4t+1`, `4t+2` or `2t+1`.
    #[arg(long)]
    variant: Option<String>,
}

#[derive(Args, Clone)]
struct CheckArgs {
    /// Distance strategy: auto, support or exhaustive.
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Work limits `N` (both searches) or `SUPPORT,EXHAUSTIVE`.
    #[arg(long)]
    budget: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random codewords for the repair simulation.
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Output directory for generator.csv, groups.txt and plan.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    groups: PathBuf,
    /// Plan record supplying the designed distance.
    #[arg(long)]
    plan: Option<PathBuf>,
    #[command(flatten)]
    check: CheckArgs,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[command(flatten)]
    check: CheckArgs,
    /// Inclusive ell range `a..b`.
    #[arg(long)]
    ell_range: Option<String>,
    /// Inclusive t range `a..b`.
    #[arg(long)]
    t_range: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    /// III, IV, V, VI, VII or all.
    table: String,
    #[command(flatten)]
    check: CheckArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RepairArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    groups: PathBuf,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn parse_budget(s: &str) -> Result<Budget> {
    let nums: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().replace('_', "").parse::<f64>().map(|v| v as u64))
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Config(format!("bad budget {s:?}")))?;
    match nums.as_slice() {
        [n] => Ok(Budget { support: *n, exhaustive: *n }),
        [a, b] => Ok(Budget { support: *a, exhaustive: *b }),
        _ => Err(Error::Config(format!("bad budget {s:?}"))),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("bad range {s:?}, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn options(c: &CheckArgs, cfg: Option<&RunConfig>) -> Result<VerifyOptions> {
    let mut strategy = Strategy::parse(&c.strategy)?;
    let mut budget = Budget::default();
    let mut seed = c.seed;
    if let Some(cfg) = cfg {
        strategy = cfg.strategy.unwrap_or(strategy);
        budget = cfg.budget.unwrap_or(budget);
        seed = cfg.seed.unwrap_or(seed);
    }
    if let Some(b) = &c.budget {
        budget = parse_budget(b)?;
    }
    Ok(VerifyOptions { strategy, budget, repair_trials: c.trials, seed })
}

fn config(spec: &SpecArgs) -> Result<RunConfig> {
    let mut cfg = match &spec.config {
        Some(p) => RunConfig::from_json(&io::read_to_string(p)?)?,
        None => RunConfig::default(),
    };
    if let Some(v) = &spec.field {
        cfg.field = v.clone();
    }
    if let Some(v) = &spec.curve {
        cfg.curve = v.clone();
    }
    if spec.subgroup.is_some() {
        cfg.subgroup = spec.subgroup.clone();
    }
    cfg.ell = spec.ell.or(cfg.ell);
    cfg.t = spec.t.or(cfg.t);
    cfg.extended |= spec.extended;
    if spec.variant.is_some() {
        cfg.variant = spec.variant.clone();
    }
    if cfg.field.is_empty() || cfg.curve.is_empty() {
        return Err(Error::Config("--field and --curve are required".into()));
    }
    Ok(cfg)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn show_report(rep: &VerifyReport) -> String {
    let d = rep.d_exact.map_or("-".to_string(), |d| d.to_string());
    let lower = rep.d_lower.map_or("-".to_string(), |d| d.to_string());
    let delta = match (rep.defect, rep.defect_bound) {
        (Some(x), _) => x.to_string(),
        (None, Some(b)) => format!("<={b}"),
        _ => "-".into(),
    };
    let repair = rep.repair.as_ref().map_or("-".to_string(), |s| format!("{}/{}", s.exact, s.attempts));
    format!(
        "[{}, {}, {}] r={} rank={} d_lower={} bound={} delta={} locality={} repair={} verdict={}",
        rep.n,
        rep.k,
        d,
        rep.r,
        rep.rank,
        lower,
        rep.singleton_bound,
        delta,
        if rep.locality_ok { "ok" } else { "FAIL" },
        repair,
        rep.verdict.name()
    )
}

fn verdict_code(v: Verdict) -> ExitCode {
    match v {
        Verdict::Optimal | Verdict::AlmostOptimal => ExitCode::SUCCESS,
        Verdict::BoundOnly => ExitCode::from(2),
        Verdict::Rejected => ExitCode::from(1),
    }
}

fn construct(a: ConstructArgs) -> Result<ExitCode> {
    let cfg = config(&a.spec)?;
    let code = io::build_from(&cfg)?;
    let out = a.out.or(cfg.out.as_ref().map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out)?;
    write(&out.join("generator.csv"), &io::matrix_to_csv(&code.field, &code.generator))?;
    write(&out.join("groups.txt"), &io::groups_to_text(&code.groups))?;
    if let Some(plan) = PlanFile::of(&code) {
        write(&out.join("plan.json"), &(serde_json::to_string_pretty(&plan).map_err(Error::from)? + "\n"))?;
    }
    println!(
        "[{}, {}] r={} d_lower={} -> {}",
        code.n(),
        code.k(),
        code.r,
        code.d_lower.map_or("-".into(), |d| d.to_string()),
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn load(matrix: &Path, groups: &Path, plan: Option<&Path>) -> Result<LocalCode> {
    let mut code = io::load_code(&io::read_to_string(matrix)?, &io::read_to_string(groups)?)?;
    if let Some(p) = plan {
        let plan: PlanFile = serde_json::from_str(&io::read_to_string(p)?)?;
        if plan.groups != code.groups {
            return Err(Error::Config("plan groups differ from the groups file".into()));
        }
        code.d_lower = Some(plan.plan.d_lower);
        code.r = plan.plan.r;
        code.tail = plan.tail;
    }
    Ok(code)
}

fn verify_cmd(a: VerifyArgs) -> Result<ExitCode> {
    let code = load(&a.matrix, &a.groups, a.plan.as_deref())?;
    let rep = verify::verify(&code, &options(&a.check, None)?);
    eprintln!("{}", show_report(&rep));
    if let Some(n) = &rep.note {
        eprintln!("note: {n}");
    }
    let json = io::to_json(&rep)? + "\n";
    match &a.out {
        Some(p) => write(p, &json)?,
        None => print!("{json}"),
    }
    Ok(verdict_code(rep.verdict))
}

fn sweep_cmd(a: SweepArgs) -> Result<ExitCode> {
    let cfg = config(&a.spec)?;
    let opts = options(&a.check, Some(&cfg))?;
    let target: Target = io::target_from(&cfg)?;
    let ells = match &a.ell_range {
        Some(s) => Some(parse_range(s)?),
        None => cfg.sweep_ell.map(|r| (r.from, r.to)).or(cfg.ell.map(|e| (e, e))),
    };
    let ts = match &a.t_range {
        Some(s) => Some(parse_range(s)?),
        None => cfg.sweep_t.map(|r| (r.from, r.to)).or(cfg.t.map(|t| (t, t))),
    };
    let points = tables::sweep(&target, ells, ts, &opts);
    let mut bad = false;
    println!("{}", target.label());
    for p in &points {
        match (&p.report, &p.error) {
            (Some(rep), _) => {
                bad |= rep.verdict == Verdict::Rejected;
                println!("  ell={:<3} t={:<3} {}", p.ell, p.t, show_report(rep));
            }
            (None, Some(e)) => println!("  ell={:<3} t={:<3} error: {e}", p.ell, p.t),
            _ => {}
        }
    }
    if let Some(out) = &a.out {
        write(out, &(io::to_json(&serde_json::json!({ "target": target.label(), "points": points }))? + "\n"))?;
    }
    Ok(if bad { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn tables_cmd(a: TablesArgs) -> Result<ExitCode> {
    let ids: Vec<TableId> = if a.table.eq_ignore_ascii_case("all") {
        TableId::ALL.to_vec()
    } else {
        vec![TableId::parse(&a.table)?]
    };
    let opts = options(&a.check, None)?;
    let mut all = Vec::new();
    let mut mismatches = 0;
    for id in ids {
        let rows = tables::run(id, &opts)?;
        println!("Table {}", id.name());
        for row in &rows {
            let range = match row.range_matches {
                Some(true) => format!(" groups<={} ok", row.build.ell_max),
                Some(false) => format!(" groups<={} (table {})", row.build.ell_max, row.claim.ell_max.unwrap_or(0)),
                None => String::new(),
            };
            println!(
                "  {:<22} {}{} {}",
                row.claim.label(),
                show_report(&row.report),
                range,
                if row.matches { "MATCH" } else { "DIFF" }
            );
            if !row.matches {
                mismatches += 1;
            }
        }
        all.push(serde_json::json!({ "table": id.name(), "rows": rows }));
    }
    println!("{mismatches} row(s) differ from the claimed parameters");
    if let Some(out) = &a.out {
        write(out, &(io::to_json(&serde_json::json!({ "tables": all }))? + "\n"))?;
    }
    Ok(if mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn repair_cmd(a: RepairArgs) -> Result<ExitCode> {
    let code = load(&a.matrix, &a.groups, None)?;
    if !verify::locality_ok(&code) {
        println!("locality check failed");
        return Ok(ExitCode::from(1));
    }
    let st = verify::repair_simulation(&code, a.trials, a.seed);
    println!("{}", io::to_json(&st)?);
    Ok(if st.mismatches == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn init_threads() {
    if let Some(n) = std::env::var("HYPERLRC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Construct(a) => construct(a),
        Cmd::Verify(a) => verify_cmd(a),
        Cmd::Sweep(a) => sweep_cmd(a),
        Cmd::Tables(a) => tables_cmd(a),
        Cmd::RepairSim(a) => repair_cmd(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.kind());
            ExitCode::from(1)
        }
    }
}
