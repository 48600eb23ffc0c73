//! Command-line front end: simulate, render, validate, stats.

use std::collections::BTreeSet;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use heptatri::engine::{self, CellState, Configuration, InitId, RunOptions, StepStats};
use heptatri::render::{render, RenderOptions};
use heptatri::rules::{self, RuleId};
use heptatri::snapshot;
use heptatri::tree::SectorTree;
use heptatri::tri::{self, TriCoord};
use heptatri::validate;

#[derive(Parser)]
#[command(name = "heptatri", version, about = "Cellular automata on the heptatrigrid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    #[value(name = "two-state")]
    TwoState,
    #[value(name = "four-v1")]
    FourV1,
    #[value(name = "four-v2")]
    FourV2,
}

impl From<RuleArg> for RuleId {
    fn from(r: RuleArg) -> RuleId {
        match r {
            RuleArg::TwoState => RuleId::TwoState,
            RuleArg::FourV1 => RuleId::FourV1,
            RuleArg::FourV2 => RuleId::FourV2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    #[value(name = "core2")]
    Core2,
    #[value(name = "hepta-core")]
    HeptaCore,
}

impl From<InitArg> for InitId {
    fn from(i: InitArg) -> InitId {
        match i {
            InitArg::Core2 => InitId::Core2,
            InitArg::HeptaCore => InitId::HeptaCore,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    On,
    Off,
}

#[derive(Args)]
struct RunArgs {
    /// Transition rule.
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// Initial configuration.
    #[arg(long, value_enum)]
    init: InitArg,
    /// Number of synchronous steps.
    #[arg(long)]
    steps: u64,
    /// Hard budget on materialized cells.
    #[arg(long, default_value_t = 10_000_000)]
    max_cells: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run a rule and write the final configuration as a CSV snapshot.
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        /// Output snapshot path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a snapshot to SVG.
    Render {
        /// Input snapshot path.
        #[arg(long)]
        snapshot: PathBuf,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
        /// Heptagon tree depth to draw.
        #[arg(long, default_value_t = 5)]
        levels: u32,
        /// Draw the grid outlines or only the fills.
        #[arg(long, value_enum, default_value_t = GridArg::On)]
        grid: GridArg,
        /// Image width and height in pixels.
        #[arg(long, default_value_t = 1000)]
        size: u32,
    },
    /// Run the invariant suites and report pass/fail per suite.
    Validate {
        /// Heptagon tree depth checked by the suites.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=5))]
        levels: u32,
    },
    /// Run a rule and print per-step population counts as CSV.
    Stats {
        #[command(flatten)]
        run: RunArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Simulate { run, out } => simulate(&run, &out),
        Command::Render { snapshot, out, levels, grid, size } => {
            render_cmd(&snapshot, &out, levels, matches!(grid, GridArg::On), size)
        }
        Command::Validate { levels } => validate_cmd(levels),
        Command::Stats { run } => stats_cmd(&run),
    }
}

fn run_rule(args: &RunArgs) -> Result<(Configuration, Vec<StepStats>)> {
    let tree = SectorTree::new();
    let init = engine::init_config(args.init.into());
    let rule = rules::rule(args.rule.into());
    let opts = RunOptions { max_cells: args.max_cells };
    engine::run(&tree, init, rule, args.steps, opts).context("simulation failed")
}

fn simulate(args: &RunArgs, out: &Path) -> Result<ExitCode> {
    let (cfg, _) = run_rule(args)?;
    let text = snapshot::write_snapshot(&cfg)?;
    // Write via a sibling temp file so an interrupted write never leaves
    // a partial snapshot at the target path.
    let tmp = out.with_extension("tmp");
    let write = (|| -> std::io::Result<()> {
        std::fs::write(&tmp, &text)?;
        std::fs::rename(&tmp, out)
    })();
    if let Err(err) = write {
        let _ = std::fs::remove_file(&tmp);
        return Err(err).context(format!("writing {}", out.display()));
    }
    eprintln!(
        "wrote {} ({} cells at step {})",
        out.display(),
        cfg.colored_count(),
        cfg.step()
    );
    Ok(ExitCode::SUCCESS)
}

fn render_cmd(snapshot_path: &Path, out: &Path, levels: u32, grid: bool, size: u32) -> Result<ExitCode> {
    let text = std::fs::read_to_string(snapshot_path)
        .with_context(|| format!("reading {}", snapshot_path.display()))?;
    let cfg = snapshot::read_snapshot(&text)
        .with_context(|| format!("parsing {}", snapshot_path.display()))?;
    let tree = SectorTree::new();
    let opts = RenderOptions {
        levels,
        grid,
        size_px: size,
        ..Default::default()
    };
    let output = render(&tree, &cfg, &opts)?;
    std::fs::write(out, &output.svg).with_context(|| format!("writing {}", out.display()))?;
    if output.cells_omitted > 0 {
        eprintln!(
            "warning: {} colored cells beyond level {} omitted",
            output.cells_omitted, levels
        );
    }
    eprintln!("wrote {} ({} cells drawn)", out.display(), output.cells_drawn);
    Ok(ExitCode::SUCCESS)
}

fn validate_cmd(levels: u32) -> Result<ExitCode> {
    let tree = SectorTree::new();
    let reports = validate::run_all(&tree, levels);
    let mut all_passed = true;
    for report in &reports {
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {}: {}", report.name, report.details);
        all_passed &= report.passed;
    }
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn stats_cmd(args: &RunArgs) -> Result<ExitCode> {
    let (final_cfg, stats) = run_rule(args)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "step,w,b,r,y,v,new")?;
    for s in &stats {
        let count = |c: CellState| s.counts.get(&c).copied().unwrap_or(0);
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.step,
            s.boundary_white,
            count(CellState::B),
            count(CellState::R),
            count(CellState::Y),
            count(CellState::V),
            s.newly_colored
        )?;
    }
    drop(out);

    let rule: RuleId = args.rule.into();
    match rule {
        RuleId::FourV1 => residue_comparison(args, &final_cfg)?,
        RuleId::FourV2 => colony_shape_report(&final_cfg)?,
        RuleId::TwoState => {}
    }
    Ok(ExitCode::SUCCESS)
}

/// Compares the cells left white by four-v1 from the heptagonal core with
/// those of two-state from core2, two steps ahead (core2 needs two steps
/// to fill the central heptagon). Reported, not asserted.
fn residue_comparison(args: &RunArgs, v1_final: &Configuration) -> Result<()> {
    let tree = SectorTree::new();
    let opts = RunOptions { max_cells: args.max_cells };
    let (two_state, _) = engine::run(
        &tree,
        engine::init_config(InitId::Core2),
        rules::rule(RuleId::TwoState),
        args.steps + 2,
        opts,
    )
    .context("two-state reference run failed")?;
    let outside = |c: &Configuration| -> BTreeSet<TriCoord> {
        c.iter()
            .map(|(t, _)| *t)
            .filter(|t| !t.hepta.is_central())
            .collect()
    };
    let a = outside(v1_final);
    let b = outside(&two_state);
    let diff = a.symmetric_difference(&b).count();
    eprintln!(
        "# white-residue comparison outside the core: four-v1@{} colored {}, two-state@{} colored {}, symmetric difference {}",
        args.steps,
        a.len(),
        args.steps + 2,
        b.len(),
        diff
    );
    Ok(())
}

/// Connected components of the four-v2 colony outside the core, plus how
/// many colonized heptagons feed both of their side-4 and side-5 sons.
fn colony_shape_report(cfg: &Configuration) -> Result<()> {
    let tree = SectorTree::new();
    let colored: BTreeSet<TriCoord> = cfg
        .iter()
        .map(|(t, _)| *t)
        .filter(|t| !t.hepta.is_central())
        .collect();
    let mut seen: BTreeSet<TriCoord> = BTreeSet::new();
    let mut components = 0u64;
    for &start in &colored {
        if seen.contains(&start) {
            continue;
        }
        components += 1;
        let mut queue = vec![start];
        while let Some(t) = queue.pop() {
            if !seen.insert(t) {
                continue;
            }
            for n in tri::neighbors(&tree, t) {
                if colored.contains(&n) && !seen.contains(&n) {
                    queue.push(n);
                }
            }
        }
    }
    let heptagons: BTreeSet<_> = colored.iter().map(|t| t.hepta).collect();
    let mut branching = 0u64;
    for &h in &heptagons {
        let sons_fed = [4u8, 5]
            .iter()
            .filter(|&&side| {
                let (k, _) =
                    heptatri::hepta::neighbor(&tree, h, heptatri::hepta::SideId::new(side).unwrap());
                heptagons.contains(&k)
            })
            .count();
        if sons_fed == 2 {
            branching += 1;
        }
    }
    eprintln!(
        "# four-v2 colony outside the core: {} connected components, {} heptagons, {} heptagons feeding both son branches",
        components,
        heptagons.len(),
        branching
    );
    Ok(())
}
