use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use toponet::geometry::{gen_dataset, write_csv, DatasetKind, DatasetSpec};
use toponet::nn::Checkpoint;
use toponet::pipeline::{
    betti_progression, emit_plot, emit_report, load_report, render_text, ClassSelection, ExperimentConfig, ExperimentReport,
    PlotKind, RunStatus, Runner,
};
use toponet::{Error, Result};

#[derive(Parser)]
#[command(name = "toponet", version, about = "Topology of hidden-layer representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment config (TOML).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra seed, appended to the config's list. Repeatable.
    #[arg(long = "seed")]
    seeds: Vec<u64>,
    /// Output directory.
    #[arg(long, env = "TOPONET_OUT", default_value = "toponet-out")]
    out: PathBuf,
    /// Classes to analyze or print: a, b or both.
    #[arg(long, value_parser = parse_class)]
    class: Option<ClassSelection>,
    /// No progress output.
    #[arg(long)]
    quiet: bool,
}

fn parse_class(s: &str) -> std::result::Result<ClassSelection, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Write the dataset of every seed as CSV.
    Generate {
        #[command(flatten)]
        common: Common,
        /// Dataset kind when no config is given: I, II, III or annulus-cluster.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Train one network per seed; writes checkpoints and history CSVs.
    Train {
        #[command(flatten)]
        common: Common,
    },
    /// Train (or load) and run the per-layer topology; writes report.json.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Analyze this trained model instead of training.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Render SVG plots of a report.
    Plot {
        #[command(flatten)]
        common: Common,
        /// Report to plot; defaults to <out>/report.json.
        #[arg(long)]
        report: Option<PathBuf>,
        /// betti-vs-layer, betti<q>-vs-layer, complexity-vs-layer or accuracy-vs-epoch; all when absent.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Print a report as text tables.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print only this Betti number's progression.
        #[arg(long)]
        dim: Option<usize>,
    },
}

struct Ctx {
    out: PathBuf,
    quiet: bool,
}

impl Ctx {
    fn new(common: &Common) -> Result<Self> {
        std::fs::create_dir_all(&common.out)?;
        Ok(Ctx {
            out: common.out.clone(),
            quiet: common.quiet,
        })
    }

    fn say(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }
}

fn load_config(common: &Common) -> Result<(ExperimentConfig, PathBuf)> {
    let path = common
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config is required".into()))?;
    let mut cfg = ExperimentConfig::load(path)?;
    cfg.add_seeds(&common.seeds);
    if let Some(c) = common.class {
        cfg.topology.classes = c;
    }
    let base = path.parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf);
    Ok((cfg, base))
}

fn generate(common: &Common, kind: Option<String>, points: Option<usize>) -> Result<()> {
    let ctx = Ctx::new(common)?;
    let specs: Vec<DatasetSpec> = match (&common.config, kind) {
        (Some(_), _) => {
            let (cfg, _) = load_config(common)?;
            cfg.run.seeds.iter().map(|&s| cfg.dataset.spec(s)).collect::<Result<_>>()?
        }
        (None, Some(kind)) => {
            let kind: DatasetKind = kind.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
            let seeds = if common.seeds.is_empty() { vec![1] } else { common.seeds.clone() };
            seeds
                .into_iter()
                .map(|s| {
                    let spec = DatasetSpec::new(kind, s);
                    match points {
                        Some(n) => spec.with_points(n),
                        None => spec,
                    }
                })
                .collect()
        }
        (None, None) => return Err(Error::Config("generate needs --config or --kind".into())),
    };
    for mut spec in specs {
        if let Some(n) = points {
            spec.points_per_class = n;
        }
        let cloud = gen_dataset(&spec)?;
        let path = ctx.path(&format!("dataset_{}_seed{}.csv", spec.kind.name(), spec.seed));
        write_csv(&cloud, &path, b',', true)?;
        ctx.say(&format!("wrote {} ({} points)", path.display(), cloud.len()));
    }
    Ok(())
}

fn train_cmd(common: &Common) -> Result<()> {
    let ctx = Ctx::new(common)?;
    let (cfg, base) = load_config(common)?;
    let say = |m: &str| ctx.say(m);
    let runner = Runner::new(&cfg, &base, &say);
    for &seed in &cfg.run.seeds {
        let t = runner.train_seed(seed)?;
        let ck = Checkpoint {
            model: t.model,
            seed,
            epochs: t.history.len(),
        };
        ck.save(ctx.path(&format!("model_seed{seed}.json")))?;
        t.history.write_csv(std::fs::File::create(ctx.path(&format!("history_seed{seed}.csv")))?)?;
        println!(
            "seed {seed}: {} epochs, train {:.4}, test {:.4}, gap {:.4}",
            ck.epochs, t.train_accuracy, t.test_accuracy, t.generalization_gap
        );
    }
    Ok(())
}

fn analyze(common: &Common, checkpoint: Option<PathBuf>) -> Result<()> {
    let ctx = Ctx::new(common)?;
    let (cfg, base) = load_config(common)?;
    let say = |m: &str| ctx.say(m);
    let runner = Runner::new(&cfg, &base, &say);
    let report = match checkpoint {
        Some(path) => runner.run_checkpoint(&Checkpoint::load(path)?)?,
        None => runner.run()?,
    };
    let path = ctx.path("report.json");
    emit_report(&report, &path)?;
    if report.status == RunStatus::Partial {
        eprintln!("warning: {} of {} seeds failed", report.failures.len(), report.failures.len() + report.seeds.len());
    }
    ctx.say(&format!("wrote {}", path.display()));
    Ok(())
}

fn read_report(ctx: &Ctx, path: Option<PathBuf>) -> Result<ExperimentReport> {
    load_report(path.unwrap_or_else(|| ctx.path("report.json")))
}

fn plot(common: &Common, report: Option<PathBuf>, kind: Option<String>) -> Result<()> {
    let ctx = Ctx::new(common)?;
    let report = read_report(&ctx, report)?;
    let kinds = match kind {
        Some(k) => vec![k.parse::<PlotKind>().map_err(|e| Error::Config(e.to_string()))?],
        None => {
            let dims = report.aggregates.first().and_then(|a| a.betti_mean.first()).map_or(1, Vec::len);
            let mut v: Vec<PlotKind> = (0..dims).map(|dim| PlotKind::BettiVsLayer { dim }).collect();
            v.push(PlotKind::ComplexityVsLayer);
            if report.seeds.iter().any(|s| !s.history.is_empty()) {
                v.push(PlotKind::AccuracyVsEpoch);
            }
            v
        }
    };
    for k in kinds {
        let path = ctx.path(&format!("{}.svg", k.file_stem()));
        emit_plot(&report, k, &path)?;
        ctx.say(&format!("wrote {}", path.display()));
    }
    Ok(())
}

fn report_cmd(common: &Common, report: Option<PathBuf>, dim: Option<usize>) -> Result<()> {
    let ctx = Ctx::new(common)?;
    let report = read_report(&ctx, report)?;
    let classes = match common.class {
        Some(c) => c.classes(),
        None => report.classes.clone(),
    };
    match dim {
        Some(q) => {
            for c in classes {
                println!("class {c}, β{q} by layer:");
                print!("{}", betti_progression(&report, c, Some(q))?);
            }
        }
        None => print!("{}", render_text(&report, &classes)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Generate { common, kind, points } => generate(&common, kind, points),
        Command::Train { common } => train_cmd(&common),
        Command::Analyze { common, checkpoint } => analyze(&common, checkpoint),
        Command::Plot { common, report, kind } => plot(&common, report, kind),
        Command::Report { common, report, dim } => report_cmd(&common, report, dim),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
