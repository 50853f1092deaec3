use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use goppa_core::alternant::feasibility_probe;
use goppa_core::code::{add_words, format_word, parse_word};
use goppa_core::decoder::RootSearch;
use goppa_core::experiment::{
    self, block_configs, seeded_rng, to_csv, TrialReport, BINARY_BLOCKS, TABLE1_BLOCKS,
};
use goppa_core::{Decoder, ErrorPattern, FieldCtx, GeneratorKind, GoppaCode, MagnitudeDist};

#[derive(Parser)]
#[command(
    name = "goppa",
    version,
    about = "Lattice-based decoding of square-free Goppa codes over F_p"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random Goppa code and write it as a code file.
    Gen {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        /// Code length; defaults to q = p^m.
        #[arg(long)]
        n: Option<usize>,
        /// Use a product of distinct irreducibles instead of an irreducible g.
        #[arg(long)]
        square_free: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Print a random codeword.
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Add a random weight-w error to a word.
    Corrupt {
        #[arg(long)]
        code: PathBuf,
        /// Word file, or `-` for stdin.
        #[arg(long)]
        word: PathBuf,
        #[arg(long)]
        w: usize,
        #[arg(long, default_value = "equal-random", value_parser = parse_dist)]
        dist: MagnitudeDist,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Decode a received word and list every verified candidate.
    Decode {
        #[arg(long)]
        code: PathBuf,
        /// Word file, or `-` for stdin.
        #[arg(long)]
        word: PathBuf,
        /// Locate roots by Chien search instead of a support scan.
        #[arg(long)]
        chien: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Reproduce the success-probability table as CSV.
    Table1 {
        /// Blocks `p,m,t` to run (repeatable); all blocks when omitted.
        #[arg(long, value_parser = parse_block)]
        rows: Vec<(u32, usize, usize)>,
        #[command(flatten)]
        exp: ExperimentArgs,
    },
    /// Success rates for w = t, t-1, .. until the model exceeds 0.9999.
    Sweep {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        exp: ExperimentArgs,
    },
    /// Estimate how often the alternant key lattice can be built.
    AlternantProbe {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 20000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(long, short = 'o')]
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "equal-random", value_parser = parse_dist)]
    dist: MagnitudeDist,
    /// Reuse one code for all trials instead of drawing a fresh one each time.
    #[arg(long)]
    fixed_code: bool,
    #[command(flatten)]
    out: Output,
}

fn parse_dist(s: &str) -> Result<MagnitudeDist, String> {
    match s {
        "equal-random" => Ok(MagnitudeDist::EqualRandom),
        "uniform" => Ok(MagnitudeDist::Uniform),
        _ => match s.strip_prefix("equal:") {
            Some(v) => v
                .parse()
                .map(MagnitudeDist::Equal)
                .map_err(|e| format!("{v:?}: {e}")),
            None => Err("expected equal-random, uniform or equal:<v>".into()),
        },
    }
}

fn parse_block(s: &str) -> Result<(u32, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [p, m, t] = parts[..] else {
        return Err(format!("expected p,m,t, got {s:?}"));
    };
    let num = |x: &str| x.parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(p)? as u32, num(m)?, num(t)?))
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_code(path: &Path) -> Result<GoppaCode> {
    Ok(GoppaCode::from_text(&read_input(path)?)?)
}

fn load_word(path: &Path, code: &GoppaCode) -> Result<Vec<u32>> {
    Ok(parse_word(&read_input(path)?, code.n(), code.p())?)
}

fn run_experiments(
    blocks: &[(u32, usize, usize)],
    exp: &ExperimentArgs,
) -> Result<Vec<TrialReport>> {
    let mut configs = Vec::new();
    for &(p, m, t) in blocks {
        for mut cfg in block_configs(p, m, t, exp.trials, exp.seed) {
            cfg.dist = exp.dist.clone();
            cfg.fresh_code_per_trial = !exp.fixed_code;
            configs.push(cfg);
        }
    }
    Ok(experiment::run_all(&configs)?)
}

/// Characteristic-2 rows must succeed in every trial.
fn check_binary(reports: &[TrialReport]) -> bool {
    let mut ok = true;
    for r in reports.iter().filter(|r| r.config.p == 2) {
        if r.successes != r.config.trials {
            eprintln!(
                "binary row {} failed {} of {} trials",
                r.csv_row(),
                r.config.trials - r.successes,
                r.config.trials
            );
            ok = false;
        }
    }
    ok
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Gen {
            p,
            m,
            t,
            n,
            square_free,
            seed,
            out,
        } => {
            let field = FieldCtx::new(p, m, None)?;
            let kind = if square_free {
                GeneratorKind::SquareFree
            } else {
                GeneratorKind::Irreducible
            };
            let n = n.unwrap_or(field.q() as usize);
            let code = GoppaCode::random(&field, t, n, kind, &mut seeded_rng(seed))?;
            out.emit(&code.to_text())?;
        }
        Cmd::Encode { code, seed, out } => {
            let code = load_code(&code)?;
            let c = code.random_codeword(&mut seeded_rng(seed));
            out.emit(&format!("{}\n", format_word(&c)))?;
        }
        Cmd::Corrupt {
            code,
            word,
            w,
            dist,
            seed,
            out,
        } => {
            let code = load_code(&code)?;
            let c = load_word(&word, &code)?;
            let e = ErrorPattern::sample(code.n(), code.p(), w, &dist, &mut seeded_rng(seed))?;
            out.emit(&format!(
                "{}\n",
                format_word(&add_words(&c, e.values(), code.p()))
            ))?;
        }
        Cmd::Decode {
            code,
            word,
            chien,
            out,
        } => {
            let code = load_code(&code)?;
            let received = load_word(&word, &code)?;
            let search = if chien {
                RootSearch::Chien
            } else {
                RootSearch::Scan
            };
            let outcome = Decoder::new(&code)
                .with_root_search(search)
                .decode(&received)?;
            let f = code.field();
            let mut text = format!("candidates {}\n", outcome.candidates.len());
            for (i, c) in outcome.candidates.iter().enumerate() {
                let errors: Vec<String> = c
                    .error
                    .support()
                    .iter()
                    .map(|(j, v)| format!("{j}:{v}"))
                    .collect();
                text.push_str(&format!(
                    "candidate {}\nphi {}\nsigma {}\ncodeword {}\nerrors {}\n",
                    i + 1,
                    c.phi,
                    c.sigma.to_line(f),
                    format_word(&c.codeword),
                    errors.join(" ")
                ));
            }
            out.emit(&text)?;
        }
        Cmd::Table1 { rows, exp } => {
            let blocks: Vec<_> = if rows.is_empty() {
                TABLE1_BLOCKS.iter().chain(BINARY_BLOCKS).copied().collect()
            } else {
                rows
            };
            let reports = run_experiments(&blocks, &exp)?;
            exp.out.emit(&to_csv(&reports, exp.seed))?;
            return Ok(check_binary(&reports));
        }
        Cmd::Sweep { p, m, t, exp } => {
            let reports = run_experiments(&[(p, m, t)], &exp)?;
            exp.out.emit(&to_csv(&reports, exp.seed))?;
            return Ok(check_binary(&reports));
        }
        Cmd::AlternantProbe {
            p,
            m,
            r,
            trials,
            seed,
            out,
        } => {
            let report = feasibility_probe(p, m, r, trials, seed)?;
            out.emit(&format!("{}\n", report.line()))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_and_block_parsing() {
        assert_eq!(parse_dist("uniform"), Ok(MagnitudeDist::Uniform));
        assert_eq!(parse_dist("equal:2"), Ok(MagnitudeDist::Equal(2)));
        assert!(parse_dist("skewed").is_err());
        assert_eq!(parse_block("3,3,8"), Ok((3, 3, 8)));
        assert!(parse_block("3,3").is_err());
    }
}
