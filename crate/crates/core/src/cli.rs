//! The `supercat` command line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::bijections::{trace, Bijection};
use crate::error::{domain, Error, Result};
use crate::identities::{write_csv, Bounds, Status, Suite, VerificationReport};
use crate::paths::{
    enumerate, enumerate_sharded, gen_fun_sharded, parse_path, FamilySpec, LatticePath, Statistic,
};
use crate::qpoly::{ballot_q, super_catalan_q, super_catalan_t_q, QPoly};
use crate::render::{render_family, render_path, render_trace};

#[derive(Debug, Parser)]
#[command(
    name = "supercat",
    version,
    about = "Super Catalan numbers, q-analogs and lattice path bijections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate S, T, S_q, T_q or B_q over parameter ranges.
    ///
    /// Ranges are `a..b` (inclusive) or a single value, given positionally
    /// or as `m=..`, `n=..` (`n=..`, `r=..` for Bq).
    Table {
        #[arg(ignore_case = true)]
        kind: TableKind,
        ranges: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite. Exits 1 if any check fails.
    Verify {
        suite: Suite,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        m_max: Option<u32>,
        /// Bound on m + n for the reflection check and the coefficient scans.
        #[arg(long)]
        sum_max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List a path family, e.g. `catalan:3`, `ballot:4,2`, `omega:5`.
    Enumerate {
        family: FamilySpec,
        /// Print statistics next to each path.
        #[arg(long)]
        stats: bool,
        /// Print the generating function of a statistic (`maj` or `maj-des`)
        /// instead of the paths.
        #[arg(long, value_name = "STAT")]
        genfun: Option<Statistic>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Split the enumeration into this many prefix shards.
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Apply psi, phi, f, g or an inverse to a path.
    Biject {
        name: Bijection,
        path: String,
        /// Print the full trace as JSON.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw a path, a bijection trace, or a small family as SVG.
    Render {
        /// A path (`0101`, `udud`) or a family (`catalan:3`).
        target: String,
        /// Draw the trace of this bijection applied to the path.
        #[arg(long, value_name = "BIJECTION")]
        trace: Option<Bijection>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    #[value(name = "S")]
    S,
    #[value(name = "T")]
    T,
    #[value(name = "Sq")]
    Sq,
    #[value(name = "Tq")]
    Tq,
    #[value(name = "Bq")]
    Bq,
}

impl TableKind {
    fn name(self) -> &'static str {
        match self {
            TableKind::S => "S",
            TableKind::T => "T",
            TableKind::Sq => "Sq",
            TableKind::Tq => "Tq",
            TableKind::Bq => "Bq",
        }
    }

    fn axes(self) -> [&'static str; 2] {
        match self {
            TableKind::Bq => ["n", "r"],
            _ => ["m", "n"],
        }
    }

    fn is_integer(self) -> bool {
        matches!(self, TableKind::S | TableKind::T)
    }

    fn value(self, a: u32, b: u32) -> Result<QPoly> {
        match self {
            TableKind::S | TableKind::Sq => super_catalan_q(a, b),
            TableKind::T | TableKind::Tq => super_catalan_t_q(a, b),
            TableKind::Bq => ballot_q(a, b),
        }
    }
}

/// Exit status for an error: 1 for a broken invariant, 2 for anything the
/// caller got wrong.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvariantViolation(_) => 1,
        _ => 2,
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("supercat: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Runs one command and returns its exit status.
pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Table {
            kind,
            ranges,
            format,
            out,
        } => {
            let cells = table(kind, &ranges)?;
            let mut w = sink(&out)?;
            write_table(kind, &cells, format, &mut w)?;
            w.flush()?;
            Ok(0)
        }
        Command::Verify {
            suite,
            n_max,
            m_max,
            sum_max,
            format,
            out,
        } => {
            let bounds = Bounds::default().with_overrides(n_max, m_max, sum_max);
            let mut w = sink(&out)?;
            verify(suite, &bounds, format, &mut w)
        }
        Command::Enumerate {
            family,
            stats,
            genfun,
            format,
            out,
            shards,
        } => {
            let mut w = sink(&out)?;
            match genfun {
                Some(stat) => write_genfun(family, stat, shards, format, &mut w)?,
                None => write_listing(family, stats, shards, format, &mut w)?,
            }
            w.flush()?;
            Ok(0)
        }
        Command::Biject {
            name,
            path,
            trace: with_trace,
            format,
        } => {
            let p = parse_path(&path)?;
            let t = trace(name, &p)?;
            let mut w = sink(&None)?;
            if with_trace {
                serde_json::to_writer_pretty(&mut w, &t)?;
                writeln!(w)?;
            } else {
                match format {
                    Format::Json => {
                        writeln!(w, "{}", json!({"input": t.input, "output": t.output}))?
                    }
                    Format::Csv => writeln!(w, "input,output\n{},{}", t.input, t.output)?,
                    Format::Text => writeln!(w, "{}", t.output)?,
                }
            }
            w.flush()?;
            Ok(0)
        }
        Command::Render {
            target,
            trace: bijection,
            out,
        } => {
            let svg = if target.contains(':') {
                if bijection.is_some() {
                    return Err(domain("--trace needs a single path, not a family"));
                }
                render_family(target.parse()?)?
            } else {
                let p = parse_path(&target)?;
                match bijection {
                    Some(b) => render_trace(&trace(b, &p)?),
                    None => render_path(&p),
                }
            };
            let mut w = sink(&out)?;
            w.write_all(svg.as_bytes())?;
            w.flush()?;
            Ok(0)
        }
    }
}

fn verify(suite: Suite, bounds: &Bounds, format: Format, w: &mut dyn Write) -> Result<u8> {
    let parts: Vec<Suite> = if suite == Suite::All {
        Suite::ALL[1..].to_vec()
    } else {
        vec![suite]
    };
    let mut all: Vec<VerificationReport> = Vec::new();
    for part in parts {
        let reports = part.run(bounds);
        match format {
            Format::Text => {
                for r in &reports {
                    writeln!(w, "{r}")?;
                }
            }
            Format::Json => {
                for r in &reports {
                    serde_json::to_writer(&mut *w, r)?;
                    writeln!(w)?;
                }
            }
            Format::Csv => {}
        }
        w.flush()?;
        all.extend(reports);
    }
    let count = |s: Status| all.iter().filter(|r| r.status == s).count();
    let failed = count(Status::Fail);
    match format {
        Format::Csv => write_csv(&all, &mut *w)?,
        Format::Text => writeln!(
            w,
            "{} passed, {} failed, {} reported",
            count(Status::Pass),
            failed,
            count(Status::Reported)
        )?,
        Format::Json => {}
    }
    w.flush()?;
    Ok(if failed > 0 { 1 } else { 0 })
}

fn parse_range(text: &str) -> Result<(u32, u32)> {
    let bad = || {
        Error::Syntax(format!(
            "bad range {text:?}: expected `a`, `a..b` or `a..=b`"
        ))
    };
    let num = |s: &str| s.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

struct Cell {
    a: u32,
    b: u32,
    value: QPoly,
}

fn table(kind: TableKind, args: &[String]) -> Result<Vec<Cell>> {
    let axes = kind.axes();
    let mut ranges: [Option<(u32, u32)>; 2] = [None, None];
    let mut next = 0;
    for arg in args {
        let (slot, text) = match arg.split_once('=') {
            Some((name, text)) => {
                let slot = axes.iter().position(|a| *a == name.trim()).ok_or_else(|| {
                    Error::Syntax(format!(
                        "{} takes {} and {}, not {name:?}",
                        kind.name(),
                        axes[0],
                        axes[1]
                    ))
                })?;
                (slot, text)
            }
            None => {
                while next < 2 && ranges[next].is_some() {
                    next += 1;
                }
                if next == 2 {
                    return Err(Error::Syntax(format!("too many ranges: {arg:?}")));
                }
                (next, arg.as_str())
            }
        };
        ranges[slot] = Some(parse_range(text)?);
    }

    let mut cells = Vec::new();
    match kind {
        TableKind::Bq => {
            let (n0, n1) = ranges[0].unwrap_or((1, 5));
            if n0 == 0 {
                return Err(domain("Bq needs n >= 1"));
            }
            if let Some((r0, r1)) = ranges[1] {
                if r0 == 0 || r1 > n1 {
                    return Err(domain(format!(
                        "Bq needs 1 <= r <= n, got r in {r0}..{r1} with n <= {n1}"
                    )));
                }
            }
            for n in n0..=n1 {
                let (r0, r1) = ranges[1].unwrap_or((1, n));
                for r in r0..=r1.min(n) {
                    cells.push(Cell {
                        a: n,
                        b: r,
                        value: kind.value(n, r)?,
                    });
                }
            }
        }
        _ => {
            let n_default = if matches!(kind, TableKind::T | TableKind::Tq) {
                1
            } else {
                0
            };
            let (m0, m1) = ranges[0].unwrap_or((0, 4));
            let (n0, n1) = ranges[1].unwrap_or((n_default, 4));
            for m in m0..=m1 {
                for n in n0..=n1 {
                    cells.push(Cell {
                        a: m,
                        b: n,
                        value: kind.value(m, n)?,
                    });
                }
            }
        }
    }
    Ok(cells)
}

fn cell_text(kind: TableKind, c: &Cell) -> String {
    if kind.is_integer() {
        c.value.eval_at_one().to_string()
    } else {
        c.value.to_string()
    }
}

fn write_table(kind: TableKind, cells: &[Cell], format: Format, w: &mut dyn Write) -> Result<()> {
    let [x, y] = kind.axes();
    match format {
        Format::Json => {
            let rows: Vec<Value> = cells
                .iter()
                .map(|c| {
                    let value = if kind.is_integer() {
                        json!(c.value.eval_at_one().to_string())
                    } else {
                        serde_json::to_value(&c.value).expect("QPoly serializes")
                    };
                    json!({x: c.a, y: c.b, "value": value, "display": cell_text(kind, c)})
                })
                .collect();
            serde_json::to_writer_pretty(&mut *w, &json!({"kind": kind.name(), "cells": rows}))?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record([x, y, "value"])?;
            for c in cells {
                out.write_record([c.a.to_string(), c.b.to_string(), cell_text(kind, c)])?;
            }
            out.flush()?;
        }
        Format::Text if kind.is_integer() => {
            let rows: Vec<u32> = dedup(cells.iter().map(|c| c.a));
            let cols: Vec<u32> = dedup(cells.iter().map(|c| c.b));
            let value = |a: u32, b: u32| -> BigInt {
                cells
                    .iter()
                    .find(|c| c.a == a && c.b == b)
                    .map(|c| c.value.eval_at_one())
                    .unwrap_or_default()
            };
            let width = cells
                .iter()
                .map(|c| cell_text(kind, c).len())
                .chain(cols.iter().map(|b| b.to_string().len()))
                .max()
                .unwrap_or(1);
            let label = format!("{x}\\{y}");
            write!(w, "{label:>6}")?;
            for b in &cols {
                write!(w, " {b:>width$}")?;
            }
            writeln!(w)?;
            for &a in &rows {
                write!(w, "{a:>6}")?;
                for &b in &cols {
                    write!(w, " {:>width$}", value(a, b).to_string())?;
                }
                writeln!(w)?;
            }
        }
        Format::Text => {
            for c in cells {
                writeln!(w, "{}({},{}) = {}", kind.name(), c.a, c.b, c.value)?;
            }
        }
    }
    Ok(())
}

fn dedup(it: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut v: Vec<u32> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn paths_of(family: FamilySpec, shards: usize) -> Result<Box<dyn Iterator<Item = LatticePath>>> {
    Ok(if shards > 1 {
        Box::new(
            enumerate_sharded(family, shards)?
                .into_iter()
                .flatten()
                .flatten(),
        )
    } else {
        Box::new(enumerate(family)?)
    })
}

fn write_listing(
    family: FamilySpec,
    stats: bool,
    shards: usize,
    format: Format,
    w: &mut dyn Write,
) -> Result<()> {
    let paths = paths_of(family, shards)?;
    match format {
        Format::Text => {
            for p in paths {
                if stats {
                    let s = p.stats();
                    write!(
                        w,
                        "{p} maj={} des={} height={} end={} min={}",
                        s.maj, s.des, s.height, s.end_level, s.min_level
                    )?;
                    if let (Some(lo), Some(hi)) = (s.h_minus, s.h_plus) {
                        write!(w, " h_minus={lo} h_plus={hi}")?;
                    }
                    writeln!(w)?;
                } else {
                    writeln!(w, "{p}")?;
                }
            }
        }
        Format::Json => {
            let rows: Vec<Value> = paths
                .map(|p| {
                    if stats {
                        json!({"path": p, "stats": p.stats()})
                    } else {
                        json!({"path": p})
                    }
                })
                .collect();
            let doc = json!({"family": family.to_string(), "count": rows.len(), "paths": rows});
            serde_json::to_writer_pretty(&mut *w, &doc)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            if stats {
                out.write_record([
                    "path",
                    "maj",
                    "des",
                    "height",
                    "end_level",
                    "min_level",
                    "h_minus",
                    "h_plus",
                ])?;
            } else {
                out.write_record(["path"])?;
            }
            let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
            for p in paths {
                if stats {
                    let s = p.stats();
                    out.write_record([
                        p.to_bits(),
                        s.maj.to_string(),
                        s.des.to_string(),
                        s.height.to_string(),
                        s.end_level.to_string(),
                        s.min_level.to_string(),
                        opt(s.h_minus),
                        opt(s.h_plus),
                    ])?;
                } else {
                    out.write_record([p.to_bits()])?;
                }
            }
            out.flush()?;
        }
    }
    Ok(())
}

fn write_genfun(
    family: FamilySpec,
    stat: Statistic,
    shards: usize,
    format: Format,
    w: &mut dyn Write,
) -> Result<()> {
    let g = gen_fun_sharded(family, stat, shards.max(1))?;
    match format {
        Format::Text => writeln!(w, "{g}")?,
        Format::Json => {
            let doc = json!({
                "family": family.to_string(),
                "statistic": stat,
                "genfun": g,
                "display": g.to_string(),
            });
            serde_json::to_writer_pretty(&mut *w, &doc)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            out.write_record(["exponent", "coefficient"])?;
            if let Some(lo) = g.min_deg() {
                for (i, c) in g.coeffs().iter().enumerate() {
                    out.write_record([(lo + i as i64).to_string(), c.to_string()])?;
                }
            }
            out.flush()?;
        }
    }
    Ok(())
}
