use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use percoperm::counting::{count_report, factorial_identity_sides, tally, CountRecord, Tally};
use percoperm::percolation::{
    matrix_of, percolate as run_percolation, tiles_of_grid, Cell, Policy, Tile, MAX_SIDE,
};
use percoperm::series::{
    a_abramson_moser, a_formula, a_via_series, schroeder_large_upto, schroeder_little_upto,
};
use percoperm::tiling::{merge_eager, merge_run, Direction};
use percoperm::{comps as factor, parse_permutation, Permutation};
use serde::{Deserialize, Serialize};

use crate::{Format, PolicyName, SequenceName, Which};

/// Largest index accepted by `sequence`.
pub const MAX_SEQUENCE: usize = 50;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification,
    Io(io::Error),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Verification => f.write_str("verification failed"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn usage(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn reject_csv(format: Format, command: &str) -> Result<(), Failure> {
    match format {
        Format::Csv => Err(Failure::Usage(format!("{command} has no csv output"))),
        _ => Ok(()),
    }
}

/// Joins the positional tokens so `213`, `"2 1 3"` and `2 1 3` all parse.
fn read_permutation(tokens: &[String]) -> Result<Permutation, Failure> {
    parse_permutation(&tokens.join(" ")).map_err(usage)
}

fn parse_script(text: &str) -> Result<Vec<Cell>, Failure> {
    text.split_whitespace()
        .map(|pair| {
            let (r, c) = pair
                .split_once(',')
                .ok_or_else(|| Failure::Usage(format!("expected row,col but got {pair:?}")))?;
            let r = r.trim().parse().map_err(|_| Failure::Usage(format!("bad row in {pair:?}")))?;
            let c = c.trim().parse().map_err(|_| Failure::Usage(format!("bad column in {pair:?}")))?;
            Ok(Cell::new(r, c))
        })
        .collect()
}

/// JSON shape of a percolation run.
#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub steps: Vec<Cell>,
    pub tiles: Vec<Tile>,
    pub full: bool,
}

pub fn percolate(
    out: &mut dyn Write,
    tokens: &[String],
    policy: PolicyName,
    seed: u64,
    script: Option<&str>,
    format: Format,
) -> Result<(), Failure> {
    reject_csv(format, "percolate")?;
    let p = read_permutation(tokens)?;
    if p.len() > MAX_SIDE {
        return Err(Failure::Usage(format!("at most {MAX_SIDE} values are supported")));
    }
    let policy = match (script, policy) {
        (Some(text), _) => Policy::Scripted(parse_script(text)?),
        (None, PolicyName::FirstScan) => Policy::FirstScan,
        (None, PolicyName::Random) => Policy::Random { seed },
    };
    let trace = run_percolation(&matrix_of(&p), &policy).map_err(usage)?;
    let tiles = tiles_of_grid(&trace.final_grid).expect("final grids split into tiles");
    let full = tiles.len() == 1;

    if format == Format::Json {
        let json = TraceJson { steps: trace.steps, tiles, full };
        writeln!(out, "{}", serde_json::to_string(&json)?)?;
        return Ok(());
    }
    writeln!(out, "{}", trace.render())?;
    writeln!(out)?;
    writeln!(out, "# mutations: {}", trace.steps.len())?;
    let listed: Vec<String> = tiles
        .iter()
        .map(|t| format!("({},{},{})", t.row, t.col, t.size))
        .collect();
    writeln!(out, "# tiles (row,col,size): {}", listed.join(" "))?;
    writeln!(out, "# full: {full}")?;
    if trace.steps.is_empty() {
        writeln!(out, "# no-growth: no cell can mutate")?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Merge {
    Left,
    Right,
    Eager,
}

pub fn bracket(out: &mut dyn Write, tokens: &[String], merge: Merge, format: Format) -> Result<(), Failure> {
    reject_csv(format, "bracket")?;
    let p = read_permutation(tokens)?;
    let outcome = match merge {
        Merge::Left => merge_run(&p, Direction::Left),
        Merge::Right => merge_run(&p, Direction::Right),
        Merge::Eager => merge_eager(&p),
    };
    let lines = outcome.bracketings();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&lines)?)?,
        _ => {
            for line in lines {
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

pub fn comps(out: &mut dyn Write, tokens: &[String], format: Format) -> Result<(), Failure> {
    reject_csv(format, "comps")?;
    let p = read_permutation(tokens)?;
    let parts = factor(&p);
    match format {
        Format::Json => {
            let values: Vec<&[u32]> = parts.iter().map(|w| w.values()).collect();
            writeln!(out, "{}", serde_json::to_string(&values)?)?;
        }
        _ => {
            let text: String = parts.iter().map(|w| format!("({})", w.compact())).collect();
            writeln!(out, "{text}")?;
        }
    }
    Ok(())
}

pub fn count(out: &mut dyn Write, n: usize, which: Which, parallel: bool, format: Format) -> Result<(), Failure> {
    let records = (1..=n)
        .map(|k| count_report(k, parallel).map(|r| r.record()).map_err(usage))
        .collect::<Result<Vec<CountRecord>, _>>()?;
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &records {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(&records)?)?,
        Format::Plain => {
            let (name, column): (&str, fn(&CountRecord) -> u64) = match which {
                Which::Full => ("p_n", |r| r.p_n),
                Which::IndecFull => ("q_n", |r| r.q_n),
                Which::NoGrowth => ("a_n", |r| r.a_n),
                Which::All => {
                    writeln!(out, "# n p_n q_n a_n elapsed_ms")?;
                    for r in &records {
                        writeln!(out, "{} {} {} {} {}", r.n, r.p_n, r.q_n, r.a_n, r.elapsed_ms)?;
                    }
                    return Ok(());
                }
            };
            writeln!(out, "# n {name}")?;
            for r in &records {
                writeln!(out, "{} {}", r.n, column(r))?;
            }
        }
    }
    Ok(())
}

/// One line of the `verify` report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every check against the brute-force tallies for sizes `1..=n`,
/// where `tallies[k - 1]` belongs to size `k`.
pub fn run_checks(tallies: &[Tally]) -> Vec<Check> {
    let n = tallies.len();
    let p: Vec<_> = std::iter::once(0).chain(tallies.iter().map(|t| t.full)).map(Into::into).collect();
    let q: Vec<u64> = std::iter::once(0).chain(tallies.iter().map(|t| t.full_indecomposable)).collect();
    let a: Vec<_> = std::iter::once(0).chain(tallies.iter().map(|t| t.no_growth)).map(Into::into).collect();

    let mut identity = Vec::new();
    for k in 1..=n {
        match factorial_identity_sides(k, &p[..=k], &a[..=k]) {
            Ok((lhs, rhs)) if lhs == rhs => {}
            Ok((lhs, rhs)) => identity.push(format!("n={k}: {lhs} != {rhs}")),
            Err(e) => identity.push(format!("n={k}: {e}")),
        }
    }

    let half = (2..=n)
        .filter(|&k| 2 * q[k] != tallies[k - 1].full)
        .map(|k| format!("n={k}: 2*{} != {}", q[k], tallies[k - 1].full))
        .collect();

    let large = schroeder_large_upto(n);
    let little = schroeder_little_upto(n);
    let mut schroeder = Vec::new();
    for k in 1..=n {
        if p[k] != large[k - 1] {
            schroeder.push(format!("p_{k} = {} but S_{} = {}", p[k], k - 1, large[k - 1]));
        }
        if little[k - 1] != q[k].into() {
            schroeder.push(format!("q_{k} = {} but s_{} = {}", q[k], k - 1, little[k - 1]));
        }
    }

    let series = a_via_series(n);
    let mut kings = Vec::new();
    for (k, brute) in a.iter().enumerate().skip(1) {
        let formula = a_formula(k);
        let am = a_abramson_moser(k);
        let coeff = series.coeff(k).to_string();
        if formula != *brute || am != *brute || coeff != brute.to_string() {
            kings.push(format!("a_{k}: brute {brute} formula {formula} Abramson-Moser {am} series {coeff}"));
        }
    }

    vec![
        Check { name: "factorial identity", failures: identity },
        Check { name: "half-lemma", failures: half },
        Check { name: "Schroeder agreement", failures: schroeder },
        Check { name: "four-way a_n", failures: kings },
    ]
}

pub fn verify(out: &mut dyn Write, n: usize) -> Result<(), Failure> {
    let start = Instant::now();
    let tallies = (1..=n)
        .map(|k| tally(k, true).map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let checks = run_checks(&tallies);
    for check in &checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{status}  {:<20} n=1..{n}", check.name)?;
        for why in &check.failures {
            writeln!(out, "      {why}")?;
        }
    }
    eprintln!("verified n=1..{n} in {:.2?}", start.elapsed());
    if checks.iter().all(Check::passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn sequence_values(name: SequenceName, terms: usize) -> (String, Vec<String>) {
    let text = |v: Vec<_>| v.iter().map(ToString::to_string).collect::<Vec<String>>();
    match name {
        SequenceName::Schroeder => (
            format!("# S_0..S_{terms}, large Schroeder numbers"),
            text(schroeder_large_upto(terms)),
        ),
        SequenceName::LittleSchroeder => (
            format!("# s_0..s_{terms}, little Schroeder numbers"),
            text(schroeder_little_upto(terms)),
        ),
        SequenceName::Kings => {
            let mut values = vec!["1".to_string()];
            values.extend((1..=terms).map(|k| a_formula(k).to_string()));
            (format!("# a_0..a_{terms}, no-growth permutations of [n] (a_0 = 1)"), values)
        }
        SequenceName::Full => {
            let values = match terms {
                0 => Vec::new(),
                _ => text(schroeder_large_upto(terms - 1)),
            };
            (format!("# p_1..p_{terms}, full permutations of [n]"), values)
        }
    }
}

pub fn sequence(out: &mut dyn Write, name: SequenceName, terms: usize, format: Format) -> Result<(), Failure> {
    reject_csv(format, "sequence")?;
    let (header, values) = sequence_values(name, terms);
    match format {
        Format::Json => {
            let numbers = values
                .iter()
                .map(|v| serde_json::from_str(v))
                .collect::<Result<Vec<serde_json::Number>, _>>()?;
            writeln!(out, "{}", serde_json::to_string(&numbers)?)?;
        }
        _ => {
            writeln!(out, "{header}")?;
            for v in values {
                writeln!(out, "{v}")?;
            }
        }
    }
    Ok(())
}
