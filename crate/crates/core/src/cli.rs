//! The text file format and the command implementations behind the binary.
//!
//! A ranking file reads
//!
//! ```text
//! n=3
//! {1} {3} {1,2}
//! {2}
//! {1,3} {2,3} {1,2,3} {}
//! ```
//!
//! one class per line, best first, individuals 1-indexed. Blank lines and
//! lines starting with `#` are skipped.
//!
//! Commands return an [`Output`] rather than printing, so they can be tested
//! without spawning the binary.

use serde::Serialize;

use crate::axioms::{check, Axiom, AxiomVerdict, Budget, EvidenceMode};
use crate::enumerate::{enumerate_weak_orders, ordered_bell, DEFAULT_MAX_DOMAIN};
use crate::error::{Error, Result};
use crate::order::{make_power_ranking, Coalition, PowerRanking, Universe};
use crate::srs::{Srs, TieBreakOrder};
use crate::verify::{build_table3, evaluate_cell, run_battery, MatrixReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Environment variable capping the enumeration domain `2^n`.
pub const MAX_M_VAR: &str = "SOCRANK_MAX_M";

/// A parsed ranking file, before partition validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankingDocument {
    pub n: usize,
    pub classes: Vec<Vec<Coalition>>,
}

impl RankingDocument {
    /// Canonical document: coalitions within a class by size, then members.
    pub fn from_ranking(ranking: &PowerRanking) -> Self {
        RankingDocument {
            n: ranking.universe().n(),
            classes: ranking.classes().iter().map(|c| c.sorted()).collect(),
        }
    }

    pub fn to_ranking(&self) -> Result<PowerRanking> {
        make_power_ranking(Universe::new(self.n)?, &self.classes)
    }

    /// Renders in file format, keeping coalition order as stored.
    pub fn render(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for class in &self.classes {
            let line: Vec<String> = class.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The ranking in canonical file format.
pub fn render_ranking(ranking: &PowerRanking) -> String {
    RankingDocument::from_ranking(ranking).render()
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the file format; coordinates in errors are 1-based.
pub fn parse_ranking(text: &str) -> Result<RankingDocument> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing `n=<int>` header"))?;
    let n = parse_header(header_line, header)?;
    let mut classes = Vec::new();
    for (number, line) in lines {
        classes.push(parse_class(number, line, n)?);
    }
    if classes.is_empty() {
        return Err(parse_error(
            header_line + 1,
            1,
            "no classes after the header",
        ));
    }
    Ok(RankingDocument { n, classes })
}

fn parse_header(line: usize, text: &str) -> Result<usize> {
    let column = text.len() - text.trim_start().len() + 1;
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let value = compact
        .strip_prefix("n=")
        .ok_or_else(|| parse_error(line, column, "expected `n=<int>`"))?;
    let n: usize = value
        .parse()
        .map_err(|_| parse_error(line, column, format!("`{value}` is not a universe size")))?;
    if n == 0 || n > Universe::MAX {
        return Err(parse_error(
            line,
            column,
            format!("universe size must be in 1..={}", Universe::MAX),
        ));
    }
    Ok(n)
}

fn parse_class(line: usize, text: &str, n: usize) -> Result<Vec<Coalition>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut class = Vec::new();
    loop {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        if i == chars.len() {
            break;
        }
        if chars[i] != '{' {
            return Err(parse_error(
                line,
                i + 1,
                format!("expected `{{`, found `{}`", chars[i]),
            ));
        }
        let open = i;
        i += 1;
        let close = chars[i..]
            .iter()
            .position(|&c| c == '}')
            .map(|p| p + i)
            .ok_or_else(|| parse_error(line, open + 1, "unclosed `{`"))?;
        let mut coalition = Coalition::EMPTY;
        let body: String = chars[i..close].iter().collect();
        if !body.trim().is_empty() {
            let mut offset = i;
            for part in body.split(',') {
                let column = offset + part.chars().count() - part.trim_start().chars().count() + 1;
                let member: usize = part.trim().parse().map_err(|_| {
                    parse_error(
                        line,
                        column,
                        format!("`{}` is not an individual", part.trim()),
                    )
                })?;
                if member == 0 || member > n {
                    return Err(parse_error(
                        line,
                        column,
                        format!("individual {member} is outside 1..={n}"),
                    ));
                }
                if coalition.contains(member - 1) {
                    return Err(parse_error(
                        line,
                        column,
                        format!("individual {member} listed twice"),
                    ));
                }
                coalition = coalition.with(member - 1);
                offset += part.chars().count() + 1;
            }
        }
        class.push(coalition);
        i = close + 1;
    }
    Ok(class)
}

/// Domain cap from [`MAX_M_VAR`], defaulting to 8.
pub fn max_domain_from_env() -> Result<usize> {
    match std::env::var(MAX_M_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Budget(format!("{MAX_M_VAR}=`{v}` is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_DOMAIN),
    }
}

/// What a command prints and how the process should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

/// Exit code for an error surfaced by a command.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::UnknownRule(_) | Error::UnknownAxiom(_) => EXIT_USAGE,
        Error::Discrepancy(_) | Error::MissingSeparator(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT,
    }
}

pub fn resolve_rule(name: &str, tiebreak: Option<&str>) -> Result<Srs> {
    let order = tiebreak.map(str::parse::<TieBreakOrder>).transpose()?;
    Srs::from_name(name, order)
}

pub fn cmd_rank(text: &str, rule: &str, tiebreak: Option<&str>) -> Result<Output> {
    let srs = resolve_rule(rule, tiebreak)?;
    let ranking = parse_ranking(text)?.to_ranking()?;
    if let Srs::PluralityTieBreak(Some(order)) = &srs {
        if order.len() != ranking.universe().n() {
            return Err(Error::LengthMismatch(order.len(), ranking.universe().n()));
        }
    }
    Ok(Output::ok(format!("{}\n", srs.rank(&ranking))))
}

#[derive(Serialize)]
struct WitnessJson {
    before: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    after: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<[usize; 2]>,
    before_output: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    after_output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    before_relation: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    after_relation: Option<&'static str>,
}

#[derive(Serialize)]
struct VerdictJson {
    axiom: Axiom,
    srs: &'static str,
    mode: EvidenceMode,
    outcome: crate::axioms::Outcome,
    n: usize,
    instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

fn verdict_json(v: &AxiomVerdict) -> VerdictJson {
    VerdictJson {
        axiom: v.axiom,
        srs: v.srs.cli_name(),
        mode: v.mode,
        outcome: v.outcome,
        n: v.universe.n(),
        instances: v.instances,
        witness: v.witness.as_ref().map(|w| WitnessJson {
            before: render_ranking(&w.before),
            after: w.after.as_ref().map(render_ranking),
            permutation: w
                .permutation
                .as_ref()
                .map(|p| p.images().iter().map(|i| i + 1).collect()),
            pair: w.pair.map(|(x, y)| [x + 1, y + 1]),
            before_output: w.before_output.to_string(),
            after_output: w.after_output.as_ref().map(|o| o.to_string()),
            before_relation: w.before_relation().map(|r| r.symbol()),
            after_relation: w.after_relation().map(|r| r.symbol()),
        }),
    }
}

/// A verdict as a single JSON document.
pub fn render_verdict_json(v: &AxiomVerdict) -> String {
    serde_json::to_string_pretty(&verdict_json(v)).expect("verdicts serialize")
}

/// A verdict as indented text, witness included.
pub fn render_verdict_text(v: &AxiomVerdict) -> String {
    let mut out = format!("{v}\n");
    if let Some(w) = &v.witness {
        if let Some((x, y)) = w.pair {
            let rel = |r: Option<crate::order::PairRelation>| r.map_or("?", |r| r.symbol());
            out.push_str(&format!(
                "pair ({}, {}): {} before, {} after\n",
                x + 1,
                y + 1,
                rel(w.before_relation()),
                rel(w.after_relation())
            ));
        }
        if let Some(p) = &w.permutation {
            let images: Vec<String> = p.images().iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&format!("permutation: {}\n", images.join(" ")));
        }
        out.push_str(&format!(
            "before ({}):\n{}",
            w.before_output,
            render_ranking(&w.before)
        ));
        if let (Some(after), Some(after_out)) = (&w.after, &w.after_output) {
            out.push_str(&format!("after ({after_out}):\n{}", render_ranking(after)));
        }
    }
    out
}

pub struct CheckArgs<'a> {
    pub rule: &'a str,
    pub axiom: &'a str,
    pub tiebreak: Option<&'a str>,
    pub n: usize,
    pub budget: Budget,
    pub json: bool,
}

/// Searches at `n`, falling back to the stored counterexamples.
pub fn cmd_check(args: &CheckArgs<'_>) -> Result<Output> {
    let srs = resolve_rule(args.rule, args.tiebreak)?;
    let axiom: Axiom = args.axiom.parse()?;
    let universe = Universe::new(args.n)?;
    let verdict = if matches!(srs, Srs::PluralityTieBreak(Some(_))) {
        check(axiom, &srs, universe, &args.budget)?
    } else {
        evaluate_cell(&srs, axiom, universe, &args.budget)?
    };
    let text = if args.json {
        render_verdict_json(&verdict) + "\n"
    } else {
        render_verdict_text(&verdict)
    };
    let code = if verdict.holds() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok(Output { text, code })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(parse_error(1, 1, format!("unknown format `{other}`"))),
        }
    }
}

fn mode_mark(mode: EvidenceMode) -> &'static str {
    match mode {
        EvidenceMode::Exhaustive => "",
        EvidenceMode::Sampled => "s",
        EvidenceMode::Registry => "r",
    }
}

pub fn render_matrix(report: &MatrixReport, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = std::iter::once("srs".to_string())
                .chain(report.cols.iter().map(|a| a.to_string()))
                .collect::<Vec<_>>()
                .join(",");
            out.push('\n');
            for (srs, row) in report.rows.iter().zip(&report.cells) {
                let bits: Vec<String> = row
                    .iter()
                    .map(|c| u8::from(c.verdict.holds()).to_string())
                    .collect();
                out.push_str(&format!("{},{}\n", srs.cli_name(), bits.join(",")));
            }
            out
        }
        Format::Text => {
            let mut out = format!("{:<10}", "");
            for a in &report.cols {
                out.push_str(&format!("{:>7}", a.name()));
            }
            out.push('\n');
            for (srs, row) in report.rows.iter().zip(&report.cells) {
                out.push_str(&format!("{:<10}", srs.label()));
                for c in row {
                    let cell = format!(
                        "{}{}{}",
                        u8::from(c.verdict.holds()),
                        mode_mark(c.verdict.mode),
                        if c.matches() { "" } else { "!" }
                    );
                    out.push_str(&format!("{cell:>7}"));
                }
                out.push('\n');
            }
            out.push_str(&format!(
                "n={}; s = sampled, r = stored counterexample (n=3), ! = differs from the reference matrix\n",
                report.universe.n()
            ));
            out.push_str(&format!("{}/63 cells match\n", report.matching()));
            for d in report.discrepancies() {
                out.push_str(&format!("mismatch: {d}\n"));
            }
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct CellJson {
                axiom: Axiom,
                expected: u8,
                value: u8,
                mode: EvidenceMode,
                n: usize,
            }
            #[derive(Serialize)]
            struct RowJson {
                srs: &'static str,
                cells: Vec<CellJson>,
            }
            #[derive(Serialize)]
            struct MatrixJson {
                n: usize,
                rows: Vec<RowJson>,
                matching: usize,
                discrepancies: Vec<String>,
            }
            let doc = MatrixJson {
                n: report.universe.n(),
                rows: report
                    .rows
                    .iter()
                    .zip(&report.cells)
                    .map(|(srs, row)| RowJson {
                        srs: srs.cli_name(),
                        cells: row
                            .iter()
                            .map(|c| CellJson {
                                axiom: c.verdict.axiom,
                                expected: u8::from(c.expected),
                                value: u8::from(c.verdict.holds()),
                                mode: c.verdict.mode,
                                n: c.verdict.universe.n(),
                            })
                            .collect(),
                    })
                    .collect(),
                matching: report.matching(),
                discrepancies: report.discrepancies(),
            };
            serde_json::to_string_pretty(&doc).expect("matrix serializes") + "\n"
        }
    }
}

pub fn cmd_table3(n: usize, budget: &Budget, format: Format) -> Result<Output> {
    let report = build_table3(n, budget)?;
    let code = if report.discrepancies().is_empty() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok(Output {
        text: render_matrix(&report, format),
        code,
    })
}

pub fn cmd_verify(n: usize, budget: &Budget) -> Result<Output> {
    let sections = run_battery(n, budget)?;
    let mut text = String::new();
    for s in &sections {
        text.push_str(&format!(
            "[{}] {}\n",
            if s.passed { "pass" } else { "FAIL" },
            s.name
        ));
        for d in &s.details {
            text.push_str(&format!("    {d}\n"));
        }
    }
    let code = match sections.iter().find(|s| !s.passed) {
        Some(first) => {
            text.push_str(&format!("first failing section: {}\n", first.name));
            EXIT_CHECK_FAILED
        }
        None => EXIT_OK,
    };
    Ok(Output { text, code })
}

/// Counts weak orders by enumeration for `m = 1..=max_m`, next to the closed form.
pub fn cmd_enumerate(max_m: usize, max_domain: usize) -> Result<Output> {
    let mut text = String::from("m\tenumerated\texpected\n");
    for m in 1..=max_m {
        let count = enumerate_weak_orders(m, max_domain)?.count();
        text.push_str(&format!("{m}\t{count}\t{}\n", ordered_bell(m)));
    }
    Ok(Output::ok(text))
}
