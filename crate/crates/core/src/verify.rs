//! Machine checks of the known results: the rule × axiom matrix, the
//! implications between lex-cel, plurality and IIS, the characterization
//! suites, and a registry of hand-built counterexamples.
//!
//! Everything here is deterministic for a given `(n, budget)`.

use std::collections::HashMap;
use std::fmt;

use crate::axioms::{check, Axiom, AxiomVerdict, Budget, EvidenceMode, Outcome, Witness};
use crate::enumerate::power_rankings;
use crate::error::{Error, Result};
use crate::order::{Coalition, Family, PairRelation, PowerRanking, SocialRanking, Universe};
use crate::srs::{iis, lex_cel, plurality, Srs};

/// The reference matrix, rows in [`Srs::roster`] order, columns in [`Axiom::TABLE`] order.
pub const TABLE3: [[bool; 9]; 7] = {
    const O: bool = false;
    const I: bool = true;
    [
        [I, I, I, I, O, O, O, I, O],
        [I, I, I, O, O, I, I, O, I],
        [I, I, I, O, I, I, O, O, O],
        [I, I, O, I, O, I, I, O, I],
        [I, O, I, I, I, I, I, I, I],
        [I, I, I, O, I, O, O, O, O],
        [O, I, I, O, I, I, O, O, O],
    ]
};

/// Expected bit for `(srs, axiom)`, if both are table entries.
pub fn expected_bit(srs: &Srs, axiom: Axiom) -> Option<bool> {
    let row = Srs::roster()
        .iter()
        .position(|s| s.label() == srs.label())?;
    let col = Axiom::TABLE.iter().position(|&a| a == axiom)?;
    Some(TABLE3[row][col])
}

/// A stored counterexample in three individuals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleEntry {
    pub id: u32,
    pub axioms: Vec<Axiom>,
    pub srs: Srs,
    pub before: PowerRanking,
    pub after: PowerRanking,
    pub pair: (usize, usize),
    pub expected_before: PairRelation,
    pub expected_after: PairRelation,
}

impl CounterexampleEntry {
    pub fn universe(&self) -> Universe {
        self.before.universe()
    }

    pub fn witness(&self) -> Witness {
        Witness {
            before: self.before.clone(),
            after: Some(self.after.clone()),
            permutation: None,
            pair: Some(self.pair),
            before_output: self.srs.rank(&self.before),
            after_output: Some(self.srs.rank(&self.after)),
        }
    }

    /// Recomputes both outputs and checks them against the stored relations
    /// and against every listed axiom.
    pub fn replay(&self) -> Result<()> {
        let w = self.witness();
        let (before, after) = (w.before_relation(), w.after_relation());
        if before != Some(self.expected_before) || after != Some(self.expected_after) {
            return Err(Error::Discrepancy(format!(
                "registry entry {}: expected {:?} then {:?}, got {:?} then {:?}",
                self.id, self.expected_before, self.expected_after, before, after
            )));
        }
        for &axiom in &self.axioms {
            if !w.confirms(axiom, &self.srs) {
                return Err(Error::Discrepancy(format!(
                    "registry entry {} is not a {} violation for {}",
                    self.id, axiom, self.srs
                )));
            }
        }
        Ok(())
    }

    pub fn verdict(&self, axiom: Axiom) -> AxiomVerdict {
        AxiomVerdict {
            axiom,
            srs: self.srs.clone(),
            mode: EvidenceMode::Registry,
            outcome: Outcome::Fails,
            universe: self.universe(),
            instances: 1,
            witness: Some(self.witness()),
        }
    }
}

fn coalition(members: &[usize]) -> Coalition {
    members.iter().copied().collect()
}

fn family(coalitions: &[&[usize]]) -> Family {
    coalitions.iter().map(|c| coalition(c)).collect()
}

fn leading(universe: Universe, classes: &[&[&[usize]]]) -> PowerRanking {
    let classes: Vec<Family> = classes.iter().map(|c| family(c)).collect();
    PowerRanking::with_rest(universe, &classes).expect("registry rankings are valid")
}

/// The stored counterexamples, with `x, y, z` = individuals `0, 1, 2`.
pub fn registry() -> Vec<CounterexampleEntry> {
    let u = Universe::new(3).expect("n = 3");
    let (x, y, z) = (0, 1, 2);
    let xyz: &[usize] = &[x, y, z];
    let single = PowerRanking::indifferent(u);
    vec![
        // A top slide of Δ = {∅}: e(x) drops from 1 to 0.
        CounterexampleEntry {
            id: 1,
            axioms: vec![Axiom::Si, Axiom::Ssi, Axiom::Iic],
            srs: Srs::Iis,
            before: leading(u, &[&[&[x]]]),
            after: leading(u, &[&[&[x], &[]]]),
            pair: (x, y),
            expected_before: PairRelation::Above,
            expected_after: PairRelation::Tied,
        },
        CounterexampleEntry {
            id: 2,
            axioms: vec![Axiom::Inui],
            srs: Srs::LexCel,
            before: single,
            after: leading(u, &[&[&[x], &[z]]]),
            pair: (x, y),
            expected_before: PairRelation::Tied,
            expected_after: PairRelation::Above,
        },
        CounterexampleEntry {
            id: 3,
            axioms: vec![Axiom::Si, Axiom::Ssi],
            srs: Srs::SplitPlurality,
            before: leading(u, &[&[xyz]]),
            after: leading(u, &[&[xyz, &[x], &[y, z]]]),
            pair: (x, y),
            expected_before: PairRelation::Tied,
            expected_after: PairRelation::Above,
        },
        CounterexampleEntry {
            id: 4,
            axioms: vec![Axiom::Iic],
            srs: Srs::SplitPlurality,
            before: leading(u, &[&[&[x]]]),
            after: leading(u, &[&[xyz], &[&[x]]]),
            pair: (x, y),
            expected_before: PairRelation::Above,
            expected_after: PairRelation::Tied,
        },
        // Splitting the worst class pushes x's coalitions last.
        CounterexampleEntry {
            id: 5,
            axioms: vec![Axiom::Iws],
            srs: Srs::DualLexCel,
            before: leading(u, &[&[&[x]]]),
            after: leading(u, &[&[&[x]], &[&[], &[y], &[z], &[y, z]]]),
            pair: (x, y),
            expected_before: PairRelation::Above,
            expected_after: PairRelation::Below,
        },
        // Splitting the best class puts {y} alone on top.
        CounterexampleEntry {
            id: 6,
            axioms: vec![Axiom::Ibs],
            srs: Srs::LexCel,
            before: leading(u, &[&[&[x], &[x, z], &[y]]]),
            after: leading(u, &[&[&[y]], &[&[x], &[x, z]]]),
            pair: (x, y),
            expected_before: PairRelation::Above,
            expected_after: PairRelation::Below,
        },
    ]
}

/// The registry entry that refutes `axiom` for `srs`, if any.
pub fn registry_entry(srs: &Srs, axiom: Axiom) -> Option<CounterexampleEntry> {
    registry()
        .into_iter()
        .find(|e| e.srs == *srs && e.axioms.contains(&axiom))
}

/// Replays every registry entry; returns how many passed.
pub fn replay_registry() -> Result<usize> {
    let entries = registry();
    for e in &entries {
        e.replay()?;
    }
    Ok(entries.len())
}

/// Verdict for one cell. A stored counterexample in the same universe wins
/// outright; otherwise the search runs, and a stored counterexample from a
/// larger universe is the fallback when the search finds nothing.
pub fn evaluate_cell(
    srs: &Srs,
    axiom: Axiom,
    universe: Universe,
    budget: &Budget,
) -> Result<AxiomVerdict> {
    let entry = registry_entry(srs, axiom);
    if let Some(e) = entry.as_ref().filter(|e| e.universe() == universe) {
        return Ok(e.verdict(axiom));
    }
    let verdict = check(axiom, srs, universe, budget)?;
    match entry {
        Some(e) if verdict.holds() => Ok(e.verdict(axiom)),
        _ => Ok(verdict),
    }
}

/// Memoized cell verdicts for one `(universe, budget)`.
pub struct Evaluator {
    universe: Universe,
    budget: Budget,
    cache: HashMap<(Srs, Axiom), AxiomVerdict>,
}

impl Evaluator {
    pub fn new(universe: Universe, budget: Budget) -> Self {
        Evaluator {
            universe,
            budget,
            cache: HashMap::new(),
        }
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn cell(&mut self, srs: &Srs, axiom: Axiom) -> Result<&AxiomVerdict> {
        let key = (srs.clone(), axiom);
        if !self.cache.contains_key(&key) {
            let v = evaluate_cell(srs, axiom, self.universe, &self.budget)?;
            self.cache.insert(key.clone(), v);
        }
        Ok(&self.cache[&key])
    }

    fn holds(&mut self, srs: &Srs, axiom: Axiom) -> Result<bool> {
        Ok(self.cell(srs, axiom)?.holds())
    }
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub verdict: AxiomVerdict,
    pub expected: bool,
}

impl Cell {
    pub fn matches(&self) -> bool {
        self.verdict.holds() == self.expected
    }
}

/// The 7 × 9 matrix with evidence per cell.
#[derive(Clone, Debug)]
pub struct MatrixReport {
    pub universe: Universe,
    pub rows: Vec<Srs>,
    pub cols: Vec<Axiom>,
    pub cells: Vec<Vec<Cell>>,
}

impl MatrixReport {
    pub fn bits(&self) -> Vec<Vec<bool>> {
        self.cells
            .iter()
            .map(|row| row.iter().map(|c| c.verdict.holds()).collect())
            .collect()
    }

    pub fn matching(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.matches()).count()
    }

    pub fn discrepancies(&self) -> Vec<String> {
        self.cells
            .iter()
            .flatten()
            .filter(|c| !c.matches())
            .map(|c| {
                format!(
                    "{} {}: expected {}, found {} ({}, n={})",
                    c.verdict.srs,
                    c.verdict.axiom,
                    u8::from(c.expected),
                    u8::from(c.verdict.holds()),
                    c.verdict.mode,
                    c.verdict.universe.n()
                )
            })
            .collect()
    }

    /// `Ok` iff every cell matches; otherwise the discrepancy list.
    pub fn into_result(self) -> Result<Self> {
        let d = self.discrepancies();
        if d.is_empty() {
            Ok(self)
        } else {
            Err(Error::Discrepancy(d.join("; ")))
        }
    }
}

pub fn build_table3(n: usize, budget: &Budget) -> Result<MatrixReport> {
    let mut eval = Evaluator::new(Universe::new(n)?, budget.clone());
    build_table3_with(&mut eval)
}

fn build_table3_with(eval: &mut Evaluator) -> Result<MatrixReport> {
    let rows = Srs::roster();
    let mut cells = Vec::with_capacity(rows.len());
    for (i, srs) in rows.iter().enumerate() {
        let mut row = Vec::with_capacity(9);
        for (j, &axiom) in Axiom::TABLE.iter().enumerate() {
            row.push(Cell {
                verdict: eval.cell(srs, axiom)?.clone(),
                expected: TABLE3[i][j],
            });
        }
        cells.push(row);
    }
    Ok(MatrixReport {
        universe: eval.universe(),
        rows,
        cols: Axiom::TABLE.to_vec(),
        cells,
    })
}

/// A failed implication between lex-cel, plurality and IIS.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionViolation {
    pub ranking: PowerRanking,
    pub pair: (usize, usize),
    pub implication: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionReport {
    pub universe: Universe,
    pub orders: u64,
    pub pair_checks: u64,
    pub violation: Option<PropositionViolation>,
}

impl PropositionReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// The first of (i)–(iv) that fails for `(x, y)`, if any.
pub fn proposition1_failure(
    l: &SocialRanking,
    p: &SocialRanking,
    s: &SocialRanking,
    x: usize,
    y: usize,
) -> Option<&'static str> {
    if l.indifferent_between(x, y) && !(p.indifferent_between(x, y) && s.indifferent_between(x, y))
    {
        return Some("i");
    }
    if l.strictly_above(x, y) && !(p.weakly_above(x, y) && s.weakly_above(x, y)) {
        return Some("ii");
    }
    if p.strictly_above(x, y) && !(l.strictly_above(x, y) && s.weakly_above(x, y)) {
        return Some("iii");
    }
    if s.strictly_above(x, y) && !(l.strictly_above(x, y) && p.weakly_above(x, y)) {
        return Some("iv");
    }
    None
}

/// Checks (i)–(iv) over every weak order on `2^X` and every ordered pair.
pub fn check_proposition1(n: usize, max_domain: usize) -> Result<PropositionReport> {
    let universe = Universe::new(n)?;
    let pairs: Vec<(usize, usize)> = universe
        .pairs()
        .flat_map(|(x, y)| [(x, y), (y, x)])
        .collect();
    let mut report = PropositionReport {
        universe,
        orders: 0,
        pair_checks: 0,
        violation: None,
    };
    for r in power_rankings(universe, max_domain)? {
        report.orders += 1;
        let (l, p, s) = (lex_cel(&r), plurality(&r), iis(&r));
        for &(x, y) in &pairs {
            report.pair_checks += 1;
            if let Some(implication) = proposition1_failure(&l, &p, &s, x, y) {
                report.violation = Some(PropositionViolation {
                    ranking: r,
                    pair: (x, y),
                    implication,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// The three characterizations, in the order they are usually stated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    Iis,
    LexCel,
    Plurality,
}

impl Theorem {
    pub const ALL: [Theorem; 3] = [Theorem::Iis, Theorem::LexCel, Theorem::Plurality];

    pub fn srs(self) -> Srs {
        match self {
            Theorem::Iis => Srs::Iis,
            Theorem::LexCel => Srs::LexCel,
            Theorem::Plurality => Srs::Plurality,
        }
    }

    pub fn suite(self) -> &'static [Axiom] {
        match self {
            Theorem::Iis => &[Axiom::Nt, Axiom::Wivip, Axiom::Iws, Axiom::Ibs, Axiom::Inui],
            Theorem::LexCel => &[Axiom::Wivip, Axiom::Iws, Axiom::Ssi],
            Theorem::Plurality => &[Axiom::Nt, Axiom::Wivip, Axiom::To, Axiom::Si],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Iis => "iis",
            Theorem::LexCel => "lexcel",
            Theorem::Plurality => "plurality",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub theorem: Theorem,
    pub verdicts: Vec<AxiomVerdict>,
    /// Each other roster rule with the first suite axiom it fails (`None`: passes all).
    pub rivals: Vec<(Srs, Option<Axiom>)>,
}

impl SuiteReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(AxiomVerdict::holds)
    }

    pub fn separated(&self) -> bool {
        self.rivals.iter().all(|(_, failed)| failed.is_some())
    }
}

pub fn check_theorem_suite(theorem: Theorem, n: usize, budget: &Budget) -> Result<SuiteReport> {
    let mut eval = Evaluator::new(Universe::new(n)?, budget.clone());
    theorem_suite_with(&mut eval, theorem)
}

fn theorem_suite_with(eval: &mut Evaluator, theorem: Theorem) -> Result<SuiteReport> {
    let target = theorem.srs();
    let mut verdicts = Vec::new();
    for &axiom in theorem.suite() {
        verdicts.push(eval.cell(&target, axiom)?.clone());
    }
    let mut rivals = Vec::new();
    for srs in Srs::roster().into_iter().filter(|s| *s != target) {
        let mut failed = None;
        for &axiom in theorem.suite() {
            if !eval.holds(&srs, axiom)? {
                failed = Some(axiom);
                break;
            }
        }
        rivals.push((srs, failed));
    }
    Ok(SuiteReport {
        theorem,
        verdicts,
        rivals,
    })
}

/// For each suite axiom, a roster rule that satisfies the rest of the suite but not it.
#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub theorem: Theorem,
    pub separators: Vec<(Axiom, Srs)>,
}

pub fn check_logical_independence(
    theorem: Theorem,
    n: usize,
    budget: &Budget,
) -> Result<IndependenceReport> {
    let mut eval = Evaluator::new(Universe::new(n)?, budget.clone());
    logical_independence_with(&mut eval, theorem)
}

fn logical_independence_with(eval: &mut Evaluator, theorem: Theorem) -> Result<IndependenceReport> {
    let suite = theorem.suite();
    let mut separators = Vec::new();
    for &target in suite {
        let mut found = None;
        'rules: for srs in Srs::roster() {
            for &axiom in suite {
                if eval.holds(&srs, axiom)? != (axiom != target) {
                    continue 'rules;
                }
            }
            found = Some(srs);
            break;
        }
        match found {
            Some(srs) => separators.push((target, srs)),
            None => {
                return Err(Error::MissingSeparator(format!(
                    "{target} in the {theorem} suite"
                )))
            }
        }
    }
    Ok(IndependenceReport {
        theorem,
        separators,
    })
}

/// SI and Top-SI verdicts side by side for every roster rule.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub rows: Vec<(AxiomVerdict, AxiomVerdict)>,
}

impl EquivalenceReport {
    pub fn agreements(&self) -> usize {
        self.rows
            .iter()
            .filter(|(a, b)| a.outcome == b.outcome)
            .count()
    }

    pub fn agree(&self) -> bool {
        self.agreements() == self.rows.len()
    }
}

pub fn check_topsi_equivalence(n: usize, budget: &Budget) -> Result<EquivalenceReport> {
    let universe = Universe::new(n)?;
    let mut rows = Vec::new();
    for srs in Srs::roster() {
        rows.push((
            check(Axiom::Si, &srs, universe, budget)?,
            check(Axiom::TopSi, &srs, universe, budget)?,
        ));
    }
    Ok(EquivalenceReport { rows })
}

/// Search verdicts (no registry) for the two implications SSI ⇒ SI and TO ⇒ IWS.
#[derive(Clone, Debug)]
pub struct ImplicationReport {
    /// `(rule, stronger, weaker)`.
    pub rows: Vec<(Srs, AxiomVerdict, AxiomVerdict)>,
}

impl ImplicationReport {
    /// Rows where the stronger axiom holds but the weaker fails.
    pub fn violations(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|(_, strong, weak)| strong.holds() && !weak.holds())
            .map(|(srs, strong, weak)| {
                format!("{srs}: {} holds but {} fails", strong.axiom, weak.axiom)
            })
            .collect()
    }
}

pub fn check_implications(n: usize, budget: &Budget) -> Result<ImplicationReport> {
    let universe = Universe::new(n)?;
    let mut rows = Vec::new();
    for srs in Srs::roster() {
        for (strong, weak) in [(Axiom::Ssi, Axiom::Si), (Axiom::To, Axiom::Iws)] {
            rows.push((
                srs.clone(),
                check(strong, &srs, universe, budget)?,
                check(weak, &srs, universe, budget)?,
            ));
        }
    }
    Ok(ImplicationReport { rows })
}

/// One section of the full battery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

/// Runs everything at universe size `n`; sections stay in a fixed order.
pub fn run_battery(n: usize, budget: &Budget) -> Result<Vec<Section>> {
    let mut sections = Vec::new();

    let replay = replay_registry();
    sections.push(Section {
        name: "registry replay".into(),
        passed: replay.is_ok(),
        details: vec![match &replay {
            Ok(count) => format!("{count} entries replay as stored"),
            Err(e) => e.to_string(),
        }],
    });

    let prop = check_proposition1(n, budget.max_domain)?;
    sections.push(Section {
        name: "rule implications".into(),
        passed: prop.holds(),
        details: vec![match &prop.violation {
            None => format!(
                "{} orders, {} ordered pairs, no violation",
                prop.orders, prop.pair_checks
            ),
            Some(v) => format!(
                "({}) fails for ({}, {}) on {}",
                v.implication,
                v.pair.0 + 1,
                v.pair.1 + 1,
                v.ranking
            ),
        }],
    });

    let mut eval = Evaluator::new(Universe::new(n)?, budget.clone());
    for theorem in Theorem::ALL {
        let suite = theorem_suite_with(&mut eval, theorem)?;
        let mut details: Vec<String> = suite.verdicts.iter().map(|v| v.to_string()).collect();
        details.extend(suite.rivals.iter().map(|(srs, failed)| match failed {
            Some(a) => format!("{srs} separated by {a}"),
            None => format!("{srs} passes the whole suite"),
        }));
        sections.push(Section {
            name: format!("{theorem} suite"),
            passed: suite.holds() && suite.separated(),
            details,
        });
    }

    for theorem in [Theorem::LexCel, Theorem::Plurality] {
        let (passed, details) = match logical_independence_with(&mut eval, theorem) {
            Ok(r) => (
                true,
                r.separators
                    .iter()
                    .map(|(a, srs)| format!("{a}: {srs}"))
                    .collect(),
            ),
            Err(e) => (false, vec![e.to_string()]),
        };
        sections.push(Section {
            name: format!("{theorem} independence"),
            passed,
            details,
        });
    }

    let eq = check_topsi_equivalence(n, budget)?;
    sections.push(Section {
        name: "top-si equivalence".into(),
        passed: eq.agree(),
        details: eq
            .rows
            .iter()
            .map(|(si, top)| {
                format!(
                    "{}: SI {}, Top-SI {}",
                    si.srs,
                    outcome_word(si),
                    outcome_word(top)
                )
            })
            .collect(),
    });

    let imp = check_implications(n, budget)?;
    let violations = imp.violations();
    sections.push(Section {
        name: "implications".into(),
        passed: violations.is_empty(),
        details: if violations.is_empty() {
            vec!["SSI => SI and TO => IWS on every rule".into()]
        } else {
            violations
        },
    });

    let matrix = build_table3_with(&mut eval)?;
    let discrepancies = matrix.discrepancies();
    sections.push(Section {
        name: "axiom matrix".into(),
        passed: discrepancies.is_empty(),
        details: std::iter::once(format!("{}/63 cells match", matrix.matching()))
            .chain(discrepancies)
            .collect(),
    });

    Ok(sections)
}

fn outcome_word(v: &AxiomVerdict) -> &'static str {
    if v.holds() {
        "holds"
    } else {
        "fails"
    }
}
